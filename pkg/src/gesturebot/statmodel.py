"""Statistical recognizer: per-class acceleration bands (mean +- sigma)
over window means, for both segmentation rules (Methods 1 and 2)."""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyClass, ParseError
from .signals import CLASSES, UNRECOGNIZED

# A zero-variance band would accept only exact matches; floor at the
# synthetic noise scale.
SIGMA_FLOOR = 0.05


@dataclass(frozen=True)
class ClassBand:
    label: str
    mean: tuple    # (mx, my, mz) in g
    sigma: tuple   # (sx, sy, sz) in g, each >= SIGMA_FLOOR
    n_patterns: int


@dataclass(frozen=True)
class StatModel:
    method: int            # window rule used in training: 1 or 2
    bands: tuple           # one ClassBand per class, in CLASSES order

    def band(self, label):
        for b in self.bands:
            if b.label == label:
                return b
        raise KeyError(label)


def train_stat(corpus, method):
    """One band per class: mean and population stdev of the per-window
    mean accelerations."""
    per_class = {label: [] for label in CLASSES}
    for window, label in corpus.entries:
        per_class[label].append(window.means())
    missing = [label for label in CLASSES if not per_class[label]]
    if missing:
        raise EmptyClass(missing)

    bands = []
    for label in CLASSES:
        feats = np.array(per_class[label])
        # canonical row order: summation order (and hence the model, bit for
        # bit) is independent of how the corpus was shuffled
        feats = feats[np.lexsort((feats[:, 2], feats[:, 1], feats[:, 0]))]
        mean = feats.mean(axis=0)
        sigma = np.maximum(feats.std(axis=0), SIGMA_FLOOR)
        bands.append(ClassBand(label, tuple(float(v) for v in mean),
                               tuple(float(v) for v in sigma), len(feats)))
    return StatModel(method=method, bands=tuple(bands))


def classify_stat(model, window):
    """(label, score). A window belongs to a band when its per-axis mean lies
    inside [mean - sigma, mean + sigma] on all three axes; overlaps are
    broken by the smallest normalized squared distance."""
    a = window.means()
    best = None
    best_key = None
    for band in model.bands:
        m = np.array(band.mean)
        s = np.array(band.sigma)
        if np.all(np.abs(a - m) <= s):
            d = float(np.sum(((a - m) / s) ** 2))
            # canonical class order breaks exact-distance ties, so band
            # ordering never matters
            key = (d, CLASSES.index(band.label))
            if best_key is None or key < best_key:
                best, best_key = band.label, key
    if best is None:
        return UNRECOGNIZED, 0.0
    return best, min(1.0, max(0.0, 1.0 - best_key[0] / 3.0))


def save_stat(model, path):
    with open(path, "w") as f:
        f.write("statmodel v1\n")
        f.write("method %d\n" % model.method)
        for b in model.bands:
            f.write("class %s mean %s %s %s sigma %s %s %s n %d\n" % (
                b.label,
                repr(float(b.mean[0])), repr(float(b.mean[1])), repr(float(b.mean[2])),
                repr(float(b.sigma[0])), repr(float(b.sigma[1])), repr(float(b.sigma[2])),
                b.n_patterns))


def load_stat(path):
    with open(path) as f:
        lines = [ln.rstrip("\n") for ln in f]
    if not lines or lines[0] != "statmodel v1":
        raise ParseError("not a statmodel file", line=1)
    if len(lines) < 2 or not lines[1].startswith("method "):
        raise ParseError("missing method line", line=2)
    method = int(lines[1].split()[1])
    bands = []
    for i, ln in enumerate(lines[2:], start=3):
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 12 or parts[0] != "class":
            raise ParseError("bad band line", line=i)
        bands.append(ClassBand(
            label=parts[1],
            mean=(float(parts[3]), float(parts[4]), float(parts[5])),
            sigma=(float(parts[7]), float(parts[8]), float(parts[9])),
            n_patterns=int(parts[11])))
    return StatModel(method=method, bands=tuple(bands))
