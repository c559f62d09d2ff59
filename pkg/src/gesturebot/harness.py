"""Synthetic-corpus generation and the recognition-rate evaluation harness
(per-class report tables and the learning-pattern sweep)."""

import os
from dataclasses import dataclass

from . import mlp as mlp_mod
from . import statmodel as stat_mod
from .signals import (
    CLASSES,
    LabeledCorpus,
    generate_synthetic,
    save_manifest,
    save_trace,
    segment_for_method,
    SYNTH_LEAD_IN,
)

EVAL_CYCLES = 10000
EVAL_TARGET_MSE = 1e-3
EVAL_SEEDS = 5


def _trace_seed(seed, class_index, pattern_index):
    return seed * 1000003 + class_index * 1009 + pattern_index


def make_synthetic_corpus(per_class, noise_sigma, seed, method,
                          pattern_offset=0):
    """Segmented corpus of per_class synthetic patterns for every class.
    pattern_offset shifts the per-trace seeds, giving disjoint corpora for
    train/held-out splits."""
    corpus = LabeledCorpus()
    for ci, label in enumerate(CLASSES):
        for i in range(per_class):
            trace = generate_synthetic(
                label, noise_sigma,
                _trace_seed(seed, ci, pattern_offset + i))
            corpus.add(segment_for_method(trace, SYNTH_LEAD_IN, method), label)
    return corpus


def gen_corpus_files(out_dir, per_class, noise_sigma, seed):
    """Write one trace file per pattern plus the manifest; returns the
    manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for ci, label in enumerate(CLASSES):
        for i in range(per_class):
            trace = generate_synthetic(label, noise_sigma,
                                       _trace_seed(seed, ci, i))
            name = "trace_%s_%03d.csv" % (label.replace("+", "p").replace("-", "m"), i)
            save_trace(trace, os.path.join(out_dir, name))
            rows.append((name, SYNTH_LEAD_IN, label))
    manifest = os.path.join(out_dir, "manifest.csv")
    save_manifest(rows, manifest)
    return manifest


@dataclass
class Recognizer:
    """Uniform classify() over the statistical and ANN models."""
    method: int
    model: object
    accept_threshold: float = mlp_mod.ACCEPT_THRESHOLD

    def classify(self, window):
        if self.method == 3:
            rec = mlp_mod.classify_ann(self.model, window, self.accept_threshold)
            return rec.label, rec.confidence
        return stat_mod.classify_stat(self.model, window)


def train_method(corpus, method, seed=0, cycles=EVAL_CYCLES,
                 target_mse=EVAL_TARGET_MSE):
    if method in (1, 2):
        return Recognizer(method, stat_mod.train_stat(corpus, method))
    model, _ = mlp_mod.train_ann(corpus, mlp_mod.TrainConfig(
        max_cycles=cycles, target_mse=target_mse, seed=seed))
    return Recognizer(3, model)


def evaluate(recognizer, corpus):
    """Per-class recognition rates plus the mean, as {label: rate}."""
    hits = {label: 0 for label in CLASSES}
    totals = {label: 0 for label in CLASSES}
    for window, label in corpus.entries:
        totals[label] += 1
        got, _ = recognizer.classify(window)
        if got == label:
            hits[label] += 1
    rates = {}
    for label in CLASSES:
        rates[label] = 100.0 * hits[label] / totals[label] if totals[label] else 0.0
    rates["mean"] = sum(rates[label] for label in CLASSES) / len(CLASSES)
    return rates


def heldout_rates(method, per_class, noise_sigma, seed,
                  cycles=EVAL_CYCLES, target_mse=EVAL_TARGET_MSE):
    """Train on per_class fresh patterns per class, evaluate on a disjoint
    held-out set of the same size."""
    train = make_synthetic_corpus(per_class, noise_sigma, seed, method)
    held = make_synthetic_corpus(per_class, noise_sigma, seed, method,
                                 pattern_offset=per_class)
    rec = train_method(train, method, seed=seed, cycles=cycles,
                       target_mse=target_mse)
    return evaluate(rec, held)


def mean_heldout_rate(method, per_class, noise_sigma, seeds=EVAL_SEEDS,
                      cycles=EVAL_CYCLES, target_mse=EVAL_TARGET_MSE):
    """Mean rate over several seeds (default evaluation protocol)."""
    total = 0.0
    for seed in range(seeds):
        total += heldout_rates(method, per_class, noise_sigma, seed,
                               cycles, target_mse)["mean"]
    return total / seeds


def method_comparison(per_class, noise_sigma, seed,
                      cycles=EVAL_CYCLES, target_mse=EVAL_TARGET_MSE):
    """Per-class held-out rates for methods 1, 2, 3 on same-seed corpora."""
    return {m: heldout_rates(m, per_class, noise_sigma, seed,
                             cycles, target_mse)
            for m in (1, 2, 3)}


SWEEP_NOISE = 0.15          # hard enough that training-set size matters
SWEEP_HELD_PER_CLASS = 30
SWEEP_HELD_OFFSET = 100     # keeps the held-out set disjoint from training


def pattern_sweep(pattern_counts, noise_sigma=SWEEP_NOISE, seeds=EVAL_SEEDS,
                  cycles=EVAL_CYCLES, target_mse=EVAL_TARGET_MSE):
    """Mean Method-3 rate for each learning-pattern count.

    Training corpora are prefix-nested (a 30-pattern set extends the
    20-pattern set) and every count is scored against the same held-out
    set, so the curve reflects training-set size, not sampling churn.
    """
    out = {}
    for n in pattern_counts:
        total = 0.0
        for seed in range(seeds):
            train = make_synthetic_corpus(n, noise_sigma, seed, 3)
            held = make_synthetic_corpus(SWEEP_HELD_PER_CLASS, noise_sigma,
                                         seed, 3,
                                         pattern_offset=SWEEP_HELD_OFFSET)
            rec = train_method(train, 3, seed=seed, cycles=cycles,
                               target_mse=target_mse)
            total += evaluate(rec, held)["mean"]
        out[n] = total / seeds
    return out


def format_comparison_table(results):
    """Delimiter-separated per-class table, stable class order."""
    lines = ["class\tmethod1\tmethod2\tmethod3"]
    for label in CLASSES + ("mean",):
        lines.append("%s\t%.1f\t%.1f\t%.1f" % (
            label, results[1][label], results[2][label], results[3][label]))
    return "\n".join(lines) + "\n"


def format_sweep_table(sweep):
    lines = ["patterns\trate"]
    for n in sorted(sweep):
        lines.append("%d\t%.1f" % (n, sweep[n]))
    return "\n".join(lines) + "\n"
