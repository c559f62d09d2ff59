import json

import pytest

from gesturebot.cli import main
from gesturebot.gateway import encode_message
from gesturebot.signals import CLASSES, load_manifest
from gesturebot.statmodel import load_stat


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def corpus_dir(tmp_path, capsys):
    out = tmp_path / "corpus"
    code, _, _ = run(["gen-corpus", "--out", str(out), "--patterns", "2",
                      "--noise", "0.02", "--seed", "1"], capsys)
    assert code == 0
    return out


class TestGenCorpus:
    def test_writes_traces_and_manifest(self, corpus_dir):
        rows = load_manifest(corpus_dir / "manifest.csv")
        assert len(rows) == 24   # 12 classes x 2 patterns
        labels = {label for _, _, label in rows}
        assert labels == set(CLASSES)
        for name, _, _ in rows:
            assert (corpus_dir / name).exists()

    def test_full_default_count(self, tmp_path, capsys):
        out = tmp_path / "big"
        code, stdout, _ = run(["gen-corpus", "--out", str(out)], capsys)
        assert code == 0
        assert "360 traces" in stdout


class TestTrainEval:
    def test_statistical_self_evaluation(self, corpus_dir, tmp_path, capsys):
        model = tmp_path / "m2.model"
        code, _, _ = run(["train", "--corpus", str(corpus_dir / "manifest.csv"),
                          "--method", "2", "--out", str(model)], capsys)
        assert code == 0
        assert load_stat(model).method == 2

        code, stdout, _ = run(["eval", "--model", str(model),
                               "--corpus", str(corpus_dir / "manifest.csv")],
                              capsys)
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines[0].startswith("# seed=")
        assert lines[1] == "class\trate"
        mean = dict(l.split("\t") for l in lines[2:])["mean"]
        assert float(mean) == 100.0

    def test_ann_train_and_eval(self, corpus_dir, tmp_path, capsys):
        model = tmp_path / "ann.model"
        code, stdout, _ = run(
            ["train", "--corpus", str(corpus_dir / "manifest.csv"),
             "--method", "3", "--out", str(model), "--cycles", "10000",
             "--target-mse", "0.001"], capsys)
        assert code == 0
        assert "cycles=" in stdout
        code, stdout, _ = run(["eval", "--model", str(model),
                               "--corpus", str(corpus_dir / "manifest.csv")],
                              capsys)
        assert code == 0
        mean = dict(l.split("\t") for l in stdout.strip().splitlines()[2:])["mean"]
        assert float(mean) >= 90.0

    def test_missing_corpus_is_data_error(self, tmp_path, capsys):
        code, _, err = run(["train", "--corpus", str(tmp_path / "nope.csv"),
                            "--method", "2", "--out", str(tmp_path / "m")],
                           capsys)
        assert code == 3
        assert "error" in err


class TestReplayCommand:
    def make_log(self, path):
        lines = [
            encode_message(1, "Hello", {"role": "operator"}),
            encode_message(2, "Command", {"t_ms": 0, "verb": "ROBOT MOTORS ON",
                                          "confidence": 1.0}),
            encode_message(3, "Command", {"t_ms": 10,
                                          "verb": "COMPUTER MOVE LINE",
                                          "confidence": 1.0}),
            encode_message(4, "Heartbeat", {"t_ms": 100}),
        ]
        path.write_text("\n".join(lines) + "\n")

    def test_replay_writes_transcript_and_program(self, tmp_path, capsys):
        log = tmp_path / "in.log"
        self.make_log(log)
        args = ["replay", "--log", str(log)]
        out1, prog1 = tmp_path / "a.out", tmp_path / "a.prog"
        out2, prog2 = tmp_path / "b.out", tmp_path / "b.prog"
        assert run(args + ["--out", str(out1), "--program", str(prog1)],
                   capsys)[0] == 0
        assert run(args + ["--out", str(out2), "--program", str(prog2)],
                   capsys)[0] == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert prog1.read_bytes() == prog2.read_bytes()
        assert prog1.read_text().startswith("PROGRAM ")

    def test_missing_log_is_data_error(self, tmp_path, capsys):
        code, _, err = run(["replay", "--log", str(tmp_path / "no.log")],
                           capsys)
        assert code == 3


class TestConfigFile:
    def test_config_overrides_flags(self, tmp_path, capsys):
        log = tmp_path / "in.log"
        TestReplayCommand().make_log(log)
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"log": str(log)}))
        # flag points at a missing file; the config file wins
        code, _, _ = run(["replay", "--log", str(tmp_path / "missing.log"),
                          "--out", str(tmp_path / "t.out"),
                          "--config", str(cfg)], capsys)
        assert code == 0


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["train"])   # missing required flags
    assert e.value.code == 2
