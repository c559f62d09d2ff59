"""Command-line tool: corpus generation, training, evaluation reports,
headless serving and session replay.

Exit codes: 0 success, 2 usage, 3 data error, 4 training divergence.
"""

import argparse
import hashlib
import json
import sys

from . import harness, mlp, statmodel
from .errors import DivergenceDetected, GestureBotError
from .gateway import replay_log_file, serve_forever
from .session import SessionConfig, TeachSession, program_text
from .signals import load_corpus

EXIT_DATA = 3
EXIT_DIVERGENCE = 4


def _config_hash(args):
    blob = json.dumps({k: v for k, v in sorted(vars(args).items())
                       if k != "func"}, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _report_header(args):
    return "# seed=%s config=%s\n" % (getattr(args, "seed", "-"),
                                      _config_hash(args))


def _apply_config_file(args):
    # config file values override flags (applied last)
    if getattr(args, "config", None):
        with open(args.config) as f:
            for key, value in json.load(f).items():
                setattr(args, key.replace("-", "_"), value)


def cmd_gen_corpus(args):
    manifest = harness.gen_corpus_files(args.out, args.patterns,
                                        args.noise, args.seed)
    n = 12 * args.patterns
    print("%d traces, manifest %s" % (n, manifest))
    return 0


def cmd_train(args):
    corpus = load_corpus(args.corpus, args.method)
    if args.method in (1, 2):
        model = statmodel.train_stat(corpus, args.method)
        statmodel.save_stat(model, args.out)
        print("statistical model (method %d) -> %s" % (args.method, args.out))
    else:
        config = mlp.TrainConfig(learning_rate=args.lr, momentum=args.momentum,
                                 max_cycles=args.cycles,
                                 target_mse=args.target_mse, seed=args.seed)
        model, report = mlp.train_ann(corpus, config)
        mlp.save_model(model, args.out)
        print("ann model -> %s" % args.out)
        print("cycles=%d final_mse=%.6g" % (report.cycles_run, report.final_mse))
    return 0


def _load_any_model(path):
    with open(path) as f:
        head = f.readline().strip()
    if head == "mlp v1":
        return harness.Recognizer(3, mlp.load_model(path))
    model = statmodel.load_stat(path)
    return harness.Recognizer(model.method, model)


def cmd_eval(args):
    recognizer = _load_any_model(args.model)
    corpus = load_corpus(args.corpus, recognizer.method)
    rates = harness.evaluate(recognizer, corpus)
    sys.stdout.write(_report_header(args))
    print("class\trate")
    for label in harness.CLASSES + ("mean",):
        print("%s\t%.1f" % (label, rates[label]))
    return 0


def cmd_compare(args):
    results = harness.method_comparison(args.patterns, args.noise, args.seed,
                                        cycles=args.cycles)
    sys.stdout.write(_report_header(args))
    sys.stdout.write(harness.format_comparison_table(results))
    return 0


def cmd_sweep(args):
    counts = [int(v) for v in args.patterns.split(",")]
    sweep = harness.pattern_sweep(counts, args.noise, seeds=args.seeds,
                                  cycles=args.cycles)
    sys.stdout.write(_report_header(args))
    sys.stdout.write(harness.format_sweep_table(sweep))
    return 0


def _build_session(args):
    config = SessionConfig(profile=args.profile,
                           method=getattr(args, "method", 3),
                           watchdog_timeout_ms=args.timeout_ms)
    stat_model = None
    mlp_model = None
    if getattr(args, "model", None):
        rec = _load_any_model(args.model)
        config.method = rec.method
        if rec.method == 3:
            mlp_model = rec.model
        else:
            stat_model = rec.model
    return TeachSession(config, stat_model=stat_model, mlp_model=mlp_model)


def cmd_serve(args):
    host, _, port = args.endpoint.rpartition(":")
    session = _build_session(args)
    print("serving ws://%s:%s (profile %s)" % (host or "127.0.0.1", port,
                                               args.profile))
    serve_forever(session, host or "127.0.0.1", int(port),
                  record_path=args.record)
    return 0


def cmd_replay(args):
    session = _build_session(args)
    transcript = replay_log_file(args.log, session)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for line in transcript:
            out.write(line + "\n")
    finally:
        if args.out:
            out.close()
    if args.program:
        program = session.generate_program()
        with open(args.program, "w") as f:
            f.write(program_text(program))
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="gesturebot")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-corpus", help="generate a synthetic labeled corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--patterns", type=int, default=30)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("train", help="train a recognizer from a corpus manifest")
    p.add_argument("--corpus", required=True)
    p.add_argument("--method", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cycles", type=int, default=harness.EVAL_CYCLES)
    p.add_argument("--target-mse", type=float, default=harness.EVAL_TARGET_MSE)
    p.add_argument("--lr", type=float, default=0.25)
    p.add_argument("--momentum", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="per-class recognition-rate table")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="methods 1/2/3 per-class report")
    p.add_argument("--patterns", type=int, default=30)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cycles", type=int, default=harness.EVAL_CYCLES)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="learning-pattern count sweep (method 3)")
    p.add_argument("--patterns", default="20,30,60,70")
    p.add_argument("--noise", type=float, default=harness.SWEEP_NOISE)
    p.add_argument("--seeds", type=int, default=harness.EVAL_SEEDS)
    p.add_argument("--cycles", type=int, default=harness.EVAL_CYCLES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the live gateway + simulator")
    p.add_argument("--profile", default="hp6")
    p.add_argument("--endpoint", default="127.0.0.1:8765")
    p.add_argument("--timeout-ms", type=int, default=200)
    p.add_argument("--model", default=None)
    p.add_argument("--record", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay", help="replay a recorded session log")
    p.add_argument("--log", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--program", default=None)
    p.add_argument("--profile", default="hp6")
    p.add_argument("--timeout-ms", type=int, default=200)
    p.add_argument("--model", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_replay)

    args = ap.parse_args(argv)
    try:
        _apply_config_file(args)
        return args.func(args)
    except DivergenceDetected as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DIVERGENCE
    except (GestureBotError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
