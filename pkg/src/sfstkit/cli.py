"""Command-line front end: reproducible generate/sample/analyze pipelines.

Every command takes an explicit ``--seed`` where randomness is involved,
writes its primary output as plain text, and drops a ``<out>.manifest``
key=value sidecar echoing the command, configuration, input/output hashes
and wall time.  Exit codes: 0 success, 1 usage, 2 data or consistency
error, 3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .dataset import (
    Dataset,
    WalkConfig,
    compare_split_coverage,
    coverage,
    random_walk,
    split,
)
from .errors import (
    ConsistencyError,
    ExhaustionError,
    GenerationError,
    NotTrimError,
    ParseError,
    SfstError,
    SplitError,
)
from .formats import (
    file_hash,
    machine_hash,
    parse_machine,
    parse_pairs,
    serialize_machine,
    serialize_pairs,
)
from .generate import GenConfig, generate, make_rng
from .machine import transduce
from .minimize import equivalent, minimize
from .ostia import run_ostia
from .scan import (
    PRIMITIVES,
    augment_with_repetition,
    build_scan_block,
    replicate_subgraph,
    scan_symbol_table,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_EXHAUSTED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _manifest(out_path, command, config, inputs, outputs, seed, started):
    lines = [f"command={command}", f"version={__version__}"]
    for k in sorted(config):
        lines.append(f"config.{k}={config[k]}")
    for name, path in inputs:
        lines.append(f"input.{name}={file_hash(path)}")
    for name, path in outputs:
        lines.append(f"output.{name}={file_hash(path)}")
    if seed is not None:
        lines.append(f"seed={seed}")
    lines.append(f"wall_time_s={time.perf_counter() - started:.3f}")
    _write(f"{out_path}.manifest", "\n".join(lines) + "\n")


def _load_dataset(path) -> Dataset:
    pairs, comments = parse_pairs(_read(path))
    machine_id = ""
    for c in comments:
        if c.startswith("machine:"):
            machine_id = c.split(":", 1)[1].strip()
    return Dataset(pairs, machine_id, None)


def _dataset_comments(d: Dataset, extra=()):
    comments = [f"machine: {d.machine_id}"]
    if d.config is not None:
        comments.append(f"seed: {d.config.seed}")
        comments.append(
            "config: " + " ".join(f"{k}={v}" for k, v in d.config.metadata().items())
        )
    comments.extend(extra)
    return tuple(comments)


def _cmd_generate(args):
    started = time.perf_counter()
    cfg = GenConfig(
        n_states=args.states,
        input_alphabet_size=args.sigma,
        output_alphabet_size=args.gamma,
        allow_empty_emission=args.lambda_emission,
        seed=args.seed,
        max_rejections=args.max_rejections,
    )
    m = generate(cfg)
    header = "config: " + " ".join(f"{k}={v}" for k, v in cfg.metadata().items())
    _write(args.out, serialize_machine(m, (header,)))
    _manifest(args.out, "generate", cfg.metadata(), [], [("machine", args.out)],
              args.seed, started)
    return EXIT_OK


def _cmd_sample(args):
    started = time.perf_counter()
    m = parse_machine(_read(args.machine))
    cfg = WalkConfig(
        stop_probability=args.stop,
        max_steps=args.max_steps,
        target_pairs=args.pairs,
        seed=args.seed,
        max_attempts=args.max_attempts,
    )
    d = random_walk(m, cfg)
    _write(args.out, serialize_pairs(d.pairs, _dataset_comments(d)))
    _manifest(args.out, "sample", cfg.metadata(), [("machine", args.machine)],
              [("dataset", args.out)], args.seed, started)
    return EXIT_OK


def _cmd_split(args):
    started = time.perf_counter()
    d = _load_dataset(args.data)
    if args.kind == "random":
        if args.fraction is None:
            raise _UsageError("--kind random needs --fraction")
        result = split(d, "random", args.fraction, make_rng(args.seed))
        param = f"fraction={args.fraction}"
    else:
        if args.cutoff is None:
            raise _UsageError("--kind by_length needs --cutoff")
        result = split(d, "by_length", args.cutoff)
        param = f"cutoff={args.cutoff}"
    base = (f"machine: {d.machine_id}", f"split: {args.kind} {param} seed={args.seed}")
    _write(args.train_out, serialize_pairs(result.train.pairs, base + ("side: train",)))
    _write(args.test_out, serialize_pairs(result.test.pairs, base + ("side: test",)))
    _manifest(args.train_out, "split",
              {"kind": args.kind, "param": param, "seed": args.seed},
              [("dataset", args.data)],
              [("train", args.train_out), ("test", args.test_out)],
              args.seed, started)
    return EXIT_OK


def _coverage_text(report):
    lines = [
        f"transitions={len(report.per_transition)}",
        f"min_count={report.min_count}",
        f"mean_count={report.mean_count:.3f}",
        f"uncovered={len(report.uncovered)}",
        f"threshold={report.threshold}",
        f"threshold_met={str(report.threshold_met).lower()}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_coverage(args):
    started = time.perf_counter()
    m = parse_machine(_read(args.machine))
    d = _load_dataset(args.data)
    report = coverage(m, d, args.threshold)
    text = _coverage_text(report)
    sys.stdout.write(text)
    _write(args.out, text)
    _manifest(args.out, "coverage", {"threshold": args.threshold},
              [("machine", args.machine), ("dataset", args.data)],
              [("report", args.out)], None, started)
    return EXIT_OK


def _cmd_compare_coverage(args):
    started = time.perf_counter()
    m = parse_machine(_read(args.machine))
    d = _load_dataset(args.data)
    by_length, random_baseline = compare_split_coverage(
        m, d, cutoff=args.cutoff, fraction=args.fraction,
        rng=make_rng(args.seed), threshold=args.threshold,
    )
    text = (
        "by_length.min_count=%d\nby_length.mean_count=%.3f\n"
        "random.min_count=%d\nrandom.mean_count=%.3f\n"
        % (by_length.min_count, by_length.mean_count,
           random_baseline.min_count, random_baseline.mean_count)
    )
    sys.stdout.write(text)
    _write(args.out, text)
    _manifest(args.out, "compare-coverage",
              {"cutoff": args.cutoff, "fraction": args.fraction,
               "threshold": args.threshold},
              [("machine", args.machine), ("dataset", args.data)],
              [("report", args.out)], args.seed, started)
    return EXIT_OK


def _cmd_ostia(args):
    started = time.perf_counter()
    d = _load_dataset(args.data)
    pairs = d.pairs
    if args.cap is not None and len(pairs) > args.cap:
        rng = make_rng(args.seed)
        keep = sorted(int(i) for i in rng.permutation(len(pairs))[: args.cap])
        pairs = [pairs[i] for i in keep]
    run = run_ostia(pairs)
    _write(args.out, serialize_machine(run.machine))
    report = (
        f"states={run.machine.n_states}\n"
        f"training_pairs={len(pairs)}\n"
        f"merge_attempts={run.merge_attempts}\n"
        f"fold_calls={run.fold_calls}\n"
        f"pushbacks={run.pushbacks}\n"
        f"promotions={run.promotions}\n"
        f"wall_time_s={run.wall_time_s:.3f}\n"
    )
    if args.report:
        _write(args.report, report)
    sys.stdout.write(report)
    _manifest(args.out, "ostia", {"cap": args.cap, "seed": args.seed},
              [("dataset", args.data)], [("machine", args.out)], args.seed, started)
    return EXIT_OK


def _cmd_scan(args):
    started = time.perf_counter()
    tab = scan_symbol_table()
    m = build_scan_block(args.primitive)
    if args.repetition:
        m = augment_with_repetition(m, {tab.id("twice"): 2, tab.id("thrice"): 3})
    if args.replicate > 1:
        words = dict(tab.words)
        entries = []
        for i in range(args.replicate):
            token = max(words) + 1
            words[token] = f"variant{i}"
            entries.append(token)
        tab = type(tab)(words)
        m = replicate_subgraph(m, args.replicate, entries)
    _write(args.out, serialize_machine(m))
    outputs = [("machine", args.out)]
    if args.symbols:
        _write(args.symbols, tab.to_text())
        outputs.append(("symbols", args.symbols))
    _manifest(args.out, "scan",
              {"primitive": args.primitive, "repetition": args.repetition,
               "replicate": args.replicate},
              [], outputs, None, started)
    return EXIT_OK


def _cmd_minimize(args):
    started = time.perf_counter()
    m = parse_machine(_read(args.machine))
    _write(args.out, serialize_machine(minimize(m)))
    _manifest(args.out, "minimize", {}, [("machine", args.machine)],
              [("machine", args.out)], None, started)
    return EXIT_OK


def _cmd_eval(args):
    started = time.perf_counter()
    learned = parse_machine(_read(args.learned))
    target = parse_machine(_read(args.target))
    lines = [f"equivalent={str(equivalent(learned, target)).lower()}"]
    inputs = [("learned", args.learned), ("target", args.target)]
    if args.test:
        pairs = _load_dataset(args.test).pairs
        if not pairs:
            raise ConsistencyError("empty test set")
        hits = 0
        for ins, outs in pairs:
            try:
                got = transduce(learned, ins)
            except SfstError:
                got = None
            hits += got == outs
        lines.append(f"test_pairs={len(pairs)}")
        lines.append(f"exact_match={hits / len(pairs):.4f}")
        inputs.append(("test", args.test))
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    _write(args.out, text)
    _manifest(args.out, "eval", {}, inputs, [("report", args.out)], None, started)
    return EXIT_OK


def _build_parser():
    p = _Parser(prog="sfstkit", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a random machine")
    g.add_argument("--states", type=int, required=True)
    g.add_argument("--sigma", type=int, default=10, help="input alphabet size")
    g.add_argument("--gamma", type=int, default=30, help="output alphabet size")
    g.add_argument("--lambda-emission", action="store_true",
                   help="allow empty transition outputs")
    g.add_argument("--max-rejections", type=int, default=10_000)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(run=_cmd_generate)

    s = sub.add_parser("sample", help="random-walk a dataset out of a machine")
    s.add_argument("--machine", required=True)
    s.add_argument("--pairs", type=int, default=20_000)
    s.add_argument("--stop", type=float, default=0.10)
    s.add_argument("--max-steps", type=int, default=50)
    s.add_argument("--max-attempts", type=int, default=None)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(run=_cmd_sample)

    sp = sub.add_parser("split", help="split a dataset into train/test")
    sp.add_argument("--data", required=True)
    sp.add_argument("--kind", choices=["random", "by_length"], required=True)
    sp.add_argument("--fraction", type=float, default=None)
    sp.add_argument("--cutoff", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--train-out", required=True)
    sp.add_argument("--test-out", required=True)
    sp.set_defaults(run=_cmd_split)

    c = sub.add_parser("coverage", help="per-transition training coverage")
    c.add_argument("--machine", required=True)
    c.add_argument("--data", required=True)
    c.add_argument("--threshold", type=int, default=400)
    c.add_argument("--out", required=True)
    c.set_defaults(run=_cmd_coverage)

    cc = sub.add_parser("compare-coverage",
                        help="length split vs size-matched random split")
    cc.add_argument("--machine", required=True)
    cc.add_argument("--data", required=True)
    cc.add_argument("--cutoff", type=int, default=None)
    cc.add_argument("--fraction", type=float, default=0.8)
    cc.add_argument("--threshold", type=int, default=400)
    cc.add_argument("--seed", type=int, default=0)
    cc.add_argument("--out", required=True)
    cc.set_defaults(run=_cmd_compare_coverage)

    o = sub.add_parser("ostia", help="learn a machine from a dataset")
    o.add_argument("--data", required=True)
    o.add_argument("--cap", type=int, default=1000,
                   help="subsample the dataset to this many pairs")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--report", default=None)
    o.add_argument("--out", required=True)
    o.set_defaults(run=_cmd_ostia)

    sc = sub.add_parser("scan", help="build a SCAN primitive block")
    sc.add_argument("--primitive", choices=sorted(PRIMITIVES), default="jump")
    sc.add_argument("--repetition", action="store_true",
                    help="add twice/thrice commands")
    sc.add_argument("--replicate", type=int, default=1,
                    help="branch into this many isomorphic copies")
    sc.add_argument("--symbols", default=None, help="write the symbol table here")
    sc.add_argument("--out", required=True)
    sc.set_defaults(run=_cmd_scan)

    mi = sub.add_parser("minimize", help="canonical minimal form of a machine")
    mi.add_argument("--machine", required=True)
    mi.add_argument("--out", required=True)
    mi.set_defaults(run=_cmd_minimize)

    e = sub.add_parser("eval", help="compare a learned machine against a reference")
    e.add_argument("--learned", required=True)
    e.add_argument("--target", required=True)
    e.add_argument("--test", default=None)
    e.add_argument("--out", required=True)
    e.set_defaults(run=_cmd_eval)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ConsistencyError, SplitError, NotTrimError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except (GenerationError, ExhaustionError) as e:
        print(f"exhausted: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except OSError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA


def console_main() -> None:
    sys.exit(main())
