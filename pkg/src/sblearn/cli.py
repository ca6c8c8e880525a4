"""Command-line entry point: learn, run, export and benchmark."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .generators import random_representation, random_sfa
from .learner import learn
from .pwf import canonicalize, representation_from_json, representation_to_json, size_of
from .sfa import (
    equivalent,
    make_sfa_teacher,
    parse_word,
    sfa_from_json,
    to_dot,
)
from .sfa_learner import learn_sfa
from .teacher import (
    Transcript,
    full_break_link_set,
    make_simulated_teacher,
    parse_strategy,
    query_counts,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dump_transcript(transcript: Optional[Transcript]) -> None:
    if transcript is not None:
        for entry in transcript:
            sys.stderr.write(json.dumps(entry) + "\n")


def cmd_learn_pwf(args) -> int:
    if args.target is not None:
        try:
            target = representation_from_json(_load_json(args.target))
        except ValueError as exc:
            raise InputError(f"{args.target}: {exc}") from exc
    elif args.random_pieces is not None:
        target = random_representation(random.Random(args.seed), args.random_pieces)
    else:
        raise InputError("give a TARGET file or --random-pieces K")
    target = canonicalize(target)
    try:
        strategy = parse_strategy(args.strategy)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    transcript = Transcript() if args.verbose else None
    mq, eq = make_simulated_teacher(target, strategy, transcript)
    report = learn(mq, eq)
    _dump_transcript(transcript)
    ok = report.result == target
    _emit(
        {
            "target": representation_to_json(target),
            "strategy": str(strategy),
            "report": report.to_json(),
            "queries": query_counts(mq, eq),
            "verified": ok,
        },
        args.out,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def _load_sfa(path: str):
    try:
        return sfa_from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_learn_sfa(args) -> int:
    if args.target is not None:
        target = _load_sfa(args.target)
    elif args.random_states is not None:
        target = random_sfa(random.Random(args.seed), args.random_states)
    else:
        raise InputError("give a TARGET file or --random-states N")
    transcript = Transcript() if args.verbose else None
    mq, eq = make_sfa_teacher(target, transcript)
    report = learn_sfa(mq, eq)
    _dump_transcript(transcript)
    ok = equivalent(report.result, target)
    _emit({"report": report.to_json(), "queries": query_counts(mq, eq), "verified": ok}, args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_run(args) -> int:
    A = _load_sfa(args.sfa)
    try:
        word = parse_word(args.word)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    accepted, visited = A.run(word)
    trace = [str(visited[0])]
    for q, s in zip(word, visited[1:]):
        trace.append(f"--{q}--> {s}")
    print("accept" if accepted else "reject")
    print(" ".join(trace))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    A = _load_sfa(args.sfa)
    text = to_dot(A)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- benchmark ----------------------------------------------------------------


def parse_grid(text: str) -> list[int]:
    """'2..64' doubles from 2 to 64; '3,5,9' is taken literally; '8' alone is [8]."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if lo < 1 or hi < lo:
                raise ValueError
            out = []
            x = lo
            while x <= hi:
                out.append(x)
                x *= 2
            return out
        values = [int(x) for x in text.split(",")]
        if any(v < 1 for v in values):
            raise ValueError
        return values
    except ValueError:
        raise InputError(f"bad grid {text!r}; use e.g. 2..64 or 2,4,8") from None


def bench_one(config: tuple[int, int, int, int, str]) -> dict:
    pieces, bits, seed, rep, strategy_text = config
    rng = random.Random(f"{seed}:{pieces}:{bits}:{rep}")
    target = random_representation(rng, pieces, max_runs=8, run_bits=bits)
    strategy = parse_strategy(strategy_text)
    mq, eq = make_simulated_teacher(target, strategy)
    start = time.perf_counter()
    report = learn(mq, eq)
    wall_ms = (time.perf_counter() - start) * 1000.0
    size = size_of(target)
    return {
        "pieces": pieces,
        "bits": bits,
        "seed": seed,
        "repeat": rep,
        "strategy": strategy_text,
        "size": size,
        "mq": report.mq_count,
        "eq": report.eq_count,
        "break_links": len(full_break_link_set(target)),
        "mq_per_size": round(report.mq_count / size, 6),
        "verified": report.result == target,
        "wall_ms": round(wall_ms, 3),
    }


def fit_summary(records: Sequence[dict]) -> dict:
    xs = [r["size"] for r in records]
    ys = [r["mq"] for r in records]
    ratios = [r["mq"] / r["size"] for r in records]
    slope = intercept = 0.0
    if len(records) > 1 and len(set(xs)) > 1:
        slope, intercept = statistics.linear_regression(xs, ys)
    return {
        "records": len(records),
        "slope": round(slope, 6),
        "intercept": round(intercept, 6),
        "max_ratio": round(max(ratios), 6),
        "median_ratio": round(statistics.median(ratios), 6),
        "eq_within_break_links": all(r["eq"] <= r["break_links"] + 1 for r in records),
        "all_verified": all(r["verified"] for r in records),
    }


def cmd_bench(args) -> int:
    pieces = parse_grid(args.pieces)
    bits = parse_grid(args.bits)
    try:
        parse_strategy(args.strategy)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    configs = [(k, b, args.seed, r, args.strategy) for k in pieces for b in bits for r in range(args.repeats)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(bench_one, configs))
    else:
        records = [bench_one(c) for c in configs]
    records.sort(key=lambda r: (r["pieces"], r["bits"], r["repeat"]))
    summary = fit_summary(records)
    if not args.timing:
        # wall time is the only nondeterministic field
        for r in records:
            del r["wall_ms"]
    if args.format == "json":
        text = json.dumps({"records": records, "summary": summary}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        for key, value in summary.items():
            buf.write(f"# {key}: {value}\n")
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if summary["all_verified"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sblearn", description="Learn piecewise functions and symbolic automata over the rationals."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn-pwf", help="learn a piecewise function from a simulated teacher")
    p.add_argument("target", nargs="?", help="representation JSON file")
    p.add_argument("--random-pieces", type=int, metavar="K", help="learn a random target with K pieces instead")
    p.add_argument("--strategy", default="simplest", help="simplest, boundary, deep:N or random:SEED")
    p.add_argument("--seed", type=int, default=0, help="seed for --random-pieces")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--verbose", action="store_true", help="log every oracle call to stderr as JSON lines")
    p.set_defaults(func=cmd_learn_pwf)

    p = sub.add_parser("learn-sfa", help="learn a symbolic automaton from a simulated teacher")
    p.add_argument("target", nargs="?", help="automaton JSON file")
    p.add_argument("--random-states", type=int, metavar="N", help="learn a random N-state target instead")
    p.add_argument("--seed", type=int, default=0, help="seed for --random-states")
    p.add_argument("--out")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_learn_sfa)

    p = sub.add_parser("run", help="run an automaton on a word")
    p.add_argument("sfa", help="automaton JSON file")
    p.add_argument("word", help='whitespace-separated rationals, e.g. "7 14" or "13/2 1"')
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export-dot", help="print an automaton in Graphviz DOT")
    p.add_argument("sfa")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("bench", help="query counts over a grid of random targets")
    p.add_argument("--pieces", default="2..64", help="piece counts, e.g. 2..64 (doubling) or 2,3,5")
    p.add_argument("--bits", default="4..32", help="run magnitude exponents, e.g. 4..32")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--strategy", default="simplest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock milliseconds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
