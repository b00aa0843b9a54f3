"""Command line entry point ``sno``.

Exit codes: 0 success, 1 usage, 2 validation, 3 mismatch (check), 4 I/O.
"""

import argparse
import csv
import sys
import time

import numpy as np

from . import container
from .circle_oracle import CircleOracle
from .diagrams import ClassTag, generate, native_matrix, parse_diagram, render
from .errors import SuccinctError
from .polygon_oracle import PolygonOracle
from .trapezoid_oracle import TrapezoidOracle

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3, 4

WAVELET = {ClassTag.CIRCLE: CircleOracle, ClassTag.TRAPEZOID: TrapezoidOracle}
BENCH_FIELDS = [
    "class", "impl", "n", "N", "build_ms", "bits_total", "bits_per_vertex",
    "adjacent_ns", "degree_ns", "neigh_ns_per_out",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _class_arg(text):
    try:
        return ClassTag.parse(text)
    except SuccinctError:
        raise argparse.ArgumentTypeError(f"unknown class {text!r}") from None


def _check_impl(cls, impl):
    if impl == "wavelet" and cls not in WAVELET:
        raise UsageError(f"impl wavelet is only available for circle and trapezoid, not {cls.value}")


def build_oracle(diagram, cls, impl="unified", explicit_degrees=False):
    """The oracle a CLI build would produce for this diagram."""
    cls = ClassTag.parse(cls)
    _check_impl(cls, impl)
    if impl == "wavelet":
        return WAVELET[cls].build(diagram, explicit_degrees=explicit_degrees)
    return PolygonOracle.build(diagram, explicit_degrees=explicit_degrees, impl_class=cls)


def _read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, data):
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)


def cmd_gen(args, out):
    d = generate(args.cls, args.n, k=args.k, seed=args.seed, spread=args.spread)
    _write(args.out, render(d, args.cls))
    return EXIT_OK


def cmd_build(args, out):
    _check_impl(args.cls, args.impl)
    d, _ = parse_diagram(_read_text(args.input), args.cls)
    o = build_oracle(d, args.cls, args.impl, args.explicit_degrees)
    _write(args.out, container.dumps(o))
    return EXIT_OK


def cmd_query(args, out):
    o = container.load(args.oracle)
    need = 2 if args.op == "adjacent" else 1
    if len(args.args) != need:
        raise UsageError(f"--op {args.op} takes {need} vertex argument(s)")
    if args.op == "degree":
        print(o.degree(args.args[0]), file=out)
    elif args.op == "adjacent":
        print("true" if o.adjacent(*args.args) else "false", file=out)
    else:
        print(" ".join(str(int(v)) for v in o.neighborhood(args.args[0])), file=out)
    return EXIT_OK


def check_oracle(o, truth):
    """Compare an oracle with a ground-truth matrix; returns mismatch messages."""
    n = truth.shape[0]
    problems = []
    us = np.repeat(np.arange(1, n + 1), n)
    vs = np.tile(np.arange(1, n + 1), n)
    adj = np.asarray(o.adjacent_many(us, vs), dtype=bool).reshape(n, n)
    bad = np.argwhere(adj != truth)
    if bad.size:
        u, v = bad[0] + 1
        problems.append(f"adjacency: {len(bad)} wrong pairs, first ({u}, {v})")
    want = truth.sum(axis=1)
    degs = np.array([o.degree(v) for v in range(1, n + 1)], dtype=np.int64)
    bad = np.flatnonzero(degs != want)
    if bad.size:
        v = bad[0] + 1
        problems.append(f"degrees: {len(bad)} wrong, first vertex {v} ({degs[v - 1]} != {want[v - 1]})")
    wrong = [v for v in range(1, n + 1)
             if list(map(int, o.neighborhood(v))) != (np.flatnonzero(truth[v - 1]) + 1).tolist()]
    if wrong:
        problems.append(f"neighborhoods: {len(wrong)} wrong, first vertex {wrong[0]}")
    return problems


def cmd_check(args, out, builder=build_oracle):
    _check_impl(args.cls, args.impl)
    d, _ = parse_diagram(_read_text(args.input), args.cls)
    o = builder(d, args.cls, args.impl)
    truth = native_matrix(d, args.cls)
    problems = check_oracle(o, truth)
    n = truth.shape[0]
    if problems:
        for p in problems:
            print(f"MISMATCH {p}", file=out)
        return EXIT_MISMATCH
    print(f"ok {args.cls.value} impl={args.impl} n={n}: {n * n} pairs, {n} degrees, {n} neighborhoods", file=out)
    return EXIT_OK


def _warm_up(cls, impl):
    small = generate(cls, 8, seed=0)
    o = build_oracle(small, cls, impl)
    o.adjacent(1, 2)
    o.degree(1)
    o.neighborhood(1)


def bench_row(cls, impl, d, queries, seed):
    _warm_up(cls, impl)
    t0 = time.perf_counter()
    o = build_oracle(d, cls, impl)
    build_ms = (time.perf_counter() - t0) * 1e3
    n = o.n
    rng = np.random.default_rng(seed)
    us = rng.integers(1, n + 1, queries).tolist()
    vs = rng.integers(1, n + 1, queries).tolist()
    t0 = time.perf_counter_ns()
    for u, v in zip(us, vs):
        o.adjacent(u, v)
    adj_ns = (time.perf_counter_ns() - t0) / max(queries, 1)
    t0 = time.perf_counter_ns()
    for u in us:
        o.degree(u)
    deg_ns = (time.perf_counter_ns() - t0) / max(queries, 1)
    total = 0
    t0 = time.perf_counter_ns()
    for u in us:
        total += len(o.neighborhood(u))
    neigh_ns = (time.perf_counter_ns() - t0) / max(total, 1)
    bits = o.bits_used()
    return {
        "class": ClassTag.parse(cls).value, "impl": "unified" if impl == "unified" else container.IMPL_NAMES[container.impl_of(o)],
        "n": n, "N": o.N, "build_ms": f"{build_ms:.3f}", "bits_total": bits,
        "bits_per_vertex": f"{bits / max(n, 1):.3f}", "adjacent_ns": f"{adj_ns:.1f}",
        "degree_ns": f"{deg_ns:.1f}", "neigh_ns_per_out": f"{neigh_ns:.1f}",
    }


def cmd_bench(args, out):
    if args.impl == "all":
        impls = ["unified"] + (["wavelet"] if args.cls in WAVELET else [])
    else:
        _check_impl(args.cls, args.impl)
        impls = [args.impl]
    d = generate(args.cls, args.n, k=args.k, seed=args.seed, spread=args.spread)
    w = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    for impl in impls:
        w.writerow(bench_row(args.cls, impl, d, args.queries, args.seed))
    return EXIT_OK


def cmd_space(args, out):
    o = container.load(args.oracle)
    rep = o.space_report()
    print(f"# {type(o).__name__} class={ClassTag.parse(o.cls).value} n={o.n} N={o.N}", file=out)
    width = max(len(k) for k in rep)
    for name, bits in rep.items():
        print(f"{name:<{width}}  {bits}", file=out)
    print(f"{'per_vertex':<{width}}  {rep['total'] / max(o.n, 1):.3f}", file=out)
    return EXIT_OK


def make_parser():
    p = _Parser(prog="sno", description="Succinct navigational oracles for intersection graphs on a circle.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a random diagram")
    g.add_argument("--class", dest="cls", type=_class_arg, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--spread", type=float)
    g.add_argument("--out", required=True)

    b = sub.add_parser("build", help="build and serialize an oracle")
    b.add_argument("--class", dest="cls", type=_class_arg, required=True)
    b.add_argument("--impl", choices=["unified", "wavelet"], default="unified")
    b.add_argument("--input", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--explicit-degrees", action="store_true")

    q = sub.add_parser("query", help="answer one query from an oracle file")
    q.add_argument("--oracle", required=True)
    q.add_argument("--op", choices=["degree", "adjacent", "neighborhood"], required=True)
    q.add_argument("--args", type=int, nargs="+", required=True)

    c = sub.add_parser("check", help="compare an oracle with brute force")
    c.add_argument("--class", dest="cls", type=_class_arg, required=True)
    c.add_argument("--input", required=True)
    c.add_argument("--impl", choices=["unified", "wavelet"], default="unified")

    be = sub.add_parser("bench", help="time and size an oracle (CSV)")
    be.add_argument("--class", dest="cls", type=_class_arg, required=True)
    be.add_argument("--n", type=int, required=True)
    be.add_argument("--queries", type=int, required=True)
    be.add_argument("--seed", type=int, required=True)
    be.add_argument("--k", type=int)
    be.add_argument("--spread", type=float)
    be.add_argument("--impl", choices=["unified", "wavelet", "all"], default="all")

    s = sub.add_parser("space", help="per-component bit counts of an oracle file")
    s.add_argument("--oracle", required=True)
    return p


COMMANDS = {"gen": cmd_gen, "build": cmd_build, "query": cmd_query, "check": cmd_check,
            "bench": cmd_bench, "space": cmd_space}


def main(argv=None, out=None, builder=None):
    """Run the CLI and return its exit code.

    ``builder`` replaces :func:`build_oracle` for ``check``; tests use it to
    plant a broken oracle.
    """
    out = sys.stdout if out is None else out
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        if args.command == "check" and builder is not None:
            return cmd_check(args, out, builder)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"sno: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SuccinctError as e:
        print(f"sno: invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"sno: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
