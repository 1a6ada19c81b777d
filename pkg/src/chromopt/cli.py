"""Command line entry point: ``chromopt {solve,counterexample,count,sweep,verify}``.

Exit codes: 0 success, 1 internal failure, 2 usage error, 3 failed
verification suite.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import colorsets as cs
from . import counterexamples as ce
from . import graphs as gr
from . import kkt
from .verify import run_suite

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt_float(x: float):
    if math.isinf(x) or math.isnan(x):
        return str(x)
    return float(f"{x:.12g}")


def normalize(obj):
    """Round every float to 12 significant digits."""
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        return {k: normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    return obj


def dump(obj) -> str:
    return json.dumps(normalize(obj), sort_keys=True)


def threads() -> int:
    raw = os.environ.get("CHROMOPT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CHROMOPT_THREADS must be an integer, got {raw!r}")
    return max(1, n)


# commands


def cmd_solve(args) -> str:
    if args.q is None or args.s is None:
        raise UsageError("solve needs --q and --s")
    if not (1 < args.s <= args.q) or args.q > kkt.MAX_Q:
        raise UsageError(f"need 1 < s <= q <= {kkt.MAX_Q}")
    rep = kkt.global_solve(args.q, args.s, paranoid=args.paranoid)
    if args.output == "json":
        return dump(rep.to_dict())
    b = rep.best
    lines = [
        f"OPT_{rep.q}({fmt_float(rep.s)}) = {fmt_float(rep.opt_value)}",
        f"support: {b.candidate.kind} sizes={list(b.candidate.sizes)}",
        "alphas: " + " ".join(str(fmt_float(a)) for a in b.alphas),
        f"ties: {len(rep.ties)}  evaluated: {rep.candidates_evaluated}",
    ]
    return "\n".join(lines)


def cmd_counterexample(args) -> str:
    if args.q13:
        v = ce.q13_vector()
        out = {"vector": v.to_dict(), "objective": cs.obj(v),
               "balanced_objective": cs.obj(ce.balanced_vector(13, 10))}
        return dump(out)
    if args.scan:
        if args.s is None or args.q0 is None:
            raise UsageError("--scan needs --s and --q0")
        crit = "numeric" if args.numeric else "hypothesis"
        qs = ce.scan_counterexamples(args.s, args.q0, crit)
        return dump({"s": args.s, "q0": args.q0, "criterion": crit, "q": qs})
    if args.s is not None and args.q is not None:
        try:
            v = ce.embed_counterexample(args.s, args.q)
        except ValueError as exc:
            raise UsageError(str(exc))
        if v is None:
            return dump({"s": args.s, "q": args.q, "embedded": None})
        base = cs.obj(ce.balanced_vector(args.q, args.s))
        return dump({"s": args.s, "q": args.q, "embedded": v.to_dict(),
                     "objective": cs.obj(v), "balanced_objective": base,
                     "gap": cs.obj(v) - base, "feasible": cs.feasible(v, args.s)})
    if None in (args.s, args.t, args.r):
        raise UsageError("counterexample needs --s --t --r, --scan --s --q0, --s --q, or --q13")
    try:
        rep = ce.construct_counterexample(args.s, args.t, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))
    return dump(rep.to_dict(include_alphas=args.alphas))


def _parse_range(text: str) -> range:
    try:
        parts = [int(x) for x in text.split(":")]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use start:stop:step")
    if len(parts) == 1:
        return range(parts[0], parts[0] + 1)
    if len(parts) == 2:
        parts.append(1)
    start, stop, step = parts
    return range(start, stop + 1, step)


def _graph_from_args(args):
    """``(graph or None, part sizes or None)``."""
    if args.file:
        return gr.read_graph(args.file), None
    if args.parts:
        parts = [int(x) for x in args.parts.split(",")]
        return None, parts
    if args.turan is not None:
        if args.n is None:
            raise UsageError("--turan needs --n")
        try:
            return None, gr.turan_parts(int(args.n), args.turan)
        except ValueError as exc:
            raise UsageError(str(exc))
    raise UsageError("count needs --file, --parts or --turan")


def cmd_count(args) -> str:
    g, parts = _graph_from_args(args)
    method = args.method
    if parts is not None and method in ("auto", "multipartite"):
        res = gr.count_colorings_multipartite(parts, args.q)
    else:
        if g is None:
            g = gr.complete_multipartite(parts)
        if method == "brute" or (method == "auto" and args.q ** g.n <= gr.BRUTE_LIMIT and g.n <= 10):
            res = gr.count_colorings_brute(g, args.q)
        elif method in ("auto", "dc"):
            res = gr.count_colorings_dc(g, args.q)
        else:
            raise UsageError("the multipartite counter needs --parts or --turan")
    if args.output == "json":
        return dump({"count": str(res.count), "q": res.q, "method": res.method})
    return str(res.count)


def _turan_row(job):
    s, q, n = job
    parts = gr.turan_parts(n, s)
    count = gr.count_colorings_multipartite(parts, q).count
    rate = math.log(count) / n if count else -math.inf
    return n, count.bit_length(), rate


def cmd_sweep(args) -> str:
    if args.turan is None or args.n is None:
        raise UsageError("sweep needs --turan S and --n start:stop:step")
    ns = list(_parse_range(args.n))
    if not ns or min(ns) < args.turan:
        raise UsageError("every n must be at least the number of parts")
    jobs = [(args.turan, args.q, n) for n in ns]
    workers = min(threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_turan_row, jobs))
    else:
        rows = [_turan_row(j) for j in jobs]
    lines = ["n,q,count_bits,log_rate"]
    lines += [f"{n},{args.q},{bits},{fmt_float(rate)}" for n, bits, rate in rows]
    return "\n".join(lines)


def cmd_verify(args) -> tuple[str, bool]:
    try:
        checks = run_suite(args.suite, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    ok = all(c.ok for c in checks)
    if args.output == "json":
        body = {"suite": args.suite, "seed": args.seed, "passed": ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}
        return dump(body), ok
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}".rstrip() for c in checks]
    lines.append(f"{args.suite}: {'pass' if ok else 'FAIL'}")
    return "\n".join(lines), ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chromopt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve OPT_q(s)")
    s.add_argument("--q", type=int)
    s.add_argument("--s", type=float)
    s.add_argument("--paranoid", action="store_true", help="sweep Q shapes over every k")
    s.add_argument("--output", choices=["json", "text"], default="text")

    c = sub.add_parser("counterexample", help="constructions beating the balanced vector")
    c.add_argument("--s", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--q", type=int, help="embed the 13-color block into the balanced vector")
    c.add_argument("--q0", type=int)
    c.add_argument("--scan", action="store_true")
    c.add_argument("--numeric", action="store_true", help="scan by Y > X instead of the proven range")
    c.add_argument("--q13", action="store_true")
    c.add_argument("--alphas", action="store_true", help="include the weight list")
    c.add_argument("--output", choices=["json"], default="json")

    for name in ("count", "sweep"):
        g = sub.add_parser(name, help="exact coloring counts" if name == "count" else "log-rate sweep")
        g.add_argument("--q", type=int, required=True)
        g.add_argument("--turan", type=int, metavar="S")
        g.add_argument("--n", type=str)
        if name == "count":
            g.add_argument("--parts", type=str, help="comma-separated part sizes")
            g.add_argument("--file", type=str)
            g.add_argument("--method", choices=["auto", "brute", "dc", "multipartite"], default="auto")
            g.add_argument("--output", choices=["json", "text"], default="text")
        else:
            g.add_argument("--output", choices=["csv"], default="csv")

    v = sub.add_parser("verify", help="run a self-check suite")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--output", choices=["json", "text"], default="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            text, ok = cmd_verify(args)
            print(text)
            return EXIT_OK if ok else EXIT_VERIFY
        handler = {"solve": cmd_solve, "counterexample": cmd_counterexample,
                   "count": cmd_count, "sweep": cmd_sweep}[args.command]
        print(handler(args))
        return EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
