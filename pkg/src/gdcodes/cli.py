"""Command-line interface (``gdcodes``).

Exit codes: 0 success or Optimal, 1 I/O or other error, 2 usage error,
3 Suboptimal, 4 Open, 5 Unresolved, 6 verification failure.

With ``--porcelain`` every result is printed as one JSON object per line.
Each object has a ``"kind"`` key naming the record type (``bound``,
``build``, ``verify``, ``sweep-row``, ``sweep-summary``, ``hillclimb``,
``catalog-entry``, ``catalog-seed``, ``oracle``, ``error``); the remaining
keys are specific to that kind and documented in the README.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog, formats, pipeline
from .bounds import BoundKind, brute_force_optimum, optimal_size, upper_bound
from .core import (Composition, GddType, GdcError, GroupDivisibleCode, verify_code,
                   verify_design, verify_gdc)
from .designs import NoCompletion, Prestructure, SearchBudget, hill_climb_gdd

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_SUBOPTIMAL = 3
EXIT_OPEN = 4
EXIT_UNRESOLVED = 5
EXIT_VERIFY = 6

STATUS_EXIT = {
    pipeline.Status.OPTIMAL: EXIT_OK,
    pipeline.Status.SUBOPTIMAL: EXIT_SUBOPTIMAL,
    pipeline.Status.OPEN: EXIT_OPEN,
    pipeline.Status.UNRESOLVED: EXIT_UNRESOLVED,
}


class _Out:
    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def emit(self, kind: str, human: str, **record) -> None:
        if self.porcelain:
            print(json.dumps({"kind": kind, **record}, sort_keys=True, default=str))
        else:
            print(human)


def _comp(q: int, weights) -> Composition:
    try:
        comp = Composition(tuple(weights))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if comp.q != q:
        raise argparse.ArgumentTypeError(f"composition {comp} has {comp.q - 1} symbols, q={q} needs {q - 1}")
    return comp


def _u(n: int, d: int, comp: Composition) -> str:
    return f"U({n},{d},{comp})"


def cmd_bound(a, out: _Out) -> int:
    comp = _comp(a.q, a.comp)
    try:
        b = optimal_size(a.q, a.n, a.d, comp)
    except ValueError:
        b = upper_bound(a.n, a.d, comp)
    out.emit("bound", f"{b.kind.value} {'-' if b.value is None else b.value} [{b.source}]",
             q=a.q, n=a.n, d=a.d, comp=list(comp.weights), bound_kind=b.kind.value, value=b.value,
             source=b.source)
    return EXIT_OPEN if b.kind is BoundKind.OPEN else EXIT_OK


def cmd_build(a, out: _Out) -> int:
    comp = _comp(a.q, a.comp)
    cert = pipeline.build_optimal(a.q, a.n, a.d, comp, SearchBudget(seed=a.seed))
    path = None
    if cert.code is not None:
        path = a.out or f"q{a.q}-n{a.n}-d{a.d}-{'.'.join(map(str, comp.weights))}.ccc"
        formats.write_code(path, cert.code, [f"recipe {cert.recipe}", f"seed {a.seed}"])
    if cert.status is pipeline.Status.OPTIMAL:
        rel = "=" if cert.bound.kind is BoundKind.EXACT else "= upper bound"
        human = f"Optimal {cert.size} {rel} {_u(a.n, a.d, comp)}"
    elif cert.code is not None:
        human = f"{cert.status.value} {cert.size} (known value {cert.bound.value if cert.bound else '?'})"
    else:
        human = f"{cert.status.value}: " + "; ".join(cert.missing)
    if path and not out.porcelain:
        human += f"\nwrote {path}"
    rec = cert.record(a.q, a.n, a.d, comp)
    out.emit("build", human, path=path, **rec)
    if cert.code is not None and not cert.report.passed:
        return EXIT_VERIFY
    return STATUS_EXIT[cert.status]


def cmd_verify(a, out: _Out) -> int:
    path = Path(a.file)
    text = path.read_text()
    head = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    try:
        if head == "GDD 1":
            d, partial = formats.parse_design(text, verify=False)
            rep = formats._structural_report(d) if partial else verify_design(d)
            what, size = ("partial design" if partial else "design"), len(d.blocks)
        elif head == "BCS 1":
            from .gdcbuild import develop
            obj = develop(formats.parse_bases(text))
            rep, what, size = VerificationOK(), "base set", len(obj)
        else:
            obj = formats.parse_code(text, verify=False)
            rep = verify_gdc(obj) if isinstance(obj, GroupDivisibleCode) else verify_code(obj)
            what, size = ("GDC" if isinstance(obj, GroupDivisibleCode) else "code"), len(obj)
    except GdcError as e:
        out.emit("verify", f"FAIL {path}: {e}", file=str(path), passed=False, error=str(e))
        return EXIT_VERIFY
    fails = [f"{c.name}: {c.witness}" for c in rep.failures()]
    human = f"{'PASS' if rep.passed else 'FAIL'} {what} {path} size {size}"
    if fails:
        human += "\n  " + "\n  ".join(fails)
    out.emit("verify", human, file=str(path), passed=rep.passed, object=what, size=size, failures=fails)
    return EXIT_OK if rep.passed else EXIT_VERIFY


class VerificationOK:
    """Stand-in report for objects whose constructor already verified them."""
    passed = True

    def failures(self):
        return []


def cmd_sweep(a, out: _Out) -> int:
    comp = _comp(a.q, a.comp)
    ns = range(a.from_, a.to + 1, a.step)
    worst = EXIT_OK
    res = pipeline.SweepResult(a.q, a.d, comp, [])
    for n in ns:
        cert = pipeline.build_optimal(a.q, n, a.d, comp, SearchBudget(seed=a.seed))
        res.rows.append((n, cert))
        size = "-" if cert.size is None else cert.size
        out.emit("sweep-row", f"{n:4d} {cert.status.value:11s} {size!s:>6} {cert.recipe}",
                 **cert.record(a.q, n, a.d, comp))
        code = STATUS_EXIT[cert.status]
        if code in (EXIT_SUBOPTIMAL, EXIT_UNRESOLVED):
            worst = max(worst, code)
    counts = res.counts()
    out.emit("sweep-summary", "summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())),
             counts=counts)
    return worst


def cmd_hillclimb(a, out: _Out) -> int:
    pre: list = []
    partition = None
    if a.prestructure:
        d, _ = formats.parse_design(Path(a.prestructure).read_text())
        pre = [tuple(b) for b in d.blocks]
        partition = d.partition
    gtype = GddType.parse(a.type) if a.type else None
    if gtype is not None and partition is not None and str(partition.type) != str(gtype):
        raise argparse.ArgumentTypeError(f"prestructure has type {partition.type}, not {gtype}")
    budget = SearchBudget(max_iterations=a.iterations, max_restarts=a.restarts, seed=a.seed, wall_clock=a.wall)
    try:
        d = hill_climb_gdd(gtype, tuple(a.k), Prestructure(tuple(pre)), budget, partition=partition)
    except NoCompletion as e:
        out.emit("hillclimb", f"no completion: {e}", completed=False, best_ratio=e.best_ratio)
        return EXIT_UNRESOLVED
    census = {str(k): v for k, v in sorted(d.block_census().items())}
    if a.out:
        formats.write_design(a.out, d, [f"hill climbing, seed {a.seed}"])
    out.emit("hillclimb", f"completed {d.type}: blocks {census}" + (f"\nwrote {a.out}" if a.out else ""),
             completed=True, type=str(d.type), census=census, path=a.out)
    return EXIT_OK


def cmd_catalog(a, out: _Out) -> int:
    if a.action == "list":
        for e in catalog.entries():
            params = " ".join(map(str, (p for p in e.params if p is not None)))
            out.emit("catalog-entry", f"{e.kind:16s} {e.id:28s} {params}", id=e.id, entry_kind=e.kind,
                     params=[str(p) for p in e.params if p is not None], cite=e.cite)
        return EXIT_OK
    if a.action == "verify":
        rep = catalog.verify_all()
        for c in rep.checks:
            out.emit("catalog-entry", f"{'ok  ' if c.ok else 'FAIL'} {c.name} {c.witness}", id=c.name,
                     passed=c.ok, detail=c.witness)
        return EXIT_OK if rep.passed else EXIT_VERIFY
    if a.action == "seed-library":
        if not a.dir:
            raise argparse.ArgumentTypeError("seed-library needs a directory")
        n = catalog.seed_design_library(a.dir)
        out.emit("catalog-seed", f"wrote {n} design files to {a.dir}", written=n, dir=a.dir)
        return EXIT_OK
    raise argparse.ArgumentTypeError(f"unknown catalog action {a.action}")


def cmd_oracle(a, out: _Out) -> int:
    comp = _comp(len(a.comp) + 1, a.comp)
    mode = "WitnessOnly" if a.witness else "Exact"
    try:
        r = brute_force_optimum(a.n, a.d, comp, mode, budget=a.nodes, seed=a.seed)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    label = "exact" if r.exact else "lower bound"
    out.emit("oracle", f"{r.size}" + ("" if r.exact else f" ({label})"), n=a.n, d=a.d,
             comp=list(comp.weights), size=r.size, exact=r.exact)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdcodes", description="Optimal weight-three constant-composition codes.")
    p.add_argument("--porcelain", action="store_true", help="one JSON record per line")
    sub = p.add_subparsers(dest="command", required=True)

    def qnd(sp):
        sp.add_argument("q", type=int)
        sp.add_argument("n", type=int)
        sp.add_argument("d", type=int)
        sp.add_argument("comp", type=int, nargs="+", help="composition weights, e.g. 2 1")

    sp = sub.add_parser("bound", help="known value or upper bound")
    qnd(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("build", help="build, verify and certify an optimal code")
    qnd(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="output code file")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="verify a code, base-set or design file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="build every length in a range")
    sp.add_argument("q", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("comp", type=int, nargs="+")
    sp.add_argument("--from", dest="from_", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--step", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("hillclimb", help="complete a prestructure with triples")
    sp.add_argument("--type", help="group type, e.g. '5^3 6^1'")
    sp.add_argument("--k", type=int, nargs="+", default=[3])
    sp.add_argument("--prestructure", help="partial design file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--iterations", type=int, default=2_000_000)
    sp.add_argument("--restarts", type=int, default=10)
    sp.add_argument("--wall", type=float, default=60.0)
    sp.add_argument("--out", help="output design file")
    sp.set_defaults(func=cmd_hillclimb)

    sp = sub.add_parser("catalog", help="list, verify or export shipped data")
    sp.add_argument("action", choices=["verify", "list", "seed-library"])
    sp.add_argument("dir", nargs="?")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("oracle", help="maximum clique on the compatibility graph")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("comp", type=int, nargs="+")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--witness", action="store_true")
    sp.add_argument("--nodes", type=int, default=2_000_000, help="node budget for --witness")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    out = _Out(a.porcelain)
    try:
        code = a.func(a, out)
        sys.stdout.flush()
        return code
    except argparse.ArgumentTypeError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except formats.FormatError as e:
        out.emit("error", f"error: {e}", error=str(e))
        return EXIT_VERIFY
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the final flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (OSError, GdcError) as e:
        out.emit("error", f"error: {e}", error=str(e))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
