"""Command-line front end.

Subcommands: ``validate``, ``colorings``, ``weight``, ``delta``,
``certify`` and ``reproduce`` (the one-shot harness re-running every
bundled reference computation).  All commands accept ``--json`` for a
machine-readable report with stable field names.

Exit codes: 0 success/valid, 1 usage error, 2 validation/parse error,
3 reproduction mismatch, 4 resource cap exceeded, 5 certification found
no obstruction (m = 0).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import fixtures as fx
from .cache import default_cache_dir, load_reach, store_reach
from .cochain import (
    CochainFn,
    DeltaReach,
    ExprError,
    ResourceCapExceeded,
    delta_f,
    delta_reach,
)
from .coloring import enumerate_colorings, extend_coloring, is_trivial
from .diagram import (
    Diagram,
    DiagramError,
    derived_dict,
    parse_diagram,
    validate_text,
)
from .invariant import (
    certify_lower_bound,
    phi_set,
    verify_certificate,
    w4_formula,
    weight,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3
EXIT_RESOURCE = 4
EXIT_NO_BOUND = 5

_INLINE_SET_LIMIT = 64


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    timing_s: float = 0.0
    cache: dict[str, int] = field(default_factory=lambda: {"hits": 0, "misses": 0})

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "timing_s": round(self.timing_s, 6),
            "cache": self.cache,
        }


def _read_diagram(path: str) -> Diagram:
    """Read a diagram file; bare bundled names (d1..d6) work anywhere."""
    p = Path(path)
    if p.exists():
        return parse_diagram(p.read_text())
    stem = p.stem if p.suffix == ".json" else p.name
    if stem.lower() in fx.fixture_names():
        return fx.load_fixture(stem)
    raise DiagramError(f"no such file or bundled diagram: {path}")


def _build_f(expr: str, n: int) -> CochainFn:
    if n < 1:
        raise ExprError(f"modulus must be >= 1, got {n}")
    return CochainFn.build(expr, n)


def _set_summary(values: tuple[int, ...], dump: Path | None) -> dict[str, Any]:
    out: dict[str, Any] = {"size": len(values)}
    if len(values) <= _INLINE_SET_LIMIT:
        out["values"] = list(values)
    else:
        out["min"] = values[0]
        out["max"] = values[-1]
        if dump is not None:
            out["file"] = str(dump)
    return out


def _print_set(label: str, values: tuple[int, ...], dump: Path | None) -> None:
    if len(values) <= _INLINE_SET_LIMIT:
        print(f"{label}: {{{', '.join(map(str, values))}}}")
    else:
        where = f" (full set in {dump})" if dump else ""
        print(
            f"{label}: {len(values)} values in "
            f"[{values[0]}, {values[-1]}]{where}"
        )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, report: RunReport) -> int:
    path = Path(args.path)
    if path.exists():
        text = path.read_text()
    else:
        stem = path.stem if path.suffix == ".json" else path.name
        if stem.lower() not in fx.fixture_names():
            raise DiagramError(f"no such file or bundled diagram: {args.path}")
        text = json.dumps(fx.fixture_dict(stem))
    issues = validate_text(text)
    report.results["valid"] = not issues
    report.results["issues"] = [
        {"kind": i.kind, "message": i.message} for i in issues
    ]
    if issues:
        if not args.json:
            for i in issues:
                print(f"INVALID [{i.kind}] {i.message}")
        return EXIT_INVALID
    d = parse_diagram(text)
    report.results["summary"] = {
        "name": d.name,
        "crossings": len(d.crossings),
        "edges": len(d.edges),
        "arcs": len(d.arcs),
        "faces": len(d.faces),
        "components": len(d.components),
        "outer_face": d.outer_face,
    }
    if args.emit_derived:
        report.results["derived"] = derived_dict(d)
    if not args.json:
        s = report.results["summary"]
        print(
            f"valid: {s['name']} with {s['crossings']} crossings, "
            f"{s['edges']} edges, {s['arcs']} arcs, {s['faces']} faces "
            f"({s['components']} component(s); outer face {s['outer_face']})"
        )
        if args.emit_derived:
            print(json.dumps(report.results["derived"], indent=2))
    return EXIT_OK


def cmd_colorings(args: argparse.Namespace, report: RunReport) -> int:
    d = _read_diagram(args.path)
    cols = enumerate_colorings(d, args.n)
    rows = []
    for cid, c in enumerate(cols):
        if args.nontrivial_only and is_trivial(c):
            continue
        row: dict[str, Any] = {
            "id": cid,
            "trivial": is_trivial(c),
            "arc_colors": [[a.id, c.arc_colors[a.id]] for a in d.arcs],
        }
        if args.outer_color is not None:
            ec = extend_coloring(d, c, args.outer_color)
            row["region_colors"] = [
                [f.id, ec.region_colors[f.id]] for f in d.faces
            ]
        rows.append(row)
    report.results["count_total"] = len(cols)
    report.results["count_listed"] = len(rows)
    report.results["colorings"] = rows
    if not args.json:
        print(
            f"{d.name}: {len(cols)} coloring(s) over Z({args.n})"
            + (f", {len(rows)} listed" if args.nontrivial_only else "")
        )
        for row in rows:
            vec = " ".join(str(v) for _, v in row["arc_colors"])
            extra = ""
            if "region_colors" in row:
                extra = "  regions: " + " ".join(
                    str(v) for _, v in row["region_colors"]
                )
            marker = " (trivial)" if row["trivial"] else ""
            print(f"  #{row['id']:<3} arcs: {vec}{marker}{extra}")
    return EXIT_OK


def cmd_weight(args: argparse.Namespace, report: RunReport) -> int:
    d = _read_diagram(args.path)
    f = _build_f(args.f, args.n)
    cols = enumerate_colorings(d, args.n)
    wanted: list[int]
    if args.coloring == "all":
        wanted = list(range(len(cols)))
    else:
        try:
            idx = int(args.coloring)
        except ValueError:
            print(
                f"error: --coloring must be an id or 'all', got {args.coloring!r}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        if not 0 <= idx < len(cols):
            raise DiagramError(
                f"coloring id {idx} out of range (0..{len(cols) - 1})"
            )
        wanted = [idx]
    rows = []
    for cid in wanted:
        ec = extend_coloring(d, cols[cid], args.s)
        wv = weight(d, ec, f)
        rows.append(
            {
                "id": cid,
                "trivial": is_trivial(cols[cid]),
                "w": wv.value,
                "per_crossing": [
                    {
                        "crossing": t.crossing,
                        "epsilon": t.epsilon,
                        "s": t.s,
                        "a": t.a,
                        "b": t.b,
                        "term": t.contribution(f),
                    }
                    for t in wv.per_crossing
                ],
            }
        )
    report.results["weights"] = rows
    if args.coloring == "all":
        phi = phi_set(d, args.s, f)
        report.results["phi"] = {
            "values": list(phi.values),
            "witnesses": {str(v): list(ids) for v, ids in phi.witnesses.items()},
        }
    if not args.json:
        for row in rows:
            marker = " (trivial)" if row["trivial"] else ""
            print(f"  coloring #{row['id']:<3} W = {row['w']}{marker}")
        if "phi" in report.results:
            vals = report.results["phi"]["values"]
            print(f"Phi({d.name}, {args.s}) = {{{', '.join(map(str, vals))}}}")
    return EXIT_OK


def _reach_with_cache(
    f: CochainFn,
    max_level: int,
    cache_dir: Path,
    report: RunReport,
    cap: int | None = None,
) -> DeltaReach:
    from .cochain import DEFAULT_LEVEL_CAP, ResourceCapExceeded as _Cap

    cap = DEFAULT_LEVEL_CAP if cap is None else cap
    cached = load_reach(f, cache_dir)
    if cached is not None and cached.max_level >= max_level:
        for lv in cached.levels:
            if len(lv) > cap:
                raise _Cap(f"cached level holds {len(lv)} values, past the cap {cap}")
        report.cache["hits"] += 1
        return cached
    report.cache["misses"] += 1
    reach = delta_reach(f, max_level, cap=cap)
    store_reach(reach, cache_dir)
    return reach


def cmd_delta(args: argparse.Namespace, report: RunReport) -> int:
    f = _build_f(args.f, args.n)
    cache_dir = Path(args.cache) if args.cache else default_cache_dir()
    reach = _reach_with_cache(f, args.max_m, cache_dir, report, cap=args.cap)
    dump = store_reach(reach, cache_dir)
    report.results["f_canonical"] = f.canonical()
    report.results["im_size"] = len(reach.im_delta)
    report.results["im"] = _set_summary(reach.im_delta, dump)
    report.results["levels"] = [
        _set_summary(reach.level(m), dump) for m in range(args.max_m + 1)
    ]
    report.results["cache_file"] = str(dump)
    if not args.json:
        print(f"f = {f.canonical()}  over Z({args.n})")
        print(f"|Im(df)| = {len(reach.im_delta)}")
        _print_set("Im(df)", reach.im_delta, dump)
        for m in range(args.max_m + 1):
            _print_set(f"Delta_{m}", reach.level(m), dump)
    return EXIT_OK


def cmd_certify(args: argparse.Namespace, report: RunReport) -> int:
    d = _read_diagram(args.path_d)
    d2 = _read_diagram(args.path_d2)
    f = _build_f(args.f, args.n)
    cache_dir = Path(args.cache) if args.cache else default_cache_dir()
    reach = _reach_with_cache(f, args.max_m - 1, cache_dir, report)
    cert = certify_lower_bound(d, d2, args.s, f, args.max_m, reach=reach)
    report.results["certificate"] = cert.to_dict()
    report.results["verified"] = verify_certificate(cert, d, d2)
    if not args.json:
        print(f"pair ({d.name}, {d2.name}), n={args.n}, s={args.s}")
        for line in cert.level_verdicts:
            print(f"  {line}")
        print(f"certified: at least {cert.m} type-III move(s)")
        print(f"re-verification: {'ok' if report.results['verified'] else 'FAILED'}")
    if not report.results["verified"]:
        return EXIT_MISMATCH
    return EXIT_OK if cert.m >= 1 else EXIT_NO_BOUND


def _reproduce_checks(fixtures_dir: Path | None) -> list[tuple[str, bool, str]]:
    """Every bundled reference computation as (label, ok, detail)."""
    checks: list[tuple[str, bool, str]] = []

    def diagram(name: str) -> Diagram:
        if fixtures_dir is not None:
            return parse_diagram((fixtures_dir / f"{name}.json").read_text())
        return fx.load_fixture(name)

    f3 = CochainFn.build("(x-y)*(y-z)*z", 3)
    f5 = CochainFn.build("(x+y)^3*(y+z)*(y-z)^3*z^5", 5)
    f4 = CochainFn.build("(x+y)^2*(y-z)^3*z^5", 4)

    bad = [
        (t, delta_f(f3, *t), v)
        for t, v in fx.DELTA_TABLE_N3.items()
        if delta_f(f3, *t) != v
    ]
    degenerate_ok = all(
        delta_f(f3, x, y, z, w) == 0
        for x in range(3)
        for y in range(3)
        for z in range(3)
        for w in range(3)
        if x == y or y == z or z == w
    )
    checks.append(
        (
            "coboundary table (n=3, 24 values + degenerate zeros)",
            not bad and degenerate_ok,
            f"first mismatch {bad[0]}" if bad else "",
        )
    )

    reach3 = delta_reach(f3, 1)
    checks.append(
        (
            "Delta_1 set (n=3)",
            reach3.level(1) == fx.EXPECTED["delta1_n3"],
            f"got {reach3.level(1)}",
        )
    )
    for n, f in ((5, f5), (4, f4)):
        size = len(delta_reach(f, 0).im_delta)
        want = fx.EXPECTED["image_sizes"][n]
        checks.append(
            (f"|Im(df)| = {want} (n={n})", size == want, f"got {size}")
        )

    bad2 = [
        (ab, w4_formula(*ab, f5), v)
        for ab, v in fx.W4_TABLE.items()
        if w4_formula(*ab, f5) != v
    ]
    checks.append(
        (
            "closed-form weight table (20 values, n=5)",
            not bad2,
            f"first mismatch {bad2[0]}" if bad2 else "",
        )
    )

    fns = {"d1": f3, "d3": f5, "d5": f4}
    for name, (cid, colors) in fx.REFERENCE_COLORINGS.items():
        d = diagram(name)
        s = next(c.s for c in fx.FIXTURE_CASES if c.pair[0] == name)
        cols = enumerate_colorings(d, fns[name].n)
        want = fx.EXPECTED["weights"][name]
        ok = cid < len(cols) and cols[cid].arc_colors == colors
        got: Any = None
        if ok:
            got = weight(d, extend_coloring(d, cols[cid], s), fns[name]).value
            ok = got == want
        checks.append(
            (f"W({name}) = {want}", ok, f"got {got}")
        )

    for name, f, s in (("d2", f3, 0), ("d6", f4, 0)):
        vals = phi_set(diagram(name), s, f).values
        want_vals = fx.EXPECTED["phi"][name]
        checks.append(
            (
                f"Phi({name}, {s}) = {set(want_vals)}",
                vals == want_vals,
                f"got {set(vals)}",
            )
        )
    oracle = tuple(sorted(fx.W4_TABLE.values()))
    d4_vals = phi_set(diagram("d4"), 2, f5).values
    checks.append(
        (
            "Phi(d4, 2) matches the closed-form value set",
            d4_vals == oracle,
            f"got {len(d4_vals)} values",
        )
    )

    for case in fx.FIXTURE_CASES:
        d = diagram(case.pair[0])
        d2 = diagram(case.pair[1])
        f = CochainFn.build(case.f_str, case.n)
        cert = certify_lower_bound(d, d2, case.s, f, case.max_m)
        ok = cert.m == case.expected_m and verify_certificate(cert, d, d2)
        checks.append(
            (
                f"certified {case.pair[0]}/{case.pair[1]} needs >= "
                f"{case.expected_m} type-III moves",
                ok,
                f"got m = {cert.m}",
            )
        )
    return checks


def cmd_reproduce(args: argparse.Namespace, report: RunReport) -> int:
    fixtures_dir = Path(args.fixtures_dir) if args.fixtures_dir else None
    checks = _reproduce_checks(fixtures_dir)
    report.results["checks"] = [
        {"name": name, "pass": ok, **({"detail": detail} if not ok else {})}
        for name, ok, detail in checks
    ]
    all_ok = all(ok for _, ok, _ in checks)
    report.results["pass"] = all_ok
    if not args.json:
        for name, ok, detail in checks:
            status = "PASS" if ok else "FAIL"
            suffix = f"  ({detail})" if not ok and detail else ""
            print(f"[{status}] {name}{suffix}")
        print("all checks passed" if all_ok else "REPRODUCTION MISMATCH")
    return EXIT_OK if all_ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="tribound",
        description=(
            "Fox colorings, region colorings, crossing-weight invariants "
            "and certified lower bounds on type-III moves between link "
            "diagrams."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("validate", help="check a diagram file")
    p.add_argument("path")
    p.add_argument(
        "--emit-derived",
        action="store_true",
        help="include derived arcs/faces/signs in the output",
    )
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("colorings", help="enumerate Fox n-colorings")
    p.add_argument("path")
    p.add_argument("-n", type=int, required=True, help="modulus")
    p.add_argument(
        "--outer-color", type=int, default=None, metavar="S",
        help="also list region colors for outer color S",
    )
    p.add_argument("--nontrivial-only", action="store_true")
    common(p)
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("weight", help="crossing-weight sums and Phi sets")
    p.add_argument("path")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-f", required=True, help="weight function, e.g. '(x-y)*(y-z)*z'")
    p.add_argument("-s", type=int, required=True, help="outer region color")
    p.add_argument(
        "--coloring", default="all", metavar="ID|all",
        help="coloring id, or 'all' (default) for every coloring plus Phi",
    )
    common(p)
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("delta", help="coboundary image and level sets")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-f", required=True)
    p.add_argument("--max-m", type=int, default=1, help="highest level to compute")
    p.add_argument("--cache", default=None, help="cache directory")
    p.add_argument(
        "--cap", type=int, default=None,
        help="abort if a level exceeds this many values (default 10^7)",
    )
    common(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser(
        "certify", help="certify a lower bound on type-III moves for a pair"
    )
    p.add_argument("path_d")
    p.add_argument("path_d2")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-f", required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--cache", default=None)
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser(
        "reproduce",
        help="re-run all bundled reference computations and compare",
    )
    p.add_argument(
        "--fixtures-dir", default=None,
        help="load d1..d6 from this directory instead of the bundled copies",
    )
    common(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage error (1) or --help (0)
        return int(exc.code or 0)
    func: Callable[[argparse.Namespace, RunReport], int] = args.func
    inputs = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "json") and v is not None
    }
    report = RunReport(command=args.command, inputs=inputs)
    start = time.perf_counter()
    try:
        code = func(args, report)
    except (DiagramError, ValueError, OSError) as exc:
        report.results["error"] = str(exc)
        code = EXIT_INVALID
        if not args.json:
            print(f"error: {exc}", file=sys.stderr)
    except ResourceCapExceeded as exc:
        report.results["error"] = str(exc)
        code = EXIT_RESOURCE
        if not args.json:
            print(f"resource cap: {exc}", file=sys.stderr)
    report.timing_s = time.perf_counter() - start
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
