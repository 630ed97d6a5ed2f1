"""Command-line entry point.

Exit codes: 0 on success, 1 when a checked claim is violated, 2 on usage
errors (bad flags, unparsable family specs or inputs, caps exceeded).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from .charpoly import charpoly, charpoly_family
from .dss import FingerprintCache, cospectral_mates, lollipop_pairwise_scan
from .errors import CapExceededError, HypothesisError
from .families import FamilyError, FamilySpec, parse_family
from .graph import Graph, GraphError, decode_graph6, encode_graph6
from .poly import IntPolynomial, NestedRadical, QuadraticValue, parse_threshold
from .spectral import BoundRanges, appendix_sign_suite, bound_suite, spectrum
from .tables import TABLE_NAMES, compare_table, table_csv
from .walks import closed_walks, covering_walk_count, covering_walk_count_algebraic, motif_decomposition

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # pragma: no cover - argparse exits
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- graph input --------------------------------------------------------------------

def read_graph_file(path: str) -> Graph:
    """A graph from a graph6 file (first record) or a JSON edge list."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"--input: cannot read {path}: {exc.strerror}") from exc
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            return Graph.from_json(stripped)
        lines = [ln.strip() for ln in stripped.splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"--input: {path} is empty")
        line = lines[0]
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        return decode_graph6(line)
    except (GraphError, ValueError) as exc:
        raise UsageError(f"--input: {path}: {exc}") from exc


def _spec(text: str, flag: str) -> FamilySpec:
    try:
        return parse_family(text)
    except FamilyError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _graph_and_label(args: argparse.Namespace) -> tuple[Graph, str, FamilySpec | None]:
    if args.input and args.spec:
        raise UsageError("give either a family spec or --input, not both")
    if args.input:
        g = read_graph_file(args.input)
        return g, args.input, None
    if not args.spec:
        raise UsageError("a family spec (e.g. 'L(6,4)') or --input is required")
    spec = _spec(args.spec, "spec")
    return spec.build(), spec.render(), spec


def _poly(args: argparse.Namespace) -> tuple[IntPolynomial, str, Graph]:
    g, label, spec = _graph_and_label(args)
    poly = charpoly_family(spec) if spec is not None else charpoly(g)
    return poly, label, g


def _emit(args: argparse.Namespace, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# -- commands --------------------------------------------------------------------------

def cmd_build(args: argparse.Namespace) -> int:
    g, label, _ = _graph_and_label(args)
    if args.format == "json" or args.json:
        print(g.to_json())
    else:
        print(encode_graph6(g))
    return EXIT_OK


def cmd_charpoly(args: argparse.Namespace) -> int:
    poly, label, _ = _poly(args)
    _emit(args, {"graph": label, "coefficients": list(poly.coeffs)}, str(poly))
    return EXIT_OK


def _reduce_mod(p: IntPolynomial, m: IntPolynomial) -> list[int]:
    # m is monic, so the pseudo-remainder is the ordinary remainder
    return list(p.pseudo_rem(m).coeffs)


def cmd_eval(args: argparse.Namespace) -> int:
    poly, label, _ = _poly(args)
    try:
        at = parse_threshold(args.at)
    except ValueError as exc:
        raise UsageError(f"--at: {exc}") from exc
    sign = poly.sign_at(at)
    if isinstance(at, QuadraticValue):
        value = str(at.eval_poly(poly))
    elif isinstance(at, NestedRadical):
        # p(t) reduced modulo the minimal polynomial of t
        reduced = IntPolynomial(_reduce_mod(poly, at.minimal_polynomial()))
        value = f"{str(reduced).replace('X', 't')} at t = {at}" if not reduced.is_zero() else "0"
    else:
        value = str(poly.eval_rational(at))
    _emit(args, {"graph": label, "at": str(at), "value": value, "sign": sign}, value)
    return EXIT_OK


def cmd_walks(args: argparse.Namespace) -> int:
    g, label, _ = _graph_and_label(args)
    payload = {"graph": label, "k": args.k, "closed_walks": closed_walks(g, args.k)}
    text = str(payload["closed_walks"])
    if args.covering:
        comb = covering_walk_count(g, args.k)
        alg = covering_walk_count_algebraic(g, args.k)
        payload["covering_walks"] = comb
        payload["covering_walks_algebraic"] = alg
        text += f"\ncovering: {comb} (algebraic {alg})"
        if comb != alg:
            _emit(args, payload, text)
            return EXIT_VIOLATED
    _emit(args, payload, text)
    return EXIT_OK


def cmd_motifs(args: argparse.Namespace) -> int:
    g, label, _ = _graph_and_label(args)
    table = motif_decomposition(g, args.k)
    payload = {"graph": label, "k": args.k, "rows": table.to_records(), "trace": table.trace, "holds": table.holds()}
    _emit(args, payload, table.to_csv().rstrip("\n"))
    return EXIT_OK if table.holds() else EXIT_VIOLATED


def cmd_spectrum(args: argparse.Namespace) -> int:
    if args.eps <= 0:
        raise UsageError("--eps must be positive")
    poly, label, _ = _poly(args)
    s = spectrum(poly, args.eps)
    digits = max(1, math.ceil(-math.log10(args.eps)) + 1)
    lines = [f"{v:.{digits}f}" for v in s.values]
    _emit(args, {"graph": label, "eps": args.eps, "values": list(s.values)}, "\n".join(lines))
    return EXIT_OK


def _report_records(args: argparse.Namespace, records: list[dict]) -> int:
    violated = [r for r in records if r["verdict"] == "violated"]
    if args.json:
        print(json.dumps(records, indent=2))
    else:
        claims: dict[str, list[int]] = {}
        for r in records:
            tally = claims.setdefault(r["claim"], [0, 0])
            tally[0 if r["verdict"] == "verified" else 1] += 1
        for claim, (ok, bad) in claims.items():
            print(f"{'FAIL' if bad else 'ok  '}  {claim}: {ok} verified, {bad} violated")
        for r in violated:
            print(f"violated: {r['claim']} {json.dumps(r['parameters'])} {json.dumps(r.get('witness'))}")
    return EXIT_VIOLATED if violated else EXIT_OK


def cmd_bounds_suite(args: argparse.Namespace) -> int:
    ranges = BoundRanges(lollipop_p=(3, args.p_max), lollipop_k=(1, args.k_max))
    return _report_records(args, [r.to_dict() for r in bound_suite(ranges, jobs=args.jobs)])


def cmd_appendix_suite(args: argparse.Namespace) -> int:
    return _report_records(args, [r.to_dict() for r in appendix_sign_suite(cap=args.cap, jobs=args.jobs)])


def cmd_ds_check(args: argparse.Namespace) -> int:
    if args.target and args.input:
        raise UsageError("give either --target or --input, not both")
    if args.input:
        target: FamilySpec | Graph = read_graph_file(args.input)
    elif args.target:
        target = _spec(args.target, "--target")
    else:
        raise UsageError("--target or --input is required")
    cache = FingerprintCache(args.cache) if args.cache else None
    report = cospectral_mates(target, full_universe=args.full_universe, connected_only=args.connected_only,
                              cache=cache, jobs=args.jobs)
    d = report.to_dict()
    lines = [
        f"target: {d['target']}",
        f"universe: n={report.universe.n} m={report.universe.m_filter if report.universe.m_filter is not None else 'any'}"
        f"{' connected' if report.universe.connected_only else ''} ({report.class_count} classes)",
        f"mates: {' '.join(d['mates'])}",
        f"verdict: {d['verdict']}",
    ]
    _emit(args, d, "\n".join(lines))
    # only lollipops carry a determined-by-spectrum claim
    claimed = isinstance(target, FamilySpec) and target.kind == "lollipop"
    return EXIT_VIOLATED if claimed and report.verdict != "determined" else EXIT_OK


def cmd_lollipop_scan(args: argparse.Namespace) -> int:
    rep = lollipop_pairwise_scan(args.n_max)
    d = rep.to_dict()
    text = f"{rep.lollipops} lollipops, {rep.pairs_compared} pairs compared, verdict {rep.verdict}"
    for a, b in rep.collisions:
        text += f"\ncospectral: {a} {b}"
    _emit(args, d, text)
    return EXIT_OK if rep.verdict == "verified" else EXIT_VIOLATED


def cmd_tables(args: argparse.Namespace) -> int:
    if not args.check:
        if args.json:
            print(json.dumps([_cell_record(c) for c in compare_table(args.name)], indent=2))
        else:
            sys.stdout.write(table_csv(args.name))
        return EXIT_OK
    records = [_cell_record(c) for c in compare_table(args.name)]
    return _report_records(args, records)


def _cell_record(cell) -> dict:
    params = {k: v for k, v in vars(cell).items() if k not in ("published",)}
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()}
    return {
        "claim": f"{params.pop('table', 'tab_marches')} matches the published value",
        "parameters": params,
        "verdict": "verified" if cell.holds else "violated",
        "witness": {"published": cell.published},
    }


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", metavar="PATH", help="fingerprint cache file (graph6<TAB>coefficients)")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    common.add_argument("--input", metavar="PATH", help="graph6 or JSON edge-list file instead of a family spec")

    parser = _Parser(prog="lollipop-spectra", description="Spectral toolkit for lollipop graphs and their relatives.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name: str, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", nargs="?", help="family spec such as L(6,4), P(2,6,8), S(1,2,2)")
        return p

    p = graph_cmd("build", "emit graph6 or JSON for a family spec")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_build)

    graph_cmd("charpoly", "exact characteristic polynomial").set_defaults(func=cmd_charpoly)

    p = graph_cmd("eval", "evaluate the characteristic polynomial exactly")
    p.add_argument("--at", required=True, help="rational, sqrt5, sqrt(n), alpha or 4/sqrt3")
    p.set_defaults(func=cmd_eval)

    p = graph_cmd("walks", "number of closed walks of length k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--covering", action="store_true", help="also count k-walks covering every edge")
    p.set_defaults(func=cmd_walks)

    p = graph_cmd("motifs", "motif decomposition of tr A^k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_motifs)

    p = graph_cmd("spectrum", "certified eigenvalues")
    p.add_argument("--eps", type=float, default=1e-8)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds-suite", parents=[common], help="spectral-radius inequalities over parameter grids")
    p.add_argument("--p-max", type=int, default=20)
    p.add_argument("--k-max", type=int, default=20)
    p.set_defaults(func=cmd_bounds_suite)

    p = sub.add_parser("appendix-suite", parents=[common], help="sign checks for theta-graph constructions")
    p.add_argument("--cap", type=int, default=30)
    p.set_defaults(func=cmd_appendix_suite)

    p = sub.add_parser("ds-check", parents=[common], help="exhaustive cospectral-mate search")
    p.add_argument("--target", help="family spec of the target graph")
    p.add_argument("--full-universe", action="store_true", help="do not restrict the edge count (n <= 8)")
    p.add_argument("--connected-only", action="store_true")
    p.set_defaults(func=cmd_ds_check)

    p = sub.add_parser("lollipop-scan", parents=[common], help="pairwise charpoly comparison of lollipops")
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_lollipop_scan)

    p = sub.add_parser("tables", parents=[common], help="reproduce a reference table")
    p.add_argument("--name", required=True, choices=TABLE_NAMES)
    p.add_argument("--check", action="store_true", help="compare with the published values")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lollipop-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceededError, HypothesisError, GraphError) as exc:
        print(f"lollipop-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
