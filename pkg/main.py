"""Command-line entry point for casaskit."""

import argparse
import json
import logging
import math
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from casearch import (
    CA_CANDIDATE,
    SearchConfig,
    candidate_stats,
    certify_ca,
    evaluate_filters,
    maximal_chain_check,
    normalize_unit_disc,
    search,
    shared_root_counts,
)
from config import Settings, get_settings
from data.loaders import read_inputs
from goncharov import CONSTRUCTIONS, NodeSequence, goncharov_bound, sharp_bound
from goncharov.genetic import GeneticConstruction
from localize import (
    RootContext,
    ca_mth_bound,
    common_root_interval,
    derivative_root_interval,
    extremal_stats,
    gap_bounds,
    gated_bound,
    interval_sharpness,
    laguerre_interval,
    lemma2_residual,
    lemma7_bounds,
    lemma9_bounds,
    span_lower_bound,
    summarize,
    sz_nagy_residuals,
    trivial_by_gap,
    window_identity_residual,
)
from polycore import (
    CasasKitError,
    DomainError,
    Polynomial,
    centroid,
    centroid_data,
    count_real_roots,
    format_polynomial,
    is_real_rooted,
    is_trivial,
    parse_nodes,
    parse_point,
    parse_polynomial,
    root_multiset,
    squarefree_decompose,
)

logger = logging.getLogger("casaskit")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CANDIDATES = 2

DIGITS = 12  # significant digits in human output


def _num(value) -> str:
    """Human form of a number: exact values verbatim, floats to DIGITS digits."""
    if value is None:
        return "-"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.{DIGITS}g}"
    if isinstance(value, complex):
        return f"{value:.{DIGITS}g}"
    return str(value)


def _verdict_word(holds: Optional[bool]) -> str:
    return {True: "holds", False: "VIOLATED", None: "gated"}[holds]


# -- analyze ----------------------------------------------------------------


def run_analyze(text: str, settings: Settings) -> dict:
    """
    Degree, monic form, roots, centroid data and triviality of one polynomial.

    Raises:
        ParseError: for malformed text
        DomainError: for a constant polynomial
    """
    p = parse_polynomial(text)
    p.require_degree(1, "analyze")
    f = p.monic()
    roots = root_multiset(f, settings)
    real_rooted = is_real_rooted(f)

    report = {
        "input": text,
        "degree": f.degree,
        "monic": format_polynomial(f),
        "coefficients": f.to_json(),
        "roots": roots.to_json(),
        "multiplicities": list(roots.multiplicities),
        "squarefree": [
            {"factor": format_polynomial(q), "multiplicity": mult} for q, mult in squarefree_decompose(f)
        ],
        "real_rooted": real_rooted,
        "distinct_real_roots": count_real_roots(f),
        "trivial": is_trivial(f),
        "centroid": centroid(f).to_json(),
        "gap_squared": None,
        "z_n2": None,
        "trivial_by_gap": None,
        "extremal": None,
    }
    if f.degree >= 2:
        data = centroid_data(f)
        report["gap_squared"] = data.gap_squared.to_json()
        report["z_n2"] = data.z_n2.to_json()
        if real_rooted:
            report["trivial_by_gap"] = trivial_by_gap(f)
            report["extremal"] = extremal_stats(f, settings=settings).to_dict()
    return report


def _json_root(root) -> str:
    if isinstance(root, dict):
        if "error_radius" in root:
            re, im = root["re"], root["im"]
            return _num(re) if im == 0 else _num(complex(re, im))
        return f"({root['re']},{root['im']})"
    return str(root)


def print_analyze(report: dict) -> None:
    print(f"\n{report['monic']}")
    print("-" * 40)
    print(f"  Degree:        {report['degree']}")
    print(f"  Trivial:       {report['trivial']}")
    print(f"  Real-rooted:   {report['real_rooted']} ({report['distinct_real_roots']} distinct real)")
    print(f"  Centroid:      {_json_root(report['centroid'])}")
    if report["gap_squared"] is not None:
        print(f"  Gap squared:   {_json_root(report['gap_squared'])}")
    print("  Roots:")
    for entry in report["roots"]:
        tag = "exact" if entry["exact"] else f"+/- {_num(entry['root']['error_radius'])}"
        print(f"    {_json_root(entry['root']):>24}  x{entry['multiplicity']}  ({tag})")
    extremal = report["extremal"]
    if extremal:
        print(f"  d / D:         {_num(extremal['d'])} / {_num(extremal['D'])}")
        print(f"  Span:          {_num(extremal['span'])}")


# -- goncharov --------------------------------------------------------------


def _conditions_hold(p: Polynomial, nodes: NodeSequence) -> bool:
    return all(p.derive(m).evaluate(z).is_zero for m, z in enumerate(nodes))


def run_goncharov(
    text: str,
    construction: str = "interpolation",
    cross_check: bool = False,
    bound_at: Optional[List[str]] = None,
    budget: Optional[int] = None,
) -> dict:
    """
    Build G_n for one node sequence and evaluate the bounds at given points.

    Raises:
        ResourceError: when the genetic sum or the sharp bound exceeds the budget
    """
    nodes = NodeSequence(parse_nodes(text))
    names = list(CONSTRUCTIONS) if cross_check else [construction]

    built: Dict[str, Polynomial] = {}
    for name in names:
        cls = CONSTRUCTIONS[name]
        builder = cls(budget) if cls is GeneticConstruction else cls()
        built[name] = builder.construct(nodes).polynomial
    g = built[names[0]]

    report = {
        "nodes": [z.to_json() for z in nodes],
        "n": nodes.n,
        "polynomial": format_polynomial(g, "z"),
        "coefficients": g.to_json(),
        "conditions_hold": _conditions_hold(g, nodes),
        "constructions": {name: format_polynomial(p, "z") for name, p in built.items()},
        "agree": all(p == g for p in built.values()),
        "bounds": [],
    }
    for point_text in bound_at or []:
        z = parse_point(point_text)
        value = abs(complex(g.evaluate(z)))
        sharp = sharp_bound(nodes, z, max_degree=budget)
        classic = goncharov_bound(nodes, z)
        report["bounds"].append({
            "z": z.to_json(),
            "abs_value": value,
            "sharp": sharp,
            "goncharov": classic,
            "sandwich": value <= sharp <= classic,
        })
    return report


def print_goncharov(report: dict) -> None:
    print(f"\nG_{report['n']}(z) = {report['polynomial']}")
    print("-" * 40)
    print(f"  Interpolation conditions: {'hold' if report['conditions_hold'] else 'FAIL'}")
    if len(report["constructions"]) > 1:
        for name, text in report["constructions"].items():
            print(f"  {name:<14} {text}")
        print(f"  Agreement:     {report['agree']}")
    for row in report["bounds"]:
        print(
            f"  z = {_json_root(row['z'])}: |G| = {_num(row['abs_value'])}, "
            f"sharp = {_num(row['sharp'])}, goncharov = {_num(row['goncharov'])}"
        )


# -- identities and bounds --------------------------------------------------


def run_identities(
    text: str,
    settings: Settings,
    points: Optional[List[str]] = None,
    orders: Optional[List[int]] = None,
    backend: Optional[str] = None,
) -> dict:
    """Sz.-Nagy, Lemma 2 and window identity residuals at the requested points and orders."""
    p = parse_polynomial(text)
    p.require_degree(2, "identities")
    n = p.degree
    orders = list(range(n - 1)) if orders is None else orders
    zs = [parse_point(t) for t in (points or ["0"])]

    reports = []
    for m in orders:
        for z in zs:
            reports.extend(sz_nagy_residuals(p, z, m, backend=backend, settings=settings))
        if 1 <= m <= n - 2:
            reports.append(lemma2_residual(p, m, backend=backend, settings=settings))
        reports.append(window_identity_residual(p, m))
    return {
        "polynomial": format_polynomial(p.monic()),
        "reports": [r.to_dict() for r in reports],
        "summary": summarize(reports),
    }


def _exact_json(value):
    if isinstance(value, Fraction):
        return str(value)
    return value.to_json() if hasattr(value, "to_json") else value


def _collect(reports: list, bound_id: str, fn: Callable, *args, **kwargs) -> None:
    """Append fn's reports; a rejected order or index becomes a gated entry."""
    try:
        out = fn(*args, **kwargs)
    except DomainError as exc:
        reports.append(gated_bound(bound_id, str(exc)))
        return
    reports.extend(out if isinstance(out, list) else [out])


def run_bounds(text: str, settings: Settings) -> dict:
    """Every localization bound at every admissible order and root index."""
    p = parse_polynomial(text)
    p.require_degree(2, "bounds")
    f = p.monic()
    ctx = RootContext.build(f, settings)
    n, k = ctx.n, ctx.k

    reports = []
    for m in range(1, n - 1):
        _collect(reports, "eq26", gap_bounds, ctx, m)
    for j in range(1, k + 1):
        for m in range(ctx.multiplicity(j - 1)):
            _collect(reports, "eq30", laguerre_interval, ctx, j, m)
    for m in range(n - 1):
        _collect(reports, "eq31", derivative_root_interval, ctx, m)
    for s in range(2, k + 1):
        _collect(reports, "eq32", common_root_interval, ctx, s)
    for m in range(1, n - 1):
        _collect(reports, "eq33", ca_mth_bound, ctx, m)
    _collect(reports, "eq37", lemma7_bounds, ctx)
    _collect(reports, "eq38", span_lower_bound, ctx)
    for m in range(1, n - 1):
        _collect(reports, "eq39", lemma9_bounds, ctx, m)

    sharpness = [{key: _exact_json(value) for key, value in row.items()} for row in interval_sharpness(ctx)]
    return {
        "polynomial": format_polynomial(f),
        "reports": [r.to_dict() for r in reports],
        "summary": summarize(reports),
        "interval_sharpness": sharpness,
    }


def print_reports(report: dict) -> None:
    print(f"\n{report['polynomial']}")
    print("-" * 40)
    for rep in report["reports"]:
        params = ", ".join(f"{k}={v}" for k, v in rep["inputs"].items() if k in ("m", "j", "s", "z"))
        if "residual" in rep:
            residual = rep["residual"]
            shown = _json_root(residual) if isinstance(residual, (str, dict)) else _num(residual)
            print(f"  {rep['id']:<6} {params:<18} residual {shown:<20} {_verdict_word(rep['holds'])}")
        else:
            print(
                f"  {rep['id']:<6} {params:<18} {_num(rep['lower'])} <= {_num(rep['value'])} <= "
                f"{_num(rep['upper'])}  {_verdict_word(rep['holds'])}"
            )
    summary = report["summary"]
    if summary:
        print(
            f"  {summary['holds']} hold, {summary['violations']} violated, "
            f"{summary['gated']} gated of {summary['total']}"
        )
    for row in report.get("interval_sharpness", []):
        print(f"  root {_json_root(row['root'])}: eq32 vs eq30 narrower = {row['narrower']}")


# -- ca-check ---------------------------------------------------------------


def run_ca_check(text: str, settings: Settings, chain: Optional[str] = None) -> dict:
    """Exact CA certificate plus shared-root counts and candidate filter verdicts."""
    p = parse_polynomial(text)
    certificate = certify_ca(p)
    f = certificate.polynomial
    _, alpha, _ = normalize_unit_disc(f, settings=settings)

    report = certificate.to_dict()
    report["missing_orders"] = certificate.missing_orders
    report["unit_disc_scale"] = str(alpha)
    report["shared_root_counts"] = shared_root_counts(f).to_dict()
    report["filters"] = None
    if f.degree >= 2 and not is_trivial(f) and is_real_rooted(f):
        report["filters"] = evaluate_filters(candidate_stats(f))
    report["chain"] = maximal_chain_check(f, parse_nodes(chain), settings).to_dict() if chain else None
    return report


def print_ca_check(report: dict) -> None:
    print(f"\n{report['polynomial']}")
    print("-" * 40)
    print(f"  Verdict:       {report['verdict']}")
    for e in report["evidence"]:
        shown = e["witness"] if e["shared"] else "no common root"
        print(f"    m = {e['order']:<3} {shown}")
    counts = report["shared_root_counts"]
    print(f"  l(m):          {counts['l']}")
    for citation, rejected in (report["filters"] or {}).items():
        word = {True: "rejects", False: "passes", None: "skipped"}[rejected]
        print(f"    {citation:<18} {word}")
    if report["chain"]:
        print(f"  Chain:         {report['chain']['verdict']}")


# -- ca-search --------------------------------------------------------------


def run_ca_search(args: argparse.Namespace, settings: Settings):
    """SearchReport for the flags of the ca-search verb."""
    filters_on = args.filters == "on"
    config = SearchConfig(
        degree=args.degree,
        theta=args.theta,
        seed=args.seed,
        multistarts=args.multistarts,
        max_iterations=args.iterations,
        assignment_budget=args.budget,
        use_pattern_filters=filters_on,
        use_candidate_filters=filters_on,
        trust_four_roots=args.trust_four_roots,
        complex_roots=args.complex,
        threads=settings.threads,
        verify_digits=settings.verify_digits,
    )
    return search(config)


def print_search(report) -> None:
    summary = report.summarize()
    print("\n" + "=" * 60)
    print(f"CA SEARCH, DEGREE {summary['degree']}")
    print("=" * 60)
    for record in report.records:
        if record.pruned_by:
            status = f"pruned ({record.pruned_by})"
        elif record.candidate:
            status = f"CANDIDATE, verified residual {_num(record.verified_residual)}"
        else:
            status = f"best residual {_num(record.best_residual)}"
            if record.candidate_pruned_by:
                status += f", pruned by {record.candidate_pruned_by}"
        print(f"  {str(record.pattern):<20} {status}")
    print("-" * 60)
    print(f"  Patterns:      {summary['patterns']} ({summary['pruned']} pruned, {summary['searched']} searched)")
    print(f"  Min residual:  {_num(summary['min_residual'])}")
    print(f"  Verdict:       {summary['verdict']}{'' if summary['complete'] else ' (incomplete)'}")


# -- dispatch ---------------------------------------------------------------


def _emit(payloads: list, as_json: bool, printer: Callable[[dict], None]) -> None:
    """One pretty JSON document for a single item, JSON lines for a batch."""
    if as_json:
        if len(payloads) == 1:
            print(json.dumps(payloads[0], indent=2))
        else:
            for payload in payloads:
                print(json.dumps(payload))
        return
    for payload in payloads:
        printer(payload)


def _run_batch(args, settings: Settings, runner: Callable, printer: Callable) -> int:
    source = args.input if args.input is not None else args.source
    if source is None:
        raise DomainError("No input given; pass it inline, with --input PATH, or --input - for stdin")
    items = read_inputs(source)
    if not items:
        raise DomainError(f"No input items in {source!r}")

    payloads, status = [], EXIT_OK
    for item in items:
        try:
            payloads.append(runner(item))
        except CasasKitError as exc:
            if len(items) == 1:
                raise
            print(f"error: {item}: {exc}", file=sys.stderr)
            status = EXIT_ERROR
    _emit(payloads, args.json, printer)
    if status == EXIT_OK and any(p.get("verdict") == CA_CANDIDATE for p in payloads):
        return EXIT_CANDIDATES
    return status


def _order_list(values: Optional[List[int]]) -> Optional[List[int]]:
    return sorted(set(values)) if values else None


def dispatch(args: argparse.Namespace) -> int:
    overrides = {}
    if args.precision is not None:
        overrides = {"precision_digits": args.precision, "verify_digits": max(args.precision, 15)}
    settings = get_settings(**overrides)
    logger.info("Running %s with %s", args.command, settings)

    if args.command == "analyze":
        return _run_batch(args, settings, lambda t: run_analyze(t, settings), print_analyze)
    if args.command == "goncharov":
        budget = args.budget if args.budget is not None else settings.genetic_max_degree
        return _run_batch(
            args,
            settings,
            lambda t: run_goncharov(t, args.construction, args.cross_check, args.bound_at, budget),
            print_goncharov,
        )
    if args.command == "identities":
        backend = "numeric" if args.numeric else None
        return _run_batch(
            args,
            settings,
            lambda t: run_identities(t, settings, args.at, _order_list(args.order), backend),
            print_reports,
        )
    if args.command == "bounds":
        return _run_batch(args, settings, lambda t: run_bounds(t, settings), print_reports)
    if args.command == "ca-check":
        return _run_batch(args, settings, lambda t: run_ca_check(t, settings, args.chain), print_ca_check)

    report = run_ca_search(args, settings)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(report.to_json() + "\n")
        print(f"Report saved to {args.output}", file=sys.stderr)
    if args.csv:
        report.to_dataframe().to_csv(args.csv, index=False)
        print(f"Records saved to {args.csv}", file=sys.stderr)
    if args.json:
        print(report.to_json())
    elif not args.output:
        print_search(report)
    return report.exit_code


def _theta(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"theta must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable JSON output")
    common.add_argument("--precision", type=int, help="Working precision in decimal digits")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("source", nargs="?", help="Inline input text")
    inputs.add_argument("-i", "--input", help="Inline text, a file with one item per line, or - for stdin")

    parser = argparse.ArgumentParser(description="Exact polynomial analysis and Casas-Alvero search")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common, inputs], help="Roots, centroid data and triviality")

    gon = sub.add_parser("goncharov", parents=[common, inputs], help="Abel-Goncharov polynomial of a node list")
    gon.add_argument("--construction", choices=sorted(CONSTRUCTIONS), default="interpolation")
    gon.add_argument("--cross-check", action="store_true", help="Build with all three constructions")
    gon.add_argument("--bound-at", action="append", metavar="Z", help="Evaluate |G|, sharp and Goncharov bounds at Z")
    gon.add_argument("--budget", type=int, help="Degree cap for genetic-sum enumeration")

    ident = sub.add_parser("identities", parents=[common, inputs], help="Identity residuals")
    ident.add_argument("--at", action="append", metavar="Z", help="Evaluation point (default 0)")
    ident.add_argument("--order", action="append", type=int, metavar="M", help="Derivative order (default all)")
    ident.add_argument("--numeric", action="store_true", help="Use the floating-point backend")

    sub.add_parser("bounds", parents=[common, inputs], help="Root-localization verdicts")

    check = sub.add_parser("ca-check", parents=[common, inputs], help="Exact CA certificate")
    check.add_argument("--chain", help="Common-root chain as nodes:[x0, x1, ...]")

    ca = sub.add_parser("ca-search", parents=[common], help="Residual search for CA candidates")
    ca.add_argument("--degree", type=int, required=True)
    ca.add_argument("--theta", type=_theta, default=SearchConfig.DEFAULT_THETA, help="Candidate threshold; inf reports only")
    ca.add_argument("--seed", type=int, default=0)
    ca.add_argument("--multistarts", type=int, default=SearchConfig.DEFAULT_MULTISTARTS)
    ca.add_argument("--iterations", type=int, default=60, help="Damped Gauss-Newton iteration cap")
    ca.add_argument("--budget", type=int, help="Assignment budget per pattern")
    ca.add_argument("--filters", choices=("on", "off"), default="on")
    ca.add_argument("--trust-four-roots", action="store_true", help="Also reject patterns with four distinct roots")
    ca.add_argument("--complex", action="store_true", help="Search complex interior roots (degree <= 5)")
    ca.add_argument("--output", "-o", help="Write the JSON report to this file")
    ca.add_argument("--csv", help="Write one row per pattern to this CSV file")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # exit code 2 is reserved for candidates
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return dispatch(args)
    except (CasasKitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
