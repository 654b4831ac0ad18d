"""Command-line front end: ``harmap analyze``, ``harmap verify``, ``harmap fixtures``."""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from harmap import analysis as an
from harmap.errors import HarmapError, NotLocallyUnivalent, NotSensePreserving, RadiusError
from harmap.extremal import covering_radius, distortion_report
from harmap.fixtures import corpus, fixture_names, get_fixture
from harmap.hmap import GridSpec, MapFormatError, dump_map, load_map, qc_constant_estimate
from harmap.preschwarzian import DEFAULT_N_THETA, default_r_max, norm_estimate, univalence_radius
from harmap.report import VerificationReport
from harmap.series import DEFAULT_ORDER
from harmap.verify import SUITES, run_suite

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ANALYZE_RADII = (0.3, 0.6, 0.9)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _dump(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p):
    p.add_argument("--rmax", type=float, default=None, help="sampling radius (default: trusted radius, at most 0.999)")
    p.add_argument("--grid", type=GridSpec.parse, default=GridSpec(), help="polar grid NRxNA (default 64x256)")
    p.add_argument("--ntheta", type=int, default=DEFAULT_N_THETA, help="phase samples (default 256)")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series order for fixtures (default 256)")
    p.add_argument("--seed", type=int, default=7, help="random seed (default 7)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmap", description="Pre-Schwarzian analysis of planar harmonic maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a coefficient file or a named fixture")
    pa.add_argument("input", nargs="?", help="JSON coefficient document")
    pa.add_argument("--fixture", help="named fixture instead of a file")
    _add_common(pa)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", help=f"one of {', '.join(SUITES + ('all',))}")
    pv.add_argument("--samples", type=int, default=100, help="random samples per suite (default 100)")
    _add_common(pv)

    pf = sub.add_parser("fixtures", help="list fixtures or export one as JSON")
    pf.add_argument("--export", metavar="NAME", help="print the coefficient document of a fixture")
    pf.add_argument("--order", type=int, default=DEFAULT_ORDER)
    pf.add_argument("--out", default=None)
    return parser


def analyze_map(f, r_max=None, grid=GridSpec(), n_theta=DEFAULT_N_THETA):
    """Analysis document and the distortion report behind it."""
    doc = {"schema_version": SCHEMA_VERSION, "subject": f.name, "order": f.order, "errors": []}
    if r_max is None:
        r_max = default_r_max(f)
    doc["r_max"] = r_max
    norm = None
    try:
        est = norm_estimate(f, r_max=r_max, grid=grid, n_theta=n_theta)
        norm = est.value
        doc["norm_estimate"] = est.to_dict()
    except (NotSensePreserving, NotLocallyUnivalent) as exc:
        doc["norm_estimate"] = None
        doc["errors"].append(f"norm_estimate: {exc}")
    doc["qc_constant_estimate"] = qc_constant_estimate(f, r_max, grid)
    if doc["qc_constant_estimate"] is None:
        doc["errors"].append("qc_constant_estimate: Jacobian not positive on the grid")
    doc["bloch_seminorm"] = an.bloch_seminorm(f, r_max=r_max, grid=grid).to_dict()
    try:
        doc["gamma_estimate"] = an.gamma_estimate(f).to_dict()
    except HarmapError as exc:
        doc["gamma_estimate"] = None
        doc["errors"].append(f"gamma_estimate: {exc}")
    report = VerificationReport()
    if norm is not None:
        # drop rounding noise so lambda = 1 lands on the threshold branch it belongs to
        lam = float(f"{norm / 2.0:.12g}")
        doc["lambda"] = lam
        doc["univalence_certificate"] = univalence_radius(norm).to_dict()
        doc["hardy_thresholds"] = an.hardy_threshold_report(lam).to_dict()
        doc["covering_radius"] = covering_radius(lam)
        radii = [r for r in ANALYZE_RADII if r <= r_max]
        report = distortion_report(f, lam, radii)
        doc["distortion"] = report.to_dict()
    return doc, report


def _cmd_analyze(args) -> int:
    if (args.input is None) == (args.fixture is None):
        raise _Usage("give exactly one of INPUT or --fixture")
    if args.fixture is not None:
        try:
            f = get_fixture(args.fixture, args.order).map
        except KeyError as exc:
            raise _Usage(str(exc.args[0])) from exc
    else:
        f = load_map(args.input)
    doc, report = analyze_map(f, args.rmax, args.grid, args.ntheta)
    _emit(report.to_csv() if args.format == "csv" else _dump(doc), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite not in SUITES + ("all",):
        raise _Usage(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report = run_suite(args.suite, order=args.order, samples=args.samples, seed=args.seed)
    if args.format == "csv":
        text = report.to_csv()
    else:
        doc = {"schema_version": SCHEMA_VERSION, "suite": args.suite, "seed": args.seed, "samples": args.samples}
        doc.update(report.to_dict())
        doc["details"] = report.details
        text = _dump(doc)
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_fixtures(args) -> int:
    if args.export:
        if args.export not in fixture_names():
            raise _Usage(f"unknown fixture {args.export!r}")
        _emit(dump_map(get_fixture(args.export, args.order).map) + "\n", args.out)
        return EXIT_OK
    lines = []
    for fx in corpus(args.order):
        known = ", ".join(f"{k}={v.value:.6g} [{v.provenance}]" for k, v in fx.known.items())
        lines.append(f"{fx.name}\t{known}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


class _Usage(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handler = {"analyze": _cmd_analyze, "verify": _cmd_verify, "fixtures": _cmd_fixtures}[args.command]
    try:
        return handler(args)
    except (_Usage, MapFormatError, RadiusError, ValueError) as exc:
        print(f"harmap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
