"""
Command Line Interface for detq
Curve fixtures, the determinantal pipeline, the verification suite and direct
access to the ideal, homology and lattice operations
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from src.apps.pipeline import detquartic_pipeline
from src.apps.recipes import KINDS, CurveRecipe, build_curve
from src.apps.verify import CASES, EXTENDED_CASES, verify_paper
from src.core.ideal import GREVLEX, Ideal, linked_ideal, saturate_ideal
from src.core.parser import parse_ideal_json, parse_ideal_text
from src.core.ring import MonomialOrder
from src.homology.classifier import classify_curve
from src.homology.cohomology import curve_cohomology
from src.homology.resolution import minimal_resolution_betti
from src.lattice import arithmetic, blowup, chambers, cubic_surface
from src.lattice.blowup import DivisorClass
from src.utils.config import get_config, set_config
from src.utils.errors import DetqError
from src.utils.report import Report, emit

logger = logging.getLogger(__name__)


def _print(data: Any) -> None:
    if isinstance(data, str):
        print(data)
    else:
        print(json.dumps(data, indent=2, sort_keys=True, default=str))


def _load_ideal(path: str) -> Ideal:
    """Ideal from a ``.json`` file or from a text file with a ring line and generators."""
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        ring, gens = parse_ideal_json(text)
    else:
        ring, gens = parse_ideal_text(text)
    return Ideal(ring, gens, Path(path).stem)


def _window(text: Optional[str]):
    if not text:
        return None
    lo, hi = (int(v) for v in text.split(","))
    return lo, hi


# detq commands


def cmd_build_curve(args) -> int:
    recipe = CurveRecipe(args.recipe, matrix_path=args.matrix, seed=args.seed, field=args.field, prime=args.prime)
    bundle = build_curve(recipe)
    _print(bundle.to_json())
    return 0


def cmd_pipeline(args) -> int:
    report = detquartic_pipeline(args.matrix)
    print(emit(report, args.format, args.out))
    return 0 if report.passed else 1


def cmd_verify_paper(args) -> int:
    report = verify_paper(args.case, field=args.field, prime=args.prime, seed=args.seed)
    print(emit(report, args.format, args.out))
    print(f"🔑 digest {report.digest()}")
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    report = Report.from_json(Path(args.report).read_text(encoding="utf-8"))
    print(emit(report, args.format))
    return 0 if report.passed else 1


def cmd_gb(args) -> int:
    i = _load_ideal(args.ideal)
    order = MonomialOrder.parse(args.order) if args.order else GREVLEX
    _print([str(g) for g in i.groebner(order).polys])
    return 0


def cmd_sat(args) -> int:
    _print(saturate_ideal(_load_ideal(args.ideal)).trim().to_json())
    return 0


def cmd_link(args) -> int:
    i = _load_ideal(args.ideal)
    residual = linked_ideal(i, i.ring.parse(args.f), i.ring.parse(args.g))
    _print(residual.to_json())
    return 0


def cmd_hilbert(args) -> int:
    _print(_load_ideal(args.ideal).hilbert().to_dict())
    return 0


def cmd_betti(args) -> int:
    table = minimal_resolution_betti(_load_ideal(args.ideal))
    _print(str(table) if args.format == "text" else table.to_json())
    return 0


def cmd_cohom(args) -> int:
    table = curve_cohomology(_load_ideal(args.ideal), _window(args.window))
    _print(str(table) if args.format == "text" else table.to_json())
    return 0


def cmd_classify(args) -> int:
    verdict = classify_curve(_load_ideal(args.ideal), verify=not args.skip_checks)
    _print(verdict.to_json())
    return 0


# lattice commands


def cmd_chi(args) -> int:
    _print({"closed": blowup.chi_closed(args.n, args.k), "hrr": blowup.chi_hrr(args.n, args.k)})
    return 0


def cmd_chambers(args) -> int:
    _print(chambers.chambers(args.case).to_json())
    return 0


def cmd_lattice_classify(args) -> int:
    _print(chambers.classify(args.case, DivisorClass.parse(args.divisor)).to_json())
    return 0


def cmd_cones(args) -> int:
    _print({name: [str(far), str(near)] for name, (far, near) in chambers.cones(args.case).items()})
    return 0


def cmd_secants(args) -> int:
    c = cubic_surface.SurfaceClass.parse(args.surface_class)
    counts = cubic_surface.secancy_counts(c)
    _print({"class": str(c), "degree": c.degree, "genus": c.genus,
            "tally": cubic_surface.cubic_secant_tally(c),
            "most_secant": [name for name, value in counts if value == counts[0][1]]})
    return 0


def cmd_solve(args) -> int:
    _print(sorted(str(c) for c in cubic_surface.cubic_class_solve(args.degree, args.genus)))
    return 0


def cmd_quadrisecants(args) -> int:
    _print(arithmetic.quadrisecant_count(args.d, args.g))
    return 0


def cmd_flop(args) -> int:
    _print(str(blowup.flop_pushforward(DivisorClass.parse(args.divisor))))
    return 0


def cmd_k3(args) -> int:
    image = arithmetic.H_RESTRICTED_VARIANT if args.variant else arithmetic.H_RESTRICTED
    report = arithmetic.restriction_report(image)
    data = report.to_json()
    if args.divisor:
        data["restriction"] = str(arithmetic.k3_restriction(DivisorClass.parse(args.divisor), image))
    _print(data)
    return 0


def cmd_exclusion(args) -> int:
    result = arithmetic.rational_exclusion(arithmetic.QuadForm(args.A, args.B, args.C, args.target))
    _print(result.to_json())
    return 0


def _add_lattice_commands(sub) -> None:
    p = sub.add_parser("chi", help="Euler characteristic of nH - kE, closed form and Riemann-Roch")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("chambers", help="Chamber table of a case")
    p.add_argument("case", choices=chambers.CASES)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("classify", help="Chamber, base locus and model of a divisor class")
    p.add_argument("case", choices=chambers.CASES)
    p.add_argument("divisor", help="class such as 7H-2E")
    p.set_defaults(func=cmd_lattice_classify)

    p = sub.add_parser("cones", help="Nef, movable and effective cones")
    p.add_argument("case", choices=chambers.CASES)
    p.set_defaults(func=cmd_cones)

    p = sub.add_parser("secants", help="Intersections of a cubic-surface class with the 27 lines")
    p.add_argument("surface_class", help="d;a1,...,a6 such as 12;5,5,4,4,4,4")
    p.set_defaults(func=cmd_secants)

    p = sub.add_parser("solve", help="Cubic-surface classes of given degree and genus")
    p.add_argument("degree", type=int)
    p.add_argument("genus", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("quadrisecants", help="Number of 4-secant lines of a (d, g) curve")
    p.add_argument("d", type=int)
    p.add_argument("g", type=int)
    p.set_defaults(func=cmd_quadrisecants)

    p = sub.add_parser("flop", help="Push a class through the flop")
    p.add_argument("divisor")
    p.set_defaults(func=cmd_flop)

    p = sub.add_parser("k3", help="Restriction lattice of the surface in |11H - 3E|")
    p.add_argument("--divisor", help="also restrict this class")
    p.add_argument("--variant", action="store_true", help="use H|F = 11l - 3s - e")
    p.set_defaults(func=cmd_k3)

    p = sub.add_parser("exclusion", help="Rational solvability of A a^2 + B ab + C b^2 = target")
    for name in ("A", "B", "C"):
        p.add_argument(name, type=int)
    p.add_argument("target", type=int, nargs="?", default=0)
    p.set_defaults(func=cmd_exclusion)


def _add_global_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--no-cache", action="store_true", help="Bypass the Groebner basis disk cache")
    parser.add_argument("--cache-dir", type=str, help="Groebner basis cache directory")
    parser.add_argument("--max-degree", type=int, help="Largest S-pair degree")
    parser.add_argument("--max-pairs", type=int, help="Largest number of S-pairs")
    parser.add_argument("--max-seconds", type=float, help="Wall-clock limit of one Groebner computation")


def _field_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", choices=["q", "fp"], help="Coefficient field")
    p.add_argument("--prime", type=int, help="Modulus of the prime field")
    p.add_argument("--seed", type=int, help="Seed for random choices")


def _report_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", type=str, help="Also write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detq", description="Exact algebra workbench for degree-10 genus-11 space curves")
    _add_global_options(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-curve", help="Build a curve fixture and check its invariants")
    p.add_argument("--recipe", choices=KINDS, required=True)
    p.add_argument("--matrix", type=str, help="Matrix file for the matrix recipe")
    _field_options(p)
    p.set_defaults(func=cmd_build_curve)

    p = sub.add_parser("pipeline", help="Determinantal hypersurface pipeline on a matrix file")
    p.add_argument("--matrix", type=str, required=True)
    _report_options(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify-paper", help="Run the acceptance suites")
    p.add_argument("--case", choices=list(CASES) + list(EXTENDED_CASES) + ["all"], default="all")
    _field_options(p)
    _report_options(p)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("report", help="Render a saved JSON report")
    p.add_argument("report")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gb", help="Reduced Groebner basis")
    p.add_argument("ideal")
    p.add_argument("--order", type=str, help="grevlex, lex or a weight order")
    p.set_defaults(func=cmd_gb)

    for name, func, doc in (("sat", cmd_sat, "Saturation by the irrelevant ideal"),
                            ("hilbert", cmd_hilbert, "Hilbert data")):
        p = sub.add_parser(name, help=doc)
        p.add_argument("ideal")
        p.set_defaults(func=func)

    p = sub.add_parser("link", help="Liaison residual in two forms of the ideal")
    p.add_argument("ideal")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_link)

    for name, func, doc in (("betti", cmd_betti, "Graded Betti table"),
                            ("cohom", cmd_cohom, "Cohomology table of the ideal sheaf")):
        p = sub.add_parser(name, help=doc)
        p.add_argument("ideal")
        p.add_argument("--format", choices=["text", "json"], default="text")
        if name == "cohom":
            p.add_argument("--window", type=str, help="lo,hi twist range, e.g. --window=-4,5")
        p.set_defaults(func=func)

    p = sub.add_parser("classify", help="ACM / D1 / D2 classification of a (10, 11) curve")
    p.add_argument("ideal")
    p.add_argument("--skip-checks", action="store_true", help="Skip the smoothness and connectedness checks")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lattice", help="Intersection-theoretic computations")
    _add_lattice_commands(p.add_subparsers(dest="lattice_command", required=True))
    return parser


def _configure(args) -> None:
    logging.basicConfig(format="%(message)s", level=logging.DEBUG if args.verbose else logging.INFO)
    config = get_config().override(
        cache_dir=args.cache_dir,
        max_degree=args.max_degree,
        max_pairs=args.max_pairs,
        max_seconds=args.max_seconds,
        use_cache=False if args.no_cache else None,
    )
    set_config(config)


def _run(parser: argparse.ArgumentParser, argv: Optional[List[str]]) -> int:
    args = parser.parse_args(argv)
    _configure(args)
    try:
        return args.func(args)
    except DetqError as exc:
        logger.error(f"❌ {type(exc).__name__}: {exc}")
        return 2
    except (OSError, ValueError) as exc:
        logger.error(f"❌ {exc}")
        return 2


def main(argv: Optional[List[str]] = None) -> int:
    return _run(build_parser(), argv)


def lattice_main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="lattice", description="Intersection numbers, chambers and cubic-surface classes")
    _add_global_options(parser)
    _add_lattice_commands(parser.add_subparsers(dest="lattice_command", required=True))
    return _run(parser, argv)


if __name__ == "__main__":
    sys.exit(main())
