"""
Determinantal Quartic Pipeline
Matrix file -> flipped matrix -> determinant -> singular locus -> checks on
the nodes: degree, Betti table, conditions imposed on cubics and quartics
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from src.core.ideal import Ideal, graded_piece_dim, saturate_ideal
from src.core.matrix import PolyMatrix, determinantal_hypersurface
from src.core.parser import parse_matrix_text
from src.core.ring import PolyRing
from src.homology.resolution import minimal_resolution_betti
from src.lattice.arithmetic import defect
from src.utils.config import get_config
from src.utils.errors import DetqError
from src.utils.report import CheckRunner, Report

logger = logging.getLogger(__name__)

GOLDEN_PATH = Path(__file__).with_name("golden.json")


def load_golden(suite: Optional[str] = None) -> Dict:
    """Golden values with provenance tags, for one suite or all of them."""
    with open(GOLDEN_PATH, encoding="utf-8") as f:
        golden = json.load(f)
    return golden if suite is None else golden.get(suite, {})


def singular_scheme(form) -> Ideal:
    """Saturated ideal of the singular scheme of a hypersurface: the form and its partials."""
    ring = form.ring
    gens = [form] + [form.derivative(v) for v in range(ring.nvars)]
    sing = saturate_ideal(Ideal(ring, gens, "jacobian"))
    sing.name = "singular locus"
    return sing


def _read_matrix(source: Union[str, Path, PolyMatrix], ring: Optional[PolyRing]) -> PolyMatrix:
    if isinstance(source, PolyMatrix):
        return source
    if ring is None:
        ring = PolyRing(get_config().make_field(), ("x", "y", "z", "w"))
    return parse_matrix_text(Path(source).read_text(encoding="utf-8"), ring)


def detquartic_pipeline(source: Union[str, Path, PolyMatrix], ring: Optional[PolyRing] = None,
                        report: Optional[Report] = None) -> Report:
    """
    Run the determinantal hypersurface pipeline on a (c+1) x c matrix

    For c = 4 every value is judged against the golden manifest; for other
    sizes the values are reported only.

    Raises:
        DetqError: the singular locus is not finite (names the failed stage)
    """
    report = report or Report("pipeline", config=get_config().to_dict())
    m = _read_matrix(source, ring)
    logger.info(f"🔄 Flipping the {m.nrows}x{m.ncols} matrix and taking its determinant")
    try:
        _, form = determinantal_hypersurface(m)
    except DetqError as exc:
        raise DetqError(f"stage determinant: {exc}") from exc
    if form.is_zero():
        raise DetqError("stage determinant: the determinant vanishes identically")
    c = form.degree()
    judged = c == 4
    runner = CheckRunner(report, load_golden("pipeline") if judged else {})

    def run(name: str, compute):
        if judged:
            return runner.check(f"pipeline.{name}", compute, expected=runner.golden[name]["expected"],
                                provenance=runner.golden[name]["provenance"])
        return runner.record(f"pipeline.{name}", compute)

    run("hypersurface_degree", lambda: c)
    logger.info(f"🔄 Singular locus of the degree-{c} hypersurface in P^{c}")
    gamma = singular_scheme(form)
    data = gamma.hilbert()
    if data.projective_dim != 0:
        raise DetqError(f"stage singular locus: expected finitely many points, "
                        f"got projective dimension {data.projective_dim}")
    points = run("singular_points", lambda: data.degree)
    run("betti", lambda: {k: v for k, v in minimal_resolution_betti(gamma).to_json().items() if k != "0,0"})
    quartics = run("h0_I_4", lambda: graded_piece_dim(gamma, 4))
    cubics = run("h0_I_3", lambda: graded_piece_dim(gamma, 3))
    run("tangent_dimension", lambda: graded_piece_dim(gamma, c) - 1)
    if points is not None and cubics is not None:
        run("defect", lambda: defect(points, cubics))
    logger.info(f"✅ Pipeline done: {data.degree} singular points, h0(I(4)) = {quartics}")
    return report
