"""
Text Grammar
Polynomials, ring declarations, matrix files and ideal JSON
"""

import json
import re
from tokenize import TokenError
from typing import Any, Dict, List, Optional, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from src.core.field import CoefficientField
from src.core.polynomial import Polynomial
from src.core.ring import PolyRing
from src.utils.errors import ParseError

ALLOWED = re.compile(r"^[0-9A-Za-z_+\-*/^()\s]*$")
RING_LINE = re.compile(r"^\s*ring\s+(q|fp\s+(\d+))\s*\[\s*([^\]]*)\]\s*$")
VAR_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
TRANSFORMS = standard_transformations + (convert_xor,)


def parse_ring(line: str) -> PolyRing:
    """Parse ``ring q [x,y,z,w]`` or ``ring fp 32003 [x,y,z,w,v]``."""
    match = RING_LINE.match(line)
    if not match:
        raise ParseError(f"bad ring declaration: {line!r}")
    field = CoefficientField.rationals() if match.group(1) == "q" else CoefficientField.prime_field(int(match.group(2)))
    names = [v.strip() for v in match.group(3).split(",") if v.strip()]
    for name in names:
        if not VAR_NAME.match(name):
            raise ParseError(f"bad variable name {name!r}")
    try:
        return PolyRing(field, names)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """
    Parse a polynomial over the ring's declared variables

    Accepts integers, variable names, ``+ - * ^`` and parentheses; integer
    fractions such as ``3/2`` are read as rational coefficients. Implicit
    multiplication, floats and undeclared names are rejected.
    """
    if not ALLOWED.match(text) or not text.strip():
        raise ParseError(f"illegal characters or empty input in {text!r}")
    symbols = [sympy.Symbol(v) for v in ring.variables]
    local = {v: s for v, s in zip(ring.variables, symbols)}
    try:
        expr = parse_expr(text, local_dict=local, transformations=TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, TokenError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from exc
    unknown = {str(s) for s in expr.free_symbols} - set(ring.variables)
    if unknown:
        raise ParseError(f"undeclared variables {sorted(unknown)} in {text!r}")
    try:
        poly = sympy.Poly(expr, *symbols, domain=sympy.QQ)
    except Exception as exc:
        raise ParseError(f"{text!r} is not a polynomial: {exc}") from exc
    try:
        terms = {tuple(int(a) for a in exp): ring.field(coeff) for exp, coeff in poly.terms()}
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from exc
    return Polynomial(ring, terms)


def parse_matrix_text(text: str, ring: Optional[PolyRing] = None):
    """
    Parse a matrix file: one row per line, entries separated by ``;``

    An optional leading ring declaration sets the ring; blank lines and
    ``#`` comments are ignored.
    """
    from src.core.matrix import PolyMatrix
    rows: List[List[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring"):
            ring = parse_ring(line)
            continue
        rows.append([cell.strip() for cell in line.split(";")])
    if ring is None:
        raise ParseError("matrix file has no ring declaration and no ring was given")
    if not rows:
        raise ParseError("matrix file has no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("matrix rows have different lengths")
    return PolyMatrix(ring, [[parse_polynomial(cell, ring) for cell in row] for row in rows])


def parse_ideal_text(text: str, ring: Optional[PolyRing] = None) -> Tuple[PolyRing, List[Polynomial]]:
    """Ring declaration followed by generators, one per line or comma separated."""
    gens: List[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring"):
            ring = parse_ring(line)
            continue
        gens.extend(part.strip() for part in line.split(",") if part.strip())
    if ring is None:
        raise ParseError("ideal text has no ring declaration")
    return ring, [parse_polynomial(g, ring) for g in gens]


def parse_ideal_json(data: Any) -> Tuple[PolyRing, List[Polynomial]]:
    """Read ``{"ring": "ring q [x,y]", "generators": ["x^2", ...]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid ideal JSON: {exc}") from exc
    if not isinstance(data, dict) or "ring" not in data or "generators" not in data:
        raise ParseError("ideal JSON needs 'ring' and 'generators'")
    ring = parse_ring(data["ring"])
    return ring, [parse_polynomial(g, ring) for g in data["generators"]]


def ideal_to_json(ring: PolyRing, generators: List[Polynomial]) -> Dict[str, Any]:
    return {"ring": ring.declaration(), "generators": [str(g) for g in generators]}
