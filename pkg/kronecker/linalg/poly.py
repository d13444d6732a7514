"""Univariate polynomials over Q and polynomial matrices.

Polynomials are ``sympy.Poly`` objects in the single generator LAMBDA with
domain QQ; sympy supplies division, gcd and factorisation over Q. This module
adds the ascending-coefficient conversion helpers and a Smith normal form for
matrices over Q[λ].
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from sympy import QQ as SYMPY_QQ
from sympy import Poly, Rational, Symbol

from kronecker.errors import ShapeMismatch
from kronecker.linalg.matrix import ExactMatrix

logger = logging.getLogger(__name__)

LAMBDA = Symbol("lam")


def make_poly(coefficients: Sequence[object]) -> Poly:
    """Build a polynomial from ascending coefficients (index = degree)."""
    coeffs = [c if isinstance(c, Fraction) else Fraction(str(c)) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return Poly(0, LAMBDA, domain=SYMPY_QQ)
    return Poly.from_list(
        [Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        LAMBDA,
        domain=SYMPY_QQ,
    )


def coefficients(p: Poly) -> List[Fraction]:
    """Ascending coefficients; the zero polynomial gives the empty list."""
    if p.is_zero:
        return []
    return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]


def vanishing_order(p: Poly) -> int:
    """Multiplicity of 0 as a root (the power of λ dividing p)."""
    order = 0
    for c in coefficients(p):
        if c != 0:
            break
        order += 1
    return order


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeMismatch(f"entries do not match declared shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], cols: Optional[int] = None) -> "PolyMatrix":
        data = tuple(tuple(r) for r in rows)
        n_cols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), n_cols, data)

    @classmethod
    def linear(cls, lead: ExactMatrix, const: ExactMatrix) -> "PolyMatrix":
        """The matrix λ·lead + const over Q[λ]."""
        if lead.shape != const.shape:
            raise ShapeMismatch(f"pencil shapes differ: {lead.shape} vs {const.shape}")
        return cls(
            lead.rows, lead.cols,
            tuple(
                tuple(make_poly([const[i, j], lead[i, j]]) for j in range(lead.cols))
                for i in range(lead.rows)
            ),
        )

    def evaluate(self, value: Fraction) -> ExactMatrix:
        point = Rational(value.numerator, value.denominator)
        return ExactMatrix.from_rows(
            [[Fraction(str(p.eval(point))) for p in row] for row in self.entries],
            cols=self.cols,
        )


# === Smith normal form ===

def _min_degree_position(a: List[List[Poly]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_deg = None
    for i in range(t, len(a)):
        for j in range(t, len(a[i])):
            p = a[i][j]
            if p.is_zero:
                continue
            d = p.degree()
            if best_deg is None or d < best_deg:
                best, best_deg = (i, j), d
                if d == 0:
                    return best
    return best


def _find_non_divisible(a: List[List[Poly]], t: int) -> Optional[int]:
    pivot = a[t][t]
    for i in range(t + 1, len(a)):
        for j in range(t + 1, len(a[i])):
            if not a[i][j].is_zero and not a[i][j].rem(pivot).is_zero:
                return i
    return None


def _primitive(polys: Sequence[Poly]) -> List[Poly]:
    """Scale a row or column so its coefficients are coprime integers."""
    nonzero = [c for p in polys for c in coefficients(p) if c != 0]
    if not nonzero:
        return list(polys)
    den = lcm(*(c.denominator for c in nonzero))
    num = gcd(*(c.numerator * (den // c.denominator) for c in nonzero))
    if den == num:
        return list(polys)
    factor = Rational(den, num)
    return [p.mul_ground(factor) for p in polys]


def _pseudo_quotient(p: Poly, pivot: Poly) -> Tuple[object, Poly, bool]:
    """(c, q, exact) with c·p = q·pivot + r, c a power of the pivot's leading coefficient."""
    c = pivot.LC() ** (p.degree() - pivot.degree() + 1) if p.degree() >= pivot.degree() else 1
    q, r = p.pdiv(pivot)
    return c, q, r.is_zero


def smith_normal_form(pm: PolyMatrix) -> List[Poly]:
    """Monic invariant factors d_1 | d_2 | ... | d_r, r = normal rank.

    Fraction-free elimination over Q[λ]: the lowest-degree entry is moved to
    the pivot and its row and column are cleared by pseudo-division, so each
    step scales the target by a nonzero constant instead of dividing. Rows and
    columns are reduced to integer content 1 after every step. A nonzero
    remainder restarts the step with a strictly smaller pivot degree.
    """
    a = [_primitive(r) for r in pm.entries]
    m, n = pm.rows, pm.cols
    factors: List[Poly] = []
    t = 0
    while t < min(m, n):
        pos = _min_degree_position(a, t)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            a[t], a[i0] = a[i0], a[t]
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            pivot = a[t][t]

            remainder = False
            for i in range(t + 1, m):
                if a[i][t].is_zero:
                    continue
                c, q, exact = _pseudo_quotient(a[i][t], pivot)
                a[i] = a[i][:t] + _primitive(
                    [x.mul_ground(c) - q * y for x, y in zip(a[i][t:], a[t][t:])]
                )
                remainder = remainder or not exact
            for j in range(t + 1, n):
                if a[t][j].is_zero:
                    continue
                c, q, exact = _pseudo_quotient(a[t][j], pivot)
                column = _primitive([a[i][j].mul_ground(c) - q * a[i][t] for i in range(t, m)])
                for i, value in zip(range(t, m), column):
                    a[i][j] = value
                remainder = remainder or not exact

            if not remainder:
                bad_row = _find_non_divisible(a, t)
                if bad_row is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad_row])]
            pos = _min_degree_position(a, t)
        factors.append(a[t][t].monic())
        logger.debug("Smith step %d: invariant factor %s", t, a[t][t].monic().as_expr())
        t += 1
    return factors
