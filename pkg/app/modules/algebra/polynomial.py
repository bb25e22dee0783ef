from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

import sympy

from ..common.errors import DegreeLimitExceeded, NoPolynomialFit
from ..common.rational import (
    RationalLike,
    format_fractions,
    horner,
    to_fraction,
    to_fractions,
    to_sympy,
    trim,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 8
Coeffs = Tuple[Fraction, ...]


def _add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Coeffs:
    size = max(len(p), len(q))
    out = [Fraction(0)] * size
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def _scale(p: Sequence[Fraction], k: Fraction) -> Coeffs:
    return trim([c * k for c in p])


def _multiply(p: Sequence[Fraction], q: Sequence[Fraction]) -> Coeffs:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def shift(coeffs: Sequence[Fraction], t: Fraction) -> Coeffs:
    """Coefficients of p(x + t)."""
    out = [Fraction(0)] * len(coeffs)
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for i in range(k + 1):
            out[i] += c * comb(k, i) * t ** (k - i)
    return trim(out)


def compose(p: Sequence[Fraction], q: Sequence[Fraction]) -> Coeffs:
    """Coefficients of p(q(x)), Horner order."""
    out: Coeffs = ()
    for c in reversed(tuple(p)):
        out = _add(_multiply(out, q), (c,))
    return out


def interpolate_exact(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Coeffs:
    """Newton divided differences in exact arithmetic, returned in the monomial basis.

    Trailing zero divided differences are dropped, so the result has the
    minimal degree that reproduces every point.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have the same length")
    if len(set(xs)) != len(xs):
        raise NoPolynomialFit("interpolation nodes must be distinct", nodes=len(xs))
    n = len(xs)
    table = list(ys)
    newton = [table[0]] if n else []
    for order in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + order] - xs[i])
            for i in range(n - order)
        ]
        newton.append(table[0])
    while newton and newton[-1] == 0:
        newton.pop()
    poly: List[Fraction] = []
    for k in range(len(newton) - 1, -1, -1):
        poly = list(_add(_multiply(poly, (-xs[k], Fraction(1))), (newton[k],)))
    return trim(poly)


@dataclass(frozen=True)
class StructurePolynomial:
    """f(N0) in [N+, N-] = f(N0); coeffs[k] multiplies N0**k."""

    coeffs: Coeffs = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", trim(to_fractions(self.coeffs)))

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: RationalLike) -> Fraction:
        return horner(self.coeffs, to_fraction(x))

    def to_json(self) -> List[str]:
        return format_fractions(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "StructurePolynomial":
        return cls(to_fractions(data))

    @classmethod
    def su11(cls) -> "StructurePolynomial":
        return cls((0, -2))

    @classmethod
    def su2(cls) -> "StructurePolynomial":
        return cls((0, 2))

    @classmethod
    def oscillator(cls) -> "StructurePolynomial":
        return cls((-1,))

    @classmethod
    def general_quadratic(
        cls, a: RationalLike, b: RationalLike, c: RationalLike, sign: int = 1
    ) -> "StructurePolynomial":
        """f = ±2b N0 + a N0² + c."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
        return cls((c, 2 * sign * b, a))

    @classmethod
    def higgs(cls, c: RationalLike, h: RationalLike) -> "StructurePolynomial":
        """f = 2c M0 + 4h M0³."""
        c, h = to_fraction(c), to_fraction(h)
        return cls((0, 2 * c, 0, 4 * h))

    @classmethod
    def trilinear(cls, h0: RationalLike, q: RationalLike) -> "StructurePolynomial":
        """Three-boson sector algebra with H0=h0 and Q=q substituted."""
        h0, q = to_fraction(h0), to_fraction(q)
        casimir_bc = (1 - q * q) / 4
        return cls((h0 * (h0 + 1) - casimir_bc, 2 * h0 - 1, -3))

    @classmethod
    def three_boson_table(cls, epsilon: RationalLike) -> "StructurePolynomial":
        """Forward difference of the ladder m(m-1/2-eps)(m+1/2-eps) on weights w0=0."""
        eps = to_fraction(epsilon)
        return cls((-(eps * eps - 2 * eps + Fraction(3, 4)), 4 * eps - 3, -3))

    @classmethod
    def from_ladder_table(
        cls, s_table: Sequence[RationalLike], w0: RationalLike
    ) -> "StructurePolynomial":
        """Exact f with s[m] - s[m+1] = f(w0 + m) over the table."""
        s = to_fractions(s_table)
        w0 = to_fraction(w0)
        if len(s) < 2:
            return cls(())
        xs = [w0 + m for m in range(len(s) - 1)]
        ys = [s[m] - s[m + 1] for m in range(len(s) - 1)]
        return cls(interpolate_exact(xs, ys))


@dataclass(frozen=True)
class CasimirPolynomial:
    """g with g(H) - g(H-1) = f(H), fixed by g(0) = 0."""

    coeffs: Coeffs = ()
    normalization: str = "g(0)=0"

    def __post_init__(self) -> None:
        coeffs = trim(to_fractions(self.coeffs))
        if coeffs and coeffs[0] != 0:
            raise ValueError("Casimir polynomials are normalized with g(0) = 0")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def __call__(self, x: RationalLike) -> Fraction:
        return horner(self.coeffs, to_fraction(x))

    def to_json(self) -> List[str]:
        return format_fractions(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "CasimirPolynomial":
        return cls(to_fractions(data))


def forward_difference(p: Sequence[RationalLike]) -> StructurePolynomial:
    """p(x) - p(x-1)."""
    coeffs = to_fractions(p)
    return StructurePolynomial(_add(coeffs, _scale(shift(coeffs, Fraction(-1)), Fraction(-1))))


def telescope_g(f: StructurePolynomial, max_degree: int = DEFAULT_MAX_DEGREE) -> CasimirPolynomial:
    """Solve g(H) - g(H-1) = f(H) with g(0) = 0 by exact elimination."""
    if f.degree > max_degree:
        raise DegreeLimitExceeded(
            f"structure polynomial degree {f.degree} exceeds the limit {max_degree}",
            degree=f.degree,
            limit=max_degree,
        )
    if f.is_zero:
        return CasimirPolynomial(())

    size = f.degree + 1
    # column k-1 holds x**k - (x-1)**k, which has degree k-1
    system = sympy.zeros(size, size)
    for k in range(1, size + 1):
        for i in range(k):
            system[i, k - 1] = -comb(k, i) * (-1) ** (k - i)
    rhs = sympy.Matrix([to_sympy(c) for c in f.coeffs])
    solution = system.LUsolve(rhs)
    g = CasimirPolynomial((Fraction(0),) + tuple(to_fraction(sympy.Rational(v)) for v in solution))
    logger.debug("telescoped degree-%d f into degree-%d g", f.degree, g.degree)
    return g


def casimir_value(g: CasimirPolynomial, j: RationalLike) -> Fraction:
    """C(j) = g(j - 1)."""
    return g(to_fraction(j) - 1)


def eval_f(f: StructurePolynomial, x: RationalLike) -> Fraction:
    return f(x)


def eval_g(g: CasimirPolynomial, x: RationalLike) -> Fraction:
    return g(x)


def vacuum_weights(g: CasimirPolynomial, casimir: RationalLike) -> List[Dict]:
    """Every weight w with g(w - 1) = C, i.e. every candidate lowest weight.

    Rational roots are returned exactly; the others as complex floats.
    A repeated root is one entry with its ``multiplicity``, so for an algebra
    of order n the multiplicities, not the entries, add up to n + 1.
    """
    w = sympy.Symbol("w")
    expr = sympy.Add(
        *[to_sympy(c) * (w - 1) ** k for k, c in enumerate(g.coeffs)]
    ) - to_sympy(to_fraction(casimir))
    poly = sympy.Poly(sympy.expand(expr), w, domain="QQ")
    if poly.is_zero or poly.degree() < 1:
        return []
    _, factors = sympy.factor_list(poly)
    weights: List[Dict] = []
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            root = to_fraction(sympy.Rational(-b / a))
            weights.append({"weight": root, "exact": True, "multiplicity": int(multiplicity)})
        else:
            for root in factor.nroots():
                weights.append({"weight": complex(root), "exact": False, "multiplicity": int(multiplicity)})
    weights.sort(key=lambda item: (not item["exact"], _sort_key(item["weight"])))
    return weights


def _sort_key(value: Fraction | complex) -> Tuple[float, float]:
    if isinstance(value, Fraction):
        return (float(value), 0.0)
    return (value.real, value.imag)
