"""Rational quadratic differentials on the sphere.

A differential is stored as the rational coefficient function phi = num/den
of phi dz^2, with exact polynomial numerator and denominator over
Q(sqrt2, i), reduced and with monic denominator so equality is structural.
Pullback under a rational map, residues of the contracted 1-form phi dz at
finite points and at infinity, and the 12x6 derivative matrix of the edge
differential are all computed exactly.

The face differential needs sqrt3 coefficients, which live outside the
exact field; it is provided as a float-coefficient differential for
evaluation and plotting only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from elsys.conformal import MoebiusMap
from elsys.exact import ExactNum, ExactPoly, ExactMatrix, I, ONE, SQRT2, ZERO, matrix_rank, poly_gcd

_MapLike = Union[MoebiusMap, ExactPoly, tuple[ExactPoly, ExactPoly]]


class RationalQD:
    """phi dz^2 with phi = num/den reduced, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: ExactPoly, den: ExactPoly) -> None:
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero and g.degree > 0:
            num = num // g
            den = den // g
        if num.is_zero:
            den = ExactPoly([1])
        else:
            inv = den.lc.inverse()
            num = num * inv
            den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("RationalQD is immutable")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalQD):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalQD":
        return RationalQD(-self.num, self.den)

    def __mul__(self, scalar) -> "RationalQD":
        return RationalQD(self.num * ExactNum.coerce(scalar), self.den)

    __rmul__ = __mul__

    def value_at(self, z: ExactNum) -> ExactNum:
        d = self.den(z)
        if d.is_zero:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(z) / d

    def eval_complex(self, z: complex) -> complex:
        num = _horner_complex([complex(c) for c in self.num.coeffs], z)
        den = _horner_complex([complex(c) for c in self.den.coeffs], z)
        return num / den

    def has_real_coefficients(self) -> bool:
        return all(c.is_real for c in self.num.coeffs + self.den.coeffs)

    def __repr__(self) -> str:
        return f"RationalQD(({self.num}) / ({self.den}))"


def _horner_complex(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _map_to_poly_pair(m: _MapLike) -> tuple[ExactPoly, ExactPoly]:
    if isinstance(m, MoebiusMap):
        return ExactPoly([m.b, m.a]), ExactPoly([m.d, m.c])
    if isinstance(m, ExactPoly):
        return m, ExactPoly([1])
    if isinstance(m, tuple) and len(m) == 2:
        return m
    raise TypeError("expected a MoebiusMap, ExactPoly, or (P, Q) pair")


def pullback(q: RationalQD, m: _MapLike) -> RationalQD:
    """Exact pullback m^* q = (phi o m) (m')^2 dz^2 for a rational map m.

    Writing m = P/Q, the composition is homogenised so no intermediate
    rational-function arithmetic is needed:

        phi o m = (sum n_j P^j Q^(N-j)) * Q^(D-N) / (sum d_j P^j Q^(D-j))
        (m')^2  = (P'Q - PQ')^2 / Q^4
    """
    P, Q = _map_to_poly_pair(m)
    if Q.is_zero or (P * Q.derivative() - Q * P.derivative()).is_zero:
        raise ValueError("map is constant or degenerate")
    N, D = q.num.degree, q.den.degree
    top = max(N, D)
    ppow = [ExactPoly([1])]
    qpow = [ExactPoly([1])]
    for _ in range(top):
        ppow.append(ppow[-1] * P)
        qpow.append(qpow[-1] * Q)
    num_h = ExactPoly([])
    for j, c in enumerate(q.num.coeffs):
        num_h = num_h + ppow[j] * qpow[N - j] * c
    den_h = ExactPoly([])
    for j, c in enumerate(q.den.coeffs):
        den_h = den_h + ppow[j] * qpow[D - j] * c
    wron = P.derivative() * Q - P * Q.derivative()
    e = D - N - 4
    num_new = num_h * wron * wron
    den_new = den_h
    if e >= 0:
        num_new = num_new * qpow[e] if e <= top else num_new * Q**e
    else:
        den_new = den_new * Q ** (-e)
    return RationalQD(num_new, den_new)


def residue(q: RationalQD, p: ExactNum) -> ExactNum:
    """Residue of the contracted 1-form phi dz at the finite point p.

    Zero at a regular point; at a simple pole num(p)/den'(p).  Higher
    order poles are refused since their residue needs more of the Laurent
    expansion than this suite ever requires.
    """
    p = ExactNum.coerce(p)
    if not q.den(p).is_zero:
        return ZERO
    dder = q.den.derivative()(p)
    if dder.is_zero:
        raise NotImplementedError(f"pole at {p} is not simple")
    return q.num(p) / dder


def residue_at_infinity(q: RationalQD) -> ExactNum:
    """Residue of phi dz at infinity, via the w = 1/z chart.

    Equal to minus the coefficient of w^(N-D+1) in the Taylor series of
    rev(num)/rev(den) at w = 0; in particular zero when phi decays faster
    than 1/z^2.
    """
    N, D = q.num.degree, q.den.degree
    order = N - D + 1
    if N < 0 or order < 0:
        return ZERO
    nrev = list(reversed(q.num.coeffs))
    drev = list(reversed(q.den.coeffs))
    inv0 = drev[0].inverse()
    series: list[ExactNum] = []
    for j in range(order + 1):
        acc = nrev[j] if j < len(nrev) else ZERO
        for i in range(j):
            dcoef = drev[j - i] if j - i < len(drev) else ZERO
            acc = acc - series[i] * dcoef
        series.append(acc * inv0)
    return -series[order]


def finite_poles(q: RationalQD, candidates: Iterable[ExactNum]) -> list[ExactNum]:
    """The candidate points where the denominator vanishes."""
    return [ExactNum.coerce(p) for p in candidates if q.den(ExactNum.coerce(p)).is_zero]


# -- the two distinguished differentials ------------------------------


def edge_qd() -> RationalQD:
    """The differential -(z + 1 + sqrt2)^2 / (z^5 - z) dz^2.

    Its horizontal trajectories realise the shortest curve system of the
    edge type: a double pole at the silver point -1-sqrt2 with negative
    leading coefficient, simple poles at the five finite special points.
    """
    a = ONE + SQRT2
    num = -ExactPoly([a * a, 2 * a, 1])
    den = ExactPoly([0, -1, 0, 0, 0, 1])
    return RationalQD(num, den)


@dataclass(frozen=True)
class FloatQD:
    """Float-coefficient differential, for evaluation and plotting only."""

    num: tuple[complex, ...]
    den: tuple[complex, ...]

    def eval_complex(self, z: complex) -> complex:
        return _horner_complex(self.num, z) / _horner_complex(self.den, z)


def face_qd() -> FloatQD:
    """z / ((1 - z^3)(z^3 + (2 + sqrt3)^3)) dz^2, float coefficients.

    The cube of 2 + sqrt3 leaves Q(sqrt2, i), so this differential is not
    represented exactly; it is only evaluated numerically.
    """
    A = (2.0 + math.sqrt(3.0)) ** 3
    # (1 - z^3)(z^3 + A) = A + (1 - A) z^3 - z^6
    return FloatQD(
        num=(0j, 1 + 0j),
        den=(A + 0j, 0j, 0j, (1 - A) + 0j, 0j, 0j, -1 + 0j),
    )


# -- derivative matrix ------------------------------------------------

_IM = I

MATRIX_MAPS: tuple[MoebiusMap, ...] = (
    MoebiusMap(ONE, ZERO, ZERO, ONE),
    MoebiusMap(_IM, ZERO, ZERO, ONE),
    MoebiusMap(-ONE, ZERO, ZERO, ONE),
    MoebiusMap(-_IM, ZERO, ZERO, ONE),
    MoebiusMap(-ONE, _IM, ONE, _IM),
    MoebiusMap(-_IM, -ONE, ONE, _IM),
    MoebiusMap(ONE, -_IM, ONE, _IM),
    MoebiusMap(_IM, ONE, ONE, _IM),
    MoebiusMap(ZERO, ONE, ONE, ZERO),
    MoebiusMap(ZERO, _IM, ONE, ZERO),
    MoebiusMap(ZERO, -ONE, ONE, ZERO),
    MoebiusMap(ZERO, -_IM, ONE, ZERO),
)

MATRIX_MAP_LABELS: tuple[str, ...] = (
    "z",
    "i z",
    "-z",
    "-i z",
    "-(z-i)/(z+i)",
    "-i (z-i)/(z+i)",
    "(z-i)/(z+i)",
    "i (z-i)/(z+i)",
    "1/z",
    "i/z",
    "-1/z",
    "-i/z",
)

# Expected entries as (a, b) meaning a + b sqrt2, recorded independently;
# the computed matrix must reproduce this table entry for entry.  Columns:
# (2 Re, 2 Im) of the residue of the pulled-back differential at i, then
# at -1, then at -i.
EXPECTED_ROWS_AB: tuple[tuple[tuple[int, int], ...], ...] = (
    ((-1, -1), (-1, -1), (-1, 0), (0, 0), (-1, -1), (1, 1)),
    ((0, 0), (-1, 0), (-1, -1), (-1, -1), (0, 0), (-3, -2)),
    ((1, 1), (-1, -1), (3, 2), (0, 0), (1, 1), (1, 1)),
    ((0, 0), (3, 2), (-1, -1), (1, 1), (0, 0), (1, 0)),
    ((0, 0), (3, 2), (-1, -1), (1, 1), (0, 0), (1, 0)),
    ((-3, -2), (0, 0), (0, 0), (-3, -2), (1, 0), (0, 0)),
    ((0, 0), (-3, -2), (1, 1), (1, 1), (0, 0), (-1, 0)),
    ((3, 2), (0, 0), (0, 0), (1, 0), (-1, 0), (0, 0)),
    ((-1, -1), (1, 1), (1, 0), (0, 0), (-1, -1), (-1, -1)),
    ((0, 0), (-3, -2), (1, 1), (1, 1), (0, 0), (-1, 0)),
    ((1, 1), (1, 1), (-3, -2), (0, 0), (1, 1), (-1, -1)),
    ((0, 0), (1, 0), (1, 1), (-1, -1), (0, 0), (3, 2)),
)

RESIDUE_POINTS: tuple[ExactNum, ...] = (I, -ONE, -I)


def expected_matrix() -> ExactMatrix:
    return ExactMatrix(
        [[ExactNum(a, b) for (a, b) in row] for row in EXPECTED_ROWS_AB]
    )


@dataclass(frozen=True)
class DerivativeMatrix:
    """The 12x6 matrix of extremal length derivatives at the flat point.

    Row j lists (2 Re, 2 Im) of the residues of the edge differential
    pulled back by the j-th sphere move, at the three residue points.
    """

    matrix: ExactMatrix
    expected: ExactMatrix
    maps: tuple[MoebiusMap, ...]
    labels: tuple[str, ...]
    rank: int

    @property
    def matches(self) -> bool:
        return self.matrix == self.expected

    def mismatches(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.matrix.nrows):
            for j in range(self.matrix.ncols):
                if self.matrix.entry(i, j) != self.expected.entry(i, j):
                    out.append((i, j))
        return out


def gardiner_matrix() -> DerivativeMatrix:
    """Compute the derivative matrix from scratch and compare to the table."""
    q = edge_qd()
    rows = []
    for g in MATRIX_MAPS:
        qg = pullback(q, g)
        row: list[ExactNum] = []
        for p in RESIDUE_POINTS:
            r = residue(qg, p)
            row.append(2 * r.real())
            row.append(2 * r.imag())
        rows.append(row)
    mat = ExactMatrix(rows)
    return DerivativeMatrix(
        matrix=mat,
        expected=expected_matrix(),
        maps=MATRIX_MAPS,
        labels=MATRIX_MAP_LABELS,
        rank=matrix_rank(mat),
    )


# -- trajectory line fields -------------------------------------------


@dataclass(frozen=True)
class FieldSamples:
    """Sampled direction line field of a quadratic differential."""

    x: np.ndarray
    y: np.ndarray
    u: np.ndarray
    v: np.ndarray
    mask: np.ndarray  # True where the direction is reliable


def trajectory_field(
    q: "RationalQD | FloatQD",
    window: tuple[float, float, float, float],
    n: int = 41,
    direction: str = "horizontal",
) -> FieldSamples:
    """Sample the horizontal (or vertical) direction field on a grid.

    The direction at z is exp(-i arg(phi)/2) up to sign, which is the
    tangent line along which phi dz^2 is positive; the vertical field
    rotates it a quarter turn.  Samples where phi is enormous, vanishing,
    or non-finite are masked out.
    """
    if direction not in ("horizontal", "vertical"):
        raise ValueError("direction must be horizontal or vertical")
    xmin, xmax, ymin, ymax = window
    xs = np.linspace(xmin, xmax, n)
    ys = np.linspace(ymin, ymax, n)
    gx, gy = np.meshgrid(xs, ys)
    u = np.zeros_like(gx)
    v = np.zeros_like(gx)
    mask = np.zeros(gx.shape, dtype=bool)
    for idx in np.ndindex(gx.shape):
        z = complex(gx[idx], gy[idx])
        try:
            val = q.eval_complex(z)
        except ZeroDivisionError:
            continue
        mod = abs(val)
        if not (1e-9 < mod < 1e9) or not cmath.isfinite(val):
            continue
        ang = -cmath.phase(val) / 2.0
        if direction == "vertical":
            ang += math.pi / 2.0
        u[idx] = math.cos(ang)
        v[idx] = math.sin(ang)
        mask[idx] = True
    return FieldSamples(x=gx, y=gy, u=u, v=v, mask=mask)
