"""Moebius maps, cross-ratios, and the pillowcase normalisation.

Values live on the Riemann sphere: either an element of a coefficient
domain or the :data:`INF` sentinel.  Three domains are supported through
duck typing: :class:`~elsys.exact.ExactNum` (exact), ``complex`` (plotting
only), and :class:`CInterval` rectangles (certified).  The four-puncture
pipeline accepts exact or certified punctures; plain floats are refused
because branch decisions there must be provable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from elsys.agm import (
    Context,
    EXTENDED,
    Interval,
    Modulus,
    kratio,
    modulus_from_complement,
    sqrt2_interval,
)
from elsys.exact import ExactNum


class _Infinity:
    """The point at infinity on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()

Point = Union[ExactNum, complex, "CInterval", _Infinity]


class PairingError(ValueError):
    """The two marked pairs interlock on their common circle, so no curve
    separates pair from pair in an annulus; the cross-ratio lands in (0, 1)."""


class DomainError(ValueError):
    """The configuration does not admit the requested normalisation."""


class PrecisionError(ValueError):
    """Interval data too wide to make a branch decision soundly."""


@dataclass(frozen=True)
class CInterval:
    """Rectangular complex interval: re + i*im with certified real parts."""

    re: Interval
    im: Interval

    @classmethod
    def from_real(cls, re: Interval) -> "CInterval":
        z = Interval.point(0, re.ctx)
        return cls(re, z)

    @classmethod
    def from_exact(cls, v: ExactNum, ctx: Context = EXTENDED) -> "CInterval":
        s2 = sqrt2_interval(ctx)
        return cls(
            Interval.point(v.a, ctx) + s2 * v.b,
            Interval.point(v.c, ctx) + s2 * v.d,
        )

    @classmethod
    def point(cls, z: complex, ctx: Context = EXTENDED) -> "CInterval":
        return cls(Interval.point(z.real, ctx), Interval.point(z.imag, ctx))

    @property
    def is_exact_zero(self) -> bool:
        return self.re.lo == self.re.hi == 0 and self.im.lo == self.im.hi == 0

    @property
    def possibly_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    @property
    def is_real_line(self) -> bool:
        return self.im.lo == self.im.hi == 0

    def conjugate(self) -> "CInterval":
        return CInterval(self.re, -self.im)

    def __add__(self, other: "CInterval") -> "CInterval":
        return CInterval(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "CInterval":
        return CInterval(-self.re, -self.im)

    def __sub__(self, other: "CInterval") -> "CInterval":
        return CInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "CInterval") -> "CInterval":
        return CInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "CInterval") -> "CInterval":
        if other.possibly_zero:
            raise ZeroDivisionError("divisor rectangle contains zero")
        norm = other.re.square() + other.im.square()
        num = self * other.conjugate()
        return CInterval(num.re / norm, num.im / norm)

    def contains(self, z: complex) -> bool:
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def disjoint_from(self, other: "CInterval") -> bool:
        return not (self.re.intersects(other.re) and self.im.intersects(other.im))

    def __repr__(self) -> str:
        return f"CInterval({self.re!r}, {self.im!r})"


def _is_zero(v: Any) -> bool:
    if isinstance(v, ExactNum):
        return v.is_zero
    if isinstance(v, CInterval):
        # for branch purposes a rectangle counts as zero only when exact;
        # a wide rectangle through zero is a precision problem instead
        if v.is_exact_zero:
            return True
        if v.possibly_zero:
            raise PrecisionError("cannot decide whether a rectangle is zero")
        return False
    return v == 0


def _distinct(p: Point, q: Point) -> bool:
    if p is INF or q is INF:
        return not (p is INF and q is INF)
    if isinstance(p, CInterval) and isinstance(q, CInterval):
        return p.disjoint_from(q)
    return not _is_zero(p - q)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b)/(c z + d) with coefficients in any supported domain."""

    a: Any
    b: Any
    c: Any
    d: Any

    def __post_init__(self):
        if _is_zero(self.a * self.d - self.b * self.c):
            raise ValueError("degenerate map: determinant is zero")

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def det(self) -> Any:
        return self.a * self.d - self.b * self.c

    def apply(self, z: Point) -> Point:
        if z is INF:
            if _is_zero(self.c):
                return INF
            return self.a / self.c
        den = self.c * z + self.d
        if _is_zero(den):
            return INF
        return (self.a * z + self.b) / den

    def __call__(self, z: Point) -> Point:
        return self.apply(z)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -1 * self.b, -1 * self.c, self.a)


def moebius_apply(m: MoebiusMap, z: Point) -> Point:
    return m.apply(z)


def cross_ratio(z1: Point, z2: Point, z3: Point, z4: Point) -> Any:
    """Cross-ratio with the convention cross_ratio(0, 1, INF, w) = w.

    Concretely ((z4 - z1)(z2 - z3)) / ((z4 - z3)(z2 - z1)); any factor
    containing INF drops out as the appropriate limit.  The four points
    must be pairwise distinct (certifiably so for rectangles).
    """
    pts = (z1, z2, z3, z4)
    for i in range(4):
        for j in range(i + 1, 4):
            if not _distinct(pts[i], pts[j]):
                raise DomainError(f"punctures {i} and {j} are not distinct")
    if z1 is INF:
        return (z2 - z3) / (z4 - z3)
    if z2 is INF:
        return (z4 - z1) / (z4 - z3)
    if z3 is INF:
        return (z4 - z1) / (z2 - z1)
    if z4 is INF:
        return (z2 - z3) / (z2 - z1)
    return ((z4 - z1) * (z2 - z3)) / ((z4 - z3) * (z2 - z1))


@dataclass(frozen=True)
class MarkedSphere:
    """Four punctures with a two-two grouping; the marked curve family
    separates ``group_a`` from ``group_b``."""

    punctures: tuple
    group_a: tuple[int, int]
    group_b: tuple[int, int]

    def __post_init__(self):
        if len(self.punctures) != 4:
            raise ValueError("four punctures required")
        if sorted(self.group_a + self.group_b) != [0, 1, 2, 3]:
            raise ValueError("groups must partition the puncture indices")
        pts = self.punctures
        for i in range(4):
            for j in range(i + 1, 4):
                if not _distinct(pts[i], pts[j]):
                    raise DomainError(f"punctures {i} and {j} are not distinct")

    def regrouped(self, group_a: tuple[int, int]) -> "MarkedSphere":
        group_b = tuple(i for i in range(4) if i not in group_a)
        return MarkedSphere(self.punctures, tuple(group_a), group_b)


@dataclass(frozen=True)
class PillowcaseResult:
    """Outcome of the four-puncture normalisation.

    ``modulus`` is the certified k with EL(separating family) =
    4 K(k)/K'(k); ``kstar`` is its ascending Landen image, for which the
    same extremal length is 2 K(k*)/K'(k*).  Exact side channels are
    populated when the input was exact and the square roots stay in
    Q(sqrt2).
    """

    modulus: Modulus
    kstar: Interval
    lambda0: Interval
    swapped: bool
    lambda0_exact: ExactNum | None = None
    kstar_sq_exact: ExactNum | None = None
    kstar_exact: ExactNum | None = None
    k_exact: ExactNum | None = None

    def extremal_length(self, tol: Fraction = Fraction(1, 10**13)) -> Interval:
        """Certified EL of the separating family on the four-holed sphere.

        Prefers 2 kratio(k*) from an exact k* when one was recognised,
        otherwise 4 kratio(k); the two agree by the ascending identity.
        """
        if self.kstar_exact is not None:
            ks = _interval_from_exact_real(self.kstar_exact, self.modulus.k.ctx)
            return 2 * kratio(ks, tol=tol)
        return 4 * kratio(self.modulus.k, tol=tol)


def _interval_from_exact_real(v: ExactNum, ctx: Context) -> Interval:
    if not v.is_real:
        raise ValueError("expected a real element")
    return Interval.point(v.a, ctx) + sqrt2_interval(ctx) * v.b


def _lambda_to_result(
    lam0_int: Interval,
    swapped: bool,
    ctx: Context,
    lam0_exact: ExactNum | None,
) -> PillowcaseResult:
    if not lam0_int.lo > 1:
        raise PrecisionError(
            "normalised cross-ratio enclosure does not certify lambda0 > 1"
        )
    inv = 1 / lam0_int  # (k*)^2
    kstar = inv.sqrt()
    s = (1 - inv).sqrt()  # (k*)' by definition
    # k = (1 - s)/(1 + s) is the descending Landen image, which is exactly
    # the in-(0,1) root of the modulus equation; no quadratic to solve
    k = modulus_from_complement(s)
    kstar_sq = kstar_exact = k_exact = None
    if lam0_exact is not None:
        kstar_sq = 1 / lam0_exact
        kstar_exact = kstar_sq.exact_sqrt()
        s_exact = (1 - kstar_sq).exact_sqrt()
        if s_exact is not None:
            k_exact = (1 - s_exact) / (1 + s_exact)
    return PillowcaseResult(
        modulus=Modulus(k),
        kstar=kstar,
        lambda0=lam0_int,
        swapped=swapped,
        lambda0_exact=lam0_exact,
        kstar_sq_exact=kstar_sq,
        kstar_exact=kstar_exact,
        k_exact=k_exact,
    )


def pillowcase_normalization(
    s: MarkedSphere, ctx: Context = EXTENDED
) -> PillowcaseResult:
    """Normalise four punctures to the standard pillowcase picture.

    The cross-ratio of (A1, A2, B1, B2) must be real (the punctures lie on
    a common circle).  A value above 1 is used directly as lambda0; a
    negative value corresponds to swapping the two members of one pair and
    1 - lambda is used; a value inside (0, 1) means the pairs interlock on
    the circle and no separating annulus exists, which raises
    :class:`PairingError`.
    """
    a1, a2 = (s.punctures[i] for i in s.group_a)
    b1, b2 = (s.punctures[i] for i in s.group_b)
    for p in s.punctures:
        if isinstance(p, (complex, float)):
            raise TypeError(
                "pillowcase normalisation needs exact or certified punctures"
            )
    lam = cross_ratio(a1, a2, b1, b2)

    if isinstance(lam, ExactNum):
        if not lam.is_real:
            raise DomainError("cross-ratio is not real: punctures not concyclic")
        if lam > 1:
            lam0, swapped = lam, False
        elif lam < 0:
            lam0, swapped = 1 - lam, True
        else:
            raise PairingError(
                f"cross-ratio {lam} lies in (0, 1): the marked pairs interlock"
            )
        return _lambda_to_result(
            _interval_from_exact_real(lam0, ctx), swapped, ctx, lam0
        )

    if isinstance(lam, CInterval):
        if not lam.is_real_line:
            if lam.im.contains_zero():
                raise PrecisionError("imaginary part enclosure straddles zero")
            raise DomainError("cross-ratio is not real: punctures not concyclic")
        re = lam.re
        if re.lo > 1:
            return _lambda_to_result(re, False, ctx, None)
        if re.hi < 0:
            return _lambda_to_result(1 - re, True, ctx, None)
        if re.lo > 0 and re.hi < 1:
            raise PairingError(
                "cross-ratio enclosure lies in (0, 1): the marked pairs interlock"
            )
        raise PrecisionError(
            "cross-ratio enclosure straddles a branch boundary; recompute the "
            "punctures at higher precision"
        )

    raise TypeError(f"unsupported cross-ratio domain {type(lam).__name__}")


def pillowcase_modulus(s: MarkedSphere, ctx: Context = EXTENDED) -> Modulus:
    """The modulus k with EL(separating family) = 4 K(k)/K'(k)."""
    return pillowcase_normalization(s, ctx).modulus


def dual_marking(s: MarkedSphere) -> MarkedSphere:
    """The complementary valid two-two grouping of the same punctures.

    Of the two regroupings that mix the original pairs, exactly one keeps
    the pairs unlinked on their circle; that one is returned.  Swapping
    group_a with group_b wholesale is not a new marking at all since the
    same curves separate them, and the cross-ratio is invariant under it.
    """
    a1, a2 = s.group_a
    b1, b2 = s.group_b
    for cand in ((a1, b1), (a1, b2)):
        candidate = s.regrouped(cand)
        try:
            pillowcase_normalization(candidate)
        except PairingError:
            continue
        return candidate
    raise DomainError("no complementary grouping admits a separating annulus")
