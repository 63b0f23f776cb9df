"""Certified enclosures for the AGM and the elliptic integral ratio K/K'.

The design is deliberately boring: interval endpoints are ``Fraction``
values, every operation is performed exactly on the endpoints and then
rounded outward to a grid chosen by the :class:`Context` (binary64 in
``double`` mode, dyadics with a fixed number of bits in ``extended`` mode).
Soundness therefore never depends on hardware rounding modes.

The AGM bracket g_n <= M(1, a) <= a_n supplies two-sided enclosures, and
K(k)/K'(k) = M(1, k)/M(1, k') converts them into enclosures for the ratio
of complete elliptic integrals.  A plain tanh-sinh quadrature for K itself
lives here as a package-private diagnostic used by :func:`landen_check`;
the certified code path never touches it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

_Number = Union[int, float, Fraction]

# Independently recorded reference enclosures (midpoint, radius) that the
# certified computations must reproduce.  These four values are the
# quantitative endpoints of the curve catalogue; edge_check must enclose
# sqrt2 and is checked against it exactly instead.
REFERENCE_ENCLOSURES: dict[str, tuple[Fraction, Fraction]] = {
    "altitude": (Fraction("5.8768721265012"), Fraction("1.18e-14")),
    "face": (Fraction("2.79957467136936"), Fraction("8.4e-15")),
    "face_dual": (Fraction("12.8590961934912"), Fraction("6.81e-14")),
    "antiprism_hexagon": (Fraction("2.34031875460627"), Fraction("5.71e-15")),
}

CONSTANT_NAMES = ("altitude", "face", "face_dual", "antiprism_hexagon", "edge_check")


class Context:
    """Outward rounding context.

    mode ``double``: endpoints are rounded outward to the nearest binary64
    values (stored exactly as Fractions).  mode ``extended``: endpoints are
    rounded outward on the grid of integer multiples of 2**-bits.
    """

    __slots__ = ("mode", "bits")

    def __init__(self, mode: str = "extended", bits: int = 256) -> None:
        if mode not in ("double", "extended"):
            raise ValueError(f"unknown rounding mode {mode!r}")
        if mode == "extended" and bits < 16:
            raise ValueError("extended mode needs at least 16 bits")
        self.mode = mode
        self.bits = bits if mode == "extended" else 53

    def round_down(self, x: Fraction) -> Fraction:
        if self.mode == "extended":
            q = (x.numerator << self.bits) // x.denominator
            return Fraction(q, 1 << self.bits)
        f = float(x)
        if not math.isfinite(f):
            raise OverflowError("value out of binary64 range")
        if Fraction(f) > x:
            f = math.nextafter(f, -math.inf)
        return Fraction(f)

    def round_up(self, x: Fraction) -> Fraction:
        if self.mode == "extended":
            q = -((-x.numerator << self.bits) // x.denominator)
            return Fraction(q, 1 << self.bits)
        f = float(x)
        if not math.isfinite(f):
            raise OverflowError("value out of binary64 range")
        if Fraction(f) < x:
            f = math.nextafter(f, math.inf)
        return Fraction(f)

    def _sqrt_bits(self) -> int:
        return self.bits + 16 if self.mode == "extended" else 120

    def sqrt_down(self, x: Fraction) -> Fraction:
        if x < 0:
            raise ValueError("sqrt of negative value")
        p = self._sqrt_bits()
        q = math.isqrt((x.numerator << (2 * p)) // x.denominator)
        return self.round_down(Fraction(q, 1 << p))

    def sqrt_up(self, x: Fraction) -> Fraction:
        if x < 0:
            raise ValueError("sqrt of negative value")
        p = self._sqrt_bits()
        m = (x.numerator << (2 * p)) // x.denominator
        q = math.isqrt(m)
        if q * q < m or q * q * x.denominator < (x.numerator << (2 * p)):
            q += 1
        return self.round_up(Fraction(q, 1 << p))

    def __repr__(self) -> str:
        if self.mode == "double":
            return "Context(double)"
        return f"Context(extended, bits={self.bits})"


DOUBLE = Context("double")
EXTENDED = Context("extended", bits=256)


def _exact(v: _Number) -> Fraction:
    # Fraction(float) is exact, so a float input is treated as the binary64
    # rational it actually is.
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("non-finite endpoint")
        return Fraction(v)
    return Fraction(v)


class Interval:
    """Closed interval with exact rational endpoints and outward rounding."""

    __slots__ = ("lo", "hi", "ctx")

    def __init__(self, lo: _Number, hi: _Number, ctx: Context = EXTENDED) -> None:
        lo = _exact(lo)
        hi = _exact(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{float(lo)}, {float(hi)}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Interval is immutable")

    @classmethod
    def point(cls, v: _Number, ctx: Context = EXTENDED) -> "Interval":
        f = _exact(v)
        return cls(f, f, ctx)

    # -- queries ------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v: _Number) -> bool:
        f = _exact(v)
        return self.lo <= f <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_less_than(self, other: "Interval | _Number") -> bool:
        hi = other.lo if isinstance(other, Interval) else _exact(other)
        return self.hi < hi

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    # -- arithmetic (exact endpoints, then outward rounding) ----------

    def _wrap(self, lo: Fraction, hi: Fraction) -> "Interval":
        return Interval(self.ctx.round_down(lo), self.ctx.round_up(hi), self.ctx)

    @staticmethod
    def _coerce(v: "Interval | _Number", ctx: Context) -> "Interval":
        if isinstance(v, Interval):
            return v
        return Interval.point(v, ctx)

    def __add__(self, other: "Interval | _Number") -> "Interval":
        o = Interval._coerce(other, self.ctx)
        return self._wrap(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.ctx)

    def __sub__(self, other: "Interval | _Number") -> "Interval":
        return self + (-Interval._coerce(other, self.ctx))

    def __rsub__(self, other: _Number) -> "Interval":
        return Interval._coerce(other, self.ctx) + (-self)

    def __mul__(self, other: "Interval | _Number") -> "Interval":
        o = Interval._coerce(other, self.ctx)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return self._wrap(min(products), max(products))

    __rmul__ = __mul__

    def square(self) -> "Interval":
        """Dependency-aware self product, tight around sign changes."""
        if self.lo >= 0:
            return self._wrap(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return self._wrap(self.hi * self.hi, self.lo * self.lo)
        m = max(-self.lo, self.hi)
        return self._wrap(Fraction(0), m * m)

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return self._wrap(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: "Interval | _Number") -> "Interval":
        return self * Interval._coerce(other, self.ctx).reciprocal()

    def __rtruediv__(self, other: _Number) -> "Interval":
        return Interval._coerce(other, self.ctx) * self.reciprocal()

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative endpoint")
        return Interval(self.ctx.sqrt_down(self.lo), self.ctx.sqrt_up(self.hi), self.ctx)


def sqrt2_interval(ctx: Context = EXTENDED) -> Interval:
    return Interval.point(2, ctx).sqrt()


def sqrt3_interval(ctx: Context = EXTENDED) -> Interval:
    return Interval.point(3, ctx).sqrt()


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus k confined to (0, 1), carried as an enclosure."""

    k: Interval

    def __post_init__(self):
        if not (0 < self.k.lo and self.k.hi < 1):
            raise ValueError(
                f"modulus enclosure [{float(self.k.lo)}, {float(self.k.hi)}] "
                "must lie strictly inside (0, 1)"
            )

    def complement(self) -> Interval:
        """Enclosure of k' = sqrt(1 - k^2)."""
        return (1 - self.k.square()).sqrt()


def _to_interval(k: "Modulus | Interval | _Number", ctx: Context) -> Interval:
    if isinstance(k, Modulus):
        return k.k
    if isinstance(k, Interval):
        return k
    return Interval.point(k, ctx)


def agm_enclosure(
    a: "Interval | _Number",
    ctx: Context | None = None,
    tol: _Number = Fraction(1, 10**12),
) -> Interval:
    """Two-sided enclosure of M(1, a) for 0 < a <= 1.

    The geometric iterate is a lower bracket and the arithmetic iterate an
    upper bracket, so [g_n.lo, a_n.hi] always contains the limit.  The
    iteration stops once the bracket width stops improving or drops below
    ``tol``; in double mode the achievable floor is a few ulps, so callers
    asking for tighter widths get the floor, not an exception.
    """
    if ctx is None:
        ctx = a.ctx if isinstance(a, Interval) else EXTENDED
    g = _to_interval(a, ctx)
    if not (0 < g.lo and g.hi <= 1):
        raise ValueError("agm_enclosure expects 0 < a <= 1")
    tol = _exact(tol)
    upper = Interval.point(1, ctx)
    prev_width = None
    for _ in range(ctx.bits + 24):
        width = upper.hi - g.lo
        if width <= tol:
            break
        if prev_width is not None and width >= prev_width:
            break  # rounding floor for this context
        prev_width = width
        upper, g = (upper + g) * Fraction(1, 2), (upper * g).sqrt()
    return Interval(g.lo, upper.hi, ctx)


def kratio(
    k: "Modulus | Interval | _Number",
    ctx: Context | None = None,
    tol: _Number = Fraction(1, 10**12),
) -> Interval:
    """Certified enclosure of K(k)/K'(k) = M(1, k)/M(1, k')."""
    if ctx is None:
        ctx = k.k.ctx if isinstance(k, Modulus) else (k.ctx if isinstance(k, Interval) else EXTENDED)
    ki = _to_interval(k, ctx)
    if not (0 < ki.lo and ki.hi < 1):
        raise ValueError("kratio expects a modulus enclosure inside (0, 1)")
    inner = _exact(tol) / 16
    kp = (1 - ki.square()).sqrt()
    return agm_enclosure(ki, ctx, inner) / agm_enclosure(kp, ctx, inner)


def landen_transform(
    k: "Modulus | Interval | _Number", ctx: Context | None = None
) -> Interval:
    """Ascending step k* = 2 sqrt(k)/(1 + k), evaluated at the endpoints.

    The map is strictly increasing on (0, 1), so endpoint evaluation with
    directed square roots is both tight and sound.
    """
    if ctx is None:
        ctx = k.k.ctx if isinstance(k, Modulus) else (k.ctx if isinstance(k, Interval) else EXTENDED)
    ki = _to_interval(k, ctx)
    if not (0 < ki.lo and ki.hi < 1):
        raise ValueError("landen_transform expects a modulus inside (0, 1)")
    lo = ctx.round_down(2 * ctx.sqrt_down(ki.lo) / (1 + ki.lo))
    hi = ctx.round_up(2 * ctx.sqrt_up(ki.hi) / (1 + ki.hi))
    return Interval(lo, hi, ctx)


def modulus_from_complement(s: Interval) -> Interval:
    """Descending recovery k = (1 - s)/(1 + s) from s = (k*)'.

    Strictly decreasing in s, hence endpoint evaluation.
    """
    ctx = s.ctx
    if not (0 <= s.lo and s.hi < 1):
        raise ValueError("complement must lie in [0, 1)")
    lo = ctx.round_down((1 - s.hi) / (1 + s.hi))
    hi = ctx.round_up((1 - s.lo) / (1 + s.lo))
    return Interval(lo, hi, ctx)


# -- diagnostic quadrature (never on the certified path) --------------


def _elliptic_k_quadrature(
    k: float, level: int = 8, one_minus_k: float | None = None
) -> float:
    """Tanh-sinh evaluation of K(k) = int_0^1 dt/sqrt((1-t^2)(1-k^2 t^2)).

    Used only by :func:`landen_check` to exercise the classical identities
    against an integral-definition route; accuracy is empirically around
    1e-14 relative over the sampled modulus range, which the residual slack
    in landen_check absorbs.

    K is steep near k = 1 (the sensitivity grows like 1/(1-k^2)), so a
    caller holding a more accurate value of 1 - k than the subtraction
    1.0 - k can pass it explicitly; it feeds the cancellation-free branch
    of the integrand.
    """
    if not (0.0 < k < 1.0):
        raise ValueError("quadrature modulus must lie in (0, 1)")
    half_pi = math.pi / 2
    one_minus_k = (1.0 - k) if one_minus_k is None else one_minus_k

    def point(u: float) -> float:
        # even in u, so only u >= 0 is ever evaluated
        sh = half_pi * math.sinh(u)
        # 1 - t^2 folded in analytically as sech^2 to dodge saturation,
        # and 1 - k t computed as (1 - k) + k (1 - t) to dodge cancellation
        # when both k and t are close to 1
        e = math.exp(-2.0 * sh)
        t = math.tanh(sh)
        one_minus_kt = one_minus_k + k * (2.0 * e / (1.0 + e))
        return half_pi * math.cosh(u) / (
            math.cosh(sh) * math.sqrt(one_minus_kt * (1.0 + k * t))
        )

    h = 2.0 ** (-level)
    total = point(0.0)
    n = 1
    while True:
        term = 2.0 * point(n * h)
        total += term
        if n * h > 4.5 and term < 1e-18 * total:
            break
        if n * h > 6.0:  # pragma: no cover - safety stop
            break
        n += 1
    return 0.5 * h * total


@dataclass(frozen=True)
class LandenReport:
    """Residual enclosures for the three classical modulus identities."""

    k: float
    residuals: tuple[Interval, Interval, Interval]
    labels: tuple[str, str, str]
    tol: float
    passed: bool


def landen_check(
    k: _Number, tol: float = 1e-10, ctx: Context = EXTENDED
) -> LandenReport:
    """Check the ascending Landen identities at modulus k.

    Residuals (each should enclose zero):

    * K(k) (1 + k) - K(k*)           via the quadrature diagnostic,
    * K'(k) (1 + k) - 2 K'(k*)       via the quadrature diagnostic,
    * kratio(k) - kratio(k*)/2       fully certified.

    The quadrature-based residuals are widened by a slack proportional to
    the evaluated magnitudes; containment of zero then confirms the
    identity to the quadrature's accuracy.
    """
    kf = float(k)
    if not (0.0 < kf < 1.0):
        raise ValueError("landen_check expects k in (0, 1)")
    # complements computed by cancellation-free formulas; K is steep enough
    # near modulus 1 that an ulp lost here would dominate the residuals
    omk = 1.0 - kf
    sqk = math.sqrt(kf)
    omks = (1.0 - sqk) ** 2 / (1.0 + kf)  # 1 - k*
    ks = 1.0 - omks
    kp = math.sqrt(omk * (1.0 + kf))
    omkp = kf * kf / (1.0 + kp)  # 1 - k'
    ksp = omk / (1.0 + kf)  # (k*)' = (1-k)/(1+k)
    omksp = 2.0 * kf / (1.0 + kf)

    K_k = _elliptic_k_quadrature(kf, one_minus_k=omk)
    K_ks = _elliptic_k_quadrature(ks, one_minus_k=omks)
    Kp_k = _elliptic_k_quadrature(kp, one_minus_k=omkp)
    Kp_ks = _elliptic_k_quadrature(ksp, one_minus_k=omksp)

    slack_rel = 1e-12

    def residual(value: float, magnitude: float) -> Interval:
        eps = Fraction(slack_rel) * Fraction(magnitude)
        v = Fraction(value)
        return Interval(v - eps, v + eps, ctx)

    r1 = residual(K_k * (1.0 + kf) - K_ks, K_k * (1.0 + kf) + K_ks)
    r2 = residual(Kp_k * (1.0 + kf) - 2.0 * Kp_ks, Kp_k * (1.0 + kf) + 2.0 * Kp_ks)

    k_exact = _exact(k)
    ks_enc = landen_transform(Interval.point(k_exact, ctx))
    r3 = kratio(Interval.point(k_exact, ctx), tol=tol / 100) - kratio(ks_enc, tol=tol / 100) * Fraction(1, 2)

    residuals = (r1, r2, r3)
    tol_f = Fraction(tol)
    passed = all(r.contains_zero() and r.width <= tol_f for r in residuals)
    return LandenReport(
        k=kf,
        residuals=residuals,
        labels=(
            "K(k)*(1+k) - K(k*)",
            "K'(k)*(1+k) - 2*K'(k*)",
            "kratio(k) - kratio(k*)/2",
        ),
        tol=tol,
        passed=passed,
    )


def named_constant(
    name: str,
    ctx: Context = EXTENDED,
    tol: _Number = Fraction(1, 10**13),
) -> Interval:
    """Certified enclosure for one of the five catalogue constants.

    altitude            4 K(u)/K'(u),  u = sqrt(2 + sqrt2)/2
    face                6 K(v)/K'(v),  v = 1/sqrt(27 + 15 sqrt3)
    face_dual           36/face, computed as 6 K'(v)/K(v)
    antiprism_hexagon   4 K(w)/K'(w),  w = 2 - sqrt3
    edge_check          K'(x)/K(x),    x = sqrt2 - 1   (encloses sqrt2)
    """
    if name == "altitude":
        u = ((2 + sqrt2_interval(ctx)) * Fraction(1, 4)).sqrt()
        return kratio(u, ctx, tol) * 4
    if name == "face":
        v = (1 / (27 + 15 * sqrt3_interval(ctx))).sqrt()
        return kratio(v, ctx, tol) * 6
    if name == "face_dual":
        v = (1 / (27 + 15 * sqrt3_interval(ctx))).sqrt()
        return 6 / kratio(v, ctx, tol)
    if name == "antiprism_hexagon":
        w = 2 - sqrt3_interval(ctx)
        return kratio(w, ctx, tol) * 4
    if name == "edge_check":
        x = sqrt2_interval(ctx) - 1
        return 1 / kratio(x, ctx, tol)
    raise ValueError(f"unknown constant {name!r}; choose from {CONSTANT_NAMES}")
