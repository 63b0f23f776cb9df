"""Independent reference evaluators used only by the test suite.

Two routes, deliberately different from the library's certified interval
machinery:

* plain arithmetic-geometric-mean iteration carried out in exact rational
  arithmetic at a fixed bit precision (no intervals, no rounding policy);
* tanh-sinh quadrature of the defining integral

      K(k) = integral_0^1 dt / sqrt((1 - t^2) (1 - k^2 t^2))

  in double precision.

Expected values frozen into the tests were produced by these functions and
are re-derivable by running them.
"""

from __future__ import annotations

import math
from fractions import Fraction


def rational_sqrt(x: Fraction, bits: int = 200) -> Fraction:
    """Floor square root of x on the 2**-bits grid."""
    if x < 0:
        raise ValueError("negative radicand")
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(math.isqrt(scaled), 1 << bits)


def agm_oracle(a: Fraction, bits: int = 200) -> Fraction:
    """M(1, a) by direct AGM iteration in rational arithmetic.

    Square roots are taken on the 2**-bits grid, so the result is accurate
    to roughly bits binary digits; bits=200 gives ~60 decimal digits.
    """
    if not 0 < a <= 1:
        raise ValueError("need 0 < a <= 1")
    x, y = Fraction(1), Fraction(a)
    for _ in range(bits):
        if abs(x - y) < Fraction(1, 1 << (bits + 4)):
            break
        x, y = (x + y) / 2, rational_sqrt(x * y, bits + 8)
    return (x + y) / 2


def kratio_oracle(k: Fraction, bits: int = 200) -> Fraction:
    """K(k)/K'(k) = M(1, k) / M(1, k') in rational arithmetic."""
    kp = rational_sqrt(1 - k * k, bits + 8)
    return agm_oracle(k, bits) / agm_oracle(kp, bits)


def elliptic_k_ts(k: float, level: int = 7) -> float:
    """K(k) by tanh-sinh quadrature of the defining integral, float64.

    Substitution t = tanh((pi/2) sinh u) absorbs the inverse-square-root
    endpoint singularity at t = 1.  Accurate to ~1e-15 relative for
    k in (0, 1) away from 1 by more than ~1e-12.
    """
    if not 0.0 < k < 1.0:
        raise ValueError("need 0 < k < 1")
    h = 2.0 ** (-level)
    half_pi = math.pi / 2.0

    def point(u: float) -> float:
        sh = half_pi * math.sinh(u)
        t = math.tanh(sh)
        # 1 - t^2 = sech^2(sh), folded in analytically so the endpoint
        # saturation of tanh never produces a spurious zero
        w_over_sqrt = half_pi * math.cosh(u) / math.cosh(sh)
        return w_over_sqrt / math.sqrt(1.0 - (k * t) ** 2)

    total = point(0.0)
    n = 1
    while True:
        term = 2.0 * point(n * h)  # integrand even in u
        total += term
        n += 1
        if n * h > 4.0 and term < 1e-18 * total:
            break
        if n > 4000:
            break
    # integral over t in (-1, 1) is 2K; halve after scaling by h
    return 0.5 * h * total
