"""Scratch runner: print oracle values to freeze into the test suite.

Not collected by pytest (no test_ prefix); kept for re-derivation.
"""

import math
from fractions import Fraction

from oracles import agm_oracle, elliptic_k_ts, kratio_oracle, rational_sqrt


def digits(x: Fraction, n: int = 55) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    ip = x.numerator // x.denominator
    rem = x - ip
    out = []
    for _ in range(n):
        rem *= 10
        d = rem.numerator // rem.denominator
        out.append(str(d))
        rem -= d
    return f"{sign}{ip}." + "".join(out)


if __name__ == "__main__":
    m_half = agm_oracle(Fraction(1, 2), bits=220)
    print("M(1,1/2)        =", digits(m_half))

    kr_03 = kratio_oracle(Fraction(3, 10), bits=220)
    print("kratio(0.3)     =", digits(kr_03))

    # K(k) two ways: pi / (2 M(1,k')) vs tanh-sinh quadrature
    for kk in (Fraction(1, 2), Fraction(3, 10), Fraction(9, 10)):
        kp = rational_sqrt(1 - kk * kk, 256)
        k_agm = math.pi / (2 * float(agm_oracle(kp, bits=220)))
        k_ts = elliptic_k_ts(float(kk))
        print(f"K({float(kk)}): agm={k_agm!r} ts={k_ts!r} rel={abs(k_agm-k_ts)/k_agm:.2e}")

    # paper-adjacent spot values for later catalog tests
    s2 = rational_sqrt(Fraction(2), 240)
    u_alt = rational_sqrt((2 + s2) / 4, 240)          # k* for the altitude curve
    print("4*kratio(altitude k) has k* = sqrt((2+sqrt2)/4); kratio(k*)/2*4:")
    kr = kratio_oracle(u_alt, bits=220)
    print("  2*kratio(k*)    =", digits(2 * kr))       # = 4 kratio(k) by Landen
    s3 = rational_sqrt(Fraction(3), 240)
    lam_face = 27 + 15 * s3                            # aligned cross-ratio, face curve
    s = rational_sqrt((lam_face - 1) / lam_face, 240)
    k_face = (1 - s) / (1 + s)
    print("6*kratio(face k)  =", digits(6 * kratio_oracle(k_face, bits=220)))
    print("12*kratio(face k) =", digits(12 * kratio_oracle(k_face, bits=220)))
    # dual: kratio(k)*kratio(khat) = 1/4  =>  EL_dual = 12/(... ) check later
    w = 2 - s3
    k_hex = 1 / rational_sqrt(1 + w**3, 240)
    print("6*kratio(hex k)   =", digits(6 * kratio_oracle(k_hex, bits=220)))
