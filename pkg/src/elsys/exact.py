"""Exact arithmetic in the field Q(sqrt2, i).

Every quantity that the curve catalogue can express without leaving
Q(sqrt2, i) is kept in this field so that downstream identities (pullback
invariance, residue tables, rank computations) are checked by exact equality
rather than by tolerance.  Elements are stored as four ``fractions.Fraction``
coordinates over the basis (1, sqrt2, i, i*sqrt2); the Fraction type already
guarantees lowest terms and a positive denominator, which makes structural
equality canonical.

Quantities involving sqrt3 are deliberately out of scope.  They are handled
by certified interval arithmetic in :mod:`elsys.agm` instead.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

_RatLike = Union[int, Fraction]
_NumLike = Union[int, Fraction, "ExactNum"]


def _as_fraction(v: _RatLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


def rational_square_root(q: Fraction) -> Fraction | None:
    """Return the exact nonnegative square root of ``q`` if it is a perfect
    square in Q, else ``None``."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class ExactNum:
    """An element a + b*sqrt2 + c*i + d*i*sqrt2 of Q(sqrt2, i).

    Instances are immutable and hashable.  Arithmetic is exact; division by
    zero raises ``ZeroDivisionError``.  Order comparisons are defined only
    for real elements (c == d == 0) and are decided exactly, without any
    floating point round trip.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: _RatLike = 0, b: _RatLike = 0,
                 c: _RatLike = 0, d: _RatLike = 0) -> None:
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "c", _as_fraction(c))
        object.__setattr__(self, "d", _as_fraction(d))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ExactNum is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def coerce(cls, v: _NumLike) -> "ExactNum":
        if isinstance(v, ExactNum):
            return v
        return cls(_as_fraction(v))

    @classmethod
    def sqrt2(cls) -> "ExactNum":
        return cls(0, 1)

    @classmethod
    def i(cls) -> "ExactNum":
        return cls(0, 0, 1)

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    @property
    def is_real(self) -> bool:
        return not (self.c or self.d)

    @property
    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def real(self) -> "ExactNum":
        return ExactNum(self.a, self.b)

    def imag(self) -> "ExactNum":
        """The real element y with self = real() + i*y."""
        return ExactNum(self.c, self.d)

    def conjugate(self) -> "ExactNum":
        return ExactNum(self.a, self.b, -self.c, -self.d)

    def sqrt2_conjugate(self) -> "ExactNum":
        """Galois conjugate sending sqrt2 to -sqrt2."""
        return ExactNum(self.a, -self.b, self.c, -self.d)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _operand(v) -> "ExactNum | None":
        # binary dunders must defer to the other operand's reflected
        # method for foreign types instead of raising
        if isinstance(v, ExactNum):
            return v
        if isinstance(v, (int, Fraction)):
            return ExactNum(v)
        return None

    def __add__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        return ExactNum(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "ExactNum":
        return ExactNum(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        # Split as (x1 + i y1)(x2 + i y2) with x, y in Q(sqrt2).
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # real part: x1 x2 - y1 y2
        ra = a1 * a2 + 2 * b1 * b2 - (c1 * c2 + 2 * d1 * d2)
        rb = a1 * b2 + b1 * a2 - (c1 * d2 + d1 * c2)
        # imag part: x1 y2 + y1 x2
        ia = a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2
        ib = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return ExactNum(ra, rb, ia, ib)

    __rmul__ = __mul__

    def _real_inverse(self) -> "ExactNum":
        # inverse of a + b*sqrt2, using the norm a^2 - 2 b^2
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return ExactNum(self.a / n, -self.b / n)

    def inverse(self) -> "ExactNum":
        if self.is_zero:
            raise ZeroDivisionError("division by zero in Q(sqrt2, i)")
        # 1/z = conj(z) / (z conj(z)) with z conj(z) real in Q(sqrt2)
        conj = self.conjugate()
        sq = self * conj
        assert sq.is_real
        return conj * ExactNum(sq.a, sq.b)._real_inverse()

    def __truediv__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: _NumLike) -> "ExactNum":
        o = ExactNum._operand(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "ExactNum":
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactNum(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ExactNum)):
            o = ExactNum.coerce(other)
            return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def _real_sign(self) -> int:
        """Exact sign of a real element."""
        if not self.is_real:
            raise TypeError("sign is defined for real elements only")
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against 2 b^2
        big_a = a * a > 2 * b * b
        if a > 0:
            return 1 if big_a else -1
        return -1 if big_a else 1

    def __lt__(self, other: _NumLike) -> bool:
        return (self - ExactNum.coerce(other))._real_sign() < 0

    def __le__(self, other: _NumLike) -> bool:
        return (self - ExactNum.coerce(other))._real_sign() <= 0

    def __gt__(self, other: _NumLike) -> bool:
        return (self - ExactNum.coerce(other))._real_sign() > 0

    def __ge__(self, other: _NumLike) -> bool:
        return (self - ExactNum.coerce(other))._real_sign() >= 0

    # -- roots --------------------------------------------------------

    def exact_sqrt(self) -> "ExactNum | None":
        """Square root within Q(sqrt2) of a nonnegative real element.

        Returns the nonnegative root when one exists in the field, else
        ``None``.  Complex elements are rejected; the callers only ever
        need real square roots (modulus recognition).
        """
        if not self.is_real:
            raise TypeError("exact_sqrt expects a real element")
        if self._real_sign() < 0:
            return None
        if self.is_zero:
            return ExactNum(0)
        a, b = self.a, self.b
        candidates: list[ExactNum] = []
        if b == 0:
            r = rational_square_root(a)
            if r is not None:
                candidates.append(ExactNum(r))
            r = rational_square_root(a / 2)
            if r is not None:
                candidates.append(ExactNum(0, r))
        else:
            # (c + d sqrt2)^2 = (c^2 + 2 d^2) + 2 c d sqrt2
            disc = rational_square_root(a * a - 2 * b * b)
            if disc is not None:
                for csq in ((a + disc) / 2, (a - disc) / 2):
                    c = rational_square_root(csq)
                    if c is not None and c != 0:
                        candidates.append(ExactNum(c, b / (2 * c)))
        for cand in candidates:
            if cand * cand == self and cand._real_sign() >= 0:
                return cand
            neg = -cand
            if neg * neg == self and neg._real_sign() >= 0:
                return neg
        return None

    # -- conversions --------------------------------------------------

    def __float__(self) -> float:
        if not self.is_real:
            raise TypeError("cannot convert complex element to float")
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def __complex__(self) -> complex:
        re = float(self.a) + float(self.b) * math.sqrt(2.0)
        im = float(self.c) + float(self.d) * math.sqrt(2.0)
        return complex(re, im)

    def __repr__(self) -> str:
        return f"ExactNum({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self) -> str:
        def part(x: Fraction, y: Fraction) -> str:
            # render x + y*sqrt2
            terms = []
            if x:
                terms.append(str(x))
            if y:
                terms.append(f"{y}*sqrt2" if y != 1 else "sqrt2")
            if not terms:
                return "0"
            return "+".join(terms).replace("+-", "-")

        re = part(self.a, self.b)
        if self.is_real:
            return re
        im = part(self.c, self.d)
        if re == "0":
            return f"({im})*i"
        return f"{re}+({im})*i"

    def canonical(self) -> str:
        """Canonical string form ``a+b*sqrt2`` for real elements."""
        if not self.is_real:
            raise ValueError("canonical form is for real elements")
        return f"{self.a}{'+' if self.b >= 0 else ''}{self.b}*sqrt2"


ZERO = ExactNum(0)
ONE = ExactNum(1)
SQRT2 = ExactNum.sqrt2()
I = ExactNum.i()


def field_arith(x: _NumLike, y: _NumLike, op: str) -> ExactNum:
    """Dispatch helper for the four field operations.

    The dunder operators on :class:`ExactNum` are the primary interface;
    this exists for table-driven callers.
    """
    x = ExactNum.coerce(x)
    y = ExactNum.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


class ExactPoly:
    """Dense univariate polynomial over Q(sqrt2, i).

    Coefficients are stored lowest degree first with no trailing zeros, so
    the leading coefficient is nonzero except for the zero polynomial,
    whose degree is reported as -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[_NumLike]) -> None:
        cs = [ExactNum.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ExactPoly is immutable")

    @classmethod
    def constant(cls, v: _NumLike) -> "ExactPoly":
        return cls([v])

    @classmethod
    def x(cls) -> "ExactPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> ExactNum:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "ExactPoly | _NumLike") -> "ExactPoly":
        o = other if isinstance(other, ExactPoly) else ExactPoly([other])
        n = max(len(self.coeffs), len(o.coeffs))
        return ExactPoly(
            [
                (self.coeffs[k] if k < len(self.coeffs) else ZERO)
                + (o.coeffs[k] if k < len(o.coeffs) else ZERO)
                for k in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        return ExactPoly([-c for c in self.coeffs])

    def __sub__(self, other: "ExactPoly | _NumLike") -> "ExactPoly":
        o = other if isinstance(other, ExactPoly) else ExactPoly([other])
        return self + (-o)

    def __rsub__(self, other: _NumLike) -> "ExactPoly":
        return ExactPoly([other]) + (-self)

    def __mul__(self, other: "ExactPoly | _NumLike") -> "ExactPoly":
        o = other if isinstance(other, ExactPoly) else ExactPoly([other])
        if self.is_zero or o.is_zero:
            return ExactPoly([])
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero:
                continue
            for j, cj in enumerate(o.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = ExactPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, z: _NumLike) -> ExactNum:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "ExactPoly":
        return ExactPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def __divmod__(self, other: "ExactPoly") -> tuple["ExactPoly", "ExactPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [ZERO] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        inv_lc = other.lc.inverse()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            factor = rem[-1] * inv_lc
            q[k] = factor
            for j, c in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * c
            while rem and rem[-1].is_zero:
                rem.pop()
        return ExactPoly(q), ExactPoly(rem)

    def __floordiv__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod(self, other)[1]

    def monic(self) -> "ExactPoly":
        if self.is_zero:
            return self
        inv = self.lc.inverse()
        return ExactPoly([c * inv for c in self.coeffs])

    def reversed_coeffs(self) -> "ExactPoly":
        """Polynomial with the coefficient order reversed (z -> 1/z lift)."""
        return ExactPoly(list(reversed(self.coeffs)))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ExactPoly({[str(c) for c in self.coeffs]})"


def poly_gcd(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Monic greatest common divisor by the Euclidean algorithm.

    gcd(0, 0) is the zero polynomial; otherwise the result is monic so the
    answer is canonical.
    """
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


class ExactMatrix:
    """Immutable dense matrix over Q(sqrt2, i)."""

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable[_NumLike]]) -> None:
        ent = tuple(tuple(ExactNum.coerce(v) for v in row) for row in rows)
        if ent:
            width = len(ent[0])
            if any(len(r) != width for r in ent):
                raise ValueError("ragged rows")
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ExactMatrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> ExactNum:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[ExactNum, ...]:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def matrix_rank(m: ExactMatrix | Sequence[Sequence[_NumLike]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Entries must be real elements of Q(sqrt2); the derivative matrix rows
    are real by construction and this keeps the pivoting sign logic exact.
    """
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = [list(r) for r in m.entries]
    for r in rows:
        for v in r:
            if not v.is_real:
                raise ValueError("matrix_rank expects real entries")
    nr, nc = len(rows), len(rows[0])
    rank = 0
    prev = ONE
    pivot_row = 0
    for col in range(nc):
        # locate a pivot at or below pivot_row
        sel = None
        for r in range(pivot_row, nr):
            if not rows[r][col].is_zero:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        piv = rows[pivot_row][col]
        for r in range(pivot_row + 1, nr):
            fac = rows[r][col]
            for cpos in range(col, nc):
                # one-step fraction-free update; division by prev is exact
                rows[r][cpos] = (piv * rows[r][cpos] - fac * rows[pivot_row][cpos]) / prev
            rows[r][col] = ZERO
        prev = piv
        rank += 1
        pivot_row += 1
        if pivot_row == nr:
            break
    return rank
