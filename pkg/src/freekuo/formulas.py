"""Exact product formulas: MacMahon boxes, symmetric plane partitions,
flashlight and butterfly counts, and the dent correlations.

Products whose index limits are out of order are empty and equal 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial, perm

import mpmath


def pochhammer(q: Fraction | int, n: int) -> Fraction:
    """Rising factorial ``q (q+1) ... (q+n-1)``; ``n == 0`` gives 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = Fraction(1)
    q = Fraction(q)
    for i in range(n):
        out *= q + i
    return out


def _int_poch(q: int, n: int) -> int:
    """Rising factorial for integer ``q`` via factorials."""
    if n == 0:
        return 1
    top = q + n - 1
    if q >= 1:
        return perm(top, n)
    if top >= 0:
        return 0
    # all factors negative
    return (-1) ** n * perm(-q, n)


def _tree_prod(values: list[int]) -> int:
    """Product of many big integers, pairing factors of similar size."""
    if not values:
        return 1
    while len(values) > 1:
        nxt = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0]


class _ZeroAwareProduct:
    """Ratio of integer factors that tracks zeros on both sides.

    The formulas are polynomials in their parameters that vanish by virtue of
    a zero factor in the numerator; when a denominator factor also vanishes,
    the order of vanishing decides the value.
    """

    def __init__(self) -> None:
        self.num: list[int] = []
        self.den: list[int] = []
        self.zeros = 0

    def _factor(self, q: int, n: int) -> tuple[int, int]:
        if n == 0:
            return 1, 0
        top = q + n - 1
        if q <= 0 <= top:
            # one zero factor; the rest splits into two nonzero runs
            return _int_poch(q, -q) * _int_poch(1, top), 1
        return _int_poch(q, n), 0

    def mul(self, q: int, n: int) -> None:
        v, z = self._factor(q, n)
        self.num.append(v)
        self.zeros += z

    def div(self, q: int, n: int) -> None:
        v, z = self._factor(q, n)
        self.den.append(v)
        self.zeros -= z

    def value(self) -> Fraction:
        if self.zeros > 0:
            return Fraction(0)
        if self.zeros < 0:
            raise ZeroDivisionError("formula has a pole at these parameters")
        num, den = _tree_prod(self.num), _tree_prod(self.den)
        q, r = divmod(num, den)
        if r == 0:
            return Fraction(q)
        return Fraction(num, den)


def macmahon_box(x: int, y: int, z: int) -> int:
    """Plane partitions in an ``x * y * z`` box (lozenge tilings of the hexagon)."""
    out = Fraction(1)
    for i in range(1, x + 1):
        for j in range(1, y + 1):
            for k in range(1, z + 1):
                out *= Fraction(i + j + k - 1, i + j + k - 2)
    assert out.denominator == 1
    return int(out)


def spp(a: int, b: int) -> int:
    """Symmetric plane partitions fitting in an ``a * a * b`` box."""
    out = Fraction(1)
    for i in range(1, a + 1):
        out *= Fraction(b + 2 * i - 1, 2 * i - 1)
        for j in range(i + 1, a + 1):
            out *= Fraction(b + i + j - 1, i + j - 1)
    assert out.denominator == 1
    return int(out)


@lru_cache(maxsize=512)
def flashlight_formula(x: int, z: int, k: int, p: int) -> int:
    """Closed-form free-boundary tiling count of the flashlight ``F(x, z, k, p)``.

    Vanishes when ``x < k + p``.
    """
    if min(x, z, k, p) < 0:
        raise ValueError("parameters must be non-negative")
    prod = _ZeroAwareProduct()
    # prod_{i=1}^{z-1} (k+i)/i
    if z >= 2:
        prod.mul(k + 1, z - 1)
        prod.div(1, z - 1)
    # prod_{i=0}^{p-1} (x+z+k+p-2i)_{z-1} / (x+k+p-2i)_{z-1}; the two sides
    # coincide for z == 0, so the factor is 1 there.
    if z >= 1:
        for i in range(p):
            prod.mul(x + z + k + p - 2 * i, z - 1)
            prod.div(x + k + p - 2 * i, z - 1)
    # prod_{i=1}^{z-1} prod_{j=2}^{i} (2k+i+j-1)/(i+j-1)
    for i in range(2, z):
        prod.mul(2 * k + i + 1, i - 1)
        prod.div(i + 1, i - 1)
    for j in range(1, k + 1):
        n = 2 * z + 4 * k - 4 * j + 3
        prod.mul(x - k - p + 2 * j - 1, n)
        prod.div(2 * j - 1, n)
    for j in range(1, z + 1):
        n = 2 * z - 2 * j + 1
        prod.mul(x + k - p + j, n)
        prod.div(2 * k + j, n)
    val = prod.value()
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral flashlight value at {(x, z, k, p)}: {val}")
    return int(val)


def flashlight_log(x: int, z: int, k: int, p: int, digits: int = 50) -> mpmath.mpf:
    """Natural log of :func:`flashlight_formula` through log-Gamma.

    Needs ``x >= k + p`` so that every factor is positive.
    """
    if x < k + p:
        raise ValueError("log form needs x >= k + p")
    with mpmath.workdps(digits):
        lg = mpmath.loggamma

        def lpoch(q: int, n: int):
            return lg(q + n) - lg(q) if n else mpmath.mpf(0)

        s = mpmath.mpf(0)
        if z >= 2:
            s += lpoch(k + 1, z - 1) - lpoch(1, z - 1)
        if z >= 1:
            for i in range(p):
                s += lpoch(x + z + k + p - 2 * i, z - 1) - lpoch(x + k + p - 2 * i, z - 1)
        for i in range(2, z):
            s += lpoch(2 * k + i + 1, i - 1) - lpoch(i + 1, i - 1)
        for j in range(1, k + 1):
            n = 2 * z + 4 * k - 4 * j + 3
            s += lpoch(x - k - p + 2 * j - 1, n) - lpoch(2 * j - 1, n)
        for j in range(1, z + 1):
            n = 2 * z - 2 * j + 1
            s += lpoch(x + k - p + j, n) - lpoch(2 * k + j, n)
        return +s


def butterfly_sym_formula(x: int, y: int, k: int, p: int) -> int:
    """Horizontally and vertically symmetric tilings of ``H(2x, 2y; 2k, p)``.

    Evaluated term by term from the product in ``x, y, k, p``; requires
    ``y >= k`` (otherwise the bowtie does not fit).
    """
    if min(x, y, k, p) < 0:
        raise ValueError("parameters must be non-negative")
    if y < k:
        raise ValueError("need y >= k")
    num: list[int] = []
    den: list[int] = []

    def poch(q: int, n: int, into: list[int]) -> None:
        into.extend(q + t for t in range(n))

    for i in range(1, y - k):
        num.append(k + i)
        den.append(i)
    for i in range(p):
        if y - k - 1 >= 0:
            poch(x + y + p - 2 * i, y - k - 1, num)
            poch(x + k + p - 2 * i, y - k - 1, den)
    for i in range(1, y - k):
        for j in range(2, i + 1):
            num.append(2 * k + i + j - 1)
            den.append(i + j - 1)
    for j in range(1, k + 1):
        poch(x - k - p + 2 * j - 1, 2 * y + 2 * k - 4 * j + 3, num)
        poch(2 * j - 1, 2 * y + 2 * k - 4 * j + 3, den)
    for j in range(1, y - k + 1):
        poch(x + k - p + j, 2 * y - 2 * k - 2 * j + 1, num)
        poch(2 * k + j, 2 * y - 2 * k - 2 * j + 1, den)
    zeros = num.count(0) - den.count(0)
    if zeros > 0:
        return 0
    if zeros < 0:
        raise ZeroDivisionError("formula has a pole at these parameters")
    val = Fraction(1)
    for v in num:
        if v:
            val *= v
    for v in den:
        if v:
            val /= v
    assert val.denominator == 1
    return int(val)


# --- correlations ------------------------------------------------------------

def corner_correlation(k: int, p: int) -> Fraction:
    """Limiting correlation of the ``(k, p)`` dent with the corner of the wedge."""
    if min(k, p) < 0:
        raise ValueError("k and p must be non-negative")
    e3 = (k - p) * (k - p + 1) // 2
    e2 = 2 * k * k + k + p * p
    return Fraction(3 ** e3, 2 ** e2)


@dataclass(frozen=True)
class PiScaledRational:
    """Exact value ``mantissa * pi ** pi_exp``."""

    mantissa: Fraction
    pi_exp: int

    def __mul__(self, other: "PiScaledRational") -> "PiScaledRational":
        return PiScaledRational(self.mantissa * other.mantissa, self.pi_exp + other.pi_exp)

    def to_mpf(self, digits: int = 50) -> mpmath.mpf:
        with mpmath.workdps(digits):
            return mpmath.mpf(self.mantissa.numerator) / self.mantissa.denominator * mpmath.pi ** self.pi_exp

    def as_dict(self) -> dict:
        m = self.mantissa
        return {"mantissa": f"{m.numerator}/{m.denominator}", "pi_exp": self.pi_exp}


def _gamma_int(n: int) -> tuple[Fraction, int]:
    return Fraction(factorial(n - 1)), 0


def _gamma_half(n: int) -> tuple[Fraction, int]:
    """Gamma(n + 1/2) as (rational, power of sqrt(pi))."""
    return Fraction(factorial(2 * n), 4 ** n * factorial(n)), 1


def bulk_correlation(k: int) -> PiScaledRational:
    """Bulk correlation of the width-zero butterfly, exactly, as rational times a power of pi."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mant = Fraction(1)
    half = 0  # exponent of sqrt(pi)

    def mul(g: tuple[Fraction, int], power: int = 1) -> None:
        nonlocal mant, half
        mant *= g[0] ** power
        half += g[1] * power

    mul(_gamma_int(2 * k + 1))
    mul(_gamma_half(k))
    mul(_gamma_int(k + 1), -1)
    mul(_gamma_half(2 * k), -1)
    for i in range(1, k + 1):
        mul(_gamma_int(i), 2)
        mul(_gamma_int(2 * i - 1), 2)
        mul(_gamma_half(k + i - 1), -2)  # Gamma(k + i - 1/2)
    mant *= Fraction(3 ** (2 * k * k), 2 ** (6 * k * k + 2 * k))
    assert half % 2 == 0
    return PiScaledRational(mant, half // 2 - k)


def glaisher(digits: int = 50) -> mpmath.mpf:
    """Glaisher-Kinkelin constant ``A`` to ``digits`` significant digits."""
    with mpmath.workdps(digits):
        return +mpmath.glaisher


def bulk_asymptote(k: int, digits: int = 50) -> mpmath.mpf:
    """Leading-order asymptotic law for :func:`bulk_correlation` at large ``k``."""
    if k <= 0:
        raise ValueError("the asymptotic law is stated for k >= 1")
    if digits < 15:
        raise ValueError("digits must be at least 15")
    with mpmath.workdps(digits):
        A = mpmath.glaisher
        lead = mpmath.e ** mpmath.mpf(0.25) / (A ** 3 * mpmath.mpf(2) ** (mpmath.mpf(1) / 6) * mpmath.mpf(k) ** mpmath.mpf(0.25))
        return lead * mpmath.mpf(3) ** (2 * k * k) / mpmath.mpf(2) ** (8 * k * k)
