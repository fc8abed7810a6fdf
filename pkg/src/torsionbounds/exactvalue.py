"""Exact positive reals of the form prod(p_i ** e_i) with rational exponents.

All bound constants produced by this package are products of integer bases
raised to rational powers.  Carrying them symbolically lets us compare two
values exactly (raise both sides to the lcm of the exponent denominators and
compare integers) and render decimals with directed rounding, so an emitted
upper bound is never understated and a constant sitting in a denominator is
never overstated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

Rational = Union[int, Fraction]


def _factorize(n: int) -> dict[int, int]:
    if n <= 0:
        raise ValueError(f"can only factor positive integers, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def integer_nth_root(a: int, n: int) -> int:
    """Largest x with x**n <= a (a >= 0, n >= 1)."""
    if a < 0 or n < 1:
        raise ValueError("integer_nth_root needs a >= 0, n >= 1")
    if a in (0, 1) or n == 1:
        return a
    if n == 2:
        return math.isqrt(a)
    # Newton iteration on integers, seeded from a float estimate.
    try:
        x = int(a ** (1.0 / n)) + 1
    except OverflowError:
        x = 1 << (a.bit_length() // n + 1)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > a:
        x -= 1
    while (x + 1) ** n <= a:
        x += 1
    return x


def _floor_root_fraction(num: int, den: int, n: int) -> int:
    """floor((num/den) ** (1/n)) for num >= 0, den >= 1."""
    x = integer_nth_root(num // den, n)
    while (x + 1) ** n * den <= num:
        x += 1
    while x > 0 and x ** n * den > num:
        x -= 1
    return x


@dataclass(frozen=True)
class PowerProduct:
    """A positive real number prod(p ** e) with prime p and rational e."""

    factors: Mapping[int, Fraction] = field(default_factory=dict)

    @staticmethod
    def from_int(n: int) -> "PowerProduct":
        if n <= 0:
            raise ValueError("PowerProduct represents positive values only")
        return PowerProduct({p: Fraction(k) for p, k in _factorize(n).items()})

    @staticmethod
    def from_fraction(q: Rational) -> "PowerProduct":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("PowerProduct represents positive values only")
        f = {p: Fraction(k) for p, k in _factorize(q.numerator).items()}
        for p, k in _factorize(q.denominator).items():
            f[p] = f.get(p, Fraction(0)) - k
        return PowerProduct({p: e for p, e in f.items() if e})

    one = None  # set after class definition

    def __mul__(self, other: "PowerProduct | Rational") -> "PowerProduct":
        other = _coerce(other)
        f = dict(self.factors)
        for p, e in other.factors.items():
            e2 = f.get(p, Fraction(0)) + e
            if e2:
                f[p] = e2
            else:
                f.pop(p, None)
        return PowerProduct(f)

    __rmul__ = __mul__

    def __truediv__(self, other: "PowerProduct | Rational") -> "PowerProduct":
        return self * _coerce(other) ** -1

    def __pow__(self, exponent: Rational) -> "PowerProduct":
        exponent = Fraction(exponent)
        if exponent == 0:
            return PowerProduct({})
        return PowerProduct({p: e * exponent for p, e in self.factors.items()})

    # -- exact comparison ------------------------------------------------

    def _root_data(self) -> tuple[int, int, int]:
        """Return (num, den, L) with value == (num/den) ** (1/L)."""
        L = 1
        for e in self.factors.values():
            L = math.lcm(L, e.denominator)
        num = den = 1
        for p, e in self.factors.items():
            k = int(e * L)
            if k >= 0:
                num *= p ** k
            else:
                den *= p ** (-k)
        return num, den, L

    def compare(self, other: "PowerProduct | Rational") -> int:
        ratio = self / _coerce(other)
        num, den, _ = ratio._root_data()
        return (num > den) - (num < den)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (PowerProduct, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.factors.items()))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for e in self.factors.values())

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        q = Fraction(1)
        for p, e in self.factors.items():
            q *= Fraction(p) ** int(e)
        return q

    # -- decimal rendering ----------------------------------------------

    def _floor_log10(self) -> int:
        num, den, L = self._root_data()
        k = int(math.floor(math.log10(num) - math.log10(den)) // L) if num > 1 or den > 1 else 0
        while 10 ** ((k + 1) * L) * den <= num:
            k += 1
        while 10 ** (k * L) * den > num:
            k -= 1
        return k

    def decimal(self, digits: int = 12, round_up: bool = False) -> str:
        """Decimal string with `digits` significant digits, directed rounding.

        round_up=False never overstates the value; round_up=True never
        understates it.
        """
        if digits < 1:
            raise ValueError("need at least one significant digit")
        num, den, L = self._root_data()
        k = self._floor_log10()
        s = digits - 1 - k
        # mantissa bounds for value * 10**s
        if s >= 0:
            tn, td = num * 10 ** (s * L), den
        else:
            tn, td = num, den * 10 ** (-s * L)
        m = _floor_root_fraction(tn, td, L)
        if round_up and m ** L * td != tn:
            m += 1
        return _format_scaled(m, -s)

    def __float__(self) -> float:
        return float(self.decimal(17))

    def __repr__(self) -> str:
        if not self.factors:
            return "PowerProduct(1)"
        parts = [f"{p}^{e}" for p, e in sorted(self.factors.items())]
        return "PowerProduct(" + " * ".join(parts) + ")"


def _coerce(x: "PowerProduct | Rational") -> PowerProduct:
    if isinstance(x, PowerProduct):
        return x
    return PowerProduct.from_fraction(x)


PowerProduct.one = PowerProduct({})


def _format_scaled(m: int, e: int) -> str:
    """Render m * 10**e as a decimal string."""
    digits = str(m)
    if e >= 0:
        if e > 6:
            return _scientific(digits, e + len(digits) - 1)
        return digits + "0" * e
    point = len(digits) + e
    if point > 0:
        return digits[:point] + "." + digits[point:]
    if point > -7:
        return "0." + "0" * (-point) + digits
    return _scientific(digits, point - 1)


def _scientific(digits: str, exp10: int) -> str:
    mantissa = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    return f"{mantissa}e{exp10:+d}"
