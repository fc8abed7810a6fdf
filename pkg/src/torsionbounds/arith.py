"""Multiplicative arithmetic functions and the extremal totient constant.

euler_phi and dedekind_psi are computed from the prime factorization.
b_epsilon computes the exact minimum of phi(n) / n**(1-eps) over all n >= 1:
the minimizer is a primorial, because the per-prime factor (1 - 1/p) * p**eps
is < 1 exactly for an initial run of primes and is strictly increasing in p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .exactvalue import PowerProduct

Rational = Union[int, Fraction]

FACTORIZATION_CAP = 10**12


class ArithError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes increasing


def factorize(n: int) -> Factorization:
    """Trial-division factorization; inputs capped at 10**12."""
    if n < 1:
        raise ArithError(f"can only factor integers >= 1, got {n}")
    if n > FACTORIZATION_CAP:
        raise ArithError(f"input {n} exceeds factorization cap {FACTORIZATION_CAP}")
    value = n
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return Factorization(value, tuple(out))


def euler_phi(n: int) -> int:
    """Count of units mod n."""
    if n < 1:
        raise ArithError(f"euler_phi needs n >= 1, got {n}")
    out = 1
    for p, k in factorize(n).factors:
        out *= p ** (k - 1) * (p - 1)
    return out


def dedekind_psi(n: int) -> int:
    """Multiplicative, psi(p**k) = p**(k-1) * (p+1); psi(n) > n for n > 1."""
    if n < 1:
        raise ArithError(f"dedekind_psi needs n >= 1, got {n}")
    out = 1
    for p, k in factorize(n).factors:
        out *= p ** (k - 1) * (p + 1)
    return out


def factorial(k: int) -> int:
    if k < 0:
        raise ArithError(f"factorial needs k >= 0, got {k}")
    return math.factorial(k)


def primes() -> Iterator[int]:
    yield 2
    found = [2]
    q = 3
    while True:
        if all(q % p for p in found if p * p <= q):
            found.append(q)
            yield q
        q += 2


@dataclass(frozen=True)
class EffectiveConstant:
    """min over n >= 1 of phi(n) / n**(1-epsilon), with its attaining witness."""

    epsilon: Fraction
    witness: int
    value: PowerProduct
    decimal: str  # rounded DOWN, so the constant is never overstated
    digits: int


def b_epsilon(epsilon: Rational, digits: int = 12) -> EffectiveConstant:
    """Exact minimum of phi(n) / n**(1-epsilon) over n >= 1, epsilon > 0.

    Scans primes in increasing order, multiplying the witness by p while the
    per-prime factor (1 - 1/p) * p**epsilon stays below 1; the factor is
    strictly increasing in p, so the first failure ends the scan.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ArithError("epsilon must be > 0 (the infimum is 0 otherwise)")
    a, q = epsilon.numerator, epsilon.denominator
    witness = 1
    for p in primes():
        # (1 - 1/p) * p**eps < 1  <=>  (p-1)**q * p**a < p**q
        if a >= q or (p - 1) ** q * p ** a >= p ** q:
            break
        witness *= p
    value = (PowerProduct.from_int(euler_phi(witness))
             * PowerProduct.from_int(witness) ** (epsilon - 1))
    return EffectiveConstant(
        epsilon=epsilon,
        witness=witness,
        value=value,
        decimal=value.decimal(digits, round_up=False),
        digits=digits,
    )
