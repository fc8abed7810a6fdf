"""Admissible torsion exponents and explicit polynomial bound constants.

Given the adelic index I of a fixed curve over a degree-d0 field, a torsion
exponent n over a degree-d field must satisfy phi(n) * psi(n) | 2*I*(d0-1)!*d.
The sieve enumerates all such n; the c/C constants turn the same divisibility
into closed-form polynomial bounds in d.  All candidate decisions are exact
integer arithmetic; emitted decimal bounds round up, constants in
denominators round down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Union

from .arith import b_epsilon, dedekind_psi, euler_phi, factorial
from .exactvalue import PowerProduct

Rational = Union[int, Fraction]

# rational upper bound for zeta(2) = pi**2 / 6, kept exact
ZETA2_UPPER = Fraction(329, 200)

DEFAULT_CEILING_BUDGET = 10**7


class BoundsError(ValueError):
    pass


class CeilingTooLargeError(BoundsError):
    def __init__(self, ceiling, budget):
        super().__init__(f"sieve ceiling {ceiling} exceeds budget {budget}")
        self.ceiling = ceiling
        self.budget = budget


@dataclass(frozen=True)
class BoundContext:
    """(adelic index I, base degree d0, target degree d), all >= 1."""

    I: int
    d0: int
    d: int

    def __post_init__(self):
        if self.I < 1 or self.d0 < 1 or self.d < 1:
            raise BoundsError(f"all of I, d0, d must be >= 1, got {self}")


@dataclass(frozen=True)
class UpperBoundValue:
    """Exact bound plus a decimal rendering guaranteed not to understate it."""

    exact: PowerProduct
    decimal: str  # rounded UP

    def __float__(self) -> float:
        return float(self.exact)


@dataclass(frozen=True)
class CandidateSet:
    context: BoundContext
    modulus: int
    candidates: tuple[int, ...]
    ceiling: int


def sieve_modulus(ctx: BoundContext) -> int:
    """B = 2 * I * (d0-1)! * d."""
    return 2 * ctx.I * factorial(ctx.d0 - 1) * ctx.d


def exponent_candidates(ctx: BoundContext,
                        budget: int = DEFAULT_CEILING_BUDGET) -> CandidateSet:
    """All n >= 1 with phi(n)*psi(n) dividing the sieve modulus.

    Since phi(n)*psi(n) > (6/pi**2) * n**2, every candidate satisfies
    n <= isqrt(ceil(B * 329/200)); the scan stops there.
    """
    B = sieve_modulus(ctx)
    scaled = B * ZETA2_UPPER.numerator
    ceiling = math.isqrt(-(-scaled // ZETA2_UPPER.denominator))
    if ceiling > budget:
        raise CeilingTooLargeError(ceiling, budget)
    cands = [n for n in range(1, ceiling + 1) if B % _phi_psi(n) == 0]
    return CandidateSet(ctx, B, tuple(cands), ceiling)


@lru_cache(maxsize=None)
def _phi_psi(n: int) -> int:
    return euler_phi(n) * dedekind_psi(n)


def c_epsilon(I: int, d0: int, epsilon: Rational,
              digits: int = 12) -> UpperBoundValue:
    """The exponent-bound constant (2 * I * b_eps**-1 * (d0-1)!)**(1/(2-eps))."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 2:
        raise BoundsError(f"epsilon must lie in (0, 2), got {epsilon}")
    if I < 1 or d0 < 1:
        raise BoundsError("I and d0 must be >= 1")
    b = b_epsilon(epsilon)
    base = PowerProduct.from_int(2 * I * factorial(d0 - 1)) / b.value
    exact = base ** Fraction(1, 2 - epsilon)
    return UpperBoundValue(exact, exact.decimal(digits, round_up=True))


@dataclass(frozen=True)
class TheoremBounds:
    epsilon: Fraction
    exponent_bound: UpperBoundValue  # c_eps * d**(1/2 + eps)
    order_bound: UpperBoundValue     # c_(eps/2)**2 * d**(1 + eps)
    weak_epsilon: bool               # eps >= 1: formula valid but not sharp


def theorem_bounds(ctx: BoundContext, epsilon: Rational,
                   digits: int = 12) -> TheoremBounds:
    epsilon = Fraction(epsilon)
    c = c_epsilon(ctx.I, ctx.d0, epsilon)
    d_pow = PowerProduct.from_int(ctx.d)
    expo = c.exact * d_pow ** (Fraction(1, 2) + epsilon)
    c_half = c_epsilon(ctx.I, ctx.d0, epsilon / 2)
    order = c_half.exact ** 2 * d_pow ** (1 + epsilon)
    return TheoremBounds(
        epsilon=epsilon,
        exponent_bound=UpperBoundValue(expo, expo.decimal(digits, round_up=True)),
        order_bound=UpperBoundValue(order, order.decimal(digits, round_up=True)),
        weak_epsilon=epsilon >= 1,
    )


@dataclass(frozen=True)
class Baselines:
    """Prior explicit bounds evaluated at degree d, for comparison."""

    d: int
    parent: int                      # 129 * (5**d - 1) * (3d)**6, prime-power bound
    hindry_silverman: float | None   # 1977408 * d * ln(d); None at d = 1
    bn_exponent: UpperBoundValue     # 720720 * sqrt(35) * d**(1/2)
    bn_order: UpperBoundValue        # 1441440 * sqrt(35) * d**(1/2)
    bn_applicable: bool              # only valid for odd d
    hs_log_note: str = "natural log"


def baselines(d: int, digits: int = 12) -> Baselines:
    if d < 1:
        raise BoundsError(f"degree must be >= 1, got {d}")
    parent = 129 * (5 ** d - 1) * (3 * d) ** 6
    hs = 1977408 * d * math.log(d) if d > 1 else None
    root = PowerProduct.from_int(35) ** Fraction(1, 2) \
        * PowerProduct.from_int(d) ** Fraction(1, 2)
    bn_exp = PowerProduct.from_int(720720) * root
    bn_ord = PowerProduct.from_int(1441440) * root
    return Baselines(
        d=d,
        parent=parent,
        hindry_silverman=hs,
        bn_exponent=UpperBoundValue(bn_exp, bn_exp.decimal(digits, round_up=True)),
        bn_order=UpperBoundValue(bn_ord, bn_ord.decimal(digits, round_up=True)),
        bn_applicable=(d % 2 == 1),
    )
