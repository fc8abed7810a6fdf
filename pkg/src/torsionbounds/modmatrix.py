"""Exact subgroup computations in GL2(Z/nZ).

Matrices are stored with entries reduced to [0, n) and must have unit
determinant.  Subgroups carry their full element set (breadth-first closure
of the generators), so orders and indices are exact by Lagrange.  An open
subgroup of the profinite GL2 is always represented here by its image mod N
for some multiple N of its level; reduction maps, full preimages and the
level-within-N computation make the finite-level statements checkable by
enumeration.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

DEFAULT_ENUMERATION_CAP = 10**7


class ModMatrixError(ValueError):
    pass


class InvalidModulusError(ModMatrixError):
    pass


class NotInvertibleError(ModMatrixError):
    pass


class ModulusMismatchError(ModMatrixError):
    pass


class NotADivisorError(ModMatrixError):
    pass


class EnumerationTooLargeError(ModMatrixError):
    def __init__(self, size, cap):
        super().__init__(f"enumeration of {size} elements exceeds cap {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True, order=True)
class Mat2:
    """A 2x2 matrix over Z/nZ with unit determinant."""

    n: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidModulusError(f"modulus must be >= 1, got {self.n}")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.n)
        det = (self.a * self.d - self.b * self.c) % self.n
        if math.gcd(det, self.n) != 1:
            raise NotInvertibleError(
                f"determinant {det} is not a unit mod {self.n}"
            )

    @staticmethod
    def identity(n: int) -> "Mat2":
        return Mat2(n, 1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def __mul__(self, other: "Mat2") -> "Mat2":
        if self.n != other.n:
            raise ModulusMismatchError(f"moduli {self.n} and {other.n} differ")
        n = self.n
        return Mat2(
            n,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        n = self.n
        det_inv = pow(self.det(), -1, n) if n > 1 else 0
        return Mat2(n, self.d * det_inv, -self.b * det_inv,
                    -self.c * det_inv, self.a * det_inv)

    def reduce(self, m: int) -> "Mat2":
        if m < 1 or self.n % m != 0:
            raise NotADivisorError(f"{m} does not divide modulus {self.n}")
        return Mat2(m, self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.n}"


@dataclass(frozen=True)
class SubgroupModN:
    """A subgroup of GL2(Z/nZ) with its cached element set."""

    n: int
    generators: tuple[Mat2, ...]
    elements: frozenset[Mat2]

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Mat2]:
        return sorted(self.elements)

    def __contains__(self, g: Mat2) -> bool:
        return g in self.elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupModN):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def __repr__(self) -> str:
        return f"SubgroupModN(n={self.n}, order={self.order})"


def _from_elements(n: int, elements: Iterable[Mat2],
                   generators: Sequence[Mat2] | None = None) -> SubgroupModN:
    """Trusted constructor: `elements` must already be a closed subgroup."""
    elems = frozenset(elements)
    gens = tuple(generators) if generators is not None else tuple(sorted(elems))
    return SubgroupModN(n, gens, elems)


def gl2_order(n: int) -> int:
    """Order of GL2(Z/nZ)."""
    if n < 1:
        raise InvalidModulusError(f"modulus must be >= 1, got {n}")
    order = 1
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            order *= p ** (4 * (k - 1)) * (p * p - 1) * (p * p - p)
        p += 1 if p == 2 else 2
    if rest > 1:
        p = rest
        order *= (p * p - 1) * (p * p - p)
    return order


def enumerate_gl2(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset[Mat2]:
    """All of GL2(Z/nZ) by direct scan of the n**4 candidate matrices."""
    size = gl2_order(n)
    if size > cap:
        raise EnumerationTooLargeError(size, cap)
    if n == 1:
        return frozenset([Mat2.identity(1)])
    out = []
    rng = range(n)
    gcd = math.gcd
    for a in rng:
        for d in rng:
            ad = a * d
            for b in rng:
                for c in rng:
                    if gcd((ad - b * c) % n, n) == 1:
                        out.append(Mat2(n, a, b, c, d))
    result = frozenset(out)
    assert len(result) == size
    return result


def full_gl2(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupModN:
    """GL2(Z/nZ) as a SubgroupModN, with a small standard generating set."""
    elems = enumerate_gl2(n, cap)
    gens = []
    if n > 1:
        gens.append(Mat2(n, 1, 1, 0, 1))
        gens.append(Mat2(n, 0, -1, 1, 0))
        for u in range(2, n):
            if math.gcd(u, n) == 1:
                gens.append(Mat2(n, u, 0, 0, 1))
    else:
        gens.append(Mat2.identity(1))
    return _from_elements(n, elems, gens)


def subgroup_closure(gens: Sequence[Mat2], n: int | None = None,
                     cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupModN:
    """Smallest subgroup of GL2(Z/nZ) containing the generators."""
    gens = tuple(gens)
    if n is None:
        if not gens:
            raise InvalidModulusError("modulus required when no generators given")
        n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ModulusMismatchError(
                f"generator {g!r} has modulus {g.n}, expected {n}")
    ident = Mat2.identity(n)
    step = []
    for g in gens:
        step.append(g)
        step.append(g.inverse())
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in step:
            y = x * g
            if y not in seen:
                if len(seen) >= cap:
                    raise EnumerationTooLargeError(len(seen) + 1, cap)
                seen.add(y)
                queue.append(y)
    return SubgroupModN(n, gens, frozenset(seen))


def b1_subgroup(n: int) -> SubgroupModN:
    """Upper-triangular matrices mod n with first column (1,0); order n*phi(n)."""
    if n < 2:
        raise InvalidModulusError(f"B1(n) is defined for n >= 2, got {n}")
    units = [d for d in range(1, n) if math.gcd(d, n) == 1]
    elems = [Mat2(n, 1, b, 0, d) for b in range(n) for d in units]
    gens = [Mat2(n, 1, 1, 0, 1)] + [Mat2(n, 1, 0, 0, u) for u in units if u != 1]
    if not gens:
        gens = [Mat2.identity(n)]
    return _from_elements(n, elems, gens)


def subgroup_index(G: SubgroupModN) -> int:
    total = gl2_order(G.n)
    assert total % G.order == 0
    return total // G.order


def reduce_subgroup(G: SubgroupModN, m: int) -> SubgroupModN:
    """Image of G under entrywise reduction mod m (m | n)."""
    if m < 1 or G.n % m != 0:
        raise NotADivisorError(f"{m} does not divide modulus {G.n}")
    elems = frozenset(g.reduce(m) for g in G.elements)
    gens = tuple(dict.fromkeys(g.reduce(m) for g in G.generators))
    return SubgroupModN(m, gens, elems)


def full_preimage(H: SubgroupModN, n: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupModN:
    """Preimage of H under GL2(Z/nZ) -> GL2(Z/mZ), where m = H.n divides n."""
    m = H.n
    if n < 1 or n % m != 0:
        raise NotADivisorError(f"{m} does not divide {n}")
    size = H.order * (gl2_order(n) // gl2_order(m))
    if size > cap:
        raise EnumerationTooLargeError(size, cap)
    q = n // m
    gcd = math.gcd
    elems = []
    for h in H.elements:
        ha, hb, hc, hd = h.entries
        for xa in range(q):
            a = ha + m * xa
            for xd in range(q):
                d = hd + m * xd
                ad = a * d
                for xb in range(q):
                    b = hb + m * xb
                    for xc in range(q):
                        c = hc + m * xc
                        if gcd((ad - b * c) % n, n) == 1:
                            elems.append(Mat2(n, a, b, c, d))
    result = _from_elements(n, elems)
    assert result.order == size
    return result


def is_full_preimage(G: SubgroupModN, m: int) -> bool:
    """True iff G equals the full preimage of its own reduction mod m.

    Equivalent, at finite level, to G containing the kernel of reduction
    n -> m; checked by the order equation, no preimage enumeration needed.
    """
    if m < 1 or G.n % m != 0:
        raise NotADivisorError(f"{m} does not divide modulus {G.n}")
    image = reduce_subgroup(G, m)
    return G.order * gl2_order(m) == image.order * gl2_order(G.n)


def level_within(G: SubgroupModN) -> int:
    """Least divisor m of n with is_full_preimage(G, m)."""
    for m in divisors(G.n):
        if is_full_preimage(G, m):
            return m
    raise AssertionError("unreachable: m = n always qualifies")


def divisors(n: int) -> list[int]:
    if n < 1:
        raise InvalidModulusError(f"modulus must be >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def crt_combine(mats: Sequence[Mat2]) -> Mat2:
    """Combine matrices over pairwise coprime moduli into one mod prod(n_i)."""
    if not mats:
        raise InvalidModulusError("need at least one matrix")
    n = reduce(lambda x, y: x * y, (m.n for m in mats))
    entries = []
    for i in range(4):
        x, mod = 0, 1
        for m in mats:
            r = m.entries[i]
            if math.gcd(mod, m.n) != 1:
                raise ModulusMismatchError("moduli are not pairwise coprime")
            # CRT merge of (x mod mod) and (r mod m.n)
            h = ((r - x) * pow(mod, -1, m.n)) % m.n if m.n > 1 else 0
            x = x + mod * h
            mod *= m.n
        entries.append(x % n)
    return Mat2(n, *entries)


def parse_matrix(text: str, n: int) -> Mat2:
    """Parse "a,b;c,d" into a Mat2 mod n."""
    rows = text.strip().split(";")
    if len(rows) != 2:
        raise ModMatrixError(f"expected two rows 'a,b;c,d', got {text!r}")
    entries = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise ModMatrixError(f"expected two entries per row in {text!r}")
        for p in parts:
            try:
                entries.append(int(p.strip()))
            except ValueError:
                raise ModMatrixError(f"bad integer entry {p.strip()!r}") from None
    return Mat2(n, *entries)


def parse_generators(text: str, n: int) -> list[Mat2]:
    """Parse a whitespace-separated list of "a,b;c,d" matrix literals."""
    return [parse_matrix(tok, n) for tok in text.split()]
