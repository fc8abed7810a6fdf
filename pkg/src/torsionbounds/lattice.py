"""Finite-precision index checks for group-invariant l-adic lattices.

A lattice is the Z_l-span of a rational basis of Q_l^2 (denominators are
l-powers only).  A finitely generated group of l-integral matrices that
stabilizes two lattices T and T' must induce subgroups of the same index in
GL2(Z/l^k Z) under either identification; this module computes both indices
at a chosen precision k and reports whether they agree.

Stabilization is tested exactly in rational arithmetic.  Subgroup orders mod
l^k are computed level by level: a breadth-first scan over the image mod
l^(k-1) collects Schreier discrepancies in the elementary abelian kernel of
GL2(Z/l^k) -> GL2(Z/l^(k-1)), whose span gives the kernel intersection.
This avoids enumerating the (often huge) subgroup mod l^k itself.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .modmatrix import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationTooLargeError,
    Mat2,
    SubgroupModN,
    gl2_order,
    subgroup_closure,
)

RatMat = tuple[Fraction, Fraction, Fraction, Fraction]  # row-major 2x2


class LatticeError(ValueError):
    pass


class SingularInputError(LatticeError):
    pass


class NotInvariantError(LatticeError):
    def __init__(self, generator, lattice_name="lattice"):
        super().__init__(
            f"generator {_fmt_rat(generator)} does not stabilize the {lattice_name}")
        self.generator = generator


def _fmt_rat(m: RatMat) -> str:
    a, b, c, d = m
    return f"{a},{b};{c},{d}"


def rat_mat(entries) -> RatMat:
    a, b, c, d = (Fraction(x) for x in entries)
    return (a, b, c, d)


def rat_det(m: RatMat) -> Fraction:
    return m[0] * m[3] - m[1] * m[2]


def rat_mul(x: RatMat, y: RatMat) -> RatMat:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def rat_inv(m: RatMat) -> RatMat:
    det = rat_det(m)
    if det == 0:
        raise SingularInputError(f"matrix {_fmt_rat(m)} is singular")
    return (m[3] / det, -m[1] / det, -m[2] / det, m[0] / det)


def valuation(q: Fraction, l: int) -> int | None:
    """l-adic valuation of a rational; None for 0."""
    if q == 0:
        return None
    v = 0
    num, den = q.numerator, q.denominator
    while num % l == 0:
        num //= l
        v += 1
    while den % l == 0:
        den //= l
        v -= 1
    return v


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a Z_l-lattice in Q_l^2; columns of `basis` are the vectors."""

    prime: int
    basis: RatMat

    def __post_init__(self):
        if self.prime < 2:
            raise LatticeError(f"prime must be >= 2, got {self.prime}")
        if rat_det(self.basis) == 0:
            raise SingularInputError("lattice basis is singular")
        for q in self.basis:
            den = q.denominator
            while den % self.prime == 0:
                den //= self.prime
            if den != 1:
                raise LatticeError(
                    f"entry {q} has a denominator not a power of {self.prime}")

    @staticmethod
    def standard(l: int) -> "LatticeBasis":
        return LatticeBasis(l, rat_mat((1, 0, 0, 1)))

    def transformed(self, sigma: RatMat) -> "LatticeBasis":
        return LatticeBasis(self.prime, rat_mul(sigma, self.basis))

    def scaled(self, factor) -> "LatticeBasis":
        f = Fraction(factor)
        return LatticeBasis(self.prime, tuple(f * q for q in self.basis))

    def valuation_window(self) -> tuple[int, int]:
        vals = [v for q in self.basis if (v := valuation(q, self.prime)) is not None]
        return (min(vals), max(vals))


@dataclass(frozen=True)
class AdicGroup:
    """Finitely many l-integral generators of a subgroup of GL2(Q_l)."""

    prime: int
    generators: tuple[RatMat, ...]
    note: str = ""

    def __post_init__(self):
        if self.prime < 2:
            raise LatticeError(f"prime must be >= 2, got {self.prime}")
        for g in self.generators:
            for q in g:
                if q != 0 and valuation(q, self.prime) < 0:
                    raise LatticeError(
                        f"generator {_fmt_rat(g)} is not {self.prime}-integral")
            det = rat_det(g)
            if det == 0 or valuation(det, self.prime) != 0:
                raise LatticeError(
                    f"generator {_fmt_rat(g)} is not invertible mod {self.prime}")


def stabilizes(g: RatMat, T: LatticeBasis, precision: int | None = None) -> bool:
    """Exact test that g maps the lattice into itself with unit determinant.

    Conjugates g into the basis of T; membership holds iff every entry has
    nonnegative l-valuation and the determinant is an l-unit.  `precision`
    only bounds downstream reporting, the test itself is exact.
    """
    if precision is not None and precision < 1:
        raise LatticeError(f"precision must be >= 1, got {precision}")
    det = rat_det(g)
    if det == 0:
        raise SingularInputError(f"matrix {_fmt_rat(g)} is singular")
    l = T.prime
    conj = rat_mul(rat_mul(rat_inv(T.basis), g), T.basis)
    for q in conj:
        if q != 0 and valuation(q, l) < 0:
            return False
    return valuation(rat_det(conj), l) == 0


def _conjugate_mod(g: RatMat, T: LatticeBasis, k: int) -> Mat2:
    l = T.prime
    m = l ** k
    conj = rat_mul(rat_mul(rat_inv(T.basis), g), T.basis)
    entries = []
    for q in conj:
        num, den = q.numerator, q.denominator
        entries.append(num * pow(den, -1, m) % m if m > 1 else 0)
    return Mat2(m, *entries)


def _checked_conjugates(G: AdicGroup, T: LatticeBasis, k: int,
                        lattice_name: str = "lattice") -> list[Mat2]:
    if k < 1:
        raise LatticeError(f"precision must be >= 1, got {k}")
    if G.prime != T.prime:
        raise LatticeError(f"group prime {G.prime} != lattice prime {T.prime}")
    for g in G.generators:
        if not stabilizes(g, T):
            raise NotInvariantError(g, lattice_name)
    return [_conjugate_mod(g, T, k) for g in G.generators]


def image_in_aut(G: AdicGroup, T: LatticeBasis, k: int,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupModN:
    """Precision-k image of G inside Aut(T), as a subgroup of GL2(Z/l^k)."""
    gens = _checked_conjugates(G, T, k)
    return subgroup_closure(gens, G.prime ** k, cap)


def subgroup_order_prime_power(gens: Sequence[Mat2], l: int, k: int,
                               cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Order of <gens> in GL2(Z/l^k) via the mod-l^j kernel filtration.

    Only the image mod l^(k-1) is ever enumerated; the top layer contributes
    l**dim of the span of Schreier discrepancies in the elementary abelian
    kernel at each step.
    """
    if k < 1:
        raise LatticeError(f"precision must be >= 1, got {k}")
    top = l ** k
    raw = []
    for g in gens:
        if g.n != top:
            raise LatticeError(f"generator modulus {g.n}, expected {top}")
        raw.append(g.entries)
        raw.append(g.inverse().entries)
    raw = list(dict.fromkeys(raw))

    order = len(_closure_raw([_reduce_raw(g, l) for g in raw], l, cap))
    for j in range(2, k + 1):
        m = l ** j
        mp = l ** (j - 1)
        gens_m = list(dict.fromkeys(_reduce_raw(g, m) for g in raw))
        ident = (1, 0, 0, 1)
        reps = {ident: ident}
        queue = deque([ident])
        basis: list[list[int]] = []
        while queue:
            key = queue.popleft()
            rep = reps[key]
            for g in gens_m:
                prod = _mul_raw(rep, g, m)
                pk = _reduce_raw(prod, mp)
                known = reps.get(pk)
                if known is None:
                    if len(reps) >= cap:
                        raise EnumerationTooLargeError(len(reps) + 1, cap)
                    reps[pk] = prod
                    queue.append(pk)
                else:
                    # Schreier generator t*g*rep(tg)^-1; the kernel side
                    # matters, conjugation by reps can move the span
                    disc = _mul_raw(prod, _inv_raw(known, m), m)
                    vec = [((disc[i] - ident[i]) // mp) % l for i in range(4)]
                    _span_add(basis, vec, l)
        assert len(reps) == order, "kernel filtration lost cosets"
        order = len(reps) * l ** len(basis)
    return order


def _reduce_raw(g, m):
    return (g[0] % m, g[1] % m, g[2] % m, g[3] % m)


def _mul_raw(x, y, m):
    return ((x[0] * y[0] + x[1] * y[2]) % m, (x[0] * y[1] + x[1] * y[3]) % m,
            (x[2] * y[0] + x[3] * y[2]) % m, (x[2] * y[1] + x[3] * y[3]) % m)


def _inv_raw(x, m):
    det = (x[0] * x[3] - x[1] * x[2]) % m
    di = pow(det, -1, m) if m > 1 else 0
    return ((x[3] * di) % m, (-x[1] * di) % m, (-x[2] * di) % m, (x[0] * di) % m)


def _closure_raw(gens, m, cap):
    ident = (1 % m, 0, 0, 1 % m)
    full = []
    for g in gens:
        full.append(g)
        full.append(_inv_raw(g, m))
    full = list(dict.fromkeys(full))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in full:
            y = _mul_raw(x, g, m)
            if y not in seen:
                if len(seen) >= cap:
                    raise EnumerationTooLargeError(len(seen) + 1, cap)
                seen.add(y)
                queue.append(y)
    return seen


def _span_add(basis: list[list[int]], vec: list[int], l: int) -> None:
    """Reduce vec against an echelonized F_l basis; append if independent."""
    for bv in basis:
        piv = next(i for i, x in enumerate(bv) if x)
        if vec[piv]:
            factor = vec[piv] * pow(bv[piv], -1, l) % l
            vec = [(v - factor * b) % l for v, b in zip(vec, bv)]
    if any(vec):
        basis.append(vec)


def lattice_index(G: AdicGroup, T: LatticeBasis, k: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Index of the precision-k image of G inside GL2(Z/l^k)."""
    gens = _checked_conjugates(G, T, k)
    order = subgroup_order_prime_power(gens, G.prime, k, cap)
    total = gl2_order(G.prime ** k)
    assert total % order == 0
    return total // order


@dataclass(frozen=True)
class IndexReport:
    index_T: int
    index_Tprime: int
    precision: int

    @property
    def equal(self) -> bool:
        return self.index_T == self.index_Tprime


def verify_index_equality(G: AdicGroup, T: LatticeBasis, Tprime: LatticeBasis,
                          k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> IndexReport:
    gens_t = _checked_conjugates(G, T, k, "first lattice")
    gens_t2 = _checked_conjugates(G, Tprime, k, "second lattice")
    total = gl2_order(G.prime ** k)
    idx_t = total // subgroup_order_prime_power(gens_t, G.prime, k, cap)
    idx_t2 = total // subgroup_order_prime_power(gens_t2, G.prime, k, cap)
    return IndexReport(idx_t, idx_t2, k)


# ---------------------------------------------------------------------------
# Bundled scenario family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeScenario:
    ident: str
    group: AdicGroup
    lattice: LatticeBasis
    lattice2: LatticeBasis
    precisions: tuple[int, ...]

    @property
    def prime(self) -> int:
        return self.lattice.prime


@dataclass(frozen=True)
class ScenarioResult:
    scenario: LatticeScenario
    reports: tuple[IndexReport, ...]

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.reports)

    @property
    def stable(self) -> bool:
        """Once two consecutive precisions agree, all later ones agree too."""
        vals = [r.index_T for r in sorted(self.reports, key=lambda r: r.precision)]
        settled = False
        for prev, cur in zip(vals, vals[1:]):
            if settled and cur != prev:
                return False
            if cur == prev:
                settled = True
        return True


def run_scenario(sc: LatticeScenario,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> ScenarioResult:
    reports = tuple(
        verify_index_equality(sc.group, sc.lattice, sc.lattice2, k, cap)
        for k in sc.precisions)
    return ScenarioResult(sc, reports)


def _primitive_root_sq(l: int) -> int:
    """A generator of the units mod l**2 (l odd)."""
    target = l * (l - 1)
    for g in range(2, l * l):
        if math.gcd(g, l) != 1:
            continue
        x, order = g % (l * l), 1
        while x != 1:
            x = x * g % (l * l)
            order += 1
        if order == target:
            return g
    raise AssertionError(f"no primitive root mod {l}**2")


def _unit_gens(l: int) -> list[int]:
    # generate (Z/l^j)^x for every j: {3, 5} works for l = 2,
    # a primitive root mod l^2 works for odd l
    return [3, 5] if l == 2 else [_primitive_root_sq(l)]


def _kernel_gens(l: int, level: int) -> list[RatMat]:
    out = []
    for pos in range(4):
        e = [1, 0, 0, 1]
        e[pos] += level
        out.append(rat_mat(e))
    # the four elementary matrices alone miss half of the mod-2 kernel
    out.append(rat_mat((1, level, level, 1)))
    return out


def _diag_unit_gens(l: int) -> list[RatMat]:
    return [rat_mat((u, 0, 0, 1)) for u in _unit_gens(l)] + \
           [rat_mat((1, 0, 0, u)) for u in _unit_gens(l)]


def _borel_group(l: int, depth: int) -> AdicGroup:
    """All l-integral matrices with lower-left entry divisible by l**depth."""
    gens = _diag_unit_gens(l) + \
        [rat_mat((1, 1, 0, 1)), rat_mat((1, 0, l ** depth, 1))]
    return AdicGroup(l, tuple(gens), note=f"borel type, depth {depth}")


def _split_cartan_group(l: int, s: int, t: int) -> AdicGroup:
    """Diagonal-plus-congruence: b == 0 mod l**t, c == 0 mod l**s."""
    gens = _diag_unit_gens(l) + [
        rat_mat((1, l ** t, 0, 1)), rat_mat((1, 0, l ** s, 1)),
    ]
    return AdicGroup(l, tuple(gens), note=f"split-cartan type, depths ({s},{t})")


def _unipotent_group(l: int, level: int) -> AdicGroup:
    """Preimage of the unipotent upper-triangular group mod `level`."""
    gens = _kernel_gens(l, level) + [rat_mat((1, 1, 0, 1))]
    return AdicGroup(l, tuple(gens), note=f"unipotent preimage at level {level}")


_SIGMA_TYPES = ("diag_1_l", "scalar_l", "diag_1_lsq")

# lattice-change exponent e: sigma multiplies the second basis vector by l**e
_SIGMA_EXP = {"diag_1_l": 1, "scalar_l": 0, "diag_1_lsq": 2}


def _sigma(l: int, stype: str) -> RatMat:
    if stype == "diag_1_l":
        return rat_mat((1, 0, 0, l))
    if stype == "scalar_l":
        return rat_mat((l, 0, 0, l))
    if stype == "diag_1_lsq":
        return rat_mat((1, 0, 0, l * l))
    raise LatticeError(f"unknown lattice-change type {stype!r}")


def _compatible_group(l: int, gtype: str, stype: str) -> AdicGroup:
    """A group of the requested type stabilizing both the standard lattice
    and its sigma-transform, with matching index shadows at every precision.

    Conjugation by diag(1, l**e) deepens the upper-right congruence by e and
    shallows the lower-left one by e, so the depths are chosen to transpose
    into each other.
    """
    e = _SIGMA_EXP[stype]
    if gtype == "borel":
        return _borel_group(l, depth=max(1, e))
    if gtype == "split_cartan":
        return _split_cartan_group(l, s=1 + e, t=1)
    if gtype == "unipotent":
        return _unipotent_group(l, level=l ** max(1, e))
    raise LatticeError(f"unknown group type {gtype!r}")


def expected_index(l: int, gtype: str, stype: str, k: int) -> int:
    """Closed-form index of the bundled scenario groups at precision k."""
    e = _SIGMA_EXP[stype]
    if gtype == "borel":
        m = min(max(1, e), k)
        return l ** (m - 1) * (l + 1)
    if gtype == "split_cartan":
        s, t = 1 + e, 1
        return l ** (min(s, k) + min(t, k) - 1) * (l + 1)
    if gtype == "unipotent":
        m = min(max(1, e), k)
        return l ** (3 * m - 3) * (l - 1) ** 2 * (l + 1)
    raise LatticeError(f"unknown group type {gtype!r}")


def bundled_scenarios(primes: Sequence[int] = (2, 3, 5),
                      precisions: Sequence[int] = (1, 2, 3)) -> list[LatticeScenario]:
    """The shipped family: all group types against all lattice changes."""
    out = []
    for l in primes:
        std = LatticeBasis.standard(l)
        for stype in _SIGMA_TYPES:
            t2 = std.transformed(_sigma(l, stype))
            for gtype in ("borel", "split_cartan", "unipotent"):
                out.append(LatticeScenario(
                    ident=f"{gtype}-l{l}-{stype}",
                    group=_compatible_group(l, gtype, stype),
                    lattice=std,
                    lattice2=t2,
                    precisions=tuple(precisions),
                ))
    return out


# ---------------------------------------------------------------------------
# Scenario files
# ---------------------------------------------------------------------------

def parse_rational_matrix(text: str) -> RatMat:
    """Parse "a,b;c,d" with entries like "3" or "p/q" into exact rationals."""
    rows = text.strip().split(";")
    if len(rows) != 2:
        raise LatticeError(f"expected two rows 'a,b;c,d', got {text!r}")
    entries = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise LatticeError(f"expected two entries per row in {text!r}")
        for p in parts:
            try:
                entries.append(Fraction(p.strip()))
            except (ValueError, ZeroDivisionError):
                raise LatticeError(f"bad rational entry {p.strip()!r}") from None
    return tuple(entries)


def parse_scenarios(text: str) -> list[LatticeScenario]:
    """Parse the scenario-file format (see README for the grammar)."""
    scenarios = []
    current: dict | None = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if word == "scenario":
                if current is not None:
                    raise LatticeError("previous scenario not closed with 'end'")
                current = {"ident": rest, "gens": [], "precisions": None,
                           "prime": None, "lattice": None, "lattice2": None}
            elif current is None:
                raise LatticeError(f"directive {word!r} outside a scenario")
            elif word == "prime":
                current["prime"] = int(rest)
            elif word == "precisions":
                current["precisions"] = tuple(int(t) for t in rest.split())
            elif word == "generator":
                current["gens"].append(parse_rational_matrix(rest))
            elif word == "lattice":
                current["lattice"] = parse_rational_matrix(rest)
            elif word == "lattice2":
                current["lattice2"] = parse_rational_matrix(rest)
            elif word == "end":
                scenarios.append(_finish_scenario(current))
                current = None
            else:
                raise LatticeError(f"unknown directive {word!r}")
        except (ValueError, LatticeError) as exc:
            raise LatticeError(f"line {lineno}: {exc}") from None
    if current is not None:
        raise LatticeError("unterminated scenario at end of file")
    return scenarios


def _finish_scenario(data: dict) -> LatticeScenario:
    for key in ("prime", "lattice", "lattice2", "precisions"):
        if data[key] is None:
            raise LatticeError(f"scenario {data['ident']!r} is missing '{key}'")
    if not data["gens"]:
        raise LatticeError(f"scenario {data['ident']!r} has no generators")
    l = data["prime"]
    return LatticeScenario(
        ident=data["ident"],
        group=AdicGroup(l, tuple(data["gens"])),
        lattice=LatticeBasis(l, data["lattice"]),
        lattice2=LatticeBasis(l, data["lattice2"]),
        precisions=data["precisions"],
    )


def format_scenarios(scenarios: Sequence[LatticeScenario]) -> str:
    lines = []
    for sc in scenarios:
        lines.append(f"scenario {sc.ident}")
        lines.append(f"prime {sc.prime}")
        lines.append("precisions " + " ".join(str(k) for k in sc.precisions))
        for g in sc.group.generators:
            lines.append(f"generator {_fmt_rat(g)}")
        lines.append(f"lattice {_fmt_rat(sc.lattice.basis)}")
        lines.append(f"lattice2 {_fmt_rat(sc.lattice2.basis)}")
        lines.append("end")
        lines.append("")
    return "\n".join(lines)
