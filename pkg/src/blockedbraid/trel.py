"""Tuple representations of blocked braids.

A base tuple stands for the relation R given by its simultaneous conjugacy class.
Braid words act on tuples by the twist (x, y) -> (x y x^-1, x); two blocked braids
are told apart when the images of the base tuple lie in different classes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Sequence

from .braid import permutation, torsion
from .errors import (
    BudgetExceeded,
    InadmissibleBase,
    IndexOutOfRange,
    LengthMismatch,
    StrandMismatch,
)
from .groups import (
    E,
    MAT_W,
    MAT_X,
    MAT_Y,
    MAT_Z,
    SL2,
    FiniteGroupTable,
    Group,
    Mat2Z,
    make_group,
    mat_inv,
    mat_mul,
    product,
)
from .words import BraidWord


@dataclass(frozen=True)
class GTuple:
    group: Any
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def product(self):
        return product(self.group, self.entries)

    @property
    def admissible(self) -> bool:
        return self.group.is_central(self.product())

    def replace(self, entries) -> GTuple:
        return GTuple(self.group, tuple(entries))

    def to_text(self) -> str:
        return ";".join(self.group.format_element(g) for g in self.entries)

    @classmethod
    def from_text(cls, group, text: str) -> GTuple:
        return cls(group, tuple(group.parse_element(s) for s in text.split(";")))


# ---------------------------------------------------------------------------
# the twist action


def _check_index(i: int, t: GTuple) -> None:
    if not 1 <= i <= len(t) - 1:
        raise IndexOutOfRange(i, len(t) - 1)


def twist_at(i: int, t: GTuple) -> GTuple:
    _check_index(i, t)
    g = t.group
    e = list(t.entries)
    a, b = e[i - 1], e[i]
    e[i - 1], e[i] = g.mul(g.mul(a, b), g.inv(a)), a
    return t.replace(e)


def untwist_at(i: int, t: GTuple) -> GTuple:
    _check_index(i, t)
    g = t.group
    e = list(t.entries)
    a, b = e[i - 1], e[i]
    e[i - 1], e[i] = b, g.mul(g.mul(g.inv(b), a), b)
    return t.replace(e)


def hurwitz_act(w: BraidWord, t: GTuple) -> GTuple:
    """Act letter by letter, leftmost first (a right action of B_n)."""
    if w.strands != len(t):
        raise StrandMismatch(w.strands, len(t))
    g = t.group
    mul, inv = g.mul, g.inv
    e = list(t.entries)
    for letter in w.letters:
        i = abs(letter) - 1
        a, b = e[i], e[i + 1]
        if letter > 0:
            e[i], e[i + 1] = mul(mul(a, b), inv(a)), a
        else:
            e[i], e[i + 1] = b, mul(mul(inv(b), a), b)
    return t.replace(e)


# ---------------------------------------------------------------------------
# conjugacy-class invariants


def conjugate(t: GTuple, g) -> GTuple:
    """(g t_1 g^-1, ..., g t_n g^-1)"""
    G = t.group
    gi = G.inv(g)
    return t.replace(G.mul(G.mul(g, x), gi) for x in t.entries)


def orbit_invariant(t: GTuple, budget: int = 10**7) -> tuple[int, ...]:
    """Lexicographically least member of the simultaneous-conjugation orbit."""
    G = t.group
    if not isinstance(G, FiniteGroupTable):
        raise TypeError("orbit_invariant needs a finite group")
    if G.order * max(len(t), 1) > budget:
        raise BudgetExceeded(f"orbit of size {G.order} x {len(t)} exceeds budget {budget}")
    table, inverses = G.table, G.inverses
    best = None
    for g in G.elements():
        row, gi = table[g], inverses[g]
        cand = tuple(table[row[x]][gi] for x in t.entries)
        if best is None or cand < best:
            best = cand
    return best


def _nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            v[pc] = -m[row_i][free]
        basis.append(v)
    return basis


def commutation_system(t1: Sequence[Mat2Z], t2: Sequence[Mat2Z]) -> list[list[int]]:
    """Linear equations in (p, q, r, s) for g = [[p,q],[r,s]] with g A = B g."""
    rows = []
    for A, B in zip(t1, t2):
        a, b, c, d = A.entries()
        ba, bb, bc, bd = B.entries()
        rows += [
            [a - ba, c, -bb, 0],
            [b, d - ba, 0, -bb],
            [-bc, 0, a - bd, c],
            [0, -bc, b, d - bd],
        ]
    return rows


@dataclass(frozen=True)
class ConjugacyAnswer:
    """``status`` is ``yes``, ``no`` or ``unknown``; ``conjugator`` g has g t1 g^-1 = t2."""

    status: str
    dimension: int
    conjugator: Mat2Z | None = None


def sl2_simultaneous_conjugacy(t1: GTuple, t2: GTuple) -> ConjugacyAnswer:
    if len(t1) != len(t2):
        raise LengthMismatch(f"tuple lengths differ: {len(t1)} != {len(t2)}")
    basis = _nullspace(commutation_system(t1.entries, t2.entries), 4)
    dim = len(basis)
    if dim == 0:
        return ConjugacyAnswer("no", 0)
    if dim >= 2:
        return ConjugacyAnswer("unknown", dim)
    v = basis[0]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    p, q, r, s = (x // g for x in ints)
    if p * s - q * r != 1:
        return ConjugacyAnswer("no", 1)
    return ConjugacyAnswer("yes", 1, Mat2Z(p, q, r, s))


# ---------------------------------------------------------------------------
# probes and separation


@dataclass(frozen=True)
class Probe:
    name: str
    base: GTuple

    @property
    def group(self):
        return self.base.group


@dataclass(frozen=True)
class Witness:
    """Enough to re-check a separation from its serialized fields alone."""

    kind: str  # permutation | orbit | sl2
    probe: str
    base: str
    value1: str
    value2: str

    def fields(self) -> dict[str, str]:
        return {
            "witness": self.kind,
            "probe": self.probe,
            "base": self.base,
            "value1": self.value1,
            "value2": self.value2,
        }


@dataclass(frozen=True)
class SeparationVerdict:
    distinct: bool
    witness: Witness | None = None
    probes_run: int = 0
    inconclusive: int = 0

    @property
    def label(self) -> str:
        return "Distinct" if self.distinct else "Indistinguishable"


def _compare(w1: BraidWord, w2: BraidWord, probe: Probe) -> Witness | str | None:
    """A witness, ``"unknown"`` for an undecided SL_2 system, or None."""
    i1 = hurwitz_act(w1, probe.base)
    i2 = hurwitz_act(w2, probe.base)
    G = probe.group
    if isinstance(G, FiniteGroupTable):
        o1, o2 = orbit_invariant(i1), orbit_invariant(i2)
        if o1 == o2:
            return None
        return Witness(
            "orbit", probe.name, probe.base.to_text(),
            i1.replace(o1).to_text(), i2.replace(o2).to_text(),
        )
    ans = sl2_simultaneous_conjugacy(i1, i2)
    if ans.status != "no":
        return "unknown" if ans.status == "unknown" else None
    return Witness("sl2", probe.name, probe.base.to_text(), i1.to_text(), i2.to_text())


def separate_blocked(
    w1: BraidWord, w2: BraidWord, probes: Sequence[Probe] = ()
) -> SeparationVerdict:
    """Try to prove S w1 R != S w2 R; probes are tried in the given order."""
    if w1.strands != w2.strands:
        raise StrandMismatch(w1.strands, w2.strands)
    for probe in probes:
        if len(probe.base) != w1.strands:
            raise StrandMismatch(len(probe.base), w1.strands)
        if not probe.base.admissible:
            raise InadmissibleBase(f"base of probe {probe.name} has non-central product")
    p1, p2 = permutation(w1), permutation(w2)
    if p1 != p2:
        return SeparationVerdict(True, Witness("permutation", "perm", "", str(p1), str(p2)), 1)
    inconclusive = 0
    for k, probe in enumerate(probes, 2):
        wit = _compare(w1, w2, probe)
        if isinstance(wit, Witness):
            return SeparationVerdict(True, wit, k, inconclusive)
        inconclusive += wit == "unknown"
    return SeparationVerdict(False, None, len(probes) + 1, inconclusive)


def check_witness(w1: BraidWord, w2: BraidWord, witness: Witness) -> bool:
    """Recompute a serialized witness; True iff it still separates w1, w2."""
    if witness.kind == "permutation":
        p1, p2 = str(permutation(w1)), str(permutation(w2))
        return p1 != p2 and (p1, p2) == (witness.value1, witness.value2)
    group = SL2 if witness.kind == "sl2" else make_group(witness.probe)
    probe = Probe(witness.probe, GTuple.from_text(group, witness.base))
    if not probe.base.admissible:
        return False
    return _compare(w1, w2, probe) == witness


def random_admissible(group: Group, n: int, rng: random.Random) -> GTuple:
    """n-1 uniform entries, last one closing the product to a random central element."""
    if not isinstance(group, FiniteGroupTable):
        raise TypeError("random_admissible needs a finite group")
    entries = [rng.randrange(group.order) for _ in range(n - 1)]
    z = rng.choice(sorted(group.center))
    last = group.mul(group.inv(product(group, entries)), z)
    return GTuple(group, (*entries, last))


def admissible_tuples(group: FiniteGroupTable, n: int):
    for head in itertools.product(group.elements(), repeat=n - 1):
        closing = group.inv(product(group, head))
        for z in sorted(group.center):
            yield GTuple(group, (*head, group.mul(closing, z)))


def finite_bases(group: FiniteGroupTable, n: int, limit: int = 512, seed: int = 0) -> list[GTuple]:
    """One admissible base per conjugacy class; exhaustive when small, else seeded sample."""
    count = group.order ** (n - 1) * len(group.center)
    if count <= limit:
        candidates = admissible_tuples(group, n)
    else:
        rng = random.Random(seed)
        candidates = (random_admissible(group, n, rng) for _ in range(limit))
    seen: set[tuple[int, ...]] = set()
    bases = []
    for t in candidates:
        key = orbit_invariant(t)
        if key not in seen:
            seen.add(key)
            bases.append(t.replace(key))
    return bases


def sl2_base(n: int) -> GTuple:
    """(x, y, z, w, e, ..., e) on n >= 4 entries."""
    if n < 4:
        raise ValueError("the sl2:xyzw base needs at least 4 strands")
    return GTuple(SL2, (MAT_X, MAT_Y, MAT_Z, MAT_W) + (E,) * (n - 4))


FINITE_PROBES = ("sym3", "q8", "cyc4")


def make_probes(spec: str, n: int) -> list[Probe]:
    """Expand a probe spec (``perm``, ``sym3``, ``q8``, ``cyc<k>``, ``sl2:xyzw``)."""
    if spec == "perm":
        return []
    if spec == "sl2:xyzw":
        return [Probe(spec, sl2_base(n))]
    group = make_group(spec)
    return [Probe(spec, b) for b in finite_bases(group, n)]


def default_probes(n: int, finite: Sequence[str] = FINITE_PROBES, sl2: bool = True) -> list[Probe]:
    probes = [p for spec in finite for p in make_probes(spec, n)]
    if sl2 and n >= 4:
        probes += make_probes("sl2:xyzw", n)
    return probes


# ---------------------------------------------------------------------------
# checks of the SL_2(Z) certificate and the full-twist fixed point


@dataclass
class TowerReport:
    k_max: int
    growth: list[int]
    increasing: bool
    distinct: bool

    @property
    def passed(self) -> bool:
        return self.increasing and self.distinct


def sigma1_tower(k_max: int) -> list[tuple[Mat2Z, Mat2Z]]:
    """Pairs (u_i, v_i) for i = 1..k_max, from (x, y) under (u, v) -> (u v u^-1, u)."""
    u, v = MAT_X, MAT_Y
    out = [(u, v)]
    for _ in range(k_max - 1):
        u, v = mat_mul(mat_mul(u, v), mat_inv(u)), u
        out.append((u, v))
    return out


def sigma1_tower_check(k_max: int) -> TowerReport:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    firsts = [u for u, _ in sigma1_tower(k_max)]
    growth = [m.max_abs() for m in firsts]
    increasing = all(a < b for a, b in zip(growth, growth[1:]))
    distinct = all(a != b for a, b in zip(firsts, firsts[1:]))
    return TowerReport(k_max, growth, increasing, distinct)


@dataclass
class ClassPairCheck:
    k: int
    l: int
    status: str
    dimension: int


def sigma1_class_check(k_max: int = 20, n: int = 4) -> list[ClassPairCheck]:
    """Pairwise conjugacy decisions for the sigma_1^k images of the xyzw base."""
    base = sl2_base(n)
    images = [base]
    s1 = BraidWord(n, (1,))
    for _ in range(k_max):
        images.append(hurwitz_act(s1, images[-1]))
    out = []
    for k, l in itertools.combinations(range(k_max + 1), 2):
        ans = sl2_simultaneous_conjugacy(images[k], images[l])
        out.append(ClassPairCheck(k, l, ans.status, ans.dimension))
    return out


@dataclass
class FixedPointReport:
    n: int
    group: str
    trials: int
    fixed: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.fixed == self.trials


def full_twist_fixedpoint_check(
    n: int, group: FiniteGroupTable, trials: int = 200, seed: int = 0, exhaustive: bool = False
) -> FixedPointReport:
    """The full twist T_n^2 must fix every admissible tuple exactly."""
    if n > 6:
        raise ValueError("full twist check supports n <= 6")
    full = torsion(n) ** 2
    if exhaustive:
        tuples = list(admissible_tuples(group, n))
    else:
        rng = random.Random(seed)
        tuples = [random_admissible(group, n, rng) for _ in range(trials)]
    report = FixedPointReport(n, group.name, len(tuples), 0)
    for t in tuples:
        if hurwitz_act(full, t) == t:
            report.fixed += 1
        else:
            report.failures.append(t.to_text())
    return report

