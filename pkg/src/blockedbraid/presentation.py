"""Finite presentations, HLT coset enumeration, and the candidate quotients
B_n / <<P_n Q_n>> that surject onto the blocked-braid groups.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import UnsupportedStrandCount, WrongTable
from .words import BraidWord, StrandMismatch, reduce_letters

CANDIDATE_CAVEAT = (
    "distinct only in the candidate quotient B_n/<<P_n Q_n>>; "
    "equality in BB_n is not excluded"
)


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.ngens))
        rels = tuple(reduce_letters(r) for r in self.relators)
        for r in rels:
            if any(x == 0 or abs(x) > self.ngens for x in r):
                raise ValueError(f"relator {r} uses a letter outside 1..{self.ngens}")
        object.__setattr__(self, "relators", rels)

    def format_word(self, w: Sequence[int]) -> str:
        return " ".join(self.names[x - 1] if x > 0 else self.names[-x - 1].upper() for x in w)

    def __str__(self) -> str:
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"gens: {' '.join(self.names)} ; rels: {rels}"


def _default_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"g{i}" for i in range(1, k + 1))


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a b ; rels: a b a B A B, a b b a``; uppercase means inverse."""
    head, sep, tail = text.partition(";")
    head, tail = head.strip(), tail.strip()
    if not sep or not head.startswith("gens:") or not tail.startswith("rels:"):
        raise ValueError("expected 'gens: ... ; rels: ...'")
    names = tuple(head[len("gens:"):].split())
    if any(not n.islower() for n in names) or len(set(names)) != len(names):
        raise ValueError(f"generator names must be distinct lowercase: {names}")
    lookup = {n: i for i, n in enumerate(names, 1)} | {n.upper(): -i for i, n in enumerate(names, 1)}
    relators = []
    for chunk in tail[len("rels:"):].split(","):
        word = []
        for token in chunk.split():
            if token in lookup:
                word.append(lookup[token])
            elif all(ch in lookup for ch in token):
                word.extend(lookup[ch] for ch in token)
            else:
                raise ValueError(f"unknown generator in {token!r}")
        if word:
            relators.append(tuple(word))
    return Presentation(len(names), tuple(relators), names)


# ---------------------------------------------------------------------------
# coset tables


def _col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """Coset table of the trivial subgroup, cosets numbered from 1.

    ``rows[c-1][2*(g-1)]`` is coset c times generator g, and the next column is
    the inverse.  An exhausted enumeration has ``complete = False`` and no rows.
    """

    ngens: int
    complete: bool
    limit: int
    rows: tuple[tuple[int, ...], ...] = ()
    defined: int = 0

    @property
    def order(self) -> int | None:
        return len(self.rows) if self.complete else None

    @property
    def status(self) -> str:
        return f"Complete({self.order})" if self.complete else f"Exhausted({self.limit})"

    def trace(self, word: Sequence[int] | BraidWord, start: int = 1) -> int:
        if not self.complete:
            raise ValueError("cannot trace words in an exhausted table")
        letters = word.letters if isinstance(word, BraidWord) else word
        c = start
        for x in letters:
            c = self.rows[c - 1][_col(x)]
        return c

    def to_text(self) -> str:
        lines = [f"order {len(self.rows)}", f"gens {self.ngens}"]
        lines += [" ".join(map(str, row)) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CosetTable:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        order = int(lines[0].split()[1])
        ngens = int(lines[1].split()[1])
        rows = tuple(tuple(map(int, ln.split())) for ln in lines[2:])
        if len(rows) != order or any(len(r) != 2 * ngens for r in rows):
            raise ValueError("malformed coset table text")
        return cls(ngens, True, order, rows, order)


class _Exhausted(Exception):
    pass


class _Enumerator:
    """HLT enumeration with union-find coincidence processing."""

    def __init__(self, p: Presentation, limit: int):
        self.ncols = 2 * p.ngens
        self.rels = [[_col(x) for x in r] for r in p.relators]
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.queue: list[int] = []

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise _Exhausted
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def merge(self, k: int, l: int) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        self.queue = []
        self.merge(a, b)
        i = 0
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] is not None:
                    self.merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    self.merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(self, alpha: int, rel: list[int]) -> None:
        table = self.table
        f, b = alpha, alpha
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and table[f][rel[i]] is not None:
                f = table[f][rel[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and table[b][rel[j] ^ 1] is not None:
                b = table[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i] ^ 1] = f
                return
            self.define(f, rel[i])

    def run(self) -> None:
        alpha = 0
        while alpha < len(self.table):
            for rel in self.rels:
                if self.parent[alpha] != alpha:
                    break
                self.scan_and_fill(alpha, rel)
            if self.parent[alpha] == alpha:
                for x in range(self.ncols):
                    if self.table[alpha][x] is None:
                        self.define(alpha, x)
            alpha += 1

    def standardized(self) -> tuple[tuple[int, ...], ...]:
        """Live cosets renumbered in breadth-first order from coset 1."""
        order = {0: 1}
        bfs = deque([0])
        seq = []
        while bfs:
            c = bfs.popleft()
            seq.append(c)
            for x in range(self.ncols):
                d = self.table[c][x]
                if d not in order:
                    order[d] = len(order) + 1
                    bfs.append(d)
        return tuple(tuple(order[self.table[c][x]] for x in range(self.ncols)) for c in seq)


def todd_coxeter(p: Presentation, max_cosets: int = 100_000) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; the table is standardized."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    en = _Enumerator(p, max_cosets)
    try:
        en.run()
    except _Exhausted:
        return CosetTable(p.ngens, False, max_cosets, (), len(en.table))
    table = CosetTable(p.ngens, True, max_cosets, en.standardized(), len(en.table))
    check_table(p, table)
    return table


def check_table(p: Presentation, table: CosetTable) -> None:
    """Every column a permutation, every relator closed at every coset."""
    n = len(table.rows)
    for x in range(2 * p.ngens):
        col = [row[x] for row in table.rows]
        if sorted(col) != list(range(1, n + 1)):
            raise AssertionError(f"column {x} is not a permutation")
        for c in range(1, n + 1):
            if table.rows[col[c - 1] - 1][x ^ 1] != c:
                raise AssertionError(f"column {x} and its inverse disagree at coset {c}")
    for rel in p.relators:
        for c in range(1, n + 1):
            if table.trace(rel, c) != c:
                raise AssertionError(f"relator {p.format_word(rel)} fails at coset {c}")


def word_problem(table: CosetTable, w: Sequence[int] | BraidWord) -> int:
    """Coset reached from coset 1; equal words reach equal cosets."""
    return table.trace(w)


# ---------------------------------------------------------------------------
# candidate quotients of B_n


def bb_candidate_presentation(n: int) -> Presentation:
    """Braid relators on s_1..s_{n-1} plus s_1 ... s_{n-1} s_{n-1} ... s_1."""
    if n < 2:
        raise ValueError("candidate presentation needs n >= 2")
    g = n - 1
    rels: list[tuple[int, ...]] = []
    for i in range(1, g + 1):
        for j in range(i + 2, g + 1):
            rels.append((i, j, -i, -j))
    for i in range(1, g):
        rels.append((i, i + 1, i, -(i + 1), -i, -(i + 1)))
    rels.append(tuple(range(1, g + 1)) + tuple(range(g, 0, -1)))
    return Presentation(g, tuple(rels))


@lru_cache(maxsize=None)
def candidate_table(n: int) -> CosetTable:
    if n not in (2, 3):
        raise UnsupportedStrandCount(f"candidate table only for n in (2, 3), got {n}")
    table = todd_coxeter(bb_candidate_presentation(n), 1000)
    if not table.complete:
        raise AssertionError(f"candidate enumeration for n={n} did not close")
    return table


def element_order(table: CosetTable, w: Sequence[int], cap: int = 10_000) -> int:
    c = table.trace(w)
    k = 1
    while c != 1:
        c = table.trace(w, c)
        k += 1
        if k > cap:
            raise ValueError("element order exceeds cap")
    return k


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str = ""


def structure_report(table: CosetTable) -> list[Claim]:
    """Checks on the order-12 group with a = s1, b = s2 and c = a b^-1."""
    if not table.complete or table.order != 12 or table.ngens != 2:
        raise WrongTable(f"expected a complete 2-generator table of order 12, got {table.status}")
    a, b, A, B = (1,), (2,), (-1,), (-2,)
    c = (1, -2)
    c_inv = (2, -1)
    tr = table.trace
    oa, ob, oc = element_order(table, a), element_order(table, b), element_order(table, c)
    subgroup = {tr(()), tr(c), tr(c + c)}
    normal = all(tr(g_inv + h + g) in subgroup for g, g_inv in ((a, A), (b, B)) for h in ((), c, c + c))
    powers_a = {tr(a * k) for k in range(4)}
    products = {table.trace(a * k, tr(c * j)) for j in range(3) for k in range(4)}
    return [
        Claim("order(a)=4", oa == 4, f"order {oa}"),
        Claim("order(b)=4", ob == 4, f"order {ob}"),
        Claim("order(ab^-1)=3", oc == 3, f"order {oc}"),
        Claim("a^-1ca=c^-1", tr(A + c + a) == tr(c_inv)),
        Claim("<c>-normal", normal and len(subgroup) == 3),
        Claim("Z3xZ4-semidirect", len(products) == 12 and powers_a & subgroup == {1}),
    ]


@dataclass(frozen=True)
class QuotientDecision:
    equal: bool
    n: int
    coset1: int
    coset2: int

    @property
    def label(self) -> str:
        return "Equal" if self.equal else "DistinctInCandidate"

    @property
    def caveat(self) -> str:
        return "" if self.equal else CANDIDATE_CAVEAT


def bb3_decide(w1: BraidWord, w2: BraidWord) -> QuotientDecision:
    """Compare two words in the cached candidate quotient for n = 2 or 3.

    ``Equal`` holds in BB_n too, since the quotient surjects onto it; the other
    outcome says nothing about BB_n.
    """
    if w1.strands != w2.strands:
        raise StrandMismatch(w1.strands, w2.strands)
    if w1.strands not in (2, 3):
        raise UnsupportedStrandCount(f"bb3_decide handles n = 2, 3, got {w1.strands}")
    table = candidate_table(w1.strands)
    c1, c2 = table.trace(w1), table.trace(w2)
    return QuotientDecision(c1 == c2, w1.strands, c1, c2)
