"""Concrete groups for the tuple representations: finite tables and exact SL_2(Z)."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Protocol, Sequence

from .errors import InvalidDeterminant, TooLarge

MAX_ORDER = 1000


class Group(Protocol):
    name: str

    def mul(self, a, b): ...
    def inv(self, a): ...
    def identity(self): ...
    def is_central(self, a) -> bool: ...
    def format_element(self, a) -> str: ...
    def parse_element(self, text: str): ...


# ---------------------------------------------------------------------------
# SL_2(Z)


@dataclass(frozen=True)
class Mat2Z:
    """[[a, b], [c, d]] with ad - bc = 1; Python ints, so no overflow."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InvalidDeterminant(f"determinant of {self} is not 1")

    def __matmul__(self, other: Mat2Z) -> Mat2Z:
        return mat_mul(self, other)

    def __neg__(self) -> Mat2Z:
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def max_abs(self) -> int:
        return max(map(abs, self.entries()))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    @classmethod
    def parse(cls, text: str) -> Mat2Z:
        nums = re.findall(r"-?\d+", text)
        if len(nums) != 4:
            raise ValueError(f"cannot parse matrix {text!r}")
        return cls(*map(int, nums))


def mat_mul(m: Mat2Z, n: Mat2Z) -> Mat2Z:
    return Mat2Z(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def mat_inv(m: Mat2Z) -> Mat2Z:
    # adjugate; exact because det = 1
    return Mat2Z(m.d, -m.b, -m.c, m.a)


E = Mat2Z(1, 0, 0, 1)
MAT_X = Mat2Z(1, 1, 0, 1)
MAT_Y = Mat2Z(1, 0, 1, 1)
MAT_Z = Mat2Z(1, 0, -1, 1)
MAT_W = Mat2Z(1, -1, 0, 1)


def is_central_sl2(m: Mat2Z) -> bool:
    return m == E or m == -E


class SL2Z:
    name = "sl2"

    def mul(self, a: Mat2Z, b: Mat2Z) -> Mat2Z:
        return mat_mul(a, b)

    def inv(self, a: Mat2Z) -> Mat2Z:
        return mat_inv(a)

    def identity(self) -> Mat2Z:
        return E

    def is_central(self, a: Mat2Z) -> bool:
        return is_central_sl2(a)

    def format_element(self, a: Mat2Z) -> str:
        return str(a)

    def parse_element(self, text: str) -> Mat2Z:
        return Mat2Z.parse(text)

    def __eq__(self, other) -> bool:
        return isinstance(other, SL2Z)

    def __hash__(self) -> int:
        return hash("sl2")

    def __repr__(self) -> str:
        return "SL2Z()"


SL2 = SL2Z()


# ---------------------------------------------------------------------------
# finite groups as tables


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """Elements are the ints ``0..order-1`` in construction order."""

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity_index: int
    inverses: tuple[int, ...]
    center: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def identity(self) -> int:
        return self.identity_index

    def is_central(self, a: int) -> bool:
        return a in self.center

    def format_element(self, a: int) -> str:
        return self.labels[a]

    def parse_element(self, text: str) -> int:
        try:
            return self.labels.index(text)
        except ValueError:
            raise ValueError(f"{text!r} is not an element of {self.name}") from None

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name!r}, order={self.order})"

    @classmethod
    def from_elements(
        cls,
        name: str,
        elements: Sequence[Hashable],
        mul: Callable[[Hashable, Hashable], Hashable],
        label: Callable[[Hashable], str] = str,
    ) -> FiniteGroupTable:
        if len(elements) > MAX_ORDER:
            raise TooLarge(f"{name} has order {len(elements)} > {MAX_ORDER}")
        index = {g: i for i, g in enumerate(elements)}
        table = tuple(tuple(index[mul(g, h)] for h in elements) for g in elements)
        n = len(elements)
        full = set(range(n))
        for row in table:
            if set(row) != full:
                raise ValueError(f"{name}: multiplication table is not a Latin square")
        for j in range(n):
            if {table[i][j] for i in range(n)} != full:
                raise ValueError(f"{name}: multiplication table is not a Latin square")
        ident = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
        inverses = tuple(table[i].index(ident) for i in range(n))
        center = frozenset(
            i for i in range(n) if all(table[i][j] == table[j][i] for j in range(n))
        )
        return cls(name, tuple(label(g) for g in elements), table, ident, inverses, center)


def cyclic(k: int) -> FiniteGroupTable:
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    if k > MAX_ORDER:
        raise TooLarge(f"cyclic({k}) exceeds order {MAX_ORDER}")
    return FiniteGroupTable.from_elements(f"cyc{k}", list(range(k)), lambda a, b: (a + b) % k)


def symmetric(k: int) -> FiniteGroupTable:
    """Sym(k) in ``itertools.permutations`` order; labels are one-line images."""
    if k > 6:
        raise TooLarge(f"symmetric({k}) not supported (k <= 6)")
    perms = list(itertools.permutations(range(1, k + 1)))
    # (p*q)(i) = q(p(i)): p applied first, matching the strand convention
    return FiniteGroupTable.from_elements(
        f"sym{k}",
        perms,
        lambda p, q: tuple(q[i - 1] for i in p),
        lambda p: "".join(map(str, p)) or "()",
    )


_QUAT_UNITS = ("1", "i", "j", "k")
# unit products as (sign, unit) over 1, i, j, k
_QUAT_MUL = {
    ("1", u): (1, u) for u in _QUAT_UNITS
} | {(u, "1"): (1, u) for u in _QUAT_UNITS} | {
    ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
}


def quaternion8() -> FiniteGroupTable:
    elements = [(s, u) for u in _QUAT_UNITS for s in (1, -1)]

    def mul(p, q):
        s, u = _QUAT_MUL[p[1], q[1]]
        return (p[0] * q[0] * s, u)

    return FiniteGroupTable.from_elements(
        "q8", elements, mul, lambda e: ("" if e[0] > 0 else "-") + e[1]
    )


def make_group(spec: str) -> FiniteGroupTable:
    """Build a probe group from ``sym<k>``, ``cyc<k>`` or ``q8``."""
    m = re.fullmatch(r"(sym|cyc)(\d+)|q8", spec)
    if m is None:
        raise ValueError(f"unknown group spec {spec!r}")
    if spec == "q8":
        return quaternion8()
    k = int(m.group(2))
    return symmetric(k) if m.group(1) == "sym" else cyclic(k)


def product(group: Group, items: Iterable):
    out = group.identity()
    for g in items:
        out = group.mul(out, g)
    return out
