"""Named braids, the Artin free-group action used as equality oracle, and the
belt-trick certificate.

Convention: the leftmost letter of a word acts first, both for the free-group
action and for the strand permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CertificateCheckFailed, StrandMismatch
from .words import BraidWord, FreeWord, format_word, parse_braid

# ---------------------------------------------------------------------------
# free-group arithmetic on reduced letter tuples


def _fmul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    k = 0
    m = min(len(u), len(v))
    lu = len(u)
    while k < m and u[lu - 1 - k] == -v[k]:
        k += 1
    return u[: lu - k] + v[k:]


def _finv(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(u))


def _conj(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """a b a^-1"""
    return _fmul(_fmul(a, b), _finv(a))


# ---------------------------------------------------------------------------
# named words


def torsion(n: int) -> BraidWord:
    """T_n = (s1)(s2 s1)...(s_{n-1} ... s1)."""
    letters: list[int] = []
    for top in range(1, n):
        letters.extend(range(top, 0, -1))
    return BraidWord(n, tuple(letters))


def torsion_reversed(n: int) -> BraidWord:
    """(s1 s2 ... s_{n-1})...(s1 s2)(s1), the second expression for T_n."""
    letters: list[int] = []
    for top in range(n - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return BraidWord(n, tuple(letters))


def q_word(n: int, strands: int | None = None) -> BraidWord:
    """Q_n = s_{n-1} ... s_1, optionally embedded in more strands."""
    return BraidWord(strands or n, tuple(range(n - 1, 0, -1)))


def p_word(n: int, strands: int | None = None) -> BraidWord:
    """P_n = s_1 ... s_{n-1}."""
    return BraidWord(strands or n, tuple(range(1, n)))


def descending_inverse(k: int, strands: int | None = None) -> BraidWord:
    """s_{k-1}^-1 ... s_1^-1"""
    return BraidWord(strands or k, tuple(-i for i in range(k - 1, 0, -1)))


# ---------------------------------------------------------------------------
# Artin action


def _act(w: BraidWord) -> tuple[list[tuple[int, ...]], int]:
    n = w.strands
    images = [(j,) for j in range(1, n + 1)]
    peak = 1
    for letter in w.letters:
        i = abs(letter) - 1
        a, b = images[i], images[i + 1]
        if letter > 0:
            images[i], images[i + 1] = _conj(a, b), a
        else:
            images[i], images[i + 1] = b, _conj(_finv(b), a)
        peak = max(peak, len(images[i]), len(images[i + 1]))
    return images, peak


def artin_images(w: BraidWord) -> tuple[FreeWord, ...]:
    """Images of x_1..x_n under the automorphism of w.

    sigma_i sends x_i to x_i x_{i+1} x_i^-1 and x_{i+1} to x_i.
    """
    images, _ = _act(w)
    return tuple(FreeWord(w.strands, img) for img in images)


def oracle_cost(w: BraidWord) -> int:
    """Longest free word seen while evaluating the action of ``w``."""
    return _act(w)[1]


def braid_equal_with_cost(w1: BraidWord, w2: BraidWord) -> tuple[bool, int]:
    if w1.strands != w2.strands:
        raise StrandMismatch(w1.strands, w2.strands)
    im1, c1 = _act(w1)
    im2, c2 = _act(w2)
    return im1 == im2, max(c1, c2)


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Decide equality in B_n through the faithful Artin action."""
    return braid_equal_with_cost(w1, w2)[0]


# ---------------------------------------------------------------------------
# homomorphisms to Sigma_n and Z


@dataclass(frozen=True)
class Permutation:
    """``images[j-1]`` is the final position of the strand starting at ``j``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def __mul__(self, other: Permutation) -> Permutation:
        """``self`` followed by ``other``."""
        return Permutation(tuple(other.images[j - 1] for j in self.images))

    def is_identity(self) -> bool:
        return all(j == k for k, j in enumerate(self.images, 1))

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.images)) + ")"


def permutation(w: BraidWord) -> Permutation:
    position = list(range(w.strands))  # position[p] = strand currently at p
    for letter in w.letters:
        i = abs(letter) - 1
        position[i], position[i + 1] = position[i + 1], position[i]
    images = [0] * w.strands
    for p, strand in enumerate(position, 1):
        images[strand] = p
    return Permutation(tuple(images))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


# ---------------------------------------------------------------------------
# torsion identities


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    k: int
    passed: bool
    cost: int
    i: int | None = None


def torsion_identity_pairs(k: int) -> list[tuple[str, int | None, BraidWord, BraidWord]]:
    """Both sides of each identity about T_k, Q_k and P_k, all on k strands."""
    t, q, p = torsion(k), q_word(k), p_word(k)
    pairs: list[tuple[str, int | None, BraidWord, BraidWord]] = [
        ("other-torsion", None, t, torsion_reversed(k)),
        ("theorem4", None, descending_inverse(k) * q ** (k - 1), q_word(k - 1, k) ** (k - 1)),
    ]
    for i in range(1, k):
        lhs = BraidWord(k, (-i,)) * q ** (k - i)
        rhs = q ** (k - i - 1) * q_word(k - 1, k)
        pairs.append(("theorem4-step", i, lhs, rhs))
    pairs.append(("prop-Q", None, t * t, q**k))
    pairs.append(("prop-P", None, t * t, p**k))
    return pairs


def verify_torsion_identities(k_max: int, k_min: int = 2) -> list[IdentityCheck]:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    results = []
    for k in range(max(2, k_min), k_max + 1):
        for name, i, lhs, rhs in torsion_identity_pairs(k):
            ok, cost = braid_equal_with_cost(lhs, rhs)
            results.append(IdentityCheck(name, k, ok, cost, i))
    return results


# ---------------------------------------------------------------------------
# belt trick


@dataclass(frozen=True)
class TwistCertificate:
    """T_n^4 written as a product of conjugates c (P_n Q_n)^(+-1) c^-1.

    ``factors`` are listed in multiplication order.
    """

    strands: int
    factors: tuple[tuple[BraidWord, int], ...]
    target: BraidWord
    relator: BraidWord = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "relator", p_word(self.strands) * q_word(self.strands))

    def factor_words(self) -> list[BraidWord]:
        return [c * self.relator**e * c**-1 for c, e in self.factors]

    def product(self) -> BraidWord:
        out = BraidWord.identity(self.strands)
        for f in self.factor_words():
            out = out * f
        return out

    def verify(self) -> int:
        """Re-check the certificate; returns the oracle cost or raises."""
        for c, e in self.factors:
            if c.strands != self.strands or e not in (1, -1):
                raise CertificateCheckFailed(f"bad factor ({format_word(c)!r}, {e})")
        ok, cost = braid_equal_with_cost(self.product(), self.target)
        if not ok:
            raise CertificateCheckFailed(
                f"product of {len(self.factors)} factors differs from T_{self.strands}^4"
            )
        return cost

    def to_text(self) -> str:
        parts = [f"[{format_word(c)}]{'+' if e > 0 else '-'}" for c, e in self.factors]
        return ";".join(parts)

    @classmethod
    def from_text(cls, strands: int, text: str) -> TwistCertificate:
        factors = []
        for part in filter(None, text.split(";")):
            word, sign = part[1:-2], part[-1]
            factors.append((parse_braid(word, strands), 1 if sign == "+" else -1))
        return cls(strands, tuple(factors), torsion(strands) ** 4)


def belt_trick_certificate(n: int) -> TwistCertificate:
    """Certificate that T_n^4 lies in the normal closure of P_n Q_n.

    Uses T_n^4 = Q_n^n P_n^n and, since P_n^n is central,
    Q_n^n P_n^n = prod_{k=n..1} Q_n^(k-1) (P_n Q_n) Q_n^-(k-1).
    """
    if n < 2:
        raise ValueError("belt trick certificate needs n >= 2")
    q = q_word(n)
    factors = tuple((q ** (k - 1), 1) for k in range(n, 0, -1))
    cert = TwistCertificate(n, factors, torsion(n) ** 4)
    cert.verify()
    return cert
