"""Vertices, faces and automorphisms of the binary n-cube.

Vertices of Q_n are integers 0 .. 2^n - 1.  Coordinate 1 is the most
significant of the n bits, so the word x1 x2 ... xn is the integer
sum(x_i << (n - i)).  Words compare in plain integer order, which is the
lexicographic order on bit strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

__all__ = [
    "weight",
    "bit",
    "basis_vector",
    "all_vertices",
    "neighbors",
    "dominated_by",
    "hexword",
    "parse_hexword",
    "face_vertices",
    "weight_distribution",
    "distance_distribution",
    "CubeAutomorphism",
    "apply_perm",
    "perm_table",
    "random_automorphism",
]


def weight(v: int) -> int:
    """Hamming weight of a vertex."""
    return v.bit_count()


def bit(v: int, i: int, n: int) -> int:
    """Bit of v at coordinate i (1-based, coordinate 1 = most significant)."""
    return (v >> (n - i)) & 1


def basis_vector(i: int, n: int) -> int:
    """The weight-1 word with a one at coordinate i (1-based)."""
    return 1 << (n - i)


def all_vertices(n: int) -> range:
    return range(1 << n)


def neighbors(v: int, n: int) -> List[int]:
    """The n words at Hamming distance 1 from v, in increasing order."""
    return sorted(v ^ (1 << k) for k in range(n))


def dominated_by(t: int, s: int) -> bool:
    """True if every one of t is also a one of s (t is a subword of s)."""
    return t | s == s


def hexword(v: int, n: int) -> str:
    """Render a vertex as ceil(n/4) lowercase hex digits."""
    return format(v, "0{}x".format((n + 3) // 4))


def parse_hexword(s: str, n: int) -> int:
    v = int(s, 16)
    if not 0 <= v < (1 << n):
        raise ValueError(f"word {s!r} out of range for n={n}")
    return v


def face_vertices(mask: int, base: int) -> List[int]:
    """Vertices of the face {base + t : t dominated by mask}, increasing order.

    mask selects the free coordinates; base fixes the rest (its bits inside
    mask are ignored so equal faces get equal vertex lists).
    """
    base &= ~mask
    free = [1 << k for k in range(mask.bit_length()) if mask >> k & 1]
    out = []
    for pick in range(1 << len(free)):
        t = 0
        for j, b in enumerate(free):
            if pick >> j & 1:
                t |= b
        out.append(base ^ t)
    return sorted(out)


def weight_distribution(vertices: Iterable[int], n: int) -> List[int]:
    """Counts of members by Hamming weight, indexed 0..n."""
    dist = [0] * (n + 1)
    for v in vertices:
        dist[v.bit_count()] += 1
    return dist


def distance_distribution(vertices: Sequence[int], n: int) -> List[int]:
    """Number of ordered pairs of members at each Hamming distance 0..n."""
    dist = [0] * (n + 1)
    for x in vertices:
        for y in vertices:
            dist[(x ^ y).bit_count()] += 1
    return dist


def apply_perm(perm: Sequence[int], v: int, n: int) -> int:
    """Move the bit at coordinate i+1 to coordinate perm[i]+1 (0-based perm)."""
    out = 0
    for i in range(n):
        if v >> (n - 1 - i) & 1:
            out |= 1 << (n - 1 - perm[i])
    return out


def perm_table(perm: Sequence[int], n: int) -> List[int]:
    """Lookup table of apply_perm over all 2^n words."""
    table = [0] * (1 << n)
    for i in range(n):
        src = 1 << (n - 1 - i)
        dst = 1 << (n - 1 - perm[i])
        for v in range(1 << n):
            if v & src:
                table[v] |= dst
    return table


@dataclass(frozen=True)
class CubeAutomorphism:
    """An automorphism x -> perm(x) + shift of Q_n.

    perm is a 0-based coordinate permutation (coordinate i+1 maps to
    coordinate perm[i]+1) applied before the xor with shift.
    """

    n: int
    perm: Tuple[int, ...]
    shift: int

    def apply(self, v: int) -> int:
        return apply_perm(self.perm, v, self.n) ^ self.shift

    def apply_set(self, vertices: Iterable[int]) -> List[int]:
        return sorted(self.apply(v) for v in vertices)

    def compose(self, other: "CubeAutomorphism") -> "CubeAutomorphism":
        """The map x -> self(other(x))."""
        if self.n != other.n:
            raise ValueError("mismatched dimensions")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        shift = self.shift ^ apply_perm(self.perm, other.shift, self.n)
        return CubeAutomorphism(self.n, perm, shift)

    def inverse(self) -> "CubeAutomorphism":
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        return CubeAutomorphism(
            self.n, tuple(inv), apply_perm(inv, self.shift, self.n)
        )

    @staticmethod
    def identity(n: int) -> "CubeAutomorphism":
        return CubeAutomorphism(n, tuple(range(n)), 0)


def random_automorphism(n: int, rng) -> CubeAutomorphism:
    perm = list(range(n))
    rng.shuffle(perm)
    return CubeAutomorphism(n, tuple(perm), rng.randrange(1 << n))
