"""GF(2) linear algebra on integer bitsets.

A vector over GF(2) is an int whose bit k is the k-th component; a matrix
is a list of such row ints.  Everything is exact and allocation-light.
"""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "gf2_rank",
    "gf2_rref",
    "gf2_nullspace",
    "gf2_span",
    "gf2_in_span",
    "gf2_coset_reduce",
    "gf2_solve",
    "affine_rank",
    "orthogonal_complement",
]


def gf2_rref(rows: Iterable[int]) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form; returns (basis rows, pivot bit positions)."""
    basis: List[int] = []
    pivots: List[int] = []
    for row in rows:
        for b, p in zip(basis, pivots):
            if row >> p & 1:
                row ^= b
        if row:
            p = row.bit_length() - 1
            for k, (b, q) in enumerate(zip(basis, pivots)):
                if b >> p & 1:
                    basis[k] = b ^ row
            basis.append(row)
            pivots.append(p)
    order = sorted(range(len(pivots)), key=lambda k: -pivots[k])
    return [basis[k] for k in order], [pivots[k] for k in order]


def gf2_rank(rows: Iterable[int]) -> int:
    return len(gf2_rref(rows)[0])


def gf2_in_span(v: int, basis: Sequence[int], pivots: Sequence[int]) -> bool:
    """Membership test against an rref basis as returned by gf2_rref."""
    return gf2_coset_reduce(v, basis, pivots) == 0


def gf2_coset_reduce(v: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    """Canonical representative of v modulo the span of an rref basis."""
    for b, p in zip(basis, pivots):
        if v >> p & 1:
            v ^= b
    return v


def gf2_span(basis: Sequence[int]) -> List[int]:
    """All 2^k combinations of the basis rows, in increasing order."""
    span = [0]
    for b in basis:
        span += [v ^ b for v in span]
    return sorted(span)


def _parity_dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def gf2_nullspace(rows: Iterable[int], nbits: int) -> List[int]:
    """Basis of {x : parity(x & row) = 0 for every row}, vectors on nbits bits."""
    basis, pivots = gf2_rref(rows)
    free = [p for p in range(nbits) if p not in pivots]
    out = []
    for f in free:
        v = 1 << f
        for b, p in zip(basis, pivots):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def orthogonal_complement(vectors: Iterable[int], nbits: int) -> List[int]:
    """Alias of gf2_nullspace for sets of words under the parity inner product."""
    return gf2_nullspace(vectors, nbits)


def gf2_solve(
    eq_rows: Sequence[int], rhs: Sequence[int], nvars: int
) -> Tuple[int, Optional[int], List[int]]:
    """Solve the GF(2) system eq_rows . x = rhs over nvars variables.

    Returns (rank, one solution or None if inconsistent, nullspace basis).
    The solution has all free variables set to zero.
    """
    basis: List[int] = []
    pivots: List[int] = []
    rhs_bits: List[int] = []
    inconsistent = False
    for row, r in zip(eq_rows, rhs):
        r &= 1
        for k in range(len(basis)):
            if row >> pivots[k] & 1:
                row ^= basis[k]
                r ^= rhs_bits[k]
        if row:
            p = row.bit_length() - 1
            for k in range(len(basis)):
                if basis[k] >> p & 1:
                    basis[k] ^= row
                    rhs_bits[k] ^= r
            basis.append(row)
            pivots.append(p)
            rhs_bits.append(r)
        elif r:
            inconsistent = True
    rank = len(basis)
    if inconsistent:
        return rank, None, []
    solution = 0
    for p, r in zip(pivots, rhs_bits):
        if r:
            solution |= 1 << p
    null = gf2_nullspace_from_rref(basis, pivots, nvars)
    return rank, solution, null


def gf2_nullspace_from_rref(
    basis: Sequence[int], pivots: Sequence[int], nvars: int
) -> List[int]:
    pivot_set = set(pivots)
    out = []
    for f in range(nvars):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def affine_rank(vertices: Sequence[int]) -> int:
    """Dimension of the affine span of a set of words."""
    it = iter(vertices)
    try:
        x0 = next(it)
    except StopIteration:
        return 0
    return gf2_rank(x ^ x0 for x in it)
