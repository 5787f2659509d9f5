from __future__ import annotations

import random

from eqcube.gf2 import (
    affine_rank,
    gf2_coset_reduce,
    gf2_in_span,
    gf2_nullspace,
    gf2_rank,
    gf2_rref,
    gf2_solve,
    gf2_span,
    orthogonal_complement,
)


def _parity(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def test_rank_basic():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b100, 0b010, 0b110]) == 2
    assert gf2_rank([1, 2, 4, 7]) == 3


def test_rref_membership():
    rows = [0b1011, 0b0110, 0b1101]
    basis, pivots = gf2_rref(rows)
    assert len(basis) == gf2_rank(rows)
    for v in gf2_span(rows):
        assert gf2_in_span(v, basis, pivots)
    assert not gf2_in_span(0b0001, basis, pivots) or 0b0001 in gf2_span(rows)


def test_coset_reduce_is_canonical():
    rng = random.Random(3)
    rows = [rng.randrange(256) for _ in range(4)]
    basis, pivots = gf2_rref(rows)
    span = gf2_span(basis)
    for _ in range(100):
        v = rng.randrange(256)
        r = gf2_coset_reduce(v, basis, pivots)
        assert (v ^ r) in span
        for s in span:
            assert gf2_coset_reduce(v ^ s, basis, pivots) == r


def test_solve_identity_and_zero():
    rank, sol, null = gf2_solve([1 << k for k in range(5)], [1, 0, 1, 0, 0], 5)
    assert rank == 5 and null == [] and sol == 0b00101
    rank, sol, null = gf2_solve([0, 0], [0, 0], 4)
    assert rank == 0 and sol == 0 and len(null) == 4


def test_solve_random_systems_against_check():
    rng = random.Random(11)
    for _ in range(60):
        nvars = rng.randrange(1, 9)
        rows = [rng.randrange(1 << nvars) for _ in range(rng.randrange(1, 10))]
        rhs = [rng.randrange(2) for _ in rows]
        rank, sol, null = gf2_solve(rows, rhs, nvars)
        if sol is None:
            # inconsistent: brute force must find nothing
            assert all(
                any(_parity(r, x) != b for r, b in zip(rows, rhs))
                for x in range(1 << nvars)
            )
        else:
            assert all(_parity(r, sol) == b for r, b in zip(rows, rhs))
            for v in null:
                assert all(_parity(r, v) == 0 for r in rows)
            assert len(null) == nvars - rank
            # solution count matches 2^(free vars)
            count = sum(
                all(_parity(r, x) == b for r, b in zip(rows, rhs))
                for x in range(1 << nvars)
            )
            assert count == 1 << len(null)


def test_nullspace_is_orthogonal_complement():
    rng = random.Random(5)
    for _ in range(30):
        vecs = [rng.randrange(64) for _ in range(4)]
        null = gf2_nullspace(vecs, 6)
        assert orthogonal_complement(vecs, 6) == null
        for v in null:
            assert all(_parity(v, w) == 0 for w in vecs)
        assert len(null) == 6 - gf2_rank(vecs)


def test_affine_rank():
    assert affine_rank([0b0110]) == 0
    assert affine_rank([0, 0b10, 0b01, 0b11]) == 2
    # affine: translation invariance
    rng = random.Random(9)
    pts = [rng.randrange(512) for _ in range(10)]
    t = rng.randrange(512)
    assert affine_rank(pts) == affine_rank([p ^ t for p in pts])
