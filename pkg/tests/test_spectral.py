from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from eqcube.cube import all_vertices, face_vertices, random_automorphism, weight
from eqcube.gf2 import gf2_span
from eqcube.spectral import (
    associated_values,
    cell_sizes_for_matrix,
    ci_order,
    composite_edges_per_direction,
    directional_norms,
    eigenfunction_defect,
    indicator_values,
    kernel_of_partition,
    low_weight_fourier_identity,
    quotient_matrix,
    spectrum_support,
    verify_equitable,
    verify_fourier_system,
    wht,
)


def brute_quotient_matrix(cell0, n):
    """Oracle: direct neighbor counting with python sets."""
    c0 = set(cell0)
    rows = [set(), set()]
    for v in all_vertices(n):
        inside = sum((v ^ (1 << k)) in c0 for k in range(n))
        rows[0 if v in c0 else 1].add(inside)
    if any(len(r) != 1 for r in rows):
        return None
    a = rows[0].pop()
    c = rows[1].pop()
    return [[a, n - a], [c, n - c]]


def brute_ci_order(cell0, n):
    """Oracle: balancedness of every t-coordinate projection."""
    members = list(cell0)
    t = 0
    for size in range(1, n + 1):
        for coords in combinations(range(n), size):
            counts = {}
            for v in members:
                key = tuple((v >> (n - 1 - c)) & 1 for c in coords)
                counts[key] = counts.get(key, 0) + 1
            values = set(counts.values())
            if len(counts) < (1 << size) or len(values) != 1:
                return t
        t = size
    return t


def test_wht_basics():
    assert list(wht([1, 1, 1, 1])) == [4, 0, 0, 0]
    # characters transform to a single spike
    n = 4
    for tvec in [0b0011, 0b1000]:
        f = [(-1) ** weight(z & tvec) for z in all_vertices(n)]
        coeffs = wht(f)
        assert coeffs[tvec] == 1 << n and np.count_nonzero(coeffs) == 1


def test_wht_involution_and_parseval():
    rng = random.Random(2)
    for n in (3, 5, 8):
        f = np.array([rng.randrange(-8, 9) for _ in range(1 << n)])
        coeffs = wht(f)
        assert np.array_equal(wht(coeffs), f * (1 << n))
        assert int((coeffs.astype(object) ** 2).sum()) == (
            1 << n
        ) * int((f.astype(object) ** 2).sum())


def test_wht_translation_covariance():
    rng = random.Random(4)
    n = 6
    f = np.array([rng.randrange(-4, 5) for _ in range(1 << n)])
    t = rng.randrange(1 << n)
    shifted = f[np.arange(1 << n) ^ t]
    lhs = wht(shifted)
    coeffs = wht(f)
    signs = np.array([(-1) ** weight(y & t) for y in all_vertices(n)])
    assert np.array_equal(lhs, coeffs * signs)


def test_character_product_law():
    n = 5
    for x, y in [(0b10010, 0b00110), (3, 28)]:
        cx = np.array([(-1) ** weight(z & x) for z in all_vertices(n)])
        cy = np.array([(-1) ** weight(z & y) for z in all_vertices(n)])
        coeffs = wht(cx * cy)
        assert coeffs[x ^ y] == 1 << n and np.count_nonzero(coeffs) == 1


def test_quotient_matrix_q3_antipodal():
    assert quotient_matrix([[0, 7], [1, 2, 3, 4, 5, 6]], 3) == [[0, 3], [1, 2]]


def test_quotient_matrix_against_oracle_small_n():
    rng = random.Random(8)
    for n in (3, 4):
        for _ in range(120):
            size = rng.randrange(1, 1 << n)
            cell0 = sorted(rng.sample(range(1 << n), size))
            cell1 = [v for v in all_vertices(n) if v not in set(cell0)]
            expect = brute_quotient_matrix(cell0, n)
            report = verify_equitable([cell0, cell1], n)
            if expect is None:
                assert not report.equitable and report.witness is not None
            else:
                assert report.equitable and report.matrix == expect


def test_halfspace_is_equitable():
    n = 5
    cell0 = [v for v in all_vertices(n) if v >> (n - 1) == 0]
    cell1 = [v for v in all_vertices(n) if v >> (n - 1) == 1]
    assert quotient_matrix([cell0, cell1], n) == [[4, 1], [1, 4]]
    assert ci_order(wht(indicator_values(cell0, n)), n) == 0
    assert composite_edges_per_direction(cell0, n) == [16, 0, 0, 0, 0]


def test_ci_order_against_projection_oracle():
    rng = random.Random(13)
    for n in (3, 4, 5):
        for _ in range(40):
            size = rng.randrange(1, 1 << n)
            cell0 = sorted(rng.sample(range(1 << n), size))
            spec = wht(indicator_values(cell0, n))
            assert ci_order(spec, n) == brute_ci_order(cell0, n)


def test_ci_order_q3_antipodal_pair():
    assert ci_order(wht(indicator_values([0, 7], 3)), 3) == 1


def test_kernel_q3_antipodal_pair():
    basis = kernel_of_partition([0, 7], 3)
    assert gf2_span(basis) == [0, 7]


def test_kernel_against_brute_force():
    rng = random.Random(17)
    for n in (3, 4, 5):
        for _ in range(30):
            size = rng.randrange(1, 1 << n)
            cell0 = set(rng.sample(range(1 << n), size))
            basis = kernel_of_partition(sorted(cell0), n)
            expect = sorted(
                t for t in all_vertices(n) if {v ^ t for v in cell0} == cell0
            )
            assert gf2_span(basis) == expect


def test_equitable_image_under_automorphism():
    rng = random.Random(19)
    n = 4
    cell0 = [v for v in all_vertices(n) if weight(v) % 2 == 0]
    for _ in range(20):
        g = random_automorphism(n, rng)
        image = g.apply_set(cell0)
        rest = sorted(set(all_vertices(n)) - set(image))
        assert quotient_matrix([image, rest], n) == [[0, 4], [4, 0]]


def test_face_sum_and_low_weight_identity():
    rng = random.Random(23)
    n = 6
    f = [rng.randrange(-5, 6) for _ in range(1 << n)]
    for x in [0, 0b000111, 0b101010, (1 << n) - 1]:
        lhs, rhs = low_weight_fourier_identity(f, n, x)
        assert lhs == rhs
    # constant function: both sides are 2^(2n - wt)
    ones = [1] * (1 << n)
    for x in [0b000011, 0b111000]:
        lhs, rhs = low_weight_fourier_identity(ones, n, x)
        assert lhs == rhs == 1 << (2 * n - weight(x))


def test_eigenfunction_defect_even_weight_partition():
    n = 4
    f = associated_values(
        [v for v in all_vertices(n) if weight(v) % 2 == 0], n, 4, 4
    )
    assert eigenfunction_defect(f, n, n - 8) == 0


def test_directional_norms_constant():
    f = [3] * 16
    assert directional_norms(wht(f), 4) == [48 * 48] * 4


def test_cell_sizes_for_matrix():
    assert cell_sizes_for_matrix([[0, 12], [4, 8]], 12) == [1024, 3072]
    assert cell_sizes_for_matrix([[3, 9], [7, 5]], 12) == [1792, 2304]


def test_verify_fourier_system_small():
    # [[0,4],[4,0]]: even-weight cell of Q4
    n = 4
    cell0 = [v for v in all_vertices(n) if weight(v) % 2 == 0]
    report = verify_fourier_system(cell0, n, [[0, 4], [4, 0]])
    assert all(report.values())


def test_face_sum_zero_on_large_faces():
    # any function with spectrum at a single weight w sums to zero on
    # faces of dimension > n - w
    n = 6
    f = associated_values(
        [v for v in all_vertices(n) if weight(v) % 2 == 0], n, 1, 1
    )
    for mask in [0b111110, 0b011111, 0b111111]:
        for base in (0, 21):
            assert sum(int(f[v]) for v in face_vertices(mask, base)) == 0
