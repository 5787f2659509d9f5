"""Exact integer Walsh-Hadamard analysis of cube partitions.

All transforms are scaled by 2^n so every quantity stays an integer:
coeffs(y) = sum_z f(z) * (-1)^parity(z & y).  Applying the transform twice
multiplies by 2^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import orthogonal_complement

__all__ = [
    "wht",
    "indicator_values",
    "associated_values",
    "spectrum_of_cell",
    "spectrum_support",
    "ci_order",
    "cell_array",
    "verify_equitable",
    "quotient_matrix",
    "EquitableReport",
    "composite_edges_per_direction",
    "directional_norms",
    "verify_fourier_system",
    "eigenfunction_defect",
    "low_weight_fourier_identity",
    "kernel_of_partition",
    "cell_sizes_for_matrix",
]


def wht(values: Sequence[int]) -> np.ndarray:
    """Integer Walsh-Hadamard transform, coeffs(y) = sum_z f(z)(-1)^(z,y)."""
    out = np.asarray(values, dtype=np.int64).copy()
    size = out.size
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            a = out[start : start + h].copy()
            b = out[start + h : start + 2 * h].copy()
            out[start : start + h] = a + b
            out[start + h : start + 2 * h] = a - b
        h *= 2
    return out


def indicator_values(vertices: Iterable[int], n: int) -> np.ndarray:
    """0/1 membership array over all 2^n words."""
    out = np.zeros(1 << n, dtype=np.int64)
    idx = np.fromiter(vertices, dtype=np.int64)
    if idx.size:
        out[idx] = 1
    return out


def associated_values(cell0: Iterable[int], n: int, b: int, c: int) -> np.ndarray:
    """The function that is b on cell0 and -c elsewhere."""
    out = np.full(1 << n, -c, dtype=np.int64)
    idx = np.fromiter(cell0, dtype=np.int64)
    if idx.size:
        out[idx] = b
    return out


def spectrum_of_cell(cell0: Iterable[int], n: int, b: int, c: int) -> np.ndarray:
    return wht(associated_values(cell0, n, b, c))


def spectrum_support(coeffs: Sequence[int]) -> List[int]:
    """Words with nonzero coefficient, increasing order."""
    arr = np.asarray(coeffs)
    return [int(y) for y in np.nonzero(arr)[0]]


def ci_order(coeffs: Sequence[int], n: int) -> int:
    """Largest t with coeffs vanishing on all weights 1..t (n if all vanish)."""
    arr = np.asarray(coeffs)
    weights = np.array([y.bit_count() for y in range(arr.size)])
    nonzero = weights[np.nonzero(arr)[0]]
    positive = nonzero[nonzero > 0]
    if positive.size == 0:
        return n
    return int(positive.min()) - 1


def cell_array(cells: Sequence[Iterable[int]], n: int) -> np.ndarray:
    """Cell index per vertex; raises if cells do not partition Q_n."""
    out = np.full(1 << n, -1, dtype=np.int8)
    for k, cell in enumerate(cells):
        idx = np.fromiter(cell, dtype=np.int64)
        if idx.size and out[idx].max() >= 0:
            raise ValueError("cells overlap")
        out[idx] = k
    if out.min() < 0:
        raise ValueError("cells do not cover Q_n")
    return out


@dataclass(frozen=True)
class EquitableReport:
    equitable: bool
    matrix: Optional[List[List[int]]]
    witness: Optional[int]  # a vertex with an off-pattern neighborhood


def verify_equitable(cells: Sequence[Iterable[int]], n: int) -> EquitableReport:
    """Check that the partition is equitable and compute its quotient matrix."""
    labels = cell_array(cells, n)
    k = len(cells)
    idx = np.arange(1 << n)
    counts = np.zeros((1 << n, k), dtype=np.int16)
    for i in range(n):
        nb = labels[idx ^ (1 << (n - 1 - i))]
        for c in range(k):
            counts[:, c] += nb == c
    matrix: List[List[int]] = []
    for c in range(k):
        rows = counts[labels == c]
        first = rows[0]
        bad = np.nonzero((rows != first).any(axis=1))[0]
        if bad.size:
            witness = int(idx[labels == c][bad[0]])
            return EquitableReport(False, None, witness)
        matrix.append([int(x) for x in first])
    return EquitableReport(True, matrix, None)


def quotient_matrix(cells: Sequence[Iterable[int]], n: int) -> List[List[int]]:
    report = verify_equitable(cells, n)
    if not report.equitable:
        raise ValueError(f"partition is not equitable (witness {report.witness})")
    assert report.matrix is not None
    return report.matrix


def composite_edges_per_direction(cell0: Iterable[int], n: int) -> List[int]:
    """Edges leaving cell0, counted separately for each of the n directions."""
    inside = indicator_values(cell0, n).astype(bool)
    idx = np.arange(1 << n)
    out = []
    for i in range(n):
        nb = inside[idx ^ (1 << (n - 1 - i))]
        out.append(int(np.count_nonzero(inside & ~nb)))
    return out


def directional_norms(coeffs: Sequence[int], n: int) -> List[int]:
    """For each coordinate i, sum of coeffs(y)^2 over words with y_i = 0."""
    arr = np.asarray(coeffs, dtype=object)
    sq = arr * arr
    idx = np.arange(1 << n)
    out = []
    for i in range(n):
        mask = ((idx >> (n - 1 - i)) & 1) == 0
        out.append(int(sq[mask].sum()))
    return out


def cell_sizes_for_matrix(matrix: Sequence[Sequence[int]], n: int) -> List[int]:
    """Cell sizes forced by a 2x2 quotient matrix [[a,b],[c,d]]."""
    (a, b), (c, d) = matrix
    if a + b != n or c + d != n:
        raise ValueError("rows must sum to n")
    total = (1 << n) * c
    if b + c == 0 or total % (b + c):
        raise ValueError("cell sizes are not integral")
    s0 = total // (b + c)
    return [s0, (1 << n) - s0]


def verify_fourier_system(
    cell0: Sequence[int], n: int, matrix: Sequence[Sequence[int]]
) -> Dict[str, bool]:
    """Exact checks of the three transform identities of the associated function.

    For f = b on cell0 and -c elsewhere with equitable quotient [[a,b],[c,d]]:
    (support) coeffs vanish off weight (b+c)/2 except at 0;
    (convolution) (b-c) * coeffs(x) = wht(f^2)(x) for x != 0;
    (parseval) sum coeffs^2 = b*c*2^(2n);
    (eigen) f is an eigenfunction of the adjacency with eigenvalue n-b-c.
    """
    (a, b), (c, d) = matrix
    f = associated_values(cell0, n, b, c)
    coeffs = wht(f)
    half = b + c
    weights = np.array([y.bit_count() for y in range(1 << n)])
    if half % 2:
        support_ok = bool(np.all(coeffs[weights > 0] == 0))
    else:
        support_ok = bool(
            np.all(coeffs[(weights != half // 2) & (weights > 0)] == 0)
        )
    conv = wht(f * f)
    lhs = (b - c) * coeffs
    convolution_ok = bool(np.all(lhs[1:] == conv[1:]))
    parseval_ok = int((coeffs.astype(object) ** 2).sum()) == b * c << (2 * n)
    eigen_ok = eigenfunction_defect(f, n, n - b - c) == 0
    return {
        "support": support_ok,
        "convolution": convolution_ok,
        "parseval": parseval_ok,
        "eigenfunction": eigen_ok,
    }


def eigenfunction_defect(values: Sequence[int], n: int, eigenvalue: int) -> int:
    """Number of vertices where sum over neighbors differs from eigenvalue*f."""
    arr = np.asarray(values, dtype=np.int64)
    idx = np.arange(1 << n)
    acc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        acc += arr[idx ^ (1 << i)]
    return int(np.count_nonzero(acc != eigenvalue * arr))


def low_weight_fourier_identity(
    values: Sequence[int], n: int, x: int
) -> Tuple[int, int]:
    """Both sides of the subword summation identity, scaled by 2^n.

    Returns (2^(n-wt(x)) * sum_{z subword of x} coeffs(z),
             2^n * sum_{z subword of complement of x} f(z)); the two agree
    for every function f on Q_n.
    """
    arr = np.asarray(values, dtype=np.int64)
    coeffs = wht(arr)
    lhs = sum(int(coeffs[z]) for z in _subwords(x)) << (n - x.bit_count())
    comp = ((1 << n) - 1) ^ x
    rhs = sum(int(arr[z]) for z in _subwords(comp)) << n
    return lhs, rhs


def _subwords(mask: int) -> List[int]:
    out = [0]
    k = 0
    while mask >> k:
        if mask >> k & 1:
            out += [v | (1 << k) for v in out]
        k += 1
    return out


def kernel_of_partition(cell0: Sequence[int], n: int) -> List[int]:
    """Basis of {t : cell0 + t = cell0} (the periods of the partition).

    Equals the orthogonal complement of the support of the indicator
    spectrum, so no explicit set comparison is needed.
    """
    support = spectrum_support(wht(indicator_values(cell0, n)))
    return orthogonal_complement(support, n)
