"""Admissibility screens for putative 2x2 quotient matrices.

Rules: (A) rows sum to n with b, c > 0; (B) (b+c)/gcd(b,c) is a power of
two; (C) a - c >= -n/3 when b != c; DIV3: at the correlation-immunity
bound, 3 must divide b/gcd(b,c) or c/gcd(b,c); BF: cells meet the
Bierbrauer-Friedman row-count bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

__all__ = [
    "Matrix2",
    "check_conditions_abc",
    "attains_ci_bound",
    "divisibility_condition",
    "bierbrauer_min_N",
    "screen",
    "ScreenVerdict",
    "normalize_matrix",
]

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]


def _unpack(matrix: Sequence[Sequence[int]]) -> Tuple[int, int, int, int, int]:
    (a, b), (c, d) = matrix
    return a, b, c, d, a + b


def normalize_matrix(matrix: Sequence[Sequence[int]]) -> Matrix2:
    """Report orientation with b >= c (swap the two cells if needed)."""
    (a, b), (c, d) = matrix
    if b < c:
        a, b, c, d = d, c, b, a
    return ((a, b), (c, d))


def check_conditions_abc(matrix: Sequence[Sequence[int]]) -> Dict[str, bool]:
    a, b, c, d, n = _unpack(matrix)
    rule_a = a + b == c + d and b > 0 and c > 0
    rule_b = False
    if b > 0 and c > 0:
        q = (b + c) // gcd(b, c)
        rule_b = q & (q - 1) == 0
    rule_c = True
    if b != c:
        rule_c = 3 * (a - c) >= -n
    return {"A": rule_a, "B": rule_b, "C": rule_c}


def attains_ci_bound(matrix: Sequence[Sequence[int]]) -> bool:
    """True iff b != c and a - c = -n/3 (equivalently b + c = 4n/3)."""
    a, b, c, d, n = _unpack(matrix)
    return b != c and n % 3 == 0 and 3 * (a - c) == -n


def divisibility_condition(matrix: Sequence[Sequence[int]]) -> bool:
    if not attains_ci_bound(matrix):
        raise ValueError("matrix does not attain the correlation-immunity bound")
    (a, b), (c, d) = matrix
    g = gcd(b, c)
    return (b // g) % 3 == 0 or (c // g) % 3 == 0


def bierbrauer_min_N(n: int, q: int, t: int) -> Fraction:
    """Lower bound q^n * (1 - (q-1)n / (q(t+1))) on orthogonal-array size."""
    if q < 2 or not 0 <= t < n:
        raise ValueError("need q >= 2 and 0 <= t < n")
    return Fraction(q) ** n * (1 - Fraction((q - 1) * n, q * (t + 1)))


@dataclass(frozen=True)
class ScreenVerdict:
    matrix: Matrix2  # normalized with b >= c
    rules: Dict[str, bool]  # keys A, B, C, DIV3, BF
    attains_bound: bool

    @property
    def passed(self) -> bool:
        return all(self.rules.values())


def screen(matrix: Sequence[Sequence[int]]) -> ScreenVerdict:
    """Combined admissibility verdict for a 2x2 quotient matrix."""
    a, b, c, d, n = _unpack(matrix)
    rules = check_conditions_abc(matrix)
    attains = attains_ci_bound(matrix)
    rules["DIV3"] = divisibility_condition(matrix) if attains else True
    rules["BF"] = True
    if attains and rules["A"] and rules["B"]:
        t = 2 * n // 3 - 1
        bound = bierbrauer_min_N(n, 2, t)
        sizes = [Fraction(c << n, b + c), Fraction(b << n, b + c)]
        rules["BF"] = all(size >= bound for size in sizes)
    return ScreenVerdict(normalize_matrix(matrix), rules, attains)
