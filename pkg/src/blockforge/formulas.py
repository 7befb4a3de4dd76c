"""Closed-form block invariants as exact rationals.

Every function takes plain integers and returns a ``Fraction``; callers floor
or assert integrality as appropriate.  Negative powers of p (e.g. p^(2l-m-1))
are legitimate and handled exactly.
"""
from __future__ import annotations

from fractions import Fraction


def ppow(p: int, k: int) -> Fraction:
    return Fraction(p) ** k


def k_lower(p: int, m: int, n: int, l: int, e: int) -> Fraction:
    """Lower bound on k(B) from the subsection count."""
    return ((ppow(p, l) + ppow(p, l - 1) - ppow(p, 2 * l - m - 1) - 1) / e + e) * ppow(p, n)


def k0_upper(p: int, m: int, n: int, l: int, e: int) -> Fraction:
    return (Fraction(p**l - 1, e) + e) * ppow(p, n)


def weighted_height_sum_upper(p: int, m: int, n: int, l: int, e: int) -> Fraction:
    """Upper bound on sum_i p^(2i) k_i(B)."""
    return (Fraction(p**l - 1, e) + e) * ppow(p, n + m - l)


def height_cutoff(m: int, n: int, l: int) -> int:
    """k_i(B) = 0 for every i above this."""
    return min(2 * (m - l), (m + n - 1) // 2)


def k_upper(p: int, m: int, n: int, l: int, e: int) -> Fraction:
    return (Fraction(p**l - 1, e) + e) * (ppow(p, n + m - l - 2) + ppow(p, n) - ppow(p, n - 2))


def k1_upper_general(p: int, m: int, n: int, l: int, e: int) -> Fraction:
    """k_1 bound obtained when k_0 is maximal and all remaining characters have height 1."""
    return (Fraction(p**l - 1, e) + e) * (ppow(p, n + m - l - 2) - ppow(p, n - 2))


def class_number(p: int, m: int, n: int, l: int) -> int:
    """k(D) for the split metacyclic group."""
    return p ** (n - m + 2 * l - 1) * (p ** (m - l + 1) + p ** (m - l) - 1)


def k_minus_l_cyclic_maximal(p: int, m: int, e: int) -> Fraction:
    """k(B) - l(B) when D = M_{p^(m+1)} (n = 1)."""
    return Fraction(p**m + p ** (m - 1) - p ** (m - 2) - p, e) + e * (p - 1)


def k0_lower_cyclic_maximal(p: int, m: int, e: int) -> Fraction:
    return Fraction(p**m - p ** (m - 2) - p + 1, e) + e * (p - 1) + 1


def k1_upper_cyclic_maximal(p: int, m: int, e: int) -> Fraction:
    return Fraction(p ** (m - 1) - 1, e) + e - 1


def owc_top(p: int, m: int, e: int) -> Fraction:
    """w(D, m+1) for D = M_{p^(m+1)}."""
    return (Fraction(p ** (m - 1) - 1, e) + e) * p


def owc_next(p: int, m: int, e: int) -> Fraction:
    """w(D, m) for D = M_{p^(m+1)}."""
    return Fraction(p - 1, e) * p ** (m - 2)


def as_int(value: Fraction, what: str = "value") -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} = {value} is not integral")
    return value.numerator
