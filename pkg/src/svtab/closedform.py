"""Closed-form counts: Catalan/Narayana/Kreweras, hook lengths, ballot-like
path counts, and the two-row set-valued tableau counting formulas.

All arithmetic is exact; division-bearing formulas are computed in exact
rationals with integrality asserted before returning an int.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import InconsistentType, OutOfRange, Partition, _as_partition

__all__ = [
    "binom",
    "falling",
    "catalan",
    "narayana",
    "kreweras",
    "hook_count",
    "e_count",
    "f_count",
    "ballot_count",
    "row_sums",
    "act_count",
    "peaks_count",
    "more_shapes_counts",
]


@lru_cache(maxsize=None)
def binom(m: int, j: int) -> int:
    """Binomial coefficient, polynomial in the upper index.

    j < 0 gives 0; otherwise m(m-1)...(m-j+1)/j!, so binom(m, 0) = 1 for every
    m (negative included) and negative upper indexes follow the falling-factorial
    extension.  For m >= 0 this agrees with the usual convention.
    """
    if j < 0:
        return 0
    num = 1
    for a in range(j):
        num *= m - a
    den = 1
    for a in range(2, j + 1):
        den *= a
    assert num % den == 0
    return num // den


def falling(x: int, a: int) -> int:
    """Falling factorial x(x-1)...(x-a+1); empty product for a = 0."""
    assert a >= 0
    out = 1
    for i in range(a):
        out *= x - i
    return out


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise OutOfRange(f"catalan undefined for n={n}")
    c = binom(2 * n, n)
    assert c % (n + 1) == 0
    return c // (n + 1)


def narayana(n: int, m: int) -> int:
    """Number of Dyck paths of semilength n with m peaks."""
    if n < 1 or not 1 <= m <= n:
        raise OutOfRange(f"narayana undefined for {(n, m)}")
    val = Fraction(binom(n, m - 1) * binom(n - 1, m - 1), m)
    assert val.denominator == 1
    return int(val)


def kreweras(n: int, m: int, mu) -> int:
    """Dyck paths of semilength n with m peaks whose ascent-length type is mu.

    mu maps part size j to its multiplicity; sum(j*mu[j]) = n, sum(mu[j]) = m.
    Count = n(n-1)...(n-m+2) / prod_j mu[j]!  (m-1 falling factors).
    """
    mu = dict(mu)
    assert all(j >= 1 and c >= 1 for j, c in mu.items())
    if sum(mu.values()) != m or sum(j * c for j, c in mu.items()) != n:
        raise InconsistentType(f"type {mu} is not an m={m} multiset of total {n}")
    den = 1
    for c in mu.values():
        for a in range(2, c + 1):
            den *= a
    val = Fraction(falling(n, m - 1), den)
    assert val.denominator == 1
    return int(val)


def hook_count(shape) -> int:
    """Number of standard Young tableaux of a straight shape (hook lengths)."""
    lam = _as_partition(shape)
    if not lam.parts:
        return 1
    conj = lam.conjugate()
    n = lam.size
    hooks = 1
    for r in range(1, lam.nrows + 1):
        for c in range(1, lam.part(r) + 1):
            hooks *= (lam.part(r) - c) + (conj.part(c) - r) + 1
    num = 1
    for a in range(2, n + 1):
        num *= a
    assert num % hooks == 0
    return num // hooks


def e_count(n: int, i: int) -> int:
    """Ballot-like paths of length n ending at height i with no D step."""
    if n < 0 or i < 0:
        raise OutOfRange(f"need n, i >= 0, got {(n, i)}")
    if i > n:
        return 0
    if n == 0:
        return 1 if i == 0 else 0
    if i == 0:
        return 0
    return binom(n - 1, i - 1)


@lru_cache(maxsize=None)
def _f_rec(n: int, i: int) -> int:
    # recursion: reach (n, i) by U / u / d / D, the D possibly being the first
    if i < 0 or i > n or n == 0 or i == n:
        return 0
    if i == 0:
        if n == 1:
            return 0
        return _f_rec(n - 1, 0) + _f_rec(n - 1, 1) + e_count(n - 1, 1)
    return (
        _f_rec(n - 1, i - 1)
        + 2 * _f_rec(n - 1, i)
        + _f_rec(n - 1, i + 1)
        + e_count(n - 1, i + 1)
    )


def f_count(n: int, i: int) -> int:
    """Ballot-like paths of length n ending at height i with at least one D.

    Evaluated by closed form and by the step recursion; the two must agree.
    """
    if n < 0 or i < 0:
        raise OutOfRange(f"need n, i >= 0, got {(n, i)}")
    if i > n:
        return 0
    closed = binom(2 * n - 2, n - i - 1) - binom(2 * n - 2, n - i - 2) - binom(n - 2, n - i - 1)
    rec = _f_rec(n, i)
    assert closed == rec, f"f({n},{i}): closed form {closed} != recursion {rec}"
    return closed


def ballot_count(n: int, i: int) -> int:
    """All ballot-like paths of length n ending at height i (= e + f)."""
    if n < 0 or i < 0:
        raise OutOfRange(f"need n, i >= 0, got {(n, i)}")
    if i > n:
        return 0
    total = binom(2 * n - 2, n - i - 1) - binom(2 * n - 2, n - i - 2) + binom(n - 2, n - i)
    assert total == e_count(n, i) + f_count(n, i)
    return total


def row_sums(n: int) -> tuple[int, int]:
    """Column sums (sum_i e, sum_i f) over 0 <= i <= n for fixed n."""
    if n < 0:
        raise OutOfRange(f"n={n}")
    se = sum(e_count(n, i) for i in range(n + 1))
    sf = sum(f_count(n, i) for i in range(n + 1))
    if n >= 2:
        assert se == 2 ** (n - 1)
        assert sf == binom(2 * n - 2, n - 1) - 2 ** (n - 2)
    return se, sf


def act_count(b: int, k: int) -> int:
    """Number of set-valued standard tableaux of the 2-by-b rectangle with k extras.

    Hook-length style sum over the internal parameter c; the k! division is exact.
    """
    if b < 1 or k < 0:
        raise OutOfRange(f"need b >= 1, k >= 0, got {(b, k)}")
    total = 0
    for c in range(k // 2 + 1):
        total += (
            hook_count((k - c, c) if c else ((k - c,) if k - c else ()))
            * hook_count((b + k - c, b + c))
            * falling(b + k - c - 1, k - c)
            * falling(b + c - 2, c)
        )
    kfact = 1
    for a in range(2, k + 1):
        kfact *= a
    assert total % kfact == 0, f"k! division inexact for {(b, k)}"
    return total // kfact


def peaks_count(b: int, k: int) -> int:
    """Same count via the peak-refinement formula (exact-rational summands)."""
    if b < 1 or k < 0:
        raise OutOfRange(f"need b >= 1, k >= 0, got {(b, k)}")
    total = Fraction(0)
    for c in range(k // 2 + 1):
        total += (
            Fraction((k - 2 * c + 1) ** 2, (k - c + 1) * (b + k - c + 1))
            * binom(b + c - 2, c)
            * binom(b + k - c - 1, b - 1)
            * binom(2 * b + k, b + c)
        )
    assert total.denominator == 1, f"summand total not integral for {(b, k)}"
    return int(total)


def more_shapes_counts(n: int) -> tuple[int, int]:
    """Counts for the near-rectangular and skew two-row families at size n.

    First: tableaux of shape (b+1, b) over 2b+k+1 = n, equal to
    cat(n) - cat(n-1) = 3/(n+1) * binom(2n-2, n).  Second:
    cat(n) - 2cat(n-1) + cat(n-2).
    """
    if n < 3:
        raise OutOfRange(f"need n >= 3, got {n}")
    first = catalan(n) - catalan(n - 1)
    alt = Fraction(3 * binom(2 * n - 2, n), n + 1)
    assert alt == first
    second = catalan(n) - 2 * catalan(n - 1) + catalan(n - 2)
    return first, second
