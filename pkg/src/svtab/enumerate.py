"""Ground-truth enumeration: set-valued tableaux, 321-avoiders, colored paths.

Tableau generation places the entries 1..n+k one at a time.  Each entry either
opens the next unopened cell whose northwest neighbors are already open, or is
appended to an open cell that has no open cell weakly southeast of it (such an
append can never be extended to a violation, so every leaf of the search is a
valid tableau and the enumeration has polynomial delay).  Trying targets in
row-major order emits tableaux in lexicographic order of the word that maps
each entry to its cell index.
"""

from __future__ import annotations

from typing import Iterator

from .core import (
    ColoredPath,
    OutOfRange,
    Partition,
    Permutation,
    SetValuedTableau,
    SkewShape,
    _as_partition,
)

__all__ = [
    "as_skew",
    "gen_svsyt",
    "count_svsyt",
    "gen_two_row_union",
    "count_two_row_union",
    "gen_avoid321",
    "gen_paths",
    "count_paths",
    "gen_ballotlike",
]


def as_skew(shape) -> SkewShape:
    if isinstance(shape, SkewShape):
        return shape
    return SkewShape(_as_partition(shape))


def _cell_masks(shape: SkewShape) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    """Row-major cells with bitmasks of cover predecessors/successors."""
    cells = shape.cells()
    index = {cell: i for i, cell in enumerate(cells)}
    preds = [0] * len(cells)
    succs = [0] * len(cells)
    for (r, c), i in index.items():
        for nb in ((r, c - 1), (r - 1, c)):
            if nb in index:
                preds[i] |= 1 << index[nb]
        for nb in ((r, c + 1), (r + 1, c)):
            if nb in index:
                succs[i] |= 1 << index[nb]
    return cells, preds, succs


def _walk(preds: list[int], succs: list[int], total: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    ncells = len(preds)
    cells: list[list[int]] = [[] for _ in range(ncells)]

    def rec(e: int, ideal: int, nopen: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if e > total:
            yield tuple(tuple(c) for c in cells)
            return
        left = total - e
        for i in range(ncells):
            bit = 1 << i
            if ideal & bit:
                if succs[i] & ideal or left < ncells - nopen:
                    continue
                cells[i].append(e)
                yield from rec(e + 1, ideal, nopen)
                cells[i].pop()
            elif preds[i] & ideal == preds[i]:
                cells[i].append(e)
                yield from rec(e + 1, ideal | bit, nopen + 1)
                cells[i].pop()

    return rec(1, 0, 0)


def _count_walk(preds: list[int], succs: list[int], total: int) -> int:
    ncells = len(preds)

    def rec(e: int, ideal: int, nopen: int) -> int:
        if e > total:
            return 1
        acc = 0
        left = total - e
        for i in range(ncells):
            bit = 1 << i
            if ideal & bit:
                if not succs[i] & ideal and left >= ncells - nopen:
                    acc += rec(e + 1, ideal, nopen)
            elif preds[i] & ideal == preds[i]:
                acc += rec(e + 1, ideal | bit, nopen + 1)
        return acc

    return rec(1, 0, 0)


def _repack(shape: SkewShape, flat: tuple[tuple[int, ...], ...]) -> SetValuedTableau:
    rows = []
    i = 0
    for r in range(1, shape.outer.nrows + 1):
        w = len(shape.row_span(r))
        rows.append(tuple(flat[i : i + w]))
        i += w
    return SetValuedTableau(shape, tuple(rows))


def gen_svsyt(shape, k: int) -> Iterator[SetValuedTableau]:
    """All set-valued standard tableaux of the shape with k extra entries."""
    sk = as_skew(shape)
    if sk.ncells == 0 or k < 0:
        raise OutOfRange(f"need a nonempty shape and k >= 0, got {shape}, k={k}")
    _, preds, succs = _cell_masks(sk)
    for flat in _walk(preds, succs, sk.ncells + k):
        yield _repack(sk, flat)


def count_svsyt(shape, k: int) -> int:
    sk = as_skew(shape)
    if sk.ncells == 0 or k < 0:
        raise OutOfRange(f"need a nonempty shape and k >= 0, got {shape}, k={k}")
    _, preds, succs = _cell_masks(sk)
    return _count_walk(preds, succs, sk.ncells + k)


def _two_row_shapes(n: int) -> list[Partition]:
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    return [Partition((b, b)) for b in range(1, n // 2 + 1)]


def gen_two_row_union(n: int) -> Iterator[SetValuedTableau]:
    """Union over 2b+k = n of the 2-by-b rectangles with k extras, b ascending."""
    for lam in _two_row_shapes(n):
        yield from gen_svsyt(lam, n - lam.size)


def count_two_row_union(n: int) -> int:
    return sum(count_svsyt(lam, n - lam.size) for lam in _two_row_shapes(n))


def gen_avoid321(m: int) -> Iterator[Permutation]:
    """All 321-avoiding permutations of {1..m}, lexicographic in one-line form."""
    if m < 0:
        raise OutOfRange(f"m={m}")
    word: list[int] = []
    used = [False] * (m + 1)

    def rec(big: int, m2: int) -> Iterator[Permutation]:
        if len(word) == m:
            yield Permutation(tuple(word))
            return
        for v in range(1, m + 1):
            if used[v] or v < m2:
                continue
            used[v] = True
            word.append(v)
            yield from rec(max(big, v), max(m2, v) if v < big else m2)
            word.pop()
            used[v] = False

    return rec(0, 0)


_NEED_R1 = {"motzE", "motzET", "ballotlike"}
_NEED_R2 = {"motzT", "motzET", "ballotlike"}


def _gen_path_words(n: int, r1: bool, r2: bool, end: int | None) -> Iterator[str]:
    """DFS over the step alphabet in the order U < D < u < d.

    r1: forbid u at height 0; r2: forbid d before the first D;
    end: required final height, or None for any.
    """
    buf: list[str] = []

    def feasible(h: int, left: int) -> bool:
        if end is None:
            return True
        return abs(h - end) <= left

    def rec(h: int, left: int, seen_D: bool) -> Iterator[str]:
        if left == 0:
            yield "".join(buf)
            return
        for ch in "UDud":
            if ch == "U":
                nh, nD = h + 1, seen_D
            elif ch == "D":
                if h == 0:
                    continue
                nh, nD = h - 1, True
            elif ch == "u":
                if r1 and h == 0:
                    continue
                nh, nD = h, seen_D
            else:
                if r2 and not seen_D:
                    continue
                nh, nD = h, seen_D
            if not feasible(nh, left - 1):
                continue
            buf.append(ch)
            yield from rec(nh, left - 1, nD)
            buf.pop()

    return rec(0, n, False)


def gen_paths(family: str, n: int) -> Iterator[ColoredPath]:
    """All length-n paths of the family, lexicographic in step order U < D < u < d."""
    if family not in ("motz", "motzE", "motzT", "motzET", "ballotlike"):
        raise OutOfRange(f"unknown family {family!r}")
    if n < 0:
        raise OutOfRange(f"n={n}")
    end = None if family == "ballotlike" else 0
    for w in _gen_path_words(n, family in _NEED_R1, family in _NEED_R2, end):
        yield ColoredPath(w)


def count_paths(family: str, n: int) -> int:
    return sum(1 for _ in gen_paths(family, n))


def gen_ballotlike(n: int, i: int) -> Iterator[ColoredPath]:
    """Ballot-like paths (both restrictions) of length n ending at height i."""
    if not 0 <= i <= n:
        raise OutOfRange(f"need 0 <= i <= n, got {(n, i)}")
    for w in _gen_path_words(n, True, True, i):
        yield ColoredPath(w)
