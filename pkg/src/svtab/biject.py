"""Structure-preserving maps between tableaux, permutations, and paths.

Every map here comes with its inverse; roundtrips are asserted in the test
suite over exhaustive small ranges.  All functions take and return immutable
values and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ColoredPath,
    InvalidPick,
    Not321Avoiding,
    NotInFamily,
    NotInMotzET,
    NotInMotzT,
    OutOfRange,
    Partition,
    Permutation,
    SetValuedTableau,
    ShapeMismatch,
    ShapeNotTwoRowRectangular,
    path_family,
    validate_svsyt,
)

__all__ = [
    "Triple",
    "perm_from_tableau",
    "tableau_from_perm",
    "path_from_tableau",
    "tableau_from_path",
    "ballot_path_from_tableau",
    "tableau_from_ballot_path",
    "contract_path",
    "expand_path",
    "decompose",
    "compose",
    "rotate_complement",
]


def _require_two_row_rectangular(t: SetValuedTableau) -> int:
    """Return b for a straight 2-by-b tableau, else raise."""
    shape = t.shape
    if not shape.is_straight or shape.outer.nrows != 2:
        raise ShapeNotTwoRowRectangular(f"shape {tuple(shape.outer)} is not 2xb")
    b1, b2 = shape.outer.parts
    if b1 != b2:
        raise ShapeNotTwoRowRectangular(f"rows have unequal lengths {b1} != {b2}")
    return b1


# ---------------------------------------------------------------------------
# tableau <-> 321-avoiding permutation


def perm_from_tableau(t: SetValuedTableau) -> Permutation:
    """Flatten a 2-by-b set-valued tableau into a 321-avoiding permutation.

    The largest entry n is removed (it always sits in the bottom-right cell),
    then the columns are read left to right, each contributing the top cell
    minus its maximum, the bottom cell, and finally the top maximum.  The
    result is a permutation of [n-1] whose right-to-left minima are exactly
    the top-row entries.
    """
    validate_svsyt(t)
    b = _require_two_row_rectangular(t)
    n = t.nentries
    assert n >= 2
    top = [list(t.cell(1, j)) for j in range(1, b + 1)]
    bot = [list(t.cell(2, j)) for j in range(1, b + 1)]
    assert bot[-1][-1] == n, "largest entry must be in the bottom-right cell"
    bot[-1].pop()
    word = []
    for j in range(b):
        word.extend(top[j][:-1])
        word.extend(bot[j])
        word.append(top[j][-1])
    out = Permutation(tuple(word))
    assert out.is_321_avoiding()
    return out


def _suffix_minima_mask(vals: tuple[int, ...]) -> list[bool]:
    mask = [False] * len(vals)
    running = len(vals) + 2
    for j in range(len(vals) - 1, -1, -1):
        if vals[j] < running:
            mask[j] = True
            running = vals[j]
    return mask


def tableau_from_perm(w: Permutation) -> SetValuedTableau:
    """Inverse of perm_from_tableau; builds the unique 2-row preimage.

    Right-to-left minima become the top row, grouped so that each inner
    valley closes a cell; maximal runs of non-minima become the bottom row;
    the new largest entry n = len(w)+1 lands in the bottom-right cell,
    opening a new cell exactly when one fewer run than column exists.
    """
    if not w.is_321_avoiding():
        raise Not321Avoiding(f"{w.to_text()} contains a 321 pattern")
    m = len(w)
    if m < 1:
        raise OutOfRange("need a permutation of length >= 1")
    vals = tuple(w)
    is_min = _suffix_minima_mask(vals)
    valley = [
        0 < j < m - 1 and vals[j - 1] > vals[j] < vals[j + 1] for j in range(m)
    ]
    # every inner valley is a right-to-left minimum (else a 321 would occur)
    assert all(is_min[j] for j in range(m) if valley[j])

    top: list[list[int]] = []
    box: list[int] = []
    for j in range(m):
        if is_min[j]:
            box.append(vals[j])
            if valley[j]:
                top.append(box)
                box = []
    assert box, "the final position is always a right-to-left minimum"
    top.append(box)

    bot: list[list[int]] = []
    run: list[int] = []
    for j in range(m):
        if is_min[j]:
            if run:
                bot.append(run)
                run = []
        else:
            run.append(vals[j])
    if run:
        bot.append(run)

    b = len(top)
    assert len(bot) in (b - 1, b)
    if len(bot) == b - 1:
        bot.append([m + 1])
    else:
        bot[-1].append(m + 1)
    out = SetValuedTableau.from_rows([top, bot])
    validate_svsyt(out)
    return out


# ---------------------------------------------------------------------------
# tableau <-> colored Motzkin / ballotlike path


def _word_from_two_row(t: SetValuedTableau) -> str:
    steps = {}
    for (r, _c), entries in t.cells():
        steps[entries[0]] = "U" if r == 1 else "D"
        for e in entries[1:]:
            steps[e] = "u" if r == 1 else "d"
    return "".join(steps[j] for j in range(1, t.nentries + 1))


def path_from_tableau(t: SetValuedTableau) -> ColoredPath:
    """Encode a 2-by-b set-valued tableau as a restricted Motzkin path.

    Position j becomes U/D when j opens a top/bottom cell and u/d when j is a
    non-minimal top/bottom entry.
    """
    validate_svsyt(t)
    _require_two_row_rectangular(t)
    out = ColoredPath(_word_from_two_row(t))
    assert "motzET" in path_family(out)
    return out


def ballot_path_from_tableau(t: SetValuedTableau) -> ColoredPath:
    """Same encoding on shapes (b, b-i); the path ends at height i."""
    validate_svsyt(t)
    shape = t.shape
    if not shape.is_straight or shape.outer.nrows > 2:
        raise ShapeMismatch(f"shape {tuple(shape.outer)} has more than two rows")
    out = ColoredPath(_word_from_two_row(t))
    assert "ballotlike" in path_family(out)
    assert out.final_height == shape.outer.part(1) - shape.outer.part(2)
    return out


def _tableau_from_word(word: str) -> SetValuedTableau:
    top: list[list[int]] = []
    bot: list[list[int]] = []
    for j, step in enumerate(word, start=1):
        if step == "U":
            top.append([j])
        elif step == "D":
            bot.append([j])
        elif step == "u":
            top[-1].append(j)
        else:
            bot[-1].append(j)
    rows = [top] if not bot else [top, bot]
    out = SetValuedTableau.from_rows(rows)
    validate_svsyt(out)
    return out


def tableau_from_path(p: ColoredPath) -> SetValuedTableau:
    """Inverse of path_from_tableau on paths with both restrictions."""
    if "motzET" not in path_family(p):
        raise NotInMotzET(f"{p.word!r} violates a restriction or ends above 0")
    if len(p) < 2:
        raise OutOfRange("the empty path has no 2-row preimage")
    return _tableau_from_word(p.word)


def tableau_from_ballot_path(p: ColoredPath) -> SetValuedTableau:
    """Inverse of ballot_path_from_tableau; shape (b, b-i) with i the final height."""
    if "ballotlike" not in path_family(p):
        raise NotInFamily(f"{p.word!r} is not ballotlike")
    if len(p) < 1:
        raise OutOfRange("the empty path has no tableau preimage")
    return _tableau_from_word(p.word)


# ---------------------------------------------------------------------------
# path-length contraction


def contract_path(p: ColoredPath) -> ColoredPath:
    """Shorten a no-early-d Motzkin path by one step.

    The all-u path maps to the all-u path.  Otherwise the step pair ending at
    the first D collapses: (u,D) becomes D and (U,D) becomes d.  The image is
    an unrestricted bicolored Motzkin path one step shorter.
    """
    if "motzT" not in path_family(p):
        raise NotInMotzT(f"{p.word!r} not in the no-early-d family")
    if len(p) < 1:
        raise OutOfRange("need length >= 1")
    word = p.word
    j = word.find("D")
    if j < 0:
        assert set(word) <= {"u"}
        return ColoredPath("u" * (len(word) - 1))
    assert j >= 1
    prev = word[j - 1]
    assert prev in "Uu", "the step before the first D must be U or u"
    merged = "D" if prev == "u" else "d"
    out = ColoredPath(word[: j - 1] + merged + word[j + 1 :])
    assert "motz" in path_family(out)
    return out


def expand_path(p: ColoredPath) -> ColoredPath:
    """Inverse of contract_path: split the first D-or-d back into two steps."""
    if "motz" not in path_family(p):
        raise NotInFamily(f"{p.word!r} is not a bicolored Motzkin path")
    word = p.word
    first = None
    for j, step in enumerate(word):
        if step in "Dd":
            first = j
            break
    if first is None:
        assert set(word) <= {"u"}
        out = ColoredPath("u" * (len(word) + 1))
    else:
        pair = "uD" if word[first] == "D" else "UD"
        out = ColoredPath(word[:first] + pair + word[first + 1 :])
    assert "motzT" in path_family(out)
    return out


# ---------------------------------------------------------------------------
# triple decomposition


@dataclass(frozen=True)
class Triple:
    """Standard base tableau plus cut values and pick cells for the extras.

    Cuts are weakly increasing in 1..n; pick i must be a maximal cell of the
    ideal of base cells holding values <= cuts[i].
    """

    base: SetValuedTableau
    cuts: tuple[int, ...]
    picks: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.to_json_dict(),
            "cuts": list(self.cuts),
            "picks": [list(p) for p in self.picks],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Triple":
        return cls(
            SetValuedTableau.from_json_dict(d["base"]),
            tuple(int(t) for t in d["cuts"]),
            tuple((int(r), int(c)) for r, c in d["picks"]),
        )


def decompose(t: SetValuedTableau) -> Triple:
    """Strip the k extra entries off a set-valued tableau, largest first.

    Stage i (from k down to 1) removes the largest non-minimal entry e, which
    is necessarily the maximum of its cell; that cell is pick i and the cut is
    e - i.  Remaining entries above e close ranks.  The base that remains is a
    standard tableau of the same shape.
    """
    k = validate_svsyt(t)
    grid = {pos: list(entries) for pos, entries in t.cells()}
    cuts = [0] * k
    picks: list[tuple[int, int]] = [(0, 0)] * k
    for i in range(k, 0, -1):
        best = 0
        where = None
        for pos, entries in grid.items():
            if len(entries) > 1 and entries[-1] > best:
                best = entries[-1]
                where = pos
        assert where is not None
        cuts[i - 1] = best - i
        picks[i - 1] = where
        grid[where].pop()
        for entries in grid.values():
            for a, e in enumerate(entries):
                if e > best:
                    entries[a] = e - 1
    base = _pack(t, grid)
    assert validate_svsyt(base) == 0
    assert all(c >= 1 for c in cuts)
    assert all(cuts[a] <= cuts[a + 1] for a in range(k - 1))
    return Triple(base, tuple(cuts), tuple(picks))


def _pack(template: SetValuedTableau, grid: dict) -> SetValuedTableau:
    rows = [
        [grid[(r, c)] for c in template.shape.row_span(r)]
        for r in range(1, template.shape.outer.nrows + 1)
    ]
    return SetValuedTableau.from_rows(rows, inner=tuple(template.shape.inner))


def compose(tr: Triple) -> SetValuedTableau:
    """Rebuild the set-valued tableau from its triple; inverse of decompose."""
    base = tr.base
    if validate_svsyt(base) != 0:
        raise InvalidPick("base tableau must be standard (no extra entries)")
    n = base.nentries
    k = len(tr.cuts)
    if len(tr.picks) != k:
        raise InvalidPick("cuts and picks must have equal length")
    if any(not 1 <= c <= n for c in tr.cuts):
        raise InvalidPick(f"cuts out of range 1..{n}: {tr.cuts}")
    if any(tr.cuts[a] > tr.cuts[a + 1] for a in range(k - 1)):
        raise InvalidPick(f"cuts must weakly increase: {tr.cuts}")
    shape = base.shape
    value = {pos: entries[0] for pos, entries in base.cells()}
    for cut, (r, c) in zip(tr.cuts, tr.picks):
        if not shape.contains(r, c):
            raise InvalidPick(f"{(r, c)} is not a cell of the shape")
        if value[(r, c)] > cut:
            raise InvalidPick(f"cell {(r, c)} is outside the ideal of cut {cut}")
        for nb in ((r + 1, c), (r, c + 1)):
            if shape.contains(*nb) and value[nb] <= cut:
                raise InvalidPick(f"cell {(r, c)} is not maximal for cut {cut}")
    grid = {pos: list(entries) for pos, entries in base.cells()}
    for i, (cut, pos) in enumerate(zip(tr.cuts, tr.picks), start=1):
        e = cut + i
        for entries in grid.values():
            for a, x in enumerate(entries):
                if x >= e:
                    entries[a] = x + 1
        grid[pos].append(e)
        grid[pos].sort()
    out = _pack(base, grid)
    assert validate_svsyt(out) == k
    return out


# ---------------------------------------------------------------------------
# half-turn complement


def rotate_complement(t: SetValuedTableau) -> SetValuedTableau:
    """Rotate a two-row tableau a half turn and complement its entries.

    Exchanges straight shapes (b+1, b) with skew shapes (b+1, b+1)/(1); entry
    v becomes N+1-v where N is the total number of entries.  Applying the map
    twice gives back the original tableau.
    """
    validate_svsyt(t)
    outer, inner = t.shape.outer, t.shape.inner
    straight_ok = t.shape.is_straight and outer.nrows == 2 and (
        outer.part(1) == outer.part(2) + 1
    )
    skew_ok = (
        outer.nrows == 2
        and outer.part(1) == outer.part(2) >= 2
        and tuple(inner) == (1,)
    )
    if not (straight_ok or skew_ok):
        raise ShapeMismatch(
            f"expected (b+1,b) or (b+1,b+1)/(1), got {tuple(outer)}/{tuple(inner)}"
        )
    total = t.nentries
    width = outer.part(1)
    new_rows = []
    new_inner = []
    for r_new in (1, 2):
        r_old = 3 - r_new
        lo, hi = width - outer.part(r_old), width - inner.part(r_old)
        new_inner.append(lo)
        row = []
        for c_new in range(lo + 1, hi + 1):
            old = t.cell(r_old, width + 1 - c_new)
            row.append([total + 1 - v for v in old])
        new_rows.append(row)
    while new_inner and new_inner[-1] == 0:
        new_inner.pop()
    out = SetValuedTableau.from_rows(new_rows, inner=tuple(new_inner))
    validate_svsyt(out)
    return out
