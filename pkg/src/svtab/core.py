"""Exact domain types: shapes, set-valued tableaux, permutations, colored paths.

Conventions used throughout the package:

* Cells are addressed by 1-indexed (row, col) matrix coordinates.
* A set-valued tableau stores, for every cell of a (possibly skew) shape, a
  nonempty sorted tuple of positive integers; the cell sets partition
  {1..n+k} where n is the number of cells and k the number of extra entries.
* The order condition: whenever cell u lies weakly northwest of cell v
  (u != v), every entry of u is smaller than every entry of v.
* Path words use the four-letter step alphabet U (up), D (down), u (level,
  first color), d (level, second color); heights never go negative.
* All types are immutable and hashable, safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Rational  # exact rationals, gcd-reduced by stdlib
from typing import Iterator, Sequence

__all__ = [
    "Rational",
    "SvtabError",
    "InvalidShape",
    "EmptyCell",
    "NotAPartitionOfRange",
    "OrderViolation",
    "NegativeHeight",
    "Not321Avoiding",
    "NotAPermutation",
    "ShapeNotTwoRowRectangular",
    "NotInFamily",
    "InvalidPick",
    "OutOfRange",
    "Partition",
    "SkewShape",
    "SetValuedTableau",
    "validate_svsyt",
    "Permutation",
    "ColoredPath",
    "PATH_FAMILIES",
    "path_family",
]


class SvtabError(ValueError):
    """Base for all domain validation errors."""


class InvalidShape(SvtabError):
    pass


class EmptyCell(SvtabError):
    pass


class NotAPartitionOfRange(SvtabError):
    pass


class OrderViolation(SvtabError):
    pass


class NegativeHeight(SvtabError):
    pass


class Not321Avoiding(SvtabError):
    pass


class NotAPermutation(SvtabError):
    pass


class ShapeNotTwoRowRectangular(SvtabError):
    pass


class NotInFamily(SvtabError):
    pass


class NotInMotzET(NotInFamily):
    pass


class NotInMotzT(NotInFamily):
    pass


class ShapeMismatch(SvtabError):
    pass


class InconsistentType(SvtabError):
    pass


class InvalidPick(SvtabError):
    pass


class OutOfRange(SvtabError):
    pass


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts; () is the empty partition."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(self.parts)
        object.__setattr__(self, "parts", ps)
        if any(p <= 0 for p in ps):
            raise InvalidShape(f"parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise InvalidShape(f"parts must weakly decrease: {ps}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def nrows(self) -> int:
        return len(self.parts)

    def part(self, r: int) -> int:
        """Length of row r (1-indexed), 0 beyond the last row."""
        return self.parts[r - 1] if 1 <= r <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            tuple(
                sum(1 for p in self.parts if p >= c) for c in range(1, self.parts[0] + 1)
            )
        )

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class SkewShape:
    """Skew diagram outer/inner; inner may be empty for a straight shape."""

    outer: Partition
    inner: Partition = Partition()

    def __post_init__(self):
        if len(self.inner) > len(self.outer):
            raise InvalidShape("inner partition has more rows than outer")
        for r in range(1, len(self.inner) + 1):
            if self.inner.part(r) > self.outer.part(r):
                raise InvalidShape("inner partition not contained in outer")

    @property
    def is_straight(self) -> bool:
        return not self.inner.parts

    @property
    def ncells(self) -> int:
        return self.outer.size - self.inner.size

    def row_span(self, r: int) -> range:
        """Columns of the cells present in row r (1-indexed)."""
        return range(self.inner.part(r) + 1, self.outer.part(r) + 1)

    def cells(self) -> list[tuple[int, int]]:
        return [
            (r, c)
            for r in range(1, self.outer.nrows + 1)
            for c in self.row_span(r)
        ]

    def contains(self, r: int, c: int) -> bool:
        return self.inner.part(r) < c <= self.outer.part(r)


def _as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    return Partition(tuple(p))


@dataclass(frozen=True)
class SetValuedTableau:
    """Set-valued filling of a (skew) shape; cell sets are sorted int tuples."""

    shape: SkewShape
    rows: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence[int]]], inner=()) -> "SetValuedTableau":
        inner_p = _as_partition(inner)
        outer = Partition(
            tuple(inner_p.part(r + 1) + len(row) for r, row in enumerate(rows))
        )
        shape = SkewShape(outer, inner_p)
        packed = tuple(
            tuple(tuple(sorted(cell)) for cell in row) for row in rows
        )
        return cls(shape, packed)

    def cell(self, r: int, c: int) -> tuple[int, ...]:
        if not self.shape.contains(r, c):
            raise InvalidShape(f"no cell at {(r, c)}")
        return self.rows[r - 1][c - 1 - self.shape.inner.part(r)]

    def cells(self) -> Iterator[tuple[tuple[int, int], tuple[int, ...]]]:
        """Yield ((r, c), entries) in row-major order."""
        for r, row in enumerate(self.rows, start=1):
            off = self.shape.inner.part(r)
            for j, entries in enumerate(row):
                yield (r, off + j + 1), entries

    @property
    def ncells(self) -> int:
        return self.shape.ncells

    @property
    def nentries(self) -> int:
        return sum(len(cell) for row in self.rows for cell in row)

    @property
    def extras(self) -> int:
        """k, the number of non-minimal entries."""
        return self.nentries - self.ncells

    def to_json_dict(self) -> dict:
        return {
            "outer": list(self.shape.outer.parts),
            "inner": list(self.shape.inner.parts),
            "rows": [[list(cell) for cell in row] for row in self.rows],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SetValuedTableau":
        t = cls.from_rows(d["rows"], inner=tuple(d.get("inner", ())))
        if tuple(t.shape.outer.parts) != tuple(d["outer"]):
            raise InvalidShape(
                f"declared outer {d['outer']} != row lengths {t.shape.outer.parts}"
            )
        return t

    def __str__(self) -> str:
        return " / ".join(
            " ".join("{" + ",".join(map(str, cell)) + "}" for cell in row)
            for row in self.rows
        )


def validate_svsyt(t: SetValuedTableau) -> int:
    """Full validation; returns k (number of extra entries).

    Checks: nonempty cells, entries partition {1..n+k}, and the weak-northwest
    order condition.  Right- and down-neighbor checks suffice: any weakly
    northwest pair is connected by a staircase of such neighbor steps inside
    the diagram, and max(cell) < min(next cell) chains transitively.
    """
    if t.shape.ncells == 0:
        raise InvalidShape("empty shape")
    seen: list[int] = []
    for pos, entries in t.cells():
        if not entries:
            raise EmptyCell(f"cell {pos} is empty")
        if list(entries) != sorted(set(entries)):
            raise NotAPartitionOfRange(f"cell {pos} entries not strictly sorted: {entries}")
        seen.extend(entries)
    m = len(seen)
    if sorted(seen) != list(range(1, m + 1)):
        raise NotAPartitionOfRange(
            f"entries do not partition 1..{m}: {sorted(seen)}"
        )
    for (r, c), entries in t.cells():
        for nr, nc in ((r, c + 1), (r + 1, c)):
            if t.shape.contains(nr, nc):
                nxt = t.cell(nr, nc)
                if entries[-1] >= nxt[0]:
                    raise OrderViolation(
                        f"max{entries} at {(r, c)} not below min{nxt} at {(nr, nc)}"
                    )
    return m - t.shape.ncells


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..m} in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(self.word)
        object.__setattr__(self, "word", w)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise NotAPermutation(f"not a rearrangement of 1..{len(w)}: {w}")

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        return cls(tuple(int(x) for x in text.split()))

    def to_text(self) -> str:
        return " ".join(map(str, self.word))

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def is_321_avoiding(self) -> bool:
        # scan left to right; m2 = largest value seen that has something
        # bigger before it — any later smaller value completes a 321.
        m2 = 0
        big = 0
        for v in self.word:
            if v < m2:
                return False
            if v < big:
                m2 = max(m2, v)
            big = max(big, v)
        return True


PATH_FAMILIES = ("motz", "motzE", "motzT", "motzET", "ballotlike")


@dataclass(frozen=True)
class ColoredPath:
    """Bicolored Motzkin-style step word; construction rejects negative heights."""

    word: str

    def __post_init__(self):
        h = 0
        for i, ch in enumerate(self.word):
            if ch == "U":
                h += 1
            elif ch == "D":
                h -= 1
            elif ch not in ("u", "d"):
                raise NotInFamily(f"bad step {ch!r} at position {i + 1}")
            if h < 0:
                raise NegativeHeight(f"height dips below 0 at position {i + 1}")

    def __len__(self) -> int:
        return len(self.word)

    def heights(self) -> tuple[int, ...]:
        """Height after each step (length = len(word))."""
        out = []
        h = 0
        for ch in self.word:
            if ch == "U":
                h += 1
            elif ch == "D":
                h -= 1
            out.append(h)
        return tuple(out)

    @property
    def final_height(self) -> int:
        return self.word.count("U") - self.word.count("D")

    def has_low_level_first_color(self) -> bool:
        """True if some u step sits at height 0 (violates restriction (1))."""
        h = 0
        for ch in self.word:
            if ch == "u" and h == 0:
                return True
            if ch == "U":
                h += 1
            elif ch == "D":
                h -= 1
        return False

    def has_early_second_color(self) -> bool:
        """True if some d step precedes every earlier D (violates restriction (2)).

        A d with no D anywhere before it counts, including paths with no D at all.
        """
        seen_D = False
        for ch in self.word:
            if ch == "D":
                seen_D = True
            elif ch == "d" and not seen_D:
                return True
        return False


def path_family(p: ColoredPath) -> frozenset[str]:
    """Family tags of a path.

    The four motz families additionally require final height 0; ballotlike
    means both restrictions hold, with any final height.
    """
    r1 = not p.has_low_level_first_color()
    r2 = not p.has_early_second_color()
    tags = set()
    if p.final_height == 0:
        tags.add("motz")
        if r1:
            tags.add("motzE")
        if r2:
            tags.add("motzT")
        if r1 and r2:
            tags.add("motzET")
    if r1 and r2:
        tags.add("ballotlike")
    return frozenset(tags)
