"""Core object model: shapes, tableaux, permutations, colored paths."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from svtab.core import (
    ColoredPath,
    EmptyCell,
    InvalidShape,
    NegativeHeight,
    NotAPartitionOfRange,
    NotAPermutation,
    NotInFamily,
    OrderViolation,
    Partition,
    Permutation,
    SetValuedTableau,
    SkewShape,
    path_family,
    validate_svsyt,
)


class TestPartition:
    def test_validation(self):
        with pytest.raises(InvalidShape):
            Partition((1, 2))
        with pytest.raises(InvalidShape):
            Partition((2, 0))
        assert Partition(()).size == 0

    def test_part_is_one_indexed_and_total(self):
        p = Partition((4, 2, 1))
        assert [p.part(r) for r in (1, 2, 3, 4, 9)] == [4, 2, 1, 0, 0]
        assert p.size == 7 and p.nrows == 3

    def test_conjugate(self):
        assert Partition((4, 2, 1)).conjugate() == Partition((3, 2, 1, 1))
        assert Partition((3, 3)).conjugate() == Partition((2, 2, 2))
        p = Partition((5, 3, 3, 1))
        assert p.conjugate().conjugate() == p


class TestSkewShape:
    def test_containment(self):
        with pytest.raises(InvalidShape):
            SkewShape(Partition((2, 1)), Partition((2, 2)))
        with pytest.raises(InvalidShape):
            SkewShape(Partition((2,)), Partition((1, 1)))

    def test_cells_row_major(self):
        s = SkewShape(Partition((3, 2)), Partition((1,)))
        assert s.cells() == [(1, 2), (1, 3), (2, 1), (2, 2)]
        assert s.ncells == 4 and not s.is_straight
        assert s.contains(2, 1) and not s.contains(1, 1)
        assert SkewShape(Partition((2, 2))).is_straight


class TestSetValuedTableau:
    def test_from_rows_and_accessors(self):
        t = SetValuedTableau.from_rows([[[1, 2], [3]], [[4], [5]]])
        assert str(t) == "{1,2} {3} / {4} {5}"
        assert t.cell(1, 1) == (1, 2)
        assert t.cell(2, 2) == (5,)
        assert [pos for pos, _ in t.cells()] == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert t.ncells == 4 and t.nentries == 5 and t.extras == 1
        with pytest.raises(InvalidShape):
            t.cell(3, 1)

    def test_json_roundtrip(self):
        t = SetValuedTableau.from_rows([[[2, 4], [7, 8]], [[3, 5], [6]]], inner=(1,))
        d = t.to_json_dict()
        assert d["inner"] == [1]
        assert SetValuedTableau.from_json_dict(d) == t
        d["outer"] = [4, 2]
        with pytest.raises(InvalidShape):
            SetValuedTableau.from_json_dict(d)

    def test_validate_returns_extras(self):
        t = SetValuedTableau.from_rows([[[1, 2, 3], [4]], [[5], [6, 7]]])
        assert validate_svsyt(t) == 3

    def test_validation_errors(self):
        with pytest.raises(EmptyCell):
            validate_svsyt(SetValuedTableau.from_rows([[[1], []]]))
        # entries must tile 1..N exactly
        with pytest.raises(NotAPartitionOfRange):
            validate_svsyt(SetValuedTableau.from_rows([[[1], [3]]]))
        with pytest.raises(NotAPartitionOfRange):
            validate_svsyt(SetValuedTableau.from_rows([[[1], [1, 2]]]))
        # row order: max of a cell must precede min of its right neighbor
        with pytest.raises(OrderViolation):
            validate_svsyt(SetValuedTableau.from_rows([[[2], [1]]]))
        # column order
        with pytest.raises(OrderViolation):
            validate_svsyt(SetValuedTableau.from_rows([[[2], [3]], [[1], [4]]]))


class TestPermutation:
    def test_validation(self):
        with pytest.raises(NotAPermutation):
            Permutation((1, 3))
        with pytest.raises(NotAPermutation):
            Permutation((1, 1, 2))
        assert len(Permutation((2, 1))) == 2

    def test_text_roundtrip(self):
        w = Permutation.from_text("3 5 1 2 7 8 4 10 11 6 9")
        assert w.to_text() == "3 5 1 2 7 8 4 10 11 6 9"
        assert list(w) == [3, 5, 1, 2, 7, 8, 4, 10, 11, 6, 9]

    def test_321_avoidance(self):
        assert Permutation((3, 5, 1, 2, 7, 8, 4, 10, 11, 6, 9)).is_321_avoiding()
        assert not Permutation((3, 2, 1)).is_321_avoiding()
        assert not Permutation((1, 4, 3, 2)).is_321_avoiding()
        assert Permutation(()).is_321_avoiding()

    @given(st.permutations(list(range(1, 8))))
    def test_avoidance_matches_brute_force(self, words):
        w = Permutation(tuple(words))
        n = len(w)
        brute = not any(
            w.word[i] > w.word[j] > w.word[k]
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(j + 1, n)
        )
        assert w.is_321_avoiding() == brute


def _oracle_tags(word: str) -> frozenset[str] | None:
    """Independent restatement of the family predicates; None = invalid path."""
    h = 0
    heights_before = []
    for ch in word:
        heights_before.append(h)
        h += {"U": 1, "D": -1, "u": 0, "d": 0}[ch]
        if h < 0:
            return None
    no_low_u = all(ch != "u" or hb > 0 for ch, hb in zip(word, heights_before))
    first_big_d = word.index("D") if "D" in word else len(word)
    no_early_d = "d" not in word[:first_big_d]
    tags = set()
    if h == 0:
        tags.add("motz")
        if no_low_u:
            tags.add("motzE")
        if no_early_d:
            tags.add("motzT")
        if no_low_u and no_early_d:
            tags.add("motzET")
    if no_low_u and no_early_d:
        tags.add("ballotlike")
    return frozenset(tags)


class TestColoredPath:
    def test_step_validation(self):
        with pytest.raises(NegativeHeight):
            ColoredPath("D")
        with pytest.raises(NegativeHeight):
            ColoredPath("UDD")
        with pytest.raises(NotInFamily):
            ColoredPath("UxD")

    def test_heights(self):
        p = ColoredPath("UuDd")
        assert p.heights() == (1, 1, 0, 0)
        assert p.final_height == 0
        assert ColoredPath("UU").final_height == 2
        assert ColoredPath("").heights() == ()

    def test_tag_examples(self):
        assert path_family(ColoredPath("Ud")) == frozenset()
        assert path_family(ColoredPath("uu")) == frozenset({"motz", "motzT"})
        assert path_family(ColoredPath("dd")) == frozenset({"motz", "motzE"})
        assert path_family(ColoredPath("ud")) == frozenset({"motz"})
        assert path_family(ColoredPath("U")) == frozenset({"ballotlike"})
        assert path_family(ColoredPath("")) == frozenset(
            {"motz", "motzE", "motzT", "motzET", "ballotlike"}
        )

    def test_tags_match_oracle_exhaustively(self):
        for n in range(8):
            for tup in itertools.product("UDud", repeat=n):
                word = "".join(tup)
                expected = _oracle_tags(word)
                if expected is None:
                    with pytest.raises(NegativeHeight):
                        ColoredPath(word)
                else:
                    assert path_family(ColoredPath(word)) == expected
