"""Naturally labeled posets, set-valued linear extensions, and weight identities.

A poset here always carries labels 1..n with every cover increasing the label
(a natural labeling).  Set-valued linear extensions generalize linear
extensions by letting each element absorb extra entries; the cut-weight
machinery expresses their comajor generating polynomial through ordinary
linear extensions, and the check operations verify those identities exactly.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .closedform import hook_count
from .core import (
    EmptyCell,
    NotAPartitionOfRange,
    OrderViolation,
    OutOfRange,
    Partition,
    SvtabError,
)
from .biject import InvalidPick
from .enumerate import gen_svsyt
from .rings import QPoly
from .stats import comaj_plus_k, ddeg, descent_set_plus_k

__all__ = [
    "NotNaturallyLabeled",
    "Poset",
    "SetValuedLinearExtension",
    "Multichain",
    "chain",
    "antichain",
    "young_diagram",
    "relabel",
    "linear_extensions",
    "order_ideals",
    "descent_positions",
    "comaj",
    "sv_linear_extensions",
    "decompose_extension",
    "compose_extension",
    "pi_perm",
    "vartheta",
    "qbinom",
    "sum_identity_check",
    "expected_ddeg",
    "equidistribution_check",
    "catalog",
]


class NotNaturallyLabeled(SvtabError):
    """Some relation edge decreases the label, so the labeling is not natural."""


@dataclass(frozen=True)
class Poset:
    """Finite poset on labels 1..n given by an edge list of its order relation.

    Edges may include transitively redundant pairs; the true cover relation is
    recovered internally.  Every edge must increase the label, which also
    guarantees acyclicity.
    """

    n: int
    covers: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise OutOfRange(f"need n >= 0, got {self.n}")
        object.__setattr__(self, "covers", tuple((a, b) for a, b in self.covers))
        for a, b in self.covers:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise OutOfRange(f"edge {(a, b)} outside 1..{self.n}")
            if a >= b:
                raise NotNaturallyLabeled(f"edge {(a, b)} does not increase the label")

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def above(self) -> dict[int, frozenset[int]]:
        """Strictly greater elements, from the transitive closure."""
        succ: dict[int, set[int]] = {x: set() for x in self.elements}
        for a, b in self.covers:
            succ[a].add(b)
        up: dict[int, frozenset[int]] = {}
        for x in range(self.n, 0, -1):
            acc: set[int] = set()
            for y in succ[x]:
                acc.add(y)
                acc |= up[y]
            up[x] = frozenset(acc)
        return up

    @cached_property
    def below(self) -> dict[int, frozenset[int]]:
        down: dict[int, set[int]] = {x: set() for x in self.elements}
        for x, ups in self.above.items():
            for y in ups:
                down[y].add(x)
        return {x: frozenset(s) for x, s in down.items()}

    def less(self, a: int, b: int) -> bool:
        return b in self.above[a]

    @cached_property
    def _cover_map(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for x in self.elements:
            ups = self.above[x]
            out[x] = tuple(
                sorted(y for y in ups if not any(y in self.above[z] for z in ups))
            )
        return out

    def cover_successors(self, x: int) -> tuple[int, ...]:
        """Elements covering x (immediate successors in the true cover relation)."""
        return self._cover_map[x]

    @property
    def natural(self) -> bool:
        """Always true: construction rejects label-decreasing edges."""
        return all(a < b for a, b in self.covers)

    def is_ideal(self, members) -> bool:
        s = frozenset(members)
        return all(self.below[x] <= s for x in s)


def chain(n: int) -> Poset:
    return Poset(n, tuple((i, i + 1) for i in range(1, n)))


def antichain(n: int) -> Poset:
    return Poset(n, ())


def young_diagram(shape) -> Poset:
    """Cells of the diagram ordered componentwise, labeled row-major."""
    p = shape if isinstance(shape, Partition) else Partition(tuple(shape))
    label = {}
    for r in range(1, p.nrows + 1):
        for c in range(1, p.part(r) + 1):
            label[(r, c)] = len(label) + 1
    edges = []
    for (r, c), a in label.items():
        for nb in ((r + 1, c), (r, c + 1)):
            if nb in label:
                edges.append((a, label[nb]))
    return Poset(len(label), tuple(sorted(edges)))


def relabel(poset: Poset, ext: tuple[int, ...]) -> Poset:
    """The order-isomorphic poset in which ext's j-th element gets label j."""
    assert tuple(sorted(ext)) == tuple(poset.elements), "not a relabeling"
    pos = {e: j for j, e in enumerate(ext, start=1)}
    return Poset(poset.n, tuple(sorted((pos[a], pos[b]) for a, b in poset.covers)))


# ---------------------------------------------------------------------------
# linear extensions, plain and set-valued


def linear_extensions(poset: Poset):
    """All linear extensions as label tuples, lexicographically smallest first."""
    taken = [0] * (poset.n + 1)
    out: list[int] = []

    def walk():
        if len(out) == poset.n:
            yield tuple(out)
            return
        for x in poset.elements:
            if not taken[x] and all(taken[y] for y in poset.below[x]):
                taken[x] = 1
                out.append(x)
                yield from walk()
                out.pop()
                taken[x] = 0

    yield from walk()


def order_ideals(poset: Poset):
    """All order ideals as frozensets (small posets only)."""
    assert poset.n <= 16, "order_ideals is meant for small posets"
    for bits in range(1 << poset.n):
        members = frozenset(x for x in poset.elements if bits >> (x - 1) & 1)
        if poset.is_ideal(members):
            yield members


def descent_positions(ext: tuple[int, ...]) -> frozenset[int]:
    """Times j whose next element has a smaller label."""
    return frozenset(j for j in range(1, len(ext)) if ext[j] < ext[j - 1])


def comaj(ext: tuple[int, ...]) -> int:
    n = len(ext)
    return sum(n - j for j in descent_positions(ext))


@dataclass(frozen=True)
class SetValuedLinearExtension:
    """Assignment of disjoint nonempty entry sets to poset elements.

    The sets partition 1..n+k and comparable elements get fully separated
    ranges: p < q forces max S(p) < min S(q).
    """

    poset: Poset
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks)
        )
        if len(self.blocks) != self.poset.n:
            raise OutOfRange(
                f"expected {self.poset.n} blocks, got {len(self.blocks)}"
            )
        seen: list[int] = []
        for x, b in enumerate(self.blocks, start=1):
            if not b:
                raise EmptyCell(f"element {x} received no entries")
            seen.extend(b)
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise NotAPartitionOfRange(
                f"entries do not partition 1..{len(seen)}"
            )
        for a in self.poset.elements:
            for b in self.poset.above[a]:
                if self.blocks[a - 1][-1] > self.blocks[b - 1][0]:
                    raise OrderViolation(
                        f"block of {a} must finish before block of {b} starts"
                    )

    @property
    def nentries(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def extras(self) -> int:
        return self.nentries - self.poset.n

    def labeled_blocks(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(x, b) for x, b in enumerate(self.blocks, start=1)]

    def __str__(self) -> str:
        return " ".join(
            f"{x}:{{{','.join(map(str, b))}}}" for x, b in self.labeled_blocks()
        )


@dataclass(frozen=True)
class Multichain:
    """Weakly increasing sequence of order ideals of one poset."""

    poset: Poset
    ideals: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "ideals", tuple(frozenset(i) for i in self.ideals)
        )
        for i in self.ideals:
            if not self.poset.is_ideal(i):
                raise OrderViolation(f"{sorted(i)} is not downward closed")
        for a, b in zip(self.ideals, self.ideals[1:]):
            if not a <= b:
                raise OrderViolation("ideals must weakly increase")


def _direct_sv_extensions(poset: Poset, k: int):
    """Entry-by-entry backtracking straight from the definition."""
    n, total = poset.n, poset.n + k
    blocks: list[list[int]] = [[] for _ in range(n)]
    filled = [False] * (n + 1)
    nonempty = 0

    def walk(e: int):
        nonlocal nonempty
        if total - e + 1 < n - nonempty:
            return  # not enough entries left to feed every empty element
        if e > total:
            yield SetValuedLinearExtension(
                poset, tuple(tuple(b) for b in blocks)
            )
            return
        for x in poset.elements:
            if any(not filled[y] for y in poset.below[x]):
                continue
            if any(filled[y] for y in poset.above[x]):
                continue
            was = filled[x]
            blocks[x - 1].append(e)
            filled[x] = True
            nonempty += 0 if was else 1
            yield from walk(e + 1)
            nonempty -= 0 if was else 1
            filled[x] = was
            blocks[x - 1].pop()

    if n == 0:
        if k == 0:
            yield SetValuedLinearExtension(poset, ())
        return
    yield from walk(1)


def compose_extension(
    poset: Poset,
    ext: tuple[int, ...],
    cuts: tuple[int, ...],
    picks: tuple[int, ...],
) -> SetValuedLinearExtension:
    """Insert one extra entry per cut into a linear extension.

    Stage i grows the block of picks[i-1] by the entry cuts[i-1]+i, shifting
    larger entries up.  The pick must be a maximal element of the ideal formed
    by the first cuts[i-1] elements of ext.
    """
    n = poset.n
    if tuple(sorted(ext)) != tuple(poset.elements):
        raise InvalidPick(f"{ext} is not a linear extension listing")
    for j in range(1, n):
        if ext[j] in poset.below[ext[j - 1]]:
            raise InvalidPick(f"{ext} violates the order at position {j}")
    k = len(cuts)
    if len(picks) != k:
        raise InvalidPick("cuts and picks must have equal length")
    if any(not 1 <= c <= n for c in cuts):
        raise InvalidPick(f"cuts out of range 1..{n}: {cuts}")
    if any(cuts[a] > cuts[a + 1] for a in range(k - 1)):
        raise InvalidPick(f"cuts must weakly increase: {cuts}")
    time_of = {x: j for j, x in enumerate(ext, start=1)}
    for cut, p in zip(cuts, picks):
        if time_of.get(p, n + 1) > cut:
            raise InvalidPick(f"element {p} is outside the ideal of cut {cut}")
        if any(time_of[y] <= cut for y in poset.cover_successors(p)):
            raise InvalidPick(f"element {p} is not maximal for cut {cut}")
    blocks = [[time_of[x]] for x in poset.elements]
    for i, (cut, p) in enumerate(zip(cuts, picks), start=1):
        e = cut + i
        for b in blocks:
            for a, v in enumerate(b):
                if v >= e:
                    b[a] = v + 1
        blocks[p - 1].append(e)
    out = SetValuedLinearExtension(poset, tuple(tuple(b) for b in blocks))
    assert out.extras == k
    return out


def decompose_extension(
    s: SetValuedLinearExtension,
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Peel the extra entries off, largest non-minimal entry first.

    Returns (ext, cuts, picks) with compose_extension as exact inverse.
    """
    poset = s.poset
    k = s.extras
    blocks = [list(b) for b in s.blocks]
    cuts, picks = [0] * k, [0] * k
    for i in range(k, 0, -1):
        e, px = max(
            (b[a], x)
            for x, b in enumerate(blocks, start=1)
            for a in range(1, len(b))
        )
        cuts[i - 1] = e - i
        picks[i - 1] = px
        blocks[px - 1].remove(e)
        for b in blocks:
            for a, v in enumerate(b):
                if v > e:
                    b[a] = v - 1
    assert all(len(b) == 1 for b in blocks)
    assert all(c >= 1 for c in cuts) and sorted(cuts) == cuts
    ext = [0] * poset.n
    for x, b in enumerate(blocks, start=1):
        ext[b[0] - 1] = x
    return tuple(ext), tuple(cuts), tuple(picks)


def _maximal_in_prefix(poset: Poset, ext: tuple[int, ...], t: int) -> list[int]:
    members = set(ext[:t])
    return [x for x in ext[:t] if not any(y in members for y in poset.cover_successors(x))]


def sv_linear_extensions(poset: Poset, k: int):
    """All set-valued linear extensions with k extra entries.

    Generated twice — straight from the definition and through the
    cut-and-pick composition over ordinary linear extensions — and the two
    collections are asserted identical before the first route is streamed out
    in its backtracking order.
    """
    if k < 0:
        raise OutOfRange(f"need k >= 0, got {k}")
    direct = list(_direct_sv_extensions(poset, k))
    composed = set()
    for ext in linear_extensions(poset):
        for cuts in itertools.combinations_with_replacement(
            range(1, poset.n + 1), k
        ):
            pick_pools = [_maximal_in_prefix(poset, ext, t) for t in cuts]
            for picks in itertools.product(*pick_pools):
                composed.add(compose_extension(poset, ext, cuts, picks))
    assert len(composed) == len(direct), "composition route disagrees in size"
    assert composed == set(direct), "composition route disagrees in content"
    yield from direct


# ---------------------------------------------------------------------------
# cut weights and the identities


def pi_perm(n: int, x_set, t: int) -> int:
    """Position of t under the cut permutation of {0..n} attached to x_set."""
    if not 0 <= t <= n:
        raise OutOfRange(f"need 0 <= t <= {n}, got {t}")
    xs = frozenset(x_set)
    assert all(0 <= j <= n for j in xs)
    return sum(1 for j in xs if j < t) + (0 if t in xs else n - t)


def _check_cuts(n: int, cuts: tuple[int, ...]) -> None:
    if any(not 0 <= t <= n for t in cuts) or any(
        cuts[a] > cuts[a + 1] for a in range(len(cuts) - 1)
    ):
        raise OutOfRange(f"cuts must weakly increase within 0..{n}: {cuts}")


def vartheta(ext: tuple[int, ...], cuts: tuple[int, ...]) -> QPoly:
    """Cut weight of a linear extension: q to the shared set-valued comajor
    index of every extension compatible with these cuts.

    Inserting the extras puts entry t_i+i in the block of the i-th pick and
    pushes the base entry of time j up to j + #{i: t_i < j}; a descent of the
    extension at time j survives exactly when no cut equals j.  Summing the
    resulting comajor contributions gives the closed form used here, which is
    independent of the picks.
    """
    n = len(ext)
    k = len(cuts)
    _check_cuts(n, cuts)
    des = descent_positions(ext)
    cut_set = set(cuts)
    exp = k * (k - 1) // 2 + sum(n - t for t in cuts)
    for j in des:
        if j not in cut_set:
            exp += (n - j) + sum(1 for t in cuts if t > j)
    return QPoly.monomial(exp)


def qbinom(a: int, b: int) -> QPoly:
    """Gaussian binomial coefficient; exact polynomial division throughout."""
    if not 0 <= b <= a:
        raise OutOfRange(f"need 0 <= b <= a, got {(a, b)}")

    def qfact(m: int) -> QPoly:
        out = QPoly.one()
        for i in range(1, m + 1):
            out = out * QPoly([1] * i)
        return out

    return qfact(a).divexact(qfact(b) * qfact(a - b))


def _comaj_polynomial(poset: Poset) -> QPoly:
    acc = QPoly.zero()
    for ext in linear_extensions(poset):
        acc = acc + QPoly.monomial(comaj(ext))
    return acc


def sum_identity_check(poset: Poset, k: int) -> tuple[QPoly, QPoly]:
    """Total cut weight vs its closed form; both returned, equality asserted.

    Summing vartheta over all linear extensions and all weakly increasing cut
    vectors in {0..n} equals q^(k choose 2) times the Gaussian binomial
    [n+k over k] times the plain comajor polynomial.
    """
    if k < 0:
        raise OutOfRange(f"need k >= 0, got {k}")
    n = poset.n
    lhs = QPoly.zero()
    for ext in linear_extensions(poset):
        for cuts in itertools.combinations_with_replacement(range(n + 1), k):
            lhs = lhs + vartheta(ext, cuts)
    rhs = (
        QPoly.monomial(k * (k - 1) // 2)
        * qbinom(n + k, k)
        * _comaj_polynomial(poset)
    )
    assert lhs == rhs, "cut-weight sum identity failed"
    return lhs, rhs


def expected_ddeg(poset: Poset, k: int) -> tuple[QPoly, QPoly]:
    """Numerator and denominator of the expected ideal-degree product.

    The expectation of prod ddeg(I_j) under the cut-weight distribution is
    computed two ways — multichain side and direct set-valued enumeration —
    asserted equal, and returned as (numerator, denominator) of the cleared
    rational form.
    """
    if k < 0:
        raise OutOfRange(f"need k >= 0, got {k}")
    n = poset.n
    lhs_num = QPoly.zero()
    lhs_den = QPoly.zero()
    for ext in linear_extensions(poset):
        prefix_ddeg = [
            len(_maximal_in_prefix(poset, ext, t)) for t in range(n + 1)
        ]
        for cuts in itertools.combinations_with_replacement(range(n + 1), k):
            w = 1
            for t in cuts:
                w *= prefix_ddeg[t]
            weight = vartheta(ext, cuts)
            lhs_den = lhs_den + weight
            if w:
                lhs_num = lhs_num + weight * w
    rhs_num = QPoly.zero()
    for s in sv_linear_extensions(poset, k):
        rhs_num = rhs_num + QPoly.monomial(comaj_plus_k(s))
    rhs_den = (
        QPoly.monomial(k * (k - 1) // 2)
        * qbinom(n + k, n)
        * _comaj_polynomial(poset)
    )
    assert lhs_num == rhs_num, "expected ideal-degree numerators differ"
    assert lhs_num * rhs_den == rhs_num * lhs_den, (
        "expected ideal-degree rational forms differ"
    )
    return rhs_num, rhs_den


def equidistribution_check(shape, k: int):
    """Compare descent-set count tables of a shape and its conjugate.

    Returns (equal, table, conjugate_table) where each table maps a descent
    set to how many k-extra tableaux of that shape produce it.
    """
    p = shape if isinstance(shape, Partition) else Partition(tuple(shape))
    conj = p.conjugate()

    def table(sh: Partition) -> dict[frozenset[int], int]:
        out: Counter = Counter()
        for t in gen_svsyt(sh.parts, k):
            out[descent_set_plus_k(t)] += 1
        return dict(out)

    t1, t2 = table(p), table(conj)
    return t1 == t2, t1, t2


# ---------------------------------------------------------------------------
# deterministic test catalog


def _partitions(n: int):
    def rec(rest: int, cap: int, acc: tuple[int, ...]):
        if rest == 0:
            yield acc
            return
        for part in range(min(cap, rest), 0, -1):
            yield from rec(rest - part, part, acc + (part,))

    yield from rec(n, n, ())


def _column_major_extension(shape: Partition) -> tuple[int, ...]:
    label = {}
    for r in range(1, shape.nrows + 1):
        for c in range(1, shape.part(r) + 1):
            label[(r, c)] = len(label) + 1
    order = sorted(label, key=lambda rc: (rc[1], rc[0]))
    return tuple(label[rc] for rc in order)


def catalog() -> list[tuple[str, Poset]]:
    """Fixed, deterministic poset list used by the identity sweeps."""
    out: list[tuple[str, Poset]] = []
    for n in range(1, 7):
        out.append((f"chain{n}", chain(n)))
    for n in range(1, 6):
        out.append((f"antichain{n}", antichain(n)))
    for n in range(1, 7):
        for parts in _partitions(n):
            name = "young-" + "-".join(map(str, parts))
            out.append((name, young_diagram(parts)))
    for parts in ((2, 2), (3, 1), (2, 1, 1), (3, 2, 1)):
        shape = Partition(parts)
        ext = _column_major_extension(shape)
        name = "young-" + "-".join(map(str, parts)) + "-colmajor"
        out.append((name, relabel(young_diagram(shape), ext)))
    out.append(("vee", Poset(3, ((1, 2), (1, 3)))))
    out.append(("wedge", Poset(3, ((1, 3), (2, 3)))))
    return out


def _two_row_specialization(b: int, k: int) -> int:
    """Cross-tie: sv extension count of the 2×b diagram poset vs hook count route."""
    poset = young_diagram((b, b))
    got = sum(1 for _ in sv_linear_extensions(poset, k))
    assert hook_count((b, b)) == sum(1 for _ in linear_extensions(poset))
    return got
