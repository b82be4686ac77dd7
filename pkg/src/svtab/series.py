"""Truncated formal power series for the bicolored Motzkin path families.

Everything is exact: coefficients are integer polynomials in the four step
markers U, D, u, d (or in q for the valley-refined family), and every
division along the way is asserted exact.  The four named series are

  E    -- all bicolored Motzkin paths ("motz"),
  E1   -- paths with no low-level u step ("motzE"),
  E2   -- paths with no d step before the first D ("motzT"),
  E12  -- paths obeying both restrictions ("motzET"),

each with [t^n] the generating polynomial of the length-n paths by step
multiset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import threading

from .core import OutOfRange, SvtabError
from .enumerate import gen_avoid321
from .rings import MARKERS, InexactDivision, MultiPoly, QPoly, TSeries
from .stats import inner_valleys

__all__ = [
    "NonConvergence",
    "NonInvertibleDenominator",
    "DivisionNotExact",
    "SeriesContext",
    "solve_E",
    "derived_series",
    "closed_form_E",
    "expected_steps",
    "peaks_genfun_check",
]


class NonConvergence(SvtabError):
    """Fixed-point iteration failed to stabilize within its structural bound."""


class NonInvertibleDenominator(SvtabError):
    """A series denominator lacks the unit constant term needed for inversion."""


DivisionNotExact = InexactDivision

_U = MultiPoly.gen("U")
_D = MultiPoly.gen("D")
_u = MultiPoly.gen("u")
_d = MultiPoly.gen("d")


def _excursion_block(e: TSeries) -> TSeries:
    """U·D·t²·E, the weight of one positive excursion returning to its level."""
    return (e * (_U * _D)).shift_up(2)


def solve_E(order: int) -> TSeries:
    """Solve E = 1 + (u+d)·t·E + U·D·t²·E² by fixed-point iteration.

    Each pass determines at least one further t-degree, so the iteration must
    stabilize within order+2 passes.
    """
    if order < 0:
        raise OutOfRange(f"need order >= 0, got {order}")
    level = TSeries(MultiPoly, order, [0, _u + _d])
    e = TSeries.const(MultiPoly, order, 1)
    for _ in range(order + 2):
        nxt = 1 + level * e + _excursion_block(e) * e
        if nxt == e:
            return e
        e = nxt
    raise NonConvergence(f"series not stable after {order + 2} passes")


def _inverse_of(den: TSeries) -> TSeries:
    if den.coeffs[0] != den.ring.one():
        raise NonInvertibleDenominator("denominator constant term is not 1")
    return den.inverse()


def derived_series(e: TSeries) -> tuple[TSeries, TSeries, TSeries]:
    """The three restricted-family series (E1, E2, E12) built on top of E.

    E1 inverts 1 - (U·D·t²·E + d·t): a low level carries d steps and
    excursions but never u.  E2 inverts 1 - (u·t + U·D·t²·E): before the
    first D only u steps and excursions occur, so no early d is possible.
    E12 stacks one excursion factor over both restricted levels.
    """
    order = e.order
    block = _excursion_block(e)
    t_u = TSeries(MultiPoly, order, [0, _u])
    t_d = TSeries(MultiPoly, order, [0, _d])
    e1 = _inverse_of(1 - (block + t_d))
    e2 = _inverse_of(1 - (t_u + block))
    e12 = ((e1 * e2) * (_U * _D)).shift_up(2)
    return e1, e2, e12


def closed_form_E(order: int) -> TSeries:
    """E via its algebraic closed form: (1-(u+d)t - sqrt(R)) / (2·U·D·t²).

    R = ((u+d)t - 1)² - 4·U·D·t².  The square root is the branch with
    constant term 1; the numerator is then exactly divisible by 2·U·D·t².
    """
    if order < 0:
        raise OutOfRange(f"need order >= 0, got {order}")
    # Work two degrees high so the division by t² leaves valid top terms.
    big = order + 2
    s = _u + _d
    radicand = TSeries(MultiPoly, big, [1, s * (-2), s * s - _U * _D * 4])
    root = radicand.sqrt()
    numer = 1 - TSeries(MultiPoly, big, [0, s]) - root
    halved = TSeries(
        MultiPoly,
        big,
        [c.divexact_monomial(2, (1, 1, 0, 0)) for c in numer.coeffs],
    )
    return TSeries(MultiPoly, order, halved.shift_down(2).coeffs[: order + 1])


@dataclass(frozen=True, eq=False)
class SeriesContext:
    """Immutable bundle of the four path series at a common truncation order."""

    order: int
    E: TSeries
    E1: TSeries
    E2: TSeries
    E12: TSeries

    @classmethod
    def build(cls, order: int) -> "SeriesContext":
        e = solve_E(order)
        e1, e2, e12 = derived_series(e)
        ctx = cls(order, e, e1, e2, e12)
        assert not any(ctx.residuals().values()), "functional equations violated"
        return ctx

    def residuals(self) -> dict[str, TSeries]:
        """Defect of each series in its defining equation (all must be 0)."""
        order = self.order
        block = _excursion_block(self.E)
        t_u = TSeries(MultiPoly, order, [0, _u])
        t_d = TSeries(MultiPoly, order, [0, _d])
        level = TSeries(MultiPoly, order, [0, _u + _d])
        return {
            "E": self.E - (1 + level * self.E + block * self.E),
            "E1": self.E1 * (1 - (block + t_d)) - 1,
            "E2": self.E2 * (1 - (t_u + block)) - 1,
            "E12": self.E12 * (1 - (block + t_d)) * (1 - (t_u + block))
            - TSeries(MultiPoly, order, [0, 0, _U * _D]),
        }


_CTX_LOCK = threading.Lock()
_CTX: SeriesContext | None = None


def _shared_context(order: int) -> SeriesContext:
    global _CTX
    with _CTX_LOCK:
        if _CTX is None or _CTX.order < order:
            _CTX = SeriesContext.build(max(order, 12))
        return _CTX


def expected_steps(n: int, step: str) -> Fraction:
    """Exact expected number of `step` letters in a uniform length-n motzET path."""
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    if step not in MARKERS:
        raise OutOfRange(f"step must be one of {MARKERS}, got {step!r}")
    poly = _shared_context(n).E12.coeff(n)
    total = poly.at_ones()
    assert total > 0
    return Fraction(poly.weighted_exponent_sum(step), total)


def peaks_genfun_check(order: int, brute_limit: int = 8) -> dict[int, QPoly]:
    """Length-by-length valley polynomials of 321-avoiding permutations.

    Expands 1 + (1-s)² / (4z·(1+(q-1)z)²) with s = sqrt(1-4z+4z²-4qz²) as a
    series in z over integer q-polynomials; the coefficient of q^k·z^n counts
    the 321-avoiders of n with k inner valleys.  Coefficients up to
    min(order, brute_limit) are checked against exhaustive tallies before the
    table is returned.
    """
    if order < 2:
        raise OutOfRange(f"need order >= 2, got {order}")
    big = order + 1
    q = QPoly.monomial(1)
    radicand = TSeries(QPoly, big, [1, -4, 4 - q * 4])
    root = radicand.sqrt()
    numer = (1 - root) * (1 - root)
    den = TSeries(QPoly, big, [1, (q - 1) * 2, (q - 1) * (q - 1)])
    g_big = 1 + numer.divexact_int(4).shift_down(1) * _inverse_of(den)
    table = {n: g_big.coeff(n) for n in range(order + 1)}
    assert table[0] == QPoly.one()
    for n in range(1, min(order, brute_limit) + 1):
        tally: Counter = Counter()
        for w in gen_avoid321(n):
            tally[len(inner_valleys(w))] += 1
        want = QPoly([tally.get(e, 0) for e in range(max(tally) + 1)])
        assert table[n] == want, f"valley tally mismatch at n={n}"
    return table
