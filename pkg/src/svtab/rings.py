"""Exact polynomial and truncated power-series arithmetic.

Everything here is integer-exact: no floats, divisions assert exactness.
Coefficient rings (QPoly, MultiPoly) share a small duck-typed protocol so
TSeries can be generic over either: ``zero()``/``one()``/``from_int()``
classmethods, ring ops, and ``divexact_int``.
"""

from __future__ import annotations

from typing import Iterable


class InexactDivision(ArithmeticError):
    pass


class QPoly:
    """Univariate polynomial in q with int coefficients, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def from_int(cls, c: int) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, exp: int, c: int = 1) -> "QPoly":
        return cls((0,) * exp + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly.from_int(other)
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            other = QPoly.from_int(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            other = QPoly.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "QPoly":
        return QPoly.from_int(other) - self

    def __mul__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            return QPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def divexact_int(self, d: int) -> "QPoly":
        for c in self.coeffs:
            if c % d:
                raise InexactDivision(f"{c} not divisible by {d}")
        return QPoly(tuple(c // d for c in self.coeffs))

    def divexact(self, other: "QPoly") -> "QPoly":
        """Exact polynomial division; raises InexactDivision on any remainder."""
        if not other:
            raise ZeroDivisionError
        rem = list(self.coeffs)
        dvs = other.coeffs
        lead = dvs[-1]
        if len(rem) < len(dvs):
            if any(rem):
                raise InexactDivision("degree of dividend below divisor")
            return QPoly()
        quot = [0] * (len(rem) - len(dvs) + 1)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(dvs) - 1]
            if c % lead:
                raise InexactDivision(f"leading term {c} not divisible by {lead}")
            f = c // lead
            quot[k] = f
            if f:
                for j, cd in enumerate(dvs):
                    rem[k + j] -= f * cd
        if any(rem):
            raise InexactDivision("nonzero remainder")
        return QPoly(quot)

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def coeff(self, exp: int) -> int:
        return self.coeffs[exp] if 0 <= exp < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                parts.append(f"{c}")
            else:
                var = "q" if e == 1 else f"q^{e}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts)


MARKERS = ("U", "D", "u", "d")


class MultiPoly:
    """Polynomial in the four step markers U, D, u, d with int coefficients.

    Keys are exponent 4-tuples (eU, eD, eu, ed); zero coefficients are never
    stored.  Treated as immutable: all ops return fresh instances.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls({(0, 0, 0, 0): 1})

    @classmethod
    def from_int(cls, c: int) -> "MultiPoly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def gen(cls, marker: str) -> "MultiPoly":
        exp = [0, 0, 0, 0]
        exp[MARKERS.index(marker)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def from_word(cls, word: str) -> "MultiPoly":
        """Monomial recording the step multiset of a path word."""
        exp = [0, 0, 0, 0]
        for ch in word:
            exp[MARKERS.index(ch)] += 1
        return cls({tuple(exp): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MultiPoly.from_int(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            other = MultiPoly.from_int(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            other = MultiPoly.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "MultiPoly":
        return MultiPoly.from_int(other) - self

    def __mul__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly({k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, int, int, int], int] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3])
                out[k] = out.get(k, 0) + va * vb
        return MultiPoly(out)

    __rmul__ = __mul__

    def divexact_int(self, d: int) -> "MultiPoly":
        out = {}
        for k, v in self.terms.items():
            if v % d:
                raise InexactDivision(f"{v} not divisible by {d}")
            out[k] = v // d
        return MultiPoly(out)

    def divexact_monomial(self, c: int, exp: tuple[int, int, int, int]) -> "MultiPoly":
        out = {}
        for k, v in self.terms.items():
            nk = tuple(a - b for a, b in zip(k, exp))
            if any(a < 0 for a in nk) or v % c:
                raise InexactDivision(f"term {k}:{v} not divisible by {c}*{exp}")
            out[nk] = v // c
        return MultiPoly(out)

    def at_ones(self) -> int:
        """Specialize every marker to 1."""
        return sum(self.terms.values())

    def weighted_exponent_sum(self, marker: str) -> int:
        """Sum of coeff * exponent-of-marker over all terms (= d/dX at all ones)."""
        i = MARKERS.index(marker)
        return sum(v * k[i] for k, v in self.terms.items())

    def swap(self, a: str, b: str) -> "MultiPoly":
        i, j = MARKERS.index(a), MARKERS.index(b)
        out = {}
        for k, v in self.terms.items():
            nk = list(k)
            nk[i], nk[j] = nk[j], nk[i]
            out[tuple(nk)] = v
        return MultiPoly(out)

    def sorted_terms(self) -> list[tuple[tuple[int, int, int, int], int]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        return f"MultiPoly({dict(self.sorted_terms())})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            mono = "*".join(
                f"{m}^{e}" if e > 1 else m for m, e in zip(MARKERS, k) if e
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts)


class TSeries:
    """Power series in t truncated at order N, coefficients in QPoly or MultiPoly.

    ``coeffs[n]`` is the coefficient of t^n; the list always has length N+1.
    Divisions require unit constant terms (or exact monomial/int division) and
    raise InexactDivision otherwise, so any conventions slip surfaces loudly.
    """

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, order: int, coeffs: Iterable = ()):
        self.ring = ring
        self.order = order
        cs = [self._lift(c) for c in coeffs][: order + 1]
        cs += [ring.zero()] * (order + 1 - len(cs))
        self.coeffs = cs

    def _lift(self, c):
        return self.ring.from_int(c) if isinstance(c, int) else c

    @classmethod
    def const(cls, ring, order: int, c) -> "TSeries":
        return cls(ring, order, [c])

    def coeff(self, n: int):
        assert 0 <= n <= self.order, f"coefficient t^{n} beyond truncation {self.order}"
        return self.coeffs[n]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        assert self.order == other.order
        return self.coeffs == other.coeffs

    def __add__(self, other: "TSeries | int"):
        if isinstance(other, int):
            other = TSeries.const(self.ring, self.order, other)
        assert self.order == other.order
        return TSeries(
            self.ring, self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries(self.ring, self.order, [-c for c in self.coeffs])

    def __sub__(self, other: "TSeries | int") -> "TSeries":
        if isinstance(other, int):
            other = TSeries.const(self.ring, self.order, other)
        return self + (-other)

    def __rsub__(self, other: int) -> "TSeries":
        return TSeries.const(self.ring, self.order, other) - self

    def __mul__(self, other):
        if isinstance(other, TSeries):
            assert self.order == other.order
            n = self.order
            out = [self.ring.zero() for _ in range(n + 1)]
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(0, n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return TSeries(self.ring, n, out)
        c = self._lift(other)
        return TSeries(self.ring, self.order, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def shift_up(self, j: int) -> "TSeries":
        """Multiply by t^j."""
        return TSeries(self.ring, self.order, [self.ring.zero()] * j + self.coeffs)

    def shift_down(self, j: int) -> "TSeries":
        """Divide by t^j; the dropped low-order coefficients must vanish."""
        for n in range(j):
            if self.coeffs[n]:
                raise InexactDivision(f"coefficient of t^{n} nonzero, cannot divide by t^{j}")
        return TSeries(
            self.ring, self.order, self.coeffs[j:] + [self.ring.zero()] * j
        )

    def inverse(self) -> "TSeries":
        """Geometric inverse; needs constant term exactly 1."""
        one = self.ring.one()
        if self.coeffs[0] != one:
            raise InexactDivision("inverse needs constant term 1")
        n = self.order
        inv = [one] + [self.ring.zero()] * n
        for m in range(1, n + 1):
            acc = self.ring.zero()
            for j in range(1, m + 1):
                if self.coeffs[j]:
                    acc = acc + self.coeffs[j] * inv[m - j]
            inv[m] = -acc
        return TSeries(self.ring, n, inv)

    def __truediv__(self, other: "TSeries") -> "TSeries":
        return self * other.inverse()

    def sqrt(self) -> "TSeries":
        """Termwise square root with constant term 1; each halving must be exact."""
        if self.coeffs[0] != self.ring.one():
            raise InexactDivision("sqrt needs constant term 1")
        n = self.order
        s = [self.ring.one()] + [self.ring.zero()] * n
        for m in range(1, n + 1):
            acc = self.coeffs[m]
            for j in range(1, m):
                if s[j]:
                    acc = acc - s[j] * s[m - j]
            s[m] = acc.divexact_int(2)
        out = TSeries(self.ring, n, s)
        assert out * out == self, "sqrt verification failed"
        return out

    def divexact_int(self, d: int) -> "TSeries":
        return TSeries(self.ring, self.order, [c.divexact_int(d) for c in self.coeffs])

    def __repr__(self) -> str:
        return f"TSeries(order={self.order}, {self.coeffs!r})"
