"""Exact univariate rational functions of the row index ``n``.

Coefficients are :class:`fractions.Fraction`, lowest degree first.  These are
the entry rules of banded operators; the helpers here answer the asymptotic
questions the class tests need (eventual sign, monotonicity, limits, sup).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

Poly = Tuple[Fraction, ...]


def _trim(coeffs: Sequence) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: Poly, c) -> Poly:
    return _trim([x * c for x in a])


def _peval(a: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pderiv(a: Poly) -> Poly:
    return _trim([i * a[i] for i in range(1, len(a))])


def _pshift(a: Poly, s: int) -> Poly:
    # a(n + s) via Horner on polynomials
    out: Poly = ()
    lin = _trim([s, 1])
    for c in reversed(a):
        out = _padd(_pmul(out, lin), (c,))
    return out


def _pdivmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = list(_trim(r))
    return _trim(q), tuple(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pscale(a, 1 / a[-1]) if a else a


def _root_bound(a: Poly) -> int:
    """Integer strictly above every real root (Cauchy bound)."""
    if len(a) <= 1:
        return 0
    lead = abs(a[-1])
    return 1 + math.ceil(max(abs(c) / lead for c in a[:-1]))


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly = (Fraction(1),)

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        if not num:
            den = (Fraction(1),)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, den = _pdivmod(num, g)[0], _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num, den = _pscale(num, 1 / lead), _pscale(den, 1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((Fraction(c),))

    @classmethod
    def monomial(cls, c, p: int) -> "RationalFunction":
        """``c * n**p`` for any integer ``p``."""
        c = Fraction(c)
        if p >= 0:
            return cls((0,) * p + (c,))
        return cls((c,), (0,) * (-p) + (1,))

    @classmethod
    def linear_inverse(cls, c, s: int) -> "RationalFunction":
        """``c / (n + s)``."""
        return cls((Fraction(c),), (Fraction(s), Fraction(1)))

    def __call__(self, n) -> Fraction:
        d = _peval(self.den, n)
        if d == 0:
            raise ZeroDivisionError(f"pole at n={n}")
        return _peval(self.num, n) / d

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(_padd(self.num, other.num), self.den)
        return RationalFunction(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(_pscale(self.num, -1), self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return RationalFunction(_pscale(self.num, Fraction(other)), self.den)
        return RationalFunction(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def shift(self, s: int) -> "RationalFunction":
        """The function ``n -> self(n + s)``."""
        return RationalFunction(_pshift(self.num, s), _pshift(self.den, s))

    @property
    def degree_gap(self) -> Optional[int]:
        """``deg(den) - deg(num)``; None for the zero function."""
        if self.is_zero():
            return None
        return len(self.den) - len(self.num)

    def limit(self) -> Optional[Fraction]:
        """Limit as n -> infinity, or None when |f| grows without bound."""
        gap = self.degree_gap
        if gap is None or gap > 0:
            return Fraction(0)
        if gap < 0:
            return None
        return self.num[-1] / self.den[-1]

    def eventual_bound(self) -> int:
        """Index beyond which f has constant sign and is monotone."""
        if self.is_zero():
            return 1
        dnum = _padd(
            _pmul(_pderiv(self.num), self.den), _pscale(_pmul(self.num, _pderiv(self.den)), -1)
        )
        return 1 + max(_root_bound(self.num), _root_bound(self.den), _root_bound(dnum))

    def abs_series_converges(self) -> bool:
        gap = self.degree_gap
        return gap is None or gap >= 2

    def to_str(self) -> str:
        def p(a: Poly) -> str:
            terms = []
            for i, c in enumerate(a):
                if c:
                    terms.append(f"{c}" + ("" if i == 0 else "*n" if i == 1 else f"*n^{i}"))
            return " + ".join(terms) or "0"

        if self.den == (1,):
            return p(self.num)
        return f"({p(self.num)})/({p(self.den)})"


RationalFunction.ZERO = RationalFunction(())


@dataclass(frozen=True)
class SupResult:
    """Exact ``sup |f(n)|`` over ``n >= start``.

    ``value`` is None when the function is unbounded; ``argmax`` is None when
    the sup is a limit that is never attained.
    """

    value: Optional[Fraction]
    argmax: Optional[int]
    witness: Tuple[Tuple[int, Fraction], ...] = ()

    @property
    def bounded(self) -> bool:
        return self.value is not None


def sup_abs(f: RationalFunction, start: int = 1) -> SupResult:
    if f.is_zero():
        return SupResult(Fraction(0), start)
    bound = max(start, f.eventual_bound())
    best, arg = Fraction(-1), start
    for n in range(start, bound + 1):
        v = abs(f(n))
        if v > best:
            best, arg = v, n
    lim = f.limit()
    if lim is None:
        pts = tuple((m, f(m)) for m in (bound, 2 * bound, 4 * bound, 8 * bound))
        return SupResult(None, None, pts)
    # monotone beyond `bound`, so the tail sup is an endpoint
    if abs(lim) > best:
        return SupResult(abs(lim), None)
    return SupResult(best, arg)
