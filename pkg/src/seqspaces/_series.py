"""Closed-form sums of ``k**p * r**k`` and tail variation of families."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .core import Family, Seq
from .errors import NotSummable


@lru_cache(maxsize=None)
def stirling2(p: int, j: int) -> int:
    if p == j:
        return 1
    if j == 0 or j > p:
        return 0
    return j * stirling2(p - 1, j) + stirling2(p - 1, j - 1)


def polylog_neg(p: int, r: Fraction) -> Fraction:
    """``sum_{k>=1} k**p r**k`` for integer p >= 0 and |r| < 1."""
    if p < 0 or abs(r) >= 1:
        raise NotSummable(f"no rational closed form for sum k^{p} r^k with r={r}")
    total = sum(
        (Fraction(factorial(j) * stirling2(p, j)) * r**j / (1 - r) ** (j + 1) for j in range(p + 1)),
        Fraction(0),
    )
    return total - 1 if p == 0 else total


def power_tail(p: int, r: Fraction, start: int) -> Fraction:
    """``sum_{k>=start} k**p r**k``."""
    head = sum((Fraction(k) ** p * r**k for k in range(1, start)), Fraction(0))
    return polylog_neg(p, r) - head


def monotone_from(f: Family, start: int) -> int:
    """First k >= start from which |f_k| is nonincreasing (needs |r| < 1 or p <= 0)."""
    rho = f.rho
    if rho == 1:
        if f.power > 0:
            raise ValueError("|f_k| grows")
        return start
    if f.power <= 0:
        return start
    k = start
    # ((k+1)/k)^p * rho decreases in k, so the first k with ratio <= 1 works for all later ones
    while Fraction(k + 1, k) ** f.power * rho > 1:
        k += 1
    return k


def abs_tail(s: Seq, after: int) -> Fraction:
    """``sum_{k>after} |s_k|``."""
    if s.family is None:
        return sum((abs(v) for v in s.values[after:]), Fraction(0))
    f = s.family
    L = len(s.values)
    head = sum((abs(s.term(k)) for k in range(after + 1, L + 1)), Fraction(0))
    start = max(after, L) + 1
    if f.rho < 1 and f.power >= 0:
        return head + abs(f.coeff) * power_tail(f.power, f.rho, start)
    if f.rho == 1 and f.power >= -1:
        raise NotSummable(f"{s.literal()}: terms of order k^{f.power}, series diverges")
    raise NotSummable(f"{s.literal()}: convergent, but the sum has no rational closed form here")


def variation_tail(s: Seq, after: int) -> Fraction:
    """``sum_{k>after} |s_k - s_{k-1}|`` with the convention s_0 = 0."""
    if after < 0:
        raise ValueError("after must be >= 0")
    if s.family is None:
        vals = (Fraction(0),) + s.values + (Fraction(0),)
        return sum((abs(vals[k] - vals[k - 1]) for k in range(after + 1, len(vals))), Fraction(0))
    L = len(s.values)
    K0 = max(after, L + 1)
    head = Fraction(0)
    prev = s.term(after) if after >= 1 else Fraction(0)
    for k in range(after + 1, K0 + 1):
        cur = s.term(k)
        head += abs(cur - prev)
        prev = cur
    return head + _family_variation(s.family, K0, s.literal())


def _family_variation(f: Family, K0: int, label: str) -> Fraction:
    """``sum_{k>K0} |f_k - f_{k-1}|`` for K0 >= 1, family terms only."""
    r, p = f.ratio, f.power
    if r == 1:
        if p == 0:
            return Fraction(0)
        if p < 0:
            return abs(f.term(K0))  # monotone to 0
        raise NotSummable(f"{label}: unbounded variation")
    if r > 0:
        K1 = monotone_from(f, K0)
        head = sum((abs(f.term(k) - f.term(k - 1)) for k in range(K0 + 1, K1 + 1)), Fraction(0))
        return head + abs(f.term(K1))
    # r < 0: consecutive terms alternate in sign, so |f_k - f_{k-1}| = |f_k| + |f_{k-1}|
    if f.rho < 1 and p >= 0:
        a = abs(f.coeff)
        return 2 * a * power_tail(p, f.rho, K0 + 1) + abs(f.term(K0))
    if f.rho == 1 and p > -2:
        raise NotSummable(f"{label}: unbounded variation")
    raise NotSummable(f"{label}: finite variation without a rational closed form")
