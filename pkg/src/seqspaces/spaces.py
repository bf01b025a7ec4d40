"""Norms and membership for the twelve-space catalogue.

A space is a base (l1, linf, c, c0, bv, bs, cs, c0s) with an optional
decoration; ``x`` lies in the decorated space exactly when the decorated
sequence (``k x_k`` or ``x_k / k``) lies in the base.  Membership of a
closed-form family is read off an analytic table, never guessed from
partial sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import verdict as V
from ._series import abs_tail, monotone_from, power_tail, variation_tail
from .core import Base, Decoration, Family, Seq, SpaceId, decorate, spike, truncate
from .errors import NotNormable, NotSummable
from .operators import GAMMA, SIGMA, InfiniteMatrix, column_seq, gamma_transform, invert, sigma_transform

INT_BV = SpaceId(Base.BV, Decoration.INTEGRATED)
D_BV = SpaceId(Base.BV, Decoration.DIFFERENTIATED)
INT_L1 = SpaceId(Base.L1, Decoration.INTEGRATED)
D_L1 = SpaceId(Base.L1, Decoration.DIFFERENTIATED)

# bases whose failure means "no limit" rather than "infinite norm"
_LIMIT_BASES = {Base.C, Base.C0, Base.CS, Base.C0S}


# ---------------------------------------------------------------------------
# analytic table for the tail c * k**p * r**k


def family_rule(f: Family, base: Base) -> Tuple[Optional[bool], str]:
    """Membership of the family tail in ``base``; None when undecidable here.

    c0s is not handled: it depends on the prefix through the exact sum.
    """
    p, r, rho = f.power, f.ratio, f.rho
    if rho < 1:
        return True, "geometric decay, |r| < 1"
    if base is Base.L1:
        return (p <= -2, f"sum of k^{p} converges iff p <= -2")
    if base is Base.LINF:
        return (p <= 0, f"|x_k| ~ k^{p} bounded iff p <= 0")
    if base is Base.C0:
        return (p < 0, f"|x_k| ~ k^{p} tends to 0 iff p < 0")
    if r == 1:
        if base in (Base.C, Base.BV):
            return (p <= 0, f"eventually monotone k^{p}: limit and bounded variation iff p <= 0")
        if base in (Base.CS, Base.BS):
            return (p <= -2, f"one-signed terms k^{p}: partial sums bounded iff p <= -2")
    else:
        if base is Base.C:
            return (p < 0, f"(-1)^k k^{p} converges iff p < 0")
        if base is Base.BV:
            return (p <= -2, f"|x_k - x_(k-1)| ~ 2 k^{p}: summable iff p <= -2")
        if base is Base.CS:
            return (p < 0, "alternating series with terms decreasing to 0" if p < 0
                    else f"terms (-1)^k k^{p} do not tend to 0")
        if base is Base.BS:
            return (p <= 0, f"alternating partial sums bounded iff p <= 0")
    raise ValueError(f"no table entry for {base}")


def exact_sum(y: Seq) -> Fraction:
    """``sum_k y_k`` in closed form (finite support, or |r| < 1 with p >= 0)."""
    if y.family is None:
        return sum(y.values, Fraction(0))
    f, L = y.family, len(y.values)
    if f.rho < 1 and f.power >= 0:
        return sum(y.values, Fraction(0)) + f.coeff * power_tail(f.power, f.ratio, L + 1)
    raise NotSummable(f"{y.literal()}: no rational closed form for the sum")


def _base_member(base: Base, y: Seq) -> Tuple[Optional[bool], str]:
    if y.family is None:
        if base is Base.C0S:
            s = exact_sum(y)
            return s == 0, f"finite support with total sum {s}"
        return True, "finite support"
    if base is Base.C0S:
        ok, why = family_rule(y.family, Base.CS)
        if not ok:
            return ok, why
        try:
            s = exact_sum(y)
        except NotSummable:
            return None, "convergent series whose exact sum has no rational closed form"
        return s == 0, f"series sum is exactly {s}"
    return family_rule(y.family, base)


# ---------------------------------------------------------------------------
# norms


def _partial_sums(y: Seq, n: int) -> List[Fraction]:
    acc, out = Fraction(0), []
    for k in range(1, n + 1):
        acc += y.term(k)
        out.append(acc)
    return out


def _sup_abs(y: Seq) -> Fraction:
    if y.family is None:
        return max((abs(v) for v in y.values), default=Fraction(0))
    f, L = y.family, len(y.values)
    best = max((abs(v) for v in y.values), default=Fraction(0))
    if f.rho == 1:
        tail = abs(f.coeff) if f.power == 0 else abs(f.term(L + 1))
        return max(best, tail)
    K1 = monotone_from(f, L + 1)
    return max([best] + [abs(f.term(k)) for k in range(L + 1, K1 + 1)])


def _sup_partial(y: Seq) -> Fraction:
    if y.family is None:
        return max((abs(s) for s in _partial_sums(y, len(y.values))), default=Fraction(0))
    f, L = y.family, len(y.values)
    K1 = monotone_from(f, L + 1)
    sums = _partial_sums(y, max(K1, L, 1))
    if f.ratio > 0:
        # one-signed after the prefix: monotone partial sums, sup at an end
        return max([abs(s) for s in sums[: max(L, 1)]] + [abs(exact_sum(y))])
    # alternating with nonincreasing magnitude: the tail is bracketed by S_(K1-1), S_K1
    return max(abs(s) for s in sums)


def base_norm(base: Base, y: Seq) -> Fraction:
    """Norm of ``y`` in the undecorated space ``base``."""
    ok, why = _base_member(base, y)
    if ok is None:
        raise NotSummable(f"{y.literal()} in {base.value}: {why}")
    if not ok:
        exc = NotNormable if base in _LIMIT_BASES else NotSummable
        raise exc(f"{y.literal()} is not in {base.value}: {why}")
    if base is Base.L1:
        return abs_tail(y, 0)
    if base in (Base.LINF, Base.C, Base.C0):
        return _sup_abs(y)
    if base is Base.BV:
        return variation_tail(y, 0)
    return _sup_partial(y)


def norm(space: SpaceId, x: Seq) -> Fraction:
    """Exact norm of ``x`` in ``space``.

    Raises NotSummable when the norm is infinite or has no rational closed
    form, and NotNormable for sequences outside a limit-type space.
    """
    return base_norm(space.base, decorate(x, space.decoration))


# ---------------------------------------------------------------------------
# membership


def _probe_points(probe: int) -> List[int]:
    pts, n = [], 1
    while n < probe:
        pts.append(n)
        n *= 2
    pts.append(probe)
    return pts


def trace(base: Base, y: Seq, probe: int) -> List[Tuple[int, Fraction]]:
    """The quantity each base constrains, sampled at 1, 2, 4, ..., probe."""
    pts = _probe_points(probe)
    want = set(pts)
    out, acc, prev = [], Fraction(0), Fraction(0)
    for k in range(1, probe + 1):
        t = y.term(k)
        if base is Base.L1:
            acc += abs(t)
        elif base is Base.BV:
            acc += abs(t - prev)
        elif base in (Base.BS, Base.CS, Base.C0S):
            acc += t
        else:
            acc = t
        prev = t
        if k in want:
            out.append((k, acc))
    return out


def member(space: SpaceId, x: Seq, probe: int = 128) -> V.Verdict:
    if probe < 1:
        raise ValueError("probe must be >= 1")
    y = decorate(x, space.decoration)
    ok, why = _base_member(space.base, y)
    cert = {"space": space.literal, "sequence": x.literal(), "rule": why}
    if ok is None:
        return V.inconclusive(why, trace(space.base, y, probe))
    if not ok:
        cert["witness"] = trace(space.base, y, probe)
        return V.nonmember(cert)
    try:
        cert["norm"] = norm(space, x)
    except NotSummable as exc:
        cert["norm"] = None
        cert["norm_note"] = str(exc)
    return V.member(cert)


# ---------------------------------------------------------------------------
# bases and AK


def forward_matrix(space: SpaceId) -> InfiniteMatrix:
    if space == INT_BV:
        return GAMMA
    if space == D_BV:
        return SIGMA
    raise ValueError(f"{space} has no registered domain matrix")


@dataclass(frozen=True)
class BasisVector:
    space: SpaceId
    index: int
    realization: Seq

    def check(self, block: int) -> bool:
        """Forward transform of the realization is e^(index) on 1..block."""
        y = expansion_coefficients(self.space, self.realization, block)
        return y.agrees(spike(self.index), block)


def basis_vector(space: SpaceId, k: int) -> BasisVector:
    """The inverse image of e^(k) under the domain matrix of ``space``."""
    if k < 1:
        raise ValueError("basis index starts at 1")
    return BasisVector(space, k, column_seq(invert(forward_matrix(space)), k))


def expansion_coefficients(space: SpaceId, x: Seq, n_max: int) -> Seq:
    """Coordinates of ``x`` against the basis (the transform, truncated)."""
    if space == INT_BV:
        return gamma_transform(x, n_max)
    if space == D_BV:
        return sigma_transform(x, n_max)
    if space in (INT_L1, D_L1):
        return truncate(decorate(x, space.decoration), n_max)
    raise ValueError(f"{space} has no expansion in this kit")


def partial_expansion(space: SpaceId, x: Seq, n: int) -> Seq:
    """``sum_{k<=n} E_k b^(k)``."""
    coeffs = expansion_coefficients(space, x, n)
    acc = Seq.finite(())
    for k in range(1, n + 1):
        e = coeffs.term(k)
        if e:
            acc = acc + basis_vector(space, k).realization.scale(e)
    return acc


_AK_SPACES = (INT_BV, D_BV, INT_L1, D_L1)


def ak_defect(space: SpaceId, x: Seq, n: int) -> Fraction:
    """``sum_{k>n} |(Tx)_k|`` where T is the isometry onto l1.

    This is the distance from x to its n-term basis expansion.
    """
    if space not in _AK_SPACES:
        raise ValueError(f"ak_defect is defined for {', '.join(s.literal for s in _AK_SPACES)}")
    if n < 0:
        raise ValueError("n must be >= 0")
    y = decorate(x, space.decoration)
    if space.base is Base.BV:
        return variation_tail(y, n)
    return abs_tail(y, n)


def section_distance(space: SpaceId, x: Seq, n: int) -> Fraction:
    """``||x - x^[n]||`` in ``space``."""
    if x.family is None:
        rest = Seq.finite([0] * n + list(x.values[n:]))
    else:
        vals = list(x.values) + [Fraction(0)] * max(0, n - len(x.values))
        rest = Seq.of_family(x.family, [0] * n + vals[n:])
    return norm(space, rest)
