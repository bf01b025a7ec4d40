"""Alpha-, beta- and gamma-duals of the integrated and differentiated bv spaces.

Two independent routes decide whether ``a`` is a multiplier:

* the analytic route names the dual space and asks :func:`spaces.member`;
* the matrix route builds the associated matrix from the inverse of the
  domain matrix and applies the (l1:l1), (l1:c) or (l1:linf) class test with
  its own convergence certificates (ratio test, condensation, Leibniz, ...).

Agreement of the two routes is the main test surface of this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import verdict as V
from .core import Alternating, Base, Constant, Decoration, Seq, SpaceId, spike
from .operators import ClosedForm, Diagonal, InfiniteMatrix, Product, column_seq, invert
from .spaces import D_BV, INT_BV, basis_vector, forward_matrix
from .spaces import member as space_member


class DualKind(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"

    @property
    def target(self) -> Base:
        return {"alpha": Base.L1, "beta": Base.CS, "gamma": Base.BS}[self.value]


def _sp(base: Base, deco: Decoration) -> SpaceId:
    return SpaceId(base, deco)


_I, _D = Decoration.INTEGRATED, Decoration.DIFFERENTIATED

DUAL_TABLE = {
    (INT_BV, DualKind.ALPHA): _sp(Base.L1, _D),
    (INT_BV, DualKind.BETA): _sp(Base.CS, _D),
    (INT_BV, DualKind.GAMMA): _sp(Base.BS, _D),
    (D_BV, DualKind.ALPHA): _sp(Base.L1, _I),
    (D_BV, DualKind.BETA): _sp(Base.CS, _I),
    (D_BV, DualKind.GAMMA): _sp(Base.BS, _I),
}

WITNESS_PROBES = (16, 32, 64, 128)


def dual_space(space: SpaceId, kind: DualKind) -> SpaceId:
    try:
        return DUAL_TABLE[(space, kind)]
    except KeyError:
        raise ValueError(f"no dual rule for {space} ({kind.value})") from None


def pairing_partial(a: Seq, x: Seq, mode: DualKind, n: int) -> Fraction:
    """Partial pairing of ``a`` against ``x`` up to index n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc, best = Fraction(0), Fraction(0)
    for k in range(1, n + 1):
        t = a.term(k) * x.term(k)
        if mode is DualKind.ALPHA:
            acc += abs(t)
        else:
            acc += t
            best = max(best, abs(acc))
    return best if mode is DualKind.GAMMA else acc


def _witness_catalogue(space: SpaceId) -> List[Seq]:
    return [basis_vector(space, 1).realization, Constant(1), Alternating(1), spike(1)]


def witness_pair(space: SpaceId, kind: DualKind, a: Seq) -> Optional[dict]:
    """First catalogue x in ``space`` whose pairing trace with a strictly increases."""
    for x in _witness_catalogue(space):
        if space_member(space, x, 16).status is not V.Status.MEMBER:
            continue
        values = [abs(pairing_partial(a, x, kind, n)) for n in WITNESS_PROBES]
        if all(u < v for u, v in zip(values, values[1:])):
            return {"x": x.literal(), "trace": list(zip(WITNESS_PROBES, values))}
    return None


def dual_member(space: SpaceId, kind: DualKind, a: Seq, probe: int = 128) -> V.Verdict:
    """Analytic route: membership of ``a`` in the identified dual space."""
    target = dual_space(space, kind)
    inner = space_member(target, a, probe)
    cert = {
        "identity": f"[{space.literal}]^{kind.value} = {target.literal}",
        "dual_space": target.literal,
        "evidence": inner.certificate,
    }
    if inner.status is V.Status.INCONCLUSIVE:
        return V.inconclusive(f"membership of {a.literal()} in {target.literal} undecided", inner.trace)
    if inner.status is V.Status.NONMEMBER:
        cert["witness_pair"] = witness_pair(space, kind, a)
        return V.nonmember(cert)
    return V.member(cert)


# ---------------------------------------------------------------------------
# matrix route


@dataclass(frozen=True)
class AssociatedMatrix:
    """Matrix whose class decides the dual question.

    ``style`` is C (alpha, integrated), D (alpha, differentiated) or E
    (beta/gamma).  ``generator`` is t = a * w where w_n is the constant
    value of row n of the inverse domain matrix.
    """

    source: Seq
    style: str
    realized: InfiniteMatrix
    generator: Seq


def associated_matrix(space: SpaceId, kind: DualKind, a: Seq) -> AssociatedMatrix:
    inv = invert(forward_matrix(space))
    w = column_seq(inv, 1)
    t = a.multiply(w)
    if kind is DualKind.ALPHA:
        style = "C" if space == INT_BV else "D"
        realized = ClosedForm(f"{style}[{a.literal()}]", lambda n, k: a.term(n) * inv.entry(n, k))
    else:
        style = "E"
        realized = ClosedForm(
            f"E[{a.literal()}]",
            lambda n, k: sum((a.term(j) * inv.entry(j, k) for j in range(k, n + 1)), Fraction(0)),
        )
    return AssociatedMatrix(a, style, realized, t)


def _check_structure(m: AssociatedMatrix, block: int) -> None:
    """The realized matrix really is generated by t on the leading block."""
    t = m.generator
    for n in range(1, block + 1):
        for k in range(1, n + 1):
            if m.style == "E":
                expect = sum((t.term(j) for j in range(k, n + 1)), Fraction(0))
            else:
                expect = t.term(n)
            if m.realized.entry(n, k) != expect:
                raise AssertionError(f"associated matrix entry ({n},{k}) breaks its generator")


def _pow2(p: int) -> Fraction:
    return Fraction(2) ** p


def certify(t: Seq, target: Base) -> Tuple[bool, dict]:
    """Decide ``t`` in l1, cs or bs with an explicit convergence certificate."""
    if target not in (Base.L1, Base.CS, Base.BS):
        raise ValueError(target)
    if t.family is None:
        sums, acc = [], Fraction(0)
        for v in t.values:
            acc += v
            sums.append(acc)
        value = sum((abs(v) for v in t.values), Fraction(0)) if target is Base.L1 else acc
        return True, {"test": "finite support", "exact": value}
    f = t.family
    c, p, r, rho = abs(f.coeff), f.power, f.ratio, f.rho
    if rho < 1:
        q = (1 + rho) / 2
        k = 1
        while Fraction(k + 1, k) ** p * rho > q:
            k += 1
        return True, {"test": "ratio", "ratio_limit": rho, "ratio_at_most": q, "from_index": k}
    if target is Base.L1 or r == 1:
        # Cauchy condensation on |t_k| = c k^p over blocks [2^i, 2^(i+1))
        if p <= -2:
            return True, {"test": "condensation", "block_bound": f"c*2^(i*({p}+1))",
                          "tail_bound": c / (1 - _pow2(p + 1))}
        low = c * (_pow2(p) if p < 0 else 1)
        return False, {"test": "condensation", "block_lower_bound": low,
                       "note": "every dyadic block contributes at least this much"}
    # r = -1
    if p < 0:
        return True, {"test": "leibniz", "note": "alternating terms decreasing to 0",
                      "tail_bound": c * Fraction(1, 1)}
    if p == 0:
        if target is Base.CS:
            return False, {"test": "nonvanishing terms", "term_abs": c}
        return True, {"test": "periodic partial sums", "period": 2, "amplitude": c}
    return False, {"test": "pair growth", "note": "S_(2m) - S_(2m-2) >= c for all m", "step_lower_bound": c}


def _sup_trace(t: Seq, kind: DualKind, probe: int) -> List[Tuple[int, Fraction]]:
    pts = [n for n in WITNESS_PROBES if n < probe] + [probe]
    out, acc_abs, s, hi, lo = [], Fraction(0), Fraction(0), Fraction(0), Fraction(0)
    want = set(pts)
    for n in range(1, probe + 1):
        v = t.term(n)
        acc_abs += abs(v)
        s += v
        hi, lo = max(hi, s), min(lo, s)
        if n in want:
            out.append((n, acc_abs if kind is DualKind.ALPHA else hi - lo))
    return out


_CLASS = {DualKind.ALPHA: "(l1:l1)", DualKind.BETA: "(l1:c)", DualKind.GAMMA: "(l1:linf)"}


def dual_member_via_matrix(space: SpaceId, kind: DualKind, a: Seq, probe: int = 128) -> V.Verdict:
    m = associated_matrix(space, kind, a)
    _check_structure(m, min(probe, 12))
    ok, evidence = certify(m.generator, kind.target)
    cert = {
        "matrix": m.style,
        "class": _CLASS[kind],
        "generator": m.generator.literal(),
        "evidence": evidence,
    }
    if m.style == "D":
        cert["note"] = "column 1 included (d_n1 = n a_n), matching the matrix convention for row 1"
    if m.generator.family is None:
        g = m.generator
        if kind is DualKind.ALPHA:
            cert["sup"] = sum((abs(v) for v in g.values), Fraction(0))
        else:
            sums = [Fraction(0)]
            for v in g.values:
                sums.append(sums[-1] + v)
            cert["sup"] = max(sums) - min(sums)
    trace = _sup_trace(m.generator, kind, probe)
    return V.Verdict(V.Status.MEMBER if ok else V.Status.NONMEMBER, cert, tuple(trace))


def build_multiplier_matrix(U: InfiniteMatrix, alpha: Seq, n_max: int = 64) -> InfiniteMatrix:
    """``U D_alpha U^{-1}``."""
    inv = invert(U, n_max)
    return Product(U, Product(Diagonal(alpha), inv), label=f"mult[{U.label},{alpha.literal()}]")
