"""Matrix-class tests and their transport to the integrated/differentiated bv spaces.

``class_check(A, X, Y)`` decides ``A in (X:Y)`` for X = l1 or Y = l1 from the
classical condition lists.  Matrices with a symbolic :class:`Profile` are
decided for all rows and columns via rational-function asymptotics; matrices
with finitely many nonzero entries are evaluated exactly; anything else gets
an Inconclusive verdict with window traces.

``reduce_and_check`` moves a question about (int_bv:Y), (d_bv:Y), (Y:int_bv)
or (Y:d_bv) to l1 through the derived matrices::

    over   a_nk -> sum_{j>=k} a_nj / j        (source int_bv)
    tilde  a_nk -> sum_{j>=k} j a_nj          (source d_bv)
    hat    a_nk -> n a_nk - (n-1) a_{n-1,k}   (target int_bv)
    arrow  a_nk -> a_nk / n - a_{n-1,k}/(n-1) (target d_bv)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import verdict as V
from ._poly import RationalFunction, sup_abs
from .core import Base, Decoration, Seq, SpaceId
from .errors import InfiniteRowSupport, RowNotInDual
from .operators import GAMMA, SIGMA, Band, FiniteMatrix, InfiniteMatrix, Product, Profile

RF = RationalFunction
L1 = SpaceId(Base.L1)


class Flavor(enum.Enum):
    OVERBAR = "over"
    TILDE = "tilde"
    HAT = "hat"
    ARROW = "arrow"


# ---------------------------------------------------------------------------
# derived matrices


def derived(A: InfiniteMatrix, flavor: Flavor, n: int, k: int) -> Fraction:
    """One derived entry, computed straight from the entries of A."""
    if n < 1 or k < 1:
        raise ValueError("matrix indices start at 1")
    if flavor in (Flavor.OVERBAR, Flavor.TILDE):
        lo, hi = A.row_support(n)
        if hi is None:
            raise InfiniteRowSupport(f"row {n} of {A.label} has unbounded support")
        acc = Fraction(0)
        for j in range(max(k, lo), hi + 1):
            a = A.entry(n, j)
            if a:
                acc += a / j if flavor is Flavor.OVERBAR else a * j
        return acc
    prev = A.entry(n - 1, k) if n > 1 else Fraction(0)
    if flavor is Flavor.HAT:
        return n * A.entry(n, k) - (n - 1) * prev
    return A.entry(n, k) / n - (prev / (n - 1) if n > 1 else 0)


class DerivedEntries(InfiniteMatrix):
    """A derived matrix evaluated entry by entry (no symbolic structure)."""

    def __init__(self, base: InfiniteMatrix, flavor: Flavor):
        self.base, self.flavor = base, flavor
        self.label = f"{flavor.value}:{base.label}"
        self.lower = base.lower

    def entry(self, n, k):
        if self.lower and k > n:
            return Fraction(0)
        return derived(self.base, self.flavor, n, k)

    def row_support(self, n):
        if self.flavor in (Flavor.OVERBAR, Flavor.TILDE):
            lo, hi = self.base.row_support(n)
            return (1, hi)
        spans = [self.base.row_support(m) for m in (n - 1, n) if m >= 1]
        spans = [s for s in spans if s[1] is None or s[1] >= s[0]]
        if not spans:
            return (1, 0)
        if any(s[1] is None for s in spans):
            return (1, None)
        return (min(s[0] for s in spans), max(s[1] for s in spans))


def _tail_profile(p: Profile, flavor: Flavor) -> Optional[Profile]:
    """Symbolic over/tilde of a banded profile: partial row sums become a tail."""
    if not p.banded:
        return None
    weight = [
        (RF.linear_inverse(1, -o) if flavor is Flavor.OVERBAR else RF((Fraction(-o), Fraction(1))))
        for o in range(p.width)
    ]
    terms = [p.band[o] * weight[o] for o in range(p.width)]
    if not terms:
        return Profile(())
    band, acc = [], RF.ZERO
    for o in range(p.width - 1):
        acc = acc + terms[o]
        band.append(acc)
    return Profile(tuple(band), acc + terms[-1])


def derived_matrix(A: InfiniteMatrix, flavor: Flavor, symbolic: bool = True) -> InfiniteMatrix:
    """The derived matrix as an operator.

    With ``symbolic`` the result keeps a profile whenever A has one, so the
    class tests can decide it for all indices.
    """
    if symbolic and A.lower:
        if flavor is Flavor.HAT:
            return Product(GAMMA, A, label=f"hat:{A.label}")
        if flavor is Flavor.ARROW:
            return Product(SIGMA, A, label=f"arrow:{A.label}")
        p = A.profile()
        if p is not None:
            q = _tail_profile(p, flavor)
            if q is not None:
                return Band.from_profile(f"{flavor.value}:{A.label}", q)
    return DerivedEntries(A, flavor)


# ---------------------------------------------------------------------------
# conditions


class Cond(enum.Enum):
    SUP_ENTRY = "sup_entry"
    COLUMN_LIMITS = "column_limits"
    COLUMN_LIMITS_ZERO = "column_limits_zero"
    SUP_COLUMN_SUM = "sup_column_sum"
    SUP_PARTIAL_COLUMN_SUM = "sup_partial_column_sum"
    COLUMN_SERIES_CONVERGE = "column_series_converge"
    COLUMN_SERIES_ZERO = "column_series_zero"
    FINITE_SUBSET_SUP = "finite_subset_sup"
    FINITE_SUBSET_SUP_NEXT = "finite_subset_sup_next"
    FINITE_SUBSET_SUP_PREV = "finite_subset_sup_prev"
    ENTRY_ROW_LIMIT_ZERO = "entry_row_limit_zero"


# shift applied to the column index inside the finite-subset sup
_SUBSET_SHIFT = {Cond.FINITE_SUBSET_SUP: 0, Cond.FINITE_SUBSET_SUP_NEXT: 1, Cond.FINITE_SUBSET_SUP_PREV: -1}


@dataclass(frozen=True)
class ClassTest:
    source: SpaceId
    target: SpaceId
    conditions: Tuple[Cond, ...]

    @property
    def name(self) -> str:
        return f"({self.source.literal}:{self.target.literal})"


def _s(b: Base) -> SpaceId:
    return SpaceId(b)


CLASS_TESTS: Dict[Tuple[SpaceId, SpaceId], ClassTest] = {}


def _register(src: Base, dst: Base, *conds: Cond) -> None:
    CLASS_TESTS[(_s(src), _s(dst))] = ClassTest(_s(src), _s(dst), conds)


_register(Base.L1, Base.LINF, Cond.SUP_ENTRY)
_register(Base.L1, Base.C, Cond.SUP_ENTRY, Cond.COLUMN_LIMITS)
_register(Base.L1, Base.C0, Cond.SUP_ENTRY, Cond.COLUMN_LIMITS_ZERO)
_register(Base.L1, Base.L1, Cond.SUP_COLUMN_SUM)
_register(Base.L1, Base.BS, Cond.SUP_PARTIAL_COLUMN_SUM)
_register(Base.L1, Base.CS, Cond.SUP_PARTIAL_COLUMN_SUM, Cond.COLUMN_SERIES_CONVERGE)
_register(Base.L1, Base.C0S, Cond.SUP_PARTIAL_COLUMN_SUM, Cond.COLUMN_SERIES_ZERO)
for _b in (Base.LINF, Base.C, Base.C0):
    _register(_b, Base.L1, Cond.FINITE_SUBSET_SUP)
_register(Base.BS, Base.L1, Cond.ENTRY_ROW_LIMIT_ZERO, Cond.FINITE_SUBSET_SUP_NEXT)
_register(Base.CS, Base.L1, Cond.FINITE_SUBSET_SUP_PREV)
_register(Base.C0S, Base.L1, Cond.FINITE_SUBSET_SUP_NEXT)


@dataclass(frozen=True)
class CondResult:
    holds: Optional[bool]
    evidence: dict


def _finite_extent(M: InfiniteMatrix) -> Optional[Tuple[int, int]]:
    """(rows, cols) bounding every nonzero entry, when such a bound is known."""
    if isinstance(M, FiniteMatrix):
        return M.size
    p = M.profile()
    if p is not None and p.banded and p.width == 0:
        return (0, 0)
    if isinstance(M, Product):
        lp = M.left.profile()
        inner = _finite_extent(M.right)
        if inner is not None and lp is not None and lp.banded:
            return (inner[0] + max(lp.width - 1, 0), inner[1]) if lp.width else (0, 0)
    if isinstance(M, DerivedEntries):
        inner = _finite_extent(M.base)
        if inner is not None:
            extra = 1 if M.flavor in (Flavor.HAT, Flavor.ARROW) else 0
            return (inner[0] + extra, inner[1])
    return None


def _dense(M: InfiniteMatrix, rows: int, cols: int) -> List[List[Fraction]]:
    return [[M.entry(n, k) for k in range(1, cols + 1)] for n in range(1, rows + 1)]


# -- finite-subset sup ------------------------------------------------------


def _difference_rows(M: InfiniteMatrix, shift: int, rows: int, cols: int) -> List[Dict[int, Fraction]]:
    """Sparse rows of ``a_nk - a_{n,k+shift}`` (plain entries for shift 0) in a window."""
    out = []
    for n in range(1, rows + 1):
        lo, hi = M.row_support(n)
        if hi is None:
            hi = cols
        row: Dict[int, Fraction] = {}
        ks = set(range(max(lo, 1), min(hi, cols) + 1))
        if shift == 1:
            ks |= {k - 1 for k in ks if k >= 2}
        elif shift == -1:
            ks |= {k + 1 for k in ks if k + 1 <= cols}
        for k in sorted(ks):
            v = M.entry(n, k)
            if shift:
                j = k + shift
                v -= M.entry(n, j) if j >= 1 else 0
            if v:
                row[k] = v
        out.append(row)
    return out


def subset_sup_bruteforce(rows: Sequence[Dict[int, Fraction]], cols: int) -> Fraction:
    """``max_{N,K} |sum_{n in N} sum_{k in K} d_nk|`` by enumerating K (and N implicitly)."""
    best = Fraction(0)
    for mask in range(1 << cols):
        pos = neg = Fraction(0)
        for row in rows:
            s = sum((v for k, v in row.items() if mask >> (k - 1) & 1), Fraction(0))
            if s > 0:
                pos += s
            else:
                neg -= s
        best = max(best, pos, neg)
    return best


def subset_sup_window(rows: Sequence[Dict[int, Fraction]]) -> Optional[Fraction]:
    """Exact finite-subset sup for rows of bounded width.

    For a fixed K the best N takes every row whose K-sum has the wanted
    sign, so the objective is a sum of positive parts.  Row n only touches
    column 1 and a short run of columns ending at ``n + ahead``; a dynamic
    programme over columns, keeping the recent membership bits (and column
    1) as state, maximizes over K exactly.  Returns None when a row is too
    wide for that.
    """
    W = len(rows)
    ahead, width, cmax = 0, 1, 1
    for n, row in enumerate(rows, 1):
        if not row:
            continue
        cmax = max(cmax, max(row))
        ahead = max(ahead, max(row) - n)
        inner = [k for k in row if k >= 2]
        if inner:
            width = max(width, n - min(inner) + 1)
    nbits = width + ahead
    if nbits > 16:
        return None
    # integer arithmetic over a common denominator
    L = 1
    for row in rows:
        for v in row.values():
            L = L * v.denominator // math.gcd(L, v.denominator)
    irows = [[(k, int(v * L)) for k, v in row.items()] for row in rows]
    full = (1 << nbits) - 1
    best = 0
    for sign in (1, -1):
        for b1 in (0, 1):
            def gain(n: int, mask: int, c: int) -> int:
                s = 0
                for k, v in irows[n - 1]:
                    if k == 1:
                        if b1:
                            s += v
                    elif k <= c and mask >> (c - k) & 1:
                        s += v
                s *= sign
                return s if s > 0 else 0

            start = 0
            if ahead == 0 and W >= 1:
                start = gain(1, 0, 1)
            states = {0: start}
            for c in range(2, max(cmax, W + ahead) + 1):
                n = c - ahead
                live = 1 <= n <= W and irows[n - 1]
                nxt: Dict[int, int] = {}
                for mask, val in states.items():
                    for bit in (0, 1):
                        m2 = ((mask << 1) | bit) & full
                        v = val + gain(n, m2, c) if live else val
                        if v > nxt.get(m2, -1):
                            nxt[m2] = v
                states = nxt
            best = max(best, max(states.values()))
    return Fraction(best, L)


def _window_subset_sup(M: InfiniteMatrix, shift: int, W: int) -> Tuple[Optional[Fraction], bool]:
    """(value, exact) for the window [1, W]^2; falls back to K = all columns."""
    rows = _difference_rows(M, shift, W, W)
    exact = subset_sup_window(rows)
    if exact is not None:
        return exact, True
    pos = neg = Fraction(0)
    for row in rows:
        s = sum(row.values(), Fraction(0))
        pos, neg = (pos + s, neg) if s > 0 else (pos, neg - s)
    return max(pos, neg), False


def _summable(f: RF, gap: int = 2) -> bool:
    return f.is_zero() or f.degree_gap >= gap


def _subset_rules(p: Profile, shift: int):
    """Bounded-width rules and (for shift 0) the tail of the matrix inside the sup."""
    b = p.width
    rules: List[RF] = []
    tail = None
    if shift == 0:
        rules = list(p.band)
        tail = p.tail
    elif shift == 1:
        rules = [p.diag(0)] + [p.diag(q) - p.diag(q - 1) for q in range(1, b + 1)]
    else:
        # offset -1 is the entry 0 - a_nn just right of the diagonal
        rules = [-p.diag(0)] + [p.diag(q) - p.diag(q + 1) for q in range(b)]
        if p.tail is not None:
            rules.append(p.tail)  # column 1 below the band
    return rules, tail


def _check_subset(M: InfiniteMatrix, cond: Cond, probe: int) -> CondResult:
    shift = _SUBSET_SHIFT[cond]
    ext = _finite_extent(M)
    if ext is not None:
        R, C = ext
        rows = _difference_rows(M, shift, R, C + 1)
        rows = [{k: v for k, v in r.items() if k <= C + 1} for r in rows]
        cols = C + 1 if shift == 1 or shift == -1 else C
        if cols <= 16:
            value = subset_sup_bruteforce(rows, cols)
        else:
            value = subset_sup_window(rows)
            if value is None:
                return CondResult(None, {"reason": "finite matrix too wide for exact enumeration"})
        return CondResult(True, {"structure": "finite support", "sup": value})
    windows = sorted({w for w in (16, 32, 64) if w < probe} | {probe})
    trace = []
    for w in windows:
        v, exact = _window_subset_sup(M, shift, w)
        trace.append({"window": w, "value": v, "exact": exact})
    p = M.profile()
    if p is None or not M.lower:
        return CondResult(None, {"reason": "no symbolic structure", "window_trace": trace})
    rules, tail = _subset_rules(p, shift)
    bw_ok = all(_summable(r) for r in rules)
    tail_ok = tail is None or _summable(tail, 3)
    ev = {
        "structure": "profile",
        "difference_rules": [r.to_str() for r in rules],
        "row_mass_summable": bw_ok,
        "window_trace": trace,
    }
    if tail is not None:
        ev["tail"] = tail.to_str()
        ev["tail_summable"] = tail_ok
    if bw_ok and tail_ok:
        return CondResult(True, ev)
    if bw_ok != tail_ok:
        return CondResult(False, ev)
    ev["reason"] = "band and tail parts both have infinite mass; cancellation not analysed"
    return CondResult(None, ev)


# -- l1-source conditions on profiles --------------------------------------


def _sup_entry(p: Profile) -> CondResult:
    best, witness = Fraction(0), None
    for o, rule in enumerate(p.band):
        r = sup_abs(rule, o + 1)
        if not r.bounded:
            return CondResult(False, {"unbounded_diagonal": o, "rule": rule.to_str(), "witness": r.witness})
        best = max(best, r.value)
    if p.tail is not None:
        r = sup_abs(p.tail, p.width + 1)
        if not r.bounded:
            return CondResult(False, {"unbounded_tail": p.tail.to_str(), "witness": r.witness})
        best = max(best, r.value)
    return CondResult(True, {"sup": best})


def _column_limit(p: Profile, zero: bool) -> CondResult:
    if p.tail is None:
        return CondResult(True, {"alpha_k": Fraction(0), "reason": "columns are eventually zero"})
    lim = p.tail.limit()
    if lim is None:
        return CondResult(False, {"tail": p.tail.to_str(), "reason": "column entries unbounded"})
    if zero and lim != 0:
        return CondResult(False, {"alpha_k": lim, "reason": "column limit is not zero"})
    return CondResult(True, {"alpha_k": lim})


def _column_rules(p: Profile) -> List[RF]:
    """``band[o](k + o)`` as functions of the column index k."""
    return [rule.shift(o) for o, rule in enumerate(p.band)]


def _sup_abs_sum(funcs: List[RF]) -> Tuple[Optional[Fraction], tuple]:
    """``sup_k sum_i |f_i(k)|`` over k >= 1."""
    funcs = [f for f in funcs if not f.is_zero()]
    if not funcs:
        return Fraction(0), ()
    K0 = max(f.eventual_bound() for f in funcs)
    best = max(sum((abs(f(k)) for f in funcs), Fraction(0)) for k in range(1, K0 + 1))
    signed = RF.ZERO
    for f in funcs:
        signed = signed + (f if f(K0) > 0 else -f)
    r = sup_abs(signed, K0)
    if not r.bounded:
        return None, r.witness
    return max(best, r.value), ()


def _sup_column_sum(p: Profile) -> CondResult:
    value, witness = _sup_abs_sum(_column_rules(p))
    if value is None:
        return CondResult(False, {"reason": "column absolute sums unbounded", "witness": witness})
    if p.tail is not None:
        if not _summable(p.tail):
            return CondResult(False, {"tail": p.tail.to_str(), "reason": "every column has a divergent tail"})
        return CondResult(True, {"bounded": True, "band_part_sup": value,
                                 "tail": p.tail.to_str(), "tail_summable": True})
    return CondResult(True, {"sup": value})


def _sup_partial_column_sum(p: Profile) -> CondResult:
    cols = _column_rules(p)
    best, acc = Fraction(0), RF.ZERO
    for f in cols:
        acc = acc + f
        r = sup_abs(acc, 1)
        if not r.bounded:
            return CondResult(False, {"reason": "partial column sums unbounded", "witness": r.witness})
        best = max(best, r.value)
    if p.tail is not None:
        if not _summable(p.tail):
            return CondResult(False, {"tail": p.tail.to_str(), "reason": "column series diverge"})
        return CondResult(True, {"bounded": True, "band_part_sup": best, "tail": p.tail.to_str()})
    return CondResult(True, {"sup": best})


def _column_series(p: Profile, zero: bool) -> CondResult:
    if p.tail is not None and not _summable(p.tail):
        return CondResult(False, {"tail": p.tail.to_str(), "reason": "column series diverge"})
    if not zero:
        return CondResult(True, {"reason": "finitely many band terms plus an absolutely summable tail"})
    if p.tail is not None:
        return CondResult(None, {"reason": "column sum involves a convergent tail with no closed form"})
    total = RF.ZERO
    for f in _column_rules(p):
        total = total + f
    if total.is_zero():
        return CondResult(True, {"column_sum": "0 identically"})
    k = next(k for k in range(1, len(total.num) + len(total.den) + 2) if total(k) != 0)
    return CondResult(False, {"column": k, "column_sum": total(k)})


# -- evaluation on finite and on unstructured matrices -------------------


def _finite_condition(M: InfiniteMatrix, cond: Cond, ext: Tuple[int, int]) -> CondResult:
    R, C = ext
    a = _dense(M, R, C)
    cols = [[a[n][k] for n in range(R)] for k in range(C)]
    if cond is Cond.SUP_ENTRY:
        return CondResult(True, {"sup": max((abs(v) for r in a for v in r), default=Fraction(0))})
    if cond in (Cond.COLUMN_LIMITS, Cond.COLUMN_LIMITS_ZERO):
        return CondResult(True, {"alpha_k": Fraction(0), "reason": "finitely many nonzero entries"})
    if cond is Cond.SUP_COLUMN_SUM:
        return CondResult(True, {"sup": max((sum(abs(v) for v in c) for c in cols), default=Fraction(0))})
    if cond is Cond.SUP_PARTIAL_COLUMN_SUM:
        best = Fraction(0)
        for c in cols:
            s = Fraction(0)
            for v in c:
                s += v
                best = max(best, abs(s))
        return CondResult(True, {"sup": best})
    if cond is Cond.COLUMN_SERIES_CONVERGE:
        return CondResult(True, {"reason": "finitely many nonzero entries"})
    if cond is Cond.COLUMN_SERIES_ZERO:
        for k, c in enumerate(cols, 1):
            if sum(c, Fraction(0)) != 0:
                return CondResult(False, {"column": k, "column_sum": sum(c, Fraction(0))})
        return CondResult(True, {"column_sums": "all zero"})
    if cond is Cond.ENTRY_ROW_LIMIT_ZERO:
        return CondResult(True, {"reason": "rows are finitely supported"})
    return _check_subset(M, cond, 0)


def _window_trace(M: InfiniteMatrix, cond: Cond, probe: int) -> dict:
    W = probe
    a = _dense(M, W, W)
    if cond is Cond.SUP_ENTRY:
        return {"window": W, "sup_entry": max(abs(v) for r in a for v in r)}
    if cond in (Cond.SUP_COLUMN_SUM,):
        return {"window": W, "sup_column_sum": max(sum(abs(a[n][k]) for n in range(W)) for k in range(W))}
    if cond in (Cond.SUP_PARTIAL_COLUMN_SUM, Cond.COLUMN_SERIES_CONVERGE, Cond.COLUMN_SERIES_ZERO):
        return {"window": W, "column_sums": [sum(a[n][k] for n in range(W)) for k in range(min(W, 8))]}
    if cond in (Cond.COLUMN_LIMITS, Cond.COLUMN_LIMITS_ZERO):
        return {"window": W, "last_row": a[-1][: min(W, 8)]}
    return {"window": W}


def evaluate(M: InfiniteMatrix, cond: Cond, probe: int) -> CondResult:
    """Evaluate one condition on M."""
    ext = _finite_extent(M)
    if ext is not None:
        return _finite_condition(M, cond, ext)
    if cond in _SUBSET_SHIFT:
        return _check_subset(M, cond, probe)
    p = M.profile() if M.lower else None
    if cond is Cond.ENTRY_ROW_LIMIT_ZERO:
        if all(M.row_support(n)[1] is not None for n in range(1, probe + 1)) and M.lower:
            return CondResult(True, {"reason": "lower-triangular rows are finitely supported"})
        return CondResult(None, {"reason": "rows with unbounded support"})
    if p is None:
        return CondResult(None, {"reason": "no symbolic structure", "trace": _window_trace(M, cond, probe)})
    if cond is Cond.SUP_ENTRY:
        return _sup_entry(p)
    if cond is Cond.COLUMN_LIMITS:
        return _column_limit(p, False)
    if cond is Cond.COLUMN_LIMITS_ZERO:
        return _column_limit(p, True)
    if cond is Cond.SUP_COLUMN_SUM:
        return _sup_column_sum(p)
    if cond is Cond.SUP_PARTIAL_COLUMN_SUM:
        return _sup_partial_column_sum(p)
    if cond is Cond.COLUMN_SERIES_CONVERGE:
        return _column_series(p, False)
    if cond is Cond.COLUMN_SERIES_ZERO:
        return _column_series(p, True)
    raise ValueError(cond)


def _combine(results: Dict[Cond, CondResult], cert: dict) -> V.Verdict:
    cert = dict(cert)
    cert["conditions"] = {c.value: {"holds": r.holds, **r.evidence} for c, r in results.items()}
    if any(r.holds is False for r in results.values()):
        return V.nonmember(cert)
    if all(r.holds for r in results.values()):
        return V.member(cert)
    trace = tuple((c.value, r.evidence) for c, r in results.items() if r.holds is None)
    return V.Verdict(V.Status.INCONCLUSIVE, cert, trace)


# ---------------------------------------------------------------------------
# public entry points


def class_check(A: InfiniteMatrix, source: SpaceId, target: SpaceId, probe: int = 128) -> V.Verdict:
    """Decide ``A in (source:target)``."""
    if probe < 1:
        raise ValueError("probe must be >= 1")
    if source.decoration is not Decoration.NONE or target.decoration is not Decoration.NONE:
        if source.base is Base.BV and source.decoration is not Decoration.NONE:
            return reduce_and_check(A, f"from_{source.literal}", target, probe)
        if target.base is Base.BV and target.decoration is not Decoration.NONE:
            return reduce_and_check(A, f"to_{target.literal}", source, probe)
        raise ValueError(f"no class test for ({source}:{target})")
    test = CLASS_TESTS.get((source, target))
    if test is None:
        raise ValueError(f"no class test for ({source}:{target})")
    results = {c: evaluate(A, c, probe) for c in test.conditions}
    return _combine(results, {"class": test.name, "matrix": A.label, "probe": probe})


REDUCTIONS = {
    "from_int_bv": (Flavor.OVERBAR, SpaceId(Base.BV, Decoration.INTEGRATED)),
    "from_d_bv": (Flavor.TILDE, SpaceId(Base.BV, Decoration.DIFFERENTIATED)),
    "to_int_bv": (Flavor.HAT, SpaceId(Base.BV, Decoration.INTEGRATED)),
    "to_d_bv": (Flavor.ARROW, SpaceId(Base.BV, Decoration.DIFFERENTIATED)),
}


def _row_seq(A: InfiniteMatrix, n: int) -> Seq:
    lo, hi = A.row_support(n)
    if hi is None:
        raise InfiniteRowSupport(f"row {n} of {A.label} has unbounded support")
    return Seq.finite(A.entry(n, k) for k in range(1, hi + 1))


def _row_condition(A: InfiniteMatrix, space: SpaceId, probe: int) -> dict:
    from .duality import DualKind, dual_member

    checked = min(probe, 8)
    for n in range(1, probe + 1):
        if A.row_support(n)[1] is None:
            raise RowNotInDual(f"row {n} of {A.label} is not finitely supported; dual membership undecided")
    for n in range(1, checked + 1):
        v = dual_member(space, DualKind.BETA, _row_seq(A, n), probe)
        if v.status is not V.Status.MEMBER:
            raise RowNotInDual(f"row {n} of {A.label} is not in the beta-dual of {space.literal}")
    return {
        "rows_in_beta_dual": True,
        "reason": "every row is finitely supported, hence a multiplier",
        "rows_checked_by_dual_member": checked,
    }


def reduce_and_check(A: InfiniteMatrix, cls: str, Y: SpaceId, probe: int = 128) -> V.Verdict:
    """Decide a class with int_bv or d_bv on one side via the matching derived matrix."""
    try:
        flavor, X = REDUCTIONS[cls]
    except KeyError:
        raise ValueError(f"unknown reduction {cls!r}; expected one of {sorted(REDUCTIONS)}") from None
    F = derived_matrix(A, flavor)
    cert: dict = {"reduction": cls, "derived": flavor.value, "derived_matrix": F.label}
    if cls.startswith("from"):
        cert["row_condition"] = _row_condition(A, X, probe)
        inner = class_check(F, L1, Y, probe)
        cert["class"] = f"({X.literal}:{Y.literal})"
    else:
        inner = class_check(F, Y, L1, probe)
        cert["class"] = f"({Y.literal}:{X.literal})"
    cert["reduced"] = inner.certificate
    return V.Verdict(inner.status, cert, inner.trace)


_FROM_ITEMS = {"i": Base.LINF, "ii": Base.C, "iii": Base.C0, "iv": Base.BS, "v": Base.CS, "vi": Base.C0S}
_TO_ITEMS = {"i": Base.LINF, "ii": Base.BS, "iii": Base.CS, "iv": Base.C0S}
COROLLARY_ITEMS = {
    "from_int_bv": _FROM_ITEMS, "from_d_bv": _FROM_ITEMS,
    "to_int_bv": _TO_ITEMS, "to_d_bv": _TO_ITEMS,
}


def corollary_suite(family: str, A: InfiniteMatrix, item: str, probe: int = 128) -> V.Verdict:
    """Named characterization item: a reduction family plus a roman-numbered Y."""
    items = COROLLARY_ITEMS.get(family)
    if items is None:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(COROLLARY_ITEMS)}")
    if item not in items:
        raise ValueError(f"item {item!r} not in {family} (valid: {', '.join(items)})")
    return reduce_and_check(A, family, SpaceId(items[item]), probe)
