"""Seeded verification suites, one per structural claim.

Each suite draws random exact inputs from ``random.Random(seed)`` and checks
identities that must hold with zero tolerance.  Failures carry the trial
seed so they can be replayed alone.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

from . import verdict as V
from ._poly import RationalFunction
from .core import (
    Alternating, Base, Constant, Decoration, Geometric, PowerLaw, Seq, SpaceId, decorate, spike, truncate,
)
from .duality import DualKind, associated_matrix, dual_member, dual_member_via_matrix
from .errors import UnknownSuite
from .matclass import (
    COROLLARY_ITEMS, REDUCTIONS, Flavor, class_check, corollary_suite, derived, derived_matrix,
)
from .operators import DELTA, GAMMA, IDENTITY, SIGMA, ZERO, Band, InfiniteMatrix, apply, compose, invert, transform
from .spaces import (
    D_BV, INT_BV, INT_L1, D_L1, ak_defect, basis_vector, expansion_coefficients, norm, partial_expansion,
)

RF = RationalFunction


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: List[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what: str, seed: int) -> None:
        self.checks += 1
        if not cond:
            self.failures.append({"check": what, "seed": seed})

    def summary(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "failures": self.failures, "passed": self.ok}


# ---------------------------------------------------------------------------
# random inputs


def random_scalar(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_finite(rng: random.Random, max_len: int = 64, bound: int = 1000) -> Seq:
    n = rng.randint(1, max_len)
    vals = [random_scalar(rng, bound) for _ in range(n)]
    if vals[-1] == 0:
        vals[-1] = Fraction(1)
    return Seq.finite(vals)


def random_banded(rng: random.Random, max_width: int = 3) -> InfiniteMatrix:
    """Banded triangle whose diagonals are c, c*n or c/n."""
    rules = []
    for _ in range(rng.randint(1, max_width)):
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        rules.append(rng.choice([RF.const(c), RF.monomial(c, 1), RF.monomial(c, -1)]))
    return Band("random-band", rules)


def random_catalogue_seq(rng: random.Random) -> Seq:
    c = Fraction(rng.choice([-3, -1, 1, 2]), rng.choice([1, 2]))
    pick = rng.randrange(6)
    if pick == 0:
        return Constant(c)
    if pick == 1:
        return PowerLaw(c, rng.randint(-3, 2))
    if pick == 2:
        return Geometric(c, Fraction(rng.choice([-1, 1]), rng.randint(2, 5)))
    if pick == 3:
        return Alternating(c)
    if pick == 4:
        return spike(rng.randint(1, 8)).scale(c)
    return random_finite(rng, 8, 20)


def _trial_seeds(seed: int, trials: int) -> List[int]:
    master = random.Random(seed)
    return [master.randrange(2**31) for _ in range(trials)]


# ---------------------------------------------------------------------------
# suites


def _l1(s: Seq) -> Fraction:
    return sum((abs(v) for v in s.values), Fraction(0))


def suite_isometry(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("isometry")
    for ts in _trial_seeds(seed, trials):
        x = random_finite(random.Random(ts))
        m = len(x.values) + 1
        r.check(norm(INT_BV, x) == _l1(transform(GAMMA, x, m)), "int_bv norm equals l1 norm of gamma image", ts)
        r.check(norm(D_BV, x) == _l1(transform(SIGMA, x, m)), "d_bv norm equals l1 norm of sigma image", ts)
    return r


def suite_ak(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("ak")
    for ts in _trial_seeds(seed, trials):
        x = random_finite(random.Random(ts), min(64, probe))
        m = len(x.values)
        for sp in (INT_BV, D_BV, INT_L1, D_L1):
            vals = [ak_defect(sp, x, n) for n in range(0, m + 2)]
            r.check(all(a >= b for a, b in zip(vals, vals[1:])), f"{sp} defect nonincreasing", ts)
            stop = m + 1 if sp.base is Base.BV else m
            r.check(vals[stop] == 0, f"{sp} defect vanishes at {stop}", ts)
    for q in (Fraction(1, 2), Fraction(-1, 3), Fraction(2, 3)):
        # the d_bv variant of a geometric tail involves logarithms, so only int_bv is exact
        vals = [ak_defect(INT_BV, Geometric(1, q), n) for n in range(0, 12)]
        r.check(all(a >= b for a, b in zip(vals, vals[1:])) and vals[-1] > 0, "int_bv geometric defect nonincreasing and positive", 0)
    return r


def suite_monotone(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("monotone")
    for ts in _trial_seeds(seed, trials):
        x = random_finite(random.Random(ts), min(64, probe))
        m = len(x.values)
        for sp in (INT_BV, D_BV):
            vals = [norm(sp, truncate(x, n)) for n in range(1, m + 1)]
            r.check(all(a <= b for a, b in zip(vals, vals[1:])), f"{sp} section norms nondecreasing", ts)
    return r


def suite_basis(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("basis")
    block = min(probe, 64)
    for sp in (INT_BV, D_BV):
        for k in range(1, min(16, block) + 1):
            r.check(basis_vector(sp, k).check(block), f"{sp} basis vector {k} maps to e^({k})", 0)
    for ts in _trial_seeds(seed, trials):
        x = random_finite(random.Random(ts), 12, 50)
        for sp in (INT_BV, D_BV):
            for n in range(0, len(x.values) + 2):
                dist = norm(sp, x - partial_expansion(sp, x, n))
                r.check(dist == ak_defect(sp, x, n), f"{sp} expansion distance at n={n}", ts)
    return r


def suite_domain(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("domain-identities")
    N = min(probe, 64)
    for ts in _trial_seeds(seed, trials):
        x = random_finite(random.Random(ts), N)
        xi = decorate(x, Decoration.INTEGRATED)
        xd = decorate(x, Decoration.DIFFERENTIATED)
        r.check(all(apply(GAMMA, x, n) == apply(DELTA, xi, n) for n in range(1, N + 1)), "gamma = delta of k x_k", ts)
        r.check(all(apply(SIGMA, x, n) == apply(DELTA, xd, n) for n in range(1, N + 1)), "sigma = delta of x_k / k", ts)
        inv = invert(GAMMA, N)
        y = transform(GAMMA, x, N)
        r.check(transform(inv, y, N).agrees(x, N), "gamma inverse round trip", ts)
        y = transform(SIGMA, x, N)
        r.check(transform(invert(SIGMA, N), y, N).agrees(x, N), "sigma inverse round trip", ts)
    return r


def suite_duals(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("duals")
    for ts in _trial_seeds(seed, trials):
        rng = random.Random(ts)
        a = random_catalogue_seq(rng)
        for sp in (INT_BV, D_BV):
            statuses = {}
            for kind in DualKind:
                v1 = dual_member(sp, kind, a, probe)
                v2 = dual_member_via_matrix(sp, kind, a, probe)
                statuses[kind] = v1.status
                if v1.decided and v2.decided:
                    r.check(v1.status == v2.status, f"{sp} {kind.value} paths agree on {a.literal()}", ts)
            if statuses[DualKind.BETA] is V.Status.MEMBER:
                r.check(statuses[DualKind.GAMMA] is V.Status.MEMBER, f"{sp} beta member is gamma member", ts)
        # summation by parts through the E matrix
        af = random_finite(rng, 10, 20)
        x = random_finite(rng, 10, 20)
        E = associated_matrix(INT_BV, DualKind.BETA, af).realized
        y = transform(GAMMA, x, 12)
        for n in range(1, 13):
            lhs = sum((af.term(k) * x.term(k) for k in range(1, n + 1)), Fraction(0))
            r.check(lhs == apply(E, y, n), "pairing equals E applied to the gamma image", ts)
    return r


def suite_reductions(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("reductions")
    N = min(probe, 64)
    for ts in _trial_seeds(seed, trials):
        rng = random.Random(ts)
        A = random_banded(rng)
        x = random_finite(rng, 16, 50)
        y = transform(GAMMA, x, len(x.values) + 1)
        z = transform(SIGMA, x, len(x.values) + 1)
        over = derived_matrix(A, Flavor.OVERBAR)
        tilde = derived_matrix(A, Flavor.TILDE)
        for n in range(1, N + 1):
            ax = apply(A, x, n)
            r.check(ax == apply(over, y, n), "A x = over(A) gamma(x)", ts)
            r.check(ax == apply(tilde, z, n), "A x = tilde(A) sigma(x)", ts)
        hat = derived_matrix(A, Flavor.HAT)
        for k in range(1, 9):
            acc = Fraction(0)
            for m in range(1, N + 1):
                acc += derived(A, Flavor.HAT, m, k)
                if m in (k, N // 2, N):
                    r.check(acc == m * A.entry(m, k), "hat telescopes", ts)
        for n in range(1, 12):
            for k in range(1, n + 1):
                r.check(hat.entry(n, k) == compose(GAMMA, A, n, k), "hat equals gamma times A", ts)
                for fl in Flavor:
                    r.check(derived_matrix(A, fl).entry(n, k) == derived(A, fl, n, k), f"{fl.value} symbolic = entrywise", ts)
    return r


_MATRICES = {"identity": IDENTITY, "zero": ZERO, "delta": DELTA, "gamma": GAMMA, "sigma": SIGMA}


def suite_corollaries(trials: int, probe: int, seed: int) -> SuiteResult:
    r = SuiteResult("corollaries")
    rng = random.Random(seed)
    mats = list(_MATRICES.values()) + [random_banded(random.Random(s)) for s in _trial_seeds(seed, trials)]
    for A in mats:
        for family, items in COROLLARY_ITEMS.items():
            flavor, X = REDUCTIONS[family]
            for item, base in items.items():
                got = corollary_suite(family, A, item, probe)
                Y = SpaceId(base)
                F = derived_matrix(A, flavor)
                manual = class_check(F, SpaceId(Base.L1), Y, probe) if family.startswith("from") \
                    else class_check(F, Y, SpaceId(Base.L1), probe)
                r.check(got.status == manual.status, f"{family} {item} on {A.label}", seed)
    return r


SUITES: Dict[str, Callable[[int, int, int], SuiteResult]] = {
    "isometry": suite_isometry,
    "ak": suite_ak,
    "monotone": suite_monotone,
    "basis": suite_basis,
    "domain-identities": suite_domain,
    "duals": suite_duals,
    "reductions": suite_reductions,
    "corollaries": suite_corollaries,
}


def verify_suite(name: str, trials: int = 100, probe: int = 128, seed: int = 0) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; available: {', '.join(SUITES)}") from None
    if trials < 1 or probe < 1:
        raise ValueError("trials and probe must be >= 1")
    t0 = time.perf_counter()
    result = fn(trials, probe, seed)
    result.seconds = time.perf_counter() - t0
    return result
