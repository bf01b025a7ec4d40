"""The ten acceptance criteria, each reporting one PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
where the lines appear in the terminal summary.
"""

import contextlib
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

import oracle
from conftest import ACCEPTANCE_LINES, seeded_finite
from seqspaces.core import Alternating, Constant, Decoration, PowerLaw, Seq, SpaceId, decorate, spike, truncate
from seqspaces.duality import DualKind, dual_member, dual_member_via_matrix, WITNESS_PROBES
from seqspaces.matclass import Flavor, class_check, derived, derived_matrix, reduce_and_check
from seqspaces.operators import (
    DELTA, GAMMA, IDENTITY, SIGMA, apply, compose, invert, transform,
)
from seqspaces.spaces import D_BV, D_L1, INT_BV, INT_L1, ak_defect, basis_vector, norm, partial_expansion
from seqspaces.verdict import Status
from seqspaces.verify import random_banded

L1, LINF = SpaceId.parse("l1"), SpaceId.parse("linf")


@contextlib.contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"criterion {number}: FAIL  {title}")
        print(f"criterion {number}: FAIL  {title}")
        raise
    ACCEPTANCE_LINES.append(f"criterion {number}: PASS  {title}")
    print(f"criterion {number}: PASS  {title}")


def test_criterion_01_isometry(battery):
    with criterion(1, "isometry of int_bv and d_bv onto l1 (500 sequences, <= 10 s)"):
        t0 = time.perf_counter()
        for vals, x in battery:
            m = len(vals) + 1
            assert norm(INT_BV, x) == oracle.l1(transform(GAMMA, x, m).values)
            assert norm(D_BV, x) == oracle.l1(transform(SIGMA, x, m).values)
        elapsed = time.perf_counter() - t0
        assert elapsed <= 10, f"took {elapsed:.2f}s"


def test_criterion_02_round_trip(battery):
    with criterion(2, "inverse round trips on 1..64 and Gamma * Gamma^-1 = I on 50x50"):
        gi, si = invert(GAMMA, 64), invert(SIGMA, 64)
        for vals, x in battery:
            y = transform(GAMMA, x, 64)
            assert list(transform(gi, y, 64).values) == [oracle.at(vals, k) for k in range(1, 65)]
            z = transform(SIGMA, x, 64)
            assert list(transform(si, z, 64).values) == [oracle.at(vals, k) for k in range(1, 65)]
        for n in range(1, 51):
            for k in range(1, 51):
                assert compose(GAMMA, gi, n, k) == (1 if n == k else 0)


def test_criterion_03_domain_identities(battery):
    with criterion(3, "Gamma x = Delta(k x_k) and Sigma x = Delta(x_k / k) for n <= 64"):
        for vals, x in battery:
            xi = decorate(x, Decoration.INTEGRATED)
            xd = decorate(x, Decoration.DIFFERENTIATED)
            g, s = oracle.gamma(vals, 64), oracle.sigma(vals, 64)
            for n in range(1, 65):
                assert apply(GAMMA, x, n) == apply(DELTA, xi, n) == g[n - 1]
                assert apply(SIGMA, x, n) == apply(DELTA, xd, n) == s[n - 1]


def test_criterion_04_ak_and_monotone(battery):
    with criterion(4, "section defect nonincreasing and vanishing, section norms nondecreasing"):
        for vals, x in battery:
            m = len(vals)
            for sp, stop in ((INT_BV, m + 1), (D_BV, m + 1), (INT_L1, m), (D_L1, m)):
                d = [ak_defect(sp, x, n) for n in range(0, stop + 1)]
                assert all(a >= b for a, b in zip(d, d[1:]))
                # the transformed sequence is supported on 1..stop
                assert d[stop] == 0
            assert ak_defect(INT_BV, x, m) == abs(m * vals[-1])
            for sp in (INT_BV, D_BV):
                norms = [norm(sp, truncate(x, n)) for n in range(1, m + 1)]
                assert all(a <= b for a, b in zip(norms, norms[1:]))


def test_criterion_05_basis():
    with criterion(5, "basis vectors map to unit vectors; expansion distance equals the defect"):
        for sp in (INT_BV, D_BV):
            for k in range(1, 17):
                b = basis_vector(sp, k)
                assert b.check(64)
        for seed in range(50):
            vals = seeded_finite(10_000 + seed, max_len=16, bound=50)
            x = Seq.finite(vals)
            for sp, ak in ((INT_BV, oracle.ak_int_bv), (D_BV, oracle.ak_d_bv)):
                for n in range(0, len(vals) + 2):
                    dist = norm(sp, x - partial_expansion(sp, x, n))
                    assert dist == ak_defect(sp, x, n) == ak(vals, n)


# alpha dual of int_bv is d(l1); beta dual is d(cs)
DUAL_TABLE = [
    (PowerLaw(1, -1), DualKind.ALPHA, Status.MEMBER),
    (PowerLaw(1, -1), DualKind.BETA, Status.MEMBER),
    (Constant(1), DualKind.ALPHA, Status.NONMEMBER),
    (Constant(1), DualKind.BETA, Status.NONMEMBER),
    (Alternating(1), DualKind.ALPHA, Status.NONMEMBER),
    (Alternating(1), DualKind.BETA, Status.MEMBER),
    (spike(3), DualKind.ALPHA, Status.MEMBER),
    (spike(3), DualKind.BETA, Status.MEMBER),
    (PowerLaw(1, -2), DualKind.ALPHA, Status.MEMBER),
    (PowerLaw(1, -2), DualKind.BETA, Status.MEMBER),
    (PowerLaw(1, 1), DualKind.ALPHA, Status.NONMEMBER),
    (PowerLaw(1, 1), DualKind.BETA, Status.NONMEMBER),
]


def test_criterion_06_dual_checkers():
    with criterion(6, "analytic and matrix dual checkers agree on the 12-case table"):
        assert len(DUAL_TABLE) == 12
        for a, kind, expected in DUAL_TABLE:
            v1 = dual_member(INT_BV, kind, a, 128)
            v2 = dual_member_via_matrix(INT_BV, kind, a, 128)
            assert v1.status is expected, (a.literal(), kind)
            assert v2.status is expected, (a.literal(), kind)
            if expected is Status.NONMEMBER:
                wp = v1.certificate["witness_pair"]
                assert [n for n, _ in wp["trace"]] == list(WITNESS_PROBES)
                values = [v for _, v in wp["trace"]]
                assert all(u < v for u, v in zip(values, values[1:]))


def _timed_class(A, src, dst):
    t0 = time.perf_counter()
    v = class_check(A, src, dst, 128)
    return v, time.perf_counter() - t0


def test_criterion_07_class_checkers():
    with criterion(7, "Delta in (l1:l1) sup 2, Gamma not in (l1:l1) with 2k, Sigma in (l1:linf) sup 1"):
        v, dt = _timed_class(DELTA, L1, L1)
        assert v.status is Status.MEMBER and dt <= 1
        assert v.certificate["conditions"]["sup_column_sum"]["sup"] == 2
        v, dt = _timed_class(GAMMA, L1, L1)
        assert v.status is Status.NONMEMBER and dt <= 1
        witness = v.certificate["conditions"]["sup_column_sum"]["witness"]
        assert witness and all(s == 2 * k for k, s in witness)
        v, dt = _timed_class(SIGMA, L1, LINF)
        assert v.status is Status.MEMBER and dt <= 1
        assert v.certificate["conditions"]["sup_entry"]["sup"] == 1


def test_criterion_08_reductions():
    with criterion(8, "identity in (int_bv:linf) with sup 1; A x = over(A) Gamma x for 100 pairs"):
        v = reduce_and_check(IDENTITY, "from_int_bv", LINF, 128)
        assert v.status is Status.MEMBER
        assert v.certificate["reduced"]["conditions"]["sup_entry"]["sup"] == 1
        for seed in range(100):
            rng = random.Random(seed)
            A = random_banded(rng)
            vals = seeded_finite(20_000 + seed, max_len=16, bound=50)
            x = Seq.finite(vals)
            y = transform(GAMMA, x, len(vals) + 1)
            over = derived_matrix(A, Flavor.OVERBAR)
            for n in range(1, 65):
                assert apply(A, x, n) == apply(over, y, n)


def test_criterion_09_telescoping():
    with criterion(9, "sum over n <= m of hat(a)_nk equals m a_mk for 100 banded matrices"):
        for seed in range(100):
            A = random_banded(random.Random(seed))
            for k in range(1, 9):
                acc = Fraction(0)
                for m in range(1, 65):
                    acc += derived(A, Flavor.HAT, m, k)
                    assert acc == m * A.entry(m, k)


CLI_CASES = [
    (["transform", "--op", "gamma", "--seq", "powerlaw:1,-1", "--n", "4"], 0),
    (["norm", "--space", "int_bv", "--seq", "finite:[1,1/2,1/3]"], 0),
    (["member", "--space", "int_bv", "--seq", "powerlaw:1,-1"], 0),
    (["member", "--space", "d_l1", "--seq", "powerlaw:1,1"], 1),
    (["member", "--space", "c0s", "--seq", "powerlaw:1,-2"], 2),
    (["dual-check", "--space", "int_bv", "--kind", "beta", "--seq", "alt:1"], 0),
    (["dual-check", "--space", "int_bv", "--kind", "alpha", "--seq", "const:1", "--path", "matrix"], 1),
    (["classify", "--matrix", "gamma", "--from", "l1", "--to", "l1", "--probe", "256"], 1),
    (["reduce", "--matrix", "identity", "--class", "int_bv:linf"], 0),
    (["basis", "--space", "d_bv", "--n", "2"], 0),
    (["verify", "--suite", "isometry", "--trials", "20", "--probe", "64", "--seed", "3"], 0),
    (["norm", "--space", "l1", "--seq", "bogus:1"], 64),
    (["frobnicate"], 64),
    (["verify", "--suite", "nosuch"], 64),
    (["norm", "--space", "l1", "--seq", "const:1"], 65),
]


def _cli(args):
    return subprocess.run([sys.executable, "-m", "seqspaces.cli", *args], capture_output=True)


def test_criterion_10_cli_determinism():
    with criterion(10, "byte-identical JSON across repeated runs; exit-status contract"):
        for args, code in CLI_CASES:
            first, second = _cli(args + ["--json"]), _cli(args + ["--json"])
            assert first.returncode == second.returncode == code, (args, first.stderr)
            assert first.stdout == second.stdout
            if code < 64:
                report = json.loads(first.stdout)
                assert set(report) >= {"command", "payload", "certificate", "probe", "seed", "version"}
                assert report["exact"] is True
            else:
                assert first.stdout == b"" and first.stderr


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
