"""Infinite lower-triangular matrices over exact rationals.

Every matrix exposes ``entry(n, k)`` (one-indexed) and ``row_support(n)``.
Matrices whose entries follow a :class:`Profile` (a few rational-function
diagonals, optionally followed by a row-constant tail below the band) also
expose that profile, which is what lets the class tests reason about all
rows and columns at once instead of a finite window.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ._poly import RationalFunction
from .core import Family, Seq, format_scalar, parse_scalar
from .errors import InfiniteRowSupport, LiteralError, NonComputableRow, SingularDiagonal

OP_GRAMMAR = (
    "delta | gamma | sigma | identity | zero | diag:n | diag:1/n | diag:const:c | "
    "prod:<op>,<op> | closed:gamma_inv | closed:sigma_inv | rows:[[a,b,...],[...]]"
)

RF = RationalFunction
_n = RF.monomial(1, 1)


@dataclass(frozen=True)
class Profile:
    """Symbolic shape of a lower-triangular matrix.

    ``band[o](n)`` is the entry at ``(n, n - o)``; when ``tail`` is given,
    every entry with ``k <= n - len(band)`` equals ``tail(n)``.  Rules are
    only ever evaluated at valid positions (``k >= 1``).
    """

    band: Tuple[RationalFunction, ...]
    tail: Optional[RationalFunction] = None

    def __post_init__(self):
        band = list(self.band)
        tail = self.tail if self.tail is not None and not self.tail.is_zero() else None
        if tail is None:
            while band and band[-1].is_zero():
                band.pop()
        object.__setattr__(self, "band", tuple(band))
        object.__setattr__(self, "tail", tail)

    @property
    def width(self) -> int:
        return len(self.band)

    @property
    def banded(self) -> bool:
        return self.tail is None

    def diag(self, o: int) -> RationalFunction:
        if o < 0:
            return RF.ZERO
        if o < len(self.band):
            return self.band[o]
        return self.tail if self.tail is not None else RF.ZERO

    def entry(self, n: int, k: int) -> Fraction:
        o = n - k
        if o < 0 or k < 1:
            return Fraction(0)
        rule = self.diag(o)
        return Fraction(0) if rule.is_zero() else rule(n)

    def describe(self) -> dict:
        return {
            "band": [f.to_str() for f in self.band],
            "tail": None if self.tail is None else self.tail.to_str(),
        }


class InfiniteMatrix:
    """Base class; lower-triangular unless ``lower`` is False."""

    label: str = "matrix"
    lower: bool = True

    def entry(self, n: int, k: int) -> Fraction:
        raise NotImplementedError

    def row_support(self, n: int) -> Tuple[int, Optional[int]]:
        """Inclusive column range that may hold nonzero entries; None = unbounded."""
        return (1, n)

    def profile(self) -> Optional[Profile]:
        return None

    @property
    def bandwidth(self) -> Optional[int]:
        p = self.profile()
        if p is None or not p.banded:
            return None
        return max(p.width - 1, 0)

    def block(self, size: int) -> List[List[Fraction]]:
        return [[self.entry(n, k) for k in range(1, size + 1)] for n in range(1, size + 1)]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class Band(InfiniteMatrix):
    """A matrix given entirely by a :class:`Profile`."""

    def __init__(self, label: str, band: Sequence, tail=None):
        self.label = label
        rules = tuple(b if isinstance(b, RF) else RF.const(b) for b in band)
        if tail is not None and not isinstance(tail, RF):
            tail = RF.const(tail)
        self._profile = Profile(rules, tail)

    @classmethod
    def from_profile(cls, label: str, profile: Profile) -> "Band":
        return cls(label, profile.band, profile.tail)

    def entry(self, n, k):
        return self._profile.entry(n, k)

    def row_support(self, n):
        p = self._profile
        if p.tail is not None:
            return (1, n)
        return (max(1, n - p.width + 1), n if p.width else n - 1)

    def profile(self):
        return self._profile


class Diagonal(InfiniteMatrix):
    """``D_alpha`` with ``alpha`` a sequence or a rational rule in n."""

    def __init__(self, alpha, label: Optional[str] = None):
        self.alpha = alpha
        self.label = label or (
            f"diag:{alpha.literal()}" if isinstance(alpha, Seq) else f"diag:{alpha.to_str()}"
        )

    def _value(self, n):
        return self.alpha.term(n) if isinstance(self.alpha, Seq) else self.alpha(n)

    def entry(self, n, k):
        return self._value(n) if n == k else Fraction(0)

    def row_support(self, n):
        return (n, n)

    def profile(self):
        a = self.alpha
        if isinstance(a, RF):
            return Profile((a,))
        if a.family is not None and a.family.ratio == 1 and not a.values:
            return Profile((RF.monomial(a.family.coeff, a.family.power),))
        if a.family is None:
            return None
        return None


class ClosedForm(InfiniteMatrix):
    """Entries from a rule ``e(n, k)`` for ``k <= n``."""

    def __init__(self, label: str, rule: Callable[[int, int], Fraction],
                 bandwidth: Optional[int] = None, profile: Optional[Profile] = None):
        self.label = label
        self._rule = rule
        self._bandwidth = bandwidth
        self._profile = profile

    def entry(self, n, k):
        if k > n or k < 1:
            return Fraction(0)
        if self._bandwidth is not None and n - k > self._bandwidth:
            return Fraction(0)
        return Fraction(self._rule(n, k))

    def row_support(self, n):
        if self._bandwidth is None:
            return (1, n)
        return (max(1, n - self._bandwidth), n)

    def profile(self):
        return self._profile

    @property
    def bandwidth(self):
        return self._bandwidth


class Product(InfiniteMatrix):
    """``left @ right``, entries computed on demand."""

    def __init__(self, left: InfiniteMatrix, right: InfiniteMatrix, label: Optional[str] = None):
        self.left, self.right = left, right
        self.label = label or f"prod:{left.label},{right.label}"
        self.lower = left.lower and right.lower
        self._profile = _profile_product(left.profile(), right.profile())

    def entry(self, n, k):
        return compose(self.left, self.right, n, k)

    def row_support(self, n):
        if self._profile is not None and self._profile.banded:
            return (max(1, n - self._profile.width + 1), n)
        lo, hi = self.left.row_support(n)
        if hi is None:
            return (1, None)
        spans = [self.right.row_support(j) for j in range(lo, hi + 1)]
        spans = [s for s in spans if s[1] is None or s[1] >= s[0]]
        if not spans:
            return (1, 0)
        if any(s[1] is None for s in spans):
            return (1, None)
        return (min(s[0] for s in spans), max(s[1] for s in spans))

    def profile(self):
        return self._profile


def _profile_product(a: Optional[Profile], b: Optional[Profile]) -> Optional[Profile]:
    """Symbolic product when the left factor is banded."""
    if a is None or b is None or not a.banded:
        return None
    if a.width == 0 or (b.width == 0 and b.tail is None):
        return Profile(())
    width = a.width + b.width - 1 if b.width else a.width
    band = []
    for o in range(width):
        acc = RF.ZERO
        for o1 in range(min(o, a.width - 1) + 1):
            rb = b.diag(o - o1)
            if not rb.is_zero():
                acc = acc + a.band[o1] * rb.shift(-o1)
        band.append(acc)
    tail = None
    if b.tail is not None:
        tail = RF.ZERO
        for o1 in range(a.width):
            tail = tail + a.band[o1] * b.tail.shift(-o1)
    return Profile(tuple(band), tail)


class FiniteMatrix(InfiniteMatrix):
    """Finitely many nonzero entries, not necessarily triangular."""

    def __init__(self, rows: Sequence[Sequence], label: Optional[str] = None):
        self.rows = tuple(tuple(Fraction(v) for v in r) for r in rows)
        self.lower = all(v == 0 for n, r in enumerate(self.rows, 1) for k, v in enumerate(r, 1) if k > n)
        self.label = label or "rows:[" + ",".join(
            "[" + ",".join(format_scalar(v) for v in r) + "]" for r in self.rows
        ) + "]"

    @property
    def size(self) -> Tuple[int, int]:
        return len(self.rows), max((len(r) for r in self.rows), default=0)

    def entry(self, n, k):
        if 1 <= n <= len(self.rows) and 1 <= k <= len(self.rows[n - 1]):
            return self.rows[n - 1][k - 1]
        return Fraction(0)

    def row_support(self, n):
        if n > len(self.rows):
            return (1, 0)
        return (1, len(self.rows[n - 1]))


# ---------------------------------------------------------------------------
# the catalogue

DELTA = Band("delta", (1, -1))
GAMMA = Band("gamma", (_n, -(_n - RF.const(1))))
SIGMA = Band("sigma", (RF.monomial(1, -1), RF.linear_inverse(-1, -1)))
IDENTITY = Band("identity", (1,))
ZERO = Band("zero", ())
GAMMA_INV = ClosedForm("closed:gamma_inv", lambda n, k: Fraction(1, n),
                       profile=Profile((), RF.monomial(1, -1)))
SIGMA_INV = ClosedForm("closed:sigma_inv", lambda n, k: Fraction(n),
                       profile=Profile((), RF.monomial(1, 1)))

# largest block on which each registered closed form has been cross-checked
_CHECKED: Dict[str, int] = {}

_KNOWN_INVERSES: Dict[str, InfiniteMatrix] = {
    "gamma": GAMMA_INV, "sigma": SIGMA_INV, "identity": IDENTITY,
    "closed:gamma_inv": GAMMA, "closed:sigma_inv": SIGMA,
}


# ---------------------------------------------------------------------------
# operations


def entry(A: InfiniteMatrix, n: int, k: int) -> Fraction:
    if n < 1 or k < 1:
        raise ValueError("matrix indices start at 1")
    return A.entry(n, k)


def apply(A: InfiniteMatrix, x: Seq, n: int) -> Fraction:
    """``(Ax)_n = sum_k a_nk x_k``."""
    lo, hi = A.row_support(n)
    if hi is None:
        if x.family is not None:
            raise NonComputableRow(f"row {n} of {A.label} is unbounded and {x.literal()} is infinite")
        hi = len(x.values)
    return sum((A.entry(n, k) * x.term(k) for k in range(lo, hi + 1)), Fraction(0))


def transform(A: InfiniteMatrix, x: Seq, n_max: int) -> Seq:
    """First ``n_max`` entries of Ax."""
    p = A.profile() if A.lower else None
    if p is None or p.tail is None:
        return Seq.finite(apply(A, x, n) for n in range(1, n_max + 1))
    # a tail constant along each row lets the part left of the band reuse a running prefix sum
    out, prefix, w = [], Fraction(0), p.width
    for n in range(1, n_max + 1):
        if n - w >= 1:
            prefix += x.term(n - w)
        v = p.tail(n) * prefix if prefix else Fraction(0)
        for o in range(min(w, n)):
            rule = p.band[o]
            if not rule.is_zero():
                v += rule(n) * x.term(n - o)
        out.append(v)
    return Seq.finite(out)


def gamma_transform(x: Seq, n_max: int) -> Seq:
    """``y_1 = x_1``, ``y_k = k x_k - (k-1) x_{k-1}``."""
    ys = [x.term(1)]
    for k in range(2, n_max + 1):
        ys.append(k * x.term(k) - (k - 1) * x.term(k - 1))
    return Seq.finite(ys[:n_max])


def sigma_transform(x: Seq, n_max: int) -> Seq:
    """``y_1 = x_1``, ``y_k = x_k / k - x_{k-1} / (k-1)``."""
    ys = [x.term(1)]
    for k in range(2, n_max + 1):
        ys.append(x.term(k) / k - x.term(k - 1) / (k - 1))
    return Seq.finite(ys[:n_max])


def compose(A: InfiniteMatrix, B: InfiniteMatrix, n: int, k: int) -> Fraction:
    """Entry ``(AB)_{nk}``."""
    lo, hi = A.row_support(n)
    if hi is None:
        raise InfiniteRowSupport(f"row {n} of {A.label} is unbounded")
    if B.lower:
        lo = max(lo, k)
    return sum((A.entry(n, j) * B.entry(j, k) for j in range(lo, hi + 1)), Fraction(0))


def row_tail_sum(A: InfiniteMatrix, n: int, k: int) -> Fraction:
    """``sum_{j >= k} a_nj``."""
    lo, hi = A.row_support(n)
    if hi is None:
        raise InfiniteRowSupport(f"row {n} of {A.label} has unbounded support")
    return sum((A.entry(n, j) for j in range(max(k, lo), hi + 1)), Fraction(0))


class _ForwardSubstitution:
    """Rows of ``A^{-1}``, filled once each and shared between readers."""

    def __init__(self, A: InfiniteMatrix):
        if not A.lower:
            raise ValueError(f"{A.label} is not lower-triangular")
        self.A = A
        self._rows: List[Tuple[Fraction, ...]] = []
        self._lock = threading.Lock()

    def _fill(self, n: int) -> None:
        with self._lock:
            A, rows = self.A, self._rows
            while len(rows) < n:
                m = len(rows) + 1
                d = A.entry(m, m)
                if d == 0:
                    raise SingularDiagonal(f"{A.label} has a zero diagonal entry at row {m}")
                lo, _ = A.row_support(m)
                row = []
                for k in range(1, m):
                    acc = Fraction(0)
                    for j in range(max(k, lo), m):
                        a = A.entry(m, j)
                        if a:
                            acc += a * rows[j - 1][k - 1]
                    row.append(-acc / d)
                row.append(1 / d)
                rows.append(tuple(row))  # publish only complete rows

    def entry(self, n: int, k: int) -> Fraction:
        if len(self._rows) < n:
            self._fill(n)
        return self._rows[n - 1][k - 1]


def invert(A: InfiniteMatrix, n_max: int = 64) -> InfiniteMatrix:
    """Two-sided inverse of a triangle.

    Known closed forms are returned after being checked against forward
    substitution on the leading ``n_max`` block; anything else comes back as
    a lazily filled forward-substitution table.
    """
    known = _KNOWN_INVERSES.get(A.label)
    if known is not None and _CHECKED.get(A.label, 0) >= n_max:
        return known
    fs = _ForwardSubstitution(A)
    fs._fill(n_max)
    if known is not None:
        for n in range(1, n_max + 1):
            for k in range(1, n + 1):
                if fs.entry(n, k) != known.entry(n, k):
                    raise AssertionError(
                        f"closed form {known.label} disagrees with forward substitution at ({n},{k})"
                    )
        _CHECKED[A.label] = max(_CHECKED.get(A.label, 0), n_max)
        return known
    return ClosedForm(f"inv({A.label})", fs.entry)


def column_seq(A: InfiniteMatrix, k: int) -> Seq:
    """Column k as a sequence, when the profile makes it a closed-form family."""
    p = A.profile()
    if p is None:
        raise NonComputableRow(f"{A.label} has no symbolic profile")
    if p.tail is None:
        return Seq.finite(A.entry(n, k) for n in range(1, k + p.width))
    fam = _monomial_family(p.tail)
    if fam is None:
        raise NonComputableRow(f"tail of {A.label} is not a monomial in n")
    prefix = [Fraction(0)] * (k - 1) + [A.entry(n, k) for n in range(k, k + p.width)]
    return Seq.of_family(fam, prefix)


def _monomial_family(f: RationalFunction) -> Optional[Family]:
    num, den = f.num, f.den
    if len(num) == 0:
        return None
    if all(c == 0 for c in num[:-1]) and len(den) == 1:
        return Family(num[-1] / den[0], len(num) - 1, 1)
    if len(num) == 1 and all(c == 0 for c in den[:-1]):
        return Family(num[0] / den[-1], -(len(den) - 1), 1)
    return None


# ---------------------------------------------------------------------------
# literals

_NAMED = {
    "delta": DELTA, "gamma": GAMMA, "sigma": SIGMA, "identity": IDENTITY, "zero": ZERO,
    "closed:gamma_inv": GAMMA_INV, "closed:sigma_inv": SIGMA_INV,
}


def parse_operator(text: str) -> InfiniteMatrix:
    """Parse an operator literal (see ``OP_GRAMMAR``)."""
    t = text.strip()
    if t.startswith("rows:"):
        return _parse_rows(t[5:], text)
    tokens = [s.strip() for s in t.split(",")]
    op, i = _parse_tokens(tokens, 0, text)
    if i != len(tokens):
        raise LiteralError(text, OP_GRAMMAR)
    return op


def _parse_tokens(tokens: List[str], i: int, whole: str):
    if i >= len(tokens):
        raise LiteralError(whole, OP_GRAMMAR)
    tok = tokens[i]
    if tok in _NAMED:
        return _NAMED[tok], i + 1
    if tok.startswith("prod:"):
        tokens = tokens[:i] + [tok[5:]] + tokens[i + 1:]
        left, j = _parse_tokens(tokens, i, whole)
        right, j = _parse_tokens(tokens, j, whole)
        return Product(left, right), j
    if tok.startswith("diag:"):
        rule = tok[5:]
        if rule == "n":
            return Diagonal(_n, "diag:n"), i + 1
        if rule == "1/n":
            return Diagonal(RF.monomial(1, -1), "diag:1/n"), i + 1
        if rule.startswith("const:"):
            try:
                c = parse_scalar(rule[6:])
            except LiteralError:
                raise LiteralError(whole, OP_GRAMMAR) from None
            return Diagonal(RF.const(c), f"diag:const:{format_scalar(c)}"), i + 1
    raise LiteralError(whole, OP_GRAMMAR)


def _parse_rows(body: str, whole: str) -> FiniteMatrix:
    b = body.strip()
    if not (b.startswith("[") and b.endswith("]")):
        raise LiteralError(whole, OP_GRAMMAR)
    inner = b[1:-1].strip()
    rows = []
    pos = 0
    for m in re.finditer(r"\[([^\[\]]*)\]", inner):
        between = inner[pos:m.start()].strip().strip(",").strip()
        if between:
            raise LiteralError(whole, OP_GRAMMAR)
        pos = m.end()
        cells = m.group(1).strip()
        try:
            rows.append([parse_scalar(c) for c in cells.split(",")] if cells else [])
        except LiteralError:
            raise LiteralError(whole, OP_GRAMMAR) from None
    if inner[pos:].strip() or (inner and not rows):
        raise LiteralError(whole, OP_GRAMMAR)
    return FiniteMatrix(rows)
