"""Exact scalars, one-indexed sequences, and the integrated/differentiated decorations.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`Seq` is either
finitely supported or a closed-form family ``c * k**p * r**k`` (with an
optional finite prefix overriding the first few terms).  The four named
families are special cases of that single shape::

    Constant(c)      p = 0, r = 1
    PowerLaw(c, p)   r = 1
    Geometric(c, r)  p = 0, |r| < 1
    Alternating(c)   p = 0, r = -1

Keeping one shape makes ``decorate`` closed: multiplying term ``k`` by ``k``
(or ``1/k``) only moves the exponent.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import LiteralError

Scalar = Fraction

SEQ_GRAMMAR = (
    "finite:[p/q,...] | const:c | powerlaw:c,p | geom:c,r | alt:c | family:c,p,r | spike:k, "
    "optionally followed by |prefix:[p/q,...]"
)
SPACE_GRAMMAR = "l1 | linf | c | c0 | bv | bs | cs | c0s, optionally prefixed by int_ or d_"


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact scalar.

    Floats are refused: they would smuggle a rounding step into exact code.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    if isinstance(value, str):
        return parse_scalar(value)
    return Fraction(value)


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise LiteralError(text, "an exact rational p/q") from None


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Family:
    """Closed-form sequence ``coeff * k**power * ratio**k`` for k >= 1."""

    coeff: Fraction
    power: int = 0
    ratio: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "coeff", scalar(self.coeff))
        object.__setattr__(self, "ratio", scalar(self.ratio))
        if not isinstance(self.power, int):
            raise TypeError("family exponent must be an integer")
        if abs(self.ratio) > 1:
            raise ValueError(f"ratio {self.ratio} outside the catalogue (|r| <= 1 required)")

    def term(self, k: int) -> Fraction:
        return self.coeff * Fraction(k) ** self.power * self.ratio**k

    @property
    def kind(self) -> str:
        if self.ratio == 1:
            return "const" if self.power == 0 else "powerlaw"
        if self.power == 0:
            return "alt" if self.ratio == -1 else "geom"
        return "family"

    @property
    def rho(self) -> Fraction:
        return abs(self.ratio)

    def literal(self) -> str:
        c = format_scalar(self.coeff)
        kind = self.kind
        if kind == "const":
            return f"const:{c}"
        if kind == "powerlaw":
            return f"powerlaw:{c},{self.power}"
        if kind == "alt":
            return f"alt:{c}"
        if kind == "geom":
            return f"geom:{c},{format_scalar(self.ratio)}"
        return f"family:{c},{self.power},{format_scalar(self.ratio)}"


def Constant(c) -> "Seq":
    return Seq.of_family(Family(c, 0, 1))


def PowerLaw(c, p: int) -> "Seq":
    return Seq.of_family(Family(c, p, 1))


def Geometric(c, r) -> "Seq":
    r = scalar(r)
    if abs(r) >= 1:
        raise ValueError("geometric ratio must satisfy |r| < 1")
    return Seq.of_family(Family(c, 0, r))


def Alternating(c) -> "Seq":
    return Seq.of_family(Family(c, 0, -1))


def spike(k: int) -> "Seq":
    """The unit sequence e^(k): a single 1 in place k."""
    if k < 1:
        raise ValueError("indices start at 1")
    return Seq.finite([0] * (k - 1) + [1])


def finite(values: Iterable) -> "Seq":
    return Seq.finite(values)


@dataclass(frozen=True)
class Seq:
    """A one-indexed exact sequence.

    ``values`` is the whole support for a finitely supported sequence, and
    the prefix override for a family.  Instances are immutable.
    """

    values: Tuple[Fraction, ...] = ()
    family: Optional[Family] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(scalar(v) for v in self.values))
        fam = self.family
        if fam is not None and (fam.coeff == 0 or fam.ratio == 0):
            # the family part vanishes; keep only the prefix
            object.__setattr__(self, "family", None)

    @classmethod
    def finite(cls, values: Iterable) -> "Seq":
        return cls(tuple(values), None)

    @classmethod
    def of_family(cls, family: Family, prefix: Iterable = ()) -> "Seq":
        return cls(tuple(prefix), family)

    @property
    def is_finite(self) -> bool:
        return self.family is None

    @property
    def kind(self) -> str:
        return "finite" if self.family is None else self.family.kind

    @property
    def support(self) -> int:
        """Largest index with a nonzero term (0 for the zero sequence).

        Only meaningful for finitely supported sequences.
        """
        if self.family is not None:
            raise ValueError("a family has unbounded support")
        for i in range(len(self.values), 0, -1):
            if self.values[i - 1] != 0:
                return i
        return 0

    def term(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError(f"index {k} < 1; sequences are one-indexed")
        if k <= len(self.values):
            return self.values[k - 1]
        if self.family is None:
            return Fraction(0)
        return self.family.term(k)

    def terms(self, n: int) -> Tuple[Fraction, ...]:
        return tuple(self.term(k) for k in range(1, n + 1))

    def __getitem__(self, k: int) -> Fraction:
        return self.term(k)

    def agrees(self, other: "Seq", bound: int) -> bool:
        """Termwise equality on indices 1..bound."""
        return all(self.term(k) == other.term(k) for k in range(1, bound + 1))

    # -- linear structure (closed only within one family shape) -------------

    def _combine(self, other: "Seq", sign: int) -> "Seq":
        if self.family and other.family and (
            (self.family.power, self.family.ratio) != (other.family.power, other.family.ratio)
        ):
            raise ValueError("sum of different family shapes is outside the catalogue")
        fam = self.family or other.family
        if self.family and other.family:
            fam = Family(self.family.coeff + sign * other.family.coeff, fam.power, fam.ratio)
        elif other.family and sign < 0:
            fam = Family(-other.family.coeff, fam.power, fam.ratio)
        size = max(len(self.values), len(other.values))
        prefix = [self.term(k) + sign * other.term(k) for k in range(1, size + 1)]
        return Seq(tuple(prefix), fam)

    def __add__(self, other: "Seq") -> "Seq":
        return self._combine(other, 1)

    def __sub__(self, other: "Seq") -> "Seq":
        return self._combine(other, -1)

    def scale(self, c) -> "Seq":
        c = scalar(c)
        fam = self.family
        if fam is not None:
            fam = Family(fam.coeff * c, fam.power, fam.ratio)
        return Seq(tuple(v * c for v in self.values), fam)

    def __neg__(self) -> "Seq":
        return self.scale(-1)

    def multiply(self, other: "Seq") -> "Seq":
        """Termwise product."""
        if self.family is None or other.family is None:
            # any finite factor bounds the support of the product
            size = min(len(s.values) for s in (self, other) if s.family is None)
            return Seq.finite(self.term(k) * other.term(k) for k in range(1, size + 1))
        fam = Family(
            self.family.coeff * other.family.coeff,
            self.family.power + other.family.power,
            self.family.ratio * other.family.ratio,
        )
        size = max(len(self.values), len(other.values))
        return Seq(tuple(self.term(k) * other.term(k) for k in range(1, size + 1)), fam)

    def literal(self) -> str:
        body = "[" + ",".join(format_scalar(v) for v in self.values) + "]"
        if self.family is None:
            return f"finite:{body}"
        lit = self.family.literal()
        return f"{lit}|prefix:{body}" if self.values else lit

    def __str__(self) -> str:
        return self.literal()


# ---------------------------------------------------------------------------
# decorations


class Decoration(enum.Enum):
    NONE = ""
    INTEGRATED = "int_"
    DIFFERENTIATED = "d_"


def decorate(s: Seq, d: Decoration) -> Seq:
    """Integrated: term k times k.  Differentiated: term k divided by k."""
    if d is Decoration.NONE:
        return s
    step = 1 if d is Decoration.INTEGRATED else -1
    prefix = tuple(v * Fraction(k) ** step for k, v in enumerate(s.values, start=1))
    fam = s.family
    if fam is not None:
        fam = Family(fam.coeff, fam.power + step, fam.ratio)
    return Seq(prefix, fam)


def truncate(s: Seq, n: int) -> Seq:
    """The section x^[n]: terms 1..n kept, zero beyond."""
    if n < 1:
        raise ValueError("truncation length must be >= 1")
    return Seq.finite(s.terms(n))


# ---------------------------------------------------------------------------
# space identifiers


class Base(enum.Enum):
    L1 = "l1"
    LINF = "linf"
    C = "c"
    C0 = "c0"
    BV = "bv"
    BS = "bs"
    CS = "cs"
    C0S = "c0s"


_PRETTY = {
    Base.L1: "ℓ₁", Base.LINF: "ℓ∞", Base.C: "c", Base.C0: "c₀",
    Base.BV: "bv", Base.BS: "bs", Base.CS: "cs", Base.C0S: "c₀s",
}


@dataclass(frozen=True)
class SpaceId:
    base: Base
    decoration: Decoration = Decoration.NONE

    @classmethod
    def parse(cls, text: str) -> "SpaceId":
        t = text.strip().lower()
        deco = Decoration.NONE
        for d in (Decoration.INTEGRATED, Decoration.DIFFERENTIATED):
            if t.startswith(d.value):
                deco, t = d, t[len(d.value):]
                break
        try:
            return cls(Base(t), deco)
        except ValueError:
            raise LiteralError(text, SPACE_GRAMMAR) from None

    @property
    def literal(self) -> str:
        return self.decoration.value + self.base.value

    @property
    def pretty(self) -> str:
        b = _PRETTY[self.base]
        if self.decoration is Decoration.INTEGRATED:
            return f"∫{b}"
        if self.decoration is Decoration.DIFFERENTIATED:
            return f"d({b})"
        return b

    def __str__(self) -> str:
        return self.literal


def space(text: str) -> SpaceId:
    return SpaceId.parse(text)


# ---------------------------------------------------------------------------
# sequence literals

_LIST_RE = re.compile(r"^\[(.*)\]$", re.S)


def _parse_list(text: str, whole: str):
    m = _LIST_RE.match(text.strip())
    if not m:
        raise LiteralError(whole, SEQ_GRAMMAR)
    inner = m.group(1).strip()
    if not inner:
        return ()
    try:
        return tuple(parse_scalar(t) for t in inner.split(","))
    except LiteralError:
        raise LiteralError(whole, SEQ_GRAMMAR) from None


def _parse_int(text: str, whole: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise LiteralError(whole, SEQ_GRAMMAR) from None


def parse_seq(text: str) -> Seq:
    """Parse a sequence literal (see ``SEQ_GRAMMAR``)."""
    whole = text
    body, _, suffix = text.strip().partition("|")
    prefix: Tuple[Fraction, ...] = ()
    if suffix:
        tag, _, rest = suffix.partition(":")
        if tag.strip() != "prefix":
            raise LiteralError(whole, SEQ_GRAMMAR)
        prefix = _parse_list(rest, whole)
    kind, sep, args = body.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise LiteralError(whole, SEQ_GRAMMAR)
    parts = [a for a in args.split(",")] if kind != "finite" else []
    try:
        if kind == "finite":
            if suffix:
                raise LiteralError(whole, SEQ_GRAMMAR)
            return Seq.finite(_parse_list(args, whole))
        if kind == "spike" and len(parts) == 1 and not suffix:
            return spike(_parse_int(parts[0], whole))
        if kind == "const" and len(parts) == 1:
            fam = Family(parse_scalar(parts[0]), 0, 1)
        elif kind == "powerlaw" and len(parts) == 2:
            fam = Family(parse_scalar(parts[0]), _parse_int(parts[1], whole), 1)
        elif kind == "geom" and len(parts) == 2:
            r = parse_scalar(parts[1])
            if abs(r) >= 1:
                raise LiteralError(whole, "geom:c,r with |r| < 1")
            fam = Family(parse_scalar(parts[0]), 0, r)
        elif kind == "alt" and len(parts) == 1:
            fam = Family(parse_scalar(parts[0]), 0, -1)
        elif kind == "family" and len(parts) == 3:
            fam = Family(parse_scalar(parts[0]), _parse_int(parts[1], whole), parse_scalar(parts[2]))
        else:
            raise LiteralError(whole, SEQ_GRAMMAR)
    except LiteralError as exc:
        if exc.token != whole:
            raise LiteralError(whole, SEQ_GRAMMAR) from None
        raise
    except ValueError:
        raise LiteralError(whole, SEQ_GRAMMAR) from None
    return Seq.of_family(fam, prefix)
