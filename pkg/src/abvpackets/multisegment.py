"""Segments, multisegments and infinitesimal parameters.

Exponents are half-integers stored doubled, so ``HalfInt(1)`` is 1/2.  A
segment ``[a, b]`` on a cuspidal line stands for the exponents
``a, a+1, ..., b``; a multisegment is a multiset of segments kept in one
fixed does-not-precede order.

Text literals::

    ms   := seg ("+" seg)* | "0"
    seg  := "[" half ("," half)? "]" ("@" label)?
    half := int | int "/2"
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable, Iterator

from .errors import ParseError

DEFAULT_LABEL = "1"


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An exact half-integer; ``twice`` holds twice the value."""

    twice: int

    @classmethod
    def of(cls, value: "int | HalfInt | str") -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an exponent")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            return parse_half(value)
        raise TypeError(f"cannot make a HalfInt from {value!r}")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def parity(self) -> int:
        return self.twice % 2

    def __add__(self, other: "int | HalfInt") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        return HalfInt(self.twice + 2 * other)

    __radd__ = __add__

    def __sub__(self, other: "int | HalfInt") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        return HalfInt(self.twice - 2 * other)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __lt__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice < other.twice

    def int_diff(self, other: "HalfInt") -> int:
        """``self - other`` as an int; raises if it is not integral."""
        d = self.twice - other.twice
        if d % 2:
            raise ValueError(f"{self} - {other} is not an integer")
        return d // 2

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def parse_half(text: str) -> HalfInt:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(/\s*2)?\s*", text)
    if not m:
        raise ParseError(f"not a half-integer: {text!r}")
    n = int(m.group(1))
    return HalfInt(n) if m.group(2) else HalfInt(2 * n)


@dataclass(frozen=True, order=True)
class LineId:
    """A cuspidal line: the unramified twists of one cuspidal of GL_d."""

    label: str = DEFAULT_LABEL
    base_degree: int = 1

    def __post_init__(self):
        if self.base_degree < 1:
            raise ValueError("base_degree must be positive")
        if not self.label or any(c in self.label for c in "[]+@,() "):
            raise ValueError(f"bad line label {self.label!r}")

    def __str__(self) -> str:
        return self.label


DEFAULT_LINE = LineId()


@dataclass(frozen=True)
class Segment:
    line: LineId
    a: HalfInt
    b: HalfInt

    def __post_init__(self):
        d = self.b.twice - self.a.twice
        if d < 0 or d % 2:
            raise ValueError(f"[{self.a},{self.b}] is not a segment")

    @classmethod
    def of(cls, a, b=None, line: LineId = DEFAULT_LINE) -> "Segment":
        a = HalfInt.of(a)
        return cls(line, a, a if b is None else HalfInt.of(b))

    @property
    def length(self) -> int:
        return (self.b.twice - self.a.twice) // 2 + 1

    def exponents(self) -> list[HalfInt]:
        return [HalfInt(t) for t in range(self.a.twice, self.b.twice + 1, 2)]

    def contains(self, other: "Segment") -> bool:
        return (self.line == other.line and self.a <= other.a
                and other.b <= self.b
                and (other.a.twice - self.a.twice) % 2 == 0)

    def shift(self, x: int) -> "Segment":
        return Segment(self.line, self.a + x, self.b + x)

    def negate(self) -> "Segment":
        return Segment(self.line, -self.b, -self.a)

    def sort_key(self):
        # longer segments first among equal ends
        return (self.line, -self.b.twice, self.a.twice)

    def __str__(self) -> str:
        body = f"[{self.a}]" if self.a == self.b else f"[{self.a},{self.b}]"
        if self.line.label != DEFAULT_LABEL:
            body += f"@{self.line.label}"
        return body


def precedes(d1: Segment, d2: Segment) -> bool:
    """Zelevinsky's precedence: the segments are linked and ``d2`` starts
    a positive integer to the right of ``d1``."""
    if d1.line != d2.line:
        return False
    if (d2.a.twice - d1.a.twice) % 2:
        return False
    if d1.contains(d2) or d2.contains(d1):
        return False
    # d2 starts strictly after d1 and no gap between them
    return d1.a < d2.a and d1.b < d2.b and d2.a.twice <= d1.b.twice + 2


def linked(d1: Segment, d2: Segment) -> bool:
    return precedes(d1, d2) or precedes(d2, d1)


@dataclass(frozen=True)
class Multisegment:
    """A multiset of segments, always held in canonical order."""

    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "segments",
            tuple(sorted(self.segments, key=Segment.sort_key)))

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        return concat(self, other)

    def support(self) -> "InfinitesimalParameter":
        return support(self)

    @property
    def degree(self) -> int:
        return sum(s.line.base_degree * s.length for s in self.segments)

    def negate(self) -> "Multisegment":
        return Multisegment(tuple(s.negate() for s in self.segments))

    def key(self):
        return tuple((s.line, s.a.twice, s.b.twice) for s in self.segments)

    def __str__(self) -> str:
        if not self.segments:
            return "0"
        return "+".join(str(s) for s in self.segments)

    def __repr__(self) -> str:
        return f"Multisegment({self})"


def canonicalize(segments: Iterable[Segment]) -> Multisegment:
    return Multisegment(tuple(segments))


def concat(*parts: Multisegment) -> Multisegment:
    return Multisegment(tuple(s for p in parts for s in p.segments))


@dataclass(frozen=True)
class Chain:
    """A maximal run of consecutive exponents on one line, with multiplicities."""

    line: LineId
    start: HalfInt
    mults: tuple[int, ...]

    @property
    def exponents(self) -> list[HalfInt]:
        return [self.start + i for i in range(len(self.mults))]

    @property
    def npoints(self) -> int:
        return sum(self.mults)


@dataclass(frozen=True)
class InfinitesimalParameter:
    """Per-line multisets of exponents.

    ``points`` is a sorted tuple of ``(line, exponent, multiplicity)``.
    Exponents on one line whose difference is not an integer never interact;
    they are kept on the same line but fall into different chains.
    """

    points: tuple[tuple[LineId, HalfInt, int], ...] = field(default=())

    @classmethod
    def from_exponents(cls, exps: Iterable, line: LineId = DEFAULT_LINE
                       ) -> "InfinitesimalParameter":
        return cls.from_pairs((line, HalfInt.of(e)) for e in exps)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[LineId, HalfInt]]
                   ) -> "InfinitesimalParameter":
        cnt = Counter(pairs)
        return cls(tuple(sorted((ln, e, k) for (ln, e), k in cnt.items())))

    def counter(self) -> Counter:
        return Counter({(ln, e): k for ln, e, k in self.points})

    def __add__(self, other: "InfinitesimalParameter") -> "InfinitesimalParameter":
        return InfinitesimalParameter.from_pairs(
            (self.counter() + other.counter()).elements())

    @property
    def degree(self) -> int:
        return sum(ln.base_degree * k for ln, _, k in self.points)

    @property
    def npoints(self) -> int:
        return sum(k for _, _, k in self.points)

    def lines(self) -> list[LineId]:
        return sorted({ln for ln, _, _ in self.points})

    def multiplicity(self, line: LineId, e: HalfInt) -> int:
        return self.counter()[(line, e)]

    def chains(self) -> list[Chain]:
        out = []
        for ln in self.lines():
            exps = {e: k for l2, e, k in self.points if l2 == ln}
            for par in (0, 1):
                run: list[HalfInt] = []
                for e in sorted(x for x in exps if x.parity == par):
                    if run and e.twice != run[-1].twice + 2:
                        out.append(Chain(ln, run[0], tuple(exps[x] for x in run)))
                        run = []
                    run.append(e)
                if run:
                    out.append(Chain(ln, run[0], tuple(exps[x] for x in run)))
        out.sort(key=lambda c: (c.line, c.start.parity, c.start))
        return out

    def negate(self) -> "InfinitesimalParameter":
        return InfinitesimalParameter.from_pairs(
            (ln, -e) for ln, e in self.counter().elements())

    def as_multisegment(self) -> Multisegment:
        """All-singletons multisegment with this support (the closed orbit)."""
        return Multisegment(tuple(Segment(ln, e, e)
                                  for ln, e in self.counter().elements()))

    def __str__(self) -> str:
        return str(self.as_multisegment())


def support(alpha: Multisegment) -> InfinitesimalParameter:
    return InfinitesimalParameter.from_pairs(
        (s.line, e) for s in alpha for e in s.exponents())


_SEG_RE = re.compile(
    r"\[\s*(-?\d+(?:\s*/\s*2)?)\s*(?:,\s*(-?\d+(?:\s*/\s*2)?)\s*)?\]"
    r"(?:@([^\[\]+@,()\s]+))?")


def parse_segment(text: str, lines: dict[str, LineId] | None = None) -> Segment:
    m = _SEG_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad segment literal {text!r}")
    label = m.group(3) or DEFAULT_LABEL
    line = (lines or {}).get(label) or LineId(label)
    a = parse_half(m.group(1))
    b = parse_half(m.group(2)) if m.group(2) else a
    try:
        return Segment(line, a, b)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_multisegment(text: str, lines: dict[str, LineId] | None = None
                       ) -> Multisegment:
    text = text.strip()
    if text == "0":
        return Multisegment()
    if not text:
        raise ParseError("empty multisegment literal")
    return Multisegment(tuple(parse_segment(p, lines) for p in text.split("+")))


def parse_lambda(text: str) -> InfinitesimalParameter:
    """Parse an infinitesimal parameter written as a multisegment literal."""
    return support(parse_multisegment(text))
