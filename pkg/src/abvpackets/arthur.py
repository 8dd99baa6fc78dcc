"""Arthur parameters of GL_n as multisets of ``(line, a, b)`` components.

A component ``chi (x) S_a (x) S_b`` contributes the Speh rectangle: ``b``
segments of length ``a`` centred at ``-(b-1)/2, ..., (b-1)/2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError
from .multisegment import (DEFAULT_LABEL, DEFAULT_LINE, HalfInt,
                           InfinitesimalParameter, LineId, Multisegment,
                           Segment, concat, support)


@dataclass(frozen=True, order=True)
class ArthurComponent:
    line: LineId
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("SL2 dimensions must be positive")

    @property
    def degree(self) -> int:
        return self.line.base_degree * self.a * self.b

    def swap(self) -> "ArthurComponent":
        return ArthurComponent(self.line, self.b, self.a)

    def speh(self) -> Multisegment:
        segs = []
        for j in range(self.b):
            # centre c = j - (b-1)/2, doubled
            c2 = 2 * j - (self.b - 1)
            segs.append(Segment(self.line, HalfInt(c2 - (self.a - 1)),
                                HalfInt(c2 + (self.a - 1))))
        return Multisegment(tuple(segs))

    def __str__(self) -> str:
        s = f"(a={self.a},b={self.b})"
        if self.line.label != DEFAULT_LABEL:
            s += f"@{self.line.label}"
        return s


@dataclass(frozen=True)
class ArthurParameter:
    components: tuple[ArthurComponent, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("an Arthur parameter needs at least one component")
        object.__setattr__(self, "components",
                           tuple(sorted(self.components, key=_levi_key)))

    @classmethod
    def of(cls, *ab: tuple[int, int], line: LineId = DEFAULT_LINE
           ) -> "ArthurParameter":
        return cls(tuple(ArthurComponent(line, a, b) for a, b in ab))

    def __iter__(self) -> Iterator[ArthurComponent]:
        return iter(self.components)

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components)

    def __str__(self) -> str:
        return "+".join(str(c) for c in self.components)


def _levi_key(c: ArthurComponent):
    return (c.line, -c.a, -c.b)


def phi_of(psi: ArthurParameter) -> Multisegment:
    return concat(*(c.speh() for c in psi))


def pi_of(psi: ArthurParameter) -> Multisegment:
    # pi_psi is the Langlands quotient named by the same multisegment
    return phi_of(psi)


def infinitesimal(psi: ArthurParameter) -> InfinitesimalParameter:
    pairs = []
    for c in psi:
        for p in range(c.a):
            for q in range(c.b):
                pairs.append((c.line, HalfInt(2 * p - (c.a - 1) + 2 * q - (c.b - 1))))
    lam = InfinitesimalParameter.from_pairs(pairs)
    assert lam == support(phi_of(psi))
    return lam


def psi_hat(psi: ArthurParameter) -> ArthurParameter:
    return ArthurParameter(tuple(c.swap() for c in psi))


def levi_of(psi: ArthurParameter) -> list[tuple[int, ArthurParameter]]:
    """One Levi factor GL_m per component, in the canonical component order."""
    return [(c.degree, ArthurParameter((c,))) for c in psi.components]


def enumerate_arthur(n: int, line: LineId = DEFAULT_LINE) -> list[ArthurParameter]:
    """All Arthur parameters of GL_n on one line (base degree 1)."""
    shapes = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a * b <= n]
    shapes.sort(key=lambda ab: (-ab[0], -ab[1]))
    out = []

    def rec(start: int, left: int, acc: list[tuple[int, int]]):
        if left == 0:
            out.append(ArthurParameter.of(*acc, line=line))
            return
        for i in range(start, len(shapes)):
            a, b = shapes[i]
            if a * b <= left:
                rec(i, left - a * b, acc + [(a, b)])

    rec(0, n, [])
    return out


_COMP_RE = re.compile(r"\(\s*a\s*=\s*(\d+)\s*,\s*b\s*=\s*(\d+)\s*\)(?:@([^\[\]+@,()\s]+))?")


def parse_arthur(text: str, lines: dict[str, LineId] | None = None
                 ) -> ArthurParameter:
    comps = []
    for part in text.strip().split("+"):
        m = _COMP_RE.fullmatch(part.strip())
        if not m:
            raise ParseError(f"bad Arthur component {part!r}")
        label = m.group(3) or DEFAULT_LABEL
        line = (lines or {}).get(label) or LineId(label)
        try:
            comps.append(ArthurComponent(line, int(m.group(1)), int(m.group(2))))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return ArthurParameter(tuple(comps))
