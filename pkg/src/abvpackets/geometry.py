"""Vogan varieties V_lambda and their H_lambda-orbits.

For one chain of exponents ``r_1 < ... < r_k`` with multiplicities ``e_i``,
``V_lambda = (+)_i Hom(E_i, E_{i+1})`` and ``H_lambda = prod_i GL(E_i)``.
Orbits are indexed by multisegments with support lambda; the orbit of
``alpha`` is cut out by the ranks of the composite maps, and the rank of
``E_a -> E_b`` equals the number of segments of ``alpha`` containing
``[a, b]``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import linalg
from .arthur import ArthurParameter, phi_of, psi_hat
from .errors import GuardExceeded, SupportMismatch
from .multisegment import (Chain, InfinitesimalParameter, Multisegment,
                           Segment, concat, support)

DEFAULT_MAX_POINTS = 12
BRUTEFORCE_MAX_POINTS = 8
SCHEMA_VERSION = 1


def check_guard(lam: InfinitesimalParameter, max_points: int) -> None:
    per_line = Counter()
    for ln, _, k in lam.points:
        per_line[ln] += k
    for ln, cnt in per_line.items():
        if cnt > max_points:
            raise GuardExceeded(
                f"line {ln} carries {cnt} points; the limit is {max_points}")


def dim_V(lam: InfinitesimalParameter) -> int:
    return sum(x * y for ch in lam.chains() for x, y in zip(ch.mults, ch.mults[1:]))


def dim_H(lam: InfinitesimalParameter) -> int:
    return sum(k * k for _, _, k in lam.points)


def chain_orbits(chain: Chain) -> list[Multisegment]:
    """All multisegments supported exactly on ``chain``.

    Walk the chain left to right holding the open segments grouped by start;
    at each point top up with new starts, then choose how many of each group
    stop here.
    """
    k = len(chain.mults)
    out: list[Multisegment] = []

    def rec(i: int, open_: dict[int, int], closed: list[tuple[int, int, int]]):
        if i == k:
            if not open_:
                out.append(_chain_multisegment(chain, closed))
            return
        alive = sum(open_.values())
        fresh = chain.mults[i] - alive
        if fresh < 0:
            return
        groups = dict(open_)
        if fresh:
            groups[i] = groups.get(i, 0) + fresh
        starts = sorted(groups)
        last = i == k - 1
        for stops in itertools.product(*(range(groups[s] + 1) for s in starts)):
            if last and any(st != groups[s] for s, st in zip(starts, stops)):
                continue
            nxt = {s: groups[s] - st for s, st in zip(starts, stops) if groups[s] > st}
            if not last and sum(nxt.values()) > chain.mults[i + 1]:
                continue
            rec(i + 1, nxt, closed + [(s, i, st) for s, st in zip(starts, stops) if st])

    rec(0, {}, [])
    return out


def _chain_multisegment(chain: Chain, closed) -> Multisegment:
    segs = []
    for s, e, cnt in closed:
        segs += [Segment(chain.line, chain.start + s, chain.start + e)] * cnt
    return Multisegment(tuple(segs))


def rank_invariants(alpha: Multisegment) -> dict[Segment, int]:
    """Sparse map ``[a, b] -> #segments of alpha containing [a, b]``."""
    ranks: Counter = Counter()
    for seg in alpha:
        exps = seg.exponents()
        for i in range(len(exps)):
            for j in range(i, len(exps)):
                ranks[Segment(seg.line, exps[i], exps[j])] += 1
    return dict(ranks)


def _hom(d1: Segment, d2: Segment) -> int:
    # dim Hom between the indecomposables of [a,b] and [c,d]: 1 iff c <= a <= d <= b
    if d1.line != d2.line or (d1.a.twice - d2.a.twice) % 2:
        return 0
    a, b, c, d = d1.a, d1.b, d2.a, d2.b
    return int(c <= a <= d <= b)


def stabilizer_dim(alpha: Multisegment) -> int:
    return sum(_hom(x, y) for x in alpha for y in alpha)


def orbit_dim(alpha: Multisegment) -> int:
    return dim_H(support(alpha)) - stabilizer_dim(alpha)


def closure_leq(alpha: Multisegment, beta: Multisegment) -> bool:
    """Whether the orbit of ``alpha`` lies in the closure of the orbit of ``beta``."""
    if support(alpha) != support(beta):
        raise SupportMismatch(f"{alpha} and {beta} have different supports")
    rb = rank_invariants(beta)
    return all(v <= rb.get(k, 0) for k, v in rank_invariants(alpha).items())


# -- explicit orbit representatives and the brute-force stabilizer oracle --

@dataclass(frozen=True)
class GradedMatrixPoint:
    """0/1 representative of an orbit: ``maps[(chain_idx, i)]`` is the
    ``e_{i+1} x e_i`` matrix of ``E_i -> E_{i+1}`` on chain ``chain_idx``."""

    chains: tuple[Chain, ...]
    maps: dict = field(hash=False)

    def composite_rank(self, chain_idx: int, i: int, j: int) -> int:
        ch = self.chains[chain_idx]
        m = linalg.identity(ch.mults[i])
        for r in range(i, j):
            m = linalg.matmul(self.maps[(chain_idx, r)], m)
        return linalg.rank(m)


def graded_point(alpha: Multisegment) -> GradedMatrixPoint:
    chains = tuple(support(alpha).chains())
    maps = {}
    for ci, ch in enumerate(chains):
        exps = ch.exponents
        # basis of E_i: the segments covering exps[i], in canonical order
        cover = [[n for n, s in enumerate(alpha.segments)
                  if s.line == ch.line and s.a <= e <= s.b and (e.twice - s.a.twice) % 2 == 0]
                 for e in exps]
        for i in range(len(exps) - 1):
            rows = [[int(cover[i + 1][r] == cover[i][c]) for c in range(len(cover[i]))]
                    for r in range(len(cover[i + 1]))]
            maps[(ci, i)] = linalg.as_matrix(rows)
    return GradedMatrixPoint(chains, maps)


def stabilizer_dim_bruteforce(alpha: Multisegment,
                              max_points: int = BRUTEFORCE_MAX_POINTS) -> int:
    """Dimension of the graded commutant of the orbit representative,
    by exact elimination on the linear system ``h_{i+1} x_i = x_i h_i``."""
    lam = support(alpha)
    check_guard(lam, max_points)
    pt = graded_point(alpha)
    offsets = {}
    nunk = 0
    for ci, ch in enumerate(pt.chains):
        for i, e in enumerate(ch.mults):
            offsets[(ci, i)] = nunk
            nunk += e * e
    rows = []
    for ci, ch in enumerate(pt.chains):
        e = ch.mults
        for i in range(len(e) - 1):
            x = pt.maps[(ci, i)]
            lo, hi = offsets[(ci, i)], offsets[(ci, i + 1)]
            for r in range(e[i + 1]):
                for c in range(e[i]):
                    row = [0] * nunk
                    # (h_{i+1} x)_{rc} = sum_k h_{i+1}[r][k] x[k][c]
                    for k in range(e[i + 1]):
                        if x[k][c]:
                            row[hi + r * e[i + 1] + k] += x[k][c]
                    # (x h_i)_{rc} = sum_k x[r][k] h_i[k][c]
                    for k in range(e[i]):
                        if x[r][k]:
                            row[lo + k * e[i] + c] -= x[r][k]
                    rows.append(row)
    return linalg.nullity(rows, nunk) if rows else nunk


# -- orbit spaces --

def _orbit_sort_key(alpha: Multisegment):
    return (orbit_dim(alpha), alpha.key())


@dataclass(frozen=True)
class OrbitSpace:
    lam: InfinitesimalParameter
    orbits: tuple[Multisegment, ...]
    dims: tuple[int, ...]
    dimV: int
    dimH: int

    def __len__(self) -> int:
        return len(self.orbits)

    def index(self, alpha: Multisegment) -> int:
        try:
            return self._index[alpha]
        except KeyError:
            raise SupportMismatch(f"{alpha} is not an orbit of V_{{{self.lam}}}") from None

    @property
    def _index(self) -> dict[Multisegment, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {a: i for i, a in enumerate(self.orbits)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def ranks(self, i: int) -> dict[Segment, int]:
        return rank_invariants(self.orbits[i])

    def closure_matrix(self) -> linalg.Matrix:
        """Entry (i, j) is 1 iff C_i lies in the closure of C_j."""
        rk = [rank_invariants(a) for a in self.orbits]
        return tuple(tuple(int(all(v <= rk[j].get(k, 0) for k, v in rk[i].items()))
                           for j in range(len(self))) for i in range(len(self)))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "lambda": str(self.lam),
            "dimV": self.dimV,
            "orbits": [
                {"multisegment": str(a), "dim": d,
                 "ranks": {str(s): v for s, v in sorted(
                     rank_invariants(a).items(),
                     key=lambda kv: (kv[0].line, kv[0].a.twice, kv[0].b.twice))}}
                for a, d in zip(self.orbits, self.dims)],
        }


@lru_cache(maxsize=None)
def build_orbit_space(lam: InfinitesimalParameter,
                      max_points: int = DEFAULT_MAX_POINTS) -> OrbitSpace:
    check_guard(lam, max_points)
    per_chain = [chain_orbits(ch) for ch in lam.chains()]
    orbits = [concat(*combo) for combo in itertools.product(*per_chain)]
    orbits.sort(key=_orbit_sort_key)
    return OrbitSpace(lam, tuple(orbits), tuple(orbit_dim(a) for a in orbits),
                      dim_V(lam), dim_H(lam))


@dataclass(frozen=True)
class LeviSpace:
    """V_{lambda_M} = prod_i V_{lambda_i}; orbits are tuples ordered
    lexicographically by factor index (first factor most significant)."""

    factors: tuple[OrbitSpace, ...]

    @property
    def lam(self) -> InfinitesimalParameter:
        out = InfinitesimalParameter()
        for f in self.factors:
            out = out + f.lam
        return out

    @property
    def orbits(self) -> list[tuple[Multisegment, ...]]:
        return list(itertools.product(*(f.orbits for f in self.factors)))

    @property
    def dims(self) -> list[int]:
        return [sum(t) for t in itertools.product(*(f.dims for f in self.factors))]

    def __len__(self) -> int:
        n = 1
        for f in self.factors:
            n *= len(f)
        return n

    def index(self, tup: Sequence[Multisegment]) -> int:
        i = 0
        for f, a in zip(self.factors, tup, strict=True):
            i = i * len(f) + f.index(a)
        return i


def build_levi_space(blocks: Sequence[InfinitesimalParameter],
                     max_points: int = DEFAULT_MAX_POINTS) -> LeviSpace:
    return LeviSpace(tuple(build_orbit_space(b, max_points) for b in blocks))


def _check_blocks(lam: InfinitesimalParameter,
                  blocks: Sequence[InfinitesimalParameter]) -> None:
    total = InfinitesimalParameter()
    for b in blocks:
        total = total + b
    if total != lam:
        raise SupportMismatch("Levi blocks do not add up to lambda")


def restrict_orbit(lam: InfinitesimalParameter,
                   blocks: Sequence[InfinitesimalParameter],
                   C: Multisegment,
                   max_points: int = DEFAULT_MAX_POINTS
                   ) -> list[tuple[Multisegment, ...]]:
    """Orbits of V_{lambda_M} inside ``C``: the tuples whose concatenation is ``C``."""
    _check_blocks(lam, blocks)
    if support(C) != lam:
        raise SupportMismatch(f"{C} is not supported on {lam}")
    levi = build_levi_space(blocks, max_points)
    return [t for t in levi.orbits if concat(*t) == C]


def dual_orbit_of_arthur(psi: ArthurParameter) -> Multisegment:
    """Orbit of y_psi in the dual variety, written on the negated grading."""
    return phi_of(psi_hat(psi)).negate()
