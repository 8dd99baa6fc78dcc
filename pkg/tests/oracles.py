"""Independent reference implementations used only by the tests.

Nothing here calls into the recursion or the closure test under scrutiny;
each oracle is a different algorithm for the same quantity.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import permutations

from abvpackets.arthur import ArthurParameter
from abvpackets.multisegment import HalfInt, Multisegment, Segment


def inversions(w) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def bruhat_up_bfs(x) -> set[tuple[int, ...]]:
    """Everything reachable from x by transpositions that raise the length."""
    x = tuple(x)
    seen, todo = {x}, deque([x])
    while todo:
        u = todo.popleft()
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                if u[i] < u[j]:
                    v = list(u)
                    v[i], v[j] = v[j], v[i]
                    v = tuple(v)
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
    return seen


# -- KL polynomials through R-polynomials --

def _padd(p, q, shift=0, scale=1):
    out = list(p) + [0] * max(0, len(q) + shift - len(p))
    for i, c in enumerate(q):
        out[i + shift] += scale * c
    while out and out[-1] == 0:
        out.pop()
    return out


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


class ROracle:
    """R_{x,w}: R_{x,w} = R_{xs,ws} if xs < x, else (q-1)R_{x,ws} + q R_{xs,ws}."""

    def __init__(self, n: int):
        self.n = n
        self.memo: dict = {}

    def r(self, x, w):
        key = (x, w)
        if key in self.memo:
            return self.memo[key]
        if x == w:
            out = [1]
        elif inversions(x) >= inversions(w):
            out = []
        else:
            s = next(i for i in range(self.n - 1) if w[i] > w[i + 1])
            ws = w[:s] + (w[s + 1], w[s]) + w[s + 2:]
            xs = x[:s] + (x[s + 1], x[s]) + x[s + 2:]
            if x[s] > x[s + 1]:
                out = self.r(xs, ws)
            else:
                out = _padd(_padd([], self.r(x, ws), 1), self.r(x, ws), 0, -1)
                out = _padd(out, self.r(xs, ws), 1)
        self.memo[key] = out
        return out


def kl_column(w) -> dict[tuple[int, ...], list[int]]:
    """All P_{x,w} from q^{l(w)-l(x)} P(1/q) - P(q) = sum_{x<y<=w} R_{x,y} P_{y,w}."""
    w = tuple(w)
    n = len(w)
    ro = ROracle(n)
    below = sorted((x for x in permutations(range(1, n + 1)) if ro.r(x, w)),
                   key=inversions, reverse=True)
    lw = inversions(w)
    P = {}
    for x in below:
        if x == w:
            P[x] = [1]
            continue
        rhs = []
        for y, py in P.items():
            if y != x and ro.r(x, y):
                rhs = _padd(rhs, _pmul(ro.r(x, y), py))
        d = lw - inversions(x)
        P[x] = [-c for c in rhs[:(d - 1) // 2 + 1]]
        while P[x] and P[x][-1] == 0:
            P[x].pop()
    return P


# -- Zelevinsky degenerations --

def _linked_pairs(segs):
    for i in range(len(segs)):
        for j in range(len(segs)):
            s, t = segs[i], segs[j]
            if i == j or s.line != t.line or (t.a.twice - s.a.twice) % 2:
                continue
            if s.a < t.a and s.b < t.b and t.a.twice <= s.b.twice + 2:
                yield i, j


def elementary_up(alpha: Multisegment) -> set[Multisegment]:
    """Replace a linked pair by its union and intersection."""
    segs = list(alpha.segments)
    out = set()
    for i, j in _linked_pairs(segs):
        s, t = segs[i], segs[j]
        rest = [u for k, u in enumerate(segs) if k not in (i, j)]
        rest.append(Segment(s.line, s.a, t.b))
        if t.a <= s.b:
            rest.append(Segment(s.line, t.a, s.b))
        out.add(Multisegment(tuple(rest)))
    return out


def degenerates_to(alpha: Multisegment) -> set[Multisegment]:
    """Every beta whose orbit closure contains the orbit of alpha."""
    seen, todo = {alpha}, deque([alpha])
    while todo:
        for b in elementary_up(todo.popleft()):
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


# -- the pair (x_psi, y_psi) --

def _nullity(rows, ncols):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [u - f * v for u, v in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return ncols - rank


def arthur_pair_orbit_dim(psi: ArthurParameter) -> tuple[int, int]:
    """(dim of the H-orbit of (x_psi, y_psi), dim V) from Sym^{a-1} (x) Sym^{b-1}.

    x raises the Deligne weight, y lowers the Arthur weight; both commute.
    """
    basis = []
    for c in psi:
        for i in range(c.a):
            for j in range(c.b):
                basis.append((c, i, j, (c.a - 1 - 2 * i) + (c.b - 1 - 2 * j)))
    pos = {(id(c), i, j): k for k, (c, i, j, _) in enumerate(basis)}
    n = len(basis)
    x = [[0] * n for _ in range(n)]
    y = [[0] * n for _ in range(n)]
    for k, (c, i, j, _) in enumerate(basis):
        if i > 0:
            x[pos[(id(c), i - 1, j)]][k] = 1
        if j + 1 < c.b:
            y[pos[(id(c), i, j + 1)]][k] = 1
    unknowns = [(r, s) for r in range(n) for s in range(n) if basis[r][3] == basis[s][3]]
    col = {rs: k for k, rs in enumerate(unknowns)}
    rows = []
    for z in (x, y):
        for r in range(n):
            for s in range(n):
                row = [0] * len(unknowns)
                for k in range(n):
                    if z[k][s] and (r, k) in col:
                        row[col[(r, k)]] += z[k][s]
                    if z[r][k] and (k, s) in col:
                        row[col[(k, s)]] -= z[r][k]
                if any(row):
                    rows.append(row)
    weights = {}
    for *_, t in basis:
        weights[t] = weights.get(t, 0) + 1
    dim_h = sum(m * m for m in weights.values())
    dim_v = sum(m * weights.get(t + 2, 0) for t, m in weights.items())
    return dim_h - _nullity(rows, len(unknowns)), dim_v


def half(v) -> HalfInt:
    return HalfInt.of(v)
