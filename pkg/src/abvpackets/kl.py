"""Kazhdan-Lusztig polynomials of symmetric groups and the multiplicity
matrices of a Vogan variety.

Permutations are tuples in one-line notation on ``1..N``.  Orbits are sent
to permutations through the Zelevinsky embedding: a point ``x`` of one chain
becomes the block matrix with identities on the anti-diagonal and the maps
``x_i`` just above it.  Its north-west rank function is that of a unique
permutation ``w``; reversing values (``w0 * w``) and taking the longest
element of the double coset gives ``encode``.  The stalk of the IC sheaf of
the closure of ``C_j`` at ``C_i`` is then ``P_{encode(C_i), encode(C_j)}``.
"""

from __future__ import annotations

import itertools
import math
import sys
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from . import linalg
from .errors import (CorruptEntry, LengthMismatch, SupportMismatch,
                     VersionMismatch)
from .geometry import (DEFAULT_MAX_POINTS, LeviSpace, OrbitSpace,
                       build_orbit_space, graded_point)
from .multisegment import (InfinitesimalParameter, LineId, Multisegment,
                           Segment, concat, support)

Perm = tuple[int, ...]
Poly = tuple[int, ...]  # coefficients in q, lowest first, no trailing zeros

CACHE_HEADER = "KLCACHE 1"
CACHE_FILENAME = "klcache.txt"

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


# -- permutations --

def check_perm(w: Sequence[int]) -> Perm:
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def bruhat_leq(x: Perm, w: Perm) -> bool:
    """Rank-matrix criterion: for every prefix and threshold, ``x`` has no
    more large values than ``w``."""
    if len(x) != len(w):
        raise LengthMismatch(f"S_{len(x)} vs S_{len(w)}")
    n = len(x)
    cx = [0] * (n + 2)
    cw = [0] * (n + 2)
    for i in range(n - 1):
        for t in range(1, x[i] + 1):
            cx[t] += 1
        for t in range(1, w[i] + 1):
            cw[t] += 1
        # cx[t] = #{k <= i : x(k) >= t}
        for t in range(2, n + 1):
            if cx[t] > cw[t]:
                return False
    return True


def _swap_pos(w: Perm, i: int) -> Perm:
    w = list(w)
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def _swap_val(w: Perm, j: int) -> Perm:
    # left multiplication by s_j: exchange the values j and j+1
    return tuple(j + 1 if v == j else j if v == j + 1 else v for v in w)


def right_descents(w: Perm) -> list[int]:
    return [i for i in range(len(w) - 1) if w[i] > w[i + 1]]


def left_descents(w: Perm) -> list[int]:
    pos = {v: i for i, v in enumerate(w)}
    return [j for j in range(1, len(w)) if pos[j] > pos[j + 1]]


def covers_up(z: Perm) -> list[Perm]:
    """Elements covering ``z`` in Bruhat order."""
    n = len(z)
    out = []
    for i in range(n):
        hi = n + 1
        for j in range(i + 1, n):
            if z[i] < z[j] < hi:
                hi = z[j]
                y = list(z)
                y[i], y[j] = y[j], y[i]
                out.append(tuple(y))
    return out


def bruhat_interval(x: Perm, w: Perm) -> list[Perm]:
    if not bruhat_leq(x, w):
        return []
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for z in frontier:
            for y in covers_up(z):
                if y not in seen and bruhat_leq(y, w):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda p: (length(p), p))


# -- polynomial helpers --

def _trim(p: list[int]) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _add(p: Poly, q: Poly, shift: int = 0, scale: int = 1) -> Poly:
    out = list(p) + [0] * max(0, len(q) + shift - len(p))
    for i, c in enumerate(q):
        out[i + shift] += scale * c
    return _trim(out)


def poly_at_one(p: Poly) -> int:
    return sum(p)


def poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c:
            terms.append(str(c) if i == 0 else
                         f"{'' if c == 1 else c}q" + (f"^{i}" if i > 1 else ""))
    return " + ".join(terms)


# -- the KL engine --

class KLEngine:
    """Memoized KL recursion.

    The memo is keyed by reduced pairs: ``x`` is first pushed up through every
    left and right descent of ``w`` (which does not change ``P_{x,w}``).
    Insertions take a lock; a second insertion of the same key must agree.
    """

    def __init__(self):
        self._memo: dict[tuple[Perm, Perm], Poly] = {}
        self._lock = threading.Lock()
        self.computed = 0

    def __len__(self) -> int:
        return len(self._memo)

    def table(self) -> dict[tuple[Perm, Perm], Poly]:
        return dict(self._memo)

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self.computed = 0

    @staticmethod
    def reduce(x: Perm, w: Perm) -> Perm:
        rd = right_descents(w)
        ld = left_descents(w)
        changed = True
        while changed:
            changed = False
            for i in rd:
                if x[i] < x[i + 1]:
                    x = _swap_pos(x, i)
                    changed = True
            pos = {v: k for k, v in enumerate(x)}
            for j in ld:
                if pos[j] < pos[j + 1]:
                    x = _swap_val(x, j)
                    pos = {v: k for k, v in enumerate(x)}
                    changed = True
        return x

    def poly(self, x: Sequence[int], w: Sequence[int]) -> Poly:
        x, w = tuple(x), tuple(w)
        if len(x) != len(w):
            raise LengthMismatch(f"S_{len(x)} vs S_{len(w)}")
        if not bruhat_leq(x, w):
            return ()
        return self._poly(x, w)

    def _poly(self, x: Perm, w: Perm) -> Poly:
        # caller guarantees x <= w
        x = self.reduce(x, w)
        if x == w:
            return (1,)
        key = (x, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        i = right_descents(w)[0]
        v = _swap_pos(w, i)
        xs = _swap_pos(x, i)  # xs < x after reduction
        lw = length(w)
        p = self._poly(xs, v) if bruhat_leq(xs, v) else ()
        if bruhat_leq(x, v):
            p = _add(p, self._poly(x, v), shift=1)
            for z in bruhat_interval(x, v):
                if z == v or z[i] < z[i + 1]:
                    continue
                d = length(v) - length(z)
                if d % 2 == 0:
                    continue
                pz = self._poly(z, v)
                mu = pz[(d - 1) // 2] if len(pz) > (d - 1) // 2 else 0
                if mu:
                    p = _add(p, self._poly(x, z), shift=(lw - length(z)) // 2, scale=-mu)
        with self._lock:
            prev = self._memo.setdefault(key, p)
            if prev is p:
                self.computed += 1
        assert prev == p, "divergent KL values for one key"
        return prev

    # -- persistence --

    def dumps(self) -> str:
        lines = [CACHE_HEADER]
        for (x, w), p in sorted(self._memo.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            lines.append(f"{len(x)};{_fmt_perm(x)};{_fmt_perm(w)};"
                         + ",".join(str(c) for c in p))
        return "\n".join(lines) + "\n"

    def store(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def loads(self, text: str) -> int:
        table = parse_cache(text)
        with self._lock:
            for k, p in table.items():
                old = self._memo.get(k)
                if old is not None and old != p:
                    raise CorruptEntry(f"cache entry {k} disagrees with a computed value")
            self._memo.update(table)
        return len(table)

    def load(self, path: str | Path) -> int:
        return self.loads(Path(path).read_text(encoding="utf-8"))


def _fmt_perm(w: Perm) -> str:
    if len(w) <= 9:
        return "".join(str(v) for v in w)
    return ",".join(str(v) for v in w)


def _parse_perm(text: str, n: int) -> Perm:
    parts = text.split(",") if n > 9 else list(text)
    return check_perm(int(t) for t in parts)


def parse_cache(text: str) -> dict[tuple[Perm, Perm], Poly]:
    """Parse a cache file; any defect rejects the whole file."""
    lines = text.split("\n")
    if not lines or not lines[0].startswith("KLCACHE"):
        raise CorruptEntry("missing KLCACHE header")
    if lines[0] != CACHE_HEADER:
        raise VersionMismatch(f"unsupported cache header {lines[0]!r}")
    if lines[-1] != "":
        raise CorruptEntry("truncated cache file")
    table = {}
    for ln, line in enumerate(lines[1:-1], start=2):
        try:
            n_s, x_s, w_s, c_s = line.split(";")
            n = int(n_s)
            x, w = _parse_perm(x_s, n), _parse_perm(w_s, n)
            if len(x) != n or len(w) != n:
                raise ValueError("length")
            p = tuple(int(c) for c in c_s.split(",")) if c_s else ()
            if (not p or p[0] != 1 or p[-1] == 0 or min(p) < 0
                    or not bruhat_leq(x, w)):
                raise ValueError("not a KL polynomial")
        except ValueError as exc:
            raise CorruptEntry(f"line {ln}: {line!r} ({exc})") from None
        table[(x, w)] = p
    return table


DEFAULT_ENGINE = KLEngine()


def kl_poly(x: Sequence[int], w: Sequence[int], engine: KLEngine | None = None) -> Poly:
    return (DEFAULT_ENGINE if engine is None else engine).poly(x, w)


# -- encoding orbits as permutations --

def _nw_permutation(z: linalg.Matrix) -> Perm:
    n = len(z)
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            r[p][q] = linalg.rank([row[:q] for row in z[:p]])
    w = [0] * n
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if r[p][q] - r[p - 1][q] - r[p][q - 1] + r[p - 1][q - 1] == 1:
                w[p - 1] = q
    return check_perm(w)


def longest_in_double_coset(w: Perm, pos_blocks: Sequence[int],
                            val_blocks: Sequence[int]) -> Perm:
    """Longest element of ``S_val * w * S_pos`` for Young subgroups given by
    block compositions of values and positions."""
    def same_block(blocks, i):
        # are i and i+1 (0-based) in one block?
        acc = 0
        for b in blocks:
            if acc <= i and i + 1 < acc + b:
                return True
            acc += b
        return False

    pos_ok = [same_block(pos_blocks, i) for i in range(len(w) - 1)]
    val_ok = [same_block(val_blocks, j - 1) for j in range(1, len(w))]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if pos_ok[i] and w[i] < w[i + 1]:
                w = _swap_pos(w, i)
                changed = True
        pos = {v: k for k, v in enumerate(w)}
        for j in range(1, len(w)):
            if val_ok[j - 1] and pos[j] < pos[j + 1]:
                w = _swap_val(w, j)
                pos = {v: k for k, v in enumerate(w)}
                changed = True
    return w


def zelevinsky_matrix(alpha: Multisegment, chain_idx: int) -> linalg.Matrix:
    pt = graded_point(alpha)
    ch = pt.chains[chain_idx]
    e = ch.mults
    k = len(e)
    n = sum(e)
    col_off = list(itertools.accumulate((0,) + e[:-1]))
    # row blocks run k..1 from the top
    row_off = {}
    acc = 0
    for i in reversed(range(k)):
        row_off[i] = acc
        acc += e[i]
    z = [[0] * n for _ in range(n)]
    for i in range(k):
        for t in range(e[i]):
            z[row_off[i] + t][col_off[i] + t] = 1
        if i + 1 < k:
            x = pt.maps[(chain_idx, i)]
            for r in range(e[i + 1]):
                for c in range(e[i]):
                    z[row_off[i + 1] + r][col_off[i] + c] = x[r][c]
    return linalg.as_matrix(z)


@lru_cache(maxsize=None)
def encode(lam: InfinitesimalParameter, alpha: Multisegment) -> Perm:
    """Permutation attached to the orbit of ``alpha``; chains are placed as
    consecutive diagonal blocks."""
    if support(alpha) != lam:
        raise SupportMismatch(f"{alpha} is not supported on {lam}")
    chains = lam.chains()
    out: list[int] = []
    shift = 0
    for ci, ch in enumerate(chains):
        w = _nw_permutation(zelevinsky_matrix(alpha, ci))
        n = len(w)
        w = tuple(n + 1 - v for v in w)
        blocks = tuple(reversed(ch.mults))
        w = longest_in_double_coset(w, blocks, blocks)
        out += [v + shift for v in w]
        shift += n
    return tuple(out)


def coset_pattern(lam: InfinitesimalParameter, alpha: Multisegment) -> list[list[list[int]]]:
    """Per chain, the block-count matrix identifying the double coset."""
    out = []
    w = encode(lam, alpha)
    shift = 0
    for ch in lam.chains():
        blocks = list(reversed(ch.mults))
        n = sum(blocks)
        piece = [v - shift for v in w[shift:shift + n]]
        bounds = list(itertools.accumulate([0] + blocks))
        blk = lambda i: next(b for b in range(len(blocks)) if bounds[b] <= i < bounds[b + 1])
        mat = [[0] * len(blocks) for _ in blocks]
        for p, v in enumerate(piece):
            mat[blk(p)][blk(v - 1)] += 1
        out.append(mat)
        shift += n
    return out


# -- multiplicity matrices --

@dataclass(frozen=True)
class MultiplicityMatrices:
    m: linalg.Matrix
    c: linalg.Matrix


def _c_from_codes(codes: Sequence[Perm], engine: KLEngine) -> linalg.Matrix:
    return tuple(tuple(poly_at_one(engine.poly(x, w)) for w in codes) for x in codes)


def m_matrix(lam: InfinitesimalParameter, max_points: int = DEFAULT_MAX_POINTS,
             engine: KLEngine | None = None) -> MultiplicityMatrices:
    """``c[i][j]`` is the stalk Euler characteristic of the (shifted) IC sheaf
    of ``C_j`` at ``C_i``; ``m`` is its transpose."""
    space = build_orbit_space(lam, max_points)
    return space_matrices(space, engine)


def space_matrices(space: OrbitSpace, engine: KLEngine | None = None) -> MultiplicityMatrices:
    engine = DEFAULT_ENGINE if engine is None else engine
    codes = [encode(space.lam, a) for a in space.orbits]
    c = _c_from_codes(codes, engine)
    return MultiplicityMatrices(linalg.transpose(c), c)


def levi_matrices(levi: LeviSpace, engine: KLEngine | None = None) -> MultiplicityMatrices:
    """Tensor product of the factor matrices, in the Levi tuple order."""
    m = c = linalg.identity(1)
    for f in levi.factors:
        mm = space_matrices(f, engine)
        m, c = linalg.kron(m, mm.m), linalg.kron(c, mm.c)
    return MultiplicityMatrices(m, c)


def _relabel(alpha: Multisegment, tag: int) -> Multisegment:
    return Multisegment(tuple(
        Segment(LineId(f"{s.line.label}.{tag}", s.line.base_degree), s.a, s.b)
        for s in alpha))


def levi_matrices_direct(levi: LeviSpace, engine: KLEngine | None = None
                         ) -> MultiplicityMatrices:
    """The Levi matrices computed on one orbit space: each factor is moved
    to its own line and the disjoint union is handled by a single KL call per
    entry, then reindexed into the Levi tuple order."""
    parts = [InfinitesimalParameter.from_pairs(
        (LineId(f"{ln.label}.{t}", ln.base_degree), e)
        for ln, e in f.lam.counter().elements())
        for t, f in enumerate(levi.factors)]
    lam = InfinitesimalParameter()
    for p in parts:
        lam = lam + p
    space = build_orbit_space(lam, lam.npoints)
    mm = space_matrices(space, engine)
    order = [space.index(concat(*(_relabel(a, t) for t, a in enumerate(tup))))
             for tup in levi.orbits]
    return MultiplicityMatrices(linalg.permute(mm.m, order), linalg.permute(mm.c, order))


def c_stalk_oracle_two_block(p: int, q: int, k: int, s: int) -> int:
    """Stalk Euler characteristic of the IC sheaf of the rank <= k locus of
    p x q matrices at a rank-s point (small resolution of the determinantal
    variety)."""
    r = min(p, q)
    if min(p, q, k, s) < 0 or not s <= k <= r:
        raise ValueError(f"need 0 <= s <= k <= min(p, q); got p={p} q={q} k={k} s={s}")
    return math.comb(r - s, k - s)
