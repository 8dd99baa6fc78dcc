"""Grothendieck groups on both sides, restriction to a Levi, endoscopic
lifting, and the packet computations built from them.

Coordinates are integer vectors in the orbit order of the relevant space.
On the sheaf side the simple basis is always the shifted one,
``s_j = (-1)^{dim C_j} [IC(1_{C_j})]``; in the bases (irreducible, shifted
IC) the pairing is the plain dot product.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .arthur import ArthurParameter, infinitesimal, levi_of, pi_of
from .errors import (InternalInconsistency, LambdaMismatch, SideMismatch,
                     SupportMismatch)
from .geometry import (DEFAULT_MAX_POINTS, LeviSpace, OrbitSpace,
                       _check_blocks, build_levi_space, build_orbit_space,
                       restrict_orbit)
from .kl import KLEngine, MultiplicityMatrices, levi_matrices, space_matrices
from .multisegment import InfinitesimalParameter, Multisegment, concat, support

SCHEMA_VERSION = 1


class BasisTag(enum.Enum):
    IrredRep = "irr"
    StdRep = "std"
    ICSheaf = "ic"       # shifted simple perverse sheaves
    StdSheaf = "sts"

    @property
    def side(self) -> str:
        return "rep" if self in (BasisTag.IrredRep, BasisTag.StdRep) else "sheaf"


@dataclass(frozen=True)
class KVector:
    lam: InfinitesimalParameter
    tag: BasisTag
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))


@dataclass(frozen=True)
class KMatrix:
    source: tuple[str, BasisTag]
    target: tuple[str, BasisTag]
    matrix: linalg.Matrix


def unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


class Block:
    """Orbit space of one lambda together with its multiplicity matrices."""

    def __init__(self, lam: InfinitesimalParameter,
                 max_points: int = DEFAULT_MAX_POINTS,
                 engine: KLEngine | None = None):
        self.lam = lam
        self.space: OrbitSpace = build_orbit_space(lam, max_points)
        mm: MultiplicityMatrices = space_matrices(self.space, engine)
        self.m, self.c = mm.m, mm.c
        self.m_inv = linalg.inverse(self.m)
        self.c_inv = linalg.inverse(self.c)

    def __len__(self) -> int:
        return len(self.space)

    def vector(self, tag: BasisTag, coords: Sequence[int]) -> KVector:
        if len(coords) != len(self):
            raise ValueError("coordinate length does not match the orbit count")
        return KVector(self.lam, tag, tuple(coords))

    def basis(self, tag: BasisTag, alpha: Multisegment) -> KVector:
        return self.vector(tag, unit(len(self), self.space.index(alpha)))


# -- pairing and basis changes --

def _to_irr(v: KVector, blk: Block) -> tuple[int, ...]:
    if v.tag is BasisTag.IrredRep:
        return v.coords
    if v.tag is BasisTag.StdRep:
        return linalg.matvec(blk.m, v.coords)
    raise SideMismatch(f"{v.tag} is not a representation basis")


def _to_shifted_ic(v: KVector, blk: Block) -> tuple[int, ...]:
    if v.tag is BasisTag.ICSheaf:
        return v.coords
    if v.tag is BasisTag.StdSheaf:
        return linalg.matvec(blk.c_inv, v.coords)
    raise SideMismatch(f"{v.tag} is not a sheaf basis")


def change_basis(v: KVector, target: BasisTag, blk: Block | None = None) -> KVector:
    if v.tag.side != target.side:
        raise SideMismatch(f"cannot change {v.tag} into {target}")
    if v.tag is target:
        return v
    blk = Block(v.lam) if blk is None else blk
    if target is BasisTag.IrredRep:
        return KVector(v.lam, target, _to_irr(v, blk))
    if target is BasisTag.StdRep:
        return KVector(v.lam, target, linalg.matvec(blk.m_inv, v.coords))
    if target is BasisTag.ICSheaf:
        return KVector(v.lam, target, _to_shifted_ic(v, blk))
    return KVector(v.lam, target, linalg.matvec(blk.c, v.coords))


def pairing(u: KVector, v: KVector, blk: Block | None = None) -> int:
    if u.lam != v.lam:
        raise LambdaMismatch(f"{u.lam} vs {v.lam}")
    if u.tag.side != "rep" or v.tag.side != "sheaf":
        raise SideMismatch("pairing takes a representation and a sheaf vector")
    blk = Block(u.lam) if blk is None else blk
    return linalg.dot(_to_irr(u, blk), _to_shifted_ic(v, blk))


def unshifted_ic(blk: Block, alpha: Multisegment) -> KVector:
    """[IC(1_C)] written in the shifted simple basis."""
    i = blk.space.index(alpha)
    sign = -1 if blk.space.dims[i] % 2 else 1
    return blk.vector(BasisTag.ICSheaf, tuple(sign * x for x in unit(len(blk), i)))


# -- Levi restriction and lifting --

class Endoscopy:
    """All matrices attached to ``lambda`` and a Levi given by its blocks.

    Levi-side data are built from the factor matrices (tensor law);
    G-side data from the KL matrices of ``lambda`` itself.
    """

    def __init__(self, lam: InfinitesimalParameter,
                 blocks: Sequence[InfinitesimalParameter],
                 max_points: int = DEFAULT_MAX_POINTS,
                 engine: KLEngine | None = None):
        _check_blocks(lam, blocks)
        self.lam = lam
        self.blocks = tuple(blocks)
        self.G = Block(lam, max_points, engine)
        self.levi: LeviSpace = build_levi_space(blocks, max_points)
        mm = levi_matrices(self.levi, engine)
        self.m_M, self.c_M = mm.m, mm.c
        self.m_M_inv = linalg.inverse(self.m_M)
        self.c_M_inv = linalg.inverse(self.c_M)
        self._max_points = max_points

    def eps_star_std(self) -> linalg.Matrix:
        """Restriction of standard sheaves: column C has 1s at the Levi orbits in C."""
        rows, cols = len(self.levi), len(self.G)
        out = [[0] * cols for _ in range(rows)]
        for j, C in enumerate(self.G.space.orbits):
            for tup in restrict_orbit(self.lam, self.blocks, C, self._max_points):
                out[self.levi.index(tup)][j] = 1
        return linalg.as_matrix(out) if rows else linalg.zeros(0, cols)

    def eps_star_simple(self) -> linalg.Matrix:
        return linalg.matmul(linalg.matmul(self.c_M_inv, self.eps_star_std()), self.G.c)

    def lift_std(self) -> linalg.Matrix:
        """Parabolic induction on standard modules: concatenate multisegments."""
        rows, cols = len(self.G), len(self.levi)
        out = [[0] * cols for _ in range(rows)]
        for j, tup in enumerate(self.levi.orbits):
            out[self.G.space.index(concat(*tup))][j] = 1
        return linalg.as_matrix(out)

    def lift_sim(self) -> linalg.Matrix:
        """Adjoint of restriction in the simple bases:
        ``m_lambda . eps_std^T . m_M^{-1}``."""
        return linalg.matmul(linalg.matmul(self.G.m, linalg.transpose(self.eps_star_std())),
                             self.m_M_inv)

    def lift_sim_by_induction(self) -> linalg.Matrix:
        """``lift_std`` conjugated into the irreducible bases."""
        return linalg.matmul(linalg.matmul(self.G.m, self.lift_std()), self.m_M_inv)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "lambda": str(self.lam),
            "levi": [str(b) for b in self.blocks],
            "G_orbits": [str(a) for a in self.G.space.orbits],
            "M_orbits": [[str(a) for a in t] for t in self.levi.orbits],
            "eps_star_sts": _rows(self.eps_star_std()),
            "eps_star_ssim": _rows(self.eps_star_simple()),
            "lift_std": _rows(self.lift_std()),
            "lift_sim": _rows(self.lift_sim()),
        }


def _rows(a: linalg.Matrix) -> list[list[int]]:
    return [list(r) for r in a]


def eps_star_std(lam, levi_blocks, **kw) -> linalg.Matrix:
    return Endoscopy(lam, levi_blocks, **kw).eps_star_std()


def eps_star_simple(lam, levi_blocks, **kw) -> linalg.Matrix:
    return Endoscopy(lam, levi_blocks, **kw).eps_star_simple()


def lift_std(lam, levi_blocks, **kw) -> linalg.Matrix:
    return Endoscopy(lam, levi_blocks, **kw).lift_std()


def lift_sim(lam, levi_blocks, **kw) -> linalg.Matrix:
    return Endoscopy(lam, levi_blocks, **kw).lift_sim()


# -- Arthur packets --

def levi_blocks(psi: ArthurParameter) -> list[InfinitesimalParameter]:
    return [infinitesimal(p) for _, p in levi_of(psi)]


def endoscopy_for(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS,
                  engine: KLEngine | None = None) -> Endoscopy:
    return Endoscopy(infinitesimal(psi), levi_blocks(psi), max_points, engine)


def psi_M_tuple(psi: ArthurParameter) -> tuple[Multisegment, ...]:
    return tuple(pi_of(p) for _, p in levi_of(psi))


def eta(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS) -> KVector:
    lam = infinitesimal(psi)
    space = build_orbit_space(lam, max_points)
    return KVector(lam, BasisTag.IrredRep, unit(len(space), space.index(pi_of(psi))))


def eta_evs(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS,
            engine: KLEngine | None = None, endo: Endoscopy | None = None) -> KVector:
    """The ABV virtual representation computed through the Levi: the base
    case gives ``[pi_{psi_M}]`` on M, which is then lifted to G."""
    endo = endoscopy_for(psi, max_points, engine) if endo is None else endo
    base = unit(len(endo.levi), endo.levi.index(psi_M_tuple(psi)))
    out = KVector(endo.lam, BasisTag.IrredRep, linalg.matvec(endo.lift_sim(), base))
    expected = eta(psi, max_points)
    if out != expected:
        raise InternalInconsistency(
            f"eta_evs({psi}) = {out.coords} but eta = {expected.coords}")
    return out


def d_psi(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS) -> int:
    space = build_orbit_space(infinitesimal(psi), max_points)
    return space.dims[space.index(pi_of(psi))]


def evs_rank(psi: ArthurParameter, C: Multisegment,
             max_points: int = DEFAULT_MAX_POINTS,
             engine: KLEngine | None = None, endo: Endoscopy | None = None) -> int:
    lam = infinitesimal(psi)
    if support(C) != lam:
        raise SupportMismatch(f"{C} is not supported on {lam}")
    endo = endoscopy_for(psi, max_points, engine) if endo is None else endo
    ev = eta_evs(psi, max_points, engine, endo)
    sign = -1 if d_psi(psi, max_points) % 2 else 1
    return sign * pairing(ev, unshifted_ic(endo.G, C), endo.G)


def abv_packet(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS,
               engine: KLEngine | None = None) -> list[Multisegment]:
    endo = endoscopy_for(psi, max_points, engine)
    packet = [C for C in endo.G.space.orbits
              if evs_rank(psi, C, max_points, engine, endo) != 0]
    if packet != [pi_of(psi)]:
        raise InternalInconsistency(f"ABV packet of {psi} is {packet}")
    return packet


# -- the endoscopy square --

@dataclass(frozen=True)
class SquareRow:
    F: str
    basis: str
    top: int
    left: int
    bottom: int
    right: int
    passed: bool

    def to_json(self) -> dict:
        return {"F": self.F, "basis": self.basis, "top": self.top, "left": self.left,
                "bottom": self.bottom, "right": self.right, "pass": self.passed}


@dataclass(frozen=True)
class SquareReport:
    psi: str
    lam: str
    rows: tuple[SquareRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {"psi": self.psi, "lambda": self.lam,
                "square": [r.to_json() for r in self.rows], "schema": SCHEMA_VERSION}


def endoscopy_square_check(psi: ArthurParameter, max_points: int = DEFAULT_MAX_POINTS,
                           engine: KLEngine | None = None) -> SquareReport:
    """Check the four identities of the endoscopy square on every sheaf basis
    vector.  Values reported per F:

    top     <eta^Evs_psi, F>            (must equal <eta_psi, F>)
    left    <eta^Evs_{psi_M}, eps^* F>  (restriction route, Levi-side KL)
    bottom  <eta_{psi_M}, eps^* F>      (Levi base case)
    right   <Ind(eta_{psi_M}), F>       (induction route, G-side KL)
    """
    endo = endoscopy_for(psi, max_points, engine)
    G = endo.G
    n_G, n_M = len(G), len(endo.levi)
    ev = eta_evs(psi, max_points, engine, endo).coords
    et = eta(psi, max_points).coords

    # Levi base case, factor by factor: each irreducible factor is its own Levi
    ev_M = (1,)
    for _, p in levi_of(psi):
        ev_M = tuple(x * y for x in ev_M
                     for y in eta_evs(p, max_points, engine).coords)
    et_M = unit(n_M, endo.levi.index(psi_M_tuple(psi)))

    eps_sim = endo.eps_star_simple()
    induced = linalg.matvec(endo.lift_sim_by_induction(), et_M)

    rows = []
    for basis, tag in (("IC", BasisTag.ICSheaf), ("std", BasisTag.StdSheaf)):
        for j, C in enumerate(G.space.orbits):
            F = KVector(G.lam, tag, unit(n_G, j))
            f = _to_shifted_ic(F, G)
            rf = linalg.matvec(eps_sim, f)
            top = linalg.dot(ev, f)
            left = linalg.dot(ev_M, rf)
            bottom = linalg.dot(et_M, rf)
            right = linalg.dot(induced, f)
            ok = (top == linalg.dot(et, f) and top == left
                  and left == bottom and bottom == right)
            rows.append(SquareRow(str(C), basis, top, left, bottom, right, ok))
    return SquareReport(str(psi), str(G.lam), tuple(rows))
