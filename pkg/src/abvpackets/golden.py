"""Worked GL2/GL4 examples, frozen as golden data, and their recomputation."""

from __future__ import annotations

import json

from . import linalg
from .arthur import parse_arthur
from .geometry import build_orbit_space
from .kl import KLEngine, levi_matrices, levi_matrices_direct, m_matrix
from .ktheory import endoscopy_for
from .multisegment import parse_lambda

GL4_PSI = "(a=2,b=1)+(a=1,b=2)"

GOLDEN = {
    "GL2 Steinberg": {
        "orbits": ["[1/2]+[-1/2]", "[-1/2,1/2]"],
        "dims": [0, 1],
        "m": [[1, 0], [1, 1]],
        "c": [[1, 1], [0, 1]],
    },
    "GL4": {
        "orbits": ["[1/2]+[1/2]+[-1/2]+[-1/2]", "[-1/2,1/2]+[1/2]+[-1/2]",
                   "[-1/2,1/2]+[-1/2,1/2]"],
        "dims": [0, 3, 4],
        "m": [[1, 0, 0], [2, 1, 0], [1, 1, 1]],
        "c": [[1, 2, 1], [0, 1, 1], [0, 0, 1]],
    },
    "GL2xGL2 Levi": {
        "c_M": [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]],
        "c_M_inv": [[1, -1, -1, 1], [0, 1, 0, -1], [0, 0, 1, -1], [0, 0, 0, 1]],
        "m_M_inv": [[1, 0, 0, 0], [-1, 1, 0, 0], [-1, 0, 1, 0], [1, -1, -1, 1]],
    },
    "GL4 endoscopic lift": {
        "eps_star_sts": [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]],
        "eps_star_ssim": [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]],
        "lift_sim": [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
        # Lift[pi_00], Lift[pi_01], Lift[pi_10], Lift[pi_11] as G-orbit indices
        "lift_targets": [0, 1, 1, 2],
    },
}


def _rows(a) -> list[list[int]]:
    return [list(r) for r in a]


def compute(engine: KLEngine | None = None) -> dict:
    out = {}
    for name, lit in (("GL2 Steinberg", "[1/2]+[-1/2]"),
                      ("GL4", "[1/2]+[1/2]+[-1/2]+[-1/2]")):
        lam = parse_lambda(lit)
        space = build_orbit_space(lam)
        mm = m_matrix(lam, engine=engine)
        out[name] = {"orbits": [str(a) for a in space.orbits], "dims": list(space.dims),
                     "m": _rows(mm.m), "c": _rows(mm.c)}

    endo = endoscopy_for(parse_arthur(GL4_PSI), engine=engine)
    tensor = levi_matrices(endo.levi, engine)
    direct = levi_matrices_direct(endo.levi, engine)
    c_M = _rows(tensor.c) if tensor.c == direct.c else None
    out["GL2xGL2 Levi"] = {"c_M": c_M, "c_M_inv": _rows(linalg.inverse(tensor.c)),
                           "m_M_inv": _rows(linalg.inverse(tensor.m))}

    lift = endo.lift_sim()
    targets = []
    for j in range(len(endo.levi)):
        col = [row[j] for row in lift]
        targets.append(col.index(1) if sorted(col) == [0] * (len(col) - 1) + [1] else None)
    out["GL4 endoscopic lift"] = {
        "eps_star_sts": _rows(endo.eps_star_std()),
        "eps_star_ssim": _rows(endo.eps_star_simple()),
        "lift_sim": _rows(lift),
        "lift_targets": targets,
    }
    return out


def compare(engine: KLEngine | None = None) -> list[tuple[str, bool]]:
    got = compute(engine)
    return [(name, json.dumps(got[name], sort_keys=True) == json.dumps(want, sort_keys=True))
            for name, want in GOLDEN.items()]
