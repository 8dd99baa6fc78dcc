"""Multisegments, Vogan varieties, KL multiplicity matrices and endoscopic
lifting for p-adic GL_n, with a checker for A-packets = ABV-packets."""

from .arthur import (ArthurComponent, ArthurParameter, infinitesimal, levi_of,
                     parse_arthur, phi_of, pi_of, psi_hat)
from .geometry import (OrbitSpace, build_orbit_space, closure_leq, dim_V,
                       dual_orbit_of_arthur, orbit_dim, restrict_orbit,
                       stabilizer_dim_bruteforce)
from .kl import bruhat_leq, encode, kl_poly, m_matrix
from .ktheory import (BasisTag, Endoscopy, KVector, abv_packet, change_basis,
                      endoscopy_square_check, eta, eta_evs, evs_rank, pairing)
from .multisegment import (HalfInt, InfinitesimalParameter, LineId,
                           Multisegment, Segment, canonicalize, concat,
                           linked, parse_lambda, parse_multisegment, precedes,
                           support)

__version__ = "0.1.0"

__all__ = [
    "ArthurComponent",
    "ArthurParameter",
    "infinitesimal",
    "levi_of",
    "parse_arthur",
    "phi_of",
    "pi_of",
    "psi_hat",
    "OrbitSpace",
    "build_orbit_space",
    "closure_leq",
    "dim_V",
    "dual_orbit_of_arthur",
    "orbit_dim",
    "restrict_orbit",
    "stabilizer_dim_bruteforce",
    "bruhat_leq",
    "encode",
    "kl_poly",
    "m_matrix",
    "BasisTag",
    "Endoscopy",
    "KVector",
    "abv_packet",
    "change_basis",
    "endoscopy_square_check",
    "eta",
    "eta_evs",
    "evs_rank",
    "pairing",
    "HalfInt",
    "InfinitesimalParameter",
    "LineId",
    "Multisegment",
    "Segment",
    "canonicalize",
    "concat",
    "linked",
    "parse_lambda",
    "parse_multisegment",
    "precedes",
    "support",
]
