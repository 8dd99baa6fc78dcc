"""Command-line front end.

    abvpackets orbits --lambda "[1/2]+[1/2]+[-1/2]+[-1/2]"
    abvpackets matrices --lambda "[1/2]+[-1/2]" --format latex
    abvpackets lift "(a=2,b=1)+(a=1,b=2)" [--levi 2,2]
    abvpackets packet "(a=2,b=1)+(a=1,b=2)" --format json
    abvpackets check-square "(a=3,b=1)+(a=1,b=2)"
    abvpackets selftest

Exit status: 0 success, 1 computation refused or inconsistent, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import golden, linalg
from .arthur import ArthurParameter, infinitesimal, levi_of, parse_arthur, pi_of
from .errors import AbvError, GuardExceeded, InternalInconsistency, ParseError
from .geometry import DEFAULT_MAX_POINTS, build_orbit_space
from .kl import CACHE_FILENAME, DEFAULT_ENGINE, KLEngine, m_matrix
from .ktheory import (Endoscopy, abv_packet, d_psi, endoscopy_square_check)
from .multisegment import InfinitesimalParameter, parse_lambda

COMMANDS = ("orbits", "matrices", "lift", "packet", "check-square", "selftest")


@dataclass
class Command:
    name: str
    lam: InfinitesimalParameter | None = None
    psi: ArthurParameter | None = None
    levi: tuple[int, ...] | None = None
    fmt: str = "table"
    cache_dir: Path | None = None
    max_points: int = DEFAULT_MAX_POINTS
    extra: dict = field(default_factory=dict)


def _lambda_arg(text: str) -> InfinitesimalParameter:
    try:
        return parse_lambda(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _psi_arg(text: str) -> ArthurParameter:
    try:
        return parse_arthur(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _levi_arg(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad Levi {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"bad Levi {text!r}")
    return sizes


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


class _Parser(argparse.ArgumentParser):
    # raise instead of exiting so callers decide the exit status
    def error(self, message):
        raise ParseError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "latex"), default="table")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="directory holding the persistent KL cache")
    common.add_argument("--max-points", type=_positive, default=DEFAULT_MAX_POINTS,
                        help="refuse lines carrying more points than this")

    parser = _Parser(prog="abvpackets",
                     description="A-packets and ABV-packets of p-adic GL_n")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("orbits", "matrices"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True,
                       help='infinitesimal parameter as a multisegment, e.g. "[1/2]+[-1/2]"')
    p = sub.add_parser("lift", parents=[common])
    p.add_argument("psi", type=_psi_arg)
    p.add_argument("--levi", type=_levi_arg, default=None,
                   help="group the Levi factors into blocks of these degrees")
    for name in ("packet", "check-square"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("psi", type=_psi_arg)
    sub.add_parser("selftest", parents=[common])
    return parser


def parse_args(argv: Sequence[str]) -> Command:
    ns = build_parser().parse_args(list(argv))
    return Command(name=ns.command, lam=getattr(ns, "lam", None),
                   psi=getattr(ns, "psi", None), levi=getattr(ns, "levi", None),
                   fmt=ns.format, cache_dir=ns.cache_dir, max_points=ns.max_points)


# -- rendering --

def latex_matrix(a: linalg.Matrix | list) -> str:
    body = " \\\\\n".join(" & ".join(str(x) for x in row) for row in a)
    return "\\begin{bmatrix}\n" + body + "\n\\end{bmatrix}"


def table_matrix(a, rows: Sequence[str] | None = None) -> str:
    rows = rows or [""] * len(a)
    width = max([len(str(x)) for r in a for x in r] + [1])
    lw = max([len(r) for r in rows] + [0])
    return "\n".join(f"{lab:<{lw}}  " + " ".join(f"{x:>{width}}" for x in r)
                     for lab, r in zip(rows, a))


def _render(doc: dict, text: str, latex: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return latex if fmt == "latex" else text


def _levi_blocks(psi: ArthurParameter, sizes: tuple[int, ...] | None
                 ) -> list[InfinitesimalParameter]:
    factors = levi_of(psi)
    if sizes is None:
        return [infinitesimal(p) for _, p in factors]
    if sum(sizes) != psi.degree:
        raise ParseError(f"Levi sizes {sizes} do not add up to {psi.degree}")
    blocks, cur, deg = [], InfinitesimalParameter(), 0
    it = iter(sizes)
    target = next(it)
    for m, p in factors:
        cur, deg = cur + infinitesimal(p), deg + m
        if deg == target:
            blocks.append(cur)
            cur, deg = InfinitesimalParameter(), 0
            target = next(it, None)
        elif deg > target:
            raise ParseError(f"Levi sizes {sizes} do not group the components of {psi}")
    return blocks


def do_orbits(cmd: Command) -> str:
    space = build_orbit_space(cmd.lam, cmd.max_points)
    doc = space.to_json()
    lines = [f"lambda = {space.lam}   dim V = {space.dimV}   orbits: {len(space)}",
             f"{'#':>3}  {'dim':>3}  multisegment"]
    lines += [f"{i:>3}  {d:>3}  {a}" for i, (a, d) in enumerate(zip(space.orbits, space.dims))]
    tex = "\\begin{tabular}{rrl}\n" + " \\\\\n".join(
        f"{i} & {d} & ${a}$" for i, (a, d) in enumerate(zip(space.orbits, space.dims))
    ) + "\n\\end{tabular}"
    return _render(doc, "\n".join(lines), tex, cmd.fmt)


def do_matrices(cmd: Command) -> str:
    space = build_orbit_space(cmd.lam, cmd.max_points)
    mm = m_matrix(cmd.lam, cmd.max_points)
    names = [str(a) for a in space.orbits]
    doc = {"schema": 1, "lambda": str(cmd.lam), "orbits": names,
           "m": [list(r) for r in mm.m], "c": [list(r) for r in mm.c]}
    text = "\n".join([f"lambda = {cmd.lam}", "orbits:"]
                     + [f"  C_{i} = {n}" for i, n in enumerate(names)]
                     + ["m =", table_matrix(mm.m), "c =", table_matrix(mm.c)])
    tex = f"m_\\lambda = {latex_matrix(mm.m)}\n\nc_\\lambda = {latex_matrix(mm.c)}"
    return _render(doc, text, tex, cmd.fmt)


def do_lift(cmd: Command) -> str:
    blocks = _levi_blocks(cmd.psi, cmd.levi)
    endo = Endoscopy(infinitesimal(cmd.psi), blocks, cmd.max_points)
    if endo.lift_sim() != endo.lift_sim_by_induction():
        raise InternalInconsistency("restriction and induction routes disagree")
    doc = {"schema": 1, "psi": str(cmd.psi)}
    doc.update({k: v for k, v in endo.to_json().items() if k != "schema"})
    mnames = [" x ".join(str(a) for a in t) for t in endo.levi.orbits]
    gnames = [str(a) for a in endo.G.space.orbits]
    parts = [f"psi = {cmd.psi}", f"Levi blocks: {', '.join(str(b) for b in blocks)}"]
    for key, rows in (("eps_star_sts", mnames), ("eps_star_ssim", mnames),
                      ("lift_std", gnames), ("lift_sim", gnames)):
        parts += [f"{key} =", table_matrix(doc[key], rows)]
    tex = "\n\n".join(f"{k} = {latex_matrix(doc[k])}"
                      for k in ("eps_star_sts", "eps_star_ssim", "lift_std", "lift_sim"))
    return _render(doc, "\n".join(parts), tex, cmd.fmt)


def do_packet(cmd: Command) -> str:
    packet = abv_packet(cmd.psi, cmd.max_points)
    pi = pi_of(cmd.psi)
    doc = {"schema": 1, "psi": str(cmd.psi), "lambda": str(infinitesimal(cmd.psi)),
           "pi_psi": str(pi), "C_psi": str(pi), "d_psi": d_psi(cmd.psi, cmd.max_points),
           "abv_packet": [str(a) for a in packet]}
    text = "\n".join(f"{k:<11} {v}" for k, v in doc.items() if k != "schema")
    tex = ("$\\pi_\\psi = Q(" + str(pi) + ")$, $d(\\psi) = " + str(doc["d_psi"])
           + "$, $\\Pi^{ABV} = \\{" + ", ".join(doc["abv_packet"]) + "\\}$")
    return _render(doc, text, tex, cmd.fmt)


def do_check_square(cmd: Command) -> tuple[str, bool]:
    report = endoscopy_square_check(cmd.psi, cmd.max_points)
    doc = report.to_json()
    hdr = f"{'basis':<5} {'top':>4} {'left':>4} {'bot':>4} {'right':>5}  pass  F"
    lines = [f"psi = {report.psi}   lambda = {report.lam}", hdr]
    lines += [f"{r.basis:<5} {r.top:>4} {r.left:>4} {r.bottom:>4} {r.right:>5}  "
              f"{'ok' if r.passed else 'FAIL':<4}  {r.F}" for r in report.rows]
    lines.append("all identities hold" if report.passed else "SQUARE FAILED")
    tex = "\\begin{tabular}{llrrrr}\n" + " \\\\\n".join(
        f"${r.F}$ & {r.basis} & {r.top} & {r.left} & {r.bottom} & {r.right}"
        for r in report.rows) + "\n\\end{tabular}"
    return _render(doc, "\n".join(lines), tex, cmd.fmt), report.passed


def do_selftest(cmd: Command) -> tuple[str, bool]:
    results = golden.compare()
    matched = sum(ok for _, ok in results)
    doc = {"schema": 1, "matched": matched, "total": len(results),
           "examples": [{"name": n, "match": ok} for n, ok in results]}
    lines = [f"{'ok  ' if ok else 'DIFF'} {n}" for n, ok in results]
    lines.append(f"{matched}/{len(results)} examples match")
    text = "\n".join(lines)
    return _render(doc, text, text, cmd.fmt), matched == len(results)


def run(cmd: Command, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    engine: KLEngine = DEFAULT_ENGINE
    cache = cmd.cache_dir / CACHE_FILENAME if cmd.cache_dir else None
    try:
        if cache and cache.exists():
            engine.load(cache)
        ok = True
        if cmd.name == "orbits":
            text = do_orbits(cmd)
        elif cmd.name == "matrices":
            text = do_matrices(cmd)
        elif cmd.name == "lift":
            text = do_lift(cmd)
        elif cmd.name == "packet":
            text = do_packet(cmd)
        elif cmd.name == "check-square":
            text, ok = do_check_square(cmd)
        elif cmd.name == "selftest":
            text, ok = do_selftest(cmd)
        else:
            raise ParseError(f"unknown command {cmd.name}")
        if cache:
            cache.parent.mkdir(parents=True, exist_ok=True)
            engine.store(cache)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (GuardExceeded, InternalInconsistency, AbvError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1
    print(text, file=out)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cmd = parse_args(sys.argv[1:] if argv is None else argv)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 2
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
