"""Acceptance criteria 1-12 at zero tolerance.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

from __future__ import annotations

import io
import itertools
import json
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from abvpackets import cli, golden, linalg, schemas
from abvpackets.arthur import ArthurParameter, enumerate_arthur, infinitesimal, phi_of, pi_of
from abvpackets.bench import run_benchmark
from abvpackets.errors import InternalInconsistency
from abvpackets.geometry import (build_levi_space, build_orbit_space, dim_H, dim_V,
                                 dual_orbit_of_arthur, orbit_dim, stabilizer_dim_bruteforce)
from abvpackets.kl import (KLEngine, bruhat_leq, c_stalk_oracle_two_block, encode, length,
                           levi_matrices, levi_matrices_direct, m_matrix)
from abvpackets.ktheory import (Endoscopy, abv_packet, endoscopy_for, endoscopy_square_check,
                                eta, eta_evs)
from abvpackets.multisegment import HalfInt, InfinitesimalParameter, parse_lambda

RESULTS: dict[int, tuple[str, bool, str]] = {}

GL2 = parse_lambda("[1/2]+[-1/2]")
GL4 = parse_lambda("[1/2]+[1/2]+[-1/2]+[-1/2]")
PSI4 = ArthurParameter.of((2, 1), (1, 2))


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    RESULTS[n] = (title, ok, detail)
    assert ok, f"criterion {n} ({title}) failed: {detail}"


def result_lines() -> list[str]:
    return [f"criterion {n:>2}  {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{d}]" if d else "")
            for n, (title, ok, d) in sorted(RESULTS.items())]


def _cold():
    build_orbit_space.cache_clear()
    encode.cache_clear()
    return KLEngine()


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _rows(a):
    return [list(r) for r in a]


def _window_lambdas(n: int, step: Fraction = Fraction(1)):
    """Every multiset of n exponents, up to translation, in a window of width n - 1."""
    values = [HalfInt(int(2 * k * step)) for k in range(int((n - 1) / step) + 1)]
    for combo in itertools.combinations_with_replacement(values, n):
        if combo[0] == values[0]:
            yield InfinitesimalParameter.from_exponents(combo)


# 1

def test_criterion_01_golden_gl2():
    eng = _cold()
    mm, dt = _timed(lambda: m_matrix(GL2, engine=eng))
    ok = _rows(mm.m) == [[1, 0], [1, 1]] and _rows(mm.c) == [[1, 1], [0, 1]] and dt < 1.0
    record(1, "golden GL2 m and c", ok, f"{dt * 1000:.1f} ms")


# 2

def test_criterion_02_golden_gl4():
    eng = _cold()

    def work():
        return build_orbit_space(GL4), m_matrix(GL4, engine=eng)

    (space, mm), dt = _timed(work)
    ok = (_rows(mm.c) == [[1, 2, 1], [0, 1, 1], [0, 0, 1]]
          and _rows(mm.m) == [[1, 0, 0], [2, 1, 0], [1, 1, 1]]
          and space.dims == (0, 3, 4) and len(space) == 3 and dt < 1.0)
    record(2, "golden GL4 m, c, dims, orbit count", ok, f"{dt * 1000:.1f} ms")


# 3

def test_criterion_03_golden_levi():
    want = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    levi = build_levi_space([GL2, GL2])
    tensor, direct = levi_matrices(levi, KLEngine()), levi_matrices_direct(levi, KLEngine())
    ok = _rows(tensor.c) == want and _rows(direct.c) == want
    ok = ok and _rows(linalg.inverse(tensor.c)) == golden.GOLDEN["GL2xGL2 Levi"]["c_M_inv"]
    record(3, "golden Levi c_M by tensor law and on the product space", ok)


# 4

def test_criterion_04_golden_endoscopy():
    e = endoscopy_for(PSI4)
    sts = [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]]
    lift = _rows(e.lift_sim())
    targets = [[row[j] for row in lift].index(1) for j in range(4)]
    ok = (_rows(e.eps_star_std()) == sts and _rows(e.eps_star_simple()) == sts
          and lift == [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
          and all(sum(row[j] for row in lift) == 1 for j in range(4))
          and targets == [0, 1, 1, 2])
    record(4, "golden endoscopic lift and the four lift assignments", ok,
           "pi_00->pi_%d pi_01->pi_%d pi_10->pi_%d pi_11->pi_%d" % tuple(targets))


# 5

def test_criterion_05_main_theorem_sweep():
    t0 = time.perf_counter()
    count, bad = 0, []
    for n in range(1, 7):
        for psi in enumerate_arthur(n):
            count += 1
            try:
                same = eta_evs(psi) == eta(psi)
                packet = abv_packet(psi) == [pi_of(psi)]
            except InternalInconsistency as exc:
                bad.append(f"{psi}: {exc}")
                continue
            square = endoscopy_square_check(psi).passed
            if not (same and packet and square):
                bad.append(str(psi))
    dt = time.perf_counter() - t0
    record(5, "A-packet = ABV-packet and endoscopy square for all psi, n <= 6",
           not bad and dt < 60, f"{count} parameters, {dt:.1f} s" + (f", bad {bad[:3]}" if bad else ""))


# 6

def test_criterion_06_two_route_lift():
    t0 = time.perf_counter()
    count, bad = 0, []
    for n in range(2, 7):
        for lam in _window_lambdas(n):
            exps = [e for _, e, k in lam.points for _ in range(k)]
            seen = set()
            for k in range(1, n):
                for sub in itertools.combinations(range(n), k):
                    first = tuple(exps[i] for i in sub)
                    second = tuple(exps[i] for i in range(n) if i not in sub)
                    if (first, second) in seen:
                        continue
                    seen.add((first, second))
                    e = Endoscopy(lam, [InfinitesimalParameter.from_exponents(first),
                                        InfinitesimalParameter.from_exponents(second)])
                    count += 1
                    if e.lift_sim() != e.lift_sim_by_induction():
                        bad.append((str(lam), first))
    dt = time.perf_counter() - t0
    record(6, "restriction route = induction route for every maximal Levi, n <= 6",
           not bad, f"{count} splits, {dt:.1f} s" + (f", bad {bad[:3]}" if bad else ""))


# 7

def test_criterion_07_orbit_dimension_oracle():
    t0 = time.perf_counter()
    lams = {lam for n in range(1, 7) for lam in _window_lambdas(n, Fraction(1, 2))}
    orbits, bad = 0, []
    for lam in lams:
        for alpha in build_orbit_space(lam).orbits:
            orbits += 1
            if orbit_dim(alpha) != dim_H(lam) - stabilizer_dim_bruteforce(alpha):
                bad.append(str(alpha))
    dt = time.perf_counter() - t0
    record(7, "orbit_dim = dim H - brute-force stabilizer, <= 6 points per line",
           not bad and dt < 30, f"{len(lams)} lambdas, {orbits} orbits, {dt:.1f} s")


# 8

@pytest.mark.xfail(strict=True, reason="the identity is false already for the GL4 example; "
                                       "see the regularity oracle in test_geometry")
def test_criterion_08_regularity_dimension_identity():
    total, bad = 0, []
    for n in range(1, 9):
        for psi in enumerate_arthur(n):
            total += 1
            lhs = orbit_dim(phi_of(psi)) + orbit_dim(dual_orbit_of_arthur(psi))
            if lhs != dim_V(infinitesimal(psi)):
                bad.append(f"{psi}: {lhs} vs {dim_V(infinitesimal(psi))}")
    record(8, "dim C_psi + dim C*_psi = dim V for all psi, n <= 8", not bad,
           f"{len(bad)} of {total} violate, e.g. {bad[0]}" if bad else f"{total} parameters")


# 9

def test_criterion_09_smooth_case():
    t0 = time.perf_counter()
    count, biggest, bad = 0, 0, []
    for size in range(1, 9):
        for rest in itertools.combinations(range(1, 8), size - 1):
            lam = InfinitesimalParameter.from_exponents((0,) + rest)
            space = build_orbit_space(lam)
            m = m_matrix(lam).m
            closure = space.closure_matrix()
            count += 1
            biggest = max(biggest, len(space))
            zero_one = all(v in (0, 1) for row in m for v in row)
            if not (zero_one and m == linalg.transpose(closure)):
                bad.append(str(lam))
    chain8 = len(build_orbit_space(InfinitesimalParameter.from_exponents(range(8))))
    dt = time.perf_counter() - t0
    record(9, "multiplicity-free lambda: m is 0/1 and is the closure incidence",
           not bad and chain8 == 128 and dt < 60,
           f"{count} lambdas, largest {biggest} orbits, {dt:.1f} s")


# 10

def test_criterion_10_two_block_oracle():
    bad = []
    for p, q in itertools.product(range(1, 5), repeat=2):
        lam = InfinitesimalParameter.from_exponents([0] * p + [1] * q)
        space = build_orbit_space(lam)
        c = m_matrix(lam).c
        rank = [sum(1 for s in a if s.length == 2) for a in space.orbits]
        for j, k in enumerate(rank):
            col = [c[i][j] for i in range(len(space))]
            want = [c_stalk_oracle_two_block(p, q, k, s) if s <= k else 0 for s in rank]
            if col != want:
                bad.append((p, q, k))
    gl4_entry = m_matrix(GL4).c[0][1]
    record(10, "two-block c-columns = binomial stalk values, p, q <= 4",
           not bad and gl4_entry == 2, f"GL4 entry {gl4_entry}")


# 11

def test_criterion_11_kl_engine():
    eng = KLEngine()
    bad = []
    for n in range(1, 6):
        perms = list(itertools.permutations(range(1, n + 1)))
        for w in perms:
            if eng.poly(w, w) != (1,):
                bad.append(("diag", w))
            for x in perms:
                p = eng.poly(x, w)
                if bool(p) != bruhat_leq(x, w):
                    bad.append(("support", x, w))
                if p and x != w and len(p) - 1 > (length(w) - length(x) - 1) // 2:
                    bad.append(("degree", x, w))
    for lam in (GL4, parse_lambda("[0]+[0]+[1]+[1]+[2]+[2]")):
        m_matrix(lam, engine=eng)
    text = eng.dumps()
    other = KLEngine()
    other.loads(text)
    roundtrip = other.dumps() == text
    with tempfile.TemporaryDirectory() as tmp:
        bench = run_benchmark([parse_lambda("[0]+[0]+[1]+[1]+[2]+[2]+[3]+[3]"),
                               parse_lambda("[0]+[0]+[1]+[1]+[1]+[2]+[2]")], Path(tmp))
    ok = not bad and roundtrip and bench.identical and bench.entries > 0
    record(11, "KL engine: diagonal, support = Bruhat, degree bound, cache round trip", ok,
           f"warm-cache speedup {bench.speedup:.1f}x (cold {bench.cold_seconds:.2f} s, "
           f"warm {bench.warm_seconds:.2f} s)")


# 12

def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(cli.parse_args(argv), out, err)
    return code, out.getvalue()


def test_criterion_12_cli():
    code, out = _cli(["selftest"])
    ok = code == 0 and out.strip().splitlines()[-1] == "4/4 examples match"
    psi = str(PSI4)
    invocations = [
        ("orbits", ["orbits", "--lambda", str(GL4)]),
        ("matrices", ["matrices", "--lambda", str(GL4)]),
        ("lift", ["lift", psi]),
        ("packet", ["packet", psi]),
        ("check-square", ["check-square", psi]),
        ("selftest", ["selftest"]),
    ]
    invalid = []
    for name, argv in invocations:
        code, out = _cli(argv + ["--format", "json"])
        try:
            jsonschema.validate(json.loads(out), schemas.BY_COMMAND[name])
        except (jsonschema.ValidationError, json.JSONDecodeError):
            invalid.append(name)
        ok = ok and code == 0
    record(12, "selftest 4/4 and every JSON output validates", ok and not invalid,
           f"invalid: {invalid}" if invalid else "")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(result_lines()))
    sys.exit(1 if failed else 0)
