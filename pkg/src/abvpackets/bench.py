"""Cold versus warm KL cache timing.

    python -m abvpackets.bench [--cache-dir DIR] [--lambda L ...]

The cold pass starts from an empty engine and writes the cache file; the warm
pass loads it into a fresh engine.  Both passes must produce identical
matrices; the speedup is reported, never relied on.
"""

from __future__ import annotations

import argparse
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .geometry import build_orbit_space
from .kl import CACHE_FILENAME, KLEngine, encode, space_matrices
from .multisegment import InfinitesimalParameter, parse_lambda

DEFAULT_WORKLOAD = (
    "[0]+[0]+[1]+[1]+[2]+[2]+[3]+[3]",
    "[0]+[0]+[1]+[1]+[1]+[2]+[2]",
    "[0]+[1]+[1]+[2]+[2]+[3]",
)


@dataclass(frozen=True)
class BenchResult:
    cold_seconds: float
    warm_seconds: float
    entries: int
    identical: bool

    @property
    def speedup(self) -> float:
        return self.cold_seconds / max(self.warm_seconds, 1e-9)


def _pass(lams: Sequence[InfinitesimalParameter], engine: KLEngine):
    out = []
    for lam in lams:
        out.append(space_matrices(build_orbit_space(lam, lam.npoints), engine))
    return out


def run_benchmark(lams: Sequence[InfinitesimalParameter], cache_dir: Path) -> BenchResult:
    path = Path(cache_dir) / CACHE_FILENAME
    # warm the orbit and encoding caches so only KL work is timed
    for lam in lams:
        for a in build_orbit_space(lam, lam.npoints).orbits:
            encode(lam, a)

    cold = KLEngine()
    t0 = time.perf_counter()
    first = _pass(lams, cold)
    cold.store(path)
    t1 = time.perf_counter()

    warm = KLEngine()
    t2 = time.perf_counter()
    warm.load(path)
    second = _pass(lams, warm)
    t3 = time.perf_counter()
    return BenchResult(t1 - t0, t3 - t2, len(cold), first == second and warm.computed == 0)


def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="python -m abvpackets.bench")
    ap.add_argument("--cache-dir", type=Path, default=None)
    ap.add_argument("--lambda", dest="lams", action="append", default=None)
    ns = ap.parse_args(argv)
    lams = [parse_lambda(t) for t in (ns.lams or DEFAULT_WORKLOAD)]
    if ns.cache_dir is None:
        with tempfile.TemporaryDirectory() as tmp:
            res = run_benchmark(lams, Path(tmp))
    else:
        ns.cache_dir.mkdir(parents=True, exist_ok=True)
        res = run_benchmark(lams, ns.cache_dir)
    print(f"entries   {res.entries}")
    print(f"cold      {res.cold_seconds:.3f} s")
    print(f"warm      {res.warm_seconds:.3f} s")
    print(f"speedup   {res.speedup:.1f}x")
    print(f"identical {res.identical}")
    return 0 if res.identical else 1


if __name__ == "__main__":
    raise SystemExit(main())
