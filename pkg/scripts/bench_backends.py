#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/python fallback.

Runs the full homology pipeline (grading sweep, block differentials,
GF(2) elimination) on a few grids under both GRIDFLOER_BACKEND settings
in subprocesses and prints a comparison table.  Results must agree
bit-exactly; the script fails loudly if they do not.

Usage: python scripts/bench_backends.py [--sizes small|medium|large]
"""
import argparse
import json
import os
import subprocess
import sys
import tempfile

WORKER = r"""
import json, sys, time
from pretzelfloer.links import parse_grid
from pretzelfloer.gridfloer import homology_ranks, graded_euler
from pretzelfloer import _kernels

with open(sys.argv[1], encoding="utf-8") as fh:
    g = parse_grid(fh.read())
homology_ranks(g)     # warm up (jit compilation happens here)
t0 = time.perf_counter()
table = homology_ranks(g)
elapsed = time.perf_counter() - t0
print(json.dumps({
    "backend": _kernels.BACKEND,
    "elapsed": elapsed,
    "table": table.to_json_dict(),
    "euler": graded_euler(table).to_json_dict(),
}))
"""

GRIDS = {
    "small": ["trefoil5.grid", "fig8_6.grid"],
    "medium": ["trefoil5.grid", "fig8_6.grid", "squareknot8.grid"],
    "large": ["fig8_6.grid", "squareknot8.grid"],
}


def run(backend: str, grid_path: str) -> dict:
    env = dict(os.environ, GRIDFLOER_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", WORKER, grid_path],
                         capture_output=True, text=True, env=env, check=True)
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", choices=sorted(GRIDS), default="medium")
    args = parser.parse_args()
    fixtures = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")
    print(f"{'grid':<20} {'numba (s)':>10} {'numpy (s)':>10} {'speedup':>8}  identical")
    ok = True
    for name in GRIDS[args.sizes]:
        path = os.path.join(fixtures, name)
        res = {b: run(b, path) for b in ("numba", "numpy")}
        same = res["numba"]["table"] == res["numpy"]["table"] and \
            res["numba"]["euler"] == res["numpy"]["euler"]
        ok = ok and same
        tn, tp = res["numba"]["elapsed"], res["numpy"]["elapsed"]
        print(f"{name:<20} {tn:>10.3f} {tp:>10.3f} {tp / tn:>7.1f}x  {same}")
    if not ok:
        print("BACKENDS DISAGREE", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
