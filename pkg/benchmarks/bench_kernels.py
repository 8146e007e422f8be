"""Compare the compiled and pure-Python reduction kernels.

Runs the same Groebner workloads (null-subspace charts and a Schubert-cell
flag search) under each implementation in a fresh interpreter and prints
the median wall time.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys

WORKLOAD = r"""
import json, time
from algvar._kernels import IMPLEMENTATION
from algvar.catalog import catalog_get
from algvar.invariants import max_null_subspace_dim
from algvar.nondegeneration import ClosedSetSpec, refute_membership

from algvar.degeneration import base_change

R49 = ClosedSetSpec.flag((1, 1, 3), (1, 2, 4), (1, 3, 5), (1, 5, 6))
M = [[1, 0, 1, 0, 0], [0, 1, 0, 0, 1], [1, 1, 1, 0, 0], [0, 0, 1, 1, 0], [2, 0, 0, 0, 1]]
hidden = base_change(catalog_get("C5_49", {"alpha": 2}), M)
jobs = [
    ("null C5_76 d=3", lambda: max_null_subspace_dim(catalog_get("C5_76"), 3)),
    ("flag C5_72 vs R49", lambda: refute_membership(catalog_get("C5_72"), R49)),
    ("flag J21 vs R49", lambda: refute_membership(catalog_get("J21"), R49)),
    ("flag C5_69(2) vs R49", lambda: refute_membership(catalog_get("C5_69", {"alpha": 2}), R49)),
    ("flag conjugated C5_49", lambda: refute_membership(hidden, R49)),
]
out = {"impl": IMPLEMENTATION}
for name, fn in jobs:
    t = time.perf_counter()
    fn()
    out[name] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(pure):
    env = dict(os.environ)
    if pure:
        env["ALGVAR_PURE_PYTHON"] = "1"
    else:
        env.pop("ALGVAR_PURE_PYTHON", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    samples = {False: [], True: []}
    for _ in range(args.repeat):
        for pure in (False, True):
            samples[pure].append(run(pure))
    impls = {pure: samples[pure][0]["impl"] for pure in samples}
    if impls[False] == impls[True]:
        print(f"note: compiled kernels not available, both runs used {impls[False]}")
    names = [k for k in samples[False][0] if k != "impl"]
    print(f"{'workload':24s} {impls[False]:>10s} {impls[True]:>10s} {'speedup':>8s}")
    for name in names:
        fast = statistics.median(s[name] for s in samples[False])
        slow = statistics.median(s[name] for s in samples[True])
        print(f"{name:24s} {fast:10.3f} {slow:10.3f} {slow / fast:7.2f}x")


if __name__ == "__main__":
    main()
