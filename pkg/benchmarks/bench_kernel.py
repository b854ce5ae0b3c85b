"""Compare the compiled and pure-Python DBM kernels.

    python benchmarks/bench_kernel.py [--repeat N]

Times closure, intersection, inclusion and extrapolation on random DBMs,
then the full hierarchy + strategy synthesis on the bundled conveyor test
case with each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time
from array import array

from tiotest.clockspace import ClockSet, Zone, atom, kernel

SYNTH = """
import time
from tiotest.game import GameView, build_hierarchy, synthesize
from tiotest.model import build_tester
from tiotest.suite import fixture
from tiotest.clockspace import BACKEND
t = time.perf_counter()
g = GameView(build_tester(fixture("conveyor_dp")))
synthesize(g, build_hierarchy(g))
print(BACKEND, time.perf_counter() - t)
"""


def sample(count, seed=0):
    rng = random.Random(seed)
    cs = ClockSet(["x", "y", "z", "w"])
    out = []
    while len(out) < count:
        triples = []
        for _ in range(rng.randint(1, 5)):
            a, b = rng.sample(cs.names, 2)
            triples += atom(cs, a, rng.choice(("<", "<=", ">", ">=")), rng.randint(0, 8), rng.choice((None, b)))
        z = Zone.from_constraints(cs, triples)
        if z is not None:
            out.append(z.d)
    return cs.dim, out


def bench(mod, n, dbms, repeat):
    res = {}
    loose = [array("q", [v + 2 if 0 < v < (1 << 59) else v for v in d]) for d in dbms]
    t = time.perf_counter()
    for _ in range(repeat):
        for d in loose:
            mod.close(array("q", d), n)
    res["close"] = time.perf_counter() - t
    t = time.perf_counter()
    for _ in range(repeat):
        for d, e in zip(dbms, dbms[1:]):
            mod.intersect(array("q", d), e, n)
    res["intersect"] = time.perf_counter() - t
    t = time.perf_counter()
    for _ in range(repeat):
        for d, e in zip(dbms, dbms[1:]):
            mod.is_subset(d, e, n)
    res["is_subset"] = time.perf_counter() - t
    t = time.perf_counter()
    for _ in range(repeat):
        for d in dbms:
            mod.extrapolate(array("q", d), n, 3)
    res["extrapolate"] = time.perf_counter() - t
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--count", type=int, default=500)
    args = ap.parse_args()
    n, dbms = sample(args.count)
    backends = {"python": kernel.load("python")}
    try:
        backends["compiled"] = kernel.load("compiled")
    except ImportError:
        print("compiled kernel not built; timing the Python kernel only")
    rows = {name: bench(mod, n, dbms, args.repeat) for name, mod in backends.items()}
    ops = list(rows["python"])
    print(f"{'op':<12}" + "".join(f"{b:>12}" for b in rows) + ("     speedup" if len(rows) > 1 else ""))
    for op in ops:
        line = f"{op:<12}" + "".join(f"{rows[b][op]:>11.4f}s" for b in rows)
        if "compiled" in rows:
            line += f"{rows['python'][op] / rows['compiled'][op]:>11.1f}x"
        print(line)
    print("\nsynthesis on the conveyor test case:")
    for env in ({}, {"TIOTEST_PURE": "1"}):
        out = subprocess.run([sys.executable, "-c", SYNTH], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:<10}{float(secs):.3f}s")


if __name__ == "__main__":
    main()
