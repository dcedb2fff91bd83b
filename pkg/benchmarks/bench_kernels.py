"""Time the compiled kernels against the pure-Python ones on the hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import importlib
import itertools
import timeit

from corfun import _pykernels
from corfun.catalog import lattice_by_name


def workloads(mod, T, x):
    ups = T.irr_poset.upper_ideals()
    cols = list(itertools.product(range(T.n), repeat=x))
    rows = [tuple(ups[i] for i in r) for r in itertools.product(range(len(ups)), repeat=x)][:64]
    dn, ne = T.down_on_e, T.irr_poset.n
    rel_rows = [(1 << x) - 1 - (1 << (y % x)) for y in range(x)]
    terms = {tuple(c): 1 for c in cols[:200]}
    u = {tuple(range(T.n)): 1, tuple(min(t, T.n - 1) for t in range(T.n)): -1}

    def vdash():
        for psi in rows:
            for phi in cols:
                mod.vdash_rows(phi, psi, dn, ne)

    def act():
        for phi in cols:
            mod.join_action(rel_rows, phi, T.join, T.bottom)

    def compose():
        mod.compose_terms(u, terms)

    def rows_():
        for _ in range(2000):
            mod.compose_rows(tuple(rel_rows), tuple(rel_rows))

    return {"vdash_rows": vdash, "join_action": act, "compose_terms": compose, "compose_rows": rows_}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--lattice", default="lozenge")
    ap.add_argument("--x", type=int, default=4)
    args = ap.parse_args()
    T = lattice_by_name(args.lattice)
    backends = {"python": _pykernels}
    try:
        backends["cython"] = importlib.import_module("corfun._ckernels")
    except ImportError:
        print("compiled kernels not built; timing the Python fallback only")
    results = {}
    for name, mod in backends.items():
        for job, fn in workloads(mod, T, args.x).items():
            results[(job, name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"{'kernel':<15}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for job in ("vdash_rows", "join_action", "compose_terms", "compose_rows"):
        line = f"{job:<15}" + "".join(f"{results[(job, b)]:>11.4f}s" for b in backends)
        if len(backends) > 1:
            line += f"{results[(job, 'python')] / results[(job, 'cython')]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
