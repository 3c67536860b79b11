"""Compiled vs pure-Python kernel timings.

    python benchmarks/bench_kernels.py [--groups "Sym(5),Alt(6),Sym(6)"] [--repeat 3] [--lattice]

Kernel rows time each backend on the same Cayley table.  ``--lattice``
also times a full subgroup-lattice build per backend, each in a fresh
interpreter (the backend is fixed at import).
"""
import argparse
import os
import subprocess
import sys
import timeit

from relmax import kernels
from relmax.catalog import build_group

_LATTICE_SNIPPET = (
    "import time; from relmax.catalog import build_group; from relmax.lattice import all_subgroups; "
    "from relmax import kernels; G = build_group({name!r}); G.table; t = time.perf_counter(); "
    "n = len(all_subgroups(G).subgroups); print(kernels.BACKEND, n, time.perf_counter() - t)"
)


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(name, repeat):
    G = build_group(name)
    table = G.table
    backends = [("python", kernels.python_kernels)]
    compiled = kernels.compiled_kernels()
    if compiled is not None:
        backends.append(("cython", compiled))
    gens = list(G.gen_idx)
    small = sorted({int(G.index_of(g)) for g in G.generators[:1]})
    sub = kernels.python_kernels.closure(table.tolist(), (), small)
    rows = []
    for label, mod in backends:
        t = mod.prepare_table(table)
        rows.append((name, label, "closure", _best(lambda: mod.closure(t, (), gens), repeat)))
        rows.append((name, label, "right_cosets", _best(lambda: mod.right_cosets(t, sub), repeat)))
        rows.append((name, label, "element_orders", _best(lambda: mod.element_orders(t), repeat)))
    return rows


def lattice_rows(name):
    rows = []
    for pure in ("1", "0"):
        env = dict(os.environ, RELMAX_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", _LATTICE_SNIPPET.format(name=name)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        rows.append((name, out[0], f"lattice ({out[1]} subgroups)", float(out[2])))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", default="Sym(5),Alt(6),Sym(6)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--lattice", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for name in [g.strip() for g in args.groups.split(",") if g.strip()]:
        rows += kernel_rows(name, args.repeat)
        if args.lattice:
            rows += lattice_rows(name)
    if kernels.compiled_kernels() is None:
        print("compiled extension not built; python rows only")
    width = max(len(r[2]) for r in rows)
    print(f"{'group':<10} {'backend':<8} {'kernel':<{width}} seconds")
    for g, b, k, s in rows:
        print(f"{g:<10} {b:<8} {k:<{width}} {s:.5f}")


if __name__ == "__main__":
    main()
