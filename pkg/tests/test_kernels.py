import os
import subprocess
import sys

import numpy as np
import pytest

from relmax import kernels

from conftest import group

BACKENDS = [kernels.python_kernels]
if kernels.compiled_kernels() is not None:
    BACKENDS.append(kernels.compiled_kernels())


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def backend(request):
    return request.param


@pytest.mark.parametrize("name", ["Sym(4)", "Alt(5)", "D(20)"])
def test_backends_agree(backend, name):
    G = group(name)
    ref = kernels.python_kernels
    t_ref, t = ref.prepare_table(G.table), backend.prepare_table(G.table)
    for gens in ([], [1], list(G.gen_idx), [3, 5]):
        assert (backend.closure(t, (), gens) == ref.closure(t_ref, (), gens)).all()
    sub = ref.closure(t_ref, (), [1])
    ids, c = backend.right_cosets(t, sub)
    ids_ref, c_ref = ref.right_cosets(t_ref, sub)
    assert c == c_ref and (np.asarray(ids) == ids_ref).all()
    assert (backend.element_orders(t) == ref.element_orders(t_ref)).all()


def test_element_orders_by_powers(backend):
    G = group("Sym(4)")
    orders = backend.element_orders(backend.prepare_table(G.table))
    for i in range(G.order):
        assert G.element(i).order() == orders[i]


def test_closure_seed(backend):
    G = group("Sym(4)")
    t = backend.prepare_table(G.table)
    gens = list(G.gen_idx)
    H = backend.closure(t, (), gens[:1])
    # seeding with known members does not change the result
    assert (backend.closure(t, H, gens) == backend.closure(t, (), gens)).all()
    assert len(backend.closure(t, (), gens)) == 24


def test_selected_backend_reported():
    assert kernels.BACKEND in ("python", "cython")


@pytest.mark.parametrize("pure", ["1", "0"])
def test_lattice_under_each_backend(pure):
    code = ("from relmax import kernels; from relmax.catalog import build_group; "
            "from relmax.lattice import all_subgroups; "
            "print(kernels.BACKEND, len(all_subgroups(build_group('Sym(4)'))), "
            "len(all_subgroups(build_group('Alt(5)'))))")
    out = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, RELMAX_PURE_PYTHON=pure),
                         capture_output=True, text=True, check=True).stdout.split()
    if pure == "1":
        assert out[0] == "python"
    assert out[1:] == ["30", "59"]
