import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qheis import _kernel_py, kernel
from qheis.pbw import embed, flip
from qheis.presets import Preset

compiled = pytest.importorskip("qheis._kernel")


def test_backend_reports_compiled_when_built():
    assert kernel.BACKEND == "compiled"


def test_pure_python_switch():
    code = "import qheis.kernel as k; print(k.BACKEND)"
    env = dict(os.environ, QHEIS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_kernels_agree_on_real_elements(arity):
    p = Preset("two-parameter", (3, 3))
    if arity == 1:
        x, y = p.casimir, p.casimir * p.casimir
    elif arity == 2:
        x, y = p.R, flip(p.R)
    else:
        x, y = embed(p.R, "12"), embed(p.R, "23")
    args = (x.terms, y.terms, arity, 3, 3, x.table)
    assert compiled.mul_terms(*args) == _kernel_py.mul_terms(*args)


@given(st.lists(st.tuples(st.sampled_from(["E", "Ap", "N", "A"]), st.integers(0, 2)), max_size=4))
def test_kernels_agree_on_random_words(word):
    p = Preset("two-parameter", (3, 3))
    g = p.generators()
    x = g["A"] + g["Ap"]
    for name, k in word:
        x = x * g[name] ** k + g["N"]
    args = (x.terms, p.casimir.terms, 1, 3, 3, x.table)
    assert compiled.mul_terms(*args) == _kernel_py.mul_terms(*args)
