import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkmk import _pykernels, kernels

try:
    from gkmk import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

polys = st.dictionaries(st.tuples(*[st.integers(-4, 4)] * 3), st.integers(-9, 9).filter(bool), max_size=8)


def int_quo(c, d):
    q, r = divmod(c, d)
    return None if r else q


@needs_ext
@given(polys, polys)
def test_mul_agrees(a, b):
    assert _ckernels.mul(a, b) == _pykernels.mul(a, b)


@needs_ext
@given(polys, polys, st.integers(-3, 3), st.one_of(st.none(), st.tuples(*[st.integers(-2, 2)] * 3)))
def test_axpy_agrees(a, b, c, shift):
    assert _ckernels.axpy(dict(a), b, c, shift) == _pykernels.axpy(dict(a), b, c, shift)


@needs_ext
@given(polys, st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_linear_map_agrees(a, mat):
    assert _ckernels.linear_map(a, mat) == _pykernels.linear_map(a, mat)


@needs_ext
@given(polys, polys.filter(bool))
def test_divide_agrees(a, b):
    prod = _pykernels.mul(a, b)
    assert _ckernels.divide(prod, b, int_quo) == _pykernels.divide(prod, b, int_quo)
    shifted = _pykernels.axpy(dict(prod), {(0, 0, 0): 1}, 1)
    assert _ckernels.divide(shifted, b, int_quo) == _pykernels.divide(shifted, b, int_quo)


@given(polys, polys.filter(bool))
def test_divide_exact(a, b):
    q, rem = kernels.divide(kernels.mul(a, b), b, int_quo)
    assert rem is None and q == a


def test_rational_coefficients():
    a = {(0,): Fraction(1, 2), (1,): Fraction(1, 3)}
    assert kernels.mul(a, a) == {(0,): Fraction(1, 4), (1,): Fraction(1, 3), (2,): Fraction(1, 9)}


def test_fallback_selected_by_environment():
    code = "from gkmk import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, GKMK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env["GKMK_PURE_PYTHON"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("cython" if _ckernels is not None else "python")
