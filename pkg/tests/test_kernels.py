import itertools

import pytest
from hypothesis import given, strategies as st

from freecurves import _linalg as la
from freecurves import _pykernels, kernels
from tests.strategies import int_vectors

try:
    from freecurves import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _brute_box(lo, hi, rows, rhs):
    pts = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
    return [p for p in pts if all(la.dot(r, p) >= c for r, c in zip(rows, rhs))]


boxes = st.integers(1, 3).flatmap(lambda n: st.tuples(
    int_vectors(n, -3, 0), int_vectors(n, 0, 3),
    st.lists(int_vectors(n, -2, 2), min_size=0, max_size=3),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3)))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(boxes)
def test_box_filter_matches_brute_force(data):
    lo, hi, rows, rhs = data
    rhs = rhs[:len(rows)]
    assert _pykernels.box_filter(lo, hi, rows, rhs) == _brute_box(lo, hi, rows, rhs)


@needs_c
@given(boxes)
def test_box_filter_backends_agree(data):
    lo, hi, rows, rhs = data
    rhs = rhs[:len(rows)]
    assert _ckernels.box_filter(lo, hi, rows, rhs) == _pykernels.box_filter(lo, hi, rows, rhs)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 10))
def test_multisets_by_degree(degrees, budget):
    got = _pykernels.multisets_by_degree(degrees, budget)
    want = [x for x in itertools.product(*(range(budget // d + 1) for d in degrees))
            if la.dot(x, degrees) <= budget]
    assert sorted(got) == sorted(want)
    if _ckernels is not None:
        assert _ckernels.multisets_by_degree(degrees, budget) == got


@given(st.lists(int_vectors(4, -2, 2), min_size=1, max_size=2))
def test_graver_completion(rows):
    basis = la.integer_kernel(rows, 4)
    if not basis:
        return
    g = _pykernels.graver_completion(basis)
    for v in g:
        assert all(la.dot(r, v) == 0 for r in rows)
        assert tuple(-x for x in v) in g
    for b in basis:
        assert tuple(b) in g or tuple(-x for x in b) in g or any(
            all(abs(x) <= abs(y) and x * y >= 0 for x, y in zip(v, b)) for v in g)
    if _ckernels is not None:
        assert sorted(_ckernels.graver_completion(basis)) == sorted(g)


def _brute_graver(rows, n, bound):
    ker = [v for v in itertools.product(range(-bound, bound + 1), repeat=n)
           if any(v) and all(la.dot(r, v) == 0 for r in rows)]
    le = lambda g, s: all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(g, s))
    return sorted(v for v in ker if not any(u != v and le(u, v) for u in ker))


@pytest.mark.parametrize("rows", [
    [[1, 1, 1, 1], [0, 1, 2, 3]],
    [[1, 1, 1], [0, 1, 2]],
    [[1, 2, 3]],
])
def test_graver_against_brute_force(rows):
    n = len(rows[0])
    basis = la.integer_kernel(rows, n)
    assert sorted(_pykernels.graver_completion(basis)) == _brute_graver(rows, n, 4)


def test_pure_python_override():
    import os
    import subprocess
    import sys
    env = dict(os.environ, FREECURVES_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from freecurves import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
