import itertools

import pytest
from hypothesis import given, strategies as st

from freecurves import _linalg as la
from freecurves.cones import RationalCone, decompose, dual_cone, extreme_rays, hilbert_basis
from freecurves.enumerate import enumerate_in_cone
from freecurves.errors import DimensionError, StructureError
from freecurves.lattice import IntersectionForm
from tests.strategies import int_vectors, pointed_cones


def test_gordan_example():
    hb = hilbert_basis(RationalCone([(1, 0), (1, 3)]))
    assert sorted(hb) == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_redundant_generators_dropped():
    cone = RationalCone([(1, 0), (2, 0), (1, 1), (0, 1)])
    assert sorted(extreme_rays(cone)) == [(0, 1), (1, 0)]


def test_non_pointed_cone():
    cone = RationalCone([(1, 0), (-1, 0), (0, 1)])
    assert not cone.is_pointed()
    with pytest.raises(StructureError):
        hilbert_basis(cone)


def test_lower_dimensional_cone():
    cone = RationalCone([(1, 0, 1), (0, 1, 1)])
    assert cone.span_rank == 2
    assert cone.contains((1, 1, 2)) and not cone.contains((1, 1, 1))
    assert cone.is_interior((1, 1, 2)) and not cone.is_interior((1, 0, 1))
    assert sorted(hilbert_basis(cone)) == [(0, 1, 1), (1, 0, 1)]


def test_dimension_checked():
    with pytest.raises(DimensionError):
        RationalCone([(1, 0)]).contains((1, 0, 0))
    with pytest.raises(DimensionError):
        RationalCone([(1, 0), (1, 0, 0)])


def test_dual_with_pairing():
    form = IntersectionForm(((1, 0), (0, -1)))
    eff = RationalCone([(0, 1), (1, -1)], kind="divisor")     # E, H - E
    nef = dual_cone(eff, form)
    assert nef.kind == "curve"
    assert sorted(extreme_rays(nef)) == [(1, -1), (1, 0)]   # l - e, l
    assert dual_cone(nef, form) == eff


def test_decompose_needs_cone():
    with pytest.raises(ValueError):
        decompose((1, 1), [(1, 0), (0, 1)], None)


def _cone(data):
    dim, gens = data
    return RationalCone(gens, dim=dim)


@given(pointed_cones())
def test_dual_dual_identity(data):
    cone = _cone(data)
    assert dual_cone(dual_cone(cone)) == cone
    assert set(extreme_rays(dual_cone(dual_cone(cone)))) == set(extreme_rays(cone))


@given(pointed_cones())
def test_rays_are_primitive_generators(data):
    cone = _cone(data)
    rays = extreme_rays(cone)
    assert RationalCone(rays, dim=cone.dim) == cone
    for r in rays:
        assert la.primitive(r) == r
        # dropping an extreme ray shrinks the cone
        rest = [s for s in rays if s != r]
        assert not rest or not RationalCone(rest, dim=cone.dim).contains(r)


@given(pointed_cones(), int_vectors(3, -6, 6))
def test_facet_description(data, v):
    cone = _cone(data)
    v = v[:cone.dim]
    by_facets = all(la.dot(w, v) >= 0 for w in cone.facets)
    assert cone.contains(v) == by_facets


def _irreducible_points(cone, bound):
    pts = [p for p in enumerate_in_cone(cone, [1] * cone.dim, 1, bound)]
    ps = set(pts)
    return sorted(p for p in pts
                  if not any(q != p and tuple(a - b for a, b in zip(p, q)) in ps for q in pts))


@given(pointed_cones(hi=3))
def test_hilbert_basis_oracle(data):
    cone = _cone(data)
    hb = sorted(hilbert_basis(cone))
    # Hilbert basis elements lie in a fundamental parallelepiped, so their
    # degree is below the total degree of the rays
    bound = sum(sum(r) for r in extreme_rays(cone))
    assert hb == _irreducible_points(cone, bound)


@given(pointed_cones(), st.integers(1, 10))
def test_every_point_decomposes(data, t):
    cone = _cone(data)
    hb = list(hilbert_basis(cone))
    for p in enumerate_in_cone(cone, [1] * cone.dim, t, t):
        coeffs = decompose(p, hb, cone)
        assert coeffs is not None
        total = [0] * cone.dim
        for b, k in coeffs.items():
            total = [x + k * y for x, y in zip(total, b)]
        assert tuple(total) == p
