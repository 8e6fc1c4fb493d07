"""Integral nef curve classes (and lines) in an anticanonical degree window.

The search region is the polytope ``{alpha in Nef_1 : lo <= -K.alpha <= hi}``.
Its vertices are the extreme rays of the nef cone rescaled to degree lo or
hi, which gives exact per-coordinate bounds; the integer points of that
box are then filtered by the cone inequalities in a compiled kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from . import _linalg as la
from . import kernels
from .cones import RationalCone, extreme_rays
from .errors import DataError, PreconditionError
from .lattice import CurveClass

__all__ = ["DegreeWindow", "enumerate_nef_classes", "enumerate_lines", "enumerate_in_cone"]


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty degree window [{self.lo}, {self.hi}]")

    def __contains__(self, d):
        return self.lo <= d <= self.hi


def _box(rays, degree, lo, hi, margin):
    dim = len(degree)
    lows = [None] * dim
    highs = [None] * dim
    for r in rays:
        d = la.dot(degree, r)
        if d <= 0:
            raise DataError(f"extreme ray {list(r)} has degree {d}; the search region is unbounded")
        for t in {max(lo, 0), hi}:
            for k in range(dim):
                x = Fraction(t * r[k], d)
                lows[k] = x if lows[k] is None or x < lows[k] else lows[k]
                highs[k] = x if highs[k] is None or x > highs[k] else highs[k]
    if not rays:
        return [0] * dim, [0] * dim
    return ([floor(x) - margin for x in lows], [ceil(x) + margin for x in highs])


def enumerate_in_cone(cone: RationalCone, degree, lo: int, hi: int, margin: int = 0) -> list:
    """Lattice points x of ``cone`` with lo <= degree . x <= hi, sorted."""
    if hi < 0 or lo > hi:
        return []
    rays = extreme_rays(cone)
    box_lo, box_hi = _box(rays, degree, lo, hi, margin)
    rows = [list(w) for w in cone.facets]
    rhs = [0] * len(rows)
    for p in cone.span_equations:
        rows += [list(p), [-x for x in p]]
        rhs += [0, 0]
    rows += [list(degree), [-x for x in degree]]
    rhs += [lo, -hi]
    return kernels.box_filter(box_lo, box_hi, rows, rhs)


def enumerate_nef_classes(family, window: DegreeWindow, margin: int = 0) -> list:
    """Nef classes (pairing >= 0 with every stored effective divisor) in the window.

    ``margin`` enlarges the search box on every side; the output must not
    depend on it.
    """
    if not family.effective_generators:
        raise PreconditionError(f"{family.id}: no effective divisors stored")
    degree = family.pairing.divisor_functional(family.anticanonical)
    pts = enumerate_in_cone(family.nef_cone(), degree, window.lo, window.hi, margin)
    return [CurveClass(p) for p in pts]


def enumerate_lines(family, margin: int = 0) -> list:
    """Integral classes of the Mori cone with anticanonical degree 1."""
    if not family.mori_generators:
        raise PreconditionError(f"{family.id}: no Mori cone generators stored")
    degree = family.pairing.divisor_functional(family.anticanonical)
    pts = enumerate_in_cone(family.mori_cone(), degree, 1, 1, margin)
    return [CurveClass(p) for p in pts]
