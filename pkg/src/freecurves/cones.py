"""Finitely generated rational cones: membership, duality, extreme rays and
Hilbert bases.

A :class:`RationalCone` is given by integer generators.  Its facet
description (inequalities ``w . x >= 0`` inside the linear span of the
generators, plus the equations cutting out that span) is computed once and
cached; every other operation is exact integer arithmetic on top of it.

Cones optionally carry a ``kind`` ("curve" or "divisor") telling
:func:`dual_cone` on which side of an intersection form they live.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import _linalg as la
from . import kernels
from .errors import DimensionError, PairingError, StructureError
from .lattice import IntersectionForm

__all__ = [
    "RationalCone",
    "HilbertBasis",
    "contains",
    "dual_cone",
    "extreme_rays",
    "hilbert_basis",
    "decompose",
]

_KINDS = (None, "curve", "divisor")


class RationalCone:
    """The cone of nonnegative rational combinations of integer generators.

    Generators are normalized to primitive vectors, zero vectors are dropped
    and duplicates removed; the order of first appearance is kept.

    Args:
        generators: integer vectors of a common length.
        dim: ambient dimension, required when ``generators`` is empty.
        kind: ``"curve"``, ``"divisor"`` or ``None`` (plain Z^n).
    """

    __slots__ = ("generators", "dim", "kind", "_facets", "_perp")

    def __init__(self, generators: Iterable[Sequence[int]], dim: Optional[int] = None,
                 kind: Optional[str] = None):
        if kind not in _KINDS:
            raise ValueError(f"unknown cone kind {kind!r}")
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            for x in g:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"generator entries must be integers, got {x!r}")
            if dim is None:
                dim = len(g)
            elif len(g) != dim:
                raise DimensionError(f"generator of length {len(g)} in a cone of dimension {dim}")
            if not any(g):
                continue
            p = la.primitive(g)
            if p not in seen:
                seen.add(p)
                gens.append(p)
        if dim is None:
            raise ValueError("dim is required for a cone with no generators")
        self.generators = tuple(gens)
        self.dim = dim
        self.kind = kind
        self._facets = None
        self._perp = None

    def __repr__(self):
        return f"RationalCone({list(self.generators)}, kind={self.kind!r})"

    def __eq__(self, other):
        """Set equality (mutual containment of generators)."""
        if not isinstance(other, RationalCone):
            return NotImplemented
        return (self.dim == other.dim
                and all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    __hash__ = None

    # -- facet description ------------------------------------------------

    def _structure(self):
        if self._facets is None:
            gens = list(self.generators)
            d = self.dim
            r = la.rank(gens, d) if gens else 0
            # equations of the span: integer vectors orthogonal to every generator
            perp = la.integer_kernel(gens, d) if gens else [
                tuple(int(i == j) for j in range(d)) for i in range(d)]
            facets = []
            if r > 0:
                seen = set()
                for sub in combinations(range(len(gens)), r - 1):
                    rows = [gens[i] for i in sub] + list(perp)
                    ns = la.nullspace(rows, d)
                    if len(ns) != 1:
                        continue
                    w = ns[0]
                    vals = [la.dot(w, g) for g in gens]
                    if all(v >= 0 for v in vals):
                        pass
                    elif all(v <= 0 for v in vals):
                        w = tuple(-x for x in w)
                    else:
                        continue
                    if w not in seen:
                        seen.add(w)
                        facets.append(w)
            self._perp = tuple(perp)
            self._facets = tuple(sorted(facets))
        return self._facets, self._perp

    @property
    def facets(self) -> tuple:
        """Primitive inner normals ``w`` (inside the span) of the facets."""
        return self._structure()[0]

    @property
    def span_equations(self) -> tuple:
        """Integer vectors ``p`` with ``p . x = 0`` cutting out the linear span."""
        return self._structure()[1]

    @property
    def span_rank(self) -> int:
        return self.dim - len(self.span_equations)

    def contains(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} tested against a cone of dimension {self.dim}")
        facets, perp = self._structure()
        return (all(la.dot(p, v) == 0 for p in perp)
                and all(la.dot(w, v) >= 0 for w in facets))

    def is_interior(self, v: Sequence[int]) -> bool:
        """True iff v lies in the relative interior (strictly positive on every facet)."""
        facets, perp = self._structure()
        v = tuple(v)
        return (all(la.dot(p, v) == 0 for p in perp)
                and all(la.dot(w, v) > 0 for w in facets))

    def is_pointed(self) -> bool:
        facets, perp = self._structure()
        if not self.generators:
            return True
        return la.rank(list(facets) + list(perp), self.dim) == self.dim

    def std_dual(self) -> "RationalCone":
        """Dual under the standard dot product: {y : y . g >= 0 for all g}."""
        facets, perp = self._structure()
        gens = list(facets) + list(perp) + [tuple(-x for x in p) for p in perp]
        return RationalCone(gens, dim=self.dim)

    def extreme_rays(self) -> list:
        return extreme_rays(self)

    def hilbert_basis(self) -> "HilbertBasis":
        return hilbert_basis(self)


@dataclass(frozen=True)
class HilbertBasis:
    """Generators of the monoid of lattice points of a pointed cone."""

    elements: tuple
    minimal: bool = True

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v):
        return tuple(v) in self.elements


def contains(cone: RationalCone, v: Sequence[int]) -> bool:
    """Whether v is a nonnegative rational combination of the generators."""
    return cone.contains(v)


def dual_cone(cone: RationalCone, form: Optional[IntersectionForm] = None) -> RationalCone:
    """The cone of classes pairing nonnegatively with every generator.

    A curve cone (or a cone with no kind) dualizes to a divisor cone and vice
    versa.  With ``form=None`` the standard dot product is used.
    """
    if form is None:
        out = cone.std_dual()
        flip = {"curve": "divisor", "divisor": "curve", None: None}[cone.kind]
        return RationalCone(out.generators, dim=cone.dim, kind=flip)
    if not isinstance(form, IntersectionForm):
        raise PairingError("dual_cone needs an IntersectionForm")
    if form.rank != cone.dim:
        raise DimensionError(f"rank {form.rank} pairing applied to a cone of dimension {cone.dim}")
    m = form.matrix
    if cone.kind == "divisor":
        # D . c = (M^T D) . c
        mt = la.transpose(m)
        images = [la.matvec(mt, g) for g in cone.generators]
        kind = "curve"
    else:
        images = [la.matvec(m, g) for g in cone.generators]
        kind = "divisor"
    dual = RationalCone(images, dim=cone.dim).std_dual()
    return RationalCone(dual.generators, dim=cone.dim, kind=kind)


def extreme_rays(cone: RationalCone) -> list:
    """Primitive generators of the extreme rays of a pointed cone, sorted."""
    if not cone.is_pointed():
        raise StructureError("cone contains a line; extreme rays are undefined")
    facets, perp = cone._structure()
    d = cone.dim
    out = []
    for g in cone.generators:
        tight = [w for w in facets if la.dot(w, g) == 0]
        if la.rank(tight + list(perp), d) == d - 1:
            out.append(g)
    return sorted(out)


def _placing_triangulation(rays, perp, d):
    """Placing triangulation of a pointed cone given by its extreme rays.

    Rays are inserted in lexicographic order; each new ray is coned over the
    boundary facets of the current triangulation it can see.  Returns a list
    of tuples of ray indices.
    """
    r = d - len(perp)
    first = []
    for i in range(len(rays)):
        if la.rank([rays[j] for j in first + [i]], d) == len(first) + 1:
            first.append(i)
        if len(first) == r:
            break
    simplices = [tuple(first)]
    if len(rays) == r:
        return simplices
    normals = {}

    def normal(face, opposite):
        key = (face, opposite)
        if key not in normals:
            w = la.nullspace([rays[j] for j in face] + list(perp), d)[0]
            if la.dot(w, rays[opposite]) < 0:
                w = tuple(-x for x in w)
            normals[key] = w
        return normals[key]

    for i in range(len(rays)):
        if i in first:
            continue
        count = {}
        owner = {}
        for s in simplices:
            for k in range(len(s)):
                face = tuple(sorted(s[:k] + s[k + 1:]))
                count[face] = count.get(face, 0) + 1
                owner[face] = (s, s[k])
        new = []
        for face, c in count.items():
            if c != 1:
                continue
            _, opp = owner[face]
            if la.dot(normal(face, opp), rays[i]) < 0:
                new.append(tuple(sorted(face + (i,))))
        simplices.extend(new)
    return simplices


def _parallelepiped_points(vs, perp, d):
    """Lattice points of {sum t_i v_i : 0 <= t_i < 1} for independent v_i."""
    k = len(vs)
    # pick k coordinates on which the v_i are independent
    rows = []
    for c in range(d):
        cand = rows + [c]
        if la.rank([[v[j] for j in cand] for v in vs], len(cand)) == len(cand):
            rows = cand
        if len(rows) == k:
            break
    b = [[vs[j][c] for j in range(k)] for c in rows]  # k x k, columns are the v_j
    det = la.det(b)
    inv = la.inverse(b)
    # adj = det * inv; integer
    adj = [[int(x * det) for x in row] for row in inv]
    sgn = 1 if det > 0 else -1
    ineqs, rhs = [], []
    for i in range(k):
        # t_i * |det| = sgn * adj_i . p_rows, need 0 <= . <= |det| - 1
        row = [0] * d
        for jj, c in enumerate(rows):
            row[c] = sgn * adj[i][jj]
        ineqs.append(row)
        rhs.append(0)
        ineqs.append([-x for x in row])
        rhs.append(-(abs(det) - 1))
    for p in perp:
        ineqs.append(list(p))
        rhs.append(0)
        ineqs.append([-x for x in p])
        rhs.append(0)
    lo = [sum(min(0, v[c]) for v in vs) for c in range(d)]
    hi = [sum(max(0, v[c]) for v in vs) for c in range(d)]
    return kernels.box_filter(lo, hi, ineqs, rhs)


def hilbert_basis(cone: RationalCone) -> HilbertBasis:
    """Minimal generating set of the monoid of lattice points of a pointed cone.

    Lattice points of the fundamental parallelepiped of every simplex of a
    placing triangulation, together with the rays, generate the monoid;
    discarding the reducible ones leaves the Hilbert basis.
    """
    rays = extreme_rays(cone)
    if not rays:
        return HilbertBasis(())
    _, perp = cone._structure()
    d = cone.dim
    cand = set(rays)
    for simplex in _placing_triangulation(rays, perp, d):
        for p in _parallelepiped_points([rays[i] for i in simplex], perp, d):
            if any(p):
                cand.add(p)
    cand = sorted(cand, key=lambda v: (sum(map(abs, v)), v))
    keep = []
    for x in cand:
        reducible = False
        for y in cand:
            if y is x:
                continue
            diff = tuple(a - b for a, b in zip(x, y))
            if any(diff) and cone.contains(diff):
                reducible = True
                break
        if not reducible:
            keep.append(x)
    return HilbertBasis(tuple(sorted(keep)), minimal=True)


def decompose(v: Sequence[int], basis: Sequence[Sequence[int]], cone: RationalCone):
    """Nonnegative integer coefficients writing v over ``basis``, or None.

    Depth-first search, largest-norm elements first; branches whose
    remainder leaves ``cone`` are pruned.  Every basis element must lie in the
    pointed cone ``cone``, which makes the search finite.
    """
    if cone is None:
        raise ValueError("decompose needs the ambient cone to bound the search")
    v = tuple(v)
    basis = sorted((tuple(b) for b in basis), key=lambda b: -sum(map(abs, b)))
    memo = {}

    def rec(rest, start):
        if not any(rest):
            return []
        key = (rest, start)
        if key in memo:
            return memo[key]
        memo[key] = None
        if cone is not None and not cone.contains(rest):
            return None
        for j in range(start, len(basis)):
            nxt = tuple(a - b for a, b in zip(rest, basis[j]))
            sub = rec(nxt, j)
            if sub is not None:
                memo[key] = [j] + sub
                return memo[key]
        return None

    path = rec(v, 0)
    if path is None:
        return None
    coeffs = {}
    for j in path:
        coeffs[basis[j]] = coeffs.get(basis[j], 0) + 1
    return coeffs
