"""Relations in the monoid generated by a family's core classes.

A relation is an identity ``sum_{i in lhs} c_i = sum_{j in rhs} c_j``
between two multisets of core indices (0-based here; family files are
1-based).  Three things live here:

* :func:`generating_relations` -- the generating set given by a witness
  ordering of the core: for each position i, the relations
  ``r c_i + sum a_k c_k = sum b_k c_k`` (support after i) whose
  ``(r, a)`` is componentwise minimal, plus the single relation among the
  last rho+1 classes.  Every such minimal relation is conformally minimal in
  the kernel lattice, so they are read off one Graver basis.
* :func:`oracle_relations` -- an independent brute force: walk the fibers
  of the degree-graded monoid in increasing degree and add one relation per
  extra connected component.
* :func:`relations_equivalent` -- mutual derivability by bounded rewriting.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _linalg as la
from . import kernels
from .cones import RationalCone, dual_cone
from .errors import DimensionError, PreconditionError
from .lattice import CurveClass, DivisorClass, IntersectionForm, pair

__all__ = [
    "MonoidRelation",
    "WitnessDivisors",
    "WitnessCheck",
    "verify_relation",
    "check_witnesses",
    "generating_relations",
    "oracle_relations",
    "relations_equivalent",
    "underivable",
    "expand_orbits",
    "graver_basis",
    "elimination_order",
]


class MonoidRelation:
    """``sum(c_i for i in lhs) == sum(c_j for j in rhs)``.

    Sides are multisets of 0-based core indices, stored sorted.  Two
    relations are equal when they agree up to swapping the sides.
    """

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Iterable[int], rhs: Iterable[int]):
        lhs = tuple(sorted(lhs))
        rhs = tuple(sorted(rhs))
        for i in lhs + rhs:
            if not isinstance(i, int) or i < 0:
                raise IndexError(f"bad core index {i!r}")
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    def __setattr__(self, name, value):
        raise AttributeError("MonoidRelation is immutable")

    @classmethod
    def from_vector(cls, x: Sequence[int]) -> "MonoidRelation":
        """Relation whose lhs/rhs are the positive/negative parts of a kernel vector."""
        lhs, rhs = [], []
        for i, v in enumerate(x):
            if v > 0:
                lhs.extend([i] * v)
            elif v < 0:
                rhs.extend([i] * -v)
        return cls(lhs, rhs)

    def vector(self, n: int) -> tuple:
        out = [0] * n
        for i in self.lhs:
            out[i] += 1
        for i in self.rhs:
            out[i] -= 1
        return tuple(out)

    def sides(self, n: int) -> tuple:
        """The two sides as count vectors of length n."""
        a = [0] * n
        b = [0] * n
        for i in self.lhs:
            a[i] += 1
        for i in self.rhs:
            b[i] += 1
        return tuple(a), tuple(b)

    @property
    def max_index(self) -> int:
        return max(self.lhs + self.rhs, default=-1)

    @property
    def max_coefficient(self) -> int:
        c = Counter(self.lhs) + Counter(self.rhs)
        return max(c.values(), default=0)

    def key(self):
        return min((self.lhs, self.rhs), (self.rhs, self.lhs))

    def __eq__(self, other):
        return isinstance(other, MonoidRelation) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MonoidRelation({list(self.lhs)}, {list(self.rhs)})"

    def format(self, one_based: bool = True) -> str:
        """``1+2 = 3+3+4`` style."""
        off = 1 if one_based else 0

        def side(s):
            return "+".join(str(i + off) for i in s)

        return f"{side(self.lhs)} = {side(self.rhs)}"


@dataclass(frozen=True)
class WitnessDivisors:
    """An ordering of the core with witness divisors for its leading classes.

    ``order[k]`` is the core index placed at position k; ``divisors[k]`` is
    the divisor D attached to position k, or None to have one derived.  The
    lemma wants one divisor for each position before the spanning tail of
    rho+1 classes.
    """

    order: tuple
    divisors: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "divisors", tuple(
            d if d is None or isinstance(d, DivisorClass) else DivisorClass(d)
            for d in self.divisors))
        if len(set(self.order)) != len(self.order):
            raise PreconditionError("witness order repeats a core index")
        if len(self.divisors) > len(self.order):
            raise PreconditionError("more witness divisors than ordered core classes")


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of validating witnesses against the lemma's hypotheses."""

    required: int
    supplied: int       # supplied divisors inside the required range
    derived: tuple      # positions whose divisor was derived, not supplied
    extra: int          # supplied divisors beyond the required range
    divisors: tuple     # the full list used, positions 0..required-1


def verify_relation(family, rel: MonoidRelation) -> bool:
    """Both sides sum to the same class and share no index."""
    core = family.core if hasattr(family, "core") else family
    n = len(core)
    for i in rel.lhs + rel.rhs:
        if i >= n:
            raise IndexError(f"core index {i + 1} out of range (core has {n} classes)")
    if not rel.lhs or not rel.rhs:
        return False
    if set(rel.lhs) & set(rel.rhs):
        return False
    rank = len(core[0])
    left = [0] * rank
    for i in rel.lhs:
        left = [a + b for a, b in zip(left, core[i])]
    right = [0] * rank
    for i in rel.rhs:
        right = [a + b for a, b in zip(right, core[i])]
    return left == right


def _coords(c):
    return tuple(c.coords) if hasattr(c, "coords") else tuple(c)


def graver_basis(core: Sequence) -> list:
    """Graver basis (both signs) of {x in Z^n : sum x_i c_i = 0}."""
    vecs = [_coords(c) for c in core]
    if not vecs:
        return []
    rows = la.transpose(vecs)
    basis = la.integer_kernel(rows, len(vecs))
    if not basis:
        return []
    return kernels.graver_completion(basis)


def _tail_start(ordered):
    """Index where the spanning tail of rho+1 classes begins (may be negative)."""
    rho = la.rank([_coords(c) for c in ordered]) if ordered else 0
    return len(ordered) - rho - 1, rho


def check_witnesses(core: Sequence, witnesses: WitnessDivisors,
                    form: IntersectionForm) -> WitnessCheck:
    """Validate the lemma's hypotheses, deriving missing witness divisors.

    Raises PreconditionError naming the failing (i, j) pair when a supplied
    divisor is wrong, or when a needed one cannot exist (c_i lies in the
    cone over the later classes).  Positions are 1-based in messages.
    """
    order = witnesses.order
    if sorted(order) != list(range(len(core))):
        raise PreconditionError("witness order must be a permutation of the core indices")
    ordered = [CurveClass(_coords(core[o])) for o in order]
    start, rho = _tail_start(ordered)
    required = max(start, 0)
    if len(ordered) > rho:
        tail = [_coords(c) for c in ordered[start:]]
        if la.rank(tail) != rho:
            raise PreconditionError(
                f"the last {rho + 1} ordered core classes do not span the core lattice")
    divisors = []
    derived = []
    for i in range(required):
        if i < len(witnesses.divisors) and witnesses.divisors[i] is not None:
            d = witnesses.divisors[i]
            if pair(form, d, ordered[i]) >= 0:
                raise PreconditionError(
                    f"witness {i + 1}: c_{i + 1} . D_{i + 1} = {pair(form, d, ordered[i])} is not negative",
                )
            for j in range(i + 1, len(ordered)):
                if pair(form, d, ordered[j]) < 0:
                    raise PreconditionError(
                        f"witness {i + 1}: c_{j + 1} . D_{i + 1} < 0 for (i, j) = ({i + 1}, {j + 1})")
        else:
            d = _derive_witness(ordered, i, form)
            if d is None:
                raise PreconditionError(
                    f"no witness divisor exists for position {i + 1}: "
                    "the class lies in the cone over the later classes")
            derived.append(i)
        divisors.append(d)
    supplied = sum(d is not None for d in witnesses.divisors[:required])
    extra = max(len(witnesses.divisors) - required, 0)
    return WitnessCheck(required, supplied, tuple(derived), extra, tuple(divisors))


def elimination_order(core: Sequence) -> tuple:
    """An ordering of the core usable with derived witnesses.

    Repeatedly move to the front a class that is not in the cone over the
    remaining ones (an extreme ray of what is left), preferring the lowest
    index, until rho + 1 classes remain.  Returns core indices.
    """
    vecs = [_coords(c) for c in core]
    n = len(vecs)
    if n == 0:
        return ()
    rho = la.rank(vecs)
    left = list(range(n))
    order = []
    while len(left) > rho + 1:
        for k in left:
            rest = RationalCone([vecs[j] for j in left if j != k], dim=len(vecs[0]))
            if not rest.contains(vecs[k]):
                order.append(k)
                left.remove(k)
                break
        else:
            raise PreconditionError("core cone is not pointed; no elimination order exists")
    return tuple(order + left)


def _derive_witness(ordered, i, form):
    """A divisor D with c_i . D < 0 <= c_j . D (j > i), if one exists."""
    later = RationalCone([c.coords for c in ordered[i + 1:]], dim=form.rank, kind="curve")
    dual = dual_cone(later, form)
    for g in dual.generators:
        d = DivisorClass(g)
        if pair(form, d, ordered[i]) < 0:
            return d
    return None


def generating_relations(core: Sequence, witnesses: WitnessDivisors,
                         form: IntersectionForm, graver: Optional[list] = None,
                         max_degree: Optional[int] = None,
                         grading: Optional[Sequence[int]] = None) -> list:
    """Generating relations of the monoid spanned by ``core``.

    For each ordered position i this returns, for every minimal positive
    part (r, a) with r >= 1 copies of c_i, one relation rewriting it into
    the later classes, plus the unique relation among the spanning tail.
    Indices in the output refer to ``core`` (not to the witness ordering).

    With ``max_degree`` unset the minimal parts are read off the Graver
    basis, which is exact but grows quickly with the number of classes; it
    may be passed in (core order) to avoid recomputing it.  With
    ``max_degree`` set, positive parts are searched directly up to that
    degree under ``grading`` (defaults as in ``oracle_relations``), which
    yields exactly the minimal parts of degree <= max_degree.
    """
    check_witnesses(core, witnesses, form)
    n = len(core)
    if n == 0:
        return []
    order = witnesses.order
    ordered = [_coords(core[o]) for o in order]
    start, rho = _tail_start(ordered)
    if n <= rho:
        return []
    tail = max(start, 0)
    out = set()
    if max_degree is not None:
        degs = _degree_functional(ordered, grading)
        if any(d <= 0 for d in degs):
            raise PreconditionError("grading must be strictly positive on the core")
        for i in range(tail):
            for g in _minimal_rewrites(ordered, degs, i, max_degree):
                out.add(_reorder(g, order))
        k = la.integer_kernel(la.transpose(ordered[tail:], len(ordered[0])), n - tail)
        out.add(_reorder((0,) * tail + tuple(k[0]), order))
        return sorted(out)
    if graver is None:
        graver = graver_basis(ordered)
    else:
        graver = [tuple(g[o] for o in order) for g in graver]
    for i in range(tail):
        cands = [g for g in graver if g[i] > 0 and not any(g[:i])]
        heads = {tuple(max(x, 0) for x in g[i:]) for g in cands}
        minimal = {h for h in heads
                   if not any(o != h and all(a <= b for a, b in zip(o, h)) for o in heads)}
        chosen = {}
        for g in sorted(cands):
            h = tuple(max(x, 0) for x in g[i:])
            if h in minimal and h not in chosen:
                chosen[h] = g
        for g in chosen.values():
            out.add(_reorder(g, order))
    for g in graver:
        if not any(g[:tail]):
            out.add(_reorder(g, order))
    return sorted(out)


def _minimal_rewrites(vecs, degs, i, cap):
    """Minimal p (support >= i, p_i >= 1, degree <= cap) whose sum the classes
    after i, outside supp(p), also reach; one rewrite per p."""
    n = len(vecs)
    rest = list(range(i, n))
    pts = [p for p in kernels.multisets_by_degree([degs[k] for k in rest], cap) if p[0] >= 1]
    pts.sort(key=lambda p: (sum(c * degs[k] for c, k in zip(p, rest)), p))
    heads = []
    out = []
    for p in pts:
        if any(all(a <= b for a, b in zip(h, p)) for h in heads):
            continue
        v = tuple(sum(c * vecs[k][j] for c, k in zip(p, rest)) for j in range(len(vecs[0])))
        allowed = [k for c, k in zip(p, rest) if c == 0]
        b = _reach(v, sum(c * degs[k] for c, k in zip(p, rest)), allowed, vecs, degs)
        if b is None:
            continue
        heads.append(p)
        g = [0] * n
        for c, k in zip(p, rest):
            g[k] += c
        for k, c in b.items():
            g[k] -= c
        out.append(tuple(g))
    return out


def _reach(v, d, allowed, vecs, degs):
    """Counts b on ``allowed`` with sum b_k vecs[k] == v, or None."""
    dead = set()
    pick = {}

    def rec(j, v, d):
        if d == 0:
            return not any(v)
        if j == len(allowed) or (j, v) in dead:
            return False
        k = allowed[j]
        c = d // degs[k]
        while c >= 0:
            w = tuple(x - c * y for x, y in zip(v, vecs[k]))
            if rec(j + 1, w, d - c * degs[k]):
                if c:
                    pick[k] = c
                return True
            c -= 1
        dead.add((j, v))
        return False

    return pick if rec(0, v, d) else None


def _reorder(g, order):
    x = [0] * len(order)
    for k, o in enumerate(order):
        x[o] = g[k]
    return MonoidRelation.from_vector(x)


def _degree_functional(core, grading):
    if grading is not None:
        return [la.dot(grading, c) for c in core]
    cone = RationalCone(core)
    if not cone.is_pointed():
        raise PreconditionError("core classes span a cone containing a line")
    w = [sum(col) for col in zip(*cone.facets)] if cone.facets else [0] * cone.dim
    return [la.dot(w, c) for c in core]


def oracle_relations(core: Sequence, coeff_bound: int,
                     grading: Optional[Sequence[int]] = None,
                     max_degree: Optional[int] = None) -> list:
    """Minimal relations found by exhaustive fiber enumeration.

    Multisets are graded by ``grading`` (a functional on the curve lattice,
    strictly positive on the core; defaults to the sum of the facet normals
    of the core cone).  All multisets of degree at most
    ``coeff_bound * (least core degree)`` are enumerated; each coefficient
    is then at most ``coeff_bound`` and every fiber below the cap is
    complete.  Fibers are processed in increasing degree: the relations
    found so far glue elements into components, and each fiber with m
    components contributes m - 1 new relations.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be at least 1")
    vecs = [_coords(c) for c in core]
    n = len(vecs)
    if n == 0:
        return []
    degs = _degree_functional(vecs, grading)
    if any(d <= 0 for d in degs):
        raise PreconditionError("grading must be strictly positive on the core")
    cap = coeff_bound * min(degs) if max_degree is None else max_degree
    pts = kernels.multisets_by_degree(degs, cap)
    rank = len(vecs[0])
    fibers = {}
    for x in pts:
        if not any(x):
            continue
        s = tuple(sum(x[i] * vecs[i][k] for i in range(n) if x[i]) for k in range(rank))
        fibers.setdefault(s, []).append(x)
    by_degree = sorted(fibers.items(),
                       key=lambda kv: (sum(a * b for a, b in zip(kv[1][0], degs)), kv[0]))
    moves = []  # (from, to) pairs, both orientations
    found = []
    for _, fib in by_degree:
        if len(fib) < 2:
            continue
        comps = _components(fib, moves)
        if len(comps) < 2:
            continue
        reps = sorted(min(c) for c in comps)
        base = reps[0]
        for other in reps[1:]:
            rel = MonoidRelation.from_vector([a - b for a, b in zip(base, other)])
            found.append(rel)
            a, b = rel.sides(n)
            moves.append((a, b))
            moves.append((b, a))
    return sorted(set(found))


def _components(fib, moves):
    index = {x: k for k, x in enumerate(fib)}
    parent = list(range(len(fib)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, x in enumerate(fib):
        for a, b in moves:
            if all(xi >= ai for xi, ai in zip(x, a)):
                y = tuple(xi - ai + bi for xi, ai, bi in zip(x, a, b))
                j = index.get(y)
                if j is not None:
                    ra, rb = find(k), find(j)
                    if ra != rb:
                        parent[ra] = rb
    groups = {}
    for k, x in enumerate(fib):
        groups.setdefault(find(k), []).append(x)
    return list(groups.values())


def _derivable(rel, moves, n, bound):
    """BFS from one side of ``rel`` to the other, coefficients capped at ``bound``."""
    start, goal = rel.sides(n)
    if start == goal:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for a, b in moves:
            if all(xi >= ai for xi, ai in zip(x, a)):
                y = tuple(xi - ai + bi for xi, ai, bi in zip(x, a, b))
                if y in seen or any(v > bound for v in y):
                    continue
                if y == goal:
                    return True
                seen.add(y)
                queue.append(y)
    return False


def relations_equivalent(set_a: Iterable[MonoidRelation], set_b: Iterable[MonoidRelation],
                         coeff_bound: int, n: Optional[int] = None) -> bool:
    """Each set derives every relation of the other with coefficients <= coeff_bound.

    Derivation is rewriting: replace an occurrence of one side of a known
    relation by its other side, never exceeding ``coeff_bound`` in any
    coefficient along the way.
    """
    set_a = list(set_a)
    set_b = list(set_b)
    if n is None:
        n = max([r.max_index for r in set_a + set_b], default=-1) + 1
    return (_all_derivable(set_a, set_b, n, coeff_bound)
            and _all_derivable(set_b, set_a, n, coeff_bound))


def underivable(targets, generators, coeff_bound, n=None) -> list:
    """Relations of ``targets`` (within the bound) not derivable from ``generators``."""
    targets = list(targets)
    generators = list(generators)
    if n is None:
        n = max([r.max_index for r in targets + generators], default=-1) + 1
    moves = _moves(generators, n, coeff_bound)
    return [r for r in targets
            if r.max_coefficient <= coeff_bound and not _derivable(r, moves, n, coeff_bound)]


def _moves(rels, n, bound):
    out = []
    for r in rels:
        if r.max_coefficient > bound:
            continue
        a, b = r.sides(n)
        out.append((a, b))
        out.append((b, a))
    return out


def _all_derivable(targets, generators, n, bound):
    moves = _moves(generators, n, bound)
    return all(_derivable(r, moves, n, bound) for r in targets if r.max_coefficient <= bound)


def expand_orbits(relations: Iterable[MonoidRelation], core: Sequence,
                  matrices: Sequence) -> tuple:
    """Close a relation list under the group generated by ``matrices``.

    Each matrix acts on curve coordinates (column j is the image of basis
    vector j).  A relation maps to a relation when every class it uses maps
    into the core; images leaving the core are counted, not kept.
    Returns ``(relations, dropped)``.
    """
    vecs = [_coords(c) for c in core]
    index = {v: i for i, v in enumerate(vecs)}
    perms = []
    for m in matrices:
        img = [index.get(la.matvec(m, v)) for v in vecs]
        perms.append(img)
    out = set(relations)
    frontier = list(out)
    dropped = 0
    while frontier:
        nxt = []
        for rel in frontier:
            for img in perms:
                idx = rel.lhs + rel.rhs
                if any(img[i] is None for i in idx):
                    dropped += 1
                    continue
                new = MonoidRelation([img[i] for i in rel.lhs], [img[i] for i in rel.rhs])
                if new not in out:
                    out.add(new)
                    nxt.append(new)
        frontier = nxt
    return sorted(out), dropped
