"""Per-family cross-checks and the component census of Free(X, alpha).

:func:`verify_family` re-derives everything a family file claims (cones,
degree-window enumeration, relations, pseudosymmetries, monoid generation)
and reports one line per check.  :func:`census` classifies a nef class from
its cone position and the stored census flags; it never derives geometry.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from . import _linalg as la
from .cones import RationalCone, decompose, dual_cone, extreme_rays, hilbert_basis
from .enumerate import DegreeWindow, enumerate_lines, enumerate_nef_classes
from .errors import DomainError, PreconditionError
from .familydb import FamilyRecord, load_family
from .lattice import CurveClass, pair
from .relations import (WitnessDivisors, check_witnesses, elimination_order, expand_orbits,
                        generating_relations, oracle_relations, relations_equivalent,
                        underivable, verify_relation)

__all__ = [
    "CensusKind",
    "CensusResult",
    "CheckResult",
    "VerificationReport",
    "verify_family",
    "census",
    "check_shift_theorem",
    "relation_sets",
    "RELATION_BOUND",
]

RELATION_BOUND = 6
MAX_RAY_DEGREE = 5


class CensusKind(str, Enum):
    OUT_OF_DOMAIN = "OUT_OF_DOMAIN"
    EMPTY = "EMPTY"
    IRREDUCIBLE = "IRREDUCIBLE"
    TWO_COMPONENTS_MULTIPLE_COVER = "TWO_COMPONENTS_MULTIPLE_COVER"
    CONDITIONAL = "CONDITIONAL"


@dataclass(frozen=True)
class CensusResult:
    kind: CensusKind
    very_free_component: bool
    notes: str = ""

    def __post_init__(self):
        if self.kind is CensusKind.EMPTY and self.very_free_component:
            raise ValueError("an empty space has no very free component")

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "very_free_component": self.very_free_component,
                "notes": self.notes}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    family: str
    checks: tuple

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [f"family {self.family}: {'PASS' if self.overall else 'FAIL'}"]
        for c in self.checks:
            tail = f"  {c.detail}" if c.detail else ""
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{tail}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"family": self.family, "overall": self.overall,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in self.checks]}

    def to_structured(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)


# -- shared helpers ---------------------------------------------------------

def _degree_functional(rec):
    return rec.pairing.divisor_functional(rec.anticanonical)


def _witnesses(rec):
    return rec.witnesses or WitnessDivisors(elimination_order(rec.core), ())


def relation_sets(rec: FamilyRecord) -> tuple:
    """(stored relations expanded over pseudosymmetry orbits, generated, oracle)."""
    grading = _degree_functional(rec)
    cap = RELATION_BOUND * min(rec.degree(c) for c in rec.core)
    generated = generating_relations(rec.core, _witnesses(rec), rec.pairing,
                                     grading=grading, max_degree=cap)
    oracle = oracle_relations(rec.core, RELATION_BOUND, grading)
    stored, _ = expand_orbits(rec.relations, rec.core,
                              [p.matrix for p in rec.pseudosymmetries])
    return stored, generated, oracle


def _symmetry_closure(classes, syms):
    seen = set(classes)
    todo = list(seen)
    while todo:
        c = todo.pop()
        for m in syms:
            img = tuple(la.matvec(m, c))
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return seen


def _ne_cone(rec) -> RationalCone:
    """NE(X) when stored; otherwise the nef curve cone (a subcone of NE)."""
    if rec.mori_generators:
        return rec.mori_cone()
    return rec.nef_cone()


# -- verification -----------------------------------------------------------

def _check_pairing(rec):
    d = rec.pairing.determinant
    return CheckResult("a_pairing", abs(d) == 1, f"det = {d}")


def _check_core_window(rec):
    lo, hi = rec.window
    bad = []
    for i, c in enumerate(rec.core):
        deg = rec.degree(c)
        ok = 2 <= deg <= MAX_RAY_DEGREE if i in rec.window_exceptions else lo <= deg <= hi
        if not ok:
            bad.append(f"{rec.format_curve(c)} (degree {deg})")
    return CheckResult("b_core_window", not bad,
                       "outside window: " + ", ".join(bad) if bad else f"window [{lo}, {hi}]")


def _check_ray_degrees(rec):
    rays = extreme_rays(rec.nef_cone())
    degs = [(rec.format_curve(r), rec.degree(r)) for r in rays]
    bad = [f"{n} ({d})" for n, d in degs if not 1 <= d <= MAX_RAY_DEGREE]
    detail = ", ".join(f"{n}: {d}" for n, d in degs)
    return CheckResult("c_ray_degrees", not bad, "bad rays: " + ", ".join(bad) if bad else detail)


def _check_relations_hold(rec):
    bad = [r.format() for r in rec.relations if not verify_relation(rec, r)]
    return CheckResult("d_relations_hold", not bad,
                       "fail: " + "; ".join(bad) if bad else f"{len(rec.relations)} stored")


def _check_relations_generate(rec):
    n = len(rec.core)
    try:
        check_witnesses(rec.core, _witnesses(rec), rec.pairing)
        stored, generated, oracle = relation_sets(rec)
    except PreconditionError as exc:
        return CheckResult("e_relations_generate", False, str(exc))
    gen_ok = relations_equivalent(stored, generated, RELATION_BOUND, n)
    orc_ok = relations_equivalent(stored, oracle, RELATION_BOUND, n)
    detail = f"stored {len(stored)}, generated {len(generated)}, oracle {len(oracle)}"
    if not (gen_ok and orc_ok):
        missing = underivable(oracle, stored, RELATION_BOUND, n)
        detail += "; not derivable from stored: " + "; ".join(r.format() for r in missing[:5])
    return CheckResult("e_relations_generate", gen_ok and orc_ok, detail)


def _check_enumeration(rec):
    found = {c.coords for c in enumerate_nef_classes(rec, DegreeWindow(*rec.window))}
    syms = [p.matrix for p in rec.pseudosymmetries]
    lo, hi = rec.window
    stored = {c.coords for c in rec.core} | {a.cls.coords for a in rec.extras + rec.omissions}
    expanded = {c for c in _symmetry_closure(stored, syms)
                if lo <= rec.degree(c) <= hi} | {c.coords for c in rec.core}
    problems = []
    missing = found - expanded
    extra = expanded - found - {rec.core[i].coords for i in rec.window_exceptions}
    if missing:
        problems.append("unlisted: " + ", ".join(sorted(rec.format_curve(c) for c in missing)))
    if extra:
        problems.append("not nef or out of window: "
                        + ", ".join(sorted(rec.format_curve(c) for c in extra)))
    for a in rec.omissions:
        c = a.cls
        if not (lo <= rec.degree(c) <= hi
                and all(pair(rec.pairing, d, c) >= 0 for d in rec.effective_generators)):
            problems.append(f"omission {rec.format_curve(c)} fails the inequalities")
    return CheckResult("f_enumeration", not problems,
                       "; ".join(problems) if problems else f"{len(found)} classes")


def _check_pseudosymmetries(rec):
    if not rec.pseudosymmetries:
        return CheckResult("g_pseudosymmetry", True, "none stored")
    nef = rec.nef_cone()
    problems = []
    lo, hi = rec.window
    ident = la.identity(rec.rank)
    for p in rec.pseudosymmetries:
        if la.det(p.matrix) not in (1, -1):
            problems.append(f"{p.name}: not unimodular")
        if p.involution and la.matmul(p.matrix, p.matrix) != ident:
            problems.append(f"{p.name}: square is not the identity")
        for j in range(rec.rank):
            e = CurveClass.basis(rec.rank, j)
            if rec.degree(p.apply(e)) != rec.degree(e):
                problems.append(f"{p.name}: changes the degree of basis vector {j + 1}")
        for g in nef.generators:
            if not nef.contains(la.matvec(p.matrix, g)):
                problems.append(f"{p.name}: moves nef ray {rec.format_curve(g)} out of the cone")
        for c in rec.core:
            img = p.apply(c)
            if lo <= rec.degree(img) <= hi and not nef.contains(img.coords):
                problems.append(f"{p.name}: image of {rec.format_curve(c)} is not nef")
    names = ", ".join(p.name for p in rec.pseudosymmetries)
    return CheckResult("g_pseudosymmetry", not problems,
                       "; ".join(problems) if problems else names)


def _check_gordan(rec):
    hb = hilbert_basis(rec.nef_cone())
    known = {c.coords for c in rec.core} | {a.cls.coords for a in rec.extras + rec.omissions}
    if rec.mori_generators:
        known |= {c.coords for c in enumerate_lines(rec)}
    uncovered = [h for h in hb if tuple(h) not in known]
    return CheckResult("h_gordan", not uncovered,
                       "uncovered: " + ", ".join(rec.format_curve(h) for h in uncovered)
                       if uncovered else f"{len(hb)} Hilbert basis elements covered")


_CHECKS = (_check_pairing, _check_core_window, _check_ray_degrees, _check_relations_hold,
           _check_relations_generate, _check_enumeration, _check_pseudosymmetries,
           _check_gordan)


def verify_family(family, directory=None) -> VerificationReport:
    """Run checks (a) to (h) on a family id or record.

    Reduction records carry no data; their report checks that the target
    loads and is not itself missing.
    """
    rec = family if isinstance(family, FamilyRecord) else load_family(family, directory)
    if rec.is_reduction:
        target = load_family(rec.reduces_to, directory)
        return VerificationReport(rec.id, (CheckResult("reduces_to", True,
                                                       f"{rec.reduces_to} ({target.status})"),))
    return VerificationReport(rec.id, tuple(check(rec) for check in _CHECKS))


# -- census -----------------------------------------------------------------

def _multiple_of(alpha, beta) -> Optional[int]:
    """n with alpha == n * beta (n >= 1), or None."""
    n = None
    for a, b in zip(alpha, beta):
        if b == 0:
            if a != 0:
                return None
            continue
        if a % b:
            return None
        k = a // b
        if n is None:
            n = k
        elif n != k:
            return None
    return n if n is not None and n >= 1 else None


def census(family: FamilyRecord, alpha) -> CensusResult:
    """Classify the components of Free(X, alpha) for a nef class alpha."""
    if family.is_reduction:
        raise DomainError(f"{family.id} is a reduction record; use {family.reduces_to}")
    a = tuple(alpha)
    if len(a) != family.rank:
        raise DomainError(f"class has {len(a)} coordinates, family {family.id} has rank {family.rank}")
    if not family.nef_cone().contains(a):
        raise DomainError(f"{family.format_curve(a)} is not nef")
    flags = family.census
    notes = []
    if flags.requires_generality:
        notes.append("requires_generality")
    deg = family.degree(a)
    if deg < 2:
        return CensusResult(CensusKind.OUT_OF_DOMAIN, False, _join(notes + [f"degree {deg} < 2"]))
    for line in flags.c1_lines:
        n = _multiple_of(a, line.coords)
        if n is not None and n % 2 == 1:
            return CensusResult(CensusKind.EMPTY, False,
                                _join(notes + [f"odd multiple of C1 line {family.format_curve(line)}"]))
    ne = _ne_cone(family)
    very_free = deg >= 4 and ne.is_interior(a)
    if not family.mori_generators:
        notes.append("interiority tested against the nef cone")
    conic = flags.interior_conic
    if conic is not None:
        n = _multiple_of(a, conic.coords)
        if n is not None and n > 1:
            return CensusResult(CensusKind.TWO_COMPONENTS_MULTIPLE_COVER, very_free,
                                _join(notes + [f"{n} x {family.format_curve(conic)}"]))
    for cone in flags.dp_cones:
        if cone.contains(a):
            return CensusResult(CensusKind.CONDITIONAL, very_free,
                                _join(notes + ["dp-fibration case"]))
    if flags.half_ksq is not None and family.kx3 == 6 and a == flags.half_ksq.coords:
        return CensusResult(CensusKind.CONDITIONAL, very_free,
                            _join(notes + ["half-K-squared case"]))
    return CensusResult(CensusKind.IRREDUCIBLE, very_free, _join(notes))


def _join(parts):
    return "; ".join(parts)


# -- shift theorem ----------------------------------------------------------

def _in_monoid(v, gens, cone) -> bool:
    if not any(v):
        return True
    if not cone.contains(v):
        return False
    return decompose(v, gens, cone) is not None


def _allowed_gap(rec, v) -> bool:
    """Classes a theorem may leave unrepresented: odd multiples of C1 lines."""
    for line in rec.census.c1_lines:
        n = _multiple_of(v, line.coords)
        if n is not None and n % 2 == 1:
            return True
    return False


def _shift_certificate(rec, tau, max_multiple=6):
    """Exact check that every nonzero alpha in tau + Nef_1 lies in N(core + aux).

    Hilbert basis elements h of Nef_1 already in the monoid S are harmless.
    For each remaining h take the least m_h with m_h * h in S; every alpha is
    then tau + y + (element of S) + sum q_h m_h h for a residue y in the box
    0 <= k_h < m_h.  A residue with tau + y outside S must be an allowed gap,
    must land in S after adding any good Hilbert basis element, and each
    chain tau + y + q m_h h must either enter S or consist of allowed gaps.
    Returns (ok, detail).
    """
    gens = [c.coords for c in rec.core] + [c.coords for c in rec.census.aux]
    cone = RationalCone(gens, dim=rec.rank)
    hb = [tuple(h) for h in hilbert_basis(rec.nef_cone())]
    good = [h for h in hb if _in_monoid(h, gens, cone)]
    bad = [h for h in hb if h not in good]
    mult = {}
    for h in bad:
        for m in range(2, max_multiple + 1):
            if _in_monoid(tuple(m * x for x in h), gens, cone):
                mult[h] = m
                break
        else:
            return False, f"no multiple of {rec.format_curve(h)} up to {max_multiple} is spanned"
    t = tuple(tau)
    add = lambda *vs: tuple(sum(xs) for xs in zip(*vs))
    scale = lambda k, v: tuple(k * x for x in v)
    for ks in itertools.product(*(range(mult[h]) for h in bad)):
        y = add(t, *(scale(k, h) for k, h in zip(ks, bad))) if bad else t
        if not any(y):
            continue
        if _in_monoid(y, gens, cone):
            continue
        name = rec.format_curve(y)
        if not _allowed_gap(rec, y):
            return False, f"{name} is not spanned"
        for g in good:
            if not _in_monoid(add(y, g), gens, cone):
                return False, f"{name} + {rec.format_curve(g)} is not spanned"
        chains = []
        for h in bad:
            step = add(y, scale(mult[h], h))
            if _in_monoid(step, gens, cone):
                continue
            if not all(_allowed_gap(rec, add(y, scale(q * mult[h], h))) for q in (1, 2)):
                return False, f"{rec.format_curve(step)} is not spanned"
            chains.append(h)
        for h1, h2 in itertools.combinations(chains, 2):
            v = add(y, scale(mult[h1], h1), scale(mult[h2], h2))
            if not _in_monoid(v, gens, cone):
                return False, f"{rec.format_curve(v)} is not spanned"
    return True, f"{len(good)} spanned and {len(bad)} residual Hilbert basis elements"


def check_shift_theorem(family: FamilyRecord, detail: bool = False):
    """True iff every stored tau passes the monoid-generation certificate."""
    if family.is_reduction or not family.tau:
        raise DomainError(f"{family.id}: no shift class stored")
    notes = []
    ok = True
    for tau in family.tau:
        good, why = _shift_certificate(family, tau)
        ok = ok and good
        notes.append(f"tau {family.format_curve(tau)}: {why}")
    return (ok, "; ".join(notes)) if detail else ok
