import pytest
from hypothesis import assume, given, strategies as st

from freecurves import _linalg as la
from freecurves.errors import PreconditionError
from freecurves.familydb import load_family
from freecurves.lattice import CurveClass, DivisorClass, IntersectionForm
from freecurves.relations import (MonoidRelation, WitnessDivisors, check_witnesses,
                                  elimination_order, expand_orbits, generating_relations,
                                  graver_basis, oracle_relations, relations_equivalent,
                                  underivable, verify_relation)

STD2 = IntersectionForm(((1, 0), (0, 1)))


def R(lhs, rhs):
    return MonoidRelation(lhs, rhs)


def test_relation_normal_form():
    assert R([2, 0], [1, 1]) == R([1, 1], [0, 2])
    assert R([0, 2], [1, 1]).format() == "1+3 = 2+2"
    assert MonoidRelation.from_vector((1, -2, 1)) == R([0, 2], [1, 1])
    with pytest.raises(IndexError):
        R([-1], [0])


def test_verify_relation():
    core = [CurveClass((1, 0)), CurveClass((1, 1)), CurveClass((1, 2))]
    assert verify_relation(core, R([0, 2], [1, 1]))
    assert not verify_relation(core, R([0, 1], [2]))
    assert not verify_relation(core, R([0, 1], [0, 1]))
    with pytest.raises(IndexError):
        verify_relation(core, R([0, 5], [1, 1]))


def test_rational_normal_curve():
    # points (1, k), k = 0..3: the monoid of the twisted cubic, three quadrics
    core = [CurveClass((1, k)) for k in range(4)]
    w = WitnessDivisors(elimination_order(core), ())
    gen = generating_relations(core, w, STD2, grading=(1, 0))
    orc = oracle_relations(core, 6, (1, 0))
    assert sorted(orc) == sorted([R([0, 2], [1, 1]), R([0, 3], [1, 2]), R([1, 3], [2, 2])])
    assert relations_equivalent(gen, orc, 6, 4)
    assert all(verify_relation(core, r) for r in gen)


def test_missing_relation_detected():
    core = [CurveClass((1, k)) for k in range(4)]
    orc = oracle_relations(core, 6, (1, 0))
    partial = orc[:-1]
    assert not relations_equivalent(partial, orc, 6, 4)
    assert underivable(orc, partial, 6, 4) == [orc[-1]]


def test_bad_witness_rejected():
    core = [CurveClass((1, 0)), CurveClass((1, 1)), CurveClass((1, 2)), CurveClass((1, 3))]
    bad = WitnessDivisors((0, 1, 2, 3), (DivisorClass((1, 0)),))
    with pytest.raises(PreconditionError):
        check_witnesses(core, bad, STD2)


def test_graver_basis_in_kernel():
    core = [CurveClass((1, k)) for k in range(4)]
    for g in graver_basis(core):
        assert all(sum(g[i] * core[i][j] for i in range(4)) == 0 for j in range(2))


def test_expand_orbits_swap():
    core = [CurveClass(v) for v in [(2, 0), (0, 2), (1, 1), (2, 1), (1, 2)]]
    swap = ((0, 1), (1, 0))
    rels, dropped = expand_orbits([R([0, 4], [2, 3])], core, [swap])
    assert dropped == 0
    assert set(rels) == {R([0, 4], [2, 3]), R([1, 3], [2, 4])}


@st.composite
def small_cores(draw):
    """Distinct primitive-ish classes (1, k) and (2, k) in a pointed rank-2 cone."""
    pts = draw(st.lists(st.tuples(st.integers(1, 2), st.integers(0, 4)),
                        min_size=3, max_size=5, unique=True))
    pts = [p for p in pts if la.primitive(p) == p]
    assume(len(pts) >= 3 and la.rank(pts) == 2)
    return [CurveClass(p) for p in pts]


def _degree(core, r):
    return sum(sum(core[i]) for i in r.lhs)


@given(small_cores())
def test_generated_matches_oracle(core):
    # the oracle sees only degrees <= 6 x (least core degree); the generator
    # may add a tail relation above that
    n = len(core)
    w = WitnessDivisors(elimination_order(core), ())
    cap = 6 * min(sum(c) for c in core)
    gen = generating_relations(core, w, STD2, grading=(1, 1), max_degree=cap)
    orc = oracle_relations(core, 6, (1, 1))
    assert all(verify_relation(core, r) for r in gen + orc)
    assert underivable(orc, gen, 6, n) == []
    low = [r for r in gen if _degree(core, r) <= cap]
    assert underivable(low, orc, 6, n) == []


@given(small_cores())
def test_exact_generator_is_sound(core):
    w = WitnessDivisors(elimination_order(core), ())
    gen = generating_relations(core, w, STD2, grading=(1, 1))
    assert all(verify_relation(core, r) for r in gen)
    assert underivable(oracle_relations(core, 6, (1, 1)), gen, 6, len(core)) == []


@given(small_cores(), st.randoms())
def test_tail_permutation_changes_presentation_only(core, rnd):
    order = list(elimination_order(core))
    rho = 2
    head, tail = order[:len(order) - rho - 1], order[len(order) - rho - 1:]
    rnd.shuffle(tail)
    cap = 6 * min(sum(c) for c in core)
    a = generating_relations(core, WitnessDivisors(tuple(order), ()), STD2, grading=(1, 1),
                             max_degree=cap)
    b = generating_relations(core, WitnessDivisors(tuple(head + tail), ()), STD2,
                             grading=(1, 1), max_degree=cap)
    assert relations_equivalent(a, b, 6, len(core))


def test_oracle_small_examples():
    e1, e2 = CurveClass((1, 0)), CurveClass((0, 1))
    assert oracle_relations([e1, e2], 5) == []
    assert oracle_relations([e1, e2, CurveClass((1, 1))], 3) == [R([2], [0, 1])]
    assert relations_equivalent([R([2], [0, 1])], [R([2], [0, 1])], 6, 3)
    assert not relations_equivalent([R([2], [0, 1])], [], 6, 3)


def _family_relations(fid, bound=6):
    rec = load_family(fid)
    grading = rec.pairing.divisor_functional(rec.anticanonical)
    w = rec.witnesses or WitnessDivisors(elimination_order(rec.core), ())
    cap = bound * min(rec.degree(c) for c in rec.core)
    return rec, generating_relations(rec.core, w, rec.pairing, grading=grading, max_degree=cap)


def test_family_5_2_three_relations():
    rec, gen = _family_relations("5.2")
    assert rec.witnesses.divisors[0] == DivisorClass((1, -1, 0, -1, -1))
    assert len(gen) == 3 and relations_equivalent(gen, rec.relations, 6, len(rec.core))


def test_independent_core_has_no_relations():
    rec, gen = _family_relations("3.23")
    assert gen == [] and rec.relations == ()


def test_family_4_8_single_relation():
    rec, gen = _family_relations("4.8")
    assert len(gen) == 1
    (r,) = gen
    names = sorted(rec.format_curve(rec.core[i]) for i in r.lhs + r.rhs)
    assert names == sorted(["l1 + l2 - e", "l3", "l1 + l3 - e", "l2"])


@pytest.mark.parametrize("fid", ["5.1", "4.13"])
def test_printed_lists_match_oracle_at_bound_4(fid):
    rec = load_family(fid)
    grading = rec.pairing.divisor_functional(rec.anticanonical)
    stored, _ = expand_orbits(rec.relations, rec.core, [p.matrix for p in rec.pseudosymmetries])
    assert relations_equivalent(stored, oracle_relations(rec.core, 4, grading), 4, len(rec.core))


@pytest.mark.parametrize("fid", ["2.2", "2.6", "2.21", "4.6"])
def test_capped_generator_matches_exact(fid):
    rec = load_family(fid)
    grading = rec.pairing.divisor_functional(rec.anticanonical)
    w = rec.witnesses or WitnessDivisors(elimination_order(rec.core), ())
    cap = 6 * min(rec.degree(c) for c in rec.core)
    capped = generating_relations(rec.core, w, rec.pairing, grading=grading, max_degree=cap)
    exact = generating_relations(rec.core, w, rec.pairing, grading=grading)
    assert relations_equivalent(capped, exact, 6, len(rec.core))
