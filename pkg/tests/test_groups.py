import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import GRAPHS, algebra, random_object, spheres
from sphertwist.dg import iso_up_to_shift
from sphertwist.errors import (
    DNotGreaterThanOne,
    InvalidParameter,
    NotDistinct,
    PreconditionFailed,
    SizeCapExceeded,
    ZeroPower,
)
from sphertwist.groups import (
    TwistWord,
    apply_word,
    braid_relation_check,
    classify_pair,
    commute_test,
    pingpong_verify,
)
from sphertwist.spherical import SphericalObject, i_total, inverse_twist, twist
from sphertwist.zigzag import MultiGraph, build_zigzag, projective_spherical

letters = st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([-2, -1, 1, 2])), max_size=3)


def same(x, y, l=0):
    iso = iso_up_to_shift(x, y)
    return iso is not None and iso.shift == l


# -- words ------------------------------------------------------------------------------


def test_word_parsing_and_printing():
    w = TwistWord.parse("1:2 2:-1 1")
    assert w.letters == ((1, 2), (2, -1), (1, 1))
    assert str(w) == "T1^2 T2^-1 T1^1"
    assert str(TwistWord()) == "id"
    assert w.to_json() == [[1, 2], [2, -1], [1, 1]]


def test_word_validation():
    with pytest.raises(ZeroPower):
        TwistWord(((1, 0),))
    with pytest.raises(InvalidParameter):
        TwistWord(((3, 1),))


@given(letters)
def test_reduction_and_inverse(ls):
    w = TwistWord(tuple(ls))
    r = w.reduced()
    assert r.is_reduced
    assert r.reduced() == r
    assert w.inverse().inverse() == w
    assert TwistWord(w.letters + w.inverse().letters).reduced() == TwistWord()


def test_rightmost_letter_acts_first():
    e = spheres(algebra("edge"))
    gens = {1: e[1], 2: e[2]}
    out = apply_word(TwistWord(((1, 1), (2, 1))), e[1].obj, gens)
    assert same(twist(e[1], twist(e[2], e[1].obj)), out)
    # acting in the other order gives T2(T1(P1)) = T2(P1[-1]), which differs
    assert not same(twist(e[2], twist(e[1], e[1].obj)), out)


@given(st.sampled_from(sorted(GRAPHS)), letters, st.integers(0, 2**32 - 1))
@settings(max_examples=20)
def test_inverse_word_undoes_word(name, ls, seed):
    alg = algebra(name)
    sph = spheres(alg)
    gens = {1: sph[1], 2: sph[2]}
    w = TwistWord(tuple(ls))
    m = random_object(alg, np.random.default_rng(seed), twists=1)
    moved = apply_word(w, m, gens)
    assert same(m, apply_word(w.inverse(), moved, gens))
    assert i_total(moved, apply_word(w, sph[1].obj, gens)) == i_total(m, sph[1].obj)


def test_size_cap():
    e = spheres(algebra("double-edge"))
    with pytest.raises(SizeCapExceeded):
        apply_word(TwistWord(((1, 3), (2, 3))), e[1].obj, {1: e[1], 2: e[2]}, size_cap=5)


# -- classification -----------------------------------------------------------------------


def test_classification_of_the_canonical_pairs():
    e = spheres(algebra("edge"))
    c = classify_pair(e[1], e[2])
    assert (c.kind, c.intersection_number, c.summary()) == ("Braid", 1, "Braid(B3), l=0")
    e = spheres(algebra("disjoint-pair"))
    c = classify_pair(e[1], e[2])
    assert (c.kind, c.intersection_number, c.summary()) == ("Commuting", 0, "Commuting(ZxZ), l=0")
    e = spheres(algebra("double-edge"))
    c = classify_pair(e[1], e[2], max_word_length=2)
    assert c.kind == "Free" and c.intersection_number == 2
    assert c.summary() == "Free(F2), certificate: OK@len2"
    assert json.loads(json.dumps(c.to_json()))["witness"]["certificate"]["certified"]


def test_classification_witness_shift_follows_the_inputs():
    alg = algebra("edge")
    e1, e2 = projective_spherical(alg, 1), projective_spherical(alg, 2, 3)
    c = classify_pair(e1, e2)
    out = apply_word(TwistWord(((1, 1), (2, 1))), e1.obj, {1: e1, 2: e2})
    assert same(e2.obj, out, c.witness["l"])


def test_classification_rejects_equal_objects():
    e = spheres(algebra("edge"))
    with pytest.raises(NotDistinct):
        classify_pair(e[1], e[1].shift(4))


def test_classification_needs_d_above_one():
    e = spheres(algebra("edge"))
    flat1 = SphericalObject(e[1].obj, 1, e[1].eps)
    flat2 = SphericalObject(e[2].obj, 1, e[2].eps)
    with pytest.raises(DNotGreaterThanOne):
        classify_pair(flat1, flat2)
    with pytest.raises(InvalidParameter):
        classify_pair(e[1], flat2)


def test_braid_relation():
    assert braid_relation_check(*spheres(algebra("edge")).values())
    assert not braid_relation_check(*spheres(algebra("double-edge")).values())
    assert not braid_relation_check(*spheres(algebra("disjoint-pair")).values())


def test_braid_relation_on_objects():
    """T1 T2 T1 = T2 T1 T2 holds on every object of a single edge."""
    e = spheres(algebra("edge"))
    gens = {1: e[1], 2: e[2]}
    rng = np.random.default_rng(3)
    for _ in range(5):
        m = random_object(algebra("edge"), rng)
        a = apply_word(TwistWord(((1, 1), (2, 1), (1, 1))), m, gens)
        b = apply_word(TwistWord(((2, 1), (1, 1), (2, 1))), m, gens)
        assert same(a, b)


def test_disjoint_twists_commute_on_objects():
    alg = algebra("disjoint-pair")
    e = spheres(alg)
    gens = {1: e[1], 2: e[2]}
    rng = np.random.default_rng(4)
    for _ in range(5):
        m = random_object(alg, rng)
        assert same(apply_word(TwistWord(((1, 1), (2, 1))), m, gens), apply_word(TwistWord(((2, 1), (1, 1))), m, gens))


# -- equal twists -------------------------------------------------------------------------


@given(st.integers(-4, 4), st.sampled_from([1, 2, -1, 3]), st.sampled_from([1, 2, -1, 3]))
def test_commute_test_on_shifted_copies(l, k1, k2):
    e = spheres(algebra("edge"))
    ok, reason = commute_test(e[1], k1, e[1].shift(l), k2)
    assert ok == (k1 == k2)
    assert str(l) in reason or ok


def test_commute_test_on_distinct_objects():
    e = spheres(algebra("disjoint-pair"))
    assert commute_test(e[1], 1, e[2], 1)[0] is False
    with pytest.raises(ZeroPower):
        commute_test(e[1], 0, e[2], 1)


def test_equal_twists_act_equally():
    """T_E and T_{E[l]} agree on objects, so the commute test is consistent with the action."""
    alg = algebra("edge")
    e = spheres(alg)
    m = random_object(alg, np.random.default_rng(5))
    assert same(twist(e[1], m), twist(e[1].shift(3), m))
    assert same(inverse_twist(e[1], m), inverse_twist(e[1].shift(-2), m))


# -- ping-pong ----------------------------------------------------------------------------


def test_pingpong_word_count():
    e = spheres(algebra("double-edge"))
    for length in (1, 2, 3):
        cert = pingpong_verify(e[1], 1, e[2], 1, length)
        assert cert.certified
        # freely reduced words in two generators and their inverses
        assert cert.word_count == sum(4 * 3 ** (j - 1) for j in range(1, length + 1))
        assert all(s.lhs > s.rhs for s in cert.steps)
        assert all(s.in_w1 if s.expected_set == 1 else s.in_w2 for s in cert.steps)


def test_pingpong_with_higher_powers_and_multiplicity():
    g = MultiGraph.make([1, 2], [[1, 2]] * 3)
    alg = build_zigzag(g)
    e1, e2 = projective_spherical(alg, 1), projective_spherical(alg, 2)
    cert = pingpong_verify(e1, 2, e2, 1, 2)
    assert cert.certified and cert.exponents == (2, 1)
    data = json.loads(cert.dumps())
    assert data["verdict"] == "certified" and len(data["steps"]) == cert.word_count


def test_pingpong_seeds_lie_in_the_right_sets():
    e = spheres(algebra("double-edge"))
    cert = pingpong_verify(e[1], 1, e[2], 1, 1)
    (s1_e1, s1_e2), (s2_e1, s2_e2) = cert.seeds
    assert s1_e2 > s1_e1 and s2_e1 > s2_e2


def test_pingpong_preconditions():
    e = spheres(algebra("edge"))
    with pytest.raises(PreconditionFailed, match="braid"):
        pingpong_verify(e[1], 1, e[2], 1, 2)
    e = spheres(algebra("disjoint-pair"))
    with pytest.raises(PreconditionFailed, match="commuting"):
        pingpong_verify(e[1], 1, e[2], 1, 2)
    e = spheres(algebra("double-edge"))
    with pytest.raises(ZeroPower):
        pingpong_verify(e[1], 0, e[2], 1, 2)
    with pytest.raises(InvalidParameter):
        pingpong_verify(e[1], 1, e[2], 1, 0)


def test_pingpong_size_cap_aborts_instead_of_certifying():
    e = spheres(algebra("double-edge"))
    cert = pingpong_verify(e[1], 1, e[2], 1, 3, size_cap=4)
    assert cert.aborted and not cert.certified
