import numpy as np
import pytest
from helpers import algebra, induced_ranks, random_closed_map, random_object, spheres
from hypothesis import given
from hypothesis import strategies as st

from sphertwist.dg import (
    ComplexOfGradedSpaces,
    GradedAlgebra,
    GradedVectorSpace,
    Morphism,
    TwistedComplex,
    cohomology_dims,
    convolve,
    dg_cone,
    direct_sum,
    from_positions,
    hom_complex,
    hom_total_dim,
    identity,
    iso_up_to_shift,
    minimize,
    shift,
)
from sphertwist.dg import homcx
from sphertwist.errors import AlgebraMismatch, InvariantViolation, MaurerCartanViolation, NotClosed, WrongDegree
from sphertwist.linalg import PrimeField, inverse
from sphertwist.spherical import evaluation
from sphertwist.zigzag import projective

seeds = st.integers(0, 2**32 - 1)
graph_names = st.sampled_from(["edge", "double-edge", "path3", "disjoint-pair"])


def hom_dims(x, y):
    return hom_complex(x, y).cohomology_dims()


def generators(alg):
    return [projective(alg, v) for v in alg.graph.vertices]


# -- graded algebras ---------------------------------------------------------


def test_graded_vector_space_drops_zeros():
    v = GradedVectorSpace.from_dict({0: 2, 3: 0, -1: 1})
    assert v.as_dict() == {-1: 1, 0: 2} and v.total == 3


def test_inhomogeneous_product_is_rejected():
    fld = PrimeField(101)
    # x*x = x with deg x = 1
    with pytest.raises(InvariantViolation):
        GradedAlgebra(fld, ["e", "x"], [0, 1], {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [0, 1]}, [0])


def test_degenerate_pairing_is_rejected():
    fld = PrimeField(101)
    prods = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]}
    with pytest.raises(InvariantViolation):
        GradedAlgebra(fld, ["e", "x"], [0, 2], prods, [0], pairing=[[0, 0], [0, 0]], cy_dimension=2)
    alg = GradedAlgebra(fld, ["e", "x"], [0, 2], prods, [0], pairing=[[0, 1], [1, 0]], cy_dimension=2)
    assert alg.is_graded_symmetric


def test_zigzag_algebras_are_graded_symmetric():
    for name in ["edge", "double-edge", "triangle"]:
        alg = algebra(name)
        assert alg.is_graded_symmetric and alg.cy_dimension == 2


# -- twisted complexes ---------------------------------------------------------


def _arrow(alg, label):
    return alg.element({label: 1})


def test_maurer_cartan_violation_is_detected():
    alg = algebra("edge")
    # P1 -> P2 -> P1 along a0 then a0*: the composite is the loop, not zero
    alphas = {(0, 1): _arrow(alg, "a0")[None, None, :], (1, 2): _arrow(alg, "a0*")[None, None, :]}
    with pytest.raises(MaurerCartanViolation):
        from_positions(alg, {0: [(0, 0)], 1: [(1, 1)], 2: [(0, 2)]}, alphas)


def test_wrong_component_degree_is_rejected():
    alg = algebra("edge")
    delta = alg.field.zeros((2, 2, alg.dim))
    delta[1, 0] = _arrow(alg, "a0")
    with pytest.raises(WrongDegree):
        TwistedComplex(alg, [0, 1], [0, 3], delta)


def test_single_position_convolution_is_unchanged():
    alg = algebra("edge")
    x = projective(alg, 1, 2)
    conv = convolve(x)
    assert conv.summands == ((0, 2),) and not conv.differential.any()


def test_two_position_convolution_is_the_cone():
    alg = algebra("edge")
    p1 = projective(alg, 1, -1)
    p2 = projective(alg, 2)
    m = alg.field.zeros((1, 1, alg.dim))
    m[0, 0] = _arrow(alg, "a0")
    f = Morphism(p1, p2, 0, m)
    cone = dg_cone(f)
    twisted = from_positions(alg, {0: [(0, 0)], 1: [(1, 1)]}, {(0, 1): m})
    assert cone.summands() == twisted.summands()
    assert np.array_equal(convolve(cone).differential, convolve(twisted).differential)


def test_convolution_of_long_complex_squares_to_zero():
    alg = algebra("double-edge")
    sph = spheres(alg)
    from sphertwist.spherical import twist_power_convolution

    x = twist_power_convolution(sph[1], 3, sph[2].obj)
    conv = convolve(x)
    assert not alg.mat_mul(conv.differential, conv.differential).any()
    assert len(set(x.positions.tolist())) >= 3


# -- cones -----------------------------------------------------------------------


def test_cone_of_identity_is_acyclic():
    alg = algebra("path3")
    x = random_object(alg, np.random.default_rng(3))
    c = dg_cone(identity(x))
    assert all(hom_total_dim(g, c) == 0 for g in generators(alg))
    assert minimize(c).size == 0


def test_cone_of_zero_map_adds_cohomology():
    alg = algebra("edge")
    m, n = projective(alg, 1), projective(alg, 2, 1)
    zero = Morphism(m, n, 0, alg.field.zeros((1, 1, alg.dim)))
    c = dg_cone(zero)
    for g in generators(alg):
        assert hom_total_dim(g, c) == hom_total_dim(g, shift(m, 1)) + hom_total_dim(g, n)


def test_cone_rejects_open_and_wrong_degree_maps():
    alg = algebra("edge")
    x = projective(alg, 1)
    m = alg.field.zeros((1, 1, alg.dim))
    m[0, 0] = alg.element({"l1": 1})
    with pytest.raises(WrongDegree):
        dg_cone(Morphism(x, x, 2, m))
    # a map out of a complex that does not commute with its differential
    y = dg_cone(identity(x))  # P1[1] -> P1
    f = alg.field.zeros((1, 2, alg.dim))
    f[0, 1] = alg.element({"e1": 1})  # identity on the P1 summand only
    with pytest.raises(NotClosed):
        dg_cone(Morphism(y, projective(alg, 1), 0, f))


@given(graph_names, seeds)
def test_cone_matches_long_exact_sequence(name, seed):
    rng = np.random.default_rng(seed)
    alg = algebra(name)
    m = random_object(alg, rng, twists=1)
    n = random_object(alg, rng, twists=1)
    f = random_closed_map(m, n, rng)
    if f is None:
        return
    c = dg_cone(f)
    for g in generators(alg):
        hm, hn, hc = hom_dims(g, m), hom_dims(g, n), hom_dims(g, c)
        r = induced_ranks(g, f)
        degrees = set(hm) | set(hn) | set(hc) | {k - 1 for k in hm}
        for k in degrees:
            # H^k(cone) = coker(f_* on H^k) + ker(f_* on H^(k+1))
            want = hn.get(k, 0) - r.get(k, 0) + hm.get(k + 1, 0) - r.get(k + 1, 0)
            assert hc.get(k, 0) == want
            assert hc.get(k, 0) <= hn.get(k, 0) + hm.get(k + 1, 0)


# -- hom complexes and cohomology --------------------------------------------------


def test_projective_endomorphisms():
    alg = algebra("edge")
    assert hom_dims(projective(alg, 1), projective(alg, 1)) == {0: 1, 2: 1}
    assert hom_complex(projective(alg, 1), projective(alg, 2)).total_cohomology() == 1


def test_hom_into_zero_is_zero():
    alg = algebra("edge")
    h = hom_complex(projective(alg, 1), TwistedComplex.zero(alg))
    assert h.dim == 0 and h.cohomology_dims() == {}


def test_hom_between_algebras_is_rejected():
    with pytest.raises(AlgebraMismatch):
        hom_complex(projective(algebra("edge"), 1), projective(algebra("path3"), 1))


@given(graph_names, seeds)
def test_hom_differential_squares_to_zero(name, seed):
    rng = np.random.default_rng(seed)
    alg = algebra(name)
    x, y = random_object(alg, rng), random_object(alg, rng)
    h = hom_complex(x, y)
    fld = alg.field
    assert not fld.matmul(h.differential, h.differential).any()
    assert hom_total_dim(x, y) == h.total_cohomology()


def test_sparse_and_dense_hom_dimensions_agree(monkeypatch):
    rng = np.random.default_rng(7)
    alg = algebra("double-edge")
    for _ in range(5):
        x, y = random_object(alg, rng, twists=3), random_object(alg, rng)
        dense = hom_complex(x, y).total_cohomology()
        monkeypatch.setattr(homcx, "SPARSE_HOM_CUTOFF", 0)
        assert hom_total_dim(x, y) == dense
        monkeypatch.setattr(homcx, "SPARSE_HOM_CUTOFF", 1500)


def test_cohomology_of_simple_complexes(fld):
    zero = ComplexOfGradedSpaces(fld, [0, 0, 1], fld.zeros((3, 3)))
    assert cohomology_dims(zero) == {0: 2, 1: 1}
    d = fld.zeros((2, 2))
    d[1, 0] = fld(1)
    assert cohomology_dims(ComplexOfGradedSpaces(fld, [0, 1], d)) == {}


def test_non_square_zero_differential_is_rejected(fld):
    d = fld.zeros((3, 3))
    d[1, 0] = d[2, 1] = fld(1)
    with pytest.raises(InvariantViolation):
        ComplexOfGradedSpaces(fld, [0, 1, 2], d)


@given(st.dictionaries(st.integers(-3, 3), st.integers(1, 3), max_size=4), st.lists(st.integers(-3, 3), max_size=4), seeds)
def test_planted_cohomology_is_recovered(planted, pairs, seed):
    from sphertwist.dualnum import random_degree_preserving

    fld = PrimeField(32003)
    degrees = [k for k, n in planted.items() for _ in range(n)]
    blocks = []
    for k in pairs:
        degrees += [k, k + 1]
        blocks.append((len(degrees) - 2, len(degrees) - 1))
    n = len(degrees)
    d = fld.zeros((n, n))
    for a, b in blocks:
        d[b, a] = fld(1)
    degrees = np.array(degrees, dtype=np.int64)
    p = random_degree_preserving(fld, degrees, np.random.default_rng(seed)) if n else fld.zeros((0, 0))
    if n:
        d = fld.matmul(fld.matmul(p, d), inverse(fld, p))
    assert ComplexOfGradedSpaces(fld, degrees, d).cohomology_dims() == {k: v for k, v in planted.items()}


# -- shift and sums ------------------------------------------------------------------


@given(graph_names, seeds, st.integers(-4, 4), st.integers(-4, 4))
def test_shift_bookkeeping(name, seed, a, b):
    rng = np.random.default_rng(seed)
    alg = algebra(name)
    x, y = random_object(alg, rng), random_object(alg, rng)
    assert shift(x, 0) is x
    twice = shift(shift(x, a), b)
    once = shift(x, a + b)
    assert twice.summands() == once.summands() and np.array_equal(twice.delta, once.delta)
    assert hom_total_dim(shift(x, a), shift(y, a)) == hom_total_dim(x, y)
    base = hom_dims(x, y)
    assert hom_dims(x, shift(y, a)) == {k - a: v for k, v in base.items()}


def test_direct_sums():
    alg = algebra("path3")
    rng = np.random.default_rng(1)
    x, y = random_object(alg, rng), random_object(alg, rng)
    z = direct_sum(x, TwistedComplex.zero(alg))
    assert z.summands() == x.summands() and np.array_equal(z.delta, x.delta)
    for g in generators(alg):
        assert hom_total_dim(g, direct_sum(x, y)) == hom_total_dim(g, x) + hom_total_dim(g, y)
    with pytest.raises(AlgebraMismatch):
        direct_sum(x, projective(algebra("edge"), 1))


# -- minimal models ------------------------------------------------------------------


@given(graph_names, seeds)
def test_minimize_preserves_homs_with_generators(name, seed):
    rng = np.random.default_rng(seed)
    alg = algebra(name)
    m, n = random_object(alg, rng, twists=1), random_object(alg, rng, twists=1)
    f = random_closed_map(m, n, rng)
    x = dg_cone(f) if f is not None else direct_sum(m, n)
    small = minimize(x)
    assert small.is_minimal()
    for g in generators(alg):
        assert hom_dims(g, small) == hom_dims(g, x)
        assert hom_dims(small, g) == hom_dims(x, g)


def test_minimize_fixes_minimal_objects():
    alg = algebra("double-edge")
    x = random_object(alg, np.random.default_rng(11), twists=3)
    assert x.is_minimal()
    assert minimize(x).support_key() == x.support_key()


# -- isomorphism up to shift -----------------------------------------------------------


def test_shift_is_detected():
    alg = algebra("edge")
    x = random_object(alg, np.random.default_rng(5), twists=2)
    iso = iso_up_to_shift(x, shift(x, 3))
    assert iso is not None and iso.shift == 3
    assert iso.morphism.is_closed() and iso.morphism.degree == 0


def test_distinct_projectives_are_not_shifts():
    alg = algebra("edge")
    assert iso_up_to_shift(projective(alg, 1), projective(alg, 2)) is None


def test_braid_object_is_a_shift():
    from sphertwist.spherical import twist

    alg = algebra("edge")
    sph = spheres(alg)
    x = twist(sph[1], twist(sph[2], sph[1].obj))
    assert iso_up_to_shift(sph[2].obj, x) is not None


@given(graph_names, seeds, st.integers(-3, 3))
def test_iso_up_to_shift_is_antisymmetric(name, seed, k):
    rng = np.random.default_rng(seed)
    alg = algebra(name)
    x = random_object(alg, rng)
    y = shift(random_object(alg, rng), k) if rng.random() < 0.5 else shift(x, k)
    a, b = iso_up_to_shift(x, y), iso_up_to_shift(y, x)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.shift == -b.shift


def test_evaluation_cone_bookkeeping():
    # the twist triangle: dims of the cone equal the long exact sequence prediction
    alg = algebra("double-edge")
    sph = spheres(alg)
    ev = evaluation(sph[1].obj, sph[2].obj)
    c = dg_cone(ev)
    for g in generators(alg):
        hm, hn, hc = hom_dims(g, ev.source), hom_dims(g, ev.target), hom_dims(g, c)
        r = induced_ranks(g, ev)
        for k in set(hm) | set(hn) | set(hc) | {k - 1 for k in hm}:
            assert hc.get(k, 0) == hn.get(k, 0) - r.get(k, 0) + hm.get(k + 1, 0) - r.get(k + 1, 0)
