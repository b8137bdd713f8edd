from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lie2kit import fixtures as F
from lie2kit.crossmod import identity_crossed_module, mapping_cone
from lie2kit.graded import GradedMap, MultiTensor, ThreeTermSpace, TwoTermSpace
from lie2kit.lie2core import (HOM_CONDITIONS, Lie2Algebra, Lie2Hom, Lie3Algebra, RefusalError, check_hom, check_lie2,
                              check_lie3_strict, compose, first_iso_check, hom_image, hom_kernel, is_ideal, quotient,
                              transport)
from lie2kit.ratlin import RationalMatrix, rank, span_basis

from mutations import bump, hom_condition_mutants
from oracles import leibniz_residuals, structure_constants, textbook_jacobi_ok
from strategies import matrices, small_rationals


def _m(rows):
    return RationalMatrix.from_rows(rows)


def _row_space(vectors, dim):
    return span_basis([tuple(Fraction(c) for c in v) for v in vectors], dim)


# -- check_lie2 ---------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(F.ALGEBRAS))
def test_fixtures_pass(name):
    g = F.ALGEBRAS[name]()
    assert check_lie2(g).ok
    assert leibniz_residuals(g) == []


def test_abelian_passes():
    assert check_lie2(F.abelian(3, 2, [[1, 0], [0, 0], [0, 1]])).ok


def test_aff1_sign_corruption_cannot_break_jacobi():
    # with g1 = 0 and dim g0 = 2 there is no triple to violate Jacobi
    g = F.aff1()
    flipped = Lie2Algebra(g.space, bump(g.l2_00, by=-2), g.l2_01, g.l3)
    assert flipped.br(g.e0(0), g.e0(1)) == (0, -1)
    assert check_lie2(flipped).ok


def test_sl2_corruption_fails_at_n3():
    g = F.sl2()
    bad = Lie2Algebra(g.space, bump(g.l2_00), g.l2_01, g.l3)
    v = check_lie2(bad)
    assert v.labels() == ["Lie 2-algebra identity n=3"]
    assert v.first[1] == ("x0", "x1", "x2")


def test_aff1_cm_corruption_fails_at_n2():
    g = F.aff1_cm()
    v = check_lie2(Lie2Algebra(g.space, bump(g.l2_00), g.l2_01, g.l3))
    assert v.labels() == ["Lie 2-algebra identity n=2"]
    assert v.report() == ["Lie 2-algebra identity n=2 failed at ('x0', 'a0')"]


def test_non_closed_l3_fails_at_n4():
    # aff1 + aff1 acting trivially on a line; l3 = e^1 e^2 e^3 is not a closed 3-form
    base = F.direct_sum(F.direct_sum(F.aff1(), F.aff1()), F.abelian(0, 1))
    assert check_lie2(base).ok
    closed = MultiTensor.from_entries(3, 0, 4, 1, 1, [((0, 1, 2, 0), 1)], "g1")
    assert check_lie2(Lie2Algebra(base.space, base.l2_00, base.l2_01, closed)).ok
    bad = MultiTensor.from_entries(3, 0, 4, 1, 1, [((1, 2, 3, 0), 1)], "g1")
    assert check_lie2(Lie2Algebra(base.space, base.l2_00, base.l2_01, bad)).labels() == ["Lie 2-algebra identity n=4"]


def test_shape_mismatch():
    with pytest.raises(ValueError):
        Lie2Algebra(TwoTermSpace(2, 0), MultiTensor.zero(2, 0, 3, 0, 3))


brackets3 = st.lists(st.sampled_from([0, 0, 1, -1]), min_size=9, max_size=9)


@settings(max_examples=200, deadline=None)
@given(brackets3)
def test_jacobi_matches_textbook_check(cs):
    table = {(0, 1): cs[0:3], (0, 2): cs[3:6], (1, 2): cs[6:9]}
    g = Lie2Algebra.from_functions(TwoTermSpace(3, 0), lambda i, j: table[(i, j)])
    assert check_lie2(g).ok == textbook_jacobi_ok(structure_constants(g), 3)


# -- homomorphisms ------------------------------------------------------------------

def test_identity_and_zero_homs():
    for name in sorted(F.ALGEBRAS):
        g = F.ALGEBRAS[name]()
        assert check_hom(Lie2Hom.identity(g)).ok
    a, b = F.abelian(2, 1), F.abelian(1, 2)
    assert check_hom(Lie2Hom.zero(a, b)).ok


def test_hom_mutants_fail_only_their_condition():
    mutants = hom_condition_mutants()
    assert sorted(mutants) == [0, 1, 2, 3]
    for k, f in mutants.items():
        assert check_lie2(f.source).ok and check_lie2(f.target).ok
        assert check_hom(f).labels() == [HOM_CONDITIONS[k]]


def test_hom_dimension_mismatch():
    g = F.aff1()
    with pytest.raises(ValueError):
        Lie2Hom(g, g, GradedMap(RationalMatrix(3, 2), RationalMatrix(0, 0)))


invertible2 = matrices(rows=2, cols=2).filter(lambda m: rank(m) == 2)
invertible1 = st.builds(lambda c: _m([[c]]), small_rationals.filter(bool))


@settings(max_examples=40, deadline=None)
@given(invertible2, invertible1, small_rationals, invertible2, invertible1, small_rationals)
def test_compose_of_transports_is_a_hom(a0, a1, s, b0, b1, t):
    g = F.aff1_cm()
    h, f = transport(g, a0, a1, MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), s)], "g1"))
    k, f2 = transport(h, b0, b1, MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), t)], "g1"))
    assert check_lie2(h).ok and check_lie2(k).ok
    assert check_hom(f).ok and check_hom(f2).ok
    c = compose(f2, f)
    assert check_hom(c).ok
    assert c.phi0 == b0 @ a0


def test_compose_needs_phi2_correction():
    g = F.aff1_cm()
    phi2 = MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), 1)], "g1")
    h, f = transport(g, _m([[1, 0], [0, 1]]), _m([[1]]), phi2)
    k, f2 = transport(h, _m([[1, 1], [0, 1]]), _m([[1]]), phi2)
    c = compose(f2, f)
    naive = Lie2Hom(g, k, c.maps, MultiTensor.zero(2, 0, 2, 1, 1, "g1"))
    assert check_hom(c).ok and not check_hom(naive).ok


# -- ideals, quotients, kernels ---------------------------------------------------------

def test_ideals_of_aff1():
    g = F.aff1()
    assert is_ideal(g, ([(1, 0), (0, 1)], [])).ok
    assert is_ideal(g, ([(0, 1)], [])).ok
    v = is_ideal(g, ([(1, 0)], []))
    assert not v.ok and v.labels() == ["ideal condition l2(h0, g0) in h0"]


def test_ideal_must_be_d_closed():
    with pytest.raises(RefusalError):
        is_ideal(F.aff1_cm(), ([], [(1,)]))


def test_quotients_of_aff1():
    g = F.aff1()
    q, pi = quotient(g, ([(0, 1)], []))
    assert q.dims == (1, 0) and q.l2_00.is_zero()
    assert pi.strong and check_hom(pi).ok
    z, _ = quotient(g, ([(1, 0), (0, 1)], []))
    assert z.dims == (0, 0)
    same, pid = quotient(g, ([], []))
    assert same == g and pid == Lie2Hom.identity(g)


def test_quotient_refuses_non_ideal():
    with pytest.raises(RefusalError):
        quotient(F.aff1(), ([(1, 0)], []))


IDEALS = [
    ("aff1", ([(0, 1)], [])),
    ("aff1_cm", ([(0, 1)], [(1,)])),
    ("aff1_cm", ([], [])),
    ("strict32", ([(0, 1, 0), (0, 0, 1)], [(1, 0), (0, 1)])),
    ("strict32", ([(0, 0, 1)], [(0, 1)])),
    ("heis", ([(0, 0, 1)], [])),
    ("string_sl2", ([], [(1,)])),
]


@pytest.mark.parametrize("name,h", IDEALS)
def test_quotient_then_kernel_round_trip(name, h):
    g = F.ALGEBRAS[name]()
    q, pi = quotient(g, h)
    assert check_lie2(q).ok and check_hom(pi).ok and pi.strong
    k0, k1 = hom_kernel(pi)
    n0, n1 = g.dims
    assert _row_space(k0, n0) == _row_space(h[0], n0)
    assert _row_space(k1, n1) == _row_space(h[1], n1)
    assert first_iso_check(pi).ok


def test_kernel_and_image_of_trivial_homs():
    g = F.aff1_cm()
    k0, k1 = hom_kernel(Lie2Hom.zero(g, g))
    assert len(k0) == 2 and len(k1) == 1
    (i0, i1), img = hom_image(Lie2Hom.zero(g, g))
    assert img.dims == (0, 0)
    k0, k1 = hom_kernel(Lie2Hom.identity(g))
    assert (k0, k1) == ([], [])
    (i0, i1), img = hom_image(Lie2Hom.identity(g))
    assert img.dims == g.dims and check_lie2(img).ok
    assert first_iso_check(Lie2Hom.identity(g)).ok


def test_kernel_hypothesis_refusal():
    # phi0 = 0 and phi2 != 0: phi2(ker phi0, g0) = 0 fails
    g = F.abelian(2, 1)
    f = Lie2Hom(g, g, GradedMap(RationalMatrix(2, 2), RationalMatrix(1, 1)),
                MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), 1)], "g1"))
    with pytest.raises(RefusalError) as exc:
        hom_kernel(f)
    assert "kernel hypothesis" in exc.value.label


def test_image_hypothesis_refusal():
    g = F.abelian(2, 1)
    f = Lie2Hom(g, g, GradedMap(RationalMatrix(2, 2), RationalMatrix(1, 1)),
                MultiTensor.from_entries(2, 0, 2, 1, 1, [((0, 1, 0), 1)], "g1"))
    with pytest.raises(RefusalError) as exc:
        hom_image(f)
    assert "image hypothesis" in exc.value.label


# -- strict Lie 3-algebras -------------------------------------------------------------

def test_zero_lie3_passes():
    space = ThreeTermSpace(2, 2, 1, [[1, 0], [0, 0]], [[0], [1]])
    assert check_lie3_strict(Lie3Algebra(space)).ok


@pytest.mark.parametrize("name", sorted(F.crossed_modules()))
def test_cones_pass(name):
    assert check_lie3_strict(mapping_cone(F.crossed_modules()[name])).ok


def test_cone_mutation_fails_at_n2_or_n3():
    cone = mapping_cone(identity_crossed_module(F.string_sl2()))
    for key in sorted(cone.l2):
        l2 = {k: dict(v) for k, v in cone.l2.items()}
        out = next(iter(l2[key]))
        l2[key][out] += 1
        v = check_lie3_strict(Lie3Algebra(cone.space, l2, cone.l3))
        assert not v.ok
        # the lowest failing identity is n=2 or n=3
        assert min(int(lab.rsplit("=", 1)[1]) for lab in v.labels()) in (2, 3)


def test_lie3_wrong_output_degree():
    space = ThreeTermSpace(2, 1, 0)
    with pytest.raises(ValueError):
        check_lie3_strict(Lie3Algebra(space, {(0, 1): {2: 1}}))
