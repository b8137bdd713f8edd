import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from lie2kit.graded import (GradedMap, MultiTensor, ThreeTermSpace, TwoTermSpace, indexer, koszul_sign, perm_sign,
                            unshuffles)
from lie2kit.ratlin import RationalMatrix

from strategies import small_rationals, vectors


def bubble_koszul(perm, degrees):
    """Independent oracle: count odd-odd inversions directly."""
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[perm[i]] % 2 and degrees[perm[j]] % 2:
                s = -s
    return s


def test_unshuffles_small():
    assert unshuffles(1, 2) == [((0, 1), 1), ((1, 0), -1)]
    assert len(unshuffles(2, 3)) == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_unshuffles_counts_and_parity(n):
    for i in range(1, n + 1):
        us = unshuffles(i, n)
        perms = [p for p, _ in us]
        assert len(us) == comb(n, i) == len(set(perms))
        for p, s in us:
            inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
            assert s == (-1) ** inv
            assert list(p[:i]) == sorted(p[:i]) and list(p[i:]) == sorted(p[i:])


def test_koszul_degree_zero_is_trivial():
    for p in itertools.permutations(range(4)):
        assert koszul_sign(p, [0, 0, 0, 0]) == 1


def test_koszul_two_odd_elements():
    # the Koszul factor alone is -1; with the plain sign the product is +1
    assert koszul_sign((1, 0), [1, 1]) == -1
    assert perm_sign((1, 0)) * koszul_sign((1, 0), [1, 1]) == 1


@pytest.mark.parametrize("degrees", list(itertools.product([0, 1], repeat=4)))
def test_koszul_four_elements_against_oracle(degrees):
    for p in itertools.permutations(range(4)):
        assert koszul_sign(p, list(degrees)) == bubble_koszul(p, degrees)


def test_indexer_roundtrip():
    for n0, n1, p, q in [(3, 2, 2, 1), (4, 0, 3, 0), (2, 3, 0, 2), (0, 0, 0, 0)]:
        ix = indexer(n0, n1, p, q)
        for k, (xt, at) in enumerate(ix.tuples):
            assert ix.index(xt, at) == k and ix.tuple_at(k) == (xt, at)
        assert len(ix) == comb(n0, p) * (comb(n1 + q - 1, q) if q else 1)


def random_tensor(data, p, q, n0, n1, td):
    ix = indexer(n0, n1, p, q)
    entries = data.draw(st.lists(small_rationals, min_size=td * len(ix), max_size=td * len(ix)))
    return MultiTensor(p, q, n0, n1, td, RationalMatrix(td, len(ix), entries) if td else None)


def unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def test_evaluate_basic_cases():
    t = MultiTensor.from_entries(2, 1, 3, 2, 2, [((0, 1, 1, 0), 5), ((1, 2, 0, 1), -1)])
    e = lambda i: unit(3, i)
    a = lambda i: unit(2, i)
    assert t.evaluate([e(0), e(1)], [a(1)]) == (5, 0)
    assert t.evaluate([e(1), e(0)], [a(1)]) == (-5, 0)
    assert t.evaluate([e(2), e(2)], [a(0)]) == (0, 0)
    assert t.column((0, 1), (1,)) == (5, 0)


def test_evaluate_arity_mismatch():
    t = MultiTensor.zero(2, 0, 2, 0, 1)
    with pytest.raises(ValueError):
        t.evaluate([unit(2, 0)])


def test_from_entries_rejects_repeated_antisymmetric_slot():
    with pytest.raises(ValueError):
        MultiTensor.from_entries(2, 0, 2, 0, 1, [((1, 1, 0), 1)])


def test_empty_arity_is_one_dimensional():
    t = MultiTensor.from_entries(0, 0, 3, 2, 2, [((1,), 4)])
    assert len(t.basis) == 1 and t.evaluate([], []) == (0, 4)


def test_three_term_space_requires_square_zero():
    with pytest.raises(ValueError):
        ThreeTermSpace(1, 1, 1, RationalMatrix.from_rows([[1]]), RationalMatrix.from_rows([[1]]))


def test_graded_map_chain_condition():
    V = TwoTermSpace(1, 1, [[1]])
    W = TwoTermSpace(1, 1, [[2]])
    assert GradedMap(RationalMatrix.from_rows([[2]]), RationalMatrix.from_rows([[1]])).is_chain_map(V, W)
    assert not GradedMap(RationalMatrix.from_rows([[1]]), RationalMatrix.from_rows([[1]])).is_chain_map(V, W)


shapes = st.sampled_from([(2, 1, 3, 2, 2), (3, 0, 4, 1, 1), (1, 2, 2, 2, 2), (2, 2, 3, 2, 1), (0, 3, 1, 2, 2)])


@settings(max_examples=60, deadline=None)
@given(shapes, st.data())
def test_evaluate_is_multilinear(shape, data):
    p, q, n0, n1, td = shape
    t = random_tensor(data, p, q, n0, n1, td)
    xs = [data.draw(vectors(n0)) for _ in range(p)]
    as_ = [data.draw(vectors(n1)) for _ in range(q)]
    al, be = data.draw(small_rationals), data.draw(small_rationals)
    slot = data.draw(st.integers(0, p + q - 1))
    n = n0 if slot < p else n1
    y = data.draw(vectors(n))
    args = xs + as_
    mixed = list(args)
    mixed[slot] = tuple(al * u + be * v for u, v in zip(args[slot], y))
    other = list(args)
    other[slot] = y
    ev = lambda a: t.evaluate(a[:p], a[p:])
    assert ev(mixed) == tuple(al * u + be * v for u, v in zip(ev(args), ev(other)))


@settings(max_examples=60, deadline=None)
@given(shapes, st.data())
def test_evaluate_graded_symmetry(shape, data):
    p, q, n0, n1, td = shape
    t = random_tensor(data, p, q, n0, n1, td)
    xs = [data.draw(vectors(n0)) for _ in range(p)]
    as_ = [data.draw(vectors(n1)) for _ in range(q)]
    pi = data.draw(st.permutations(range(p)))
    rho = data.draw(st.permutations(range(q)))
    base = t.evaluate(xs, as_)
    s = perm_sign(pi)
    assert t.evaluate([xs[i] for i in pi], as_) == tuple(s * v for v in base)
    assert t.evaluate(xs, [as_[i] for i in rho]) == base
