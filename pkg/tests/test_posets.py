import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defbilat.errors import LengthMismatch, NotSemiConstant, ValidationError
from defbilat.posets import (
    MonotoneMap,
    Poset,
    QuasiOrder,
    antichain,
    chain,
    count_up_sets,
    doubling,
    is_semi_constant,
    linear_extension,
    order_components,
    restricted_linear_sum,
    transitive_closure,
    up_sets,
)


def brute_force_up_sets(p: Poset) -> set[frozenset]:
    """Independent oracle: scan all 2^n subsets."""
    out = set()
    for bits in itertools.product((0, 1), repeat=p.size):
        ok = all(not (bits[x] and p.rel[x, y] and not bits[y])
                 for x in range(p.size) for y in range(p.size))
        if ok:
            out.add(frozenset(i for i in range(p.size) if bits[i]))
    return out


def grid_2x2() -> Poset:
    return Poset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@st.composite
def random_posets(draw, max_size: int = 8):
    n = draw(st.integers(min_value=1, max_value=max_size))
    pairs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1]),
        max_size=2 * n))
    return Poset.from_pairs(n, pairs)


def test_quasiorder_validation():
    rel = np.array([[1, 1], [0, 0]], dtype=bool)
    with pytest.raises(ValidationError):
        QuasiOrder(rel)  # not reflexive
    rel = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(ValidationError):
        QuasiOrder(rel)  # not transitive
    QuasiOrder(transitive_closure(rel))
    with pytest.raises(ValidationError):
        Poset(transitive_closure(np.array([[1, 1], [1, 1]], dtype=bool)))


def test_up_sets_antichain():
    # all subsets of a 2-antichain
    got = set(up_sets(antichain(2)))
    assert got == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}


def test_up_sets_grid_matches_oracle():
    p = grid_2x2()
    assert set(up_sets(p)) == brute_force_up_sets(p)
    assert len(up_sets(p)) == 6  # frozen from the oracle over all 16 subsets
    assert count_up_sets(p) == 6


@given(random_posets(max_size=7))
@settings(max_examples=60, deadline=None)
def test_up_sets_match_oracle_random(p):
    got = up_sets(p)
    assert len(got) == len(set(got))
    assert set(got) == brute_force_up_sets(p)
    assert count_up_sets(p) == len(got)


@given(random_posets(max_size=6))
@settings(max_examples=40, deadline=None)
def test_up_sets_form_distributive_lattice(p):
    us = set(up_sets(p))
    assert frozenset() in us
    assert frozenset(range(p.size)) in us
    for a in us:
        for b in us:
            assert a | b in us
            assert a & b in us


def test_linear_extension():
    p = grid_2x2()
    order = linear_extension(p)
    pos = {x: k for k, x in enumerate(order)}
    for i in range(4):
        for j in range(4):
            if p.rel[i, j] and i != j:
                assert pos[i] < pos[j]


def test_order_components():
    assert order_components(antichain(3)) == [[0], [1], [2]]
    assert order_components(chain(2)) == [[0, 1]]
    two_chains = Poset.from_pairs(4, [(0, 1), (2, 3)])
    assert order_components(two_chains) == [[0, 1], [2, 3]]


def test_is_semi_constant():
    a2, c2 = antichain(2), chain(2)
    assert is_semi_constant(MonotoneMap(a2, c2, [0, 1]))
    assert not is_semi_constant(MonotoneMap(c2, c2, [0, 1]))
    assert is_semi_constant(MonotoneMap(c2, c2, [1, 1]))


def test_restricted_linear_sum_singletons():
    one = antichain(1)
    s = restricted_linear_sum(one, one, MonotoneMap(one, one, [0]))
    assert s.size == 2 and s.rel[0, 1] and not s.rel[1, 0]


def test_restricted_linear_sum_rejects_non_semi_constant():
    c2 = chain(2)
    with pytest.raises(NotSemiConstant):
        restricted_linear_sum(c2, c2, MonotoneMap(c2, c2, [0, 1]))


def test_restricted_linear_sum_restrictions():
    s, t = grid_2x2(), antichain(3)
    phi = MonotoneMap(t, s, [3, 3, 3])
    r = restricted_linear_sum(s, t, phi)
    assert np.array_equal(r.rel[:4, :4], s.rel)
    assert np.array_equal(r.rel[4:, 4:], t.rel)
    # cross relations go upward only
    assert not r.rel[4:, :4].any()


@given(random_posets(max_size=4), random_posets(max_size=4), st.randoms())
@settings(max_examples=40, deadline=None)
def test_up_set_count_bounds_for_linear_sums(s, t, rnd):
    # pick a semi-constant map: one target point per component of t
    table = [0] * t.size
    for comp in order_components(t):
        v = rnd.randrange(s.size)
        for x in comp:
            table[x] = v
    phi = MonotoneMap(t, s, table, validate=False)
    r = restricted_linear_sum(s, t, phi)
    ns, nt, n = count_up_sets(s), count_up_sets(t), count_up_sets(r)
    assert ns + nt - 1 <= n <= ns * nt


def test_doubling_single_layer_no_links():
    p = chain(2)
    d = doubling([p], [])
    assert d.size == 4
    assert set(map(tuple, order_components(d))) == {(0, 1), (2, 3)}


def test_doubling_singleton_chain_counts():
    # n+1 singleton layers doubled: up-set count must be 3n+4
    one = antichain(1)
    for n in range(6):
        layers = [one] * (n + 1)
        links = [MonotoneMap(one, one, [0])] * n
        d = doubling(layers, links)
        assert d.size == 2 * (n + 1)
        assert count_up_sets(d) == 3 * n + 4
        assert len(up_sets(d)) == 3 * n + 4


def test_doubling_length_mismatch():
    one = antichain(1)
    with pytest.raises(LengthMismatch):
        doubling([one, one], [])


def test_doubling_restriction_is_original_order():
    p = grid_2x2()
    d = doubling([p], [])
    assert np.array_equal(d.rel[:4, :4], p.rel)
    assert np.array_equal(d.rel[4:, 4:], p.rel)


def test_covers_of_chain():
    assert chain(4).covers() == [(0, 1), (1, 2), (2, 3)]
