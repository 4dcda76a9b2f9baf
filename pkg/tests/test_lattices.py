import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defbilat.errors import ValidationError
from defbilat.lattices import (
    DistLattice,
    LatticeHom,
    complement_of,
    dual_map,
    dual_points,
    dual_poset,
    image_complemented,
    lattice_from_order,
    lattice_homs,
    lattice_isomorphic,
    product_lattice,
    two,
    upset_iso,
    upset_lattice,
)
from defbilat.posets import (
    Poset,
    antichain,
    chain,
    find_order_isomorphism,
    is_semi_constant,
)


def diamond() -> Poset:
    return Poset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def boolean_lattice(k: int) -> DistLattice:
    return upset_lattice(antichain(k))


def l_zero() -> DistLattice:
    """Six elements: the four-element Boolean lattice with new bot and top."""
    return upset_lattice(diamond())


@st.composite
def random_posets(draw, max_size: int = 6):
    n = draw(st.integers(min_value=1, max_value=max_size))
    pairs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1]),
        max_size=2 * n))
    return Poset.from_pairs(n, pairs)


def test_two_is_valid():
    t = two()
    DistLattice(t.meet, t.join, t.bot, t.top)  # runs full validation


def test_validation_catches_bad_tables():
    meet = np.array([[0, 0], [1, 1]])
    with pytest.raises(ValidationError):
        DistLattice(meet, TWO_JOIN_COPY := np.array([[0, 1], [1, 1]]), 0, 1)


def test_upset_lattice_of_singleton_is_two():
    l = upset_lattice(antichain(1))
    assert l.size == 2 and l.bot != l.top


def test_upset_lattice_is_distributive():
    # full validation pass over a non-Boolean example
    l = l_zero()
    DistLattice(l.meet, l.join, l.bot, l.top)
    assert l.size == 6


def test_dual_of_two_is_singleton():
    assert dual_poset(two()).size == 1


def test_dual_of_l_zero_is_diamond():
    d = dual_poset(l_zero())
    assert d.size == 4
    assert find_order_isomorphism(d, diamond()) is not None


def test_disjoint_grids_give_36():
    p = Poset.from_pairs(8, [(0, 1), (0, 2), (1, 3), (2, 3),
                             (4, 5), (4, 6), (5, 7), (6, 7)])
    assert upset_lattice(p).size == 36


def test_upset_iso_two():
    iso = upset_iso(two())
    assert iso.table[two().bot] == iso.cod.bot
    assert iso.table[two().top] == iso.cod.top


def test_upset_iso_l_zero():
    l = l_zero()
    iso = upset_iso(l)
    assert sorted(iso.table) == list(range(6))


def test_upset_iso_l_one():
    # 2^3 x L_0 has 48 elements and a 7-point dual
    l1 = product_lattice(boolean_lattice(3), l_zero())
    assert l1.size == 48
    assert dual_poset(l1).size == 7
    iso = upset_iso(l1)
    assert len(set(iso.table)) == 48


def test_complement_of_bounds_and_chain():
    l = upset_lattice(chain(1))  # 2-element lattice
    assert complement_of(l, l.bot) == l.top
    c3 = upset_lattice(chain(2))  # 3-chain
    mid = next(x for x in range(3) if x not in (c3.bot, c3.top))
    assert complement_of(c3, mid) is None
    assert complement_of(c3, c3.bot) == c3.top


def test_complement_in_boolean_lattice():
    b = boolean_lattice(3)
    for a in range(b.size):
        c = complement_of(b, a)
        assert c is not None
        assert b.labels[a] ^ b.labels[c] == 0b111


def test_identity_dual_map_semi_constant_iff_antichain():
    for l, expect in ((boolean_lattice(2), True), (upset_lattice(chain(2)), False)):
        ident = LatticeHom(l, l, tuple(range(l.size)))
        phi = dual_map(ident)
        assert is_semi_constant(phi) == expect


def test_hom_two_into_square_onto_bounds():
    b = boolean_lattice(2)
    f = LatticeHom(two(), b, (b.bot, b.top))
    assert image_complemented(f)
    assert is_semi_constant(dual_map(f))


def test_lattice_homs_counts_via_monotone_maps():
    # homs U(P) -> U(Q) biject with monotone maps Q -> P
    p, q = diamond(), chain(2)
    homs = lattice_homs(upset_lattice(p), upset_lattice(q))
    monotone = 0
    for table in itertools.product(range(p.size), repeat=q.size):
        if all(not q.rel[i, j] or p.rel[table[i], table[j]]
               for i in range(q.size) for j in range(q.size)):
            monotone += 1
    assert len(homs) == monotone


@given(random_posets(max_size=5), random_posets(max_size=4))
@settings(max_examples=25, deadline=None)
def test_dual_maps_agree_with_lemma_equivalence(p, q):
    lp, lq = upset_lattice(p), upset_lattice(q)
    for f in lattice_homs(lp, lq):
        phi = dual_map(f)  # raises InvariantViolation on disagreement
        assert is_semi_constant(phi) == image_complemented(f)


def test_dual_map_contravariant_functoriality():
    l, m = upset_lattice(chain(2)), l_zero()
    n = boolean_lattice(2)
    for f in lattice_homs(l, m):
        for g in lattice_homs(m, n):
            lhs = dual_map(g.compose(f))
            rhs = dual_map(f).compose(dual_map(g))
            assert lhs.table == rhs.table


@given(random_posets(max_size=8))
@settings(max_examples=40, deadline=None)
def test_birkhoff_roundtrip_poset(p):
    assert find_order_isomorphism(dual_poset(upset_lattice(p)), p) is not None


@given(random_posets(max_size=5))
@settings(max_examples=25, deadline=None)
def test_birkhoff_roundtrip_lattice(p):
    l = upset_lattice(p)
    iso = upset_iso(l)
    assert sorted(iso.table) == list(range(l.size))
    assert lattice_isomorphic(l, iso.cod)


def test_complement_is_involution():
    l = l_zero()
    for a in range(l.size):
        c = complement_of(l, a)
        if c is not None:
            assert complement_of(l, c) == a


def test_lattice_from_order_roundtrip():
    l = l_zero()
    rebuilt = lattice_from_order(l.leq)
    assert np.array_equal(rebuilt.meet, l.meet)
    assert np.array_equal(rebuilt.join, l.join)


def test_lattice_from_order_rejects_non_lattice():
    # two incomparable maximal elements: no join
    p = Poset.from_pairs(3, [(0, 1), (0, 2)])
    with pytest.raises(ValidationError):
        lattice_from_order(p.rel)
