import numpy as np
import pytest

from defbilat.errors import BadIndices
from defbilat.kn import (
    build_kn,
    check_interlaced,
    collapse_hom,
    embed_index_map,
    level_poset,
    level_quasiorder,
    level_relation_algebra,
    _truth_order,
)
from defbilat.posets import Poset, find_order_isomorphism, order_components


def test_sizes_and_constants():
    for n in range(5):
        kn = build_kn(n)
        assert kn.size == 3 * n + 4
        assert kn.algebra.top == kn.tops(0)
        assert kn.algebra.bot == kn.tops(n + 1)


def test_negation_fixes_tops_and_swaps_defaults():
    kn = build_kn(2)
    a = kn.algebra
    for i in range(3):
        assert a.neg[kn.f(i)] == kn.t(i)
        assert a.neg[kn.t(i)] == kn.f(i)
    for i in range(4):
        assert a.neg[kn.tops(i)] == kn.tops(i)


def test_k0_reduct_is_four():
    # the 4-element bilattice: knowledge diamond, truth diamond rotated
    k0 = build_kn(0)
    a = k0.algebra
    assert a.size == 4
    # knowledge: bot < f0, t0 < top
    assert a.kleq[a.bot, k0.f(0)] and a.kleq[k0.f(0), a.top]
    assert not a.kleq[k0.f(0), k0.t(0)] and not a.kleq[k0.t(0), k0.f(0)]
    # truth: f0 < bot, top < t0
    assert a.tleq[k0.f(0), a.bot] and a.tleq[a.bot, k0.t(0)]
    assert a.tleq[k0.f(0), a.top] and a.tleq[a.top, k0.t(0)]
    assert not a.tleq[a.bot, a.top] and not a.tleq[a.top, a.bot]


def test_k1_truth_meet_of_middle_tops():
    # the one-level default bilattice: T1 tmeet T2 = f1
    k1 = build_kn(1)
    a = k1.algebra
    assert a.tmeet[k1.tops(1), k1.tops(2)] == k1.f(1)


def test_term_definability_identities():
    # t_m, f_m and T_{m+1} are terms in top and bot
    for n in range(5):
        kn = build_kn(n)
        a = kn.algebra
        for m in range(n + 1):
            tm = a.tjoin[kn.tops(m), a.bot]
            fm = a.tmeet[kn.tops(m), a.bot]
            assert tm == kn.t(m)
            assert fm == kn.f(m)
            assert a.kmeet[tm, fm] == kn.tops(m + 1)


def test_truth_bounds_are_terms():
    for n in range(4):
        kn = build_kn(n)
        a = kn.algebra
        assert a.tmeet[a.top, a.bot] == kn.f(0)
        assert a.tjoin[a.top, a.bot] == kn.t(0)


def test_knowledge_reduct_distributive_truth_not():
    from defbilat.lattices import DistLattice
    for n in range(4):
        a = build_kn(n).algebra
        DistLattice(a.kmeet, a.kjoin, a.bot, a.top)  # validates distributivity
        distributive = True
        try:
            DistLattice(a.tmeet, a.tjoin,
                        int(a.tmeet[a.top, a.bot]), int(a.tjoin[a.top, a.bot]))
        except Exception:
            distributive = False
        assert distributive == (n == 0)


def test_collapse_hom_values():
    k1, k0 = build_kn(1), build_kn(0)
    h = collapse_hom(1, 0)
    assert h.table[k1.tops(2)] == k0.tops(1)
    assert h.table[k1.t(1)] == k0.tops(1)
    assert h.table[k1.t(0)] == k0.t(0)


def test_collapse_hom_identity_and_composition():
    for n in range(5):
        assert collapse_hom(n, n).table == tuple(range(3 * n + 4))
    for n in range(4):
        for j in range(n + 1):
            for m in range(j + 1):
                lhs = collapse_hom(j, m).compose(collapse_hom(n, j))
                assert lhs.table == collapse_hom(n, m).table


def test_collapse_hom_bad_indices():
    with pytest.raises(BadIndices):
        collapse_hom(1, 2)
    with pytest.raises(BadIndices):
        level_quasiorder(1, 2)


def test_collapse_kernel_blocks():
    # kernel of the 2->0 collapse: three singletons and one 7-element block
    k2 = build_kn(2)
    ker = collapse_hom(2, 0).kernel()
    sizes = sorted(len(b) for b in ker.blocks)
    assert sizes == [1, 1, 1, 7]
    big = max(ker.blocks, key=len)
    kleq = k2.algebra.kleq
    assert all(kleq[x, k2.tops(1)] for x in big)


def test_level_quasiorder_poset_iff_top_level():
    for n in range(4):
        for m in range(n + 1):
            q = level_quasiorder(n, m)
            assert q.is_antisymmetric() == (m == n)


def test_level_relation_nesting():
    for n in range(4):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                lo = level_quasiorder(n, j).rel
                hi = level_quasiorder(n, i).rel
                assert (lo & ~hi).sum() == 0
                assert (hi & ~lo).sum() > 0


def test_level_relation_shapes_match_figures():
    # level-n order: a 3n-antichain plus a diamond on the bottom four
    for n in range(4):
        p = level_poset(n)
        comps = order_components(p)
        assert sorted(len(c) for c in comps) == [1] * (3 * n) + [4]
    # one-level case: components {f0} {t0} {T0} and the bottom diamond
    k1 = build_kn(1)
    comps = order_components(level_poset(1))
    assert sorted(map(tuple, comps)) == sorted([
        (k1.f(0),), (k1.t(0),), (k1.tops(0),),
        tuple(sorted([k1.f(1), k1.t(1), k1.tops(1), k1.tops(2)]))])


def test_level_relation_collapse_characterization():
    # (a, b) related at level m iff their collapses are related at the top level
    for n in range(3):
        for m in range(n + 1):
            h = collapse_hom(n, m).table
            snm = level_quasiorder(n, m).rel
            smm = level_quasiorder(m, m).rel
            for a in range(3 * n + 4):
                for b in range(3 * n + 4):
                    assert snm[a, b] == smm[h[a], h[b]]


def test_level_relation_is_subalgebra():
    for n in range(3):
        for m in range(n + 1):
            level_relation_algebra(n, m)  # raises if not closed


def test_level_poset_of_k0_is_diamond():
    diamond = Poset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert find_order_isomorphism(level_poset(0), diamond) is not None


def test_interlaced_k0_only():
    ok, witness = check_interlaced(build_kn(0).algebra)
    assert ok and witness is None
    for n in range(1, 5):
        a = build_kn(n).algebra
        ok, witness = check_interlaced(a)
        assert not ok
        name, x, y, z = witness
        table = getattr(a, name)
        order = a.tleq if name.startswith("k") else a.kleq
        assert order[x, y] and not order[table[x, z], table[y, z]]


def test_paper_interlacing_counterexample():
    # T1 kleq t0, but T1 tmeet T2 is not kleq t0 tmeet T2
    k1 = build_kn(1)
    a = k1.algebra
    x, y, z = k1.tops(1), k1.t(0), k1.tops(2)
    assert a.kleq[x, y]
    assert a.tmeet[x, z] == k1.f(1)
    assert a.tmeet[y, z] == k1.tops(2)
    assert not a.kleq[a.tmeet[x, z], a.tmeet[y, z]]


def test_embed_index_map_names():
    k1, k2 = build_kn(1), build_kn(2)
    emb = embed_index_map(1, 2)
    for i in range(k1.size):
        assert k2.algebra.name_of(emb[i]) == k1.algebra.name_of(i)


def test_truth_order_is_valid_poset():
    for n in range(5):
        Poset(_truth_order(n).copy())
