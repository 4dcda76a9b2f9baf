"""Verification suites: every structural claim the library is built around,
runnable standalone and summarized as one pass/fail line each."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebras import (Congruence, FiniteAlgebra, all_subalgebras,
                       congruence_lattice, find_isomorphism, generate, homs,
                       power, product_algebra, quotient, subalgebra)
from .duality import (alter_ego_quasi_space, check_quasi_dual_object, dualize,
                      free_algebra, free_algebra_count,
                      no_witness_without_drop, optimality_witness,
                      priestley_reconstruction, verify_duality,
                      verify_quasivariety_duality)
from .kn import (build_kn, check_interlaced, collapse_hom,
                 level_relation_algebra, level_relation_pairs,
                 relation_projections)
from .lattices import (dual_map, dual_poset, image_complemented,
                       lattice_homs, lattice_isomorphic, upset_iso,
                       upset_lattice)
from .posets import (MonotoneMap, Poset, count_up_sets,
                     find_order_isomorphism, is_semi_constant,
                     order_components, restricted_linear_sum, up_sets)
from .product import (build_product, default_value_map,
                      product_representation, truth_order_lex_check,
                      two_chain_sequence)

RANDOM_SEED = 20260810


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _run(name: str, fn: Callable[[], str]) -> SuiteResult:
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail = f"FAILED: {exc}"
        ok = False
    return SuiteResult(name, ok, detail, time.perf_counter() - start)


def criterion_6_algebras(max_n: int = 2):
    """The duality test bed: every subalgebra of K_i x K_j for i,j <= 1 and,
    for n=2, twenty seeded random subalgebras of K_0 x K_1 x K_2."""
    small = []
    for i in range(min(max_n, 1) + 1):
        for j in range(min(max_n, 1) + 1):
            prod = product_algebra([build_kn(i).algebra, build_kn(j).algebra])
            for u in all_subalgebras(prod):
                small.append((subalgebra(prod, u, validate=False), max(i, j)))
    random20 = []
    if max_n >= 2:
        prod = product_algebra([build_kn(m).algebra for m in range(3)])
        rng = random.Random(RANDOM_SEED)
        seen = set()
        while len(seen) < 20:
            seed = rng.sample(range(prod.size), rng.randint(1, 3))
            u = generate(prod, seed)
            if u not in seen:
                seen.add(u)
                random20.append((subalgebra(prod, u, validate=False), 2))
    return small, random20


def crit_1_free_counts(max_n: Optional[int] = None) -> str:
    e_route = free_algebra(0, 1).size
    u0 = free_algebra_count(0, 1, route="upsets")
    m0 = free_algebra_count(0, 1, route="maps")
    assert e_route == u0 == m0 == 36, f"level-0 free count {e_route},{u0},{m0}"
    u1 = free_algebra_count(1, 1, route="upsets")
    assert u1 == 5879, f"level-1 free count {u1}"
    m1 = free_algebra_count(1, 1, route="maps")
    assert m1 == 5879, f"level-1 map count {m1}"
    return "free sizes 36 (three routes) and 5879 (both routes)"


def crit_2_subalgebra_census(max_n: Optional[int] = None) -> str:
    top = 2 if max_n is None else min(max_n, 2)
    counts = []
    for n in range(top + 1):
        kn = build_kn(n).algebra
        sq = power(kn, 2)
        got = set(all_subalgebras(sq))
        expected = {tuple(range(sq.size))}
        for m in range(n + 1):
            s = tuple(sorted(i * kn.size + j
                             for i, j in level_relation_pairs(n, m)))
            c = tuple(sorted(j * kn.size + i
                             for i, j in level_relation_pairs(n, m)))
            expected |= {s, c, tuple(sorted(set(s) & set(c)))}
        assert got == expected, f"census mismatch for level {n}"
        assert len(got) == 3 * n + 4
        counts.append(len(got))
    return f"square subalgebra counts {counts}"


def crit_3_relation_count(max_n: Optional[int] = None) -> str:
    top = 2 if max_n is None else min(max_n, 2)
    out = []
    for n in range(1, top + 1):
        total = 0
        for i in range(n + 1):
            for j in range(n + 1):
                prod = product_algebra([build_kn(i).algebra, build_kn(j).algebra])
                total += len(all_subalgebras(prod))
        expected = (n + 1) * (2 * n * n + 9 * n + 8) // 2
        assert total == expected, f"n={n}: {total} != {expected}"
        out.append(total)
    return f"total binary relation counts {out}"


def crit_4_congruences(max_n: Optional[int] = None) -> str:
    top = 4 if max_n is None else min(max_n, 4)
    for n in range(top + 1):
        a = build_kn(n).algebra
        congs = congruence_lattice(a)
        assert len(congs) == n + 2, f"level {n}: {len(congs)} congruences"
        for c1, c2 in zip(congs, congs[1:]):
            assert c1.refines(c2), f"level {n} congruences not a chain"
        kernels = {collapse_hom(n, m).kernel() for m in range(n + 1)}
        full = Congruence(a, [0] * a.size)
        assert set(congs) == kernels | {full}
        for m in range(n + 1):
            q = quotient(a, collapse_hom(n, m).kernel())
            assert find_isomorphism(q, build_kn(m).algebra) is not None
    return f"chains of n+2 collapse kernels, quotients verified, n <= {top}"


def crit_5_hom_census(max_n: Optional[int] = None) -> str:
    top = 3 if max_n is None else min(max_n, 3)
    for i in range(top + 1):
        for j in range(top + 1):
            hs = homs(build_kn(i).algebra, build_kn(j).algebra)
            assert len(hs) == (1 if j <= i else 0), f"homs({i},{j})"
            if j <= i:
                assert hs[0].table == collapse_hom(i, j).table
    for m in range(min(top, 2) + 1):
        rel = level_relation_algebra(m, m)
        hs = homs(rel, build_kn(m).algebra)
        p1, p2 = relation_projections(m, m)
        assert {h.table for h in hs} == {tuple(p1), tuple(p2)}, f"level {m}"
    return f"hom counts [j<=i] for i,j <= {top}; relation homs are projections"


def crit_6_duality(max_n: Optional[int] = None) -> str:
    small, random20 = criterion_6_algebras(2 if max_n is None else max_n)
    assert len({a.size for a, _ in small}) >= 3 and len(small) >= 7
    checked = 0
    for a, n in small:
        assert verify_duality(a, max(n, 1)), f"duality fails at size {a.size}"
        checked += 1
        for theta in congruence_lattice(a):
            assert verify_duality(quotient(a, theta), max(n, 1))
            checked += 1
    for a, n in random20:
        assert verify_duality(a, n), f"duality fails at size {a.size}"
        checked += 1
    return f"evaluation iso on {checked} algebras (subalgebras, quotients, random)"


def crit_7_optimality(max_n: Optional[int] = None) -> str:
    top = 2 if max_n is None else min(max_n, 2)
    found = 0
    for n in range(1, top + 1):
        for m in range(n + 1):
            optimality_witness(n, ("rel", m))  # asserts the explicit shape
            found += 1
        for m in range(1, n + 1):
            optimality_witness(n, ("op", m))
            found += 1
        assert no_witness_without_drop(n), f"phantom witness at n={n}"
    return f"{found} drop witnesses match the explicit formulas; none without drops"


def crit_8_priestley(max_n: Optional[int] = None) -> str:
    small, random20 = criterion_6_algebras(2 if max_n is None else max_n)
    checked = 0
    for a, n in small + random20:
        y = priestley_reconstruction(dualize(a, max(n, 1)))
        assert lattice_isomorphic(upset_lattice(y), a.knowledge_reduct()), \
            f"reconstruction fails at size {a.size}"
        checked += 1
    for n in range(6):
        y = priestley_reconstruction(dualize(build_kn(n).algebra, n))
        assert y.size == 2 * (n + 1)
        assert count_up_sets(y) == 3 * n + 4, f"layered pair count at n={n}"
    return f"reconstruction matches knowledge reducts on {checked} algebras"


def all_posets_up_to(k: int) -> list[Poset]:
    """All posets with at most k elements, one per isomorphism class."""

    def canon(rel: np.ndarray) -> bytes:
        n = rel.shape[0]
        best = None
        for perm in itertools.permutations(range(n)):
            p = list(perm)
            cand = rel[np.ix_(p, p)].tobytes()
            if best is None or cand < best:
                best = cand
        return best

    by_size: list[list[np.ndarray]] = [[np.eye(1, dtype=bool)]]
    for size in range(2, k + 1):
        seen = {}
        for rel in by_size[-1]:
            m = size - 1
            base_poset = Poset(rel.copy(), validate=False)
            ups = up_sets(base_poset)
            downs = [frozenset(range(m)) - u for u in ups]
            for up in ups:
                for down in downs:
                    if up & down:
                        continue
                    if not all(rel[d, u] for d in down for u in up):
                        continue
                    ext = np.eye(size, dtype=bool)
                    ext[:m, :m] = rel
                    for u in up:
                        ext[m, u] = True
                    for d in down:
                        ext[d, m] = True
                    key = canon(ext)
                    if key not in seen:
                        seen[key] = ext
        by_size.append(list(seen.values()))
    out = []
    for group in by_size:
        out.extend(Poset(rel.copy(), validate=True) for rel in group)
    return out


def crit_9_semi_constant_equivalence(max_n: Optional[int] = None) -> str:
    posets = all_posets_up_to(5)
    assert [sum(1 for p in posets if p.size == s) for s in range(1, 6)] == \
        [1, 2, 5, 16, 63], "poset enumeration is off"
    lattices = [upset_lattice(p) for p in posets]
    total = 0
    for ldom in lattices:
        for lcod in lattices:
            for f in lattice_homs(ldom, lcod):
                phi = dual_map(f)  # raises on internal disagreement
                assert is_semi_constant(phi) == image_complemented(f)
                total += 1
    return f"equivalence over {total} homs between {len(lattices)} lattices"


def crit_10_product_representation(max_n: Optional[int] = None) -> str:
    small, random20 = criterion_6_algebras(2 if max_n is None else max_n)
    checked = 0
    for a, n in small + random20:
        product_representation(a, max(n, 1))  # verified internally
        checked += 1
    for n in range(4):
        a = build_kn(n).algebra
        s, iso, prod = product_representation(a, n)
        assert all(l.size == 2 for l in s.lattices)
        assert prod.size == 3 * n + 4
        phi = default_value_map(n)
        assert all(phi[prod.universe[iso[c]]] == c for c in range(a.size))
        assert truth_order_lex_check(n)
    return f"verified isomorphisms on {checked} algebras plus the level family"


def crit_11_quasivariety(max_n: Optional[int] = None) -> str:
    top = 2 if max_n is None else min(max(max_n, 1), 2)
    checked = 0
    for n in range(1, top + 1):
        sq = power(build_kn(n).algebra, 2)
        for u in all_subalgebras(sq):
            assert verify_quasivariety_duality(subalgebra(sq, u), n), \
                f"quasivariety duality fails at n={n}, size {len(u)}"
            checked += 1
    for n in range(4):
        ok, why = check_quasi_dual_object(alter_ego_quasi_space(n))
        assert ok, why
    return f"single-sorted evaluation iso on {checked} square subalgebras"


def crit_12_property_suite(max_n: Optional[int] = None) -> str:
    rng = random.Random(RANDOM_SEED)
    posets = all_posets_up_to(4)
    for p in posets:
        assert find_order_isomorphism(dual_poset(upset_lattice(p)), p) is not None
        upset_iso(upset_lattice(p))
    for _ in range(20):
        size = rng.randint(5, 8)
        pairs = [(i, j) for i in range(size) for j in range(i + 1, size)
                 if rng.random() < 0.3]
        p = Poset.from_pairs(size, pairs)
        assert find_order_isomorphism(dual_poset(upset_lattice(p)), p) is not None
    for _ in range(30):
        sizes = rng.randint(1, 4), rng.randint(1, 4)
        mk = []
        for size in sizes:
            pairs = [(i, j) for i in range(size) for j in range(i + 1, size)
                     if rng.random() < 0.4]
            mk.append(Poset.from_pairs(size, pairs))
        s, t = mk
        table = [0] * t.size
        for comp in order_components(t):
            v = rng.randrange(s.size)
            for xx in comp:
                table[xx] = v
        r = restricted_linear_sum(s, t, MonotoneMap(t, s, table, validate=False))
        ns, nt, n = count_up_sets(s), count_up_sets(t), count_up_sets(r)
        assert ns + nt - 1 <= n <= ns * nt
    for n in range(5):
        a = build_kn(n).algebra
        FiniteAlgebra(a.kmeet, a.kjoin, a.tmeet, a.tjoin, a.neg, a.bot, a.top,
                      validate=True)
        ok, _ = check_interlaced(a)
        assert ok == (n == 0)
    for n in range(3):
        prod = build_product(two_chain_sequence(n))
        neg = prod.algebra.neg
        assert np.array_equal(neg[neg], np.arange(prod.size))
    return "roundtrips, bounds, involution and interlacing checks hold"


CRITERIA: list[tuple[str, Callable]] = [
    ("1 free-algebra counts", crit_1_free_counts),
    ("2 subalgebra census", crit_2_subalgebra_census),
    ("3 relation-count formula", crit_3_relation_count),
    ("4 congruence chains", crit_4_congruences),
    ("5 hom census", crit_5_hom_census),
    ("6 duality at desk scale", crit_6_duality),
    ("7 optimality witnesses", crit_7_optimality),
    ("8 Priestley reconstruction", crit_8_priestley),
    ("9 semi-constant equivalence", crit_9_semi_constant_equivalence),
    ("10 product representation", crit_10_product_representation),
    ("11 quasivariety duality", crit_11_quasivariety),
    ("12 property suites", crit_12_property_suite),
]

SUITE_NAMES = {
    "counts": [0], "subalg": [1], "relcount": [2], "congruences": [3],
    "homs": [4], "duality": [5], "optimality": [6], "priestley": [7],
    "lemma": [8], "prodrep": [9], "quasivariety": [10], "properties": [11],
    "all": list(range(12)),
}


def run_suite(suite: str = "all",
              max_n: Optional[int] = None) -> list[SuiteResult]:
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from "
                         f"{sorted(SUITE_NAMES)}")
    results = []
    for idx in SUITE_NAMES[suite]:
        name, fn = CRITERIA[idx]
        results.append(_run(name, lambda fn=fn: fn(max_n)))
    return results
