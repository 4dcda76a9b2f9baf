"""Multisorted natural duality for the default-bilattice varieties.

The dual of an algebra is the disjoint union of its hom-sets into
K_0, ..., K_n, each carrying the pointwise lift of the level order and
linked by post-composition with the collapse maps.  Evaluation recovers
the algebra as the structure-preserving maps back into the alter ego d
with pointwise operations.  The single-sorted quasivariety variant keeps
one universe carrying all the level quasi-orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .algebras import FiniteAlgebra, Homomorphism, homs, size_guard
from .errors import (InvalidDualObject, InvariantViolation, NoWitness,
                     NotInQuasivariety, NotInVariety, SizeOverflow)
from .kn import (build_kn, collapse_hom, level_poset, level_quasiorder,
                 level_relation_algebra, relation_projections, top_index)
from .posets import MonotoneMap, Poset, count_up_sets, doubling, linear_extension

EVAL_TABLE_GUARD = 2048


@dataclass(frozen=True)
class MultisortedSpace:
    """Sorted union of posets, with a linking map from each sort to the one below.

    links[i-1] is the table of g_i from sort i into sort i-1.  labels, when
    present, records where each point came from (for dual spaces: the hom
    tables into the corresponding level algebra).
    """

    sorts: tuple[Poset, ...]
    links: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[tuple, ...]] = None

    @property
    def n(self) -> int:
        return len(self.sorts) - 1

    def sort_sizes(self) -> tuple[int, ...]:
        return tuple(s.size for s in self.sorts)

    def offsets(self) -> tuple[int, ...]:
        offs, acc = [], 0
        for s in self.sorts:
            offs.append(acc)
            acc += s.size
        return tuple(offs)

    def total_points(self) -> int:
        return sum(s.size for s in self.sorts)


def check_dual_object(x: MultisortedSpace) -> tuple[bool, Optional[str]]:
    """Membership conditions for the dual category, finite case.

    Each sort must be a poset, each link a total map into the sort below,
    and points related within a sort must collapse under the link.
    """
    for m, s in enumerate(x.sorts):
        rel = s.rel
        if not rel.diagonal().all():
            return False, f"sort {m} is not reflexive"
        if not np.array_equal(rel | (rel @ rel), rel):
            return False, f"sort {m} is not transitive"
        if not s.is_antisymmetric():
            return False, f"sort {m} is not antisymmetric"
    if len(x.links) != max(len(x.sorts) - 1, 0):
        return False, "wrong number of links"
    for i, g in enumerate(x.links, start=1):
        if len(g) != x.sorts[i].size:
            return False, f"link {i} is not total"
        if any(not 0 <= v < x.sorts[i - 1].size for v in g):
            return False, f"link {i} leaves its codomain"
        rel = x.sorts[i].rel
        for a, b in np.argwhere(rel):
            if g[a] != g[b]:
                return False, f"link {i} does not collapse a related pair"
    return True, None


@dataclass(frozen=True)
class AlterEgo:
    """The dualizing structure: level posets with collapse links, plus the
    single-sorted quasi-order family used for the quasivariety duality."""

    n: int
    space: MultisortedSpace
    quasi_relations: tuple  # level quasi-orders on K_n, top level first


@lru_cache(maxsize=None)
def alter_ego(n: int) -> AlterEgo:
    sorts = tuple(level_poset(m) for m in range(n + 1))
    links = tuple(collapse_hom(i, i - 1).table for i in range(1, n + 1))
    space = MultisortedSpace(sorts, links)
    ok, why = check_dual_object(space)
    if not ok:
        raise InvalidDualObject(why)
    for m in range(n + 1):
        level_relation_algebra(m, m)  # raises unless algebraic over the square
    quasi = tuple(level_quasiorder(n, m) for m in range(n, -1, -1))
    return AlterEgo(n=n, space=space, quasi_relations=quasi)


def _lifted_order(tables: Sequence[tuple[int, ...]], rel: np.ndarray) -> np.ndarray:
    """Pointwise lift of a relation to a family of tuples over its universe."""
    k = len(tables)
    out = np.ones((k, k), dtype=bool)
    for i, x in enumerate(tables):
        for j, y in enumerate(tables):
            out[i, j] = all(rel[a, b] for a, b in zip(x, y))
    return out


def dualize(a: FiniteAlgebra, n: int) -> MultisortedSpace:
    """The natural dual of a: hom-sets into each level, lifted structure.

    Raises NotInVariety when the hom-sets fail to separate the elements.
    """
    hom_lists = [homs(a, build_kn(m).algebra) for m in range(n + 1)]
    tables = [tuple(h.table for h in hl) for hl in hom_lists]
    columns = set()
    all_rows = [t for ts in tables for t in ts]
    for c in range(a.size):
        columns.add(tuple(row[c] for row in all_rows))
    if len(columns) != a.size:
        raise NotInVariety("hom-sets do not separate the elements")
    sorts = []
    for m in range(n + 1):
        rel = _lifted_order(tables[m], level_quasiorder(m, m).rel)
        sorts.append(Poset(rel, labels=tables[m]))
    links = []
    for i in range(1, n + 1):
        h = collapse_hom(i, i - 1).table
        index = {t: k for k, t in enumerate(tables[i - 1])}
        links.append(tuple(index[tuple(h[v] for v in t)] for t in tables[i]))
    space = MultisortedSpace(tuple(sorts), tuple(links), labels=tuple(tables))
    ok, why = check_dual_object(space)
    if not ok:
        raise InvalidDualObject(f"dual of algebra failed membership: {why}")
    return space


def space_maps(x: MultisortedSpace,
               skip_rel: frozenset[int] = frozenset(),
               skip_link: frozenset[int] = frozenset(),
               count_only: bool = False):
    """Sort-respecting maps into the alter ego, as flat value tuples.

    Enumerates sort by sort; candidates are filtered by the link fibre from
    the already-assigned sort below, then by the level order against
    previously assigned comparable points.  skip_rel / skip_link drop the
    named constraints (used by the optimality search).
    """
    n = x.n
    value_rel = [level_quasiorder(m, m).rel for m in range(n + 1)]
    sizes = [3 * m + 4 for m in range(n + 1)]
    fibres = []
    for i in range(1, n + 1):
        h = collapse_hom(i, i - 1).table
        fib: list[list[int]] = [[] for _ in range(sizes[i - 1])]
        for v, img in enumerate(h):
            fib[img].append(v)
        fibres.append(fib)
    orders = [linear_extension(s) for s in x.sorts]
    assign = [[-1] * s.size for s in x.sorts]
    results = []
    count = 0

    def sort_rec(m: int, k: int) -> None:
        nonlocal count
        if m > n:
            if count_only:
                count += 1
            else:
                results.append(tuple(v for row in assign for v in row))
            return
        if k == x.sorts[m].size:
            sort_rec(m + 1, 0)
            return
        p = orders[m][k]
        if m >= 1 and m not in skip_link:
            base = assign[m - 1][x.links[m - 1][p]]
            candidates = fibres[m - 1][base]
        else:
            candidates = range(sizes[m])
        rel = x.sorts[m].rel
        vrel = value_rel[m]
        check_rel = m not in skip_rel
        for v in candidates:
            if check_rel:
                ok = True
                for kk in range(k):
                    q = orders[m][kk]
                    w = assign[m][q]
                    if rel[q, p] and not vrel[w, v]:
                        ok = False
                        break
                    if rel[p, q] and not vrel[v, w]:
                        ok = False
                        break
                if not ok:
                    continue
            assign[m][p] = v
            sort_rec(m, k + 1)
            assign[m][p] = -1

    sort_rec(0, 0)
    if count_only:
        return count
    results.sort()
    return results


def _tuples_to_algebra(universe: list[tuple[int, ...]],
                       space: MultisortedSpace,
                       validate: bool = True) -> FiniteAlgebra:
    """Pointwise bilattice operations on a closed set of flat map tuples."""
    n = space.n
    point_level = []
    for m, s in enumerate(space.sorts):
        point_level.extend([m] * s.size)
    algs = [build_kn(m).algebra for m in range(n + 1)]
    u = np.array(universe, dtype=np.int16).reshape(len(universe), -1)
    npts = u.shape[1]
    stride = npts * 2
    index: dict[bytes, int] = {}
    raw = np.ascontiguousarray(u).tobytes()
    for i in range(len(universe)):
        index[raw[i * stride:(i + 1) * stride]] = i

    def lookup(rows: np.ndarray) -> np.ndarray:
        blob = np.ascontiguousarray(rows, dtype=np.int16).tobytes()
        out = np.empty(rows.shape[0], dtype=np.int16)
        for i in range(rows.shape[0]):
            hit = index.get(blob[i * stride:(i + 1) * stride])
            if hit is None:
                raise InvariantViolation("pointwise image left the map universe")
            out[i] = hit
        return out

    size = len(universe)
    tabs = []
    for opname in ("kmeet", "kjoin", "tmeet", "tjoin"):
        table = np.zeros((size, size), dtype=np.int16)
        ops = [getattr(alg, opname) for alg in algs]
        for i in range(size):
            block = np.empty((size, npts), dtype=np.int16)
            for p in range(npts):
                block[:, p] = ops[point_level[p]][u[i, p], u[:, p]]
            table[i] = lookup(block)
        tabs.append(table)
    negs = [alg.neg for alg in algs]
    block = np.empty((size, npts), dtype=np.int16)
    for p in range(npts):
        block[:, p] = negs[point_level[p]][u[:, p]]
    neg = lookup(block)
    bot_row = np.array([top_index(point_level[p], point_level[p] + 1)
                        for p in range(npts)], dtype=np.int16)
    top_row = np.array([top_index(point_level[p], 0)
                        for p in range(npts)], dtype=np.int16)
    bot = int(lookup(bot_row[None, :])[0])
    top = int(lookup(top_row[None, :])[0])
    return FiniteAlgebra(*tabs, neg, bot, top, validate=validate)


def evaluate(x: MultisortedSpace, table_guard: int = EVAL_TABLE_GUARD,
             validate: bool = True) -> FiniteAlgebra:
    """The algebra of structure-preserving maps from x into the alter ego.

    Element i of the result is space_maps(x)[i]; operations act pointwise.
    Raises SizeOverflow when the map count exceeds the table guard, in
    which that case the count-only routes still apply.
    """
    ok, why = check_dual_object(x)
    if not ok:
        raise InvalidDualObject(why)
    universe = space_maps(x)
    if len(universe) > min(table_guard, size_guard()):
        raise SizeOverflow(
            f"{len(universe)} maps exceed the table guard {table_guard}")
    return _tuples_to_algebra(universe, x, validate=validate)


def evaluation_tuples(a: FiniteAlgebra, x: MultisortedSpace) -> list[tuple[int, ...]]:
    """e(c) for each element c: the flat tuple of all hom values at c.

    x must be dualize(a, n) so that its labels are the hom tables.
    """
    if x.labels is None:
        raise InvalidDualObject("space carries no hom labels")
    rows = [t for ts in x.labels for t in ts]
    return [tuple(row[c] for row in rows) for c in range(a.size)]


def verify_duality(a: FiniteAlgebra, n: int) -> bool:
    """Whether the evaluation map is an isomorphism onto the double dual.

    The evaluation is always a homomorphism (each dual point is a verified
    hom and operations are pointwise), so bijectivity is the content.
    """
    x = dualize(a, n)
    ev = evaluation_tuples(a, x)
    if len(set(ev)) != a.size:
        return False
    return sorted(ev) == space_maps(x)


def dual_of_hom(f: Homomorphism, n: int,
                dom_space: Optional[MultisortedSpace] = None,
                cod_space: Optional[MultisortedSpace] = None,
                ) -> tuple[MultisortedSpace, MultisortedSpace, list[tuple[int, ...]]]:
    """The contravariant action on morphisms: precomposition with f.

    Returns (dual of codomain, dual of domain, per-sort tables sending each
    hom x of the codomain side to x after f).
    """
    xb = cod_space if cod_space is not None else dualize(f.cod, n)
    xa = dom_space if dom_space is not None else dualize(f.dom, n)
    tables = []
    for m in range(n + 1):
        index = {t: k for k, t in enumerate(xa.labels[m])}
        tables.append(tuple(index[tuple(x[f.table[c]] for c in range(f.dom.size))]
                            for x in xb.labels[m]))
    return xb, xa, tables


def counit_check(x: MultisortedSpace) -> bool:
    """Evaluate-then-dualize returns x itself, via point evaluation.

    Sends a point p to the map f -> f(p); checks per-sort bijectivity,
    order preservation both ways, and link compatibility.
    """
    alg = evaluate(x)
    universe = space_maps(x)
    offs = x.offsets()
    d2 = dualize(alg, x.n)
    eps = []
    for m, s in enumerate(x.sorts):
        index = {t: k for k, t in enumerate(d2.labels[m])}
        table = []
        for p in range(s.size):
            point_eval = tuple(u[offs[m] + p] for u in universe)
            if point_eval not in index:
                return False
            table.append(index[point_eval])
        if sorted(table) != list(range(d2.sorts[m].size)):
            return False
        if not np.array_equal(s.rel,
                              d2.sorts[m].rel[np.ix_(table, table)]):
            return False
        eps.append(table)
    for i in range(1, x.n + 1):
        for p in range(x.sorts[i].size):
            if d2.links[i - 1][eps[i][p]] != eps[i - 1][x.links[i - 1][p]]:
                return False
    return True


def free_space(n: int, k: int, guard: Optional[int] = None) -> MultisortedSpace:
    """The dual of the k-generated free algebra: sort-wise k-th power of the
    alter ego with pointwise order and links."""
    if k < 1:
        raise SizeOverflow("need at least one generator")
    sorts = []
    tables_per_sort = []
    for m in range(n + 1):
        base = level_poset(m)
        size = base.size ** k
        if size > size_guard(guard):
            raise SizeOverflow(f"sort {m} of the free dual has {size} points")
        tuples = []
        for idx in range(size):
            digits, rest = [], idx
            for _ in range(k):
                digits.append(rest % base.size)
                rest //= base.size
            tuples.append(tuple(reversed(digits)))
        rel = np.ones((size, size), dtype=bool)
        for i, t1 in enumerate(tuples):
            for j, t2 in enumerate(tuples):
                rel[i, j] = all(base.rel[a, b] for a, b in zip(t1, t2))
        sorts.append(Poset(rel, labels=tuples))
        tables_per_sort.append(tuples)
    links = []
    for i in range(1, n + 1):
        h = collapse_hom(i, i - 1).table
        index = {t: j for j, t in enumerate(tables_per_sort[i - 1])}
        links.append(tuple(index[tuple(h[v] for v in t)]
                           for t in tables_per_sort[i]))
    return MultisortedSpace(tuple(sorts), tuple(links))


def free_algebra(n: int, k: int, table_guard: int = EVAL_TABLE_GUARD,
                 guard: Optional[int] = None) -> FiniteAlgebra:
    return evaluate(free_space(n, k, guard=guard), table_guard=table_guard)


def free_algebra_count(n: int, k: int, route: str = "upsets",
                       guard: Optional[int] = None) -> int:
    """Size of the k-generated free algebra without building its tables.

    route "upsets" counts up-sets of the layered order reconstruction;
    route "maps" counts the structure-preserving maps directly.
    """
    space = free_space(n, k, guard=guard)
    if route == "maps":
        return space_maps(space, count_only=True)
    if route == "upsets":
        return count_up_sets(priestley_reconstruction(space))
    raise ValueError(f"unknown route {route!r}")


def priestley_reconstruction(x: MultisortedSpace) -> Poset:
    """The layered order whose up-sets form the knowledge reduct's dual.

    Doubles every sort into a truth copy and a falsity copy, keeps the sort
    order inside each copy, and places a lower-level point below a
    higher-level one exactly when the composite link sends the higher point
    onto it (both copies relate to both copies).  The result is verified to
    be a partial order with no same-level cross-copy relations.
    """
    ok, why = check_dual_object(x)
    if not ok:
        raise InvalidDualObject(why)
    maps = [MonotoneMap(x.sorts[i], x.sorts[i - 1], x.links[i - 1],
                        validate=False)
            for i in range(1, len(x.sorts))]
    y = doubling(list(x.sorts), maps)
    for i, lab_i in enumerate(y.labels):
        for j, lab_j in enumerate(y.labels):
            if lab_i[0] == lab_j[0] and lab_i[1] != lab_j[1] and y.rel[i, j]:
                raise InvariantViolation(
                    "same-level points in different copies became related")
    return y


def truth_up_indicator(j: int, which: str) -> np.ndarray:
    """Char. function of the knowledge up-set of t_j (or f_j) inside K_j."""
    kj = build_kn(j)
    base = kj.t(j) if which == "t" else kj.f(j)
    return kj.algebra.kleq[base]


def separation_witnesses(n: int) -> dict[tuple[int, int, int], tuple[int, str]]:
    """For each level m and pair a != b in K_m, a level j <= m and a side
    ("t" or "f") whose indicator separates the collapse images."""
    out: dict[tuple[int, int, int], tuple[int, str]] = {}
    for m in range(n + 1):
        size = 3 * m + 4
        for a in range(size):
            for b in range(a + 1, size):
                found = None
                for j in range(m + 1):
                    h = collapse_hom(m, j).table
                    for which in ("t", "f"):
                        omega = truth_up_indicator(j, which)
                        if omega[h[a]] != omega[h[b]]:
                            found = (j, which)
                            break
                    if found:
                        break
                if found is None:
                    raise InvariantViolation(
                        f"elements {a},{b} of level {m} are inseparable")
                out[(m, a, b)] = found
    return out


def maximal_relations_within(j: int, m: int, omega_j: np.ndarray,
                             omega_m: np.ndarray) -> list[frozenset]:
    """Subalgebras of K_j x K_m maximal inside {(a,b): omega_j(a) <= omega_m(b)},
    each returned as a frozenset of pairs."""
    from .algebras import all_subalgebras, product_algebra
    kj, km = build_kn(j).algebra, build_kn(m).algebra
    prod = product_algebra([kj, km])
    admissible = []
    for sub in all_subalgebras(prod):
        pairs = frozenset((s // km.size, s % km.size) for s in sub)
        if all(omega_j[a] <= omega_m[b] for a, b in pairs):
            admissible.append(pairs)
    return [p for p in admissible
            if not any(p < q for q in admissible)]


def _gamma_witness(n: int, m: int, x: MultisortedSpace) -> tuple[int, ...]:
    """The explicit relation-drop witness on the dual of the level-m relation:
    the two projections go to f_m and t_m, every lower point to the local
    knowledge bottom."""
    km = build_kn(m)
    p1, p2 = relation_projections(m, m)
    values = []
    for j in range(n + 1):
        for x_tab in x.labels[j]:
            if j == m and x_tab == tuple(p1):
                values.append(km.f(m))
            elif j == m and x_tab == tuple(p2):
                values.append(km.t(m))
            else:
                values.append(top_index(j, j + 1))
    return tuple(values)


def _mu_witness(n: int, m: int, x: MultisortedSpace) -> tuple[int, ...]:
    """The explicit link-drop witness on the dual of K_m: the identity point
    goes to T_{m-1}, the level-i point to the bottom of K_i."""
    values = []
    for j in range(n + 1):
        for _ in x.labels[j]:
            if j == m:
                values.append(top_index(m, m - 1))
            else:
                values.append(top_index(j, j + 1))
    return tuple(values)


def optimality_witness(n: int, drop: tuple[str, int]) -> tuple[int, ...]:
    """A structure-preserving non-evaluation map after dropping one piece.

    drop is ("rel", m) to drop the level-m order or ("op", m) to drop the
    m-th collapse link (m >= 1).  The exhaustive search must find the
    explicit witness of the corresponding shape; NoWitness signals a
    verification failure.
    """
    kind, m = drop
    if kind == "rel":
        if not 0 <= m <= n:
            raise NoWitness("relation index out of range")
        test = level_relation_algebra(m, m)
        x = dualize(test, n)
        found = space_maps(x, skip_rel=frozenset({m}))
        explicit = _gamma_witness(n, m, x)
    elif kind == "op":
        if not 1 <= m <= n:
            raise NoWitness("link index out of range")
        test = build_kn(m).algebra
        x = dualize(test, n)
        found = space_maps(x, skip_link=frozenset({m}))
        explicit = _mu_witness(n, m, x)
    else:
        raise ValueError(f"unknown drop kind {kind!r}")
    evaluations = set(evaluation_tuples(test, x))
    non_evals = [t for t in found if t not in evaluations]
    if not non_evals:
        raise NoWitness(f"dropping {drop} still dualizes the test algebra")
    if explicit not in non_evals:
        raise InvariantViolation("explicit witness missing from the search")
    return explicit


def no_witness_without_drop(n: int) -> bool:
    """With the full structure, every structure-preserving map on the
    optimality test algebras is an evaluation."""
    for m in range(n + 1):
        test = level_relation_algebra(m, m)
        x = dualize(test, n)
        if sorted(set(evaluation_tuples(test, x))) != space_maps(x):
            return False
    for m in range(1, n + 1):
        test = build_kn(m).algebra
        x = dualize(test, n)
        if sorted(set(evaluation_tuples(test, x))) != space_maps(x):
            return False
    return True


@dataclass(frozen=True)
class QuasiSpace:
    """A single universe carrying the n+1 lifted level quasi-orders,
    finest (the partial order) first."""

    relations: tuple  # boolean matrices, S_{n,n} lift first
    labels: Optional[tuple[tuple, ...]] = None

    @property
    def size(self) -> int:
        return self.relations[0].shape[0]


def check_quasi_dual_object(x: QuasiSpace) -> tuple[bool, Optional[str]]:
    """Finite membership conditions for the quasivariety dual category:
    the finest relation is a partial order, all are nested quasi-orders,
    and each converse sits inside every strictly coarser relation."""
    rels = x.relations
    for i, r in enumerate(rels):
        if not r.diagonal().all():
            return False, f"relation {i} is not reflexive"
        if not np.array_equal(r | (r @ r), r):
            return False, f"relation {i} is not transitive"
    first = rels[0]
    if not np.array_equal(first & first.T, np.eye(x.size, dtype=bool)):
        return False, "finest relation is not antisymmetric"
    for i in range(len(rels) - 1):
        if (rels[i] & ~rels[i + 1]).any():
            return False, f"relation {i} is not contained in relation {i + 1}"
    for i in range(len(rels)):
        for j in range(i + 1, len(rels)):
            if (rels[i].T & ~rels[j]).any():
                return False, f"converse of {i} escapes relation {j}"
    return True, None


def quasivariety_dualize(a: FiniteAlgebra, n: int) -> QuasiSpace:
    """Single-sorted dual: homs into K_n with all lifted level quasi-orders."""
    hs = homs(a, build_kn(n).algebra)
    tables = tuple(h.table for h in hs)
    cols = {tuple(t[c] for t in tables) for c in range(a.size)}
    if len(cols) != a.size:
        raise NotInQuasivariety("homs into the top level do not separate")
    rels = tuple(_lifted_order(tables, level_quasiorder(n, m).rel)
                 for m in range(n, -1, -1))
    return QuasiSpace(relations=rels, labels=tables)


def quasi_space_maps(x: QuasiSpace, n: int, count_only: bool = False):
    """Maps into K_n preserving every lifted quasi-order."""
    rels = [level_quasiorder(n, m).rel for m in range(n, -1, -1)]
    size = 3 * n + 4
    npts = x.size
    assign = [-1] * npts
    results = []
    count = 0

    def rec(k: int) -> None:
        nonlocal count
        if k == npts:
            if count_only:
                count += 1
            else:
                results.append(tuple(assign))
            return
        for v in range(size):
            ok = True
            for q in range(k):
                w = assign[q]
                for xr, vr in zip(x.relations, rels):
                    if xr[q, k] and not vr[w, v]:
                        ok = False
                        break
                    if xr[k, q] and not vr[v, w]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                assign[k] = v
                rec(k + 1)
                assign[k] = -1

    rec(0)
    if count_only:
        return count
    results.sort()
    return results


def verify_quasivariety_duality(a: FiniteAlgebra, n: int) -> bool:
    x = quasivariety_dualize(a, n)
    ok, why = check_quasi_dual_object(x)
    if not ok:
        raise InvalidDualObject(why)
    ev = sorted({tuple(t[c] for t in x.labels) for c in range(a.size)})
    if len(ev) != a.size:
        return False
    return ev == quasi_space_maps(x, n)


def alter_ego_quasi_space(n: int) -> QuasiSpace:
    """The single-sorted alter ego itself, as a quasi-order family on K_n."""
    rels = tuple(level_quasiorder(n, m).rel for m in range(n, -1, -1))
    return QuasiSpace(relations=rels,
                      labels=tuple((i,) for i in range(3 * n + 4)))
