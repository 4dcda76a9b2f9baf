"""Finite quasi-orders, posets and the layered order constructions.

All relations are stored as full boolean matrices, reflexively and
transitively closed; Hasse reductions are derived on demand.  Values are
immutable after construction.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import LengthMismatch, NotSemiConstant, ValidationError


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean relation matrix."""
    closed = rel.astype(bool).copy()
    np.fill_diagonal(closed, True)
    while True:
        nxt = closed | (closed @ closed)
        if np.array_equal(nxt, closed):
            return nxt
        closed = nxt


class QuasiOrder:
    """A reflexive, transitive boolean relation on {0, ..., size-1}."""

    __slots__ = ("rel", "size", "labels", "_components")

    def __init__(self, rel: np.ndarray, labels: Optional[Sequence] = None,
                 validate: bool = True):
        self._components = None
        rel = np.asarray(rel, dtype=bool)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
            raise ValidationError("relation matrix must be square")
        if validate:
            if not rel.diagonal().all():
                raise ValidationError("relation is not reflexive")
            if not np.array_equal(rel | (rel @ rel), rel):
                raise ValidationError("relation is not transitive")
        rel.setflags(write=False)
        self.rel = rel
        self.size = rel.shape[0]
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]],
                   labels: Optional[Sequence] = None) -> "QuasiOrder":
        rel = np.zeros((size, size), dtype=bool)
        for i, j in pairs:
            rel[i, j] = True
        return cls(transitive_closure(rel), labels=labels, validate=False)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.rel[i, j])

    def is_antisymmetric(self) -> bool:
        both = self.rel & self.rel.T
        return bool(np.array_equal(both, np.eye(self.size, dtype=bool)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuasiOrder)
                and self.size == other.size
                and np.array_equal(self.rel, other.rel))

    def __hash__(self):
        return hash((self.size, self.rel.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"


class Poset(QuasiOrder):
    """A QuasiOrder that is additionally antisymmetric."""

    def __init__(self, rel, labels=None, validate: bool = True):
        super().__init__(rel, labels=labels, validate=validate)
        if validate and not self.is_antisymmetric():
            raise ValidationError("relation is not antisymmetric")

    def strict(self) -> np.ndarray:
        s = self.rel & ~np.eye(self.size, dtype=bool)
        return s

    def covers(self) -> list[tuple[int, int]]:
        """Hasse reduction as a sorted list of (lower, upper) pairs."""
        s = self.strict()
        # (i, j) is a cover when i < j and no k has i < k < j
        via = s @ s
        out = [(int(i), int(j)) for i, j in np.argwhere(s & ~via)]
        return sorted(out)

    def dual(self) -> "Poset":
        return Poset(self.rel.T.copy(), labels=self.labels, validate=False)


def antichain(size: int) -> Poset:
    return Poset(np.eye(size, dtype=bool), validate=False)


def chain(size: int) -> Poset:
    rel = np.triu(np.ones((size, size), dtype=bool))
    return Poset(rel, validate=False)


class MonotoneMap:
    """An order-preserving map between posets, stored as an image table."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: Poset, cod: Poset, table: Sequence[int],
                 validate: bool = True):
        table = tuple(int(v) for v in table)
        if len(table) != dom.size:
            raise ValidationError("table length must equal the domain size")
        if any(not (0 <= v < cod.size) for v in table):
            raise ValidationError("table value out of codomain range")
        if validate and table:
            t = np.array(table, dtype=int)
            if not cod.rel[t[:, None], t[None, :]][dom.rel].all():
                raise ValidationError("map is not order-preserving")
        self.dom = dom
        self.cod = cod
        self.table = table

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return (isinstance(other, MonotoneMap) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """self after other (other first)."""
        if other.cod != self.dom:
            raise ValidationError("maps are not composable")
        return MonotoneMap(other.dom, self.cod,
                           tuple(self.table[v] for v in other.table),
                           validate=False)


def linear_extension(p: QuasiOrder) -> list[int]:
    """A fixed linear extension: repeatedly remove minimal elements by index."""
    strict = p.rel & ~p.rel.T  # works for quasi-orders too
    remaining = set(range(p.size))
    out: list[int] = []
    while remaining:
        layer = sorted(x for x in remaining
                       if not any(strict[y, x] for y in remaining if y != x))
        out.extend(layer)
        remaining.difference_update(layer)
    return out


def order_components(p: QuasiOrder) -> list[list[int]]:
    """Connected components of the comparability graph, sorted by minimum."""
    if p._components is not None:
        return p._components
    adj = p.rel | p.rel.T
    seen = [False] * p.size
    comps = []
    for start in range(p.size):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in np.flatnonzero(adj[x]):
                if not seen[y]:
                    seen[y] = True
                    stack.append(int(y))
        comps.append(sorted(comp))
    result = sorted(comps)
    p._components = result
    return result


def is_semi_constant(phi: MonotoneMap) -> bool:
    """True when every order component of the domain maps to one point."""
    return all(len({phi.table[x] for x in comp}) == 1
               for comp in order_components(phi.dom))


def _cone_masks(p: Poset) -> tuple[list[int], list[int]]:
    """Bitmask up-cones and down-cones (both including the element itself)."""
    up = [0] * p.size
    down = [0] * p.size
    for i in range(p.size):
        for j in np.flatnonzero(p.rel[i]):
            up[i] |= 1 << int(j)
        for j in np.flatnonzero(p.rel[:, i]):
            down[i] |= 1 << int(j)
    return up, down


def up_sets(p: Poset) -> list[frozenset[int]]:
    """All up-sets of p, each exactly once, in a canonical order.

    Enumeration branches over a fixed linear extension, deciding elements
    from maximal to minimal so the inclusion test is a single mask check.
    """
    up, _ = _cone_masks(p)
    order = linear_extension(p)
    strict_up = [up[x] & ~(1 << x) for x in range(p.size)]
    results: list[int] = []

    def rec(k: int, cur: int) -> None:
        if k < 0:
            results.append(cur)
            return
        x = order[k]
        rec(k - 1, cur)
        if strict_up[x] & ~cur == 0:
            rec(k - 1, cur | (1 << x))

    rec(p.size - 1, 0)
    sets = [frozenset(i for i in range(p.size) if mask >> i & 1)
            for mask in results]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def count_up_sets(p: Poset) -> int:
    """Number of up-sets, without materializing them.

    Splits on order components (product rule) and otherwise branches on a
    pivot's membership, memoizing on the bitmask of remaining elements.
    """
    up, down = _cone_masks(p)
    adj = [up[i] | down[i] for i in range(p.size)]
    memo: dict[int, int] = {}

    def components(mask: int) -> list[int]:
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                x = frontier & -frontier
                frontier &= frontier - 1
                nbrs = adj[x.bit_length() - 1] & mask & ~comp
                comp |= nbrs
                frontier |= nbrs
            comps.append(comp)
            rest &= ~comp
        return comps

    def count(mask: int) -> int:
        if mask == 0:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comps = components(mask)
        if len(comps) > 1:
            r = 1
            for c in comps:
                r *= count(c)
        else:
            best, best_score = -1, -1
            m = mask
            while m:
                x = (m & -m).bit_length() - 1
                m &= m - 1
                score = ((up[x] | down[x]) & mask).bit_count()
                if score > best_score:
                    best, best_score = x, score
            r = count(mask & ~up[best]) + count(mask & ~down[best])
        memo[mask] = r
        return r

    return count((1 << p.size) - 1)


def find_order_isomorphism(p: Poset, q: Poset) -> Optional[tuple[int, ...]]:
    """A bijection p -> q preserving and reflecting the order, or None.

    Backtracking with up/down degree profiles as the pruning invariant.
    """
    if p.size != q.size:
        return None

    def profile(r: QuasiOrder, i: int) -> tuple[int, int]:
        return int(r.rel[i].sum()), int(r.rel[:, i].sum())

    p_prof = [profile(p, i) for i in range(p.size)]
    q_prof = [profile(q, i) for i in range(q.size)]
    if sorted(p_prof) != sorted(q_prof):
        return None
    img = [-1] * p.size
    used = [False] * q.size

    def rec(i: int) -> bool:
        if i == p.size:
            return True
        for v in range(q.size):
            if used[v] or p_prof[i] != q_prof[v]:
                continue
            if all(p.rel[i, j] == q.rel[v, img[j]]
                   and p.rel[j, i] == q.rel[img[j], v]
                   for j in range(i)):
                img[i] = v
                used[v] = True
                if rec(i + 1):
                    return True
                img[i] = -1
                used[v] = False
        return False

    return tuple(img) if rec(0) else None


def restricted_linear_sum(s: Poset, t: Poset, phi: MonotoneMap) -> Poset:
    """Stack t above s, ordering phi(y) below y for each y in t.

    phi must be semi-constant; elements are re-indexed as s-block then
    t-block, recorded in the labels as ("s", i) / ("t", j).
    """
    if phi.dom != t or phi.cod != s:
        raise ValidationError("phi must map t into s")
    if not is_semi_constant(phi):
        raise NotSemiConstant("linking map is not semi-constant")
    n = s.size + t.size
    rel = np.zeros((n, n), dtype=bool)
    rel[:s.size, :s.size] = s.rel
    rel[s.size:, s.size:] = t.rel
    for y in range(t.size):
        rel[phi.table[y], s.size + y] = True
    labels = tuple(("s", i) for i in range(s.size)) + \
        tuple(("t", j) for j in range(t.size))
    return Poset(transitive_closure(rel), labels=labels)


def doubling(layers: Sequence[Poset], links: Sequence[MonotoneMap]) -> Poset:
    """Two copies of every layer, each linked to both copies of the layer below.

    links[i-1] maps layers[i] to layers[i-1] and must be semi-constant.
    Elements are indexed layer by layer, copy 0 ("t") before copy 1 ("f"),
    with labels (layer, copy, local index).
    """
    if len(links) != len(layers) - 1:
        raise LengthMismatch(
            f"{len(layers)} layers need {len(layers) - 1} links, got {len(links)}")
    for i, phi in enumerate(links, start=1):
        if phi.dom != layers[i] or phi.cod != layers[i - 1]:
            raise ValidationError(f"link {i} does not map layer {i} to layer {i - 1}")
        if not is_semi_constant(phi):
            raise NotSemiConstant(f"link {i} is not semi-constant")

    offsets = []
    total = 0
    for layer in layers:
        offsets.append(total)
        total += 2 * layer.size

    def idx(layer_i: int, copy: int, local: int) -> int:
        return offsets[layer_i] + copy * layers[layer_i].size + local

    rel = np.zeros((total, total), dtype=bool)
    labels = []
    for li, layer in enumerate(layers):
        for copy in (0, 1):
            base = idx(li, copy, 0)
            rel[base:base + layer.size, base:base + layer.size] = layer.rel
            labels.extend((li, copy, x) for x in range(layer.size))
    for li, phi in enumerate(links, start=1):
        for y in range(layers[li].size):
            img = phi.table[y]
            for copy in (0, 1):
                for copy_below in (0, 1):
                    rel[idx(li - 1, copy_below, img), idx(li, copy, y)] = True
    return Poset(transitive_closure(rel), labels=tuple(labels))
