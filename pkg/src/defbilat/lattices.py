"""Finite bounded distributive lattices and finite Priestley/Birkhoff duality.

The dual of a lattice is taken literally as its set of homomorphisms into
the two-element lattice, ordered pointwise; the dual of a poset is its
lattice of up-sets under union and intersection.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import IsoFailure, InvariantViolation, ValidationError
from .posets import (MonotoneMap, Poset, is_semi_constant, linear_extension,
                     up_sets)

TWO_MEET = np.array([[0, 0], [0, 1]], dtype=np.int16)
TWO_JOIN = np.array([[0, 1], [1, 1]], dtype=np.int16)


class DistLattice:
    """A bounded distributive lattice given by meet/join tables."""

    __slots__ = ("size", "meet", "join", "bot", "top", "labels", "_leq")

    def __init__(self, meet, join, bot: int, top: int,
                 labels: Optional[Sequence] = None, validate: bool = True):
        meet = np.ascontiguousarray(meet, dtype=np.int16)
        join = np.ascontiguousarray(join, dtype=np.int16)
        n = meet.shape[0]
        if meet.shape != (n, n) or join.shape != (n, n):
            raise ValidationError("meet/join tables must be square and equal-sized")
        self.size = n
        self.meet = meet
        self.join = join
        self.bot = int(bot)
        self.top = int(top)
        self.labels = tuple(labels) if labels is not None else None
        self._leq = None
        meet.setflags(write=False)
        join.setflags(write=False)
        if validate:
            self._validate()

    def _validate(self) -> None:
        n = self.size
        idx = np.arange(n, dtype=np.int16)
        for name, t in (("meet", self.meet), ("join", self.join)):
            if not np.array_equal(t, t.T):
                raise ValidationError(f"{name} is not commutative")
            if not np.array_equal(t.diagonal(), idx):
                raise ValidationError(f"{name} is not idempotent")
            for z in range(n):
                if not np.array_equal(t[:, z][t], t[:, t[:, z]]):
                    raise ValidationError(f"{name} is not associative")
        if not (self.meet[idx[:, None], self.join] == idx[:, None]).all():
            raise ValidationError("absorption (meet over join) fails")
        if not (self.join[idx[:, None], self.meet] == idx[:, None]).all():
            raise ValidationError("absorption (join over meet) fails")
        if not (self.meet[self.bot] == self.bot).all():
            raise ValidationError("bot is not the bottom")
        if not (self.join[self.top] == self.top).all():
            raise ValidationError("top is not the top")
        for z in range(n):
            lhs = self.meet[:, self.join[:, z]]
            rhs = self.join[self.meet, self.meet[:, z][:, None]]
            if not np.array_equal(lhs, rhs):
                raise ValidationError("distributivity fails")

    @property
    def leq(self) -> np.ndarray:
        if self._leq is None:
            leq = self.meet == np.arange(self.size, dtype=np.int16)[:, None]
            leq.setflags(write=False)
            self._leq = leq
        return self._leq

    def order_poset(self) -> Poset:
        return Poset(self.leq.copy(), labels=self.labels, validate=False)

    def __eq__(self, other):
        return (isinstance(other, DistLattice) and self.size == other.size
                and self.bot == other.bot and self.top == other.top
                and np.array_equal(self.meet, other.meet)
                and np.array_equal(self.join, other.join))

    def __hash__(self):
        return hash((self.size, self.meet.tobytes(), self.join.tobytes()))

    def __repr__(self):
        return f"DistLattice(size={self.size})"


def two() -> DistLattice:
    return DistLattice(TWO_MEET, TWO_JOIN, 0, 1, validate=False)


def lattice_from_order(leq, labels=None, validate: bool = True) -> DistLattice:
    """Derive meet/join tables from an order matrix by bound search.

    Raises ValidationError when some pair lacks a unique greatest lower or
    least upper bound, i.e. when the order is not a lattice order.
    """
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    meet = np.zeros((n, n), dtype=np.int16)
    join = np.zeros((n, n), dtype=np.int16)
    for x in range(n):
        for y in range(x, n):
            lower = np.flatnonzero(leq[:, x] & leq[:, y])
            glb = [int(c) for c in lower if leq[lower, c].all()]
            upper = np.flatnonzero(leq[x] & leq[y])
            lub = [int(c) for c in upper if leq[c, upper].all()]
            if len(glb) != 1 or len(lub) != 1:
                raise ValidationError(f"pair ({x},{y}) has no unique bounds")
            meet[x, y] = meet[y, x] = glb[0]
            join[x, y] = join[y, x] = lub[0]
    bot = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    return DistLattice(meet, join, bot, top, labels=labels, validate=validate)


def product_lattice(a: DistLattice, b: DistLattice) -> DistLattice:
    """Direct product, pairs indexed row-major (a-coordinate major)."""
    n = a.size * b.size
    ia, ib = np.divmod(np.arange(n), b.size)
    meet = a.meet[ia[:, None], ia[None, :]] * b.size + b.meet[ib[:, None], ib[None, :]]
    join = a.join[ia[:, None], ia[None, :]] * b.size + b.join[ib[:, None], ib[None, :]]
    return DistLattice(meet.astype(np.int16), join.astype(np.int16),
                       a.bot * b.size + b.bot, a.top * b.size + b.top,
                       validate=False)


class LatticeHom:
    """A bounded lattice homomorphism stored as an image table."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: DistLattice, cod: DistLattice,
                 table: Sequence[int], validate: bool = True):
        table = tuple(int(v) for v in table)
        if len(table) != dom.size:
            raise ValidationError("table length must equal the domain size")
        self.dom = dom
        self.cod = cod
        self.table = table
        if validate:
            t = np.array(table, dtype=np.int16)
            if table[dom.bot] != cod.bot or table[dom.top] != cod.top:
                raise ValidationError("bounds are not preserved")
            if not np.array_equal(cod.meet[t[:, None], t[None, :]], t[dom.meet]):
                raise ValidationError("meet is not preserved")
            if not np.array_equal(cod.join[t[:, None], t[None, :]], t[dom.join]):
                raise ValidationError("join is not preserved")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return (isinstance(other, LatticeHom) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def image(self) -> list[int]:
        return sorted(set(self.table))

    def compose(self, other: "LatticeHom") -> "LatticeHom":
        """self after other (other first)."""
        if other.cod != self.dom:
            raise ValidationError("homs are not composable")
        return LatticeHom(other.dom, self.cod,
                          tuple(self.table[v] for v in other.table),
                          validate=False)


@lru_cache(maxsize=None)
def _hom_search_plan(l: DistLattice):
    """Static data for hom backtracking over a fixed linear extension.

    Per element, in extension order: lower covers (for the monotone lower
    bound), one forcing join decomposition when the element is join
    reducible, the remaining join decompositions (consistency checks), and
    the earlier incomparable elements (meet consistency checks); checks for
    comparable pairs are implied by cover-chain monotonicity.
    """
    poset = l.order_poset()
    order = linear_extension(poset)
    pos = {x: k for k, x in enumerate(order)}
    join_sources: list[list[tuple[int, int]]] = [[] for _ in range(l.size)]
    for x in range(l.size):
        for y in range(x + 1, l.size):
            g = int(l.join[x, y])
            if g != x and g != y:
                join_sources[g].append((x, y))
    lower_covers: list[list[int]] = [[] for _ in range(l.size)]
    for a, b in poset.covers():
        lower_covers[b].append(a)
    leq = l.leq
    plan = []
    for k, e in enumerate(order):
        force = join_sources[e][0] if join_sources[e] else None
        dups = join_sources[e][1:] if join_sources[e] else []
        incomparable = [(a, int(l.meet[e, a])) for a in order[:k]
                        if not leq[a, e] and not leq[e, a]]
        plan.append((e, lower_covers[e], force, dups, incomparable))
    return tuple(plan)


def lattice_homs(l: DistLattice, m: DistLattice) -> list[LatticeHom]:
    """All bounded homomorphisms l -> m.

    Backtracking over a linear extension of l with meet/join consistency
    propagation; only join-irreducible elements branch, everything else is
    forced as a join of already-assigned images.
    """
    plan = _hom_search_plan(l)
    m_join = m.join.tolist()
    m_meet = m.meet.tolist()
    up_lists = [np.flatnonzero(row).tolist() for row in m.leq]
    img = [-1] * l.size
    out: list[tuple[int, ...]] = []
    size = l.size

    def rec(k: int) -> None:
        if k == size:
            out.append(tuple(img))
            return
        e, covers, force, dups, incomparable = plan[k]
        if e == l.bot:
            candidates = (m.bot,) if (e != l.top or m.bot == m.top) else ()
        elif e == l.top and force is None and not covers:
            candidates = (m.top,)
        elif force is not None:
            candidates = (m_join[img[force[0]]][img[force[1]]],)
        else:
            lb = m.bot
            for c in covers:
                lb = m_join[lb][img[c]]
            candidates = up_lists[lb]
        for v in candidates:
            if e == l.top and v != m.top:
                continue
            ok = True
            if force is not None:
                for c in covers:
                    if m_join[v][img[c]] != v:
                        ok = False
                        break
            if ok:
                for x, y in dups:
                    if m_join[img[x]][img[y]] != v:
                        ok = False
                        break
            if ok:
                row = m_meet[v]
                for a, e_meet_a in incomparable:
                    if img[e_meet_a] != row[img[a]]:
                        ok = False
                        break
            if ok:
                img[e] = v
                rec(k + 1)
                img[e] = -1

    rec(0)
    return [LatticeHom(l, m, t, validate=False) for t in sorted(out)]


@lru_cache(maxsize=None)
def dual_points(l: DistLattice) -> tuple[tuple[int, ...], ...]:
    """The homomorphisms l -> 2 as 0/1 tables, sorted lexicographically."""
    return tuple(sorted(h.table for h in lattice_homs(l, two())))


@lru_cache(maxsize=None)
def dual_poset(l: DistLattice) -> Poset:
    """Dual space of l: homs to the two-element lattice, ordered pointwise."""
    pts = dual_points(l)
    n = len(pts)
    rel = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            rel[i, j] = all(a <= b for a, b in zip(x, y))
    return Poset(rel, labels=pts, validate=False)


def _upset_masks(p: Poset) -> list[int]:
    masks = []
    for s in up_sets(p):
        mask = 0
        for i in s:
            mask |= 1 << i
        masks.append(mask)
    return sorted(masks)


@lru_cache(maxsize=None)
def upset_lattice(p: Poset) -> DistLattice:
    """Lattice of up-sets of p under intersection and union.

    Element labels are membership bitmasks in ascending numeric order, so
    the empty set is the bottom and the full set the top.
    """
    masks = _upset_masks(p)
    index = {mask: i for i, mask in enumerate(masks)}
    n = len(masks)
    meet = np.zeros((n, n), dtype=np.int16)
    join = np.zeros((n, n), dtype=np.int16)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            meet[i, j] = index[a & b]
            join[i, j] = index[a | b]
    full = (1 << p.size) - 1
    return DistLattice(meet, join, index[0], index[full],
                       labels=masks, validate=False)


def upset_iso(l: DistLattice) -> LatticeHom:
    """The canonical isomorphism from l onto the up-set lattice of its dual.

    Sends a to the set of dual points mapping a to 1.  Raises IsoFailure if
    the verified bijection-and-hom property fails (an internal bug).
    """
    pts = dual_points(l)
    kh = upset_lattice(dual_poset(l))
    mask_index = {mask: i for i, mask in enumerate(kh.labels)}
    table = []
    for a in range(l.size):
        mask = 0
        for i, x in enumerate(pts):
            if x[a]:
                mask |= 1 << i
        if mask not in mask_index:
            raise IsoFailure(f"image of element {a} is not an up-set index")
        table.append(mask_index[mask])
    if len(set(table)) != l.size or kh.size != l.size:
        raise IsoFailure("canonical map is not a bijection")
    try:
        return LatticeHom(l, kh, table)
    except ValidationError as exc:
        raise IsoFailure(str(exc)) from exc


def complement_of(l: DistLattice, a: int) -> Optional[int]:
    """The complement of a, or None; unique in a distributive lattice."""
    hits = [b for b in range(l.size)
            if l.meet[a, b] == l.bot and l.join[a, b] == l.top]
    if not hits:
        return None
    if len(hits) > 1:
        raise ValidationError("complement is not unique; lattice not distributive")
    return hits[0]


@lru_cache(maxsize=None)
def complemented_elements(l: DistLattice) -> frozenset:
    return frozenset(a for a in range(l.size)
                     if complement_of(l, a) is not None)


def image_complemented(f: LatticeHom) -> bool:
    """True when every element of f's image has a complement in the codomain."""
    witnesses = complemented_elements(f.cod)
    return all(c in witnesses for c in set(f.table))


def lattice_isomorphic(l: DistLattice, m: DistLattice) -> bool:
    """Isomorphism test via the dual posets (cheap for large lattices)."""
    from .posets import find_order_isomorphism
    if l.size != m.size:
        return False
    return find_order_isomorphism(dual_poset(l), dual_poset(m)) is not None


def dual_map(f: LatticeHom) -> MonotoneMap:
    """The dual of a lattice hom: precomposition on homs-to-2.

    Also checks, and insists on, the equivalence between the dual map being
    semi-constant and f's image being complemented.
    """
    dom_pts = dual_points(f.dom)
    dom_index = {p: i for i, p in enumerate(dom_pts)}
    table = []
    for y in dual_points(f.cod):
        composite = tuple(y[f.table[a]] for a in range(f.dom.size))
        table.append(dom_index[composite])
    phi = MonotoneMap(dual_poset(f.cod), dual_poset(f.dom), table)
    if is_semi_constant(phi) != image_complemented(f):
        raise InvariantViolation(
            "semi-constant dual map and complemented image disagree")
    return phi
