"""Generic finite-algebra machinery for the bilattice signature.

The signature is fixed: two binary lattice pairs (knowledge meet/join and
truth meet/join), an involutive negation, and nullary bounds bot/top.
Everything here is brute force by design; it is the oracle the structural
results are checked against.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import SizeOverflow, TrivialAlgebra, ValidationError

DEFAULT_SIZE_GUARD = 10_000

BINARY_OPS = ("kmeet", "kjoin", "tmeet", "tjoin")


def size_guard(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("DEFBILAT_SIZE_GUARD", DEFAULT_SIZE_GUARD))


def _assoc_ok(t: np.ndarray) -> bool:
    return all(np.array_equal(t[:, z][t], t[:, t[:, z]])
               for z in range(t.shape[0]))


class FiniteAlgebra:
    """Operation tables for the bilattice signature over {0, ..., size-1}."""

    __slots__ = ("size", "kmeet", "kjoin", "tmeet", "tjoin", "neg",
                 "bot", "top", "names", "_kleq", "_tleq", "_rows")

    def __init__(self, kmeet, kjoin, tmeet, tjoin, neg, bot: int, top: int,
                 names: Optional[Sequence[str]] = None, validate: bool = True):
        self.kmeet = np.ascontiguousarray(kmeet, dtype=np.int16)
        self.kjoin = np.ascontiguousarray(kjoin, dtype=np.int16)
        self.tmeet = np.ascontiguousarray(tmeet, dtype=np.int16)
        self.tjoin = np.ascontiguousarray(tjoin, dtype=np.int16)
        self.neg = np.ascontiguousarray(neg, dtype=np.int16)
        self.size = self.kmeet.shape[0]
        if self.size > 32767:
            raise SizeOverflow("int16 element indices cap universes at 32767")
        self.bot = int(bot)
        self.top = int(top)
        self.names = tuple(names) if names is not None else None
        self._kleq = None
        self._tleq = None
        self._rows = None
        for t in self.tables():
            t.setflags(write=False)
        if validate:
            self._validate()

    def tables(self) -> tuple[np.ndarray, ...]:
        return (self.kmeet, self.kjoin, self.tmeet, self.tjoin, self.neg)

    def binary_tables(self) -> tuple[np.ndarray, ...]:
        return (self.kmeet, self.kjoin, self.tmeet, self.tjoin)

    def _validate(self) -> None:
        n = self.size
        idx = np.arange(n, dtype=np.int16)
        if self.names is not None and len(self.names) != n:
            raise ValidationError("names length mismatch")
        for name in BINARY_OPS:
            t = getattr(self, name)
            if t.shape != (n, n):
                raise ValidationError(f"{name} table has wrong shape")
            if not np.array_equal(t, t.T):
                raise ValidationError(f"{name} is not commutative")
            if not np.array_equal(t.diagonal(), idx):
                raise ValidationError(f"{name} is not idempotent")
            if not _assoc_ok(t):
                raise ValidationError(f"{name} is not associative")
        for meet, join, which in ((self.kmeet, self.kjoin, "knowledge"),
                                  (self.tmeet, self.tjoin, "truth")):
            if not (meet[idx[:, None], join] == idx[:, None]).all():
                raise ValidationError(f"{which} absorption fails")
            if not (join[idx[:, None], meet] == idx[:, None]).all():
                raise ValidationError(f"{which} absorption fails")
        if not (self.kmeet[self.bot] == self.bot).all():
            raise ValidationError("bot is not the knowledge bottom")
        if not (self.kjoin[self.top] == self.top).all():
            raise ValidationError("top is not the knowledge top")
        # truth bounds are the terms top "tmeet" bot and top "tjoin" bot
        tbot = int(self.tmeet[self.top, self.bot])
        ttop = int(self.tjoin[self.top, self.bot])
        if not (self.tmeet[tbot] == tbot).all():
            raise ValidationError("truth bottom is not a bound")
        if not (self.tjoin[ttop] == ttop).all():
            raise ValidationError("truth top is not a bound")
        if not np.array_equal(self.neg[self.neg], idx):
            raise ValidationError("negation is not involutive")
        kleq = self.kleq
        if not np.array_equal(kleq, kleq[self.neg][:, self.neg]):
            raise ValidationError("negation does not preserve the knowledge order")
        tleq = self.tleq
        if not np.array_equal(tleq, tleq[self.neg][:, self.neg].T):
            raise ValidationError("negation does not reverse the truth order")

    @property
    def kleq(self) -> np.ndarray:
        if self._kleq is None:
            leq = self.kmeet == np.arange(self.size, dtype=np.int16)[:, None]
            leq.setflags(write=False)
            self._kleq = leq
        return self._kleq

    @property
    def tleq(self) -> np.ndarray:
        if self._tleq is None:
            leq = self.tmeet == np.arange(self.size, dtype=np.int16)[:, None]
            leq.setflags(write=False)
            self._tleq = leq
        return self._tleq

    def rows(self) -> tuple[list[list[int]], ...]:
        """Python-list copies of the binary tables, cached for tight loops."""
        if self._rows is None:
            self._rows = tuple(t.tolist() for t in self.binary_tables())
        return self._rows

    def knowledge_reduct(self):
        """The bounded-lattice reduct carrying the knowledge order."""
        from .lattices import DistLattice
        return DistLattice(self.kmeet, self.kjoin, self.bot, self.top,
                           labels=self.names, validate=False)

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size})"


class Homomorphism:
    """A map preserving all seven operations."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: FiniteAlgebra, cod: FiniteAlgebra,
                 table: Sequence[int], validate: bool = True):
        self.dom = dom
        self.cod = cod
        self.table = tuple(int(v) for v in table)
        if validate and not is_homomorphism(dom, cod, self.table):
            raise ValidationError("table is not a homomorphism")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.table == other.table
                and self.dom is other.dom and self.cod is other.cod)

    def __hash__(self):
        return hash(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def kernel(self) -> "Congruence":
        blocks: dict[int, list[int]] = {}
        for i, v in enumerate(self.table):
            blocks.setdefault(v, []).append(i)
        return Congruence.from_blocks(self.dom, blocks.values())

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self after other (other first)."""
        return Homomorphism(other.dom, self.cod,
                            tuple(self.table[v] for v in other.table),
                            validate=False)


def is_homomorphism(a: FiniteAlgebra, b: FiniteAlgebra,
                    table: Sequence[int]) -> bool:
    t = np.asarray(table, dtype=np.int16)
    if t.shape != (a.size,):
        return False
    if t[a.bot] != b.bot or t[a.top] != b.top:
        return False
    if not np.array_equal(t[a.neg], b.neg[t]):
        return False
    pairs = (t[:, None], t[None, :])
    return all(np.array_equal(t[ta], tb[pairs])
               for ta, tb in zip(a.binary_tables(), b.binary_tables()))


class Congruence:
    """An operation-compatible equivalence relation, stored as a partition."""

    __slots__ = ("algebra", "block_of", "blocks")

    def __init__(self, algebra: FiniteAlgebra, block_of: Sequence[int]):
        # normalize block ids by first occurrence
        remap: dict[int, int] = {}
        norm = []
        for b in block_of:
            if b not in remap:
                remap[b] = len(remap)
            norm.append(remap[b])
        self.algebra = algebra
        self.block_of = tuple(norm)
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(self.block_of):
            blocks.setdefault(b, []).append(i)
        self.blocks = tuple(tuple(blocks[b]) for b in sorted(blocks))

    @classmethod
    def from_blocks(cls, algebra: FiniteAlgebra,
                    blocks: Iterable[Iterable[int]]) -> "Congruence":
        block_of = [0] * algebra.size
        for k, blk in enumerate(blocks):
            for i in blk:
                block_of[i] = k
        return cls(algebra, block_of)

    def num_blocks(self) -> int:
        return len(self.blocks)

    def relates(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def refines(self, other: "Congruence") -> bool:
        """True when every block of self sits inside a block of other."""
        seen: dict[int, int] = {}
        for b_self, b_other in zip(self.block_of, other.block_of):
            if seen.setdefault(b_self, b_other) != b_other:
                return False
        return True

    def is_compatible(self) -> bool:
        b = np.asarray(self.block_of)
        for t in self.algebra.binary_tables():
            tb = b[t]  # commutative ops, so row checks suffice
            for blk in self.blocks:
                first = blk[0]
                if any(not np.array_equal(tb[first], tb[x]) for x in blk[1:]):
                    return False
        nb = b[self.algebra.neg]
        return all(len({int(nb[x]) for x in blk}) == 1 for blk in self.blocks)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)

    def __repr__(self):
        return f"Congruence(blocks={self.num_blocks()})"


def generate(a: FiniteAlgebra, seed: Iterable[int],
             closed_base: Optional[Sequence[int]] = None) -> tuple[int, ...]:
    """Least subuniverse containing the seed (constants always included).

    closed_base, when given, must already be closed; only pairs touching
    the new seed elements are then expanded.
    """
    mask = np.zeros(a.size, dtype=bool)
    if closed_base is not None:
        mask[list(closed_base)] = True
    mask[[a.bot, a.top]] = True
    fresh_seed = sorted({int(s) for s in seed if not mask[s]}
                        | ({a.bot, a.top} - set(closed_base or ())))
    mask[fresh_seed] = True
    if closed_base is None:
        new = np.flatnonzero(mask)
    else:
        if not fresh_seed:
            return tuple(int(i) for i in np.flatnonzero(mask))
        new = np.array(fresh_seed, dtype=int)
    known = np.flatnonzero(mask)
    while new.size:
        parts = [a.neg[new]]
        for t in a.binary_tables():
            parts.append(t[np.ix_(new, known)].ravel())
            parts.append(t[np.ix_(known, new)].ravel())
        cand = np.unique(np.concatenate(parts))
        fresh = cand[~mask[cand]]
        mask[fresh] = True
        new = fresh
        known = np.flatnonzero(mask)
    return tuple(int(i) for i in known)


def subalgebra(a: FiniteAlgebra, universe: Sequence[int],
               validate: bool = False) -> FiniteAlgebra:
    """Restrict a to a closed subuniverse, re-indexed in universe order."""
    universe = list(universe)
    pos = {int(v): i for i, v in enumerate(universe)}
    idx = np.array(universe, dtype=int)
    lut = np.full(a.size, -1, dtype=np.int16)
    lut[idx] = np.arange(len(universe), dtype=np.int16)
    tabs = []
    for t in a.binary_tables():
        sub = lut[t[np.ix_(idx, idx)]]
        if (sub < 0).any():
            raise ValidationError("universe is not closed under the operations")
        tabs.append(sub)
    neg = lut[a.neg[idx]]
    if (neg < 0).any() or a.bot not in pos or a.top not in pos:
        raise ValidationError("universe is not closed under the operations")
    names = tuple(a.name_of(v) for v in universe) if a.names else None
    return FiniteAlgebra(*tabs, neg, pos[a.bot], pos[a.top],
                         names=names, validate=validate)


def all_subalgebras(a: FiniteAlgebra) -> list[tuple[int, ...]]:
    """Every subuniverse, as sorted index tuples.

    Breadth-first search through the closure system: each known subuniverse
    is extended by one outside element and re-closed.  Complete because any
    subuniverse is reached by adding its generators one at a time.
    """
    start = generate(a, ())
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for sub in frontier:
            inside = set(sub)
            for x in range(a.size):
                if x in inside:
                    continue
                bigger = generate(a, (x,), closed_base=sub)
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), s))


def _greedy_generators(a: FiniteAlgebra) -> list[int]:
    gens: list[int] = []
    cur = set(generate(a, ()))
    while len(cur) < a.size:
        x = min(i for i in range(a.size) if i not in cur)
        gens.append(x)
        cur = set(generate(a, gens))
    return gens


def _close_partial_map(a: FiniteAlgebra, b: FiniteAlgebra,
                       img: np.ndarray) -> Optional[np.ndarray]:
    """Extend a partial map by term closure; None on conflict.

    img uses -1 for unassigned.  On success every element generated by the
    assigned ones is mapped and all operation constraints among them hold.
    """
    img = img.copy()
    while True:
        dom = np.flatnonzero(img >= 0)
        im = img[dom]
        changed = False
        # unary
        src = a.neg[dom]
        val = b.neg[im]
        cur = img[src]
        if ((cur >= 0) & (cur != val)).any():
            return None
        if (cur < 0).any():
            img[src] = val
            changed = True
        for ta, tb in zip(a.binary_tables(), b.binary_tables()):
            src = ta[np.ix_(dom, dom)].ravel()
            val = tb[np.ix_(im, im)].ravel()
            cur = img[src]
            if ((cur >= 0) & (cur != val)).any():
                return None
            # detect two pairs forcing different values on one target
            lo = np.full(a.size, np.iinfo(np.int16).max, dtype=np.int16)
            hi = np.full(a.size, -1, dtype=np.int16)
            np.minimum.at(lo, src, val)
            np.maximum.at(hi, src, val)
            touched = hi >= 0
            if (lo[touched] != hi[touched]).any():
                return None
            if (img[src] < 0).any():
                img[src] = val
                changed = True
        if not changed:
            return img


def _constant_seed(a: FiniteAlgebra, b: FiniteAlgebra) -> Optional[np.ndarray]:
    base = np.full(a.size, -1, dtype=np.int16)
    for src, dst in ((a.bot, b.bot), (a.top, b.top)):
        if base[src] >= 0 and base[src] != dst:
            return None
        base[src] = dst
    return base


def homs(a: FiniteAlgebra, b: FiniteAlgebra) -> list[Homomorphism]:
    """All homomorphisms a -> b, by backtracking over a greedy generating set."""
    gens = _greedy_generators(a)
    base = _constant_seed(a, b)
    if base is not None:
        base = _close_partial_map(a, b, base)
    out: list[tuple[int, ...]] = []

    def rec(k: int, img: np.ndarray) -> None:
        if k == len(gens):
            if (img >= 0).all():
                out.append(tuple(int(v) for v in img))
            return
        g = gens[k]
        if img[g] >= 0:
            rec(k + 1, img)
            return
        for v in range(b.size):
            trial = img.copy()
            trial[g] = v
            closed = _close_partial_map(a, b, trial)
            if closed is not None:
                rec(k + 1, closed)

    if base is not None:
        rec(0, base)
    return [Homomorphism(a, b, t, validate=False) for t in sorted(set(out))]


def principal_congruence(a: FiniteAlgebra, x: int, y: int) -> Congruence:
    """Least congruence identifying x and y (union-find with a worklist)."""
    parent = list(range(a.size))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    rows = a.rows()
    neg = a.neg.tolist()
    nblocks = a.size
    stack = [(x, y)]
    while stack and nblocks > 1:
        p, q = stack.pop()
        rp, rq = find(p), find(q)
        if rp == rq:
            continue
        parent[rp] = rq
        nblocks -= 1
        if nblocks == 1:
            break
        for t in rows:
            rowp, rowq = t[p], t[q]
            stack.extend(zip(rowp, rowq))
        stack.append((neg[p], neg[q]))
    return Congruence(a, [find(v) for v in range(a.size)])


def _join_congruences(a: FiniteAlgebra, c1: Congruence,
                      c2: Congruence) -> Congruence:
    """Transitive closure of the block union, then compatibility re-closure."""
    parent = list(range(a.size))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    rows = a.rows()
    neg = a.neg.tolist()
    nblocks = a.size
    stack = []
    for cong in (c1, c2):
        for blk in cong.blocks:
            stack.extend((blk[0], z) for z in blk[1:])
    while stack and nblocks > 1:
        p, q = stack.pop()
        rp, rq = find(p), find(q)
        if rp == rq:
            continue
        parent[rp] = rq
        nblocks -= 1
        if nblocks == 1:
            break
        for t in rows:
            stack.extend(zip(t[p], t[q]))
        stack.append((neg[p], neg[q]))
    return Congruence(a, [find(v) for v in range(a.size)])


def congruence_lattice(a: FiniteAlgebra) -> list[Congruence]:
    """All congruences, ordered by refinement (finest first).

    Principal congruences are taken over knowledge-order cover pairs; every
    congruence is a join of those, since collapsing any comparable pair
    collapses a maximal chain of covers between its endpoints.
    """
    delta = Congruence(a, list(range(a.size)))
    found = {delta}
    kleq = a.kleq
    strict = kleq & ~kleq.T
    via = strict @ strict
    for i, j in np.argwhere(strict & ~via):
        found.add(principal_congruence(a, int(i), int(j)))
    worklist = list(found)
    while worklist:
        c1 = worklist.pop()
        for c2 in list(found):
            j = _join_congruences(a, c1, c2)
            if j not in found:
                found.add(j)
                worklist.append(j)
    def sort_key(c: Congruence):
        return (-c.num_blocks(), c.block_of)
    return sorted(found, key=sort_key)


def quotient(a: FiniteAlgebra, theta: Congruence) -> FiniteAlgebra:
    """Quotient algebra on the blocks of theta."""
    reps = [blk[0] for blk in theta.blocks]
    block = theta.block_of
    n = len(reps)
    idx = np.array(reps, dtype=int)
    lut = np.array(block, dtype=np.int16)
    tabs = [lut[t[np.ix_(idx, idx)]] for t in a.binary_tables()]
    neg = lut[a.neg[idx]]
    names = None
    if a.names:
        names = tuple("|".join(a.name_of(v) for v in blk) for blk in theta.blocks)
    return FiniteAlgebra(*tabs, neg, block[a.bot], block[a.top],
                         names=names, validate=False)


def product_algebra(algebras: Sequence[FiniteAlgebra],
                    guard: Optional[int] = None) -> FiniteAlgebra:
    """Direct product; tuples index mixed-radix with the last factor fastest."""
    if not algebras:
        one = np.zeros((1, 1), dtype=np.int16)
        return FiniteAlgebra(one, one, one, one, np.zeros(1, dtype=np.int16),
                             0, 0, validate=False)
    total = 1
    for alg in algebras:
        total *= alg.size
    if total > size_guard(guard):
        raise SizeOverflow(f"product universe {total} exceeds the size guard")
    digits = []
    rest = np.arange(total)
    for alg in reversed(algebras):
        digits.append(rest % alg.size)
        rest //= alg.size
    digits.reverse()
    strides = []
    s = 1
    for alg in reversed(algebras):
        strides.append(s)
        s *= alg.size
    strides.reverse()

    def combine(key: str) -> np.ndarray:
        out = np.zeros((total, total), dtype=np.int64)
        for alg, d, stride in zip(algebras, digits, strides):
            t = getattr(alg, key)
            out += t[d[:, None], d[None, :]].astype(np.int64) * stride
        return out.astype(np.int16)

    tabs = [combine(k) for k in BINARY_OPS]
    neg = np.zeros(total, dtype=np.int64)
    bot = top = 0
    for alg, d, stride in zip(algebras, digits, strides):
        neg += alg.neg[d].astype(np.int64) * stride
        bot += alg.bot * stride
        top += alg.top * stride
    names = None
    if all(alg.names for alg in algebras):
        names = tuple("(" + ",".join(alg.name_of(int(d[i]))
                                     for alg, d in zip(algebras, digits)) + ")"
                      for i in range(total))
    return FiniteAlgebra(*tabs, neg.astype(np.int16), bot, top,
                         names=names, validate=False)


def power(a: FiniteAlgebra, k: int, guard: Optional[int] = None) -> FiniteAlgebra:
    return product_algebra([a] * k, guard=guard)


def pair_index(a: FiniteAlgebra, x: int, y: int) -> int:
    """Index of (x, y) inside the square a^2 (same mixed-radix convention)."""
    return x * a.size + y


_ISO_SEARCH_CAP = 200


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra,
                     cap: int = _ISO_SEARCH_CAP) -> Optional[tuple[int, ...]]:
    """A bijection preserving all operations, or None.

    Candidate images are pruned by local invariants: negation orbit size
    and the knowledge-order rank (size of the principal down-set).
    """
    if a.size != b.size:
        return None
    if a.size > cap:
        raise SizeOverflow(f"isomorphism search capped at {cap} elements")

    def invariants(alg: FiniteAlgebra) -> list[tuple[int, int, int]]:
        kleq = alg.kleq
        tleq = alg.tleq
        return [(int(alg.neg[i] == i), int(kleq[:, i].sum()),
                 int(tleq[:, i].sum())) for i in range(alg.size)]

    inv_a, inv_b = invariants(a), invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    gens = _greedy_generators(a)
    results: list[tuple[int, ...]] = []

    def rec(k: int, img: np.ndarray) -> bool:
        if k == len(gens):
            if (img >= 0).all() and len(set(img.tolist())) == a.size:
                results.append(tuple(int(v) for v in img))
                return True
            return False
        g = gens[k]
        if img[g] >= 0:
            return rec(k + 1, img)
        for v in range(b.size):
            if inv_a[g] != inv_b[v]:
                continue
            trial = img.copy()
            trial[g] = v
            closed = _close_partial_map(a, b, trial)
            if closed is not None and rec(k + 1, closed):
                return True
        return False

    base = _constant_seed(a, b)
    closed = _close_partial_map(a, b, base) if base is not None else None
    if closed is None or not rec(0, closed):
        return None
    return results[0]


def is_subdirectly_irreducible(a: FiniteAlgebra) -> bool:
    """True when a single minimum sits below all nontrivial congruences."""
    if a.size <= 1:
        raise TrivialAlgebra("subdirect irreducibility needs a nontrivial algebra")
    nontrivial = [c for c in congruence_lattice(a) if c.num_blocks() < a.size]
    if not nontrivial:
        return False  # unreachable for size > 1: the full relation is there
    monolith = min(nontrivial, key=lambda c: -c.num_blocks())
    return all(monolith.refines(c) for c in nontrivial)
