"""Product representation: default sequences and the paired-coordinate bilattice.

A default sequence is a chain of bounded distributive lattices with linking
homomorphisms whose images are complemented.  Its product bilattice lives on
the admissible tuples of truth/falsity coordinate pairs; the knowledge
operations act coordinatewise while the truth operations consult the level
below through the linking maps.  The bijection onto the evaluation algebra
of the sequence's dual space is built explicitly, and the coordinate tables
are asserted equal to the transported ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebras import FiniteAlgebra, size_guard
from .duality import (EVAL_TABLE_GUARD, MultisortedSpace, _tuples_to_algebra,
                      check_dual_object, dualize, evaluation_tuples,
                      space_maps)
from .errors import (ClosureFailure, InvalidSequence, InvariantViolation,
                     IsoFailure, NotInUniverse, SizeOverflow)
from .kn import build_kn, embed_index_map, f_index, t_index, top_index
from .lattices import (DistLattice, LatticeHom, complement_of, dual_map,
                       dual_points, dual_poset, two, upset_lattice)


@dataclass(frozen=True)
class DefaultSequence:
    """Lattices L_0 .. L_n with links h_j: L_{j-1} -> L_j (j >= 1) whose
    images are complemented; complements[j-1] maps image elements of h_j to
    their complement witnesses in L_j."""

    lattices: tuple[DistLattice, ...]
    homs: tuple[LatticeHom, ...]
    complements: tuple[dict, ...]

    @property
    def n(self) -> int:
        return len(self.lattices) - 1

    def link(self, j: int) -> LatticeHom:
        """h_j for 1 <= j <= n."""
        return self.homs[j - 1]


def make_sequence(lattices: Sequence[DistLattice],
                  homs: Sequence[LatticeHom]) -> DefaultSequence:
    """Assemble and validate a default sequence, computing the witnesses."""
    if len(homs) != len(lattices) - 1:
        raise InvalidSequence("need one linking hom per consecutive pair")
    comps = []
    for j, h in enumerate(homs, start=1):
        if h.dom != lattices[j - 1] or h.cod != lattices[j]:
            raise InvalidSequence(f"link {j} does not map level {j - 1} to {j}")
        witness = {}
        for c in h.image():
            cc = complement_of(lattices[j], c)
            if cc is None:
                raise InvalidSequence(
                    f"image element {c} at level {j} has no complement")
            witness[c] = cc
        comps.append(witness)
    return DefaultSequence(tuple(lattices), tuple(homs), tuple(comps))


def validate_sequence(s: DefaultSequence) -> tuple[bool, Optional[tuple]]:
    """Re-check the stored witnesses; returns (ok, first offending (j, c))."""
    for j, h in enumerate(s.homs, start=1):
        lat = s.lattices[j]
        for c in h.image():
            cc = s.complements[j - 1].get(c)
            if cc is None or lat.meet[c, cc] != lat.bot \
                    or lat.join[c, cc] != lat.top:
                return False, (j, c)
    return True, None


def two_chain_sequence(n: int) -> DefaultSequence:
    """The all-two-element sequence with identity links."""
    t = two()
    ident = LatticeHom(t, t, (0, 1))
    return make_sequence([t] * (n + 1), [ident] * n)


@dataclass(frozen=True)
class DefaultMorphism:
    """A level-wise tuple of lattice homs making all linking squares commute."""

    dom: DefaultSequence
    cod: DefaultSequence
    parts: tuple[LatticeHom, ...]

    def __post_init__(self):
        if len(self.parts) != self.dom.n + 1:
            raise InvalidSequence("one component per level is required")
        for j in range(1, self.dom.n + 1):
            lhs = self.parts[j].compose(self.dom.link(j))
            rhs = self.cod.link(j).compose(self.parts[j - 1])
            if lhs.table != rhs.table:
                raise InvalidSequence(f"square {j} does not commute")

    def compose(self, other: "DefaultMorphism") -> "DefaultMorphism":
        """self after other."""
        return DefaultMorphism(
            other.dom, self.cod,
            tuple(f.compose(g) for f, g in zip(self.parts, other.parts)))


def sequence_to_space(s: DefaultSequence) -> MultisortedSpace:
    """Dualize every level and link by the dual maps (downward)."""
    sorts = tuple(dual_poset(l) for l in s.lattices)
    links = tuple(dual_map(s.link(i)).table for i in range(1, s.n + 1))
    labels = tuple(dual_points(l) for l in s.lattices)
    space = MultisortedSpace(sorts, links, labels=labels)
    ok, why = check_dual_object(space)
    if not ok:
        raise InvalidSequence(f"dual of sequence is not a dual object: {why}")
    return space


def space_to_sequence(x: MultisortedSpace) -> DefaultSequence:
    """Up-set lattices of the sorts, linked by preimage along the links."""
    ok, why = check_dual_object(x)
    if not ok:
        from .errors import InvalidDualObject
        raise InvalidDualObject(why)
    lattices = [upset_lattice(p) for p in x.sorts]
    homs = []
    for i in range(1, len(x.sorts)):
        lo, hi = lattices[i - 1], lattices[i]
        hi_index = {mask: k for k, mask in enumerate(hi.labels)}
        g = x.links[i - 1]
        table = []
        for mask in lo.labels:
            pre = 0
            for p in range(x.sorts[i].size):
                if mask >> g[p] & 1:
                    pre |= 1 << p
            table.append(hi_index[pre])
        homs.append(LatticeHom(lo, hi, table))
    return make_sequence(lattices, homs)


def _admissible_tuples(s: DefaultSequence,
                       guard: Optional[int] = None) -> list[tuple[int, ...]]:
    """Enumerate the product universe level by level, pruning early."""
    limit = size_guard(guard)
    lat0 = s.lattices[0]
    frontier: list[tuple[int, ...]] = [
        (u, v) for u in range(lat0.size) for v in range(lat0.size)]
    for i in range(1, s.n + 1):
        lat = s.lattices[i]
        h = s.link(i)
        prev = s.lattices[i - 1]
        up = [np.flatnonzero(lat.leq[c]).tolist() for c in range(lat.size)]
        nxt = []
        for t in frontier:
            c = h.table[prev.join[t[-2], t[-1]]]
            for u in up[c]:
                for v in up[c]:
                    nxt.append(t + (u, v))
            if len(nxt) > limit:
                raise SizeOverflow("product universe exceeds the size guard")
        frontier = nxt
    if len(frontier) > limit:
        raise SizeOverflow("product universe exceeds the size guard")
    return sorted(frontier)


@dataclass(frozen=True)
class ProductBilattice:
    """The bilattice of admissible coordinate tuples of a default sequence."""

    sequence: DefaultSequence
    universe: tuple[tuple[int, ...], ...]
    algebra: FiniteAlgebra

    @property
    def size(self) -> int:
        return len(self.universe)

    def index_of(self, tup: Sequence[int]) -> int:
        tup = tuple(tup)
        lo, hi = 0, len(self.universe)
        import bisect
        i = bisect.bisect_left(self.universe, tup, lo, hi)
        if i == len(self.universe) or self.universe[i] != tup:
            raise NotInUniverse(f"{tup} is not an admissible tuple")
        return i


def _coordinate_tables(s: DefaultSequence, universe: list[tuple[int, ...]]):
    """The seven operations computed from the recursive coordinate formulas."""
    index = {t: i for i, t in enumerate(universe)}
    size = len(universe)
    n = s.n
    lats = s.lattices

    def locate(t: tuple[int, ...]) -> int:
        hit = index.get(t)
        if hit is None:
            raise ClosureFailure(f"operation left the universe at {t}")
        return hit

    kmeet = np.zeros((size, size), dtype=np.int16)
    kjoin = np.zeros((size, size), dtype=np.int16)
    tmeet = np.zeros((size, size), dtype=np.int16)
    tjoin = np.zeros((size, size), dtype=np.int16)
    neg = np.zeros(size, dtype=np.int16)
    for ia, a in enumerate(universe):
        swapped = tuple(v for i in range(n + 1) for v in (a[2 * i + 1], a[2 * i]))
        neg[ia] = locate(swapped)
        for ib, b in enumerate(universe):
            if ib < ia:
                continue
            km, kj, tm, tj = [], [], [], []
            for i in range(n + 1):
                at, af, bt, bf = a[2 * i], a[2 * i + 1], b[2 * i], b[2 * i + 1]
                lat = lats[i]
                km += [int(lat.meet[at, bt]), int(lat.meet[af, bf])]
                kj += [int(lat.join[at, bt]), int(lat.join[af, bf])]
                if i == 0:
                    tm += [int(lat.meet[at, bt]), int(lat.join[af, bf])]
                    tj += [int(lat.join[at, bt]), int(lat.meet[af, bf])]
                else:
                    h = s.link(i).table
                    comp = s.complements[i - 1]
                    prev = lats[i - 1]
                    carry_m = h[prev.join[tm[-2], tm[-1]]]
                    carry_j = h[prev.join[tj[-2], tj[-1]]]
                    a_block_t = comp[h[a[2 * (i - 1)]]]
                    b_block_t = comp[h[b[2 * (i - 1)]]]
                    a_block_f = comp[h[a[2 * (i - 1) + 1]]]
                    b_block_f = comp[h[b[2 * (i - 1) + 1]]]
                    mt = int(lat.join[lat.meet[at, bt], carry_m])
                    mf = int(lat.join[
                        lat.join[lat.meet[af, a_block_t], lat.meet[bf, b_block_t]],
                        carry_m])
                    jt = int(lat.join[
                        lat.join[lat.meet[at, a_block_f], lat.meet[bt, b_block_f]],
                        carry_j])
                    jf = int(lat.join[lat.meet[af, bf], carry_j])
                    tm += [mt, mf]
                    tj += [jt, jf]
            kmeet[ia, ib] = kmeet[ib, ia] = locate(tuple(km))
            kjoin[ia, ib] = kjoin[ib, ia] = locate(tuple(kj))
            tmeet[ia, ib] = tmeet[ib, ia] = locate(tuple(tm))
            tjoin[ia, ib] = tjoin[ib, ia] = locate(tuple(tj))
    bot = locate(tuple(lats[i].bot for i in range(n + 1) for _ in (0, 1)))
    top = locate(tuple(lats[i].top for i in range(n + 1) for _ in (0, 1)))
    return kmeet, kjoin, tmeet, tjoin, neg, bot, top


def iota(s: DefaultSequence, a: Sequence[int],
         space: Optional[MultisortedSpace] = None) -> tuple[int, ...]:
    """The structure-preserving map encoded by an admissible tuple.

    Level by level: where the level below reports its local bottom, the
    point reads the pair of coordinate values; otherwise the value carries
    over from below under the name embedding.
    """
    a = tuple(a)
    if space is None:
        space = sequence_to_space(s)
    n = s.n
    values: list[list[int]] = []
    for i in range(n + 1):
        pts = space.labels[i]
        row = []
        for z, tab in enumerate(pts):
            below_bottom = True
            carried = None
            if i > 0:
                prev_val = values[i - 1][space.links[i - 1][z]]
                if prev_val != top_index(i - 1, i):
                    below_bottom = False
                    carried = embed_index_map(i - 1, i)[prev_val]
            if below_bottom:
                zt, zf = tab[a[2 * i]], tab[a[2 * i + 1]]
                if zt and zf:
                    row.append(top_index(i, i))
                elif zt:
                    row.append(t_index(i, i))
                elif zf:
                    row.append(f_index(i, i))
                else:
                    row.append(top_index(i, i + 1))
            else:
                row.append(carried)
        values.append(row)
    return tuple(v for row in values for v in row)


def iota_inv(s: DefaultSequence, flat: Sequence[int],
             space: Optional[MultisortedSpace] = None) -> tuple[int, ...]:
    """Recover the coordinate tuple: each level reads off the elements whose
    canonical up-sets are the preimages of the truth and falsity up-cones."""
    if space is None:
        space = sequence_to_space(s)
    flat = tuple(flat)
    offs = space.offsets()
    out = []
    for i in range(s.n + 1):
        lat = s.lattices[i]
        ki = build_kn(i).algebra
        pts = space.labels[i]
        mask_index = {}
        for elem in range(lat.size):
            mask = 0
            for z, tab in enumerate(pts):
                if tab[elem]:
                    mask |= 1 << z
            mask_index[mask] = elem
        for which in (t_index(i, i), f_index(i, i)):
            up = ki.kleq[which]
            mask = 0
            for z in range(len(pts)):
                if up[flat[offs[i] + z]]:
                    mask |= 1 << z
            if mask not in mask_index:
                raise NotInUniverse("preimage is not a principal up-set")
            out.append(mask_index[mask])
    return tuple(out)


def build_product(s: DefaultSequence, guard: Optional[int] = None,
                  check_transport: bool = True,
                  table_guard: int = EVAL_TABLE_GUARD) -> ProductBilattice:
    """The product bilattice of a sequence.

    Raises ClosureFailure if any coordinate-formula result escapes the
    admissible universe; with check_transport, additionally verifies that
    every operation table matches transport along the coordinate encoding
    into the evaluation algebra of the dual space.
    """
    ok, bad = validate_sequence(s)
    if not ok:
        raise InvalidSequence(f"complement witness fails at {bad}")
    universe = _admissible_tuples(s, guard=guard)
    if len(universe) > table_guard:
        raise SizeOverflow(
            f"{len(universe)} admissible tuples exceed the table guard")
    tabs = _coordinate_tables(s, universe)
    names = tuple("".join(map(str, t)) if all(l.size <= 10 for l in s.lattices)
                  else str(t) for t in universe)
    alg = FiniteAlgebra(*tabs[:5], tabs[5], tabs[6], names=names, validate=True)
    prod = ProductBilattice(sequence=s, universe=tuple(universe), algebra=alg)
    if check_transport:
        _assert_transport(prod)
    return prod


def _assert_transport(prod: ProductBilattice) -> None:
    """Coordinate tables must agree with the pointwise tables under iota."""
    s = prod.sequence
    space = sequence_to_space(s)
    maps = space_maps(space)
    if len(maps) != prod.size:
        raise InvariantViolation(
            f"{prod.size} tuples but {len(maps)} structure maps")
    ev = _tuples_to_algebra(maps, space, validate=False)
    pos = {t: i for i, t in enumerate(maps)}
    tau = np.empty(prod.size, dtype=np.int16)
    seen = set()
    for i, t in enumerate(prod.universe):
        img = iota(s, t, space=space)
        if img not in pos:
            raise InvariantViolation("coordinate encoding left the map algebra")
        tau[i] = pos[img]
        seen.add(pos[img])
        if iota_inv(s, img, space=space) != t:
            raise InvariantViolation("coordinate encoding does not invert")
    if len(seen) != prod.size:
        raise InvariantViolation("coordinate encoding is not injective")
    a, b = prod.algebra, ev
    for opname in ("kmeet", "kjoin", "tmeet", "tjoin"):
        ta, tb = getattr(a, opname), getattr(b, opname)
        if not np.array_equal(tau[ta], tb[tau[:, None], tau[None, :]]):
            raise InvariantViolation(f"{opname} disagrees with transport")
    if not np.array_equal(tau[a.neg], b.neg[tau]):
        raise InvariantViolation("negation disagrees with transport")
    if tau[a.bot] != b.bot or tau[a.top] != b.top:
        raise InvariantViolation("bounds disagree with transport")


def product_representation(a: FiniteAlgebra, n: int,
                           guard: Optional[int] = None,
                           ) -> tuple[DefaultSequence, list[int], ProductBilattice]:
    """A default sequence and an explicit isomorphism from a onto its product.

    The sequence is read off the dual space of a; the isomorphism sends c to
    the admissible tuple decoding the evaluation map of c (transported along
    the canonical point-evaluation identification of the dual space with the
    dual of the sequence).
    """
    x = dualize(a, n)
    s = space_to_sequence(x)
    prod = build_product(s, guard=guard)
    hs = sequence_to_space(s)
    # identify each point of x with its evaluation point in the sequence dual
    perms = []
    for i in range(n + 1):
        lat = s.lattices[i]
        hs_index = {t: k for k, t in enumerate(hs.labels[i])}
        perm = []
        for p in range(x.sorts[i].size):
            table = tuple(1 if (mask >> p) & 1 else 0 for mask in lat.labels)
            perm.append(hs_index[table])
        if sorted(perm) != list(range(hs.sorts[i].size)):
            raise IsoFailure("point evaluation failed to biject the sorts")
        perms.append(perm)
    offs_x, offs_h = x.offsets(), hs.offsets()
    ev = evaluation_tuples(a, x)
    iso: list[int] = []
    for c in range(a.size):
        flat = [0] * hs.total_points()
        for i in range(n + 1):
            for p in range(x.sorts[i].size):
                flat[offs_h[i] + perms[i][p]] = ev[c][offs_x[i] + p]
        iso.append(prod.index_of(iota_inv(s, tuple(flat), space=hs)))
    tau = np.array(iso, dtype=np.int16)
    if len(set(iso)) != a.size or a.size != prod.size:
        raise IsoFailure("representation map is not a bijection")
    for opname in ("kmeet", "kjoin", "tmeet", "tjoin"):
        ta, tb = getattr(a, opname), getattr(prod.algebra, opname)
        if not np.array_equal(tau[ta], tb[tau[:, None], tau[None, :]]):
            raise IsoFailure(f"representation map does not preserve {opname}")
    if not np.array_equal(tau[a.neg], prod.algebra.neg[tau]):
        raise IsoFailure("representation map does not preserve negation")
    if tau[a.bot] != prod.algebra.bot or tau[a.top] != prod.algebra.top:
        raise IsoFailure("representation map does not preserve the bounds")
    return s, iso, prod


def default_value_map(n: int) -> dict[tuple[int, ...], int]:
    """The canonical labelling of the all-two product tuples by K_n elements:
    the first level carrying information decides, deeper levels saturate."""
    kn = build_kn(n)
    out: dict[tuple[int, ...], int] = {}
    for t in _admissible_tuples(two_chain_sequence(n)):
        val = None
        for i in range(n + 1):
            at, af = t[2 * i], t[2 * i + 1]
            if (at, af) == (1, 0):
                val = kn.t(i)
                break
            if (at, af) == (0, 1):
                val = kn.f(i)
                break
            if (at, af) == (1, 1):
                val = kn.tops(i)
                break
        out[t] = kn.tops(n + 1) if val is None else val
    return out


def truth_order_lex_check(n: int) -> bool:
    """The derived truth order of the all-two product is the lexicographic
    lift of the four-element truth order on coordinate pairs."""
    prod = build_product(two_chain_sequence(n))
    tleq = prod.algebra.tleq

    def pair_leq(p, q):
        return p[0] <= q[0] and p[1] >= q[1]

    def lex_leq(a, b):
        for i in range(n + 1):
            pa, pb = (a[2 * i], a[2 * i + 1]), (b[2 * i], b[2 * i + 1])
            if pa == pb:
                continue
            return pair_leq(pa, pb)
        return True

    for i, a in enumerate(prod.universe):
        for j, b in enumerate(prod.universe):
            if bool(tleq[i, j]) != lex_leq(a, b):
                return False
    return True
