"""The prioritised default bilattices K_n and their structural maps.

Elements are indexed canonically: f_0..f_n, then t_0..t_n, then
T_0..T_{n+1} (T_i is the i-th contradiction constant; T_0 is the knowledge
top and T_{n+1} the knowledge bottom).  Operation tables are derived from
the two orders by bound search and validated, not hand-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebras import (FiniteAlgebra, Homomorphism, generate, pair_index,
                       power, subalgebra)
from .errors import BadIndices, ValidationError
from .lattices import lattice_from_order
from .posets import Poset, QuasiOrder


def _names(n: int) -> tuple[str, ...]:
    return tuple([f"f{i}" for i in range(n + 1)]
                 + [f"t{i}" for i in range(n + 1)]
                 + [f"T{i}" for i in range(n + 2)])


def f_index(n: int, i: int) -> int:
    return i


def t_index(n: int, i: int) -> int:
    return n + 1 + i


def top_index(n: int, i: int) -> int:
    return 2 * n + 2 + i


@dataclass(frozen=True)
class KnAlgebra:
    """K_n together with its name registry."""

    n: int
    algebra: FiniteAlgebra
    index: dict

    @property
    def size(self) -> int:
        return self.algebra.size

    def f(self, i: int) -> int:
        return f_index(self.n, i)

    def t(self, i: int) -> int:
        return t_index(self.n, i)

    def tops(self, i: int) -> int:
        return top_index(self.n, i)


def _knowledge_order(n: int) -> np.ndarray:
    """T_{n+1} < {f_n,t_n} < T_n < ... < {f_0,t_0} < T_0."""
    size = 3 * n + 4
    # rank 2i for T_i, rank 2i+1 for {f_i, t_i}; smaller rank is higher
    rank = np.zeros(size, dtype=int)
    for i in range(n + 1):
        rank[f_index(n, i)] = rank[t_index(n, i)] = 2 * i + 1
    for i in range(n + 2):
        rank[top_index(n, i)] = 2 * i
    rel = rank[:, None] > rank[None, :]
    np.fill_diagonal(rel, True)
    return rel


def _truth_order(n: int) -> np.ndarray:
    """f_0 ... f_n below the pairwise-incomparable T's, below t_n ... t_0."""
    size = 3 * n + 4
    rel = np.eye(size, dtype=bool)
    bottom = top_index(n, n + 1)
    for i in range(n + 1):
        fi, ti = f_index(n, i), t_index(n, i)
        for j in range(i, n + 1):
            rel[fi, f_index(n, j)] = True
            rel[t_index(n, j), ti] = True
        for j in range(i, n + 2):  # includes the knowledge bottom T_{n+1}
            rel[fi, top_index(n, j)] = True
            rel[top_index(n, j), ti] = True
        rel[fi, ti] = True
        for j in range(i, n + 1):
            rel[fi, t_index(n, j)] = True
            rel[f_index(n, j), ti] = True
    rel[bottom, bottom] = True
    return rel


@lru_cache(maxsize=None)
def build_kn(n: int) -> KnAlgebra:
    """Construct K_n: both orders, derived tables, full validation."""
    if n < 0:
        raise BadIndices("n must be nonnegative")
    names = _names(n)
    kleq = _knowledge_order(n)
    tleq = _truth_order(n)
    Poset(kleq.copy(), validate=True)
    Poset(tleq.copy(), validate=True)
    klat = lattice_from_order(kleq, validate=True)  # also checks distributivity
    tlat = lattice_from_order(tleq, validate=False)
    size = 3 * n + 4
    neg = np.arange(size, dtype=np.int16)
    for i in range(n + 1):
        neg[f_index(n, i)] = t_index(n, i)
        neg[t_index(n, i)] = f_index(n, i)
    alg = FiniteAlgebra(klat.meet, klat.join, tlat.meet, tlat.join, neg,
                        bot=top_index(n, n + 1), top=top_index(n, 0),
                        names=names, validate=True)
    return KnAlgebra(n=n, algebra=alg,
                     index={name: i for i, name in enumerate(names)})


def embed_index_map(m: int, n: int) -> tuple[int, ...]:
    """Index translation K_m -> K_n (m <= n) matching element names."""
    if not 0 <= m <= n:
        raise BadIndices("need 0 <= m <= n")
    out = []
    for i in range(m + 1):
        out.append(f_index(n, i))
    for i in range(m + 1):
        out.append(t_index(n, i))
    for i in range(m + 2):
        out.append(top_index(n, i))
    return tuple(out)


@lru_cache(maxsize=None)
def collapse_hom(n: int, m: int) -> Homomorphism:
    """The level-collapse map K_n -> K_m.

    Everything at or below T_{m+1} in the knowledge order collapses to
    T_{m+1}; the rest keeps its name.  Surjectivity and the homomorphism
    property are verified on construction.
    """
    if not 0 <= m <= n:
        raise BadIndices("need 0 <= m <= n")
    kn, km = build_kn(n), build_kn(m)
    kleq = kn.algebra.kleq
    cut = top_index(n, m + 1)
    table = []
    for a in range(kn.size):
        if kleq[a, cut]:
            table.append(top_index(m, m + 1))
        else:
            table.append(km.index[kn.algebra.name_of(a)])
    hom = Homomorphism(kn.algebra, km.algebra, table, validate=True)
    if not hom.is_surjective():
        raise ValidationError("collapse map failed to be surjective")
    return hom


@lru_cache(maxsize=None)
def level_quasiorder(n: int, m: int) -> QuasiOrder:
    """The level-m comparison relation on K_n.

    Pairs (a, b) with a = b, with both at or below T_{m+1}, or with
    a <= b <= T_m in the knowledge order.  A partial order exactly when
    m = n.
    """
    if not 0 <= m <= n:
        raise BadIndices("need 0 <= m <= n")
    kn = build_kn(n)
    kleq = kn.algebra.kleq
    low = kleq[:, top_index(n, m + 1)]
    mid = kleq[:, top_index(n, m)]
    rel = (low[:, None] & low[None, :]) | (kleq & mid[None, :])
    np.fill_diagonal(rel, True)
    q = QuasiOrder(rel, labels=kn.algebra.names, validate=True)
    if (m == n) != q.is_antisymmetric():
        raise ValidationError("level relation has the wrong symmetry type")
    return q


def level_poset(n: int) -> Poset:
    """(K_n, level-n order) as a poset; the m = n case is antisymmetric."""
    q = level_quasiorder(n, n)
    return Poset(q.rel.copy(), labels=q.labels, validate=False)


def level_relation_pairs(n: int, m: int) -> list[tuple[int, int]]:
    q = level_quasiorder(n, m)
    return [(int(i), int(j)) for i, j in np.argwhere(q.rel)]


@lru_cache(maxsize=None)
def level_relation_algebra(n: int, m: int) -> FiniteAlgebra:
    """The level-m relation as a subalgebra of K_n squared.

    Universe order follows the pair indexing of the square; the relation
    is checked to be operation-closed before restriction.
    """
    kn = build_kn(n)
    square = power(kn.algebra, 2)
    universe = sorted(pair_index(kn.algebra, i, j)
                      for i, j in level_relation_pairs(n, m))
    if generate(square, universe) != tuple(universe):
        raise ValidationError("level relation is not operation-closed")
    return subalgebra(square, universe, validate=True)


def relation_projections(n: int, m: int) -> tuple[list[int], list[int]]:
    """Restrictions of the two coordinate projections to the level relation."""
    pairs = sorted(level_relation_pairs(n, m))
    return [p[0] for p in pairs], [p[1] for p in pairs]


def check_interlaced(a: FiniteAlgebra) -> tuple[bool, Optional[tuple]]:
    """Monotonicity of each lattice operation in the other structure's order.

    Returns (True, None) or (False, witness) where the witness is
    (op name, x, y, z) with x below y in the relevant order but
    op(x, z) not below op(y, z) in it.
    """
    kleq, tleq = a.kleq, a.tleq
    checks = (("kmeet", a.kmeet, tleq), ("kjoin", a.kjoin, tleq),
              ("tmeet", a.tmeet, kleq), ("tjoin", a.tjoin, kleq))
    for name, table, order in checks:
        for x in range(a.size):
            for y in range(a.size):
                if not order[x, y]:
                    continue
                row_ok = order[table[x], table[y]]
                if not row_ok.all():
                    z = int(np.flatnonzero(~row_ok)[0])
                    return False, (name, x, y, z)
    return True, None
