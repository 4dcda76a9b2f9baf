"""JSON formats and DOT export.

All emitters are deterministic: fixed element ordering, sorted keys, no
timestamps, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .algebras import FiniteAlgebra
from .duality import MultisortedSpace, check_dual_object
from .errors import ValidationError
from .lattices import DistLattice, LatticeHom, upset_lattice
from .posets import Poset, QuasiOrder, transitive_closure
from .product import DefaultSequence, make_sequence


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def strict_pairs(q: QuasiOrder) -> list[list[int]]:
    return [[int(i), int(j)] for i, j in np.argwhere(q.rel) if i != j]


def poset_to_json(p: QuasiOrder) -> dict:
    return {"size": p.size, "leq": strict_pairs(p)}


def quasiorder_from_json(d: dict) -> QuasiOrder:
    rel = np.zeros((d["size"], d["size"]), dtype=bool)
    for i, j in d.get("leq", []):
        rel[i, j] = True
    return QuasiOrder(transitive_closure(rel), validate=False)


def poset_from_json(d: dict) -> Poset:
    q = quasiorder_from_json(d)
    if not q.is_antisymmetric():
        raise ValidationError("relation closure is not antisymmetric")
    return Poset(q.rel.copy(), validate=False)


def lattice_to_json(l: DistLattice) -> dict:
    return {"size": l.size, "meet": l.meet.tolist(), "join": l.join.tolist(),
            "bot": l.bot, "top": l.top}


def lattice_from_json(d: dict) -> DistLattice:
    if "from_poset" in d:
        return upset_lattice(poset_from_json(d["from_poset"]))
    return DistLattice(d["meet"], d["join"], d["bot"], d["top"], validate=True)


def algebra_to_json(a: FiniteAlgebra) -> dict:
    out = {"size": a.size,
           "ops": {"kmeet": a.kmeet.tolist(), "kjoin": a.kjoin.tolist(),
                   "tmeet": a.tmeet.tolist(), "tjoin": a.tjoin.tolist(),
                   "neg": a.neg.tolist(), "bot": a.bot, "top": a.top}}
    if a.names is not None:
        out["names"] = list(a.names)
    return out


def algebra_from_json(d: dict) -> FiniteAlgebra:
    ops = d["ops"]
    return FiniteAlgebra(ops["kmeet"], ops["kjoin"], ops["tmeet"],
                         ops["tjoin"], ops["neg"], ops["bot"], ops["top"],
                         names=d.get("names"), validate=True)


def space_to_json(x: MultisortedSpace) -> dict:
    return {"sorts": [poset_to_json(s) for s in x.sorts],
            "links": [list(g) for g in x.links]}


def space_from_json(d: dict) -> MultisortedSpace:
    sorts = tuple(poset_from_json(s) for s in d["sorts"])
    links = tuple(tuple(g) for g in d["links"])
    space = MultisortedSpace(sorts, links)
    ok, why = check_dual_object(space)
    if not ok:
        raise ValidationError(f"not a dual object: {why}")
    return space


def sequence_to_json(s: DefaultSequence) -> dict:
    return {"lattices": [lattice_to_json(l) for l in s.lattices],
            "homs": [list(h.table) for h in s.homs]}


def sequence_from_json(d: dict) -> DefaultSequence:
    lattices = [lattice_from_json(l) for l in d["lattices"]]
    homs = [LatticeHom(lattices[j], lattices[j + 1], t)
            for j, t in enumerate(d["homs"])]
    return make_sequence(lattices, homs)  # recomputes complement witnesses


def _quote(s: str) -> str:
    return '"' + str(s).replace('"', r'\"') + '"'


def poset_to_dot(p: Poset, name: str = "poset",
                 labels: Optional[list[str]] = None) -> str:
    """Hasse reduction as a DOT digraph, edges pointing upward."""
    labels = labels if labels is not None else (
        [str(l) for l in p.labels] if p.labels else [str(i) for i in range(p.size)])
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(p.size):
        lines.append(f"  n{i} [label={_quote(labels[i])}];")
    for a, b in p.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quasiorder_to_dot(q: QuasiOrder, name: str = "quasiorder",
                      labels: Optional[list[str]] = None) -> str:
    """Hasse reduction of the poset of equivalence classes, classes grouped
    into one node (matching the usual boxed drawing of quasi-orders)."""
    labels = labels if labels is not None else (
        [str(l) for l in q.labels] if q.labels else [str(i) for i in range(q.size)])
    both = q.rel & q.rel.T
    class_of: list[int] = [-1] * q.size
    classes: list[list[int]] = []
    for i in range(q.size):
        if class_of[i] >= 0:
            continue
        members = [int(j) for j in np.flatnonzero(both[i])]
        for j in members:
            class_of[j] = len(classes)
        classes.append(members)
    k = len(classes)
    rel = np.zeros((k, k), dtype=bool)
    for i in range(q.size):
        for j in np.flatnonzero(q.rel[i]):
            rel[class_of[i], class_of[int(j)]] = True
    quotient = Poset(rel, validate=False)
    class_labels = [",".join(labels[m] for m in cls) for cls in classes]
    return poset_to_dot(quotient, name=name, labels=class_labels)
