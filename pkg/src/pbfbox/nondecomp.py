"""Non-decomposable PBFs and the low-weight subspace they span.

Types, by half-weight t of the support {b_i, b_i + 1}:

* type-i: t = 1, support {b, b+1} with b in T1;
* type-ii: t = 2, the two T2 elements of a slim triple set and their
  translates by 1;
* type-iiia: the anchors of a cycle of fat triple sets (t = cycle length);
* type-iiib: the anchors of a path slim - fat ... fat - slim plus one T2
  element (and its translate) at each slim end (t = path vertices + 1).

The type-iii searches are bounded by ``max_len``, a cap on t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import product

import numpy as np

from .boolfun import BooleanFunction
from .gf2linalg import BitMatrix
from .gf2n import FieldElement, FieldSpec
from .tripleset import Kind, TripleSet, TsGraph, classify, t_partition, triple_set_array


class NdKind(str, Enum):
    TYPE_I = "type-i"
    TYPE_II = "type-ii"
    TYPE_IIIA = "type-iiia"
    TYPE_IIIB = "type-iiib"


@dataclass(frozen=True, eq=False)
class NonDecompPbf:
    f: BooleanFunction
    kind: NdKind
    witness: dict

    @property
    def t(self) -> int:
        return self.f.weight // 2

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "weight": self.f.weight,
                "witness": self.witness, "tt": self.f.to_hex()}

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def make_type_i(beta: FieldElement) -> NonDecompPbf:
    spec = beta.spec
    b = beta.bits
    if t_partition(spec).which(b) != 1:
        raise ValueError(f"{spec.hex(b)} is not in T1")
    f = BooleanFunction.indicator(spec, (b, b ^ 1))
    return NonDecompPbf(f, NdKind.TYPE_I, {"beta": spec.hex(min(b, b ^ 1))})


def make_type_ii(spec: FieldSpec, a: TripleSet) -> NonDecompPbf:
    part = t_partition(spec)
    kind = a.kind or classify(a, part)
    if kind is not Kind.SLIM:
        raise ValueError(f"triple set {a.elems} is fat")
    b1, b2 = (e for e in a.elems if part.which(e) == 2)
    f = BooleanFunction.indicator(spec, (b1, b2, b1 ^ 1, b2 ^ 1))
    return NonDecompPbf(f, NdKind.TYPE_II, {"triple_set": [spec.hex(e) for e in a.elems]})


def _support_from_anchors(spec: FieldSpec, anchors) -> BooleanFunction:
    pts = set()
    for a in anchors:
        pts.update((a, a ^ 1))
    return BooleanFunction.indicator(spec, pts)


def fat_cycles(g: TsGraph, max_len: int):
    """Simple cycles (vertex lists) of fat vertices, length 3..max_len, each once."""
    fat = set(g.fat_indices())
    adj = {i: sorted(j for j in g.neighbours(i) if j in fat) for i in fat}
    for s in sorted(fat):
        # s is the least vertex on the cycle; orient so path[1] < path[-1]
        stack = [(s, [s], {s})]
        while stack:
            u, path, seen = stack.pop()
            for w in adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield list(path)
                elif w > s and w not in seen and len(path) < max_len:
                    stack.append((w, path + [w], seen | {w}))


def slim_paths(g: TsGraph, max_len: int):
    """Simple paths slim, fat, ..., fat, slim with at most max_len - 1 vertices."""
    fat = set(g.fat_indices())
    slim = [i for i, v in enumerate(g.vertices) if v.kind is Kind.SLIM]
    max_vertices = max_len - 1
    for s in slim:
        stack = [(s, [s])]
        while stack:
            u, path = stack.pop()
            for w in g.neighbours(u):
                if w in path:
                    continue
                if w not in fat:
                    if w > s and len(path) + 1 <= max_vertices:
                        yield path + [w]
                elif len(path) + 1 < max_vertices:
                    stack.append((w, path + [w]))


def _edge_anchors(g: TsGraph, walk, closed: bool):
    pairs = list(zip(walk, walk[1:]))
    if closed:
        pairs.append((walk[-1], walk[0]))
    return [g.anchor(u, v) for u, v in pairs]


def find_type_iiia(g: TsGraph, max_len: int) -> list[NonDecompPbf]:
    hx = g.spec.hex
    out = []
    for cyc in fat_cycles(g, max_len):
        f = _support_from_anchors(g.spec, _edge_anchors(g, cyc, closed=True))
        out.append(NonDecompPbf(f, NdKind.TYPE_IIIA,
                                {"cycle": [hx(g.vertices[i].key) for i in cyc]}))
    return out


def type_iiib_from_path(g: TsGraph, path: list[int]) -> list[NonDecompPbf]:
    """The PBFs certified by one slim-fat*-slim path (one per choice of T2 ends)."""
    vs = g.vertices
    if len(path) < 2 or vs[path[0]].kind is not Kind.SLIM or vs[path[-1]].kind is not Kind.SLIM:
        raise ValueError("path must start and end at slim triple sets")
    if any(vs[i].kind is not Kind.FAT for i in path[1:-1]):
        raise ValueError("interior vertices of the path must be fat")
    part = t_partition(g.spec)
    anchors = _edge_anchors(g, path, closed=False)
    ends = [[e for e in vs[i].elems if part.which(e) == 2] for i in (path[0], path[-1])]
    hx = g.spec.hex
    out = []
    for b_start, b_end in product(*ends):
        f = _support_from_anchors(g.spec, anchors + [b_start, b_end])
        out.append(NonDecompPbf(f, NdKind.TYPE_IIIB, {
            "path": [hx(vs[i].key) for i in path],
            "ends": [hx(b_start), hx(b_end)],
        }))
    return out


def find_type_iiib(g: TsGraph, max_len: int) -> list[NonDecompPbf]:
    out = []
    for path in slim_paths(g, max_len):
        out.extend(type_iiib_from_path(g, path))
    return out


def type_i_all(spec: FieldSpec) -> list[NonDecompPbf]:
    t1 = np.flatnonzero(t_partition(spec).label == 1)
    return [make_type_i(FieldElement(spec, int(b))) for b in t1 if b % 2 == 0]


def type_ii_all(spec: FieldSpec) -> list[NonDecompPbf]:
    part = t_partition(spec)
    out = []
    for row in triple_set_array(spec):
        ts = TripleSet(tuple(int(v) for v in row))
        if classify(ts, part) is Kind.SLIM:
            out.append(make_type_ii(spec, TripleSet(ts.elems, Kind.SLIM)))
    return out


@dataclass(frozen=True, eq=False)
class Pbf4Space:
    spec: FieldSpec
    x: BitMatrix  # rows: type-i then type-ii truth tables
    n_type_i: int
    n_type_ii: int
    rank: int

    @property
    def size(self) -> int:
        return self.x.rows

    @property
    def dim(self) -> int:
        return self.rank


def pbf4_space(spec: FieldSpec) -> Pbf4Space:
    ones = type_i_all(spec)
    twos = type_ii_all(spec)
    x = BitMatrix.from_dense(np.array([p.f.tt for p in ones + twos], dtype=np.uint8))
    r = x.rank()
    if r != x.rows:
        raise AssertionError(f"low-weight generators are dependent: rank {r} < {x.rows}")
    return Pbf4Space(spec, x, len(ones), len(twos), r)
