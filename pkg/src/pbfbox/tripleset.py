"""Triple sets, the T1/T2/T3 partition and the adjacency graph on triple sets.

For alpha outside GF(4) the triple set of alpha is

    {alpha + 1/alpha, w*alpha + 1/(w*alpha), w^2*alpha + 1/(w^2*alpha)}

with w of multiplicative order 3.  Two triple sets are adjacent when
some a in one and b in the other satisfy a + b = 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .gf2n import FieldSpec


class Kind(str, Enum):
    FAT = "fat"
    SLIM = "slim"


@dataclass(frozen=True)
class TripleSet:
    """Three field elements (ints, ascending) summing to zero."""

    elems: tuple[int, int, int]
    kind: Kind | None = None

    def __post_init__(self):
        e = tuple(sorted(int(x) for x in self.elems))
        if len(set(e)) != 3:
            raise ValueError(f"triple set needs 3 distinct elements, got {e}")
        if e[0] ^ e[1] ^ e[2]:
            raise ValueError(f"elements of a triple set must sum to zero: {e}")
        object.__setattr__(self, "elems", e)

    @property
    def key(self) -> int:
        return self.elems[0]

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x) -> bool:
        return int(x) in self.elems


@dataclass(frozen=True)
class TSetPartition:
    spec: FieldSpec
    label: np.ndarray  # label[a] in {1, 2, 3}

    @property
    def t1(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.label == 1).tolist())

    @property
    def t2(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.label == 2).tolist())

    @property
    def t3(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.label == 3).tolist())

    def sizes(self) -> tuple[int, int, int]:
        c = np.bincount(self.label, minlength=4)
        return int(c[1]), int(c[2]), int(c[3])

    def which(self, a: int) -> int:
        return int(self.label[int(a)])


def t_partition(spec: FieldSpec) -> TSetPartition:
    x = np.arange(spec.order, dtype=np.int64)
    a = spec.trace_arr(spec.inv_arr(x))
    b = spec.trace_arr(spec.inv_arr(x ^ 1))
    label = np.where(a & b, 1, np.where(a | b, 2, 3)).astype(np.int64)
    label.setflags(write=False)
    return TSetPartition(spec, label)


def t1_closed_form(n: int) -> tuple[int, int, int]:
    """Exact (|T1|, |T2|, |T3|) from the Chebyshev closed form.

    With cos(theta) = 1/sqrt(8), u_m = sqrt(8)^m cos(m theta) obeys
    u_{m+1} = 2 u_m - 8 u_{m-1}, u_0 = u_1 = 1, so
    2^{n/2+1} cos(n theta) = u_n / 2^{n-1}.
    """
    if n % 2 or n < 2:
        raise ValueError("n must be a positive even integer")
    u_prev, u = 1, 1
    for _ in range(n - 1):
        u_prev, u = u, 2 * u - 8 * u_prev
    c = Fraction(u, 2 ** (n - 1))
    t1 = (2**n + 1 - c) / 4
    t2 = (2**n - 1 + c) / 2
    if t1.denominator != 1 or t2.denominator != 1:
        raise AssertionError(f"closed form is not integral at n={n}")
    return int(t1), int(t2), int(t1)


def triple_set_array(spec: FieldSpec, w: int | None = None) -> np.ndarray:
    """All distinct triple sets as a (k, 3) array, rows ascending, sorted by min element."""
    if spec.n < 6:
        raise ValueError("triple sets need n >= 6")
    w = spec.omega if w is None else w
    w2 = spec.mul(w, w)
    alpha = np.arange(2, spec.order, dtype=np.int64)
    alpha = alpha[(alpha != w) & (alpha != w2)]
    cols = []
    for s in (1, w, w2):
        t = spec.mul_arr(alpha, s)
        cols.append(t ^ spec.inv_arr(t))
    arr = np.sort(np.stack(cols, axis=1), axis=1)
    arr = np.unique(arr, axis=0)
    expected = ((1 << (spec.n - 1)) - 2) // 3
    assert arr.shape[0] == expected, (arr.shape, expected)
    return arr


def classify(ts: TripleSet, part: TSetPartition) -> Kind:
    in_t3 = sum(part.which(e) == 3 for e in ts.elems)
    if in_t3 == 3:
        return Kind.FAT
    if in_t3 == 1:
        return Kind.SLIM
    raise AssertionError(f"triple set {ts.elems} has {in_t3} elements in T3")


def all_triple_sets(spec: FieldSpec) -> list[TripleSet]:
    part = t_partition(spec)
    out = []
    for row in triple_set_array(spec):
        ts = TripleSet(tuple(int(v) for v in row))
        out.append(TripleSet(ts.elems, classify(ts, part)))
    return out


# -- graph ---------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    anchor_u: int  # element of vertex u
    anchor_v: int  # element of vertex v, anchor_u + anchor_v = 1


@dataclass(frozen=True)
class TsGraph:
    spec: FieldSpec
    vertices: list[TripleSet]
    # adjacency[i] = [(j, a)] : vertex j is adjacent to vertex i at a in vertex i
    adjacency: list[list[tuple[int, int]]]
    index_of: dict[int, int] = field(repr=False)  # element -> vertex

    def neighbours(self, i: int) -> list[int]:
        return [j for j, _ in self.adjacency[i]]

    def anchor(self, i: int, j: int) -> int:
        for k, a in self.adjacency[i]:
            if k == j:
                return a
        raise KeyError(f"vertices {i} and {j} are not adjacent")

    def edges(self) -> list[Edge]:
        out = []
        for i, nb in enumerate(self.adjacency):
            for j, a in nb:
                if i < j:
                    out.append(Edge(i, j, a, a ^ 1))
        return out

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def fat_indices(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.kind is Kind.FAT]

    def simple_adjacency(self, keep=None) -> list[list[int]]:
        """Neighbour index lists, optionally induced on (and renumbered over) ``keep``."""
        if keep is None:
            return [self.neighbours(i) for i in range(len(self.vertices))]
        pos = {v: k for k, v in enumerate(keep)}
        return [[pos[j] for j in self.neighbours(i) if j in pos] for i in keep]

    def to_text(self) -> str:
        """One line per vertex: ``min-elem-hex: neighbour-min-elem-hex ...``."""
        hx = self.spec.hex
        lines = []
        for i, v in enumerate(self.vertices):
            nb = " ".join(hx(self.vertices[j].key) for j in sorted(self.neighbours(i)))
            lines.append(f"{hx(v.key)}: {nb}".rstrip())
        return "\n".join(lines) + "\n"


def build_graph(spec: FieldSpec) -> TsGraph:
    vertices = all_triple_sets(spec)
    index_of = {e: i for i, ts in enumerate(vertices) for e in ts.elems}
    adjacency: list[list[tuple[int, int]]] = []
    for i, ts in enumerate(vertices):
        nb = []
        for e in ts.elems:
            j = index_of.get(e ^ 1)
            if j is not None:
                if j == i:
                    raise AssertionError(f"triple set {ts.elems} is adjacent to itself")
                nb.append((j, e))
        if len(nb) not in (1, 3):
            raise AssertionError(f"triple set {ts.elems} has {len(nb)} neighbours")
        if (len(nb) == 3) != (ts.kind is Kind.FAT):
            raise AssertionError(f"degree of {ts.elems} disagrees with its kind")
        adjacency.append(nb)
    return TsGraph(spec, vertices, adjacency, index_of)


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    girth: int | None  # None: no cycle
    components: int
    diameter: int

    @property
    def is_forest(self) -> bool:
        return self.girth is None

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "girth": self.girth if self.girth is not None else "no cycle",
            "components": self.components,
            "diameter": self.diameter,
            "forest": self.is_forest,
        }

    def as_tuple(self) -> tuple:
        return (self.vertices, self.edges, self.girth, self.components, self.diameter)


def _bfs(adj: list[list[int]], s: int) -> tuple[list[int], int]:
    """Distances from s (-1 unreachable) and shortest cycle through the BFS tree."""
    dist = [-1] * len(adj)
    parent = [-1] * len(adj)
    dist[s] = 0
    best = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                q.append(w)
            elif w != parent[u]:
                c = dist[u] + dist[w] + 1
                if not best or c < best:
                    best = c
    return dist, best


def adjacency_stats(adj: list[list[int]]) -> GraphStats:
    n = len(adj)
    edges = sum(len(a) for a in adj)
    assert edges % 2 == 0
    comp = [-1] * n
    ncomp = 0
    girth = 0
    diameter = 0
    for s in range(n):
        dist, cyc = _bfs(adj, s)
        if cyc and (not girth or cyc < girth):
            girth = cyc
        diameter = max(diameter, max(dist))
        if comp[s] < 0:
            for v, d in enumerate(dist):
                if d >= 0:
                    comp[v] = ncomp
            ncomp += 1
    return GraphStats(n, edges // 2, girth or None, ncomp, diameter)


def graph_stats(g: TsGraph) -> GraphStats:
    return adjacency_stats(g.simple_adjacency())


def fat_subgraph_stats(g: TsGraph) -> GraphStats:
    return adjacency_stats(g.simple_adjacency(g.fat_indices()))


def three_core(adj: list[list[int]]) -> set[int]:
    """Vertices surviving iterated removal of vertices of degree < 3."""
    deg = [len(a) for a in adj]
    alive = [True] * len(adj)
    q = deque(i for i, d in enumerate(deg) if d < 3)
    while q:
        u = q.popleft()
        if not alive[u]:
            continue
        alive[u] = False
        for w in adj[u]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < 3:
                    q.append(w)
    return {i for i, a in enumerate(alive) if a}


def has_3_regular_subgraph(g: TsGraph) -> bool:
    # max degree is 3, so a non-empty 3-core is itself 3-regular
    return bool(three_core(g.simple_adjacency()))
