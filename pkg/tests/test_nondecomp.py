import json
from itertools import combinations

import numpy as np
import pytest

from pbfbox.boolfun import BooleanFunction
from pbfbox.gf2n import FieldElement
from pbfbox.nondecomp import (NdKind, fat_cycles, find_type_iiia, find_type_iiib, make_type_i,
                              make_type_ii, pbf4_space, slim_paths, type_i_all, type_ii_all,
                              type_iiib_from_path)
from pbfbox.pbf import is_pbf_direct, is_pbf_matrix
from pbfbox.tripleset import Kind, TripleSet, t_partition
from shared import constraints, field, graph


def pairs_of(f):
    return sorted({min(a, a ^ 1) for a in f.support_ints()})


def is_decomposable(f, cs):
    """Some nonzero PBF has support strictly inside supp(f)."""
    ps = pairs_of(f)
    for k in range(1, len(ps)):
        for sub in combinations(ps, k):
            g = BooleanFunction.indicator(f.spec, [x for p in sub for x in (p, p ^ 1)])
            if is_pbf_matrix(g, cs):
                return True
    return False


def test_type_i():
    s = field(6)
    ones = type_i_all(s)
    assert len(ones) == 7
    b = min(t_partition(s).t1)
    assert make_type_i(FieldElement(s, b)).f == make_type_i(FieldElement(s, b ^ 1)).f
    with pytest.raises(ValueError):
        make_type_i(FieldElement(s, min(t_partition(s).t2)))


@pytest.mark.parametrize("n, count", [(6, 9), (8, 28)])
def test_type_ii_counts(n, count):
    twos = type_ii_all(field(n))
    assert len(twos) == count
    assert all(p.f.weight == 4 for p in twos)


def test_type_ii_rejects_fat():
    g = graph(8)
    fat = g.vertices[g.fat_indices()[0]]
    with pytest.raises(ValueError):
        make_type_ii(field(8), fat)
    with pytest.raises(ValueError):
        make_type_ii(field(8), TripleSet(fat.elems))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_low_weight_generators(n):
    s = field(n)
    cs = constraints(n)
    for p in type_i_all(s) + type_ii_all(s):
        f = p.f
        assert is_pbf_direct(f) and is_pbf_matrix(f, cs)
        assert np.array_equal(f.tt, f.tt[np.arange(s.order) ^ 1])
        assert f.weight == 2 * (1 if p.kind is NdKind.TYPE_I else 2)


@pytest.mark.parametrize("n, dim", [(6, 16), (8, 64), (10, 256), (12, 1024)])
def test_pbf4_dimension(n, dim):
    p4 = pbf4_space(field(n))
    assert p4.dim == p4.size == dim == 2 ** (n - 2)
    assert p4.n_type_i == t_partition(field(n)).sizes()[0] // 2
    # every row of X is annihilated by M
    cs = constraints(n)
    rows = p4.x.to_dense()
    for r in rows[:: max(1, dim // 64)]:
        assert is_pbf_matrix(BooleanFunction(field(n), r), cs)


def test_type_iiia_n6_empty():
    assert find_type_iiia(graph(6), 20) == []


def test_type_iiia_n8_cycle():
    g = graph(8)
    found = find_type_iiia(g, 8)
    assert len(found) == 1
    (p,) = found
    assert p.t == 8 and len(p.witness["cycle"]) == 8
    assert is_pbf_direct(p.f)
    assert find_type_iiia(g, 7) == []


def test_cycles_are_canonical():
    # rotations and reflections are reported once
    for n in (8, 10, 12):
        cyc = [tuple(c) for c in fat_cycles(graph(n), 10)]
        keys = {frozenset(c) for c in cyc}
        assert len(keys) == len(cyc)


def test_type_iiib_n6_slim_edge():
    g = graph(6)
    edge_paths = [p for p in slim_paths(g, 3)]
    assert edge_paths and all(len(p) == 2 for p in edge_paths)
    out = type_iiib_from_path(g, edge_paths[0])
    assert len(out) == 4
    for p in out:
        assert p.f.weight == 6 and is_pbf_direct(p.f)


def test_type_iiib_rejects_bad_paths():
    g = graph(8)
    fat = g.fat_indices()
    with pytest.raises(ValueError):
        type_iiib_from_path(g, [fat[0], g.neighbours(fat[0])[0]])
    slim = [i for i, v in enumerate(g.vertices) if v.kind is Kind.SLIM]
    with pytest.raises(ValueError):
        type_iiib_from_path(g, [slim[0], slim[1], slim[2]])


@pytest.mark.parametrize("n, max_len", [(6, 8), (8, 6), (10, 5)])
def test_type_iii_outputs_are_pbfs(n, max_len):
    g = graph(n)
    found = find_type_iiia(g, max_len) + find_type_iiib(g, max_len)
    for p in found:
        assert is_pbf_direct(p.f)
        assert p.t <= max_len
        if p.kind is NdKind.TYPE_IIIB:
            assert p.t == len(p.witness["path"]) + 1
        else:
            assert p.t == len(p.witness["cycle"])


def test_type_iiib_unique_paths():
    g = graph(8)
    paths = [tuple(p) for p in slim_paths(g, 7)]
    assert len(paths) == len(set(paths))
    assert not any(tuple(reversed(p)) in set(paths) for p in paths if len(p) > 1)


@pytest.mark.parametrize("n", [6, 8])
def test_non_decomposable(n):
    s = field(n)
    g = graph(n)
    cs = constraints(n)
    found = type_i_all(s) + type_ii_all(s) + find_type_iiia(g, 8) + find_type_iiib(g, 5)
    assert any(p.kind is NdKind.TYPE_IIIB for p in found)
    for p in found:
        assert not is_decomposable(p.f, cs), p.witness


def test_decomposition_oracle_detects_sums():
    s = field(6)
    a, b = type_i_all(s)[:2]
    assert is_decomposable(a.f + b.f, constraints(6))


def test_jsonl():
    p = type_ii_all(field(6))[0]
    d = json.loads(p.to_jsonl())
    assert d["kind"] == "type-ii" and d["weight"] == 4
    assert BooleanFunction.from_hex(field(6), d["tt"]) == p.f
    assert len(d["witness"]["triple_set"]) == 3
