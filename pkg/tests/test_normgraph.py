"""Regular subgroups of the symmetric group on a carrier and the graph
of mutually normalising pairs."""

from itertools import permutations

import numpy as np
import pytest

from braceblocks.catalog import heisenberg_block
from braceblocks._kernels import BACKEND
from braceblocks.errors import (
    BoundExceededError,
    CarrierMismatchError,
    NotASubgroupError,
)
from braceblocks.groups import CayleyTableGroup, cyclic_group
from braceblocks.normgraph import (
    NormalisingGraph,
    RegularSubgroup,
    build_graph,
    enumerate_regular_subgroups,
    lambda_of_operation,
    mutually_normalising,
    normalising_graph,
    operation_of_regular_subgroup,
)
from braceblocks.operations import dot_operation, verify_skew_brace


needs_compiled = pytest.mark.skipif(
    BACKEND != "compiled", reason="needs the compiled kernels"
)


# identity-first table counts: sum over group types of (n-1)! / |Aut|
TABLE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 6, 6: 80}


@pytest.fixture(scope="module")
def g4():
    return normalising_graph(4)


@pytest.fixture(scope="module")
def g6():
    return normalising_graph(6)


# -- enumeration ---------------------------------------------------------


def test_enumeration_counts():
    for n, count in TABLE_COUNTS.items():
        subs = enumerate_regular_subgroups(n)
        assert len(subs) == count
        assert len(set(subs)) == count


def brute_force_order4_tables():
    """Independent oracle: all identity-first order-4 Cayley tables by
    direct search over row permutations."""
    found = []
    rows1 = [p for p in permutations(range(4)) if p[0] == 1]
    rows2 = [p for p in permutations(range(4)) if p[0] == 2]
    rows3 = [p for p in permutations(range(4)) if p[0] == 3]
    for r1 in rows1:
        for r2 in rows2:
            for r3 in rows3:
                T = np.asarray([(0, 1, 2, 3), r1, r2, r3], dtype=np.int32)
                if not (np.sort(T, axis=0) == np.arange(4)[:, None]).all():
                    continue
                if all(
                    T[T[a, b], c] == T[a, T[b, c]]
                    for a in range(4)
                    for b in range(4)
                    for c in range(4)
                ):
                    found.append(T.tobytes())
    return sorted(found)


def test_order4_enumeration_matches_brute_force():
    subs = enumerate_regular_subgroups(4)
    assert sorted(s.table.tobytes() for s in subs) == brute_force_order4_tables()


def test_enumerated_tables_are_groups():
    for s in enumerate_regular_subgroups(5):
        assert CayleyTableGroup(s.table).order == 5


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_regular_subgroups(9)
    with pytest.raises(BoundExceededError):
        normalising_graph(12)


# -- regular subgroup mechanics -------------------------------------------


def test_lambda_round_trip(c6):
    op = dot_operation(c6)
    sub = lambda_of_operation(op)
    assert np.array_equal(sub.table, op.table())
    back = operation_of_regular_subgroup(sub, c6)
    assert back.pointwise_equal(op)


def test_regular_subgroup_validation():
    good = ((np.arange(4)[:, None] + np.arange(4)[None, :]) % 4).astype(np.int32)
    RegularSubgroup(good)
    bad = good.copy()
    bad[2] = [2, 2, 0, 1]
    with pytest.raises(NotASubgroupError):
        RegularSubgroup(bad)
    off_base = good[:, [1, 0, 2, 3]]
    with pytest.raises(NotASubgroupError):
        RegularSubgroup(off_base)
    # closed under composition is required, not just row validity
    swapped = good.copy()
    swapped[[2, 3]] = swapped[[3, 2]]
    with pytest.raises(NotASubgroupError):
        RegularSubgroup(swapped)


def test_order_profile_string():
    v4 = enumerate_regular_subgroups(4)[0]
    assert {s.order_profile() for s in enumerate_regular_subgroups(4)} == {
        "1^1 2^3",
        "1^1 2^1 4^2",
    }
    assert v4.n == 4


# -- graph shapes -----------------------------------------------------------


def test_order4_graph_is_a_star(g4):
    assert g4.vertex_count == 4
    degrees = g4.degree_sequence()
    assert sorted(degrees, reverse=True) == [3, 1, 1, 1]
    center = int(np.argmax(degrees))
    assert g4.vertices[center].order_profile() == "1^1 2^3"
    leaves = [v for v in range(4) if v != center]
    assert all(g4.vertices[v].order_profile() == "1^1 2^1 4^2" for v in leaves)
    assert g4.edges() == [(center, v) for v in leaves]
    assert g4.maximal_cliques() == [[center, v] for v in leaves]
    assert g4.conjugacy_classes() == [[center], leaves]


def test_order5_graph_is_empty():
    g5 = normalising_graph(5)
    assert g5.vertex_count == 6
    assert g5.edges() == []
    assert g5.conjugacy_classes() == [[0, 1, 2, 3, 4, 5]]


def test_order6_graph_shape(g6):
    assert g6.vertex_count == 80
    assert len(g6.edges()) == 70
    assert [len(c) for c in g6.conjugacy_classes()] == [60, 20]


def test_order4_edges_are_exactly_the_biskew_pairs(g4):
    base = cyclic_group(4)
    ops = [v.transported_operation(base) for v in g4.vertices]
    for i in range(4):
        for j in range(i + 1, 4):
            rep = verify_skew_brace(ops[i], ops[j])
            assert rep.biskew_ok == bool(g4.adjacency[i, j])


def test_order6_edges_match_biskew_on_a_sample(g6):
    base = cyclic_group(6)
    rng = np.random.default_rng(1729)
    pairs = {(i, j) for i, j in g6.edges()[:25]}
    while len(pairs) < 50:
        i, j = sorted(rng.integers(0, 80, size=2))
        if i != j:
            pairs.add((int(i), int(j)))
    for i, j in sorted(pairs):
        opi = g6.vertices[i].transported_operation(base)
        opj = g6.vertices[j].transported_operation(base)
        rep = verify_skew_brace(opi, opj)
        assert rep.biskew_ok == bool(g6.adjacency[i, j])


def test_non_normalising_pair_has_manual_witness(g6):
    i, j = next(
        (i, j)
        for i in range(80)
        for j in range(i + 1, 80)
        if not g6.adjacency[i, j]
    )
    a, b = g6.vertices[i], g6.vertices[j]
    assert not mutually_normalising(a, b)
    # find the escaping conjugate by hand
    if a.normalises(b):
        a, b = b, a
    witness = None
    for g in range(6):
        eta = a.table[g]
        eta_inv = np.argsort(eta)
        for h in range(6):
            conj = eta[b.table[h][eta_inv]]
            if conj.tobytes() not in b.row_set:
                witness = (g, h, conj)
                break
        if witness:
            break
    assert witness is not None


def test_heisenberg_block_transports_to_a_clique(h3_entry):
    subs = [lambda_of_operation(op) for op in h3_entry.operations]
    assert len(subs) == 3
    for x in range(3):
        for y in range(x + 1, 3):
            assert mutually_normalising(subs[x], subs[y])


# -- bounds and exports -----------------------------------------------------


def test_graph_vertex_bound(g6):
    with pytest.raises(BoundExceededError):
        build_graph(g6.vertices, vertex_bound=10)
    with pytest.raises(NotASubgroupError):
        build_graph([])


def test_mixed_carriers_rejected(g4):
    subs5 = enumerate_regular_subgroups(5)
    with pytest.raises(CarrierMismatchError):
        build_graph([g4.vertices[0], subs5[0]])
    with pytest.raises(CarrierMismatchError):
        g4.vertices[0].normalises(subs5[0])


def test_conjugacy_class_bound(g4):
    with pytest.raises(BoundExceededError):
        g4.conjugacy_classes(bound=3)


def test_graph_json_and_dot(g4):
    data = g4.to_json()
    assert data["points"] == 4
    assert data["vertex_count"] == 4
    assert len(data["profiles"]) == 4
    assert data["edges"] == g4.edges()
    assert "vertices" not in data
    full = g4.to_json(include_tables=True)
    assert len(full["vertices"]) == 4
    dot = g4.to_dot()
    assert dot.startswith("graph normalising {")
    assert dot.count(" -- ") == 3
    assert 'v0 [label="v0: ' in dot


def test_blocks_from_cliques(g4):
    base = cyclic_group(4)
    blocks = g4.brace_blocks(base)
    assert len(blocks) == 3
    for ops in blocks:
        assert len(ops) == 2
        rep = verify_skew_brace(ops[0], ops[1])
        assert rep.biskew_ok


@needs_compiled
def test_order_seven_and_eight_counts():
    assert len(enumerate_regular_subgroups(7)) == 120
    assert len(enumerate_regular_subgroups(8)) == 2760
