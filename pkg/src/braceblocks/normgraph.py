"""Regular permutation groups on a pointed carrier and the normalising
graph.

A regular subgroup of the permutations of {0..n-1} (pointed at 0) is
stored as the n x n array whose row g is the unique member sending 0
to g. Rows double as the left translations of a group operation on the
carrier, with g o h read off as P[g, h]; regular subgroups and group
operations with identity 0 are the same data. Two vertices are joined
when the subgroups normalise each other, which happens exactly when
the two operations form a bi-skew brace; cliques therefore realize
brace blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import (
    BoundExceededError,
    CarrierMismatchError,
    NotASubgroupError,
)
from .groups import CayleyTableGroup, FiniteGroup
from .operations import GroupOperation, TransportedProvenance

ENUMERATION_BOUND = 8
GRAPH_VERTEX_BOUND = 600
CLASSES_POINT_BOUND = 7


class RegularSubgroup:
    """Rows are permutations; row g sends the base point 0 to g."""

    def __init__(self, table: np.ndarray, validate: bool = True):
        P = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise NotASubgroupError("regular subgroup data must be square")
        n = P.shape[0]
        idx = np.arange(n, dtype=np.int32)
        if not np.array_equal(P[:, 0], idx):
            raise NotASubgroupError("row g must send the base point to g")
        self.table = P
        self.n = n
        self._argsorts = np.argsort(P, axis=1).astype(np.int32)
        self.row_set: FrozenSet[bytes] = frozenset(P[g].tobytes() for g in range(n))
        if len(self.row_set) != n:
            raise NotASubgroupError("rows are not distinct permutations")
        if validate:
            self._validate()

    def _validate(self) -> None:
        P, n = self.table, self.n
        idx = np.arange(n, dtype=np.int32)
        if not (np.sort(P, axis=1) == idx[None, :]).all():
            raise NotASubgroupError("rows must be permutations of the carrier")
        if not np.array_equal(P[0], idx):
            raise NotASubgroupError("the member fixing the base point must be the identity")
        for g in range(n):
            composed = P[g][P]
            for h in range(n):
                if composed[h].tobytes() not in self.row_set:
                    raise NotASubgroupError(
                        f"rows {g} and {h} compose outside the set"
                    )

    def member(self, g: int) -> np.ndarray:
        return self.table[g]

    def transported_operation(self, base: FiniteGroup) -> GroupOperation:
        """g o h = image of h under the member indexed by g."""
        if base.order != self.n:
            raise CarrierMismatchError("carrier size mismatch")
        return GroupOperation(
            base,
            None,
            TransportedProvenance(),
            label=f"transported[{self.n}]",
            table=self.table,
        )

    def group(self, label: Optional[str] = None) -> CayleyTableGroup:
        return CayleyTableGroup(self.table, label=label or f"regular[{self.n}]")

    def order_profile(self) -> str:
        """Multiset of member orders, e.g. '1^1 2^1 4^2'."""
        prof = self.group().order_profile()
        return " ".join(f"{o}^{c}" for o, c in sorted(prof.items()))

    def normalises(self, other: "RegularSubgroup") -> bool:
        """eta . other . eta^-1 = other for every member eta of self."""
        if self.n != other.n:
            raise CarrierMismatchError("carrier size mismatch")
        M = other.table
        for g in range(self.n):
            eta = self.table[g]
            conj = eta[M[:, self._argsorts[g]]]
            for h in range(self.n):
                if conj[h].tobytes() not in other.row_set:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, RegularSubgroup) and self.row_set == other.row_set

    def __hash__(self) -> int:
        return hash(self.row_set)

    def to_json(self) -> dict:
        return {"order": self.n, "table": self.table.tolist()}

    def __repr__(self) -> str:
        return f"<RegularSubgroup order {self.n}>"


def lambda_of_operation(op: GroupOperation) -> RegularSubgroup:
    """Image of the left regular representation of op: row g is h -> g o h."""
    return RegularSubgroup(op.table(), validate=False)


def operation_of_regular_subgroup(
    N: RegularSubgroup, base: FiniteGroup
) -> GroupOperation:
    return N.transported_operation(base)


def enumerate_regular_subgroups(
    n: int, bound: int = ENUMERATION_BOUND
) -> List[RegularSubgroup]:
    """All regular subgroups on n points, via all group operations with
    identity 0. Deterministic order (table-lexicographic)."""
    if n > bound:
        raise BoundExceededError(
            f"regular subgroup enumeration on {n} points exceeds bound {bound}"
        )
    tables = _kernels.cayley_tables(n)
    return [RegularSubgroup(tables[i], validate=False) for i in range(tables.shape[0])]


def mutually_normalising(a: RegularSubgroup, b: RegularSubgroup) -> bool:
    return a.normalises(b) and b.normalises(a)


@dataclass
class NormalisingGraph:
    n: int
    vertices: List[RegularSubgroup]
    adjacency: np.ndarray  # bool (V, V), no self loops

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        V = self.vertex_count
        for i in range(V):
            for j in range(i + 1, V):
                if self.adjacency[i, j]:
                    out.append((i, j))
        return out

    def degree_sequence(self) -> List[int]:
        return self.adjacency.sum(axis=1).astype(int).tolist()

    def maximal_cliques(self) -> List[List[int]]:
        """Bron-Kerbosch with pivoting; sorted vertex lists, sorted output."""
        V = self.vertex_count
        neigh = [set(np.flatnonzero(self.adjacency[v]).tolist()) for v in range(V)]
        out: List[List[int]] = []

        def expand(r: set, p: set, x: set) -> None:
            if not p and not x:
                out.append(sorted(r))
                return
            pivot = max(p | x, key=lambda v: len(neigh[v] & p))
            for v in sorted(p - neigh[pivot]):
                expand(r | {v}, p & neigh[v], x & neigh[v])
                p = p - {v}
                x = x | {v}

        expand(set(), set(range(V)), set())
        return sorted(out)

    def brace_blocks(self, base: FiniteGroup) -> List[List[GroupOperation]]:
        """Operations of each maximal clique, as families on the base carrier."""
        return [
            [self.vertices[v].transported_operation(base) for v in clique]
            for clique in self.maximal_cliques()
        ]

    def conjugacy_classes(self, bound: int = CLASSES_POINT_BOUND) -> List[List[int]]:
        """Vertex orbits under carrier relabelings fixing the base point.

        Orbits coincide with isomorphism classes of the transported
        groups. Cost grows with (n-1)!, hence the point bound.
        """
        if self.n > bound:
            raise BoundExceededError(
                f"class grouping on {self.n} points exceeds bound {bound}"
            )
        key_to_class: Dict[bytes, List[int]] = {}
        perms = [
            np.concatenate(([0], np.asarray(rest, dtype=np.int32)))
            for rest in _permutations(range(1, self.n))
        ]
        inv = [np.argsort(s).astype(np.int32) for s in perms]
        for v, sub in enumerate(self.vertices):
            T = sub.table
            key = min(
                s[T[iv[:, None], iv[None, :]]].tobytes()
                for s, iv in zip(perms, inv)
            )
            key_to_class.setdefault(key, []).append(v)
        return sorted(key_to_class.values())

    def to_json(self, include_tables: bool = False) -> dict:
        data = {
            "points": self.n,
            "vertex_count": self.vertex_count,
            "profiles": [v.order_profile() for v in self.vertices],
            "edges": self.edges(),
            "cliques": self.maximal_cliques(),
        }
        if include_tables:
            data["vertices"] = [v.to_json() for v in self.vertices]
        return data

    def to_dot(self) -> str:
        lines = ["graph normalising {", "  node [shape=box];"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="v{i}: {v.order_profile()}"];')
        for i, j in self.edges():
            lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines)


def build_graph(
    subgroups: Sequence[RegularSubgroup],
    vertex_bound: int = GRAPH_VERTEX_BOUND,
) -> NormalisingGraph:
    V = len(subgroups)
    if V == 0:
        raise NotASubgroupError("no vertices given")
    if V > vertex_bound:
        raise BoundExceededError(
            f"{V} vertices exceed the graph bound {vertex_bound}"
        )
    n = subgroups[0].n
    for s in subgroups:
        if s.n != n:
            raise CarrierMismatchError("vertices live on different carriers")
    adj = np.zeros((V, V), dtype=bool)
    for i in range(V):
        for j in range(i + 1, V):
            if mutually_normalising(subgroups[i], subgroups[j]):
                adj[i, j] = adj[j, i] = True
    return NormalisingGraph(n, list(subgroups), adj)


def normalising_graph(
    n: int,
    vertex_bound: int = GRAPH_VERTEX_BOUND,
    bound: int = ENUMERATION_BOUND,
) -> NormalisingGraph:
    """The full normalising graph on n points."""
    return build_graph(
        enumerate_regular_subgroups(n, bound=bound), vertex_bound=vertex_bound
    )
