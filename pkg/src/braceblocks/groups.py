"""Finite group backends with 0-based index conventions.

Elements are hashable tokens; the carrier is an ordered tuple with the
identity at index 0 and the remaining tokens in ascending token order.
All heavy arithmetic runs on integer indices (int32 tables, vectorized
index maps) so the verification kernels can stay dense. Canonical coset
representatives are least-index members, which by the carrier ordering
are least tokens.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BoundExceededError,
    ElementNotInCarrierError,
    IdentityNotFirstError,
    KNotCentralError,
    NotAGroupError,
    NotASubgroupError,
)
from . import _kernels
from ._scan import DEFAULT_SEED

TABLE_BOUND = 2000
_CONSTRUCTION_SAMPLES = 10**5


class FiniteGroup:
    """Abstract finite group. Subclasses implement the index arithmetic."""

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def elements(self) -> tuple:
        raise NotImplementedError

    @property
    def identity(self):
        return self.elements[0]

    @property
    def label(self) -> str:
        raise NotImplementedError

    def index(self, g) -> int:
        raise NotImplementedError

    def element(self, i: int):
        return self.elements[i]

    def mul_indices(self, i, j):
        """Vectorized product on index arrays (broadcastable)."""
        raise NotImplementedError

    def inv_indices(self, i):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # -- scalar wrappers ------------------------------------------------

    def mul_index(self, i: int, j: int) -> int:
        return int(self.mul_indices(np.int64(i), np.int64(j)))

    def inv_index(self, i: int) -> int:
        return int(self.inv_indices(np.int64(i)))

    def mul(self, g, h):
        return self.element(self.mul_index(self.index(g), self.index(h)))

    def inv(self, g):
        return self.element(self.inv_index(self.index(g)))

    # -- derived arithmetic ---------------------------------------------

    def power_indices(self, i, k: int):
        """k-th power by squaring; negative k via the inverse."""
        i = np.asarray(i)
        if k < 0:
            return self.power_indices(self.inv_indices(i), -k)
        acc = np.zeros_like(i)
        base = i
        while k:
            if k & 1:
                acc = self.mul_indices(acc, base)
            k >>= 1
            if k:
                base = self.mul_indices(base, base)
        return acc

    def power_index(self, i: int, k: int) -> int:
        return int(self.power_indices(np.int64(i), k))

    def commutator_indices(self, i, j):
        """[a, b] = a * b * a^-1 * b^-1."""
        ab = self.mul_indices(i, j)
        return self.mul_indices(
            self.mul_indices(ab, self.inv_indices(i)), self.inv_indices(j)
        )

    def commutator_index(self, i: int, j: int) -> int:
        return int(self.commutator_indices(np.int64(i), np.int64(j)))

    def commutator(self, g, h):
        return self.element(self.commutator_index(self.index(g), self.index(h)))

    def conjugate_indices(self, g, x):
        """g * x * g^-1, the conjugation action of g."""
        return self.mul_indices(self.mul_indices(g, x), self.inv_indices(g))

    def conjugation_row(self, i: int) -> np.ndarray:
        return np.asarray(
            self.conjugate_indices(np.int64(i), np.arange(self.order, dtype=np.int64)),
            dtype=np.int64,
        )

    @cached_property
    def inverse_array(self) -> np.ndarray:
        return np.asarray(
            self.inv_indices(np.arange(self.order, dtype=np.int64)), dtype=np.int32
        )

    def multiplication_table(self, bound: int = TABLE_BOUND) -> np.ndarray:
        n = self.order
        if n > bound:
            raise BoundExceededError(
                f"{self.label}: order {n} exceeds table bound {bound}"
            )
        cached = getattr(self, "_mt_cache", None)
        if cached is None:
            idx = np.arange(n, dtype=np.int64)
            cached = np.asarray(
                self.mul_indices(idx[:, None], idx[None, :]), dtype=np.int32
            )
            self._mt_cache = cached
        return cached

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        for start in range(0, n, 256):
            rows = idx[start : start + 256, None]
            if not np.array_equal(
                self.mul_indices(rows, idx[None, :]),
                self.mul_indices(idx[None, :], rows),
            ):
                return False
        return True

    def element_order(self, i: int) -> int:
        m, acc = 1, i
        while acc != 0:
            acc = self.mul_index(acc, i)
            m += 1
        return m

    def order_profile(self, bound: int = TABLE_BOUND) -> Dict[int, int]:
        """Histogram {element order: count}; a cheap isomorphism fingerprint."""
        if self.order > bound:
            raise BoundExceededError(f"order profile refused above {bound}")
        profile: Dict[int, int] = {}
        for i in range(self.order):
            o = self.element_order(i)
            profile[o] = profile.get(o, 0) + 1
        return profile

    # -- subgroups -------------------------------------------------------

    def subgroup(self, members: Iterable) -> "Subgroup":
        indices = sorted({self.index(g) for g in members})
        return Subgroup(self, np.asarray(indices, dtype=np.int64))

    def subgroup_from_indices(self, indices: Iterable[int]) -> "Subgroup":
        return Subgroup(self, np.asarray(sorted(set(int(i) for i in indices)), dtype=np.int64))

    def generated_subgroup(self, generators: Iterable) -> "Subgroup":
        gens = [self.index(g) for g in generators]
        return self.generated_subgroup_from_indices(gens)

    def generated_subgroup_from_indices(self, gens: Sequence[int]) -> "Subgroup":
        gset = np.asarray(
            sorted({int(g) for g in gens} | {self.inv_index(int(g)) for g in gens}),
            dtype=np.int64,
        )
        seen = {0}
        frontier = np.asarray([0], dtype=np.int64)
        while frontier.size:
            prods = np.unique(self.mul_indices(frontier[:, None], gset[None, :]))
            fresh = [int(p) for p in prods if int(p) not in seen]
            seen.update(fresh)
            frontier = np.asarray(fresh, dtype=np.int64)
        return Subgroup(self, np.asarray(sorted(seen), dtype=np.int64), _trusted=True)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, np.asarray([0], dtype=np.int64), _trusted=True)

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(
            self, np.arange(self.order, dtype=np.int64), _trusted=True
        )

    # -- structure -------------------------------------------------------

    def centre(self) -> "Subgroup":
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        central: List[int] = []
        for start in range(0, n, 256):
            cand = idx[start : start + 256, None]
            ok = (
                self.mul_indices(cand, idx[None, :])
                == self.mul_indices(idx[None, :], cand)
            ).all(axis=1)
            central.extend(int(z) for z in cand[ok, 0])
        return Subgroup(self, np.asarray(central, dtype=np.int64), _trusted=True)

    def derived_subgroup(self) -> "Subgroup":
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        comms: set = set()
        for start in range(0, n, 64):
            block = self.commutator_indices(idx[start : start + 64, None], idx[None, :])
            comms.update(int(c) for c in np.unique(block))
        return self.generated_subgroup_from_indices(sorted(comms))

    def lower_central_series(self) -> List["Subgroup"]:
        """G = gamma_1 >= gamma_2 >= ... until stabilization."""
        series = [self.whole_subgroup(), self.derived_subgroup()]
        idx = np.arange(self.order, dtype=np.int64)
        while True:
            prev = series[-1]
            comms: set = set()
            for start in range(0, self.order, 64):
                block = self.commutator_indices(
                    idx[start : start + 64, None], prev.indices[None, :]
                )
                comms.update(int(c) for c in np.unique(block))
            nxt = self.generated_subgroup_from_indices(sorted(comms))
            if nxt.order == prev.order:
                return series
            series.append(nxt)

    def upper_central_series(self, bound: int = 4000) -> List["Subgroup"]:
        """1 = Z_0 <= Z_1 = Z(G) <= ... until stabilization."""
        if self.order > bound:
            raise BoundExceededError(
                f"upper central series refused above order {bound}"
            )
        series = [self.trivial_subgroup()]
        idx = np.arange(self.order, dtype=np.int64)
        while True:
            prev = series[-1]
            members: List[int] = []
            for start in range(0, self.order, 64):
                cand = idx[start : start + 64, None]
                comm = self.commutator_indices(cand, idx[None, :])
                ok = prev.mask[comm].all(axis=1)
                members.extend(int(z) for z in cand[ok, 0])
            nxt = Subgroup(self, np.asarray(members, dtype=np.int64), _trusted=True)
            if nxt.order == prev.order:
                return series
            series.append(nxt)

    def nilpotency_class(self) -> Optional[int]:
        series = self.lower_central_series()
        if series[-1].order != 1:
            return None
        return len(series) - 1

    def is_class_at_most_two(self) -> bool:
        return self.derived_subgroup() <= self.centre()

    def quotient(self, kernel: "Subgroup") -> "Quotient":
        return _build_quotient(self, kernel)

    # -- misc --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"

    def _signature(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())


@dataclass(frozen=True)
class Subgroup:
    """Subset of a parent carrier, validated closed under product and inverse."""

    parent: FiniteGroup
    indices: np.ndarray
    _trusted: bool = False

    def __post_init__(self):
        idx = np.sort(np.asarray(self.indices, dtype=np.int64))
        if idx.size and (idx[0] < 0 or idx[-1] >= self.parent.order):
            raise ElementNotInCarrierError("member index out of range")
        object.__setattr__(self, "indices", idx)
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[idx] = True
        object.__setattr__(self, "mask", mask)
        if not self._trusted:
            self._validate()

    def _validate(self) -> None:
        idx = self.indices
        if idx.size == 0 or idx[0] != 0:
            raise NotASubgroupError("subgroup must contain the identity (index 0)")
        if idx.size != np.unique(idx).size:
            raise NotASubgroupError("duplicate members")
        prods = self.parent.mul_indices(idx[:, None], idx[None, :])
        if not self.mask[prods].all():
            raise NotASubgroupError("not closed under the product")
        if not self.mask[self.parent.inv_indices(idx)].all():
            raise NotASubgroupError("not closed under inversion")

    @property
    def order(self) -> int:
        return int(self.indices.size)

    @property
    def members(self) -> tuple:
        return tuple(self.parent.element(int(i)) for i in self.indices)

    def contains_index(self, i) -> np.ndarray:
        return self.mask[i]

    def __contains__(self, token) -> bool:
        return bool(self.mask[self.parent.index(token)])

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.indices].all())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.indices.tobytes()))

    def is_central(self) -> bool:
        idx = np.arange(self.parent.order, dtype=np.int64)
        for k in self.indices:
            if not np.array_equal(
                self.parent.mul_indices(np.int64(k), idx),
                self.parent.mul_indices(idx, np.int64(k)),
            ):
                return False
        return True

    def is_abelian(self) -> bool:
        idx = self.indices
        return bool(
            np.array_equal(
                self.parent.mul_indices(idx[:, None], idx[None, :]),
                self.parent.mul_indices(idx[None, :], idx[:, None]),
            )
        )

    def to_json(self) -> dict:
        return {"indices": [int(i) for i in self.indices]}

    def __repr__(self) -> str:
        return f"<Subgroup order {self.order} of {self.parent.label}>"


@dataclass
class Quotient:
    """G/K for central K: quotient table plus projection and transversal.

    transversal[c] is the least-index member of coset c, so the induced
    lifting conventions are canonical; projection is a homomorphism onto
    the quotient carrier, whose cosets are ordered by least member.
    """

    parent: FiniteGroup
    kernel: Subgroup
    group: "CayleyTableGroup"
    projection: np.ndarray
    transversal: np.ndarray

    def project_index(self, i: int) -> int:
        return int(self.projection[i])

    def lift_index(self, c: int) -> int:
        return int(self.transversal[c])


def _build_quotient(G: FiniteGroup, K: Subgroup) -> Quotient:
    if K.parent != G:
        raise NotASubgroupError("kernel lives in a different carrier")
    if not K.is_central():
        raise KNotCentralError(f"kernel of order {K.order} is not central in {G.label}")
    cache = getattr(G, "_quotient_cache", None)
    if cache is None:
        cache = {}
        G._quotient_cache = cache
    key = K.indices.tobytes()
    if key in cache:
        return cache[key]
    n = G.order
    projection = np.full(n, -1, dtype=np.int64)
    transversal: List[int] = []
    for i in range(n):
        if projection[i] >= 0:
            continue
        coset = np.asarray(G.mul_indices(np.int64(i), K.indices), dtype=np.int64)
        projection[coset] = len(transversal)
        transversal.append(i)
    tr = np.asarray(transversal, dtype=np.int64)
    table = projection[
        np.asarray(G.mul_indices(tr[:, None], tr[None, :]), dtype=np.int64)
    ].astype(np.int32)
    quotient_group = CayleyTableGroup(table, label=f"{G.label}/K{K.order}")
    result = Quotient(G, K, quotient_group, projection, tr)
    cache[key] = result
    return result


class CayleyTableGroup(FiniteGroup):
    """Dense multiplication table on tokens 0..n-1, identity 0.

    Construction verifies the group laws: latin rows/columns, two-sided
    identity at 0, inverses, and associativity (exhaustive up to order
    1000, seeded sampling of 1e5 triples above).
    """

    def __init__(
        self,
        table,
        validate: bool = True,
        label: Optional[str] = None,
        elements: Optional[Sequence] = None,
    ):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise NotAGroupError("table must be square")
        self._table = table
        self._n = table.shape[0]
        self._label = label or f"cayley({self._n})"
        if elements is not None:
            if len(elements) != self._n:
                raise NotAGroupError("token list length must match the table")
            self._tokens = tuple(elements)
            self._token_index = {t: i for i, t in enumerate(self._tokens)}
            if len(self._token_index) != self._n:
                raise NotAGroupError("tokens must be distinct")
        else:
            self._tokens = None
            self._token_index = None
        if validate:
            self._validate()
        self._mt_cache = table

    def _validate(self) -> None:
        n, T = self._n, self._table
        if T.min() < 0 or T.max() >= n:
            raise NotAGroupError("table entries outside carrier")
        rng = np.arange(n, dtype=np.int32)
        if not (np.array_equal(T[0], rng) and np.array_equal(T[:, 0], rng)):
            if any(
                np.array_equal(T[e], rng) and np.array_equal(T[:, e], rng)
                for e in range(n)
            ):
                raise IdentityNotFirstError(
                    "identity exists but is not at index 0; relabel the carrier"
                )
            raise NotAGroupError("no two-sided identity at index 0")
        if not ((np.sort(T, axis=1) == rng).all() and (np.sort(T, axis=0) == rng[:, None]).all()):
            raise NotAGroupError("rows and columns must be permutations")
        if not (T == 0).any(axis=1).all():
            raise NotAGroupError("missing inverses")
        if n**3 <= 10**9 and n <= 1000:
            hit = _kernels.assoc_violation(T, 0, n)
            if hit >= 0:
                k = hit % n
                g, h = divmod(hit // n, n)
                raise NotAGroupError(f"associativity fails at {(g, h, k)}")
        else:
            rng_gen = np.random.default_rng(DEFAULT_SEED)
            gs, hs, ks = rng_gen.integers(
                0, n, size=(3, _CONSTRUCTION_SAMPLES), dtype=np.int64
            )
            hit = _kernels.assoc_violation_samples(T, gs, hs, ks)
            if hit >= 0:
                raise NotAGroupError(
                    f"associativity fails at sampled triple "
                    f"{(int(gs[hit]), int(hs[hit]), int(ks[hit]))}"
                )

    @property
    def order(self) -> int:
        return self._n

    @property
    def elements(self) -> tuple:
        return self._tokens if self._tokens is not None else tuple(range(self._n))

    @property
    def label(self) -> str:
        return self._label

    def index(self, g) -> int:
        if self._token_index is not None:
            try:
                return self._token_index[g]
            except (KeyError, TypeError):
                raise ElementNotInCarrierError(
                    f"{g!r} not in carrier of {self.label}"
                ) from None
        i = int(g)
        if not 0 <= i < self._n:
            raise ElementNotInCarrierError(f"{g!r} not in carrier of {self.label}")
        return i

    def mul_indices(self, i, j):
        return self._table[i, j]

    def inv_indices(self, i):
        return self.inverse_array[i]

    @cached_property
    def inverse_array(self) -> np.ndarray:
        return np.argmax(self._table == 0, axis=1).astype(np.int32)

    @property
    def table(self) -> np.ndarray:
        return self._table

    def _signature(self) -> tuple:
        return ("cayley", self._n, self._table.tobytes(), self._tokens)

    def to_json(self) -> dict:
        data = {
            "backend": "CayleyTable",
            "order": self._n,
            "table": self._table.tolist(),
        }
        if self._tokens is not None:
            data["elements"] = [list(t) if isinstance(t, tuple) else t for t in self._tokens]
        return data

    @classmethod
    def relabelled(cls, table, label: Optional[str] = None) -> "CayleyTableGroup":
        """Reorder the carrier so the identity lands at index 0."""
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        rng = np.arange(n, dtype=np.int32)
        e = next(
            (
                i
                for i in range(n)
                if np.array_equal(table[i], rng) and np.array_equal(table[:, i], rng)
            ),
            None,
        )
        if e is None:
            raise NotAGroupError("no two-sided identity")
        if e == 0:
            return cls(table, label=label)
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        inv = np.argsort(perm)
        relabelled = inv[table[perm][:, perm]]
        return cls(relabelled, label=label)


class HeisenbergGroup(FiniteGroup):
    """Triples (a, b, c) over Z/n with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

    Nilpotent of class two for n >= 2; centre and derived subgroup both
    equal {(0,0,c)}. Closed-form index arithmetic, no stored table.
    """

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        self._n = modulus**3

    @property
    def order(self) -> int:
        return self._n

    @cached_property
    def elements(self) -> tuple:
        m = self.modulus
        return tuple(itertools.product(range(m), repeat=3))

    @property
    def label(self) -> str:
        return f"heisenberg({self.modulus})"

    def index(self, g) -> int:
        a, b, c = g
        m = self.modulus
        if not (0 <= a < m and 0 <= b < m and 0 <= c < m):
            raise ElementNotInCarrierError(f"{g!r} not in carrier of {self.label}")
        return (a * m + b) * m + c

    def decode(self, i):
        m = self.modulus
        i = np.asarray(i, dtype=np.int64)
        return i // (m * m), (i // m) % m, i % m

    def encode(self, a, b, c):
        m = self.modulus
        return (a % m * m + b % m) * m + c % m

    def mul_indices(self, i, j):
        a, b, c = self.decode(i)
        x, y, z = self.decode(j)
        return self.encode(a + x, b + y, c + z + a * y)

    def inv_indices(self, i):
        a, b, c = self.decode(i)
        return self.encode(-a, -b, -c + a * b)

    def centre(self) -> Subgroup:
        return Subgroup(
            self, np.arange(self.modulus, dtype=np.int64), _trusted=True
        )

    def derived_subgroup(self) -> Subgroup:
        if self.modulus == 1:
            return self.trivial_subgroup()
        return self.centre()

    @cached_property
    def is_abelian(self) -> bool:
        return self.modulus == 1

    def _signature(self) -> tuple:
        return ("heisenberg", self.modulus)

    def to_json(self) -> dict:
        return {"backend": "Heisenberg", "modulus": self.modulus}


class UnitriangularGroup(FiniteGroup):
    """Upper unitriangular m x m matrices over Z/q.

    Tokens are the above-diagonal entries read row-major; the index is
    their base-q value, so the zero matrix (identity) sits at index 0.
    """

    def __init__(self, size: int, modulus: int, max_order: int = 200000):
        if size < 2 or modulus < 2:
            raise ValueError("need size >= 2 and modulus >= 2")
        self.size = size
        self.modulus = modulus
        self.positions = [
            (i, j) for i in range(size) for j in range(i + 1, size)
        ]
        self._r = len(self.positions)
        order = modulus**self._r
        if order > max_order:
            raise BoundExceededError(
                f"unitriangular({size},{modulus}) has order {order} > {max_order}"
            )
        self._n = order
        self._weights = modulus ** np.arange(self._r - 1, -1, -1, dtype=np.int64)

    @property
    def order(self) -> int:
        return self._n

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(range(self.modulus), repeat=self._r))

    @property
    def label(self) -> str:
        return f"unitriangular({self.size},{self.modulus})"

    def index(self, g) -> int:
        if len(g) != self._r or any(not 0 <= v < self.modulus for v in g):
            raise ElementNotInCarrierError(f"{g!r} not in carrier of {self.label}")
        return int(np.dot(np.asarray(g, dtype=np.int64), self._weights))

    def _matrices(self, i) -> np.ndarray:
        i = np.atleast_1d(np.asarray(i, dtype=np.int64))
        digits = (i[:, None] // self._weights[None, :]) % self.modulus
        m = self.size
        mats = np.broadcast_to(np.eye(m, dtype=np.int64), (i.size, m, m)).copy()
        for p, (r, c) in enumerate(self.positions):
            mats[:, r, c] = digits[:, p]
        return mats

    def _encode_matrices(self, mats: np.ndarray) -> np.ndarray:
        cols = [mats[:, r, c] % self.modulus for (r, c) in self.positions]
        return np.dot(np.stack(cols, axis=1), self._weights)

    def mul_indices(self, i, j):
        i_arr = np.asarray(i, dtype=np.int64)
        j_arr = np.asarray(j, dtype=np.int64)
        shape = np.broadcast_shapes(i_arr.shape, j_arr.shape)
        i_b = np.broadcast_to(i_arr, shape).ravel()
        j_b = np.broadcast_to(j_arr, shape).ravel()
        prod = np.einsum(
            "nik,nkj->nij", self._matrices(i_b), self._matrices(j_b)
        ) % self.modulus
        return self._encode_matrices(prod).reshape(shape)

    def inv_indices(self, i):
        i_arr = np.asarray(i, dtype=np.int64)
        shape = i_arr.shape
        mats = self._matrices(i_arr.ravel())
        m = self.size
        nil = mats - np.eye(m, dtype=np.int64)
        inv = np.broadcast_to(np.eye(m, dtype=np.int64), mats.shape).copy()
        term = np.broadcast_to(np.eye(m, dtype=np.int64), mats.shape).copy()
        for _ in range(m - 1):
            term = np.einsum("nik,nkj->nij", term, -nil) % self.modulus
            inv = (inv + term) % self.modulus
        return self._encode_matrices(inv).reshape(shape)

    def centre(self) -> Subgroup:
        corner = self.positions.index((0, self.size - 1))
        idx = np.arange(self.modulus, dtype=np.int64) * self._weights[corner]
        return Subgroup(self, np.sort(idx), _trusted=True)

    def derived_subgroup(self) -> Subgroup:
        free = [p for p, (r, c) in enumerate(self.positions) if c - r >= 2]
        combos = itertools.product(range(self.modulus), repeat=len(free))
        idx = sorted(
            int(sum(v * self._weights[p] for p, v in zip(free, combo)))
            for combo in combos
        )
        return Subgroup(self, np.asarray(idx, dtype=np.int64), _trusted=True)

    @cached_property
    def is_abelian(self) -> bool:
        return self.size == 2

    def _signature(self) -> tuple:
        return ("unitriangular", self.size, self.modulus)

    def to_json(self) -> dict:
        return {
            "backend": "Unitriangular",
            "size": self.size,
            "modulus": self.modulus,
        }


class SymmetricGroup(FiniteGroup):
    """Full symmetric group on degree d points, tokens = image tuples.

    Lexicographic token order puts the identity first. Product is
    composition with the right factor applied first: (g*h)(x) = g(h(x)).
    """

    def __init__(self, degree: int):
        if not 1 <= degree <= 8:
            raise BoundExceededError("degree must be between 1 and 8")
        self.degree = degree
        self._elements = tuple(itertools.permutations(range(degree)))
        self._index = {p: i for i, p in enumerate(self._elements)}
        self._n = len(self._elements)
        self._perms = np.asarray(self._elements, dtype=np.int64)

    @property
    def order(self) -> int:
        return self._n

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def label(self) -> str:
        return f"sym({self.degree})"

    def index(self, g) -> int:
        try:
            return self._index[tuple(g)]
        except (KeyError, TypeError):
            raise ElementNotInCarrierError(f"{g!r} not in carrier of {self.label}")

    @cached_property
    def _dense_table(self) -> Optional[np.ndarray]:
        if self._n > TABLE_BOUND:
            return None
        table = np.empty((self._n, self._n), dtype=np.int32)
        for i, p in enumerate(self._elements):
            composed = np.asarray(p, dtype=np.int64)[self._perms]
            table[i] = [self._index[tuple(row)] for row in composed]
        return table

    def mul_indices(self, i, j):
        T = self._dense_table
        if T is not None:
            return T[i, j]
        i_arr = np.atleast_1d(np.asarray(i, dtype=np.int64))
        j_arr = np.atleast_1d(np.asarray(j, dtype=np.int64))
        shape = np.broadcast_shapes(i_arr.shape, j_arr.shape)
        out = np.empty(shape, dtype=np.int64).ravel()
        i_b = np.broadcast_to(i_arr, shape).ravel()
        j_b = np.broadcast_to(j_arr, shape).ravel()
        for t in range(out.size):
            g = self._elements[int(i_b[t])]
            h = self._elements[int(j_b[t])]
            out[t] = self._index[tuple(g[x] for x in h)]
        result = out.reshape(shape)
        return result if np.asarray(i).shape or np.asarray(j).shape else int(result)

    def inv_indices(self, i):
        i_arr = np.atleast_1d(np.asarray(i, dtype=np.int64))
        inv_perms = np.argsort(self._perms[i_arr.ravel()], axis=1)
        out = np.asarray(
            [self._index[tuple(row)] for row in inv_perms], dtype=np.int64
        ).reshape(i_arr.shape)
        return out if np.asarray(i).shape else int(out.ravel()[0])

    def _signature(self) -> tuple:
        return ("sym", self.degree)

    def to_json(self) -> dict:
        return {"backend": "Permutation", "degree": self.degree}


def cyclic_group(n: int, label: Optional[str] = None) -> CayleyTableGroup:
    idx = np.arange(n, dtype=np.int32)
    return CayleyTableGroup(
        (idx[:, None] + idx[None, :]) % n, label=label or f"cyclic({n})"
    )


def group_from_json(data: dict) -> FiniteGroup:
    backend = data.get("backend")
    if backend == "CayleyTable":
        tokens = data.get("elements")
        if tokens is not None:
            tokens = [tuple(t) if isinstance(t, list) else t for t in tokens]
        return CayleyTableGroup(
            np.asarray(data["table"], dtype=np.int32),
            elements=tokens,
            label=data.get("label"),
        )
    if backend == "Heisenberg":
        return HeisenbergGroup(int(data["modulus"]))
    if backend == "Unitriangular":
        return UnitriangularGroup(int(data["size"]), int(data["modulus"]))
    if backend == "Permutation":
        return SymmetricGroup(int(data["degree"]))
    raise NotAGroupError(f"unknown backend {backend!r}")
