"""Quotient endomorphisms with bounded image, their ring, and liftings.

A central pair fixes K <= Z(G) and K <= A <= G with A/K abelian. The
deforming data lives in the ring of endomorphisms of G/K whose image
lies in A/K: addition is pointwise coset product, multiplication is
composition with the right factor applied first, and the Jacobson
circle f + g + f*g accumulates two deformation steps into one.

A lifting of such an endomorphism is any map G -> A that projects back
to it; the canonical one sends g to the least element of the image
coset. Deformed operations are independent of this choice, which the
perturbation helper lets tests exercise directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .errors import (
    BoundExceededError,
    DeltaEscapesKError,
    ImageEscapesAError,
    KNotInAError,
    NoUnityError,
    NotAHomomorphismError,
    PairMismatchError,
    QuotientNotAbelianError,
    ValidationFailedError,
)
from .groups import FiniteGroup, Quotient, Subgroup


@dataclass
class CentralPair:
    """Carrier group with central kernel K and image bound A, A/K abelian."""

    group: FiniteGroup
    kernel: Subgroup
    image_bound: Subgroup
    quotient: Quotient
    a_coset_mask: np.ndarray

    @property
    def quotient_order(self) -> int:
        return self.quotient.group.order

    def describe(self) -> dict:
        return {
            "group": self.group.label,
            "kernel_order": self.kernel.order,
            "image_bound_order": self.image_bound.order,
            "quotient_order": self.quotient_order,
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CentralPair)
            and self.group == other.group
            and self.kernel == other.kernel
            and self.image_bound == other.image_bound
        )

    def __hash__(self) -> int:
        return hash((self.group, self.kernel, self.image_bound))


def make_central_pair(G: FiniteGroup, K: Subgroup, A: Subgroup) -> CentralPair:
    if K.parent != G or A.parent != G:
        raise PairMismatchError("K and A must be subgroups of G")
    if not (K <= A):
        raise KNotInAError("K must be contained in A")
    quotient = G.quotient(K)  # raises KNotCentralError when K is not central
    a_mask = np.zeros(quotient.group.order, dtype=bool)
    a_mask[np.unique(quotient.projection[A.indices])] = True
    a_cosets = np.flatnonzero(a_mask).astype(np.int64)
    sub = quotient.group.table[np.ix_(a_cosets, a_cosets)]
    if not np.array_equal(sub, sub.T):
        raise QuotientNotAbelianError("A/K is not abelian")
    return CentralPair(G, K, A, quotient, a_mask)


def pair_on_whole_group(G: FiniteGroup, K: Subgroup) -> CentralPair:
    return make_central_pair(G, K, G.whole_subgroup())


def has_unity(pair: CentralPair) -> bool:
    """The endomorphism ring has a unity exactly when A = G."""
    return bool(pair.a_coset_mask.all())


class QuotientEndo:
    """Endomorphism of G/K with image inside A/K, stored as a coset table."""

    def __init__(
        self,
        pair: CentralPair,
        table,
        name: Optional[str] = None,
        validate: bool = True,
    ):
        self.pair = pair
        self.table = np.asarray(table, dtype=np.int64)
        self.name = name
        if validate:
            self._validate()

    def _validate(self) -> None:
        m = self.pair.quotient_order
        t = self.table
        if t.shape != (m,):
            raise ValidationFailedError(f"coset table must have shape ({m},)")
        if t.min() < 0 or t.max() >= m:
            raise ValidationFailedError("coset table values out of range")
        if not self.pair.a_coset_mask[t].all():
            bad = int(np.flatnonzero(~self.pair.a_coset_mask[t])[0])
            raise ImageEscapesAError(f"image of coset {bad} lies outside A/K")
        Q = self.pair.quotient.group.table
        idx = np.arange(m, dtype=np.int64)
        if not np.array_equal(Q[t[idx[:, None]], t[idx[None, :]]], t[Q]):
            raise NotAHomomorphismError("not an endomorphism of G/K")

    @classmethod
    def zero(cls, pair: CentralPair, name: str = "0") -> "QuotientEndo":
        return cls(pair, np.zeros(pair.quotient_order, dtype=np.int64), name=name)

    @classmethod
    def one(cls, pair: CentralPair, name: str = "1") -> "QuotientEndo":
        if not has_unity(pair):
            raise NoUnityError("identity endomorphism requires A = G")
        return cls(pair, np.arange(pair.quotient_order, dtype=np.int64), name=name)

    @property
    def is_zero(self) -> bool:
        return bool((self.table == 0).all())

    def describe(self) -> str:
        if self.name:
            return self.name
        return f"endo[{','.join(str(int(c)) for c in self.table)}]"

    def to_json(self) -> dict:
        data = {"pair": self.pair.describe(), "coset_table": self.table.tolist()}
        if self.name:
            data["name"] = self.name
        return data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientEndo)
            and self.pair == other.pair
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.pair, self.table.tobytes()))

    def __add__(self, other: "QuotientEndo") -> "QuotientEndo":
        return ring_add(self, other)

    def __neg__(self) -> "QuotientEndo":
        return ring_neg(self)

    def __sub__(self, other: "QuotientEndo") -> "QuotientEndo":
        return ring_add(self, ring_neg(other))

    def __mul__(self, other: "QuotientEndo") -> "QuotientEndo":
        return ring_mul(self, other)

    def __repr__(self) -> str:
        return f"<QuotientEndo {self.describe()} on {self.pair.group.label}>"


def _check_same_pair(f: QuotientEndo, g: QuotientEndo) -> None:
    if f.pair != g.pair:
        raise PairMismatchError("endomorphisms live over different pairs")


def ring_add(f: QuotientEndo, g: QuotientEndo) -> QuotientEndo:
    """(f + g)(x) = f(x) * g(x); an endomorphism because A/K is abelian."""
    _check_same_pair(f, g)
    Q = f.pair.quotient.group.table
    return QuotientEndo(f.pair, Q[f.table, g.table])


def ring_neg(f: QuotientEndo) -> QuotientEndo:
    inv = f.pair.quotient.group.inverse_array
    return QuotientEndo(f.pair, inv[f.table].astype(np.int64))


def ring_mul(f: QuotientEndo, g: QuotientEndo) -> QuotientEndo:
    """(f * g)(x) = f(g(x)): composition, right factor applied first."""
    _check_same_pair(f, g)
    return QuotientEndo(f.pair, f.table[g.table])


def jacobson_circle(f: QuotientEndo, g: QuotientEndo) -> QuotientEndo:
    """f + g + f*g; accumulates two deformation steps into one."""
    return ring_add(ring_add(f, g), ring_mul(f, g))


def scalar_multiple(f: QuotientEndo, k: int) -> QuotientEndo:
    """k-fold ring sum of f (k may be negative): x -> f(x)^k."""
    table = f.pair.quotient.group.power_indices(f.table, k)
    return QuotientEndo(f.pair, np.asarray(table, dtype=np.int64))


def ring_power(f: QuotientEndo, k: int) -> QuotientEndo:
    """k-fold composition, k >= 1."""
    if k < 1:
        raise ValueError("ring_power needs k >= 1; the empty product needs A = G")
    acc = f
    for _ in range(k - 1):
        acc = ring_mul(acc, f)
    return acc


@dataclass
class Lifting:
    """Map G -> A projecting onto a quotient endomorphism."""

    endo: QuotientEndo
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        pair = self.endo.pair
        G = pair.group
        if self.values.shape != (G.order,):
            raise ValidationFailedError("lifting must assign a value to every g")
        if not pair.image_bound.mask[self.values].all():
            raise ImageEscapesAError("lifting takes a value outside A")
        proj = pair.quotient.projection
        if not np.array_equal(proj[self.values], self.endo.table[proj]):
            raise ValidationFailedError("values do not project onto the endomorphism")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lifting)
            and self.endo == other.endo
            and np.array_equal(self.values, other.values)
        )


def canonical_lifting(endo: QuotientEndo) -> Lifting:
    """Least-element transversal lifting: g -> min((gK)^psi)."""
    q = endo.pair.quotient
    return Lifting(endo, q.transversal[endo.table[q.projection]])


def perturb_lifting(lifting: Lifting, delta) -> Lifting:
    """Multiply a lifting pointwise by a K-valued map; stays a lifting."""
    pair = lifting.endo.pair
    G = pair.group
    if isinstance(delta, dict):
        arr = np.zeros(G.order, dtype=np.int64)
        for g, k in delta.items():
            arr[G.index(g)] = G.index(k)
        delta = arr
    delta = np.asarray(delta, dtype=np.int64)
    if delta.shape != (G.order,):
        raise ValidationFailedError("delta must assign a value to every g")
    if not pair.kernel.mask[delta].all():
        bad = int(np.flatnonzero(~pair.kernel.mask[delta])[0])
        raise DeltaEscapesKError(f"delta({bad}) lies outside K")
    values = np.asarray(G.mul_indices(lifting.values, delta), dtype=np.int64)
    return Lifting(lifting.endo, values)


def lifting_from_array(endo: QuotientEndo, values) -> Lifting:
    return Lifting(endo, values)


def induced_quotient_endo(
    pair: CentralPair, element_map, name: Optional[str] = None
) -> tuple:
    """Quotient endomorphism induced by a map G -> A given on elements.

    element_map is an index array (or token dict) that must be constant
    on K-cosets modulo K; returns (endo, lifting) where the lifting is
    the element map itself.
    """
    G = pair.group
    if isinstance(element_map, dict):
        arr = np.empty(G.order, dtype=np.int64)
        arr.fill(-1)
        for g, v in element_map.items():
            arr[G.index(g)] = G.index(v)
        if (arr < 0).any():
            raise ValidationFailedError("element map must be total")
        element_map = arr
    element_map = np.asarray(element_map, dtype=np.int64)
    proj, tr = pair.quotient.projection, pair.quotient.transversal
    table = proj[element_map[tr]]
    if not np.array_equal(proj[element_map], table[proj]):
        raise ValidationFailedError("element map is not constant on cosets mod K")
    endo = QuotientEndo(pair, table, name=name)
    return endo, Lifting(endo, element_map)


def verify_group_endomorphism(G: FiniteGroup, emap: np.ndarray) -> bool:
    """Exhaustive check that emap respects the product of G."""
    emap = np.asarray(emap, dtype=np.int64)
    idx = np.arange(G.order, dtype=np.int64)
    for start in range(0, G.order, 128):
        rows = idx[start : start + 128, None]
        lhs = emap[np.asarray(G.mul_indices(rows, idx[None, :]), dtype=np.int64)]
        rhs = G.mul_indices(emap[rows], emap[idx[None, :]])
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _close_images(pair: CentralPair, gens: Dict[int, int]) -> Optional[Dict[int, int]]:
    """Closure of generator images over products; None on a conflict.

    The result covers the subgroup generated by the keys. Inverses come
    for free in a finite group (powers of each generator appear).
    """
    Q = pair.quotient.group.table
    known: Dict[int, int] = {0: 0}
    for g, v in gens.items():
        if known.get(g, v) != v:
            return None
        known[g] = v
    frontier = list(known.items())
    while frontier:
        a, va = frontier.pop()
        for g, vg in gens.items():
            for c, vc in (
                (int(Q[a, g]), int(Q[va, vg])),
                (int(Q[g, a]), int(Q[vg, va])),
            ):
                if c in known:
                    if known[c] != vc:
                        return None
                else:
                    known[c] = vc
                    frontier.append((c, vc))
    return known


def endo_from_generator_images(
    pair: CentralPair, images: Dict, name: Optional[str] = None
) -> QuotientEndo:
    """Extend generator images to an endomorphism of G/K by closure.

    Keys and values may be G tokens or quotient coset indices; the keys
    must generate G/K. Conflicting or non-extendable assignments raise
    NotAHomomorphismError; the result is revalidated exhaustively.
    """
    q = pair.quotient
    m = q.group.order

    def to_coset(x) -> int:
        if isinstance(x, (int, np.integer)) and 0 <= int(x) < m:
            return int(x)
        return int(q.projection[pair.group.index(x)])

    gens = {to_coset(k): to_coset(v) for k, v in images.items()}
    known = _close_images(pair, gens)
    if known is None:
        raise NotAHomomorphismError("conflicting images under closure")
    if len(known) != m:
        raise NotAHomomorphismError("the given keys do not generate G/K")
    table = np.asarray([known[c] for c in range(m)], dtype=np.int64)
    return QuotientEndo(pair, table, name=name)


def _generating_sequence(Q) -> List[int]:
    """Greedy small generating set of a Cayley-table group."""
    gens: List[int] = []
    current = Q.trivial_subgroup()
    while current.order < Q.order:
        nxt = next(i for i in range(Q.order) if not current.mask[i])
        gens.append(nxt)
        current = Q.generated_subgroup_from_indices(gens)
    return gens


def enumerate_endomorphisms(
    pair: CentralPair, max_order: int = 64
) -> List[QuotientEndo]:
    """All endomorphisms of G/K with image in A/K, by backtracking.

    Deterministic order (lexicographic in the coset table). Refuses
    quotients larger than max_order.
    """
    m = pair.quotient_order
    if m > max_order:
        raise BoundExceededError(f"quotient order {m} exceeds bound {max_order}")
    Q = pair.quotient.group
    gens = _generating_sequence(Q)
    targets = [int(c) for c in np.flatnonzero(pair.a_coset_mask)]
    found: List[QuotientEndo] = []

    def extend(level: int, assigned: Dict[int, int]) -> None:
        if level == len(gens):
            try:
                found.append(endo_from_generator_images(pair, assigned))
            except NotAHomomorphismError:
                pass
            return
        g = gens[level]
        for t in targets:
            trial = dict(assigned)
            trial[g] = t
            if _close_images(pair, trial) is None:
                continue
            extend(level + 1, trial)

    extend(0, {})
    uniq: Dict[bytes, QuotientEndo] = {}
    for e in found:
        uniq.setdefault(e.table.tobytes(), e)
    return sorted(uniq.values(), key=lambda e: tuple(e.table))


def endo_from_json(pair: CentralPair, data: dict) -> QuotientEndo:
    """Rebuild an endomorphism from its JSON export; fully revalidated."""
    if "coset_table" not in data:
        raise ValidationFailedError("endo JSON needs a 'coset_table' entry")
    return QuotientEndo(pair, np.asarray(data["coset_table"], dtype=np.int64),
                        name=data.get("name"))
