"""Central bilinear maps G x G -> K vanishing on K.

These are the second half of the deformation data: alpha must take
values in the central kernel K, kill any argument from K, and be a
homomorphism in each slot. Maps on carriers up to the table bound are
stored dense and validated exhaustively; larger carriers use a
closed-form callable validated on seeded random triples.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional

import numpy as np

from .errors import (
    BoundExceededError,
    NotBilinearError,
    NonvanishingOnKError,
    NotClassTwoError,
    ValidationFailedError,
    ValueOutsideKError,
)
from .quotients import CentralPair, Lifting, _generating_sequence

BILINEAR_TABLE_BOUND = 1000
_SAMPLED_TRIPLES = 10**5
_SAMPLE_SEED = 1729


class CentralBilinearMap:
    """Bilinear alpha: G x G -> K <= Z(G) with alpha(K, G) = alpha(G, K) = 1."""

    def __init__(
        self,
        pair: CentralPair,
        table: Optional[np.ndarray] = None,
        fn: Optional[Callable] = None,
        name: Optional[str] = None,
        validate: bool = True,
        _known_trivial: bool = False,
    ):
        if (table is None) == (fn is None):
            raise ValidationFailedError("provide exactly one of table or fn")
        self.pair = pair
        self.fn = fn
        self.name = name
        self._trivial = _known_trivial
        if table is not None:
            self.table = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
            if self.table.shape != (pair.group.order,) * 2:
                raise ValidationFailedError("table must be |G| x |G|")
        else:
            self.table = None
        if validate:
            validate_bilinear(self)
        if self.table is not None and not self._trivial:
            self._trivial = bool((self.table == 0).all())

    def values(self, i, j):
        if self.table is not None:
            return self.table[i, j]
        return self.fn(i, j)

    def value(self, i: int, j: int) -> int:
        return int(self.values(np.int64(i), np.int64(j)))

    @property
    def is_trivial(self) -> bool:
        return self._trivial

    def dense_table(self, bound: int = BILINEAR_TABLE_BOUND) -> np.ndarray:
        if self.table is not None:
            return self.table
        n = self.pair.group.order
        if n > bound:
            raise BoundExceededError(f"order {n} exceeds bilinear table bound {bound}")
        idx = np.arange(n, dtype=np.int64)
        return np.asarray(self.fn(idx[:, None], idx[None, :]), dtype=np.int64)

    def describe(self) -> str:
        if self.name:
            return self.name
        return "trivial" if self.is_trivial else "bilinear[dense]"

    def to_json(self, bound: int = BILINEAR_TABLE_BOUND) -> dict:
        """Sparse export: one [i, j, k] row per cell whose value is not
        the identity (index 0)."""
        t = self.dense_table(bound)
        rows, cols = np.nonzero(t)
        data = {
            "pair": self.pair.describe(),
            "values": [
                [int(i), int(j), int(t[i, j])] for i, j in zip(rows, cols)
            ],
        }
        if self.name:
            data["name"] = self.name
        return data

    def __eq__(self, other) -> bool:
        if not isinstance(other, CentralBilinearMap) or self.pair != other.pair:
            return False
        if self.table is not None and other.table is not None:
            return bool(np.array_equal(self.table, other.table))
        return self is other

    def __hash__(self) -> int:
        if self.table is not None:
            return hash((self.pair, self.table.tobytes()))
        return id(self)

    def __repr__(self) -> str:
        return f"<CentralBilinearMap {self.describe()} on {self.pair.group.label}>"


def _check_exhaustive(alpha: CentralBilinearMap) -> None:
    pair = alpha.pair
    G = pair.group
    n = G.order
    A = alpha.table
    kmask = pair.kernel.mask
    if not kmask[A].all():
        g, h = np.argwhere(~kmask[A])[0]
        raise ValueOutsideKError(f"alpha({int(g)},{int(h)}) lies outside K")
    kidx = pair.kernel.indices
    if (A[kidx, :] != 0).any() or (A[:, kidx] != 0).any():
        raise NonvanishingOnKError("alpha must kill arguments from K")
    idx = np.arange(n, dtype=np.int64)
    for g in range(n):
        grow = A[g]
        left = A[np.asarray(G.mul_indices(np.int64(g), idx), dtype=np.int64)]
        right = np.asarray(G.mul_indices(grow[None, :], A), dtype=np.int64)
        if not np.array_equal(left, right):
            h, k = np.argwhere(left != right)[0]
            raise NotBilinearError(
                f"first slot fails at ({g},{int(h)},{int(k)})"
            )
        left2 = grow[np.asarray(G.multiplication_table(), dtype=np.int64)]
        right2 = np.asarray(
            G.mul_indices(grow[:, None], grow[None, :]), dtype=np.int64
        )
        if not np.array_equal(left2, right2):
            h, k = np.argwhere(left2 != right2)[0]
            raise NotBilinearError(
                f"second slot fails at ({g},{int(h)},{int(k)})"
            )


def _check_sampled(alpha: CentralBilinearMap, seed: int, count: int) -> None:
    pair = alpha.pair
    G = pair.group
    n = G.order
    rng = np.random.default_rng(seed)
    gs, hs, ks = rng.integers(0, n, size=(3, count), dtype=np.int64)
    vals = np.asarray(alpha.values(gs, hs), dtype=np.int64)
    if not pair.kernel.mask[vals].all():
        raise ValueOutsideKError("sampled value outside K")
    kpick = pair.kernel.indices[rng.integers(0, pair.kernel.order, size=count)]
    if (np.asarray(alpha.values(kpick, gs)) != 0).any() or (
        np.asarray(alpha.values(gs, kpick)) != 0
    ).any():
        raise NonvanishingOnKError("alpha must kill arguments from K")
    left = np.asarray(alpha.values(G.mul_indices(gs, hs), ks), dtype=np.int64)
    right = G.mul_indices(alpha.values(gs, ks), alpha.values(hs, ks))
    if not np.array_equal(left, np.asarray(right, dtype=np.int64)):
        raise NotBilinearError("first slot fails on a sampled triple")
    left = np.asarray(alpha.values(gs, G.mul_indices(hs, ks)), dtype=np.int64)
    right = G.mul_indices(alpha.values(gs, hs), alpha.values(gs, ks))
    if not np.array_equal(left, np.asarray(right, dtype=np.int64)):
        raise NotBilinearError("second slot fails on a sampled triple")


def validate_bilinear(
    alpha: CentralBilinearMap,
    seed: int = _SAMPLE_SEED,
    count: int = _SAMPLED_TRIPLES,
) -> CentralBilinearMap:
    """Check K-membership, vanishing on K, and both-slot bilinearity.

    Exhaustive for dense tables (carrier <= 1000); seeded sampling for
    closed-form maps on larger carriers. The all-identity table is
    accepted structurally: every identity holds with both sides 1.
    """
    if alpha._trivial:
        return alpha
    if alpha.table is not None:
        _check_exhaustive(alpha)
    else:
        _check_sampled(alpha, seed, count)
    return alpha


def trivial_bilinear(pair: CentralPair) -> CentralBilinearMap:
    n = pair.group.order
    if n <= BILINEAR_TABLE_BOUND:
        table = np.zeros((n, n), dtype=np.int64)
        return CentralBilinearMap(
            pair, table=table, name="trivial", validate=False, _known_trivial=True
        )
    return CentralBilinearMap(
        pair,
        fn=lambda i, j: np.zeros(np.broadcast_shapes(np.shape(i), np.shape(j)), dtype=np.int64),
        name="trivial",
        validate=False,
        _known_trivial=True,
    )


def bilinear_from_table(
    pair: CentralPair, table, name: Optional[str] = None
) -> CentralBilinearMap:
    return CentralBilinearMap(pair, table=np.asarray(table), name=name)


def bilinear_from_callable(
    pair: CentralPair, fn: Callable, name: Optional[str] = None
) -> CentralBilinearMap:
    n = pair.group.order
    if n <= BILINEAR_TABLE_BOUND:
        idx = np.arange(n, dtype=np.int64)
        return CentralBilinearMap(
            pair, table=np.asarray(fn(idx[:, None], idx[None, :])), name=name
        )
    return CentralBilinearMap(pair, fn=fn, name=name)


def bilinear_from_commutator_power(
    pair: CentralPair, k: int, name: Optional[str] = None
) -> CentralBilinearMap:
    """alpha(g, h) = [g, h]^k; needs G of class <= 2 and K >= [G, G]."""
    G = pair.group
    if not G.is_class_at_most_two():
        raise NotClassTwoError(f"{G.label} has nilpotence class > 2")
    if not (G.derived_subgroup() <= pair.kernel):
        raise ValueOutsideKError("commutator powers land outside K")
    name = name or f"[g,h]^{k}"

    def fn(i, j):
        return G.power_indices(G.commutator_indices(i, j), k)

    return bilinear_from_callable(pair, fn, name=name)


def bilinear_accumulation_step(
    alpha_step: CentralBilinearMap,
    prev: CentralBilinearMap,
    step_lift: Lifting,
    prev_lift: Lifting,
) -> CentralBilinearMap:
    """One step of the closed-form accumulation:

    beta_n(g,h) = [L_psi(g), L_q(h)] * beta(L_psi(g), h)
                  * beta(h, L_psi(g)^-1) * beta(g, h) * alpha_n(g, h),

    where L_psi lifts the step endomorphism and L_q the accumulated one.
    The result is eagerly revalidated as a member of the bilinear family.
    """
    pair = alpha_step.pair
    if prev.pair != pair or step_lift.endo.pair != pair or prev_lift.endo.pair != pair:
        raise ValidationFailedError("accumulation data spans different pairs")
    G = pair.group
    n = G.order
    if n > BILINEAR_TABLE_BOUND:
        raise BoundExceededError("accumulation requires dense tables")
    idx = np.arange(n, dtype=np.int64)
    lp = step_lift.values
    lq = prev_lift.values
    lp_inv = np.asarray(G.inv_indices(lp), dtype=np.int64)
    prev_t = prev.dense_table()
    comm = np.asarray(
        G.commutator_indices(lp[:, None], lq[None, :]), dtype=np.int64
    )
    acc = G.mul_indices(comm, prev_t[lp])
    acc = G.mul_indices(acc, prev_t[idx[None, :], lp_inv[:, None]])
    acc = G.mul_indices(acc, prev_t)
    acc = G.mul_indices(acc, alpha_step.dense_table())
    try:
        return CentralBilinearMap(pair, table=np.asarray(acc, dtype=np.int64))
    except (NotBilinearError, NonvanishingOnKError, ValueOutsideKError) as exc:
        raise ValidationFailedError(f"accumulated map left the family: {exc}") from exc


def bicharacter_search(
    pair: CentralPair,
    limit: int = 8,
    attempts: int = 200,
    seed: int = _SAMPLE_SEED,
) -> List[CentralBilinearMap]:
    """Randomized search for maps z^(phi1(gK) * phi2(hK)) with z in K.

    phi1, phi2 are sampled homomorphisms G/K -> Z/e where e is the
    order of z; every candidate is validated before being returned.
    Deduplicated; deterministic for a fixed seed.
    """
    G = pair.group
    if G.order > BILINEAR_TABLE_BOUND:
        raise BoundExceededError("bicharacter search requires dense tables")
    Q = pair.quotient.group
    proj = pair.quotient.projection
    gens = _generating_sequence(Q)
    rng = np.random.default_rng(seed)
    found: Dict[bytes, CentralBilinearMap] = {}

    def random_cyclic_hom(e: int) -> Optional[np.ndarray]:
        imgs = {g: int(rng.integers(0, e)) for g in gens}
        known = {0: 0}
        frontier = list(known.items())
        while frontier:
            a, va = frontier.pop()
            for g, vg in imgs.items():
                c, vc = int(Q.table[a, g]), (va + vg) % e
                if c in known:
                    if known[c] != vc:
                        return None
                else:
                    known[c] = vc
                    frontier.append((c, vc))
        if len(known) != Q.order:
            return None
        return np.asarray([known[c] for c in range(Q.order)], dtype=np.int64)

    for _ in range(attempts):
        if len(found) >= limit:
            break
        z = int(pair.kernel.indices[rng.integers(0, pair.kernel.order)])
        if z == 0:
            continue
        e = G.element_order(z)
        phi1 = random_cyclic_hom(e)
        phi2 = random_cyclic_hom(e)
        if phi1 is None or phi2 is None:
            continue
        powers = np.asarray(
            [G.power_index(z, t) for t in range(e)], dtype=np.int64
        )
        table = powers[(phi1[proj][:, None] * phi2[proj][None, :]) % e]
        try:
            alpha = CentralBilinearMap(pair, table=table)
        except (NotBilinearError, NonvanishingOnKError, ValueOutsideKError):
            continue
        found.setdefault(table.tobytes(), alpha)
    return list(found.values())


def bilinear_from_json(
    pair: CentralPair, data: dict, validate: bool = True
) -> CentralBilinearMap:
    """Rebuild a map from its sparse JSON export; revalidated by default."""
    if "values" not in data:
        raise ValidationFailedError("sparse bilinear JSON needs a values list")
    n = pair.group.order
    table = np.zeros((n, n), dtype=np.int64)
    for row in data["values"]:
        i, j, k = (int(x) for x in row)
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise ValidationFailedError(f"sparse cell {row} out of range")
        table[i, j] = k
    return CentralBilinearMap(pair, table=table, name=data.get("name"),
                              validate=validate)
