"""Group operations on a fixed carrier: the dot operation, deformations
g o h = g * L(g) * h * L(g)^-1 * alpha(g, h), their iteration, and the
skew-brace verifier.

Operations are lazy evaluators over element indices; dense tables are
materialized (and cached) only for carriers up to the table bound, and
equality of large operations is decided by chunked pointwise scans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from ._scan import (
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_SEED,
    ScanResult,
    resolve_mode,
    run_exhaustive,
    run_sampled,
)
from .bilinear import (
    CentralBilinearMap,
    bilinear_accumulation_step,
    trivial_bilinear,
)
from .errors import (
    BoundExceededError,
    CarrierMismatchError,
    NotAGroupError,
    NotASkewBraceError,
)
from .groups import CayleyTableGroup, FiniteGroup
from .quotients import (
    CentralPair,
    Lifting,
    QuotientEndo,
    canonical_lifting,
    jacobson_circle,
)

OPERATION_TABLE_BOUND = 1000
_EXPANSION_SAMPLES = 1000


@dataclass(frozen=True)
class DotProvenance:
    kind: str = "dot"

    def describe(self) -> dict:
        return {"kind": "dot"}


@dataclass(frozen=True)
class DeformedProvenance:
    pair: CentralPair
    endo: QuotientEndo
    bilinear: CentralBilinearMap
    lifting: Lifting
    kind: str = "deformed"

    def describe(self) -> dict:
        return {
            "kind": "deformed",
            "endo": self.endo.describe(),
            "bilinear": self.bilinear.describe(),
            "pair": self.pair.describe(),
        }


@dataclass(frozen=True)
class IteratedProvenance:
    pair: CentralPair
    depth: int
    steps: tuple
    kind: str = "iterated"

    def describe(self) -> dict:
        return {
            "kind": "iterated",
            "depth": self.depth,
            "steps": [
                {"endo": e.describe(), "bilinear": a.describe()} for e, a in self.steps
            ],
        }


@dataclass(frozen=True)
class TransportedProvenance:
    source: str = "regular-subgroup"
    kind: str = "transported"

    def describe(self) -> dict:
        return {"kind": "transported", "source": self.source}


Provenance = Union[
    DotProvenance, DeformedProvenance, IteratedProvenance, TransportedProvenance
]


class GroupOperation:
    """A binary operation on the carrier of a base group.

    Evaluation is index-level and vectorized; the identity is expected
    at index 0 (verified by verify_group, not assumed).
    """

    def __init__(
        self,
        base: FiniteGroup,
        eval_fn: Callable,
        provenance: Provenance,
        label: str,
        table: Optional[np.ndarray] = None,
    ):
        self.base = base
        self._eval = eval_fn
        self.provenance = provenance
        self.label = label
        self._table = None if table is None else np.ascontiguousarray(
            np.asarray(table, dtype=np.int32)
        )
        self._verified: Optional["GroupLawReport"] = None

    # -- evaluation -------------------------------------------------------

    def eval_indices(self, i, j):
        if self._table is not None:
            return self._table[i, j]
        return self._eval(i, j)

    def eval_index(self, i: int, j: int) -> int:
        return int(self.eval_indices(np.int64(i), np.int64(j)))

    def __call__(self, g, h):
        G = self.base
        return G.element(self.eval_index(G.index(g), G.index(h)))

    @property
    def has_dense(self) -> bool:
        return self._table is not None or self.base.order <= OPERATION_TABLE_BOUND

    def table(self, bound: int = OPERATION_TABLE_BOUND) -> np.ndarray:
        if self._table is not None:
            return self._table
        n = self.base.order
        if n > bound:
            raise BoundExceededError(
                f"operation table for order {n} exceeds bound {bound}"
            )
        idx = np.arange(n, dtype=np.int64)
        table = np.empty((n, n), dtype=np.int32)
        for start in range(0, n, 256):
            rows = idx[start : start + 256]
            table[rows] = self.eval_indices(rows[:, None], idx[None, :])
        self._table = table
        return table

    def inverse_array(self) -> np.ndarray:
        """Index of the o-inverse of every element (identity at 0)."""
        if isinstance(self.provenance, DeformedProvenance):
            return circle_inverse_array(self)
        if self.has_dense:
            return np.argmax(self.table() == 0, axis=1).astype(np.int64)
        n = self.base.order
        idx = np.arange(n, dtype=np.int64)
        out = np.empty(n, dtype=np.int64)
        for start in range(0, n, 256):
            rows = idx[start : start + 256]
            out[rows] = np.argmax(
                np.asarray(self.eval_indices(rows[:, None], idx[None, :])) == 0, axis=1
            )
        return out

    # -- comparison ---------------------------------------------------------

    def _check_same_carrier(self, other: "GroupOperation") -> None:
        if self.base != other.base:
            raise CarrierMismatchError("operations live on different carriers")

    def _reduces_to_dot(self) -> bool:
        # a zero endomorphism lifts into the central K, so the
        # conjugation cancels and a trivial alpha leaves plain dot
        prov = self.provenance
        if isinstance(prov, DotProvenance):
            return True
        return (
            isinstance(prov, DeformedProvenance)
            and prov.endo.is_zero
            and prov.bilinear.is_trivial
        )

    def first_difference(self, other: "GroupOperation") -> Optional[Tuple[int, int]]:
        self._check_same_carrier(other)
        if self is other:
            return None
        if self._reduces_to_dot() and other._reduces_to_dot():
            return None
        n = self.base.order
        if self.has_dense and other.has_dense:
            a, b = self.table(), other.table()
            if np.array_equal(a, b):
                return None
            g, h = np.argwhere(a != b)[0]
            return int(g), int(h)
        idx = np.arange(n, dtype=np.int64)
        for start in range(0, n, 256):
            rows = idx[start : start + 256]
            a = np.asarray(self.eval_indices(rows[:, None], idx[None, :]))
            b = np.asarray(other.eval_indices(rows[:, None], idx[None, :]))
            if not np.array_equal(a, b):
                r, h = np.argwhere(a != b)[0]
                return int(rows[r]), int(h)
        return None

    def pointwise_equal(self, other: "GroupOperation") -> bool:
        return self.first_difference(other) is None

    def to_json(self, include_table: bool = True) -> dict:
        data = {"label": self.label, "provenance": self.provenance.describe()}
        if include_table and self.has_dense:
            data["order"] = self.base.order
            data["table"] = self.table().tolist()
        return data

    def __repr__(self) -> str:
        return f"<GroupOperation {self.label} on {self.base.label}>"


def dot_operation(G: FiniteGroup) -> GroupOperation:
    return GroupOperation(G, G.mul_indices, DotProvenance(), label="dot")


def deformed_operation(
    pair: CentralPair,
    endo: QuotientEndo,
    alpha: Optional[CentralBilinearMap] = None,
    lifting: Optional[Lifting] = None,
    label: Optional[str] = None,
) -> GroupOperation:
    """g o h = g * L(g) * h * L(g)^-1 * alpha(g, h).

    L is any lifting of the endomorphism (canonical by default); the
    resulting operation does not depend on the choice, since liftings
    differ by central K-values that cancel in the conjugation.
    """
    if endo.pair != pair:
        raise CarrierMismatchError("endomorphism belongs to a different pair")
    alpha = alpha if alpha is not None else trivial_bilinear(pair)
    if alpha.pair != pair:
        raise CarrierMismatchError("bilinear map belongs to a different pair")
    lifting = lifting if lifting is not None else canonical_lifting(endo)
    if lifting.endo != endo:
        raise CarrierMismatchError("lifting does not lift the given endomorphism")
    G = pair.group
    L = lifting.values
    L_inv = np.asarray(G.inv_indices(L), dtype=np.int64)
    trivial = alpha.is_trivial

    def eval_fn(i, j):
        u = L[i]
        out = G.mul_indices(G.mul_indices(G.mul_indices(i, u), j), L_inv[i])
        if not trivial:
            out = G.mul_indices(out, alpha.values(i, j))
        return out

    label = label or f"deformed[{endo.describe()},{alpha.describe()}]"
    return GroupOperation(
        G, eval_fn, DeformedProvenance(pair, endo, alpha, lifting), label
    )


def circle_inverse_array(op: GroupOperation) -> np.ndarray:
    """Closed-form o-inverse: g -> L(g)^-1 * g^-1 * L(g) * alpha(g, g)."""
    prov = op.provenance
    if not isinstance(prov, DeformedProvenance):
        raise NotASkewBraceError("closed-form inverse needs deformed provenance")
    G = op.base
    L = prov.lifting.values
    L_inv = np.asarray(G.inv_indices(L), dtype=np.int64)
    idx = np.arange(G.order, dtype=np.int64)
    out = G.mul_indices(G.mul_indices(L_inv, G.inv_indices(idx)), L)
    if not prov.bilinear.is_trivial:
        out = G.mul_indices(out, prov.bilinear.values(idx, idx))
    return np.asarray(out, dtype=np.int64)


def circle_inverse(op: GroupOperation, g) -> object:
    G = op.base
    return G.element(int(circle_inverse_array(op)[G.index(g)]))


def deformed_conjugation(op: GroupOperation, x: int, y: int) -> int:
    """x o y o xbar in closed form:

    x * L(x) * y * L(x)^-1 * L(y) * x^-1 * L(y)^-1 * alpha(x,y) * alpha(y, x^-1).
    """
    prov = op.provenance
    if not isinstance(prov, DeformedProvenance):
        raise NotASkewBraceError("conjugation closed form needs deformed provenance")
    G = op.base
    L = prov.lifting.values
    alpha = prov.bilinear
    lx, ly = int(L[x]), int(L[y])
    out = G.mul_index(x, lx)
    out = G.mul_index(out, y)
    out = G.mul_index(out, G.inv_index(lx))
    out = G.mul_index(out, ly)
    out = G.mul_index(out, G.inv_index(x))
    out = G.mul_index(out, G.inv_index(ly))
    out = G.mul_index(out, alpha.value(x, y))
    out = G.mul_index(out, alpha.value(y, G.inv_index(x)))
    return out


# -- verification ----------------------------------------------------------


@dataclass
class GroupLawReport:
    operation: str
    ok: bool
    identity_ok: bool
    inverses_ok: bool
    associative: bool
    counterexample: Optional[Tuple[int, int, int]]
    triples_checked: int
    mode: str
    seed: Optional[int]
    expansion_checked: bool = False

    def to_json(self) -> dict:
        return {
            "operation": self.operation,
            "ok": self.ok,
            "identity_ok": self.identity_ok,
            "inverses_ok": self.inverses_ok,
            "associative": self.associative,
            "counterexample": self.counterexample,
            "triples_checked": self.triples_checked,
            "mode": self.mode,
            "seed": self.seed,
            "expansion_checked": self.expansion_checked,
        }


@dataclass
class BraceCheckReport:
    left_operation: str
    right_operation: str
    skew_ok: bool
    biskew_ok: bool
    counterexample: Optional[dict]
    triples_checked: int
    mode: str
    seed: Optional[int]

    @property
    def ok(self) -> bool:
        return self.skew_ok

    def to_json(self) -> dict:
        return {
            "left_operation": self.left_operation,
            "right_operation": self.right_operation,
            "skew_ok": self.skew_ok,
            "biskew_ok": self.biskew_ok,
            "counterexample": self.counterexample,
            "triples_checked": self.triples_checked,
            "mode": self.mode,
            "seed": self.seed,
        }


def _expansion_check(op: GroupOperation, seed: int) -> bool:
    """Both associations of a deformed triple product must equal

    g * L(g) * h * L(h) * k * L(h)^-1 * L(g)^-1
      * alpha(g,h) * alpha(g,k) * alpha(h,k).
    """
    prov = op.provenance
    G = op.base
    n = G.order
    count = min(_EXPANSION_SAMPLES, n**3)
    rng = np.random.default_rng(seed)
    gs, hs, ks = rng.integers(0, n, size=(3, count), dtype=np.int64)
    L = prov.lifting.values
    alpha = prov.bilinear
    e = G.mul_indices(gs, L[gs])
    e = G.mul_indices(e, hs)
    e = G.mul_indices(e, L[hs])
    e = G.mul_indices(e, ks)
    e = G.mul_indices(e, G.inv_indices(L[hs]))
    e = G.mul_indices(e, G.inv_indices(L[gs]))
    e = G.mul_indices(e, alpha.values(gs, hs))
    e = G.mul_indices(e, alpha.values(gs, ks))
    e = G.mul_indices(e, alpha.values(hs, ks))
    left = op.eval_indices(op.eval_indices(gs, hs), ks)
    right = op.eval_indices(gs, op.eval_indices(hs, ks))
    return bool(
        np.array_equal(np.asarray(left), np.asarray(e))
        and np.array_equal(np.asarray(right), np.asarray(e))
    )


def verify_group(
    op: GroupOperation,
    mode: str = "auto",
    seed: Optional[int] = None,
    count: Optional[int] = None,
) -> GroupLawReport:
    """Identity at index 0, two-sided inverses, associativity.

    Associativity runs on the kernel backend: exhaustive for carriers
    whose cube fits the triple limit, seeded uniform sampling above.
    Deformed operations additionally get a sampled normal-form
    expansion cross-check.
    """
    G = op.base
    n = G.order
    idx = np.arange(n, dtype=np.int64)
    identity_ok = bool(
        np.array_equal(np.asarray(op.eval_indices(np.int64(0), idx)), idx)
        and np.array_equal(np.asarray(op.eval_indices(idx, np.int64(0))), idx)
    )
    inv = op.inverse_array() if identity_ok else None
    inverses_ok = bool(
        identity_ok
        and (np.asarray(op.eval_indices(idx, inv)) == 0).all()
        and (np.asarray(op.eval_indices(inv, idx)) == 0).all()
    )
    kind, mseed, mcount = resolve_mode(n, mode, seed, count)
    if kind == "exhaustive" and op.has_dense:
        T = op.table()
        scan = run_exhaustive(n, lambda a, b: _kernels.assoc_violation(T, a, b))
    elif kind == "exhaustive":
        raise BoundExceededError(
            f"exhaustive associativity on order {n} requires a dense table"
        )
    else:
        if op.has_dense:
            T = op.table()
            scan = run_sampled(
                n,
                lambda a, b, c: _kernels.assoc_violation_samples(T, a, b, c),
                mseed,
                mcount,
            )
        else:
            rng = np.random.default_rng(mseed)
            gs, hs, ks = rng.integers(0, n, size=(3, mcount), dtype=np.int64)
            left = np.asarray(op.eval_indices(op.eval_indices(gs, hs), ks))
            right = np.asarray(op.eval_indices(gs, op.eval_indices(hs, ks)))
            bad = left != right
            if bad.any():
                t = int(np.flatnonzero(bad)[0])
                enc = (int(gs[t]) * n + int(hs[t])) * n + int(ks[t])
                scan = ScanResult(enc, t + 1, "sampled", mseed)
            else:
                scan = ScanResult(None, mcount, "sampled", mseed)
    associative = scan.ok
    expansion_checked = False
    if isinstance(op.provenance, DeformedProvenance) and associative:
        expansion_checked = _expansion_check(op, mseed or DEFAULT_SEED)
    ok = identity_ok and inverses_ok and associative and (
        expansion_checked or not isinstance(op.provenance, DeformedProvenance)
    )
    report = GroupLawReport(
        operation=op.label,
        ok=ok,
        identity_ok=identity_ok,
        inverses_ok=inverses_ok,
        associative=associative,
        counterexample=scan.triple(n),
        triples_checked=scan.triples_checked,
        mode=scan.mode,
        seed=scan.seed,
        expansion_checked=expansion_checked,
    )
    op._verified = report
    return report


def ensure_group(op: GroupOperation) -> GroupLawReport:
    if op._verified is None:
        verify_group(op)
    return op._verified


def _skew_scan(
    op_dot: GroupOperation,
    op_circ: GroupOperation,
    kind: str,
    mseed: Optional[int],
    mcount: Optional[int],
) -> ScanResult:
    n = op_dot.base.order
    if kind == "exhaustive":
        if not (op_dot.has_dense and op_circ.has_dense):
            raise BoundExceededError(
                f"exhaustive skew-brace scan on order {n} requires dense tables"
            )
        T1 = op_dot.table()
        T2 = op_circ.table()
        inv1 = np.asarray(op_dot.inverse_array(), dtype=np.int32)
        return run_exhaustive(
            n, lambda a, b: _kernels.skew_violation(T2, T1, inv1, a, b)
        )
    rng = np.random.default_rng(mseed)
    gs, hs, ks = rng.integers(0, n, size=(3, mcount), dtype=np.int64)
    inv1 = op_dot.inverse_array()
    left = np.asarray(op_circ.eval_indices(gs, op_dot.eval_indices(hs, ks)))
    right = np.asarray(
        op_dot.eval_indices(
            op_dot.eval_indices(op_circ.eval_indices(gs, hs), inv1[gs]),
            op_circ.eval_indices(gs, ks),
        )
    )
    bad = left != right
    if bad.any():
        t = int(np.flatnonzero(bad)[0])
        enc = (int(gs[t]) * n + int(hs[t])) * n + int(ks[t])
        return ScanResult(enc, t + 1, "sampled", mseed)
    return ScanResult(None, mcount, "sampled", mseed)


def verify_skew_brace(
    op_dot: GroupOperation,
    op_circ: GroupOperation,
    mode: str = "auto",
    seed: Optional[int] = None,
    count: Optional[int] = None,
    check_biskew: bool = True,
    require_groups: bool = True,
) -> BraceCheckReport:
    """Check g o2 (h o1 k) = (g o2 h) o1 inv1(g) o1 (g o2 k) for all triples.

    op_dot plays the dot role (o1, with its inverse), op_circ the circle
    role (o2); biskew additionally checks the swapped roles. Both
    operations must be verified groups on the same carrier with the
    same identity.
    """
    op_dot._check_same_carrier(op_circ)
    if require_groups:
        for op in (op_dot, op_circ):
            report = ensure_group(op)
            if not report.ok:
                raise NotAGroupError(
                    f"{op.label} is not a group: {report.to_json()}"
                )
    n = op_dot.base.order
    kind, mseed, mcount = resolve_mode(n, mode, seed, count)
    scan1 = _skew_scan(op_dot, op_circ, kind, mseed, mcount)
    counterexample = None
    skew_ok = scan1.ok
    triples = scan1.triples_checked
    if not skew_ok:
        counterexample = {"direction": "forward", "triple": scan1.triple(n)}
    biskew_ok = skew_ok
    if check_biskew and skew_ok:
        scan2 = _skew_scan(op_circ, op_dot, kind, mseed, mcount)
        triples += scan2.triples_checked
        biskew_ok = scan2.ok
        if not biskew_ok:
            counterexample = {"direction": "swapped", "triple": scan2.triple(n)}
    elif not check_biskew:
        biskew_ok = False
    return BraceCheckReport(
        left_operation=op_dot.label,
        right_operation=op_circ.label,
        skew_ok=skew_ok,
        biskew_ok=biskew_ok,
        counterexample=counterexample,
        triples_checked=triples,
        mode=kind,
        seed=mseed,
    )


@dataclass
class BlockReport:
    labels: List[str]
    group_ok: List[bool]
    pairs_checked: int
    triples_checked: int
    failures: List[dict]
    mode: str
    seed: Optional[int]

    @property
    def ok(self) -> bool:
        return all(self.group_ok) and not self.failures

    def to_json(self) -> dict:
        return {
            "operations": self.labels,
            "ok": self.ok,
            "group_ok": self.group_ok,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "failures": self.failures,
            "mode": self.mode,
            "seed": self.seed,
        }


def verify_block(
    ops: Sequence[GroupOperation],
    mode: str = "auto",
    seed: Optional[int] = None,
    count: Optional[int] = None,
) -> BlockReport:
    """Every operation a group, every unordered pair a bi-skew brace."""
    group_ok = [verify_group(op, mode=mode, seed=seed, count=count).ok for op in ops]
    failures: List[dict] = []
    triples = 0
    pairs = 0
    kind, mseed, _ = resolve_mode(ops[0].base.order if ops else 1, mode, seed, count)
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            pairs += 1
            if not (group_ok[i] and group_ok[j]):
                continue
            rep = verify_skew_brace(
                ops[i], ops[j], mode=mode, seed=seed, count=count,
                require_groups=False,
            )
            triples += rep.triples_checked
            if not rep.biskew_ok:
                failures.append(
                    {"pair": [ops[i].label, ops[j].label], **(rep.counterexample or {})}
                )
    return BlockReport(
        labels=[op.label for op in ops],
        group_ok=group_ok,
        pairs_checked=pairs,
        triples_checked=triples,
        failures=failures,
        mode=kind,
        seed=mseed,
    )


# -- iteration and closed form ----------------------------------------------


def iterate_block(
    pair: CentralPair,
    steps: Sequence[Tuple[QuotientEndo, CentralBilinearMap]],
    liftings: Optional[Sequence[Lifting]] = None,
) -> List[GroupOperation]:
    """Literal iteration o_n from o_{n-1}:

    g o_n h = g o_{n-1} L_n(g) o_{n-1} h o_{n-1} inv_{n-1}(L_n(g))
              o_{n-1} alpha_n(g, h)

    with inv_{n-1} the o_{n-1} inverse (found by table search). Returns
    [o_0, ..., o_len(steps)] with o_0 the dot operation.
    """
    G = pair.group
    n = G.order
    if n > OPERATION_TABLE_BOUND:
        raise BoundExceededError("iteration materializes tables; carrier too large")
    ops = [dot_operation(G)]
    T = np.asarray(G.multiplication_table(), dtype=np.int32)
    history: List[Tuple[QuotientEndo, CentralBilinearMap]] = []
    idx = np.arange(n, dtype=np.int64)
    for depth, (endo, alpha) in enumerate(steps, start=1):
        if endo.pair != pair or alpha.pair != pair:
            raise CarrierMismatchError("iteration data spans different pairs")
        lift = (
            liftings[depth - 1]
            if liftings is not None
            else canonical_lifting(endo)
        )
        if lift.endo != endo:
            raise CarrierMismatchError("lifting does not lift the step endomorphism")
        L = lift.values
        inv_prev = np.argmax(T == 0, axis=1).astype(np.int64)
        alpha_t = alpha.dense_table()
        T_next = np.empty_like(T)
        for g in range(n):
            a = T[g, L[g]]
            row = T[a, idx]
            row = T[row, inv_prev[L[g]]]
            T_next[g] = T[row, alpha_t[g]]
        history.append((endo, alpha))
        T = T_next
        ops.append(
            GroupOperation(
                G,
                None,
                IteratedProvenance(pair, depth, tuple(history)),
                label=f"iterated[{depth}]",
                table=T,
            )
        )
    return ops


def accumulated_endo(
    pair: CentralPair, endos: Sequence[QuotientEndo]
) -> QuotientEndo:
    """Accumulated endomorphism of a deformation sequence.

    Empty sequence gives zero (the dot operation); otherwise each step
    folds in as q <- q + psi + q*psi (Jacobson circle).
    """
    acc = QuotientEndo.zero(pair)
    for psi in endos:
        acc = jacobson_circle(acc, psi)
    return acc


def closed_form_sequence(
    pair: CentralPair,
    steps: Sequence[Tuple[QuotientEndo, CentralBilinearMap]],
) -> List[Tuple[QuotientEndo, CentralBilinearMap]]:
    """Accumulated (q_i, beta_i) for i = 0..len(steps); entry 0 is (0, trivial)."""
    q = QuotientEndo.zero(pair)
    beta = trivial_bilinear(pair)
    out = [(q, beta)]
    for endo, alpha in steps:
        beta = bilinear_accumulation_step(
            alpha, beta, canonical_lifting(endo), canonical_lifting(q)
        )
        q = jacobson_circle(q, endo)
        out.append((q, beta))
    return out


def closed_form_operation(
    pair: CentralPair,
    q: QuotientEndo,
    beta: CentralBilinearMap,
    label: Optional[str] = None,
) -> GroupOperation:
    return deformed_operation(pair, q, beta, label=label or "closed-form")


# -- survival of the deforming data under a deformed operation ---------------


def operation_group(op: GroupOperation, label: Optional[str] = None) -> CayleyTableGroup:
    """The carrier regrouped under op, as a validated Cayley-table group."""
    return CayleyTableGroup(op.table(), label=label or f"({op.base.label},{op.label})")


def induced_quotient_table(op: GroupOperation, pair: CentralPair) -> np.ndarray:
    """Quotient operation on K-cosets induced by op (cosets are unchanged:
    central K-translates multiply identically under a deformation)."""
    q = pair.quotient
    tr = q.transversal
    return np.asarray(
        q.projection[
            np.asarray(op.eval_indices(tr[:, None], tr[None, :]), dtype=np.int64)
        ],
        dtype=np.int64,
    )


def endo_survives(candidate, op: GroupOperation) -> Tuple[bool, Optional[tuple]]:
    """Does the deforming datum survive when the carrier is regrouped by op?

    A QuotientEndo survives when it is still an endomorphism of the
    op-induced quotient operation (with image still inside A/K). A raw
    element map (array over G) survives when it respects op itself.
    Returns (ok, witness).
    """
    if isinstance(candidate, QuotientEndo):
        pair = candidate.pair
        Q = induced_quotient_table(op, pair)
        t = candidate.table
        m = t.shape[0]
        idx = np.arange(m, dtype=np.int64)
        lhs = t[Q]
        rhs = Q[t[idx[:, None]], t[idx[None, :]]]
        if np.array_equal(lhs, rhs):
            return True, None
        c1, c2 = np.argwhere(lhs != rhs)[0]
        return False, (int(c1), int(c2))
    emap = np.asarray(candidate, dtype=np.int64)
    n = op.base.order
    idx = np.arange(n, dtype=np.int64)
    for start in range(0, n, 128):
        rows = idx[start : start + 128]
        lhs = emap[np.asarray(op.eval_indices(rows[:, None], idx[None, :]), dtype=np.int64)]
        rhs = np.asarray(op.eval_indices(emap[rows][:, None], emap[idx][None, :]))
        if not np.array_equal(lhs, rhs):
            r, h = np.argwhere(lhs != rhs)[0]
            return False, (int(rows[r]), int(h))
    return True, None
