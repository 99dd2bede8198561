"""Set-theoretic Yang-Baxter maps on finite carriers.

A map r(x, y) = (sigma_x(y), tau_y(x)) is stored as a flat permutation
array over pairs: rmap[x*n + y] = u*n + v when r(x, y) = (u, v). The
braid check, non-degeneracy and involutivity run on that encoding.
Solutions are built either generically from a verified skew brace or
from closed-form deformation data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from ._scan import resolve_mode, run_exhaustive, run_sampled
from .bilinear import CentralBilinearMap, trivial_bilinear
from .errors import (
    BoundExceededError,
    CarrierMismatchError,
    NotABijectionError,
    NotASkewBraceError,
)
from .groups import FiniteGroup
from .operations import GroupOperation, verify_skew_brace
from .quotients import CentralPair, Lifting, QuotientEndo, canonical_lifting

YB_CARRIER_BOUND = 1000


class YBMap:
    """Bijection of the square of a finite carrier, pair-encoded."""

    def __init__(
        self,
        base: FiniteGroup,
        rmap: np.ndarray,
        label: str,
        provenance: Optional[dict] = None,
    ):
        self.base = base
        n = base.order
        rmap = np.ascontiguousarray(np.asarray(rmap, dtype=np.int64).ravel())
        if rmap.shape != (n * n,):
            raise CarrierMismatchError(
                f"pair map has {rmap.shape[0]} entries, carrier square has {n * n}"
            )
        if rmap.min() < 0 or rmap.max() >= n * n:
            raise NotABijectionError("pair map values outside the carrier square")
        self.rmap = rmap
        self.label = label
        self.provenance = provenance or {}

    @property
    def n(self) -> int:
        return self.base.order

    def apply(self, x: int, y: int) -> Tuple[int, int]:
        p = int(self.rmap[x * self.n + y])
        return p // self.n, p % self.n

    def __call__(self, x, y):
        G = self.base
        u, v = self.apply(G.index(x), G.index(y))
        return G.element(u), G.element(v)

    def sigma_table(self) -> np.ndarray:
        """sigma_table[x, y] = sigma_x(y), the first component."""
        return (self.rmap // self.n).reshape(self.n, self.n)

    def tau_table(self) -> np.ndarray:
        """tau_table[x, y] = tau_y(x), the second component."""
        return (self.rmap % self.n).reshape(self.n, self.n)

    def is_bijective(self) -> bool:
        return bool(np.bincount(self.rmap, minlength=self.n**2).max() == 1)

    def is_involutive(self) -> bool:
        return bool(np.array_equal(self.rmap[self.rmap], np.arange(self.n**2)))

    def to_json(self, include_map: bool = True) -> dict:
        data = {"label": self.label, "carrier": self.n, "provenance": self.provenance}
        if include_map:
            data["rmap"] = self.rmap.tolist()
            data["sigma"] = self.sigma_table().tolist()
            data["tau"] = self.tau_table().tolist()
        return data

    def __repr__(self) -> str:
        return f"<YBMap {self.label} on {self.n} points>"


def yb_from_components(
    base: FiniteGroup, first: np.ndarray, second: np.ndarray, label: str, **prov
) -> YBMap:
    n = base.order
    first = np.asarray(first, dtype=np.int64).reshape(n, n)
    second = np.asarray(second, dtype=np.int64).reshape(n, n)
    return YBMap(base, (first * n + second).ravel(), label, prov or None)


@dataclass
class YBReport:
    map_label: str
    bijective: bool
    braid_ok: bool
    nondegenerate: bool
    involutive: bool
    counterexample: Optional[Tuple[int, int, int]]
    triples_checked: int
    mode: str
    seed: Optional[int]

    @property
    def ok(self) -> bool:
        return self.bijective and self.braid_ok and self.nondegenerate

    def to_json(self) -> dict:
        return {
            "map": self.map_label,
            "ok": self.ok,
            "bijective": self.bijective,
            "braid_ok": self.braid_ok,
            "nondegenerate": self.nondegenerate,
            "involutive": self.involutive,
            "counterexample": self.counterexample,
            "triples_checked": self.triples_checked,
            "mode": self.mode,
            "seed": self.seed,
        }


def verify_nondegenerate(ymap: YBMap) -> Tuple[bool, Optional[dict]]:
    """All sigma_x (rows of sigma) and tau_y (columns of tau) bijective."""
    n = ymap.n
    sigma = ymap.sigma_table()
    tau = ymap.tau_table()
    idx = np.arange(n, dtype=np.int64)
    sig_ok = (np.sort(sigma, axis=1) == idx[None, :]).all(axis=1)
    tau_ok = (np.sort(tau, axis=0) == idx[:, None]).all(axis=0)
    if sig_ok.all() and tau_ok.all():
        return True, None
    if not sig_ok.all():
        return False, {"kind": "sigma", "index": int(np.flatnonzero(~sig_ok)[0])}
    return False, {"kind": "tau", "index": int(np.flatnonzero(~tau_ok)[0])}


def verify_yang_baxter(
    ymap: YBMap,
    mode: str = "auto",
    seed: Optional[int] = None,
    count: Optional[int] = None,
) -> YBReport:
    """Braid relation (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)
    over triples, plus bijectivity, non-degeneracy and involutivity."""
    n = ymap.n
    bijective = ymap.is_bijective()
    nondeg, _ = verify_nondegenerate(ymap)
    involutive = bijective and ymap.is_involutive()
    kind, mseed, mcount = resolve_mode(n, mode, seed, count)
    rmap = ymap.rmap
    if kind == "exhaustive":
        scan = run_exhaustive(n, lambda a, b: _kernels.braid_violation(rmap, n, a, b))
    else:
        scan = run_sampled(
            n,
            lambda xs, ys, zs: _kernels.braid_violation_samples(rmap, n, xs, ys, zs),
            mseed,
            mcount,
        )
    return YBReport(
        map_label=ymap.label,
        bijective=bijective,
        braid_ok=scan.ok,
        nondegenerate=nondeg,
        involutive=involutive,
        counterexample=scan.triple(n),
        triples_checked=scan.triples_checked,
        mode=scan.mode,
        seed=scan.seed,
    )


def inverse_pair(r1: YBMap, r2: YBMap) -> bool:
    """r2 o r1 = id = r1 o r2 on the carrier square."""
    if r1.n != r2.n:
        raise CarrierMismatchError("maps live on different carriers")
    ident = np.arange(r1.n ** 2)
    return bool(
        np.array_equal(r2.rmap[r1.rmap], ident)
        and np.array_equal(r1.rmap[r2.rmap], ident)
    )


# -- generic solutions from a skew brace -------------------------------------


def solutions_from_brace(
    op_dot: GroupOperation,
    op_circ: GroupOperation,
    require_brace: bool = True,
    mode: str = "auto",
) -> Tuple[YBMap, YBMap]:
    """The two solutions attached to a skew brace (op_dot, op_circ):

        r(g, h)  = (g^-1 . (g o h),  inv_o(g^-1 . (g o h)) o g o h)
        r'(g, h) = ((g o h) . g^-1,  inv_o((g o h) . g^-1) o g o h)

    with . the dot role, o the circle role and inv_o the circle inverse.
    The maps are mutually inverse, and equal exactly when the dot group
    is abelian.
    """
    n = op_dot.base.order
    if n > YB_CARRIER_BOUND:
        raise BoundExceededError(f"carrier {n} exceeds pair-map bound")
    if require_brace:
        report = verify_skew_brace(op_dot, op_circ, mode=mode)
        if not report.skew_ok:
            raise NotASkewBraceError(
                f"({op_dot.label}, {op_circ.label}) is not a skew brace: "
                f"{report.counterexample}"
            )
    D = np.asarray(op_dot.table(), dtype=np.int64)
    C = np.asarray(op_circ.table(), dtype=np.int64)
    inv_d = op_dot.inverse_array()
    inv_c = op_circ.inverse_array()
    first = D[inv_d[:, None], C]
    second = C[inv_c[first], C]
    r = yb_from_components(
        op_dot.base, first, second, f"r[{op_dot.label},{op_circ.label}]",
        kind="brace", variant="r", checked=require_brace,
    )
    first_p = D[C, inv_d[:, None]]
    second_p = C[inv_c[first_p], C]
    r_prime = yb_from_components(
        op_dot.base, first_p, second_p, f"r'[{op_dot.label},{op_circ.label}]",
        kind="brace", variant="r_prime", checked=require_brace,
    )
    return r, r_prime


def conjugation_solution(G: FiniteGroup) -> YBMap:
    """r(g, h) = (h, h^-1 . g . h): the brace solution when both
    operations are the dot operation."""
    n = G.order
    if n > YB_CARRIER_BOUND:
        raise BoundExceededError(f"carrier {n} exceeds pair-map bound")
    idx = np.arange(n, dtype=np.int64)
    first = np.broadcast_to(idx[None, :], (n, n))
    inv = G.inverse_array
    second = G.mul_indices(G.mul_indices(inv[idx][None, :], idx[:, None]), idx[None, :])
    return yb_from_components(G, first, second, "conjugation", kind="conjugation")


def flip_solution(G: FiniteGroup) -> YBMap:
    """r(g, h) = (h, g); always braids, involutive, non-degenerate."""
    n = G.order
    idx = np.arange(n, dtype=np.int64)
    first = np.broadcast_to(idx[None, :], (n, n))
    second = np.broadcast_to(idx[:, None], (n, n))
    return yb_from_components(G, first, second, "flip", kind="flip")


# -- closed-form solutions from deformation data ------------------------------


def _grids(pair: CentralPair):
    G = pair.group
    n = G.order
    if n > YB_CARRIER_BOUND:
        raise BoundExceededError(f"carrier {n} exceeds pair-map bound")
    X = np.arange(n, dtype=np.int64)[:, None]
    Y = np.arange(n, dtype=np.int64)[None, :]
    return G, X, Y


def _chain(G, start, *factors):
    out = start
    for f in factors:
        out = G.mul_indices(out, f)
    return np.asarray(out, dtype=np.int64)


def deformation_pair_solutions(
    pair: CentralPair,
    psi: QuotientEndo,
    alpha: CentralBilinearMap,
    phi: QuotientEndo,
    beta: CentralBilinearMap,
    lift_psi: Optional[Lifting] = None,
    lift_phi: Optional[Lifting] = None,
) -> Tuple[YBMap, YBMap]:
    """Closed-form solutions for the bi-skew brace of the two deformed
    operations (phi, beta) and (psi, alpha) on the same central pair.

    With Lp(g) the psi-lifting, Lf(g) the phi-lifting and
    u(g) = Lp(g) . Lf(g)^-1:

        r(g, h)  = (u(g) . h . u(g)^-1 . beta(g^-1, h) . alpha(g, h),
                    Lp(h)^-1 . u(g) . h^-1 . u(g)^-1 . g . Lp(g) . h
                      . Lp(g)^-1 . Lp(h) . beta(g, h) . alpha(h^-1, g))
        r'(g, h) = (g . Lp(g) . h . Lp(g)^-1 . Lf(h) . g^-1 . Lf(h)^-1
                      . beta(h, g^-1) . alpha(g, h),
                    w(h) . g . w(h)^-1 . beta(h, g) . alpha(h^-1, g))

    where w(h) = Lf(h) . Lp(h)^-1. Both are lifting-independent.
    """
    G, X, Y = _grids(pair)
    Lp = (lift_psi or canonical_lifting(psi)).values
    Lf = (lift_phi or canonical_lifting(phi)).values
    Lp_inv = np.asarray(G.inv_indices(Lp), dtype=np.int64)
    Lf_inv = np.asarray(G.inv_indices(Lf), dtype=np.int64)
    inv = G.inverse_array
    u = np.asarray(G.mul_indices(Lp, Lf_inv), dtype=np.int64)
    u_inv = np.asarray(G.inv_indices(u), dtype=np.int64)

    c1 = _chain(G, u[X], Y, u_inv[X], beta.values(inv[X], Y), alpha.values(X, Y))
    c2 = _chain(
        G, Lp_inv[Y], u[X], inv[Y], u_inv[X], X, Lp[X], Y, Lp_inv[X], Lp[Y],
        beta.values(X, Y), alpha.values(inv[Y], X),
    )
    r = yb_from_components(
        G, c1, c2, f"r[{phi.describe()},{psi.describe()}]",
        kind="deformation-pair", variant="r",
    )

    w = np.asarray(G.mul_indices(Lf, Lp_inv), dtype=np.int64)
    w_inv = np.asarray(G.inv_indices(w), dtype=np.int64)
    d1 = _chain(
        G, X, Lp[X], Y, Lp_inv[X], Lf[Y], inv[X], Lf_inv[Y],
        beta.values(Y, inv[X]), alpha.values(X, Y),
    )
    d2 = _chain(G, w[Y], X, w_inv[Y], beta.values(Y, X), alpha.values(inv[Y], X))
    r_prime = yb_from_components(
        G, d1, d2, f"r'[{phi.describe()},{psi.describe()}]",
        kind="deformation-pair", variant="r_prime",
    )
    return r, r_prime


def single_deformation_solutions(
    pair: CentralPair,
    psi: QuotientEndo,
    alpha: Optional[CentralBilinearMap] = None,
    lifting: Optional[Lifting] = None,
) -> dict:
    """Four closed-form solutions for the bi-skew brace of the dot
    operation and one deformation; keys r, r_prime, r_tilde,
    r_tilde_prime. The plain maps take the dot operation in the dot
    role; the tilde maps reverse the two roles. Each pair (r, r_prime)
    and (r_tilde, r_tilde_prime) is mutually inverse."""
    alpha = alpha if alpha is not None else trivial_bilinear(pair)
    G, X, Y = _grids(pair)
    L = (lifting or canonical_lifting(psi)).values
    L_inv = np.asarray(G.inv_indices(L), dtype=np.int64)
    inv = G.inverse_array
    tag = psi.describe()

    c1 = _chain(G, L[X], Y, L_inv[X], alpha.values(X, Y))
    c2 = _chain(
        G, L_inv[Y], L[X], inv[Y], L_inv[X], X, L[X], Y, L_inv[X], L[Y],
        alpha.values(inv[Y], X),
    )
    r = yb_from_components(G, c1, c2, f"r[{tag}]", kind="deformation", variant="r")

    d1 = _chain(G, X, L[X], Y, L_inv[X], inv[X], alpha.values(X, Y))
    d2 = _chain(G, L_inv[Y], X, L[Y], alpha.values(inv[Y], X))
    r_prime = yb_from_components(
        G, d1, d2, f"r'[{tag}]", kind="deformation", variant="r_prime"
    )

    e1 = _chain(G, L_inv[X], Y, L[X], alpha.values(inv[X], Y))
    e2 = _chain(G, L_inv[X], inv[Y], L[X], X, Y, alpha.values(X, Y))
    r_tilde = yb_from_components(
        G, e1, e2, f"rt[{tag}]", kind="deformation", variant="r_tilde"
    )

    f1 = _chain(G, X, Y, L[Y], inv[X], L_inv[Y], alpha.values(Y, inv[X]))
    f2 = _chain(G, L[Y], X, L_inv[Y], alpha.values(Y, X))
    r_tilde_prime = yb_from_components(
        G, f1, f2, f"rt'[{tag}]", kind="deformation", variant="r_tilde_prime"
    )
    return {
        "r": r,
        "r_prime": r_prime,
        "r_tilde": r_tilde,
        "r_tilde_prime": r_tilde_prime,
    }
