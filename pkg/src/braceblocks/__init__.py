"""Brace blocks on finite groups.

Deformations of a group operation by lifted quotient endomorphisms and
central bilinear maps, skew-brace and Yang-Baxter verification, and the
normalising graph of regular subgroups.
"""

from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND


def _selftest_commutator_convention() -> None:
    # The fixed convention [a,b] = a*b*a^-1*b^-1 must make
    # g*g^n*h*g^-n == g*h*[g,h]^n hold literally in class two.
    from .groups import HeisenbergGroup

    G = HeisenbergGroup(2)
    n = G.order
    import numpy as np

    gs = np.arange(n, dtype=np.int64)[:, None]
    hs = np.arange(n, dtype=np.int64)[None, :]
    for p in (1, 2):
        gp = G.power_indices(gs, p)
        lhs = G.mul_indices(
            G.mul_indices(G.mul_indices(gs, gp), hs), G.inv_indices(gp)
        )
        rhs = G.mul_indices(
            G.mul_indices(gs, hs), G.power_indices(G.commutator_indices(gs, hs), p)
        )
        if not np.array_equal(lhs, rhs):
            raise AssertionError("commutator convention self-test failed")


_selftest_commutator_convention()

from .groups import (  # noqa: E402
    CayleyTableGroup,
    FiniteGroup,
    HeisenbergGroup,
    Quotient,
    Subgroup,
    SymmetricGroup,
    UnitriangularGroup,
    cyclic_group,
    group_from_json,
)

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "CayleyTableGroup",
    "FiniteGroup",
    "HeisenbergGroup",
    "Quotient",
    "Subgroup",
    "SymmetricGroup",
    "UnitriangularGroup",
    "cyclic_group",
    "group_from_json",
]
