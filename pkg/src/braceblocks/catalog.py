"""Worked example families: ready-made brace blocks on small groups.

Each builder returns a CatalogEntry bundling the central pair, the
deformation data and the resulting operations (the dot operation
first). Builders validate their own hypotheses and raise the matching
domain error when a group falls outside them, e.g. NotClassTwoError
for power blocks on groups of nilpotency class three or more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bilinear import (
    CentralBilinearMap,
    bilinear_from_commutator_power,
    trivial_bilinear,
)
from .errors import InputError, NotAbelianImageError, NotClassTwoError
from .groups import (
    CayleyTableGroup,
    FiniteGroup,
    HeisenbergGroup,
    SymmetricGroup,
    UnitriangularGroup,
)
from .operations import (
    BlockReport,
    GroupOperation,
    accumulated_endo,
    deformed_operation,
    dot_operation,
    verify_block,
)
from .quotients import (
    CentralPair,
    QuotientEndo,
    induced_quotient_endo,
    make_central_pair,
    ring_add,
    ring_neg,
    ring_power,
    scalar_multiple,
    verify_group_endomorphism,
)


@dataclass
class CatalogEntry:
    name: str
    pair: CentralPair
    steps: List[Tuple[QuotientEndo, CentralBilinearMap]]
    operations: List[GroupOperation]
    notes: dict = field(default_factory=dict)

    @property
    def group(self) -> FiniteGroup:
        return self.pair.group

    def verify(
        self,
        mode: str = "auto",
        seed: Optional[int] = None,
        count: Optional[int] = None,
    ) -> BlockReport:
        return verify_block(self.operations, mode=mode, seed=seed, count=count)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "group": self.group.label,
            "order": self.group.order,
            "pair": self.pair.describe(),
            "operations": [op.label for op in self.operations],
            "notes": self.notes,
        }


# -- Heisenberg scalar blocks -------------------------------------------------


def heisenberg_scalar_endo(pair: CentralPair, x: int) -> QuotientEndo:
    """The quotient endomorphism (a, b) -> (xa, xb) of the Heisenberg
    group modulo its centre."""
    G = pair.group
    if not isinstance(G, HeisenbergGroup):
        raise InputError("scalar endomorphisms need a Heisenberg carrier")
    m = G.modulus
    q = pair.quotient
    a, b, c = G.decode(q.transversal)
    img = G.encode((x * a) % m, (x * b) % m, np.zeros_like(c))
    return QuotientEndo(pair, q.projection[img], name=f"scalar{x % m}")


def heisenberg_pair(modulus: int) -> CentralPair:
    G = HeisenbergGroup(modulus)
    return make_central_pair(G, G.centre(), G.whole_subgroup())


def heisenberg_closed_form_table(G: HeisenbergGroup, x: int) -> np.ndarray:
    """g o_x h = g . h . (0, 0, x(a b' - a' b)) computed directly."""
    n = G.order
    idx = np.arange(n, dtype=np.int64)
    a, b, c = G.decode(idx)
    m = G.modulus
    twist = G.encode(
        np.zeros((n, n), dtype=np.int64),
        np.zeros((n, n), dtype=np.int64),
        (x * (a[:, None] * b[None, :] - a[None, :] * b[:, None])) % m,
    )
    return np.asarray(
        G.mul_indices(G.mul_indices(idx[:, None], idx[None, :]), twist),
        dtype=np.int64,
    )


def heisenberg_block(
    modulus: int, xs: Optional[Sequence[int]] = None
) -> CatalogEntry:
    """Deformations of the Heisenberg group by its scalar endomorphisms.

    The default family runs over all residues, giving a block whose
    distinct operations are indexed by x modulo the modulus; x = 0 is
    the dot operation itself.
    """
    pair = heisenberg_pair(modulus)
    G = pair.group
    xs = list(range(modulus)) if xs is None else [x % modulus for x in xs]
    steps = []
    ops = [dot_operation(G)]
    for x in xs:
        if x % modulus == 0:
            continue
        psi = heisenberg_scalar_endo(pair, x)
        steps.append((psi, trivial_bilinear(pair)))
        ops.append(deformed_operation(pair, psi, label=f"scalar[{x % modulus}]"))
    return CatalogEntry(
        name=f"heisenberg{modulus}",
        pair=pair,
        steps=steps,
        operations=ops,
        notes={"modulus": modulus, "xs": xs, "block_size": len(ops)},
    )


def heisenberg_convergence(p: int, k: int) -> CatalogEntry:
    """Deformations of the Heisenberg group modulo p^k by x = p^m.

    The operation for x = p^m coincides with the dot operation exactly
    when m >= k; the notes record the full profile when the carrier is
    small enough to compare cheaply, and the expected threshold always.
    """
    modulus = p**k
    pair = heisenberg_pair(modulus)
    G = pair.group
    steps = []
    ops = [dot_operation(G)]
    for m in range(k + 1):
        x = p**m
        psi = heisenberg_scalar_endo(pair, x)
        steps.append((psi, trivial_bilinear(pair)))
        ops.append(deformed_operation(pair, psi, label=f"scalar[{x}]"))
    return CatalogEntry(
        name=f"heisenberg{p}^{k}-convergence",
        pair=pair,
        steps=steps,
        operations=ops,
        notes={"prime": p, "exponent": k, "converges_at": k, "moduli": [p**m for m in range(k + 1)]},
    )


def convergence_profile(entry: CatalogEntry) -> List[bool]:
    """Whether each operation equals the dot operation (chunked compare)."""
    dot = entry.operations[0]
    return [op.first_difference(dot) is None for op in entry.operations]


# -- class-two blocks ---------------------------------------------------------


def class_two_pair(G: FiniteGroup) -> CentralPair:
    """The pair (G, [G,G], G): requires the derived subgroup central."""
    if not G.is_class_at_most_two():
        raise NotClassTwoError(
            f"{G.label} has nilpotency class above two; "
            "the derived subgroup is not central"
        )
    return make_central_pair(G, G.derived_subgroup(), G.whole_subgroup())


def derived_exponent(pair: CentralPair) -> int:
    G = pair.group
    return max((G.element_order(int(i)) for i in pair.kernel.indices), default=1)


def power_endo(pair: CentralPair, n: int) -> QuotientEndo:
    """gK -> g^n K, an endomorphism because G/K is abelian."""
    Q = pair.quotient.group
    table = np.asarray(
        Q.power_indices(np.arange(Q.order, dtype=np.int64), n), dtype=np.int64
    )
    return QuotientEndo(pair, table, name=f"power{n}")


def class_two_power_block(
    G: FiniteGroup, ns: Optional[Sequence[int]] = None, via: str = "endo"
) -> CatalogEntry:
    """The power block g o_n h = g . h . [g, h]^n on a class-two group.

    via='endo' deforms by the power endomorphism gK -> g^n K with the
    trivial bilinear map; via='bilinear' deforms by the zero
    endomorphism with the commutator-power bilinear map. The two
    constructions produce identical tables.

    The default family runs n = 1..e-1 with e the derived exponent; an
    explicit ns is honored literally, so multiples of e reproduce the
    dot table and exhibit the periodicity of the block.
    """
    pair = class_two_pair(G)
    e = derived_exponent(pair)
    explicit = ns is not None
    ns = list(range(e)) if ns is None else list(ns)
    steps = []
    ops = [dot_operation(G)]
    for n in ns:
        if not explicit and n % e == 0:
            continue
        if via == "endo":
            psi = power_endo(pair, n)
            alpha = trivial_bilinear(pair)
        elif via == "bilinear":
            psi = QuotientEndo.zero(pair)
            alpha = bilinear_from_commutator_power(pair, n)
        else:
            raise InputError(f"unknown construction {via!r}")
        steps.append((psi, alpha))
        ops.append(deformed_operation(pair, psi, alpha, label=f"power[{n}]"))
    return CatalogEntry(
        name=f"power-block[{G.label}]",
        pair=pair,
        steps=steps,
        operations=ops,
        notes={"derived_exponent": e, "ns": ns, "via": via},
    )


def class_two_endo_block(
    G: FiniteGroup, element_maps: Sequence[np.ndarray]
) -> CatalogEntry:
    """Deformations of a class-two group by full endomorphisms, pushed
    to the quotient modulo the derived subgroup."""
    pair = class_two_pair(G)
    steps = []
    ops = [dot_operation(G)]
    for i, emap in enumerate(element_maps):
        endo, lift = induced_quotient_endo(pair, np.asarray(emap, dtype=np.int64))
        steps.append((endo, trivial_bilinear(pair)))
        ops.append(
            deformed_operation(
                pair, endo, lifting=lift, label=f"endo[{endo.describe()}]"
            )
        )
    return CatalogEntry(
        name=f"endo-block[{G.label}]",
        pair=pair,
        steps=steps,
        operations=ops,
        notes={"endomorphisms": len(element_maps)},
    )


# -- abelian-image blocks -----------------------------------------------------


def abelian_map_pair(G: FiniteGroup, element_map: np.ndarray) -> CentralPair:
    """Pair (G, 1, A) for an endomorphism with abelian image A."""
    emap = np.asarray(element_map, dtype=np.int64)
    if not verify_group_endomorphism(G, emap):
        raise InputError("map does not respect the group product")
    A = G.generated_subgroup_from_indices(np.unique(emap))
    if not A.is_abelian():
        raise NotAbelianImageError("the image does not generate an abelian subgroup")
    return make_central_pair(G, G.trivial_subgroup(), A)


def abelian_map_block(
    G: FiniteGroup,
    element_map: np.ndarray,
    steps: int = 3,
    variant: str = "negated",
) -> CatalogEntry:
    """Iterated deformations by a single abelian-image endomorphism.

    With psi the endomorphism and s = -psi (variant 'negated') or
    s = psi (variant 'direct'), the depth-n operation deforms by the
    accumulated endomorphism q_n = sum_i C(n, i) s^i; the kernel is
    trivial, so every bilinear map is trivial and liftings are unique.
    """
    if variant not in ("negated", "direct"):
        raise InputError(f"unknown variant {variant!r}")
    pair = abelian_map_pair(G, element_map)
    emap = np.asarray(element_map, dtype=np.int64)
    psi = QuotientEndo(
        pair, pair.quotient.projection[emap[pair.quotient.transversal]], name="psi"
    )
    s = ring_neg(psi) if variant == "negated" else psi
    step_list = []
    ops = [dot_operation(G)]
    for n in range(1, steps + 1):
        step_list.append((s, trivial_bilinear(pair)))
        q = accumulated_endo(pair, [s] * n)
        ops.append(deformed_operation(pair, q, label=f"{variant}[{n}]"))
    return CatalogEntry(
        name=f"abelian-map[{G.label},{variant}]",
        pair=pair,
        steps=step_list,
        operations=ops,
        notes={"variant": variant, "depth": steps},
    )


def binomial_endo(
    pair: CentralPair, psi: QuotientEndo, n: int, variant: str = "negated"
) -> QuotientEndo:
    """sum_{i=1..n} C(n, i) s^i with s = +-psi; the closed form of the
    depth-n accumulated endomorphism of an abelian-image map."""
    s = ring_neg(psi) if variant == "negated" else psi
    acc = QuotientEndo.zero(pair)
    for i in range(1, n + 1):
        acc = ring_add(acc, scalar_multiple(ring_power(s, i), comb(n, i)))
    return acc


# -- concrete carriers --------------------------------------------------------


def semidirect_c9_c3() -> CayleyTableGroup:
    """The split extension of order 27 and exponent 9:
    (i, j) . (i', j') = (i + i' 4^j mod 9, j + j' mod 3)."""
    pairs = [(i, j) for i in range(9) for j in range(3)]
    index = {t: k for k, t in enumerate(pairs)}
    table = np.empty((27, 27), dtype=np.int64)
    for g, (i, j) in enumerate(pairs):
        for h, (i2, j2) in enumerate(pairs):
            table[g, h] = index[((i + i2 * pow(4, j, 9)) % 9, (j + j2) % 3)]
    return CayleyTableGroup(table, elements=pairs, label="c9:c3")


def semidirect_c9_c3_cube_map() -> np.ndarray:
    """(i, j) -> (3i mod 9, 0): the abelian-image endomorphism of c9:c3."""
    G = semidirect_c9_c3()
    return np.asarray(
        [G.index(((3 * i) % 9, 0)) for (i, j) in G.elements], dtype=np.int64
    )


def symmetric4_sign_map() -> np.ndarray:
    """g -> t^sgn(g) in the symmetric group on 4 symbols, with t the
    transposition of the first two; an endomorphism with image of
    order two."""
    G = SymmetricGroup(4)
    t = G.index((1, 0, 2, 3))
    out = np.empty(G.order, dtype=np.int64)
    for k, perm in enumerate(G.elements):
        inversions = sum(
            perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4)
        )
        out[k] = t if inversions % 2 else 0
    return out


def trivial_block(G: FiniteGroup) -> CatalogEntry:
    """The zero deformation on the trivial central pair of any group.

    The deformed operation collapses to the original one, so the entry
    mainly serves as a baseline: its derived maps are the conjugation
    solution (the flip when G is abelian)."""
    K = G.trivial_subgroup()
    pair = make_central_pair(G, K, K)
    psi = QuotientEndo.zero(pair)
    alpha = trivial_bilinear(pair)
    return CatalogEntry(
        name=f"trivial-{G.label}",
        pair=pair,
        steps=[(psi, alpha)],
        operations=[dot_operation(G), deformed_operation(pair, psi, alpha)],
        notes={"trivial": True},
    )


# -- registry -----------------------------------------------------------------


BUILTIN_CATALOG: Dict[str, Callable[[], CatalogEntry]] = {
    "heisenberg3": lambda: heisenberg_block(3),
    "heisenberg4": lambda: heisenberg_block(4),
    "heisenberg5": lambda: heisenberg_block(5),
    "heisenberg9-convergence": lambda: heisenberg_convergence(3, 2),
    "heisenberg27-convergence": lambda: heisenberg_convergence(3, 3),
    "ut33-power": lambda: class_two_power_block(UnitriangularGroup(3, 3)),
    "ut43-power": lambda: class_two_power_block(UnitriangularGroup(4, 3)),
    "c9xc3-abelian": lambda: abelian_map_block(
        semidirect_c9_c3(), semidirect_c9_c3_cube_map(), steps=3
    ),
    "sym4-abelian": lambda: abelian_map_block(
        SymmetricGroup(4), symmetric4_sign_map(), steps=3
    ),
}

CATALOG_INFO: Dict[str, str] = {
    "heisenberg3": "scalar deformations of the Heisenberg group mod 3 (order 27)",
    "heisenberg4": "scalar deformations of the Heisenberg group mod 4 (order 64)",
    "heisenberg5": "scalar deformations of the Heisenberg group mod 5 (order 125)",
    "heisenberg9-convergence": "powers of 3 deforming the Heisenberg group mod 9",
    "heisenberg27-convergence": (
        "powers of 3 deforming the Heisenberg group mod 27 (order 19683, sampled)"
    ),
    "ut33-power": "power block of the unitriangular 3x3 group mod 3 (class two)",
    "ut43-power": (
        "power block of the unitriangular 4x4 group mod 3; "
        "fails: the group has class three"
    ),
    "c9xc3-abelian": "cube-map deformations of the order-27 split extension",
    "sym4-abelian": "sign-map deformations of the symmetric group on 4 symbols",
}


def build_entry(name: str) -> CatalogEntry:
    if name not in BUILTIN_CATALOG:
        raise InputError(
            f"unknown catalog entry {name!r}; known: {', '.join(sorted(BUILTIN_CATALOG))}"
        )
    entry = BUILTIN_CATALOG[name]()
    # reports should echo the key the entry was requested under
    entry.name = name
    return entry
