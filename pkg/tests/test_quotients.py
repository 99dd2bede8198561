"""Quotient endomorphism ring: axioms, liftings, enumeration, JSON."""

import numpy as np
import pytest

from braceblocks.catalog import derived_exponent, semidirect_c9_c3
from braceblocks.errors import (
    BoundExceededError,
    DeltaEscapesKError,
    KNotInAError,
    NoUnityError,
    NotAHomomorphismError,
    PairMismatchError,
    QuotientNotAbelianError,
    ValidationFailedError,
)
from braceblocks.groups import (
    CayleyTableGroup,
    HeisenbergGroup,
    cyclic_group,
)
from braceblocks.quotients import (
    Lifting,
    QuotientEndo,
    canonical_lifting,
    endo_from_generator_images,
    endo_from_json,
    enumerate_endomorphisms,
    has_unity,
    jacobson_circle,
    make_central_pair,
    pair_on_whole_group,
    perturb_lifting,
    induced_quotient_endo,
    ring_mul,
    ring_power,
    scalar_multiple,
)


SEED = 1729


@pytest.fixture(scope="module")
def endos(h3_pair):
    return enumerate_endomorphisms(h3_pair)


# -- pair construction -------------------------------------------------


def test_heisenberg_pair_shape(h3_pair):
    d = h3_pair.describe()
    assert d["kernel_order"] == 3
    assert d["image_bound_order"] == 27
    assert d["quotient_order"] == 9
    assert has_unity(h3_pair)


def test_pair_on_whole_group(h3):
    pair = pair_on_whole_group(h3, h3.centre())
    assert pair == make_central_pair(h3, h3.centre(), h3.whole_subgroup())


def test_pair_validation_errors(h3, s3):
    with pytest.raises(PairMismatchError):
        make_central_pair(h3, s3.centre(), h3.whole_subgroup())
    with pytest.raises(KNotInAError):
        make_central_pair(h3, h3.centre(), h3.trivial_subgroup())
    with pytest.raises(QuotientNotAbelianError):
        make_central_pair(s3, s3.trivial_subgroup(), s3.whole_subgroup())


# -- enumeration -------------------------------------------------------


def test_endo_count_matches_matrix_ring(endos):
    # G/K = C3 x C3, so its endomorphisms are the 2x2 matrices over F3
    assert len(endos) == 81
    tables = {e.table.tobytes() for e in endos}
    assert len(tables) == 81


def test_zero_and_one_are_enumerated(h3_pair, endos):
    tables = {e.table.tobytes() for e in endos}
    assert QuotientEndo.zero(h3_pair).table.tobytes() in tables
    assert QuotientEndo.one(h3_pair).table.tobytes() in tables


def test_central_image_bound_cuts_enumeration(h3):
    z = h3.centre()
    pair = make_central_pair(h3, z, z)
    assert not has_unity(pair)
    only = enumerate_endomorphisms(pair)
    assert len(only) == 1 and only[0].is_zero
    with pytest.raises(NoUnityError):
        QuotientEndo.one(pair)


def test_enumeration_bound():
    G = cyclic_group(81)
    pair = pair_on_whole_group(G, G.trivial_subgroup())
    with pytest.raises(BoundExceededError):
        enumerate_endomorphisms(pair)


# -- ring axioms on sampled triples ------------------------------------


def test_ring_axioms(h3_pair, endos):
    rng = np.random.default_rng(SEED)
    zero = QuotientEndo.zero(h3_pair)
    one = QuotientEndo.one(h3_pair)
    for i, j, k in rng.integers(0, len(endos), size=(25, 3)):
        f, g, h = endos[i], endos[j], endos[k]
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert f + zero == f
        assert f + (-f) == zero
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h
        assert one * f == f and f * one == f
        assert f - g == f + (-g)


def test_ring_mul_applies_right_factor_first(h3_pair):
    # f * g acts as g then f, i.e. the table of f*g is f.table[g.table]
    f = endo_from_generator_images(
        h3_pair, {(1, 0, 0): (0, 1, 0), (0, 1, 0): (0, 0, 0)}, name="f"
    )
    g = endo_from_generator_images(
        h3_pair, {(1, 0, 0): (1, 0, 0), (0, 1, 0): (0, 0, 0)}, name="g"
    )
    assert np.array_equal(ring_mul(f, g).table, f.table[g.table])
    assert ring_mul(f, g) != ring_mul(g, f)


def test_scalar_multiple_and_power(h3_pair, endos):
    f = endos[17]
    assert scalar_multiple(f, 3) == QuotientEndo.zero(h3_pair)
    assert scalar_multiple(f, 2) == f + f
    with pytest.raises(ValueError):
        ring_power(f, 0)
    assert ring_power(f, 1) == f
    assert ring_power(f, 2) == f * f
    assert ring_power(f, 3) == f * f * f


def test_jacobson_circle(h3_pair, endos):
    rng = np.random.default_rng(SEED)
    zero = QuotientEndo.zero(h3_pair)
    for i, j, k in rng.integers(0, len(endos), size=(25, 3)):
        f, g, h = endos[i], endos[j], endos[k]
        assert jacobson_circle(f, g) == f + g + f * g
        assert jacobson_circle(f, zero) == f
        assert jacobson_circle(zero, f) == f
        assert jacobson_circle(jacobson_circle(f, g), h) == jacobson_circle(
            f, jacobson_circle(g, h)
        )


# -- liftings -----------------------------------------------------------


def test_canonical_lifting_congruence(h3_pair, endos):
    proj = h3_pair.quotient.projection
    for e in endos[::7]:
        L = canonical_lifting(e)
        assert np.array_equal(proj[L.values], e.table[proj])


def test_lifting_values_stay_in_image_bound(h3):
    z = h3.centre()
    pair = make_central_pair(h3, z, h3.generated_subgroup([(1, 0, 0), (0, 0, 1)]))
    for e in enumerate_endomorphisms(pair):
        L = canonical_lifting(e)
        assert pair.image_bound.mask[L.values].all()


def test_lifting_maps_kernel_into_kernel(h3_pair, endos):
    kern = h3_pair.kernel
    rng = np.random.default_rng(SEED)
    delta = rng.choice(kern.indices, size=h3_pair.group.order)
    for e in (endos[5], endos[50]):
        L = perturb_lifting(canonical_lifting(e), delta)
        assert kern.mask[L.values[kern.indices]].all()


def test_perturbed_lifting_keeps_endo(h3_pair, endos):
    e = endos[23]
    L = canonical_lifting(e)
    # dict deltas are keyed and valued by element tokens
    L2 = perturb_lifting(L, {(1, 1, 0): (0, 0, 1), (0, 2, 1): (0, 0, 2)})
    assert L2.endo == e
    assert L2 != L
    proj = h3_pair.quotient.projection
    assert np.array_equal(proj[L2.values], e.table[proj])


def test_delta_escaping_kernel_is_rejected(h3_pair, endos):
    L = canonical_lifting(endos[23])
    with pytest.raises(DeltaEscapesKError):
        perturb_lifting(L, {(1, 1, 0): (1, 0, 0)})


def test_lifting_validation(h3_pair):
    e = QuotientEndo.zero(h3_pair)
    bad = np.arange(h3_pair.group.order, dtype=np.int64)
    with pytest.raises(ValidationFailedError):
        Lifting(e, bad)


# -- induced endomorphisms ---------------------------------------------


def test_inner_automorphism_induces_identity(h3, h3_pair):
    g = h3.index((1, 2, 0))
    emap = np.asarray(h3.conjugation_row(g), dtype=np.int64)
    e, L = induced_quotient_endo(h3_pair, emap, name="inner")
    assert e == QuotientEndo.one(h3_pair)
    assert np.array_equal(L.values, emap)


def test_constant_identity_map_induces_zero(h3, h3_pair):
    emap = np.zeros(h3.order, dtype=np.int64)
    e, _ = induced_quotient_endo(h3_pair, emap)
    assert e.is_zero


def test_map_not_constant_on_cosets_rejected(h3, h3_pair):
    emap = np.zeros(h3.order, dtype=np.int64)
    emap[h3.index((0, 0, 1))] = h3.index((1, 0, 0))
    with pytest.raises(ValidationFailedError):
        induced_quotient_endo(h3_pair, emap)


# -- generator images ---------------------------------------------------


def test_generator_images_define_swap(h3_pair):
    swap = endo_from_generator_images(
        h3_pair, {(1, 0, 0): (0, 1, 0), (0, 1, 0): (1, 0, 0)}
    )
    assert ring_mul(swap, swap) == QuotientEndo.one(h3_pair)


def test_conflicting_images_rejected(h3_pair):
    with pytest.raises(NotAHomomorphismError):
        endo_from_generator_images(
            h3_pair,
            {(1, 0, 0): (0, 0, 0), (0, 1, 0): (0, 0, 0), (1, 1, 0): (1, 0, 0)},
        )


def test_non_generating_keys_rejected(h3_pair):
    with pytest.raises(NotAHomomorphismError):
        endo_from_generator_images(h3_pair, {(1, 0, 0): (1, 0, 0)})


def test_order_obstruction_rejected():
    # C9 x C3; an order-3 generator cannot land on an order-9 element
    elements = [(i, j) for i in range(9) for j in range(3)]
    pos = {e: n for n, e in enumerate(elements)}
    table = np.asarray(
        [
            [pos[((a + c) % 9, (b + d) % 3)] for (c, d) in elements]
            for (a, b) in elements
        ],
        dtype=np.int32,
    )
    G = CayleyTableGroup(table, elements=elements, label="c9xc3")
    pair = pair_on_whole_group(G, G.trivial_subgroup())
    with pytest.raises(NotAHomomorphismError):
        endo_from_generator_images(pair, {(0, 1): (1, 0), (1, 0): (0, 0)})


# -- misc ----------------------------------------------------------------


def test_derived_exponent(h3):
    pair = pair_on_whole_group(h3, h3.derived_subgroup())
    assert derived_exponent(pair) == 3


def test_endo_json_round_trip(h3_pair, endos):
    e = endos[40]
    data = e.to_json()
    assert data["coset_table"] == e.table.tolist()
    back = endo_from_json(h3_pair, data)
    assert back == e


def test_endo_json_rejects_non_homomorphism(h3_pair):
    rng = np.random.default_rng(SEED)
    table = rng.integers(0, 9, size=9).tolist()
    table[0] = 5
    with pytest.raises(NotAHomomorphismError):
        endo_from_json(h3_pair, {"coset_table": table})
    with pytest.raises(ValidationFailedError):
        endo_from_json(h3_pair, {"table": [0] * 9})


def test_cross_pair_arithmetic_rejected(h3, h3_pair):
    other = pair_on_whole_group(h3, h3.centre())
    assert other == h3_pair
    G2 = HeisenbergGroup(5)
    pair2 = pair_on_whole_group(G2, G2.centre())
    with pytest.raises(PairMismatchError):
        ring_mul(QuotientEndo.zero(h3_pair), QuotientEndo.zero(pair2))
