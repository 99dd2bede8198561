"""Set-theoretic braid solutions: generic brace maps, closed forms,
verification and witnesses."""

import numpy as np
import pytest

from braceblocks.bilinear import (
    bilinear_from_callable,
    bilinear_from_commutator_power,
    trivial_bilinear,
)
from braceblocks.catalog import heisenberg_scalar_endo
from braceblocks.errors import (
    BoundExceededError,
    CarrierMismatchError,
    NotABijectionError,
    NotASkewBraceError,
)
from braceblocks.groups import CayleyTableGroup, SymmetricGroup, cyclic_group
from braceblocks.operations import (
    GroupOperation,
    TransportedProvenance,
    deformed_operation,
    dot_operation,
)
from braceblocks.quotients import (
    QuotientEndo,
    make_central_pair,
    pair_on_whole_group,
)
from braceblocks.yang_baxter import (
    YBMap,
    conjugation_solution,
    deformation_pair_solutions,
    flip_solution,
    inverse_pair,
    single_deformation_solutions,
    solutions_from_brace,
    verify_nondegenerate,
    verify_yang_baxter,
)


SEED = 1729


def braid_sides(ymap, x, y, z):
    """Both sides of the braid relation on one triple, by composition."""

    def r12(a, b, c):
        u, v = ymap.apply(a, b)
        return u, v, c

    def r23(a, b, c):
        u, v = ymap.apply(b, c)
        return a, u, v

    return r12(*r23(*r12(x, y, z))), r23(*r12(*r23(x, y, z)))


@pytest.fixture(scope="module")
def h3_solutions(h3_pair):
    psi = heisenberg_scalar_endo(h3_pair, 1)
    alpha = bilinear_from_commutator_power(h3_pair, 1)
    return h3_pair, psi, alpha, single_deformation_solutions(h3_pair, psi, alpha)


# -- basic solutions -----------------------------------------------------


def test_flip_solution(s3):
    r = flip_solution(s3)
    rep = verify_yang_baxter(r)
    assert rep.ok and rep.braid_ok and rep.nondegenerate and rep.involutive
    assert inverse_pair(r, r)


def test_conjugation_solution(s3, c6):
    r = conjugation_solution(s3)
    rep = verify_yang_baxter(r)
    assert rep.ok and rep.braid_ok and rep.nondegenerate
    assert not rep.involutive
    # on an abelian carrier conjugation degenerates to the flip
    assert np.array_equal(
        conjugation_solution(c6).rmap, flip_solution(c6).rmap
    )


def test_dot_dot_brace_gives_conjugation(s3):
    dot = dot_operation(s3)
    r, r_prime = solutions_from_brace(dot, dot)
    assert np.array_equal(r.rmap, conjugation_solution(s3).rmap)
    assert inverse_pair(r, r_prime)


def test_identity_map_is_degenerate(c6):
    ident = YBMap(c6, np.arange(36), "identity")
    rep = verify_yang_baxter(ident)
    assert rep.braid_ok and not rep.nondegenerate
    ok, witness = verify_nondegenerate(ident)
    assert not ok and witness["kind"] == "sigma"


def test_random_bijection_fails_with_witness():
    G = cyclic_group(4)
    rng = np.random.default_rng(SEED)
    ymap = YBMap(G, rng.permutation(16), "random")
    rep = verify_yang_baxter(ymap)
    assert not rep.braid_ok
    x, y, z = rep.counterexample
    lhs, rhs = braid_sides(ymap, x, y, z)
    assert lhs != rhs


def test_non_bijection_rejected(c6):
    with pytest.raises(NotABijectionError):
        YBMap(c6, np.arange(36) + 1, "shifted")
    constant = YBMap(c6, np.full(36, 7), "constant")
    assert not constant.is_bijective()
    assert not verify_yang_baxter(constant).bijective


def test_carrier_shape_checks(c6):
    with pytest.raises(CarrierMismatchError):
        YBMap(c6, np.arange(16), "short")
    with pytest.raises(CarrierMismatchError):
        inverse_pair(flip_solution(c6), flip_solution(cyclic_group(5)))


def test_carrier_bound():
    with pytest.raises(BoundExceededError):
        conjugation_solution(cyclic_group(1001))


# -- brace solutions on the Heisenberg block ------------------------------


def test_deformation_solutions_braid(h3, h3_solutions):
    pair, psi, alpha, four = h3_solutions
    for name, ymap in four.items():
        rep = verify_yang_baxter(ymap)
        assert rep.ok and rep.braid_ok and rep.nondegenerate, name
        assert rep.triples_checked == 27**3
    assert inverse_pair(four["r"], four["r_prime"])
    assert inverse_pair(four["r_tilde"], four["r_tilde_prime"])
    # dot is nonabelian, so the two plain solutions differ
    assert not np.array_equal(four["r"].rmap, four["r_prime"].rmap)
    assert not four["r"].is_involutive()


def test_closed_form_equals_generic_brace_maps(h3, h3_solutions):
    pair, psi, alpha, four = h3_solutions
    dot = dot_operation(h3)
    circ = deformed_operation(pair, psi, alpha)
    r, r_prime = solutions_from_brace(dot, circ)
    assert np.array_equal(four["r"].rmap, r.rmap)
    assert np.array_equal(four["r_prime"].rmap, r_prime.rmap)


def test_tilde_maps_are_role_reversed(h3, h3_solutions):
    pair, psi, alpha, four = h3_solutions
    dot = dot_operation(h3)
    circ = deformed_operation(pair, psi, alpha)
    rt, rtp = solutions_from_brace(circ, dot)
    assert np.array_equal(four["r_tilde"].rmap, rt.rmap)
    assert np.array_equal(four["r_tilde_prime"].rmap, rtp.rmap)


def test_pair_formulas_reduce_to_single_deformation(h3_solutions):
    pair, psi, alpha, four = h3_solutions
    r, r_prime = deformation_pair_solutions(
        pair, psi, alpha, QuotientEndo.zero(pair), trivial_bilinear(pair)
    )
    assert np.array_equal(r.rmap, four["r"].rmap)
    assert np.array_equal(r_prime.rmap, four["r_prime"].rmap)


def test_pair_formulas_for_two_deformations(h3_pair):
    psi = heisenberg_scalar_endo(h3_pair, 1)
    phi = heisenberg_scalar_endo(h3_pair, 2)
    alpha = bilinear_from_commutator_power(h3_pair, 1)
    beta = bilinear_from_commutator_power(h3_pair, 2)
    r, r_prime = deformation_pair_solutions(h3_pair, psi, alpha, phi, beta)
    op_phi = deformed_operation(h3_pair, phi, beta)
    op_psi = deformed_operation(h3_pair, psi, alpha)
    gr, grp = solutions_from_brace(op_phi, op_psi)
    assert np.array_equal(r.rmap, gr.rmap)
    assert np.array_equal(r_prime.rmap, grp.rmap)
    assert verify_yang_baxter(r).ok
    assert inverse_pair(r, r_prime)


def test_non_brace_pair_is_rejected():
    t1 = ((np.arange(4)[:, None] + np.arange(4)[None, :]) % 4).astype(np.int32)
    s = np.array([0, 2, 1, 3])
    t2 = np.argsort(s)[t1[s[:, None], s[None, :]]].astype(np.int32)
    G = CayleyTableGroup(t1, label="c4a")
    op2 = GroupOperation(G, None, TransportedProvenance("relabeled"), "c4b", table=t2)
    with pytest.raises(NotASkewBraceError):
        solutions_from_brace(dot_operation(G), op2)
    r, _ = solutions_from_brace(dot_operation(G), op2, require_brace=False)
    assert not verify_yang_baxter(r).braid_ok


# -- abelian control -------------------------------------------------------


def abelian_bicharacter_brace():
    els = [(a, b) for a in range(3) for b in range(3)]
    pos = {e: i for i, e in enumerate(els)}
    tab = np.asarray(
        [[pos[((a + c) % 3, (b + d) % 3)] for (c, d) in els] for (a, b) in els],
        dtype=np.int32,
    )
    A = CayleyTableGroup(tab, elements=els, label="c3xc3")
    pair = make_central_pair(
        A, A.subgroup([(a, 0) for a in range(3)]), A.whole_subgroup()
    )
    bvals = np.asarray([b for (_, b) in els], dtype=np.int64)
    kidx = np.asarray([pos[(a, 0)] for a in range(3)], dtype=np.int64)
    alpha = bilinear_from_callable(
        pair, lambda i, j: kidx[(bvals[i] * bvals[j]) % 3], name="bchar"
    )
    circ = deformed_operation(pair, QuotientEndo.zero(pair), alpha)
    return A, pair, circ


def test_solutions_coincide_exactly_on_abelian_carrier():
    A, pair, circ = abelian_bicharacter_brace()
    dot = dot_operation(A)
    # the deformation is not the dot operation itself
    assert circ.first_difference(dot) is not None
    r, r_prime = solutions_from_brace(dot, circ)
    assert np.array_equal(r.rmap, r_prime.rmap)
    rep = verify_yang_baxter(r)
    assert rep.ok and rep.nondegenerate and rep.involutive
    assert not np.array_equal(r.rmap, flip_solution(A).rmap)


# -- encoding and reports ---------------------------------------------------


def test_sigma_tau_encoding(h3_solutions):
    _, _, _, four = h3_solutions
    r = four["r"]
    n = r.n
    sigma, tau = r.sigma_table(), r.tau_table()
    assert np.array_equal(r.rmap.reshape(n, n), sigma * n + tau)
    x, y = 5, 19
    assert r.apply(x, y) == (int(sigma[x, y]), int(tau[x, y]))


def test_token_application(s3):
    r = flip_solution(s3)
    a, b = s3.element(1), s3.element(4)
    assert r(a, b) == (b, a)


def test_yb_json(h3_solutions):
    _, _, _, four = h3_solutions
    data = four["r"].to_json()
    assert data["carrier"] == 27
    assert data["rmap"] == four["r"].rmap.tolist()
    assert data["sigma"] == four["r"].sigma_table().tolist()
    assert data["tau"] == four["r"].tau_table().tolist()
    slim = four["r"].to_json(include_map=False)
    assert "rmap" not in slim and "sigma" not in slim


def test_report_modes(s3):
    r = conjugation_solution(s3)
    rep = verify_yang_baxter(r, mode="sampled:42:800")
    assert rep.ok and rep.mode == "sampled" and rep.seed == 42
    assert rep.triples_checked == 800
    data = rep.to_json()
    assert data["braid_ok"] and data["mode"] == "sampled"
