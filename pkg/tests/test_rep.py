import numpy as np
import pytest

from daha_cc1.core import Params, Tolerance
from daha_cc1.laurent import LaurentPoly
from daha_cc1.rep import (
    DimVector,
    IdealNotInvariantError,
    NotOnStratumError,
    RankIndeterminateError,
    RelationResidualError,
    Rep,
    SignVector,
    apply_T0,
    apply_T0v_bar,
    apply_T1,
    apply_T1v_bar,
    build_quotient_rep,
    build_truncated_polyrep,
    commutant_dim,
    conjugacy_class_dim,
    dim_vector,
    kernel_dims,
    numerical_rank,
    quotient_data,
    rep_from_json,
    rep_to_json,
    rho_ladder,
    rigidity_D,
    spectrum_of_z,
    verify_relations,
)
from daha_cc1.roots import Imaginary, Type1E, Type1F, Type2, root_of_kind
from daha_cc1.strata import sample_stratum_params

Z = LaurentPoly.monomial(1)
ONE = LaurentPoly.one()


def test_constants_are_eigenvectors(generic_params):
    p = generic_params
    assert apply_T0(ONE, 1, p).approx_eq(ONE.scale(p.k0))
    assert apply_T1(ONE, 1, p).approx_eq(ONE.scale(p.k1))
    assert apply_T0v_bar(ONE, 1, p).approx_eq(ONE.scale(p.u0))
    assert apply_T1v_bar(ONE, 1, p).approx_eq(ONE.scale(p.u1))


def test_T1_on_z(generic_params):
    p = generic_params
    expected = LaurentPoly({-1: 1 / p.k1, 0: -(p.u1 - 1 / p.u1)})
    assert apply_T1(Z, 1, p).approx_eq(expected)


def test_operators_satisfy_quadratic_on_polynomials(generic_params):
    p = generic_params
    for op, t in (
        (lambda f: apply_T0(f, 1, p), p.k0),
        (lambda f: apply_T1(f, 1, p), p.k1),
        (lambda f: apply_T0v_bar(f, 1, p), p.u0),
        (lambda f: apply_T1v_bar(f, 1, p), p.u1),
    ):
        for j in range(-3, 4):
            f = LaurentPoly.monomial(j)
            lhs = op(op(f)) - op(f).scale(t - 1 / t)
            assert lhs.approx_eq(f), j


def test_truncated_polyrep_quadratics(generic_params):
    p = generic_params
    for side, pairs in (
        ("P", (("T0", p.k0), ("T1", p.k1))),
        ("Pbar", (("T0v", p.u0), ("T1v", p.u1))),
    ):
        mats = build_truncated_polyrep(side, SignVector(), 5, p)
        assert mats["basis_labels"] == list(range(-5, 6))
        for name, t in pairs:
            M = mats[name]
            eye = np.eye(11)
            res = np.linalg.norm((M - t * eye) @ (M + eye / t), 2)
            assert res < 1e-9 * max(1.0, np.linalg.norm(M, 2) ** 2)


def test_one_dimensional_rep(one_dim_params):
    p = one_dim_params
    r = build_quotient_rep(Type2(1, 1, 1, 1, 0), None, p)
    assert r.dim == 1
    for M, t in zip(r.generators(), (p.k0, p.k1, p.u0, p.u1)):
        assert abs(M[0, 0] - t) < 1e-12
    assert max(verify_relations(r, p).values()) < 1e-12
    assert dim_vector(r, p) == DimVector(1, 0, 0, 0, 0)


def test_type2_level1_rep(rng):
    kind = Type2(1, 1, 1, 1, 1)
    p = sample_stratum_params(kind, rng)
    r = build_quotient_rep(kind, None, p)
    assert r.dim == 3
    assert max(verify_relations(r, p).values()) < 1e-8
    assert dim_vector(r, p).as_tuple() == (3, 1, 1, 1, 1)
    assert commutant_dim(r) == 1
    assert rigidity_D(r.dim, *kernel_dims(r, p)) == 0


@pytest.mark.parametrize(
    "kind",
    [Type1E(0, 1, 2), Type1E(1, -1, 2), Type1F(0, -1, 2), Type1F(1, 1, 2)],
)
def test_one_leg_reps(kind, rng):
    p = sample_stratum_params(kind, rng)
    r = build_quotient_rep(kind, None, p)
    assert dim_vector(r, p).as_tuple() == tuple(root_of_kind(kind))
    assert commutant_dim(r) == 1


def test_spectrum_matches_rho_ladder(rng):
    kind = Type2(1, -1, 1, -1, 2)
    p = sample_stratum_params(kind, rng)
    r = build_quotient_rep(kind, None, p)
    got = spectrum_of_z(r, p)
    expected = rho_ladder(SignVector(*kind.signs), kind.n, p)
    for e in expected:
        assert min(abs(e - g) for g in got) < 1e-6 * max(1.0, abs(e))


def test_spectrum_equals_divisor_roots(rng):
    kind = Type1E(1, 1, 2)
    p = sample_stratum_params(kind, rng)
    _, _, _, _, roots = quotient_data(kind, None, p)
    r = build_quotient_rep(kind, None, p)
    got = spectrum_of_z(r, p)
    for root in roots:
        assert min(abs(root - g) for g in got) < 1e-6 * max(1.0, abs(root))


def test_off_stratum_is_rejected(generic_params):
    with pytest.raises(NotOnStratumError) as exc:
        build_quotient_rep(Type2(1, 1, 1, 1, 1), None, generic_params)
    assert exc.value.failed


def test_forced_construction_fails_loudly(generic_params):
    with pytest.raises((IdealNotInvariantError, RelationResidualError)) as exc:
        build_quotient_rep(Type2(1, 1, 1, 1, 1), None, generic_params, force=True)
    if isinstance(exc.value, IdealNotInvariantError):
        assert exc.value.residual > 1e-4
    else:
        assert max(exc.value.residuals.values()) > 1e-4


def test_imaginary_kind_rejected(generic_params):
    with pytest.raises(ValueError):
        build_quotient_rep(Imaginary(1), None, generic_params)


def test_sign_vector_must_match_kind(rng):
    kind = Type2(1, -1, 1, 1, 0)
    p = sample_stratum_params(kind, rng)
    with pytest.raises(ValueError):
        build_quotient_rep(kind, SignVector(1, 1, 1, 1), p)


def test_numerical_rank_basics():
    assert numerical_rank(np.zeros((3, 3)), 1e-9) == 0
    assert numerical_rank(np.diag([2.0, 1.0, 1e-14]), 1e-9) == 2
    with pytest.raises(RankIndeterminateError):
        numerical_rank(np.diag([1.0, 1e-9]), 1e-9)


def test_rigidity_counts():
    assert rigidity_D(3, 2, 2, 2, 2) == 0
    assert rigidity_D(2, 1, 1, 1, 1) == 2
    assert rigidity_D(1, 0, 0, 0, 0) == 0
    with pytest.raises(ValueError):
        rigidity_D(2, 3, 0, 0, 0)


def test_conjugacy_class_dim():
    assert conjugacy_class_dim(3, 1) == 4
    assert conjugacy_class_dim(5, 0) == 0
    with pytest.raises(ValueError):
        conjugacy_class_dim(2, 3)


def test_commutant_of_direct_sum_is_two():
    # parameters chosen so two different sign vectors solve the 1-dim
    # product equality: u1*k1*k0*u0 = q^{-1/2} holds both with all-plus
    # eigenvalues and after the twist (t0, t1v) -> (-1/k0, -1/u1),
    # because u1*k0 = 1 here
    p = Params(k0=2.0, k1=3.0, u0=1.0 / 6.0, u1=0.5, q_half=2.0)
    r1 = build_quotient_rep(Type2(1, 1, 1, 1, 0), None, p)
    eigs1 = (p.k0, p.k1, p.u0, p.u1)
    eigs2 = (-1 / p.k0, p.k1, p.u0, -1 / p.u1)
    for e0, e1, e0v, e1v in (eigs1, eigs2):
        assert abs(e1v * e1 * e0 * e0v - 1 / p.q_half) < 1e-12
    for M, e in zip(r1.generators(), eigs1):
        assert abs(M[0, 0] - e) < 1e-9
    glued = Rep(
        dim=2,
        T0=np.diag([eigs1[0], eigs2[0]]).astype(complex),
        T1=np.diag([eigs1[1], eigs2[1]]).astype(complex),
        T0v=np.diag([eigs1[2], eigs2[2]]).astype(complex),
        T1v=np.diag([eigs1[3], eigs2[3]]).astype(complex),
        basis_labels=[0, 1],
    )
    assert max(verify_relations(glued, p).values()) < 1e-12
    assert commutant_dim(r1) == 1
    assert commutant_dim(glued) == 2


def test_rep_json_round_trip(rng):
    kind = Type2(-1, 1, -1, 1, 1)
    p = sample_stratum_params(kind, rng)
    r = build_quotient_rep(kind, None, p)
    back = rep_from_json(rep_to_json(r))
    assert back.dim == r.dim
    assert back.basis_labels == r.basis_labels
    for A, B in zip(r.generators(), back.generators()):
        assert np.allclose(A, B)
    assert back.provenance["kind"] == r.provenance["kind"]


def test_rank_guard_on_custom_tolerance(rng):
    # very loose rank tolerance must trip the indeterminacy band, not
    # silently misreport the dimension vector
    kind = Type2(1, 1, 1, 1, 1)
    p = sample_stratum_params(kind, rng)
    r = build_quotient_rep(kind, None, p)
    p_loose = Params(
        k0=p.k0, k1=p.k1, u0=p.u0, u1=p.u1, q_half=p.q_half,
        tol=Tolerance(eq_tol=1e-9, rank_tol=0.5),
    )
    with pytest.raises(RankIndeterminateError):
        dim_vector(r, p_loose)
