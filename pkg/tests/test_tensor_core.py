"""Structure-tensor axioms, adapted bases, and the xi / phi derivative formulas."""
import numpy as np
import pytest

from hyperlab import (
    AlmostContactStructure,
    DegenerateSeedError,
    StructuralError,
    TangentSpace,
    build_phi_basis,
    canonical_structure,
    nabla_phi,
    nabla_xi,
    random_structure,
    structure_from_frame,
    validate_acs,
)
from hyperlab.sampling import random_gram


def test_tangent_space_rejects_bad_dimensions():
    for dim in (1, 2, 4, 0, -3):
        with pytest.raises(StructuralError):
            TangentSpace(dim)


def test_tangent_space_rejects_bad_gram():
    bad_sym = np.eye(3)
    bad_sym[0, 1] = 0.5  # not symmetric
    with pytest.raises(StructuralError):
        TangentSpace(3, bad_sym)
    with pytest.raises(StructuralError):
        TangentSpace(3, np.diag([1.0, -1.0, 1.0]))  # not positive definite


def test_inner_and_norm_use_gram():
    space = TangentSpace(3, np.diag([4.0, 1.0, 1.0]))
    e0 = np.array([1.0, 0.0, 0.0])
    assert space.inner(e0, e0) == 4.0
    assert space.norm(e0) == 2.0
    assert space.n == 2


def test_canonical_structure_identities_exact():
    for n in (2, 3, 5):
        res = validate_acs(canonical_structure(n))
        assert set(res) == {"phi-square", "eta-phi", "phi-xi", "eta-xi",
                            "metric-compat", "skew", "eta-from-metric"}
        assert all(v == 0.0 for v in res.values())


def test_canonical_phi_rotates_holomorphic_planes():
    acs = canonical_structure(3)  # dim 5, planes (e0,e2) and (e1,e3)
    e = np.eye(5)
    assert np.array_equal(acs.phi @ e[0], e[2])
    assert np.array_equal(acs.phi @ e[2], -e[0])
    assert np.array_equal(acs.phi @ acs.xi, np.zeros(5))


def test_random_structure_identities(rng):
    for n in (2, 3, 4):
        for use_gram in (False, True):
            gram = random_gram(2 * n - 1, rng) if use_gram else None
            acs = random_structure(n, rng, gram=gram)
            assert max(validate_acs(acs).values()) <= 1e-12


def test_structure_from_frame_rejects_skewed_frame():
    frame = np.eye(5)
    frame[:, 0] *= 2.0
    with pytest.raises(StructuralError):
        structure_from_frame(TangentSpace(5), frame)


def test_validate_reports_broken_phi():
    acs = canonical_structure(2)
    phi = np.array(acs.phi)
    phi[:, 2] = np.array([1.0, 0.0, 0.0])  # phi xi = V1 instead of 0
    broken = AlmostContactStructure(acs.space, phi, acs.xi, acs.eta)
    res = validate_acs(broken)
    assert res["phi-xi"] == 1.0
    assert res["eta-xi"] == 0.0  # untouched identities stay exact


def test_phi_basis_orthonormal_and_adapted(rng):
    for n in (2, 3, 4):
        gram = random_gram(2 * n - 1, rng)
        acs = random_structure(n, rng, gram=gram)
        basis = build_phi_basis(acs, rng=rng)
        assert basis.gram_residual(acs.space) <= 1e-12
        for i in range(n - 1):
            assert np.array_equal(basis.phi_v(i), acs.phi @ basis.v(i))
        for v in basis.ker_eta():
            assert abs(acs.eta_of(v)) <= 1e-12
        assert np.array_equal(basis.xi, acs.xi)
        assert len(basis.vectors) == 2 * n - 1


def test_phi_basis_explicit_seed_is_respected():
    acs = canonical_structure(3)
    seed = np.zeros(5)
    seed[1] = 2.0
    basis = build_phi_basis(acs, seeds=[seed])
    expected = np.zeros(5)
    expected[1] = 1.0
    assert np.allclose(basis.v(0), expected, atol=1e-15)


def test_phi_basis_degenerate_seed_raises():
    acs = canonical_structure(2)
    with pytest.raises(DegenerateSeedError):
        build_phi_basis(acs, seeds=[acs.xi])


def test_phi_basis_standard_sweep_skips_degenerate_candidates():
    # xi is the last standard vector; the sweep must skip it silently.
    acs = canonical_structure(4)
    basis = build_phi_basis(acs)
    assert basis.gram_residual(acs.space) <= 1e-12


def test_phi_pairwise_skewness(rng):
    acs = random_structure(3, rng, gram=random_gram(5, rng))
    for _ in range(200):
        x, y = rng.standard_normal(5), rng.standard_normal(5)
        assert abs(acs.g(acs.phi @ x, y) + acs.g(x, acs.phi @ y)) <= 1e-12


def test_phi_is_isometry_on_ker_eta(rng):
    acs = random_structure(3, rng)
    for _ in range(50):
        x = rng.standard_normal(5)
        x = x - acs.eta_of(x) * acs.xi
        assert abs(acs.norm(acs.phi @ x) - acs.norm(x)) <= 1e-12


def test_nabla_xi_stays_orthogonal_to_xi(rng):
    # g(phi A x, xi) = -g(A x, phi xi) = 0 for any shape operator
    acs = random_structure(3, rng)
    for _ in range(50):
        a = rng.standard_normal((5, 5))
        a = a + a.T
        x = rng.standard_normal(5)
        assert abs(acs.g(nabla_xi(acs, a, x), acs.xi)) <= 1e-12


def test_nabla_xi_formula(rng):
    acs = random_structure(3, rng)
    a = rng.standard_normal((5, 5))
    a = a + a.T
    x = rng.standard_normal(5)
    assert np.allclose(nabla_xi(acs, a, x), acs.phi @ (a @ x), atol=0)


def test_nabla_phi_identity_shape_operator(rng):
    # With A = I the derivative collapses to eta(y) x - g(x, y) xi.
    acs = random_structure(3, rng)
    x, y = rng.standard_normal(5), rng.standard_normal(5)
    got = nabla_phi(acs, np.eye(5), x, y)
    want = acs.eta_of(y) * x - acs.g(x, y) * acs.xi
    assert np.allclose(got, want, atol=1e-14)


def test_nabla_phi_kills_parallel_pairs(rng):
    # g((nabla_x phi)y, y) = 0 whenever eta(y) = 0: the formula is then
    # -g(Ax, y) xi, which is g-orthogonal to y.
    acs = random_structure(3, rng)
    a = rng.standard_normal((5, 5))
    a = a + a.T
    x = rng.standard_normal(5)
    y = rng.standard_normal(5)
    y = y - acs.eta_of(y) * acs.xi
    assert abs(acs.g(nabla_phi(acs, a, x, y), y)) <= 1e-12
