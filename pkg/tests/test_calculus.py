"""Banach-algebra exponentials, growth of ||exp(i lambda f)||, and the
smoothed functional calculus.

Oracles: Jacobi-Anger gives the coefficients of exp(i lambda (d_1+d_-1))
on the dual of Z as i^n J_n(2 lambda); eigendecomposition provides the
spectral calculus reference for the representation identity.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.special import jv

from qgrowth.calculus import (
    BumpFunction,
    CoefficientAlgebra,
    GroupAlgebra,
    IdentityWindow,
    LatticeAlgebra,
    PlateauWindow,
    algebra_for_ring,
    banach_exp,
    calculus_representation_check,
    element_growth_exponent,
    functional_calculus,
    matrix_function,
)
from qgrowth.errors import QGrowthError, TruncationCapError
from qgrowth.fourier import s3_model
from qgrowth.fourier.elements import (
    l1_norm,
    random_self_adjoint,
    values_on_group,
)
from qgrowth.fourier.representations import regular_representation
from qgrowth.rings.registry import load_ring

S3 = s3_model()


def bessel_l1(lam: float) -> float:
    n_max = int(2 * lam) + 80
    return float(sum(abs(jv(n, 2 * lam)) for n in range(-n_max, n_max + 1)))


@pytest.fixture(scope="module")
def z_algebra():
    return LatticeAlgebra(1)


@pytest.fixture(scope="module")
def hop(z_algebra):
    return z_algebra.from_dict({(1,): 1.0, (-1,): 1.0})


# ---------------------------------------------------------------------------
# the exponential

def test_exp_of_zero_is_unit(z_algebra):
    zero = z_algebra.from_dict({})
    el, trunc = banach_exp(z_algebra, zero, 5.0, 1e-12)
    assert trunc.order == 0
    assert trunc.tail == 0.0
    assert z_algebra.norm(z_algebra.add(el, z_algebra.scale(-1, z_algebra.unit()))) == 0.0


def test_exp_blocks_are_bessel_coefficients(z_algebra, hop):
    for lam in (1.5, 8.0, 40.0):
        el, trunc = banach_exp(z_algebra, hop, lam, 1e-8, best_effort=True)
        for n in range(-6, 7):
            expected = (1j) ** n * jv(n, 2 * lam)
            assert abs(el.point((n,)) - expected) < 1e-10
        assert abs(z_algebra.norm(el) - bessel_l1(lam)) < 1e-9


def test_exp_norm_below_exponential_bound(z_algebra, hop):
    for lam in (0.5, 3.0, 12.0):
        el, _ = banach_exp(z_algebra, hop, lam, 1e-10, best_effort=True)
        assert z_algebra.norm(el) <= math.exp(lam * z_algebra.norm(hop)) + 1e-9


def test_exp_one_parameter_group(z_algebra, hop):
    e1, t1 = banach_exp(z_algebra, hop, 3.0, 1e-10)
    e2, t2 = banach_exp(z_algebra, hop, 4.5, 1e-10)
    e3, t3 = banach_exp(z_algebra, hop, 7.5, 1e-10)
    prod, defect = z_algebra.mul(e1, e2)
    diff = z_algebra.norm(z_algebra.add(prod, z_algebra.scale(-1.0, e3)))
    assert diff <= t1.tail * 40 + t2.tail * 40 + t3.tail + defect + 1e-9


def test_exp_star_flips_the_sign(z_algebra, hop):
    e_plus, _ = banach_exp(z_algebra, hop, 6.0, 1e-10)
    e_minus, _ = banach_exp(z_algebra, hop, -6.0, 1e-10)
    diff = z_algebra.add(z_algebra.star(e_plus), z_algebra.scale(-1, e_minus))
    assert z_algebra.norm(diff) < 1e-9


def test_exp_term_cap(z_algebra, hop):
    with pytest.raises(TruncationCapError):
        banach_exp(z_algebra, hop, 1e5, 1e-8)


def test_exp_group_algebra_matches_lattice(z_algebra, hop):
    ring = load_ring("heisenberg")
    alg = algebra_for_ring(ring)
    assert isinstance(alg, GroupAlgebra)
    f = alg.from_dict({(1, 0, 0): 1.0, (-1, 0, 0): 1.0})
    el, _ = banach_exp(alg, f, 2.0, 1e-10)
    # the subgroup generated by x alone is a copy of Z
    e1d, _ = banach_exp(z_algebra, z_algebra.from_dict({(1,): 1.0, (-1,): 1.0}),
                        2.0, 1e-10)
    for n in range(-4, 5):
        assert abs(el.get((n, 0, 0), 0.0) - e1d.point((n,))) < 1e-10


# ---------------------------------------------------------------------------
# growth exponents

def test_growth_exponent_of_unit_is_zero(z_algebra):
    one = z_algebra.unit()
    fit = element_growth_exponent(z_algebra, one,
                                  np.geomspace(2, 40, 9), eps=1e-10)
    assert abs(fit.gamma) < 1e-6


def test_growth_exponent_dual_z(z_algebra, hop):
    lams = np.geomspace(5, 100, 10)
    fit = element_growth_exponent(z_algebra, hop, lams, eps=1e-6)
    assert 0.4 <= fit.gamma <= 0.7
    # the oracle over the same grid
    xs = [math.log(l) for l in lams]
    ys = [math.log(bessel_l1(l)) for l in lams]
    xb = sum(xs) / len(xs)
    yb = sum(ys) / len(ys)
    oracle = sum((a - xb) * (b - yb) for a, b in zip(xs, ys)) \
        / sum((a - xb) ** 2 for a in xs)
    assert fit.gamma == pytest.approx(oracle, abs=3 * fit.uncertainty + 1e-4)


def test_growth_exponent_dual_z2_doubles(z_algebra, hop):
    grid = np.geomspace(4, 30, 8)
    fit1 = element_growth_exponent(z_algebra, hop, grid, eps=1e-6)
    alg2 = LatticeAlgebra(2)
    f2 = alg2.from_dict({(1, 0): 1.0, (-1, 0): 1.0, (0, 1): 1.0, (0, -1): 1.0})
    fit2 = element_growth_exponent(alg2, f2, grid, eps=1e-6)
    assert fit2.gamma == pytest.approx(2 * fit1.gamma, abs=0.1)


def test_growth_exponent_stable_under_grid_doubling(z_algebra, hop):
    coarse = element_growth_exponent(z_algebra, hop,
                                     np.geomspace(5, 80, 8), eps=1e-6)
    fine = element_growth_exponent(z_algebra, hop,
                                   np.geomspace(5, 80, 16), eps=1e-6)
    assert abs(coarse.gamma - fine.gamma) < 0.1


def test_growth_exponent_requires_self_adjoint(z_algebra):
    f = z_algebra.from_dict({(1,): 1.0})
    with pytest.raises(QGrowthError, match="self-adjoint"):
        element_growth_exponent(z_algebra, f, np.geomspace(1, 10, 8))


# ---------------------------------------------------------------------------
# windows

def test_bump_support_and_zero():
    phi = BumpFunction(0.5, 2.0)
    assert phi(np.array([0.5])) == 0.0
    assert phi(np.array([2.0])) == 0.0
    assert phi.at_zero() == 0.0
    assert phi(np.array([1.25]))[0] == pytest.approx(math.exp(-1.0), rel=1e-12)
    phi0 = BumpFunction(-1.0, 1.0)
    assert phi0.at_zero() == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_bump_fourier_superpolynomial_decay():
    # |phi_hat| (1+lam)^8 stays bounded and eventually decreases: the
    # weighted curve peaks (around lam ~ 200 for the unit bump) and then
    # falls, so the transform beats every polynomial rate
    phi = BumpFunction(-1.0, 1.0)
    lams = np.array([5.0, 20.0, 80.0, 200.0, 400.0, 900.0])
    vals = np.abs(phi.fourier(lams))
    weighted = vals * (1 + lams) ** 8
    assert weighted[-1] < weighted[-2] < max(weighted)
    assert vals[-1] < 1e-13


def test_plateau_window_is_one_on_core():
    w = PlateauWindow(-2.0, -1.0, 1.0, 2.0)
    xs = np.linspace(-0.9, 0.9, 7)
    assert np.abs(w(xs) - 1.0).max() < 1e-12
    assert w(np.array([-2.0]))[0] == 0.0
    assert w(np.array([3.0]))[0] == 0.0


def test_identity_window_matches_x_on_core():
    w = IdentityWindow(-3.0, -1.5, 1.5, 3.0)
    xs = np.linspace(-1.4, 1.4, 9)
    assert np.abs(w(xs) - xs).max() < 1e-12


# ---------------------------------------------------------------------------
# functional calculus

@pytest.fixture(scope="module")
def s3_setup():
    alg = CoefficientAlgebra(S3)
    rng = np.random.default_rng(21)
    f = random_self_adjoint(S3, rng)
    return alg, f, regular_representation(S3)


def test_calculus_unit_coefficient_is_phi_at_zero(s3_setup):
    alg, f, _ = s3_setup
    phi = BumpFunction(-0.5, 1.5)
    res = functional_calculus(alg, phi, f, eps=1e-7)
    assert res.scalar.real == pytest.approx(phi.at_zero(), abs=1e-7)
    assert abs(res.scalar.imag) < 1e-9
    assert res.bound < 1e-7


def test_calculus_vanishing_window_gives_small_norm(s3_setup):
    alg, f, _ = s3_setup
    hi = float(np.abs(values_on_group(S3, f)).max())
    phi = BumpFunction(hi + 0.5, hi + 2.0)
    res = functional_calculus(alg, phi, f, eps=1e-7)
    assert l1_norm(res.fold(alg)) < 1e-7
    assert abs(res.scalar) < 1e-7  # phi(0) = 0 here


def test_calculus_representation_identity(s3_setup):
    alg, f, pi = s3_setup
    for phi in (BumpFunction(-1.5, 0.5), BumpFunction(-0.4, 1.2)):
        resid = calculus_representation_check(S3, phi, f, pi, eps=1e-7)
        assert resid < 1e-6


def test_calculus_identity_window_reproduces_f(s3_setup):
    alg, f, pi = s3_setup
    hi = float(np.abs(values_on_group(S3, f)).max())
    window = IdentityWindow(-(hi + 3.0), -(hi + 1.0), hi + 1.0, hi + 3.0)
    res = functional_calculus(alg, window, f, eps=1e-7)
    lhs = res.scalar * np.eye(pi.dimension) + pi(res.element)
    assert np.linalg.norm(lhs - pi(f), 2) < 1e-6


def test_calculus_linear_in_phi(s3_setup):
    alg, f, _ = s3_setup
    phi1 = BumpFunction(-1.2, 0.3)
    phi2 = BumpFunction(-0.3, 1.2)
    r1 = functional_calculus(alg, phi1, f, eps=1e-8)
    r2 = functional_calculus(alg, phi2, f, eps=1e-8)
    combined_lhs = r1.fold(alg) + r2.fold(alg)

    class SumWindow(BumpFunction):
        def __call__(self, x):
            return phi1(x) + phi2(x)

    both = SumWindow(-1.2, 1.2)
    r12 = functional_calculus(alg, both, f, eps=1e-8)
    tol = r1.bound + r2.bound + r12.bound + 1e-9
    assert l1_norm(combined_lhs - r12.fold(alg)) < tol


def test_calculus_spectral_oracle(s3_setup):
    # phi applied to a Hermitian matrix through eigendecomposition
    alg, f, pi = s3_setup
    phi = BumpFunction(-2.0, 2.0)
    mat = pi(f)
    ref = matrix_function(mat, phi)
    vals, vecs = np.linalg.eigh(mat)
    direct = vecs @ np.diag(phi(vals)) @ vecs.conj().T
    assert np.abs(ref - direct).max() < 1e-12


def test_calculus_rejects_non_self_adjoint(s3_setup):
    alg, _, _ = s3_setup
    rng = np.random.default_rng(22)
    from qgrowth.fourier.elements import random_qelement

    g = random_qelement(S3, rng)
    with pytest.raises(QGrowthError, match="self-adjoint"):
        functional_calculus(alg, BumpFunction(-1, 1), g, eps=1e-6)


def test_calculus_checks_star_representation(s3_setup):
    alg, f, _ = s3_setup
    from qgrowth.fourier.representations import MatrixStarRep

    fake = MatrixStarRep("broken", 6,
                         lambda a: np.ones((6, 6), dtype=complex))
    with pytest.raises(QGrowthError, match="not a \\*-representation"):
        calculus_representation_check(S3, BumpFunction(-1, 1), f, fake)
