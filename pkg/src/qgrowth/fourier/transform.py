"""The Fourier transform between the coefficient algebra and l1 of the
dual, with the inversion formula, Plancherel and orthogonality checks.

Blockwise: F(a)(v) = Lambda_v^t F_v / qdim(v); inversion reads the
blocks back as Lambda_v^t = qdim(v) A_v F_v^-1.  With F = identity the
transform is Lambda_v^t / dim(v).
"""

from __future__ import annotations

import numpy as np

from .elements import EllOneElement, QElement, haar, multiply, star
from .models import CoefficientSystem, FiniteQG


def fourier_transform(model: CoefficientSystem, a: QElement) -> EllOneElement:
    out = {}
    for v, lam in a.blocks.items():
        f = model.f_matrix(v)
        block = lam.T if f is None else lam.T @ f
        out[v] = block / model.qdim(v)
    return EllOneElement(out)


def inverse_fourier(model: CoefficientSystem, a_hat: EllOneElement) -> QElement:
    out = {}
    for v, block in a_hat.blocks.items():
        f = model.f_matrix(v)
        lam_t = block if f is None else block @ np.linalg.inv(f)
        out[v] = model.qdim(v) * lam_t.T
    return QElement(out)


def dual_star(model: CoefficientSystem, a_hat: EllOneElement) -> EllOneElement:
    """The involution of the dual algebra: the block at conj(v) is
    P conj(A_v) P^H F_conj(v) with P the inverse adjoint of the
    conjugation matrix.  Fourier transport of the *-involution."""
    out: dict = {}
    for v, block in a_hat.blocks.items():
        t = model.conj_matrix(v)
        p = np.linalg.inv(t.conj().T) if model.f_matrix(v) is not None \
            else t  # unitary T: (T^H)^-1 = T
        target = model.conj(v)
        contrib = p @ block.conj() @ p.conj().T
        f_target = model.f_matrix(target)
        if f_target is not None:
            contrib = contrib @ f_target
        out[target] = out[target] + contrib if target in out else contrib
    return EllOneElement(out)


def l2_norm_squared_dual(model: CoefficientSystem,
                         a_hat: EllOneElement) -> float:
    """GNS norm of the left Haar weight: sum_v qdim(v) Tr(F_v^-1 A^H A)."""
    total = 0.0
    for v, block in a_hat.blocks.items():
        f = model.f_matrix(v)
        gram = block.conj().T @ block
        if f is not None:
            gram = np.linalg.inv(f) @ gram
        total += float(model.qdim(v)) * float(np.trace(gram).real)
    return total


def plancherel_residual(model: FiniteQG, a: QElement) -> float:
    """|h(a* a) - ||F(a)||^2_{l2}|.

    The left side runs through the algebra (star, multiply, haar); the
    right side is the blockwise GNS norm of the transform, so the two
    routes are independent.
    """
    lhs = haar(model, multiply(model, star(model, a), a)).real
    rhs = l2_norm_squared_dual(model, fourier_transform(model, a))
    return abs(lhs - rhs)


def orthogonality_residual(model: FiniteQG, u, v) -> float:
    """Worst deviation of the Haar pairings of matrix coefficients from
    the two orthogonality relations.

    h(v_kl* u_ij) must equal delta_{uv} F_ik delta_lj / qdim(u) and
    h(u_ij v_kl*) must equal delta_{uv} delta_ik (F^-1)_lj / qdim(u);
    both pairings are evaluated by direct group averaging.
    """
    if model.model != "commutative":
        raise NotImplementedError("orthogonality residual needs explicit "
                                  "matrices (commutative model)")
    mats_u = np.stack([model.matrix(u, g) for g in model.elements])
    mats_v = np.stack([model.matrix(v, g) for g in model.elements])
    order = model.order
    # pairing[i, j, k, l] = h(conj(v_kl) u_ij); functions commute so the
    # same array serves both relations
    pairing = np.einsum("gkl,gij->ijkl", mats_v.conj(), mats_u) / order

    du = model.dim(u)
    dv = model.dim(v)
    qd = float(model.qdim(u))
    f = model.f_matrix(u)
    f = np.eye(du) if f is None else f
    finv = np.linalg.inv(f)
    if u == v:
        expected_1 = np.einsum("ik,lj->ijkl", f, np.eye(du)) / qd
        expected_2 = np.einsum("ik,lj->ijkl", np.eye(du), finv) / qd
    else:
        expected_1 = np.zeros((du, du, dv, dv))
        expected_2 = expected_1
    res = max(float(np.abs(pairing - expected_1).max()),
              float(np.abs(pairing - expected_2).max()))
    return res
