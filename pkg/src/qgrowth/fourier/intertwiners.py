"""Isometric intertwiners into tensor products, and dual convolution.

An IntertwinerBasis for (w; u, u') is a maximal family S_1..S_N of
isometries H_w -> H_u (x) H_u' with mutually orthogonal ranges; N is the
fusion multiplicity.  Convolution on the dual side is the bilinear
extension of

    (A * B)_w += (qdim u)(qdim u')/(qdim w) . S_i^H (A_u (x) B_u') S_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import IntertwinerError
from .elements import EllOneElement
from .models import FiniteQG, _hom_space


@dataclass
class IntertwinerBasis:
    target: object            # w
    source: tuple             # (u, u')
    isometries: list          # matrices of shape (dim u * dim u', dim w)

    def __len__(self):
        return len(self.isometries)


def intertwiner_basis(model: FiniteQG, w, u, uprime,
                      cutoff: float = 1e-9) -> IntertwinerBasis:
    """Solve (u (x) u')(g) S = S w(g) over all group elements and
    orthonormalise the solution space.

    Gram-Schmidt runs in the inner product Tr(S^H T)/dim(w); each basis
    element is then rescaled so S^H S = I (a scalar by Schur's lemma).
    Raises IntertwinerError when the numerical solution space does not
    match the character multiplicity.
    """
    if model.model != "commutative":
        raise IntertwinerError("intertwiner solve needs explicit matrices")
    key = (w, u, uprime)
    cached = model._intertwiner_cache.get(key)
    if cached is not None:
        return cached
    dw = model.dim(w)
    expected = model.multiplicity(u, uprime, w)
    tensor_reps = [np.kron(model.matrix(u, g), model.matrix(uprime, g))
                   for g in model.elements]
    target_reps = [model.matrix(w, g) for g in model.elements]
    sols = _hom_space(tensor_reps, target_reps, cutoff=cutoff)
    if len(sols) != expected:
        raise IntertwinerError(
            f"solve for {key}: found {len(sols)} intertwiners, characters "
            f"give {expected}")

    basis: list[np.ndarray] = []
    for raw in sols:
        s = raw.copy()
        for prev in basis:
            s = s - prev * (np.trace(prev.conj().T @ s) / dw)
        norm2 = float(np.trace(s.conj().T @ s).real) / dw
        if norm2 <= cutoff:
            raise IntertwinerError(f"solve for {key}: degenerate basis")
        s = s / math.sqrt(norm2)
        # Schur scalar: S^H S = c I; after the normalisation c = 1, but
        # rescale by the mean diagonal to kill residual drift
        gram = s.conj().T @ s
        c = float(np.trace(gram).real) / dw
        s = s / math.sqrt(c)
        basis.append(s)
    result = IntertwinerBasis(w, (u, uprime), basis)
    residual = intertwiner_residual(model, result)
    if residual > 1e-8:
        raise IntertwinerError(f"solve for {key}: residual {residual:.2e}")
    model._intertwiner_cache[key] = result
    return result


def intertwiner_residual(model: FiniteQG, basis: IntertwinerBasis) -> float:
    """Max intertwining defect plus orthonormality defect."""
    u, uprime = basis.source
    w = basis.target
    worst = 0.0
    for s in basis.isometries:
        for g in model.elements:
            lhs = np.kron(model.matrix(u, g), model.matrix(uprime, g)) @ s
            rhs = s @ model.matrix(w, g)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    eye = np.eye(model.dim(w))
    for i, s in enumerate(basis.isometries):
        for k, t in enumerate(basis.isometries):
            gram = s.conj().T @ t
            target = eye if i == k else 0.0 * eye
            worst = max(worst, float(np.abs(gram - target).max()))
    return worst


def convolve(model: FiniteQG, a: EllOneElement,
             b: EllOneElement) -> EllOneElement:
    """Convolution product of l1(dual) via intertwiner bases; reduces to
    the group-algebra convolution in the cocommutative model."""
    if model.model == "cocommutative":
        out: dict = {}
        group = model.group
        for x, mx in a.blocks.items():
            for y, my in b.blocks.items():
                z = group.mul(x, y)
                c = mx[0, 0] * my[0, 0]
                if z in out:
                    out[z] = out[z] + c
                else:
                    out[z] = c
        return EllOneElement({z: np.array([[c]]) for z, c in out.items()})

    out_blocks: dict = {}
    for u, au in a.blocks.items():
        qu = float(model.qdim(u))
        for uprime, bu in b.blocks.items():
            qup = float(model.qdim(uprime))
            tensor_block = np.kron(au, bu)
            for w in model.irrep_ids:
                n = model.multiplicity(u, uprime, w)
                if n == 0:
                    continue
                basis = intertwiner_basis(model, w, u, uprime)
                qw = float(model.qdim(w))
                scale = qu * qup / qw
                acc = out_blocks.get(w)
                for s in basis.isometries:
                    term = scale * (s.conj().T @ tensor_block @ s)
                    acc = term if acc is None else acc + term
                out_blocks[w] = acc
    return EllOneElement(out_blocks)
