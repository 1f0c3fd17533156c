"""Hilbert-space *-representations of the finite models as explicit
matrices: the regular representation, point evaluations, kernels, and
the norm-domination comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import QGrowthError
from .elements import QElement, from_coefficient_vector, star, values_on_group
from .models import FiniteQG


@dataclass
class MatrixStarRep:
    """A representation given by an explicit linear map to matrices."""

    name: str
    dimension: int
    apply: Callable[[QElement], np.ndarray]

    def __call__(self, a: QElement) -> np.ndarray:
        return self.apply(a)


def regular_representation(model: FiniteQG) -> MatrixStarRep:
    """GNS representation of the Haar state.

    Commutative model: multiplication operators, diagonal in the basis
    of group-element delta functions.  Cocommutative model: the left
    regular representation by permutation matrices.
    """
    if model.model == "commutative":
        def apply(a: QElement) -> np.ndarray:
            return np.diag(values_on_group(model, a))
        return MatrixStarRep("regular", model.order, apply)

    order = model.order
    elements = model.elements
    index = {g: i for i, g in enumerate(elements)}
    perms = {}
    for g in elements:
        mat = np.zeros((order, order), dtype=complex)
        for h in elements:
            mat[index[model.group.mul(g, h)], index[h]] = 1.0
        perms[g] = mat

    def apply(a: QElement) -> np.ndarray:
        out = np.zeros((order, order), dtype=complex)
        for g, block in a.blocks.items():
            out += block[0, 0] * perms[g]
        return out

    return MatrixStarRep("left-regular", order, apply)


def point_evaluation_rep(model: FiniteQG, points) -> MatrixStarRep:
    """Direct summand of the regular representation of the commutative
    model: evaluation at a subset of group elements."""
    if model.model != "commutative":
        raise QGrowthError("point evaluations need the commutative model")
    idx = [model.elements.index(g) for g in points]

    def apply(a: QElement) -> np.ndarray:
        return np.diag(values_on_group(model, a)[idx])

    return MatrixStarRep(f"eval{tuple(points)!r}", len(idx), apply)


def star_rep_residual(model: FiniteQG, pi: MatrixStarRep,
                      rng: np.random.Generator, samples: int = 5) -> float:
    """How far pi is from a *-representation, on random pairs."""
    from .elements import multiply, random_qelement

    worst = 0.0
    for _ in range(samples):
        a = random_qelement(model, rng)
        b = random_qelement(model, rng)
        mult = np.abs(pi(multiply(model, a, b)) - pi(a) @ pi(b)).max()
        adj = np.abs(pi(star(model, a)) - pi(a).conj().T).max()
        worst = max(worst, float(mult), float(adj))
    return worst


def representation_matrix(model: FiniteQG, pi: MatrixStarRep) -> np.ndarray:
    """Matrix of the linear map (coefficient vector) -> vec(pi(a))."""
    layout = model.coefficient_layout()
    cols = []
    for idx in range(len(layout)):
        vec = np.zeros(len(layout), dtype=complex)
        vec[idx] = 1.0
        image = pi(from_coefficient_vector(model, vec))
        cols.append(image.reshape(-1))
    return np.array(cols).T


def representation_kernel(model: FiniteQG, pi: MatrixStarRep,
                          cutoff: float = 1e-9) -> list[QElement]:
    """Basis of ker(pi) as elements, from the SVD nullspace."""
    mat = representation_matrix(model, pi)
    _, svals, vh = np.linalg.svd(mat)
    scale = max(1.0, float(svals[0]) if svals.size else 1.0)
    null_dim = int(np.sum(svals < cutoff * scale)) + (mat.shape[1] - len(svals))
    kernel = []
    for row in vh[len(vh) - null_dim:]:
        kernel.append(from_coefficient_vector(model, row.conj()))
    return kernel


def smallest_representation_singular_value(model: FiniteQG,
                                           pi: MatrixStarRep) -> float:
    """Conditioning witness for faithfulness: sigma_min of the
    representation map.  Strictly positive means pi(a) = 0 forces a = 0."""
    svals = np.linalg.svd(representation_matrix(model, pi),
                          compute_uv=False)
    return float(svals[-1]) if svals.size else 0.0


@dataclass
class NormDominationReport:
    margins: list          # ||pi(f)|| - ||rho(f)|| per sample
    kernel_dim: int
    ok: bool


def norm_domination_check(model: FiniteQG, pi: MatrixStarRep,
                          rho: MatrixStarRep, fs,
                          tol: float = 1e-10) -> NormDominationReport:
    """Check ||rho(f)|| <= ||pi(f)|| + tol on the samples.

    Precondition enforced first: ker(pi) is contained in ker(rho), which
    is exactly the hypothesis under which domination holds for
    *-representations.  The kernel is computed as a null space of the
    representation map; a kernel vector that rho does not kill is
    reported as a witness.
    """
    kernel = representation_kernel(model, pi)
    for k in kernel:
        defect = float(np.linalg.norm(rho(k), 2))
        if defect > 1e-8:
            raise QGrowthError(
                "kernel inclusion fails: pi kills an element that rho "
                f"maps to norm {defect:.3e}")
    margins = []
    ok = True
    for f in fs:
        npi = float(np.linalg.norm(pi(f), 2))
        nrho = float(np.linalg.norm(rho(f), 2))
        margins.append(npi - nrho)
        if nrho > npi + tol:
            ok = False
    return NormDominationReport(margins, len(kernel), ok)
