"""Elements of the coefficient algebra and of the dual l1 algebra.

A QElement stores the coefficient matrices Lambda_v of
a = sum_v sum_ij lambda^v_ij v_ij.  An EllOneElement stores operator
blocks A_v on the dual side.  The l1 norms are

    ||a||_1 = sum_v TrNorm(Lambda_v^t)
    ||A||_1 = sum_v qdim(v) TrNorm(A_v F_v^-1)

with the trace norm computed from singular values (no cutoff).
"""

from __future__ import annotations

import numpy as np

from ..errors import SpecError
from .models import CoefficientSystem, FiniteQG


def _as_block(model, v, mat) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    d = model.dim(v)
    if mat.shape != (d, d):
        raise SpecError(f"block for {v!r} must be {d}x{d}, got {mat.shape}")
    return mat


class _Blocks:
    """Shared behaviour of sparse block families keyed by irreps."""

    def __init__(self, blocks: dict):
        self.blocks = {v: np.asarray(m, dtype=complex)
                       for v, m in blocks.items()
                       if np.any(np.asarray(m))}

    def support(self):
        return self.blocks.keys()

    def block(self, v, dim: int | None = None) -> np.ndarray:
        if v in self.blocks:
            return self.blocks[v]
        if dim is None:
            raise KeyError(v)
        return np.zeros((dim, dim), dtype=complex)

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        if self.blocks.keys() != other.blocks.keys():
            return False
        return all(np.array_equal(self.blocks[v], other.blocks[v])
                   for v in self.blocks)

    def __add__(self, other):
        out = {v: m.copy() for v, m in self.blocks.items()}
        for v, m in other.blocks.items():
            out[v] = out[v] + m if v in out else m.copy()
        return type(self)(out)

    def __rmul__(self, scalar):
        return type(self)({v: scalar * m for v, m in self.blocks.items()})

    __mul__ = __rmul__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __repr__(self):
        support = ", ".join(repr(v) for v in sorted(self.blocks, key=str))
        return f"{type(self).__name__}(support=[{support}])"


class QElement(_Blocks):
    """Finitely supported element of the coefficient algebra."""


class EllOneElement(_Blocks):
    """Finitely supported element of the dual l1 algebra."""


def validated(model: CoefficientSystem, blocks: dict) -> QElement:
    return QElement({v: _as_block(model, v, m) for v, m in blocks.items()})


def qelement_unit(model) -> QElement:
    return QElement({model.unit_irrep: np.ones((1, 1), dtype=complex)})


def ell_one_unit(model) -> EllOneElement:
    return EllOneElement({model.unit_irrep: np.ones((1, 1), dtype=complex)})


def trace_norm(mat: np.ndarray) -> float:
    if mat.size == 0:
        return 0.0
    return float(np.linalg.svd(mat, compute_uv=False).sum())


def l1_norm(a: QElement) -> float:
    """Fourier-algebra norm: sum of trace norms of the transposed blocks."""
    return float(sum(trace_norm(m.T) for m in a.blocks.values()))


def l1_norm_dual(model: CoefficientSystem, a: EllOneElement) -> float:
    """Weighted dual norm sum_v qdim(v) TrNorm(A_v F_v^-1)."""
    total = 0.0
    for v, m in a.blocks.items():
        f = model.f_matrix(v)
        weighted = m if f is None else m @ np.linalg.inv(f)
        total += float(model.qdim(v)) * trace_norm(weighted)
    return total


def haar(model: FiniteQG, a: QElement) -> complex:
    """Haar state: the coefficient of the trivial irrep."""
    unit = model.unit_irrep
    if unit in a.blocks:
        return complex(a.blocks[unit][0, 0])
    return 0.0 + 0.0j


# ---------------------------------------------------------------------------
# products

def coefficient_vector(model: FiniteQG, a: QElement) -> np.ndarray:
    """Stack blocks along the model's coefficient layout."""
    layout = model.coefficient_layout()
    vec = np.zeros(len(layout), dtype=complex)
    for idx, (v, i, j) in enumerate(layout):
        if v in a.blocks:
            vec[idx] = a.blocks[v][i, j]
    return vec


def from_coefficient_vector(model: FiniteQG, vec: np.ndarray,
                            chop: float = 0.0) -> QElement:
    blocks: dict = {}
    for idx, (v, i, j) in enumerate(model.coefficient_layout()):
        z = vec[idx]
        if chop and abs(z) <= chop:
            continue
        if v not in blocks:
            blocks[v] = np.zeros((model.dim(v), model.dim(v)), dtype=complex)
        blocks[v][i, j] = z
    return QElement(blocks)


def values_on_group(model: FiniteQG, a: QElement) -> np.ndarray:
    """The function g -> a(g) represented by a commutative-model element."""
    return model.value_matrix() @ coefficient_vector(model, a)


def from_values(model: FiniteQG, values: np.ndarray) -> QElement:
    """Recover coefficient blocks from function values (Peter-Weyl)."""
    return from_coefficient_vector(model, model.recovery_matrix() @ values)


def multiply(model: FiniteQG, a: QElement, b: QElement) -> QElement:
    """Product in the coefficient algebra.

    Commutative model: pointwise product of the associated functions,
    re-expanded through the orthogonality relations.  Cocommutative
    model: group-algebra product.
    """
    if model.model == "commutative":
        va = values_on_group(model, a)
        vb = values_on_group(model, b)
        return from_values(model, va * vb)
    group = model.group
    out: dict = {}
    for x, mx in a.blocks.items():
        for y, my in b.blocks.items():
            z = group.mul(x, y)
            coeff = mx[0, 0] * my[0, 0]
            if z in out:
                out[z] = out[z] + coeff
            else:
                out[z] = coeff
    return QElement({z: np.array([[c]]) for z, c in out.items()
                     if c != 0})


# ---------------------------------------------------------------------------
# involutions

def _conj_inverse(model: CoefficientSystem, v) -> np.ndarray:
    """Inverse of the conjugation matrix; the Hermitian adjoint in the
    Kac case so that star and bullet coincide bit for bit."""
    t = model.conj_matrix(v)
    if model.f_matrix(v) is None:
        return t.conj().T
    return np.linalg.inv(t)


def star(model: CoefficientSystem, a: QElement) -> QElement:
    """The *-involution: the block of a* at conj(v) is
    conj(T_v Lambda_v T_v^-1)."""
    out: dict = {}
    for v, lam in a.blocks.items():
        t = model.conj_matrix(v)
        tinv = _conj_inverse(model, v)
        target = model.conj(v)
        contrib = (t @ lam @ tinv).conj()
        out[target] = out[target] + contrib if target in out else contrib
    return QElement(out)


def bullet(model: CoefficientSystem, a: QElement) -> QElement:
    """The modular involution: uses the antiunitary part J = M conj(.)
    of the conjugation, so the block at conj(v) is conj(M Lambda_v M^H).
    Coincides with star exactly when all F are the identity."""
    out: dict = {}
    for v, lam in a.blocks.items():
        t = model.conj_matrix(v)
        f = model.f_matrix(v)
        if f is None:
            m = t
        else:
            f_invsqrt = _matrix_inv_sqrt(f)
            m = t @ f_invsqrt.conj()
        target = model.conj(v)
        contrib = (m @ lam @ m.conj().T).conj()
        out[target] = out[target] + contrib if target in out else contrib
    return QElement(out)


def _matrix_inv_sqrt(f: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(f)
    if np.any(vals <= 0):
        raise SpecError("modular matrix F is not positive definite")
    return (vecs * (vals ** -0.5)) @ vecs.conj().T


def is_self_adjoint(model: CoefficientSystem, a: QElement,
                    atol: float = 1e-10) -> bool:
    diff = a - star(model, a)
    return all(np.abs(m).max() <= atol for m in diff.blocks.values()) \
        if diff.blocks else True


# ---------------------------------------------------------------------------
# random data

def random_qelement(model: CoefficientSystem, rng: np.random.Generator,
                    support=None, scale: float = 1.0) -> QElement:
    """Standard complex Gaussian blocks on the given support (default:
    every irrep of the model)."""
    labels = list(model.irrep_ids) if support is None else list(support)
    blocks = {}
    for v in labels:
        d = model.dim(v)
        blocks[v] = scale * (rng.standard_normal((d, d))
                             + 1j * rng.standard_normal((d, d)))
    return QElement(blocks)


def random_self_adjoint(model: FiniteQG, rng: np.random.Generator,
                        scale: float = 1.0) -> QElement:
    """Random self-adjoint element: in the commutative model from real
    function values, in the cocommutative model by symmetrising."""
    if model.model == "commutative":
        values = scale * rng.standard_normal(model.order)
        return from_values(model, values.astype(complex))
    a = random_qelement(model, rng, scale=scale)
    return 0.5 * (a + star(model, a))
