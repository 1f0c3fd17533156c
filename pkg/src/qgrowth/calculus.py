"""Truncated Banach-algebra exponentials, measured polynomial growth of
||exp(i lambda f)||_1, and the smoothed functional calculus phi{f}.

The exponential is computed by scaling and squaring: the plain power
series has terms of size exp(|lambda| ||f||) that cancel to O(1), which
destroys double precision beyond |lambda| ||f|| of a few dozen, so the
series is evaluated at lambda / 2^m with argument below 1 and squared m
times.  The reported truncation bound is the series tail propagated
through the squarings with the observed norms
(err' = err * (2 ||a|| + err) + product defect), so it stays honest.

phi{f} = (1/2pi) Integral exp(i lambda f) phi_hat(lambda) d lambda is a
composite Gauss-Legendre quadrature over unit panels, folded onto
lambda >= 0 through exp(-i lambda f) = (exp(i lambda f))^*, extended
outward until the integrand bound falls below the accuracy budget and
refined by node doubling.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from .errors import QGrowthError, QuadratureError, TruncationCapError
from .fourier.elements import (
    EllOneElement,
    QElement,
    l1_norm,
    multiply,
    qelement_unit,
    star as qg_star,
)
from .fourier.models import FiniteQG
from .rings.base import DiscreteGroup, GroupDualRing

EXP_TERM_CAP = 10_000


# ---------------------------------------------------------------------------
# algebra adapters

class BanachStarAlgebra(ABC):
    """The operations banach_exp needs: a unital Banach *-algebra with
    an l1-type norm.  ``mul`` returns the product together with an upper
    bound on the l1 error committed (coefficient drop, fft roundoff)."""

    name = "algebra"

    @abstractmethod
    def unit(self):
        ...

    @abstractmethod
    def add(self, x, y):
        ...

    @abstractmethod
    def scale(self, c, x):
        ...

    @abstractmethod
    def mul(self, x, y):
        """Return (x @ y, l1 defect bound)."""

    @abstractmethod
    def norm(self, x) -> float:
        ...

    @abstractmethod
    def star(self, x):
        ...

    def is_self_adjoint(self, f, atol: float = 1e-10) -> bool:
        diff = self.add(f, self.scale(-1.0, self.star(f)))
        return self.norm(diff) <= atol


class CoefficientAlgebra(BanachStarAlgebra):
    """The coefficient algebra of a finite model under the Fourier
    norm sum_v TrNorm(Lambda_v^t)."""

    def __init__(self, model: FiniteQG):
        self.model = model
        self.name = f"A({model.spec})"

    def unit(self) -> QElement:
        return qelement_unit(self.model)

    def add(self, x, y):
        return x + y

    def scale(self, c, x):
        return c * x

    def mul(self, x, y):
        prod = multiply(self.model, x, y)
        defect = 64 * np.finfo(float).eps * l1_norm(x) * l1_norm(y)
        return prod, defect

    def norm(self, x) -> float:
        return l1_norm(x)

    def star(self, x):
        return qg_star(self.model, x)


@dataclass
class LatticeElement:
    """Finitely supported function on Z^d as a dense box of complex
    coefficients anchored at ``origin``."""

    origin: tuple
    data: np.ndarray

    def point(self, x) -> complex:
        idx = tuple(c - o for c, o in zip(x, self.origin))
        if all(0 <= i < s for i, s in zip(idx, self.data.shape)):
            return complex(self.data[idx])
        return 0.0 + 0.0j

    def items(self):
        for idx in np.argwhere(self.data):
            point = tuple(int(i) + o for i, o in zip(idx, self.origin))
            yield point, complex(self.data[tuple(idx)])


class LatticeAlgebra(BanachStarAlgebra):
    """l1(Z^d) with convolution; the dual Fourier algebra of the
    d-torus.  Products crop the support box from the edges inward while
    the cropped l1 mass stays below drop_rel * ||x|| * ||y||, and report
    that mass (plus a roundoff envelope) as the defect; without the crop
    the support doubles at every squaring while the far coefficients are
    pure convolution noise."""

    def __init__(self, d: int, drop_rel: float = 1e-14):
        self.d = d
        self.drop_rel = drop_rel
        self.name = f"l1(Z^{d})"

    def from_dict(self, coeffs: dict) -> LatticeElement:
        points = list(coeffs)
        if not points:
            return LatticeElement((0,) * self.d,
                                  np.zeros((1,) * self.d, dtype=complex))
        for p in points:
            if len(p) != self.d:
                raise QGrowthError(f"point {p!r} is not in Z^{self.d}")
        lo = tuple(min(p[i] for p in points) for i in range(self.d))
        hi = tuple(max(p[i] for p in points) for i in range(self.d))
        shape = tuple(h - l + 1 for l, h in zip(lo, hi))
        data = np.zeros(shape, dtype=complex)
        for p, c in coeffs.items():
            data[tuple(a - l for a, l in zip(p, lo))] = c
        return LatticeElement(lo, data)

    def unit(self) -> LatticeElement:
        return self.from_dict({(0,) * self.d: 1.0})

    def add(self, x: LatticeElement, y: LatticeElement) -> LatticeElement:
        lo = tuple(min(a, b) for a, b in zip(x.origin, y.origin))
        hi = tuple(max(a + s, b + t) - 1
                   for a, s, b, t in zip(x.origin, x.data.shape,
                                         y.origin, y.data.shape))
        shape = tuple(h - l + 1 for l, h in zip(lo, hi))
        data = np.zeros(shape, dtype=complex)
        xs = tuple(slice(a - l, a - l + s)
                   for a, l, s in zip(x.origin, lo, x.data.shape))
        ys = tuple(slice(b - l, b - l + t)
                   for b, l, t in zip(y.origin, lo, y.data.shape))
        data[xs] += x.data
        data[ys] += y.data
        return LatticeElement(lo, data)

    def scale(self, c, x: LatticeElement) -> LatticeElement:
        return LatticeElement(x.origin, c * x.data)

    def mul(self, x: LatticeElement, y: LatticeElement):
        if self.d == 1:
            conv = np.convolve(x.data, y.data)
        else:
            from scipy.signal import fftconvolve
            conv = fftconvolve(x.data, y.data)
        origin = tuple(a + b for a, b in zip(x.origin, y.origin))
        nx = float(np.abs(x.data).sum())
        ny = float(np.abs(y.data).sum())
        defect = 1e-14 * nx * ny  # fft/accumulation roundoff envelope
        element, cropped = self._crop(LatticeElement(origin, conv),
                                      self.drop_rel * nx * ny)
        return element, defect + cropped

    def _crop(self, x: LatticeElement, budget: float):
        """Trim edge slabs whose total l1 mass stays within budget;
        returns the trimmed element and the actual mass removed."""
        data = x.data
        absval = np.abs(data)
        lo = [0] * self.d
        hi = list(data.shape)
        removed = 0.0
        allowance = budget / (2 * self.d)
        for axis in range(self.d):
            other = tuple(i for i in range(self.d) if i != axis)
            marginal = absval.sum(axis=other) if other else absval
            front = 0.0
            while lo[axis] < hi[axis] - 1:
                step = float(marginal[lo[axis]])
                if front + step > allowance:
                    break
                front += step
                lo[axis] += 1
            back = 0.0
            while hi[axis] - 1 > lo[axis]:
                step = float(marginal[hi[axis] - 1])
                if back + step > allowance:
                    break
                back += step
                hi[axis] -= 1
            removed += front + back
        if any(a > 0 for a in lo) or any(h < s for h, s in zip(hi, data.shape)):
            slices = tuple(slice(a, b) for a, b in zip(lo, hi))
            data = data[slices].copy()
        origin = tuple(int(o + a) for o, a in zip(x.origin, lo))
        return LatticeElement(origin, data), removed

    def norm(self, x: LatticeElement) -> float:
        return float(np.abs(x.data).sum())

    def star(self, x: LatticeElement) -> LatticeElement:
        data = np.conj(x.data[(slice(None, None, -1),) * self.d])
        origin = tuple(-(o + s - 1) for o, s in zip(x.origin, x.data.shape))
        return LatticeElement(origin, data)


class GroupAlgebra(BanachStarAlgebra):
    """l1 of a discrete group with sparse dict elements; the generic
    fallback for group duals without lattice structure."""

    def __init__(self, group: DiscreteGroup):
        self.group = group
        self.name = f"l1({group.name})"

    def from_dict(self, coeffs: dict) -> dict:
        return {g: complex(c) for g, c in coeffs.items() if c}

    def unit(self) -> dict:
        return {self.group.identity: 1.0 + 0.0j}

    def add(self, x, y):
        out = dict(x)
        for g, c in y.items():
            out[g] = out.get(g, 0.0) + c
        return {g: c for g, c in out.items() if c}

    def scale(self, c, x):
        return {g: c * v for g, v in x.items()}

    def mul(self, x, y):
        out: dict = {}
        mul = self.group._mul_raw
        for g, cg in x.items():
            for h, ch in y.items():
                k = mul(g, h)
                out[k] = out.get(k, 0.0) + cg * ch
        defect = 16 * np.finfo(float).eps * self.norm(x) * self.norm(y)
        return {g: c for g, c in out.items() if c}, defect

    def norm(self, x) -> float:
        return float(sum(abs(c) for c in x.values()))

    def star(self, x):
        inv = self.group.inv
        return {inv(g): c.conjugate() for g, c in x.items()}


def algebra_for_ring(ring: GroupDualRing) -> BanachStarAlgebra:
    """The dual l1 algebra of a group-dual fusion ring."""
    from .rings.families import LatticeZd

    if not isinstance(ring, GroupDualRing):
        raise QGrowthError(
            f"ring {ring.spec} is not a group dual; its l1 algebra needs "
            "matrix blocks, use a finite model instead")
    if isinstance(ring.group, LatticeZd):
        return LatticeAlgebra(ring.group.d)
    return GroupAlgebra(ring.group)


def element_from_mults(alg: BanachStarAlgebra, coeffs: dict):
    if isinstance(alg, (LatticeAlgebra, GroupAlgebra)):
        return alg.from_dict(coeffs)
    raise QGrowthError(f"cannot build a sparse element for {alg.name}")


# ---------------------------------------------------------------------------
# the Banach-algebra exponential

@dataclass
class ExpTruncation:
    order: int        # result supported in ball(supp f, order)
    tail: float       # l1 bound on the truncation error
    squarings: int = 0


def _series_order(y: float, eps: float, cap: int) -> int:
    """Smallest K with the scalar tail sum_{k>K} y^k / k! below eps.

    Runs in logs: the terms peak near e^y before decaying, which
    overflows doubles long before the tail is reached for large y.
    """
    if y == 0.0:
        return 0
    log_term = 0.0
    log_y = math.log(y)
    log_eps = math.log(eps)
    k = 0
    while k < cap:
        k += 1
        log_term += log_y - math.log(k)
        if y < k + 2 and log_term < log_eps + math.log(1.0 - y / (k + 2)):
            return k
    return cap


def banach_exp(alg: BanachStarAlgebra, f, lam: float, eps: float,
               term_cap: int = EXP_TERM_CAP, best_effort: bool = False):
    """Truncated exp(i lambda f) with an l1 tail bound below eps.

    Raises TruncationCapError when the effective series order
    (inner order times 2^squarings) would exceed term_cap, which signals
    that lambda is too large for the budget.  When the bound is limited
    by floating-point product defects rather than the series order, a
    strict call raises QuadratureError; with ``best_effort`` the element
    is returned with its achieved (honest) bound instead, for callers
    that track error budgets themselves.
    """
    if eps <= 0:
        raise QGrowthError("eps must be positive")
    norm_f = alg.norm(f)
    x = abs(lam) * norm_f
    if x == 0.0:
        return alg.unit(), ExpTruncation(0, 0.0)
    m = max(0, math.ceil(math.log2(x))) if x > 1.0 else 0
    # the cap is expressed in plain-series terms: what the series would
    # need without scaling and squaring
    if _series_order(x, eps, term_cap) >= term_cap:
        raise TruncationCapError(term_cap, lam, eps)
    inner_eps = min(eps * 0.5 ** (m + 2), 1e-18)
    attempts = 1 if best_effort else 2
    for _attempt in range(attempts):
        y = x / 2 ** m
        order = _series_order(y, inner_eps, term_cap)
        coeff = 1j * lam / 2 ** m
        acc = alg.unit()
        power = alg.unit()
        term_err = 0.0
        err = 0.0
        scalar = 1.0
        for k in range(1, order + 1):
            power, defect = alg.mul(power, f)
            power = alg.scale(coeff / k, power)
            scalar *= y / k
            term_err = term_err * y / k + abs(coeff / k) * defect
            err += term_err
            acc = alg.add(acc, power)
        # mathematical series tail on top of accumulated product noise
        err += scalar * (y / (order + 2)) / max(1e-9, 1.0 - y / (order + 2)) \
            if y < order + 2 else scalar
        result = acc
        for _j in range(m):
            sq, defect = alg.mul(result, result)
            err = err * (2.0 * alg.norm(result) + err) + defect
            result = sq
        if err < eps or best_effort:
            return result, ExpTruncation(order * 2 ** m, err, m)
        inner_eps *= max(1e-3, 0.1 * eps / err)
    raise QuadratureError(eps, err)


def exp_norms(alg: BanachStarAlgebra, f, lams, eps: float):
    """||exp(i lambda f)||_1 with tail bounds, one pair per lambda.

    Best-effort per point: each achieved bound is reported alongside the
    norm so fits can fold it into their uncertainty.
    """
    out = []
    for lam in lams:
        el, trunc = banach_exp(alg, f, float(lam), eps, best_effort=True)
        out.append((float(lam), alg.norm(el), trunc.tail))
    return out


@dataclass
class GrowthExponentFit:
    gamma: float
    stderr: float
    uncertainty: float
    points: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "uncertainty": self.uncertainty,
                "points": [[lam, nrm, tail] for lam, nrm, tail in self.points]}


def element_growth_exponent(alg: BanachStarAlgebra, f, lams,
                            eps: float = 1e-8) -> GrowthExponentFit:
    """Fitted exponent of ||exp(i lambda f)|| against lambda on a grid.

    Requires f* = f; the reported uncertainty folds the fit standard
    error together with the worst per-point truncation effect.
    """
    lams = [float(x) for x in lams]
    if len(lams) < 8:
        raise QGrowthError("need at least 8 grid points")
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise QGrowthError("lambda grid must be strictly increasing")
    if lams[0] <= 0:
        raise QGrowthError("lambda grid must be positive")
    if not alg.is_self_adjoint(f):
        raise QGrowthError("element growth needs a self-adjoint element")
    points = exp_norms(alg, f, lams, eps)
    xs = [math.log(lam) for lam, _, _ in points]
    ys = [math.log(nrm) for _, nrm, _ in points]
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((a - xbar) ** 2 for a in xs)
    slope = sum((a - xbar) * (b - ybar) for a, b in zip(xs, ys)) / sxx
    rss = sum((b - (ybar + slope * (a - xbar))) ** 2 for a, b in zip(xs, ys))
    stderr = math.sqrt(rss / max(1, n - 2) / sxx)
    trunc_effect = max(tail / nrm for _, nrm, tail in points)
    return GrowthExponentFit(slope, stderr, stderr + trunc_effect, points)


# ---------------------------------------------------------------------------
# smooth compactly supported windows

@lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _quantize_nodes(n: int) -> int:
    """Round node counts up to a coarse grid so Gauss-Legendre rules are
    reused across nearby frequencies (generating them is O(n^2))."""
    return max(96, 128 * ((n + 127) // 128))


class CompactWindow(ABC):
    """A C-infinity function with compact support [a, b], with cached
    numerical Fourier samples phi_hat(lambda) = int phi(x) e^(-i lambda x) dx."""

    def __init__(self, a: float, b: float):
        if not a < b:
            raise QGrowthError(f"empty window [{a}, {b}]")
        self.a = float(a)
        self.b = float(b)
        self._fourier_nodes: dict = {}

    @abstractmethod
    def profile(self, t: np.ndarray) -> np.ndarray:
        """The window on rescaled coordinates t in (-1, 1)."""

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        t = (2.0 * x - (self.a + self.b)) / (self.b - self.a)
        out = np.zeros_like(t)
        inside = np.abs(t) < 1.0
        if np.any(inside):
            out[inside] = self.profile(t[inside])
        return out

    def at_zero(self) -> float:
        return float(self(np.array(0.0)))

    def fourier(self, lams: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """phi_hat on a batch of frequencies by Gauss-Legendre quadrature
        with node doubling until stable.

        Gauss-Legendre resolves exp(-i lam x) once the node count passes
        lam (b-a) / 2 by a margin, so the start count scales with the
        largest requested frequency.
        """
        lams = np.asarray(lams, dtype=float)
        width = self.b - self.a
        max_abs = float(np.abs(lams).max()) if lams.size else 1.0
        n = _quantize_nodes(int(0.75 * width * max_abs) + 64)
        prev = self._fourier_at(lams, n)
        for _ in range(8):
            n = _quantize_nodes(int(n * 1.5) + 16)
            cur = self._fourier_at(lams, n)
            if np.abs(cur - prev).max() < tol:
                return cur
            prev = cur
        return prev

    def _fourier_at(self, lams: np.ndarray, n: int) -> np.ndarray:
        key = n
        cached = self._fourier_nodes.get(key)
        if cached is None:
            t, w = _leggauss(n)
            x = 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
            w = 0.5 * (self.b - self.a) * w
            cached = (x, w * self(x))
            self._fourier_nodes[key] = cached
        x, fw = cached
        return np.exp(-1j * np.outer(lams, x)) @ fw


class BumpFunction(CompactWindow):
    """The standard bump exp(-1/(1-t^2)) rescaled to [a, b]."""

    def profile(self, t: np.ndarray) -> np.ndarray:
        return np.exp(-1.0 / (1.0 - t * t))


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    fa = np.zeros_like(t)
    pos = t > 0
    fa[pos] = np.exp(-1.0 / t[pos])
    fb = np.zeros_like(t)
    neg = t < 1
    fb[neg] = np.exp(-1.0 / (1.0 - t[neg]))
    return fa / (fa + fb)


class PlateauWindow(CompactWindow):
    """C-infinity window equal to 1 on [a2, b2] and 0 outside [a, b]."""

    def __init__(self, a: float, a2: float, b2: float, b: float):
        if not (a < a2 <= b2 < b):
            raise QGrowthError("plateau needs a < a2 <= b2 < b")
        super().__init__(a, b)
        self.a2 = float(a2)
        self.b2 = float(b2)

    def profile(self, t: np.ndarray) -> np.ndarray:
        x = 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
        rise = _smooth_step((x - self.a) / (self.a2 - self.a))
        fall = _smooth_step((self.b - x) / (self.b - self.b2))
        return rise * fall


class IdentityWindow(PlateauWindow):
    """x times a plateau: equals the identity function on [a2, b2]."""

    def profile(self, t: np.ndarray) -> np.ndarray:
        x = 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
        return x * super().profile(t)


# ---------------------------------------------------------------------------
# batched exponentials in value space (commutative models)

def _batched_block_l1(model: FiniteQG, values: np.ndarray) -> np.ndarray:
    """Fourier-algebra norms of a batch of commutative-model elements
    given by their value rows (shape (n, |G|))."""
    coefs = values @ model.recovery_matrix().T
    n = values.shape[0]
    out = np.zeros(n)
    col = 0
    for v in model.irrep_ids:
        d = model.dim(v)
        blocks = coefs[:, col:col + d * d].reshape(n, d, d)
        if d == 1:
            out += np.abs(blocks[:, 0, 0])
        else:
            out += np.linalg.svd(blocks, compute_uv=False).sum(axis=1)
        col += d * d
    return out


def _batch_exp_values(model: FiniteQG, f_values: np.ndarray, norm_f: float,
                      lams: np.ndarray, eps: float):
    """exp(i lam f) for every lam at once, in value space.

    The commutative product is pointwise on values, so the truncated
    series plus squarings act entrywise on an (n_lam, |G|) matrix; the
    same order/tail bookkeeping as banach_exp applies per row, with the
    row norms read back through the recovery matrix.  Returns (values,
    tails).
    """
    lams = np.asarray(lams, dtype=float)
    x = np.abs(lams) * norm_f
    xmax = float(x.max()) if x.size else 0.0
    if xmax == 0.0:
        return np.ones((lams.size, f_values.size), dtype=complex), \
            np.zeros(lams.size)
    m = max(0, math.ceil(math.log2(xmax))) if xmax > 1.0 else 0
    if _series_order(xmax, eps, EXP_TERM_CAP) >= EXP_TERM_CAP:
        raise TruncationCapError(EXP_TERM_CAP, float(np.abs(lams).max()), eps)
    inner_eps = min(eps * 0.5 ** (m + 2), 1e-18)
    y = x / 2 ** m
    order = _series_order(float(y.max()), inner_eps, EXP_TERM_CAP)
    z = 1j * np.outer(lams / 2 ** m, f_values)
    acc = np.ones_like(z)
    term = np.ones_like(z)
    scalar = np.ones_like(y)
    for k in range(1, order + 1):
        term = term * z / k
        acc = acc + term
        scalar = scalar * y / k
    tails = scalar * (y / (order + 2)) / np.maximum(1e-9,
                                                    1.0 - y / (order + 2))
    tails = tails + order * 8 * np.finfo(float).eps * np.exp(y)
    for _ in range(m):
        norms = _batched_block_l1(model, acc)
        defect = 64 * np.finfo(float).eps * norms * norms
        tails = tails * (2.0 * norms + tails) + defect
        acc = acc * acc
    return acc, tails


# ---------------------------------------------------------------------------
# the functional calculus phi{f}

@dataclass
class CalculusResult:
    """phi{f} in the unitization: scalar * 1 + element, with the
    achieved accuracy bound and the quadrature node count."""

    scalar: complex
    element: object
    bound: float
    nodes: int

    def fold(self, alg: BanachStarAlgebra):
        """The element scalar*unit + element of the (unital) algebra."""
        return alg.add(alg.scale(self.scalar, alg.unit()), self.element)


def functional_calculus(alg: BanachStarAlgebra, phi: CompactWindow, f,
                        eps: float = 1e-7, oversample: float = 1.25,
                        max_nodes: int = 200_000,
                        max_refinements: int = 3) -> CalculusResult:
    """phi{f} = (1/2pi) Integral exp(i lambda f) phi_hat(lambda) d lambda.

    Requires f self-adjoint.  The negative half-line is folded through
    exp(-i lambda f) = exp(i lambda f)^* and phi_hat(-l) = conj(phi_hat(l))
    (the windows are real valued).

    Quadrature: the integrand is band limited in lambda, with bandwidth
    at most (spectral bound of f) + max|supp phi| -- its Fourier
    transform in lambda is a spectral slice of phi shifted by the values
    of f.  A uniform grid of spacing pi / (oversample * bandwidth) is
    therefore exact by the sampling theorem, up to the truncation of the
    lambda range; the grid extends until the integrand bound stays below
    eps/50 over three consecutive blocks, and the step is halved until
    the result moves by less than eps/10 (normally the first check
    passes).  The achieved bound folds the exponential tails, the
    dropped outer tail, and the refinement change; a miss raises
    QuadratureError.

    On commutative models the exponentials for a whole block are
    evaluated together in value space (the product there is pointwise),
    which is the same truncated series in a different basis.
    """
    if not alg.is_self_adjoint(f):
        raise QGrowthError("functional calculus needs a self-adjoint element")

    batched = (isinstance(alg, CoefficientAlgebra)
               and alg.model.model == "commutative")
    if batched:
        from .fourier.elements import from_values, values_on_group

        model = alg.model
        f_values = values_on_group(model, f)
        f_values = f_values.real.astype(float)
        norm_f = l1_norm(f)
        spectral_bound = float(np.abs(f_values).max())
    else:
        spectral_bound = alg.norm(f)
    bandwidth = spectral_bound + max(abs(phi.a), abs(phi.b))
    bandwidth = max(bandwidth, 1e-9)

    def integrate(step: float):
        """Trapezoid over the uniform grid k*step, folded to k >= 0."""
        acc = None                  # value row (batched) or element
        scalar = 0.0
        bound = 0.0
        quiet = 0
        block = 32
        k0 = 1
        last_contrib = 0.0
        ftol = min(1e-12, eps * 1e-3)
        while True:
            lams = step * np.arange(k0, k0 + block, dtype=float)
            phat = phi.fourier(lams, tol=ftol)
            coefs = step * phat / (2.0 * math.pi)
            if batched:
                evals, tails = _batch_exp_values(model, f_values, norm_f,
                                                 lams, eps * 1e-2)
                vals = 2.0 * ((coefs[:, None] * evals).real).sum(axis=0)
                acc = vals if acc is None else acc + vals
                scalar += 2.0 * float(coefs.real.sum())
                norms = _batched_block_l1(model, evals)
                contrib = float((2.0 * np.abs(coefs) * (norms + tails)).sum())
                bound += float((2.0 * np.abs(coefs) * tails).sum())
            else:
                contrib = 0.0
                for lam, c in zip(lams, coefs):
                    el, trunc = banach_exp(alg, f, float(lam), eps * 1e-2,
                                           best_effort=True)
                    term = alg.add(alg.scale(c, el),
                                   alg.scale(np.conj(c), alg.star(el)))
                    acc = term if acc is None else alg.add(acc, term)
                    scalar += 2.0 * float(c.real)
                    contrib += 2 * abs(c) * (alg.norm(el) + trunc.tail)
                    bound += 2 * abs(c) * trunc.tail
            k0 += block
            last_contrib = contrib
            if contrib < eps / 50.0:
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            if k0 > max_nodes:
                raise QuadratureError(eps, max(bound, last_contrib))
        # k = 0 term (counted once), then the un-integrated tail proxy
        zero_coeff = float((step * phi.fourier(np.array([0.0]), tol=ftol)
                            / (2.0 * math.pi)).real[0])
        scalar += zero_coeff
        if batched:
            acc = acc + zero_coeff * np.ones_like(acc)
            element = from_values(model, acc.astype(complex))
        else:
            element = alg.add(acc, alg.scale(zero_coeff, alg.unit()))
        bound += 2.0 * last_contrib
        return element, scalar, bound, k0

    step = math.pi / (oversample * bandwidth)
    element, scalar, bound, nodes = integrate(step)
    change = math.inf
    for _ in range(max_refinements):
        refined, scalar2, bound2, nodes2 = integrate(step / 2.0)
        change = alg.norm(alg.add(refined, alg.scale(-1.0, element)))
        change = max(change, abs(scalar2 - scalar))
        element, scalar, bound, nodes = refined, scalar2, bound2, nodes2
        step /= 2.0
        if change < eps / 10.0:
            bound += change
            break
    else:
        raise QuadratureError(eps, bound + change)

    # subtract the unit component so that the element lives in the
    # non-unital part: scalar tracks (1/2pi) int phi_hat = phi(0)
    unit_coeff = scalar
    element = alg.add(element, alg.scale(-unit_coeff, alg.unit()))
    if bound > eps:
        raise QuadratureError(eps, bound)
    return CalculusResult(complex(unit_coeff), element, float(bound), nodes)


# ---------------------------------------------------------------------------
# representation checks

def matrix_function(hermitian: np.ndarray, fn) -> np.ndarray:
    """Continuous functional calculus of a Hermitian matrix via its
    eigendecomposition."""
    vals, vecs = np.linalg.eigh(hermitian)
    return (vecs * fn(vals)) @ vecs.conj().T


def calculus_representation_check(model: FiniteQG, phi: CompactWindow,
                                  f: QElement, pi, eps: float = 1e-7,
                                  rep_tol: float = 1e-8,
                                  rng=None) -> float:
    """Operator-norm residual ||pi(phi{f}) - phi(pi(f))||.

    pi must be a *-representation (verified on random elements first)
    and f self-adjoint; the right-hand side applies the window to the
    eigenvalues of pi(f).
    """
    from .fourier.representations import star_rep_residual

    rng = np.random.default_rng(0) if rng is None else rng
    defect = star_rep_residual(model, pi, rng)
    if defect > rep_tol:
        raise QGrowthError(
            f"pi is not a *-representation: residual {defect:.3e}")
    alg = CoefficientAlgebra(model)
    res = functional_calculus(alg, phi, f, eps=eps)
    lhs = res.scalar * np.eye(pi.dimension) + pi(res.element)
    pf = pi(f)
    if np.abs(pf - pf.conj().T).max() > 1e-9:
        raise QGrowthError("pi(f) is not Hermitian; f must be self-adjoint")
    rhs = matrix_function(0.5 * (pf + pf.conj().T), phi)
    return float(np.linalg.norm(lhs - rhs, 2))
