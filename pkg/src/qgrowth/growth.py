"""Ball enumeration, growth sequences b(u, n), and growth classification.

For a generating element u and a dimension function d,

    b(u, n) = sum of d(v)^2 over irreducibles v appearing in some
              tensor power u^(x)k with k <= n.

Supports are found by breadth-first search over fusion: a new irrep can
only appear by fusing a just-discovered irrep with a component of u, so
per-level frontiers suffice.  When the generator is self-conjugate the
fusion graph is undirected and only the last two levels need to be kept
in memory; duals of Z^d and of the Heisenberg group additionally get a
vectorised frontier expansion so that balls with tens of millions of
points stay cheap.  Both paths produce identical sequences (asserted in
the test suite on shared ranges).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EnumerationCapError, QGrowthError, StrictGrowthError
from .repvector import RepVector
from .rings.base import DimensionFunction, FusionRing, GroupDualRing, tensor, conjugate
from .rings.families import HeisenbergZ, LatticeZd

DEFAULT_CAP = 10_000_000


@dataclass
class Ball:
    """Irreps of tensor powers of a generator, with the first power at
    which each appears."""

    first_power: dict
    generator: RepVector
    radius: int

    def __len__(self):
        return len(self.first_power)

    def __contains__(self, label):
        return label in self.first_power

    def labels(self):
        return self.first_power.keys()


@dataclass
class GrowthSequence:
    values: list
    ring_spec: str
    generator: str
    dim_kind: str

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)


@dataclass
class GrowthReport:
    classification: str           # "Polynomial" | "Subexponential" | "Exponential"
    gamma: float | None
    rate: float | None
    stderr: float | None
    window: tuple
    residual: float | None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "gamma": self.gamma,
            "rate": self.rate,
            "stderr": self.stderr,
            "window": list(self.window),
            "residual": self.residual,
        }


def _support_symmetric(ring: FusionRing, labels) -> bool:
    label_set = set(labels)
    return {ring.irrep(x).conj for x in label_set} == label_set


def iter_ball_levels(ring: FusionRing, u: RepVector, n_max: int,
                     cap: int = DEFAULT_CAP, ordered: bool = True):
    """Yield the list of newly appearing irreps for each level 0..n_max.

    Level k holds the irreps whose first appearance is in u^(x)k.  With
    ``ordered`` each level comes out sorted in the ring's canonical
    order; callers that only aggregate over levels can skip the sort.
    A self-conjugate generator makes the fusion graph undirected, in
    which case only the last two levels are retained in memory.
    """
    support = sorted(u.support(), key=ring.sort_key)
    for s in support:
        ring.irrep(s)
    unit = ring.unit
    yield [unit]
    if n_max == 0 or not support:
        return
    total = 1
    fuse = ring._fuse_trusted
    # group duals fuse to a single irrep; skip the dict round trip
    mul = ring.group._mul_raw if isinstance(ring, GroupDualRing) else None
    if _support_symmetric(ring, support):
        prev: set = set()
        curr = {unit}
        frontier = [unit]
        for _k in range(1, n_max + 1):
            new = set()
            if mul is not None:
                for x in frontier:
                    for s in support:
                        w = mul(x, s)
                        if w not in curr and w not in prev:
                            new.add(w)
            else:
                for x in frontier:
                    for s in support:
                        for w in fuse(x, s):
                            if w not in curr and w not in prev:
                                new.add(w)
            total += len(new)
            if total > cap:
                raise EnumerationCapError(cap, f"ball of {ring.spec}")
            frontier = sorted(new, key=ring.sort_key) if ordered else list(new)
            yield frontier
            prev, curr = curr, new
    else:
        seen = {unit}
        frontier = [unit]
        for _k in range(1, n_max + 1):
            new = []
            if mul is not None:
                for x in frontier:
                    for s in support:
                        w = mul(x, s)
                        if w not in seen:
                            seen.add(w)
                            new.append(w)
            else:
                for x in frontier:
                    for s in support:
                        for w in fuse(x, s):
                            if w not in seen:
                                seen.add(w)
                                new.append(w)
            total += len(new)
            if total > cap:
                raise EnumerationCapError(cap, f"ball of {ring.spec}")
            frontier = sorted(new, key=ring.sort_key) if ordered else new
            yield frontier


def ball(ring: FusionRing, u: RepVector, n: int, cap: int = DEFAULT_CAP) -> Ball:
    """BFS ball of radius n in the fusion graph of u."""
    if n < 0:
        raise QGrowthError(f"ball radius must be >= 0, got {n}")
    first: dict = {}
    for k, level in enumerate(iter_ball_levels(ring, u, n, cap=cap)):
        for label in level:
            first[label] = k
    return Ball(first, u, n)


# ---------------------------------------------------------------------------
# vectorised level counts for lattice-like group duals

def _in_sorted(values: np.ndarray, table: np.ndarray) -> np.ndarray:
    if table.size == 0:
        return np.zeros(values.shape, dtype=bool)
    idx = np.searchsorted(table, values)
    ok = idx < table.size
    out = np.zeros(values.shape, dtype=bool)
    out[ok] = table[idx[ok]] == values[ok]
    return out


def _lattice_level_counts(group, support, n_max, cap):
    """New-point counts per level for Z^d or H3(Z) with symmetric support.

    Points live as packed mixed-radix integer keys the whole time: the
    per-coordinate bounds are sized so a generator step never carries
    across digit boundaries, so stepping is plain key arithmetic.  The
    symmetric generating set makes the fusion graph undirected, hence
    novelty at level k+1 is decided against levels k and k-1 alone.
    """
    if isinstance(group, LatticeZd):
        dim = group.d
        gens = [tuple(g) for g in support]
        max_step = max(abs(c) for g in gens for c in g)
        bounds = [n_max * max_step + 1] * dim
    elif isinstance(group, HeisenbergZ):
        dim = 3
        gens = [tuple(g) for g in support]
        ma = max(abs(g[0]) for g in gens)
        mb = max(abs(g[1]) for g in gens)
        mc = max(abs(g[2]) for g in gens)
        bounds = [n_max * ma + 1, n_max * mb + 1,
                  n_max * mc + (n_max * ma) * (n_max * mb) + 1]
    else:
        return None

    radix = [2 * b + 1 for b in bounds]
    key_range = math.prod(radix)
    if key_range >= 2 ** 62:
        return None
    dtype = np.int32 if key_range < 2 ** 31 else np.int64
    mult = [1] * dim
    for i in range(dim - 2, -1, -1):
        mult[i] = mult[i + 1] * radix[i + 1]

    if isinstance(group, LatticeZd):
        key_steps = [sum(c * m for c, m in zip(g, mult)) for g in gens]

        def expand(front):
            return np.concatenate([front + dtype(step) for step in key_steps])
    else:
        mult0, mult1 = mult[0], mult[1]
        ba = bounds[0]

        def expand(front):
            a = front // dtype(mult0) - dtype(ba)
            parts = []
            for ga, gb, gc in gens:
                inc = dtype(ga * mult0 + gb * mult1 + gc) + a * dtype(gb)
                parts.append(front + inc)
            return np.concatenate(parts)

    origin = sum(b * m for b, m in zip(bounds, mult))
    counts = [1]
    total = 1
    prev_keys = np.empty(0, dtype=dtype)
    curr_keys = np.array([origin], dtype=dtype)
    for _k in range(1, n_max + 1):
        cand = expand(curr_keys)
        cand.sort(kind="quicksort")
        if cand.size:
            keep = np.empty(cand.size, dtype=bool)
            keep[0] = True
            np.not_equal(cand[1:], cand[:-1], out=keep[1:])
            cand = cand[keep]
        fresh = ~(_in_sorted(cand, curr_keys) | _in_sorted(cand, prev_keys))
        new_keys = cand[fresh]
        total += int(new_keys.size)
        if total > cap:
            raise EnumerationCapError(cap, f"lattice ball of {group.name}")
        counts.append(int(new_keys.size))
        prev_keys, curr_keys = curr_keys, new_keys
    return counts


def _fast_level_counts(ring, u, n_max, cap):
    if not isinstance(ring, GroupDualRing):
        return None
    support = sorted(u.support(), key=ring.sort_key)
    if not _support_symmetric(ring, support):
        return None
    return _lattice_level_counts(ring.group, support, n_max, cap)


def growth_sequence(ring: FusionRing, u: RepVector, d: DimensionFunction,
                    n_max: int, cap: int = DEFAULT_CAP) -> GrowthSequence:
    """The sequence b(u, n) for n = 0..n_max.

    Exact integers for the vector dimension function (and for any ring
    whose qdims were declared as integers).
    """
    from .rings.registry import format_generator

    if n_max < 0:
        raise QGrowthError(f"n_max must be >= 0, got {n_max}")
    values = []
    if d.kind in ("vector", "quantum") and isinstance(ring, GroupDualRing):
        counts = _fast_level_counts(ring, u, n_max, cap)
        if counts is not None:
            # every irrep of a group dual has d(v) = 1
            acc = 0
            for c in counts:
                acc += c
                values.append(acc)
            return GrowthSequence(values, ring.spec,
                                  format_generator(ring, u), d.kind)
    acc = 0
    for level in iter_ball_levels(ring, u, n_max, cap=cap, ordered=False):
        for v in level:
            dv = d.value(ring, v)
            acc += dv * dv
        values.append(acc)
    return GrowthSequence(values, ring.spec, format_generator(ring, u), d.kind)


# ---------------------------------------------------------------------------
# classification and fitting

def _log_value(b) -> float:
    # math.log accepts arbitrary-precision integers directly
    return math.log(b)


def _lsq(xs, ys):
    """Least squares line fit; returns slope, intercept, rms residual,
    slope standard error."""
    m = len(xs)
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0:
        return 0.0, ybar, 0.0, float("inf")
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    rss = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    rms = math.sqrt(rss / m)
    stderr = math.sqrt(rss / (m - 2) / sxx) if m > 2 else float("inf")
    return slope, intercept, rms, stderr


def classify(seq: GrowthSequence, eps_rate: float = 0.01,
             fit_tol: float = 0.05, spread_tol: float = 0.05,
             min_len: int = 32) -> GrowthReport:
    """Classify a growth sequence as Polynomial, Subexponential, or
    Exponential.

    The exponential test looks at the tail of the consecutive ratios
    b(n)/b(n-1), which estimate lim b^(1/n): the tag is Exponential when
    the tail ratios all exceed 1 + eps_rate and the excess over 1 is
    stable (relative spread below spread_tol).  The n-th roots b^(1/n)
    themselves approach their limit only like exp(C/n), which would
    misclassify every polynomial example at reachable n; the ratio form
    of the same limit separates cubic growth from rate-3 exponential
    already at n of a few dozen.  Otherwise a least-squares line is fit
    to (log n, log b) on the upper half: Polynomial when the rms
    log-residual per point stays below fit_tol, else Subexponential.

    The reported Exponential rate is exp(tail slope of log b against n).
    """
    n_max = seq.n_max
    if n_max < min_len:
        raise QGrowthError(
            f"sequence too short to classify: n_max={n_max} < {min_len}")
    logs = [_log_value(b) for b in seq.values]

    tail_len = max(8, (n_max + 1) // 4)
    tail = list(range(max(1, n_max - tail_len + 1), n_max + 1))
    ratios = [math.exp(logs[n] - logs[n - 1]) for n in tail]
    excesses = [r - 1.0 for r in ratios]
    mean_excess = sum(excesses) / len(excesses)
    roots = [math.exp(logs[n] / n) for n in tail]

    exponential = min(ratios) > 1.0 + eps_rate
    if exponential and mean_excess > 0:
        spread = (max(excesses) - min(excesses)) / mean_excess
        exponential = spread < spread_tol
    if exponential:
        slope, _, _, stderr = _lsq(tail, [logs[n] for n in tail])
        rate = math.exp(slope)
        return GrowthReport("Exponential", None, rate, rate * stderr,
                            (tail[0], tail[-1]), None,
                            details={"tail_roots": (roots[0], roots[-1])})

    lo = max(1, n_max // 2)
    window = list(range(lo, n_max + 1))
    if len(window) < 4:
        raise QGrowthError("sequence too short for a log-log fit")
    xs = [math.log(n) for n in window]
    ys = [logs[n] for n in window]
    gamma, _, rms, stderr = _lsq(xs, ys)
    rate_est = math.exp(_lsq(window, ys)[0])
    if rms < fit_tol:
        return GrowthReport("Polynomial", gamma, rate_est, stderr,
                            (lo, n_max), rms)
    return GrowthReport("Subexponential", gamma, rate_est, stderr,
                        (lo, n_max), rms,
                        details={"note": "inconclusive at this n"})


def gk_fit(seq: GrowthSequence, window: float = 0.5,
           force: bool = False) -> tuple:
    """Least-squares growth exponent over the last ``window`` fraction.

    Returns (gamma, diagnostics).  Unless forced, requires the sequence
    to classify as Polynomial first.
    """
    n_max = seq.n_max
    if not force:
        tag = classify(seq, min_len=min(32, n_max)).classification
        if tag != "Polynomial":
            raise QGrowthError(
                f"gk_fit requires polynomial growth, classified {tag}; "
                "pass force=True to fit anyway")
    lo = max(1, int(math.ceil(n_max * (1.0 - window))))
    ns = list(range(lo, n_max + 1))
    if len(ns) < 8:
        raise QGrowthError(f"degenerate fit window [{lo}, {n_max}]")
    xs = [math.log(n) for n in ns]
    ys = [_log_value(seq.values[n]) for n in ns]
    gamma, intercept, rms, stderr = _lsq(xs, ys)
    diagnostics = {
        "stderr": stderr,
        "residual_rms": rms,
        "intercept": intercept,
        "window": (lo, n_max),
        "points": len(ns),
    }
    return gamma, diagnostics


@dataclass
class StrictGrowthResult:
    gamma: float
    c: float
    d: float
    ratio: float
    window: tuple


def strict_growth_constants(seq: GrowthSequence, gamma: float,
                            n_lo: int | None = None, n_hi: int | None = None,
                            ratio_bound: float = 1e3) -> StrictGrowthResult:
    """Constants c, d with c*n^gamma <= b(u,n) <= d*n^gamma on a window.

    c and d are the min and max of b(u,n)/n^gamma over [n_lo, n_hi]
    (default [8, n_max]).  Raises StrictGrowthError when d/c exceeds
    ratio_bound, which signals that the growth is not strict at this
    exponent on the sampled range.
    """
    if gamma <= 0:
        raise QGrowthError(f"strict growth needs gamma > 0, got {gamma}")
    n_max = seq.n_max
    lo = 8 if n_lo is None else max(1, n_lo)
    hi = n_max if n_hi is None else min(n_hi, n_max)
    if hi - lo < 4:
        raise QGrowthError(f"degenerate window [{lo}, {hi}]")
    c = float("inf")
    d = 0.0
    for n in range(lo, hi + 1):
        v = math.exp(_log_value(seq.values[n]) - gamma * math.log(n))
        c = min(c, v)
        d = max(d, v)
    ratio = d / c if c > 0 else float("inf")
    if not (0.0 < c <= d < float("inf")) or ratio >= ratio_bound:
        raise StrictGrowthError(gamma, c, d, ratio, ratio_bound)
    return StrictGrowthResult(gamma, c, d, ratio, (lo, hi))


# ---------------------------------------------------------------------------
# multiplicities of the trivial representation

def trivial_multiplicity(ring: FusionRing, u: RepVector, k: int,
                         cap: int = DEFAULT_CAP) -> int:
    """Multiplicity of the unit in u^(x)k, tracked with exact integers."""
    if k < 0:
        raise QGrowthError(f"tensor power must be >= 0, got {k}")
    power = RepVector.single(ring.unit)
    for _ in range(k):
        power = tensor(ring, power, u)
        if len(power) > cap:
            raise EnumerationCapError(cap, f"tensor powers in {ring.spec}")
    return power.mult(ring.unit)


@dataclass
class CoamenabilityReport:
    """The sequence m_(2k)(1)^(1/2k) and its distance to dim(u)."""

    roots: list
    running_max: list
    dim_u: float
    gap: float

    @property
    def k_max(self) -> int:
        return len(self.roots)


def coamenability_witness(ring: FusionRing, u: RepVector, k_max: int,
                          cap: int = DEFAULT_CAP) -> CoamenabilityReport:
    """Roots m_(2k)(1)^(1/2k) for k = 1..k_max; these approach dim(u)
    from below exactly when the growth is subexponential.

    Requires u to be self-conjugate (as a representation, u = conj u).
    """
    if k_max < 1:
        raise QGrowthError(f"k_max must be >= 1, got {k_max}")
    if conjugate(ring, u) != u:
        raise QGrowthError("coamenability witness requires a self-conjugate "
                           "generator")
    unit = ring.unit
    power = RepVector.single(unit)
    roots = []
    running = []
    best = 0.0
    for k in range(1, k_max + 1):
        power = tensor(ring, power, u)
        power = tensor(ring, power, u)
        if len(power) > cap:
            raise EnumerationCapError(cap, f"tensor powers in {ring.spec}")
        m = power.mult(unit)
        root = math.exp(_log_value(m) / (2 * k)) if m > 0 else 0.0
        roots.append(root)
        best = max(best, root)
        running.append(best)
    dim_u = float(sum(m * ring.irrep(v).dim for v, m in u.items()))
    return CoamenabilityReport(roots, running, dim_u, dim_u - best)
