"""Structural validation of fusion rings and dimension functions.

Violations are data, not exceptions: validate_ring returns a report
listing each broken invariant with a witness, so file-based rings can
be inspected rather than rejected wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import QGrowthError
from ..repvector import RepVector
from .base import DimensionFunction, FusionRing, tensor

REL_TOL = 1e-12


@dataclass
class Violation:
    rule: str
    witness: tuple
    detail: str

    def __str__(self):
        return f"{self.rule} at {self.witness}: {self.detail}"


@dataclass
class ValidationReport:
    ring_spec: str
    checked_irreps: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule, witness, detail):
        self.violations.append(Violation(rule, witness, str(detail)))

    def __str__(self):
        if self.ok:
            return (f"ring {self.ring_spec}: OK "
                    f"({self.checked_irreps} irreps sampled)")
        lines = [f"ring {self.ring_spec}: {len(self.violations)} violation(s)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


def _close(x, y, rel=REL_TOL) -> bool:
    if isinstance(x, int) and isinstance(y, int):
        return x == y
    scale = max(abs(x), abs(y), 1.0)
    return abs(x - y) <= rel * scale


def validate_ring(ring: FusionRing, sample_budget: int = 20) -> ValidationReport:
    """Assert the ring axioms on the first sample_budget irreps.

    Checks: per-irrep data sanity, unit laws, Frobenius reciprocity
    (including N(u,v -> unit) = delta(v, conj u)), associativity on a
    deterministic sample of triples, and multiplicativity of both
    dimension functions on all sampled pairs.
    """
    sample = ring.first_irreps(sample_budget)
    report = ValidationReport(ring.spec, len(sample))
    unit = ring.unit

    unit_data = ring.irrep(unit)
    if unit_data.dim != 1 or not _close(unit_data.qdim, 1):
        report.add("unit-dimension", (unit,),
                   f"dim={unit_data.dim}, qdim={unit_data.qdim}")
    if unit_data.conj != unit:
        report.add("unit-conjugate", (unit,), f"conj={unit_data.conj!r}")

    for u in sample:
        data = ring.irrep(u)
        if data.dim < 1:
            report.add("dim-positive", (u,), f"dim={data.dim}")
        if data.qdim < data.dim and not _close(data.qdim, data.dim):
            report.add("qdim-lower-bound", (u,),
                       f"qdim={data.qdim} < dim={data.dim}")
        cdata = ring.irrep(data.conj)
        if cdata.conj != u:
            report.add("conj-involution", (u,), f"conj(conj)={cdata.conj!r}")
        if cdata.dim != data.dim or not _close(cdata.qdim, data.qdim):
            report.add("conj-dimension", (u,),
                       f"dim/qdim of conjugate differ: {cdata}")

    for u in sample:
        if ring.fuse(unit, u) != {u: 1}:
            report.add("unit-left", (unit, u), ring.fuse(unit, u))
        if ring.fuse(u, unit) != {u: 1}:
            report.add("unit-right", (u, unit), ring.fuse(u, unit))

    for u in sample:
        ubar = ring.irrep(u).conj
        for v in sample:
            nuv = ring.fuse(u, v)
            # N(u,v -> unit) = delta(v, conj u)
            expected_unit = 1 if v == ubar else 0
            if nuv.get(unit, 0) != expected_unit:
                report.add("frobenius-unit", (u, v),
                           f"N(u,v->1)={nuv.get(unit, 0)}, "
                           f"conj(u)={ring.format_id(ubar)}")
            for w, m in nuv.items():
                m2 = ring.fuse(ubar, w).get(v, 0)
                m3 = ring.fuse(w, ring.irrep(v).conj).get(u, 0)
                if m != m2 or m != m3:
                    report.add("frobenius", (u, v, w), f"{m} vs {m2} vs {m3}")

    for d_kind in ("vector", "quantum"):
        dfn = DimensionFunction(d_kind)
        for u in sample:
            du = dfn.value(ring, u)
            for v in sample:
                dv = dfn.value(ring, v)
                total = sum(m * dfn.value(ring, w)
                            for w, m in ring.fuse(u, v).items())
                if not _close(total, du * dv):
                    report.add(f"multiplicativity-{d_kind}", (u, v),
                               f"{total} != {du}*{dv}")

    # associativity on a pinned sample of triples: exhaustive over a small
    # prefix, plus the diagonal of the full sample
    prefix = sample[:min(len(sample), 6)]
    triples = [(u, v, w) for u in prefix for v in prefix for w in prefix]
    triples += [(u, u, u) for u in sample]
    for u, v, w in triples:
        lhs = tensor(ring, RepVector(ring.fuse(u, v)), RepVector.single(w))
        rhs = tensor(ring, RepVector.single(u), RepVector(ring.fuse(v, w)))
        if lhs != rhs:
            report.add("associativity", (u, v, w), "fusion is not associative")
            break

    return report


def is_kac(ring: FusionRing, gens: RepVector, n: int,
           rel_tol: float = REL_TOL, cap: int | None = None) -> bool:
    """True iff qdim == dim on every irrep of ball(gens, n).

    Exact comparison when both values are integers, else within rel_tol
    relative.
    """
    from ..growth import ball  # deferred: growth builds on rings

    kwargs = {} if cap is None else {"cap": cap}
    for v in ball(ring, gens, n, **kwargs).first_power:
        data = ring.irrep(v)
        if isinstance(data.qdim, int):
            if data.qdim != data.dim:
                return False
        elif not _close(data.qdim, float(data.dim), rel_tol):
            return False
    return True


@dataclass
class DominanceReport:
    ring_spec: str
    n_max: int
    checked: int
    min_margin: float
    violation: tuple | None   # (label, d_value, d_prime_value) or None

    @property
    def ok(self) -> bool:
        return self.violation is None


def dominance_check(ring: FusionRing, d: DimensionFunction,
                    d_prime: DimensionFunction, u: RepVector,
                    n_max: int, rel_tol: float = REL_TOL,
                    cap: int | None = None) -> DominanceReport:
    """Check d'(v) >= d(v) on ball(u, n_max).

    Preconditions enforced here: d must have subexponential growth on
    this ball (a dimension function of subexponential growth is minimal
    among all dimension functions), and d' must actually be a dimension
    function, i.e. multiplicative on sampled fusion products.  Either
    failure raises QGrowthError rather than producing a vacuous pass.
    """
    from ..growth import ball, classify, growth_sequence

    kwargs = {} if cap is None else {"cap": cap}
    seq = growth_sequence(ring, u, d, n_max, **kwargs)
    tag = classify(seq, min_len=min(32, n_max)).classification
    if tag == "Exponential":
        raise QGrowthError(
            "dominance_check precondition: d has exponential growth on "
            f"ball({n_max}) of {ring.spec}")

    the_ball = ball(ring, u, n_max, **kwargs)
    labels = sorted(the_ball.first_power, key=ring.sort_key)

    # d' must be multiplicative before any comparison is meaningful
    probe = labels[:min(len(labels), 12)]
    for x in probe:
        for y in probe:
            try:
                total = sum(m * d_prime.value(ring, w)
                            for w, m in ring.fuse(x, y).items())
            except QGrowthError:
                raise
            lhs = d_prime.value(ring, x) * d_prime.value(ring, y)
            if not _close(total, lhs, 1e-9):
                raise QGrowthError(
                    f"d' is not multiplicative at ({ring.format_id(x)}, "
                    f"{ring.format_id(y)}): {total} != {lhs}")

    min_margin = float("inf")
    violation = None
    for v in labels:
        dv = d.value(ring, v)
        dpv = d_prime.value(ring, v)
        margin = dpv - dv
        if margin < min_margin:
            min_margin = margin
        if dpv < dv and not _close(dpv, dv, rel_tol):
            violation = (v, dv, dpv)
            break
    return DominanceReport(ring.spec, n_max, len(labels),
                           float(min_margin), violation)
