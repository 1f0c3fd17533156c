"""Core fusion-ring data model.

A fusion ring is the positive part of a representation ring: a set of
irrep labels with a unit, a conjugation, integer fusion multiplicities
N(u,v -> w), and dimension data.  Rings may be infinite; labels are then
produced lazily in a pinned canonical order so that every downstream
enumeration is reproducible.

Vector dimensions and fusion multiplicities are exact Python integers.
Quantum dimensions are stored as floats except where they are exactly
integral (Kac-type builtins keep ``qdim`` as the same integer as ``dim``
so that equality tests stay exact).
"""

from __future__ import annotations

import itertools
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from ..errors import RingValidationError, UnknownIrrepError
from ..repvector import RepVector


@dataclass(frozen=True)
class IrrepData:
    """Dimension and conjugation data attached to one irrep label."""

    id: object
    dim: int
    qdim: float | int
    conj: object


class FusionRing(ABC):
    """Abstract fusion ring.

    Concrete rings provide the unit, per-irrep data, sparse fusion, a
    canonical enumeration of labels, and string parsing/formatting for
    the CLI and file formats.  All operations are pure; lazily built
    tables are append-only and guarded, so rings are safe to share
    across threads once constructed.
    """

    spec: str = ""
    is_finite: bool = False
    #: declared Kac flag; ``is_kac`` re-derives the property from data
    declared_kac: bool | None = None

    @property
    @abstractmethod
    def unit(self):
        """Label of the trivial representation."""

    @abstractmethod
    def irrep(self, label) -> IrrepData:
        """Data for one irrep; raises UnknownIrrepError for foreign labels."""

    @abstractmethod
    def fuse(self, u, v) -> dict:
        """Sparse decomposition of u (x) v as {label: multiplicity}."""

    def _fuse_trusted(self, u, v) -> dict:
        """fuse() without membership validation, for hot loops whose
        inputs are known to be ring members (BFS frontiers)."""
        return self.fuse(u, v)

    @abstractmethod
    def irreps(self) -> Iterator:
        """All labels in canonical order (an infinite iterator for
        infinite families)."""

    @abstractmethod
    def sort_key(self, label):
        """Key realising the canonical total order on labels."""

    def format_id(self, label) -> str:
        return str(label)

    def parse_id(self, text: str):
        raise UnknownIrrepError(text, self.spec)

    def size(self) -> int | None:
        """Number of irreps for finite rings, None otherwise."""
        return None

    def contains(self, label) -> bool:
        try:
            self.irrep(label)
            return True
        except UnknownIrrepError:
            return False

    def first_irreps(self, count: int) -> list:
        return list(itertools.islice(self.irreps(), count))

    def dim(self, label) -> int:
        return self.irrep(label).dim

    def qdim(self, label):
        return self.irrep(label).qdim

    def conj(self, label):
        return self.irrep(label).conj

    def rep_vector(self, items) -> RepVector:
        """Build a RepVector after checking membership of every label."""
        vec = RepVector(items)
        for label in vec:
            self.irrep(label)
        return vec

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec!r}>"


def tensor(ring: FusionRing, a: RepVector, b: RepVector) -> RepVector:
    """Bilinear extension of fusion to nonnegative combinations."""
    out: dict = {}
    for u, mu in a.items():
        ring.irrep(u)
        for v, mv in b.items():
            coeff = mu * mv
            for w, m in ring.fuse(u, v).items():
                out[w] = out.get(w, 0) + coeff * m
    return RepVector(out)


def conjugate(ring: FusionRing, a: RepVector) -> RepVector:
    """Apply the conjugation componentwise, preserving multiplicities."""
    out: dict = {}
    for u, m in a.items():
        c = ring.irrep(u).conj
        out[c] = out.get(c, 0) + m
    return RepVector(out)


class DimensionFunction:
    """Positive multiplicative weight on irreps.

    ``vector`` reads the Hilbert-space dimension (exact integers),
    ``quantum`` the quantum dimension, and ``custom`` an explicit table.
    """

    def __init__(self, kind: str, table: Mapping | None = None,
                 fn: Callable | None = None):
        if kind not in ("vector", "quantum", "custom"):
            raise ValueError(f"unknown dimension-function kind {kind!r}")
        self.kind = kind
        self._table = dict(table) if table is not None else None
        self._fn = fn

    def value(self, ring: FusionRing, label):
        if self.kind == "vector":
            return ring.irrep(label).dim
        if self.kind == "quantum":
            return ring.irrep(label).qdim
        if self._table is not None:
            try:
                return self._table[label]
            except KeyError:
                raise UnknownIrrepError(label, "custom dimension table") from None
        return self._fn(label)

    def of(self, ring: FusionRing, a: RepVector):
        return sum(m * self.value(ring, u) for u, m in a.items())

    def __repr__(self):
        return f"DimensionFunction({self.kind!r})"


def vector_dim() -> DimensionFunction:
    return DimensionFunction("vector")


def quantum_dim() -> DimensionFunction:
    return DimensionFunction("quantum")


def custom_dim(table: Mapping) -> DimensionFunction:
    return DimensionFunction("custom", table=table)


class TableRing(FusionRing):
    """Finite ring given by explicit tables (file rings, group duals).

    Canonical order is declaration order.  Fusion must be total: a
    missing (u, v) entry is a load-time error, reported by the file
    loader before the ring is handed out.
    """

    is_finite = True

    def __init__(self, unit, irreps: list[IrrepData], fusion: Mapping,
                 spec: str = "table"):
        self.spec = spec
        self._unit = unit
        self._data = {d.id: d for d in irreps}
        self._order = {d.id: i for i, d in enumerate(irreps)}
        self._labels = [d.id for d in irreps]
        if unit not in self._data:
            raise RingValidationError(f"unit {unit!r} missing from irrep list")
        self._fusion = {k: dict(v) for k, v in fusion.items()}
        missing = [(u, v) for u in self._labels for v in self._labels
                   if (u, v) not in self._fusion]
        if missing:
            raise RingValidationError(
                f"fusion table is not total; first missing pair {missing[0]!r}")

    @property
    def unit(self):
        return self._unit

    def irrep(self, label) -> IrrepData:
        try:
            return self._data[label]
        except KeyError:
            raise UnknownIrrepError(label, self.spec) from None

    def fuse(self, u, v) -> dict:
        self.irrep(u)
        self.irrep(v)
        return dict(self._fusion[(u, v)])

    def _fuse_trusted(self, u, v) -> dict:
        return self._fusion[(u, v)]

    def irreps(self) -> Iterator:
        return iter(self._labels)

    def sort_key(self, label):
        try:
            return self._order[label]
        except KeyError:
            raise UnknownIrrepError(label, self.spec) from None

    def parse_id(self, text: str):
        if text in self._data:
            return text
        raise UnknownIrrepError(text, self.spec)

    def size(self) -> int:
        return len(self._labels)


class DiscreteGroup(ABC):
    """Normal-form presentation of a (possibly infinite) discrete group.

    The dual compact quantum group of such a group has the group itself
    as its set of irreps, all one dimensional, with fusion given by the
    group law and conjugation by inversion.
    """

    name = "group"
    is_finite = False

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def mul(self, x, y):
        ...

    def _mul_raw(self, x, y):
        """mul() without input validation, for BFS-style hot loops."""
        return self.mul(x, y)

    @abstractmethod
    def inv(self, x):
        ...

    @abstractmethod
    def elements(self) -> Iterator:
        """Canonical enumeration, identity first."""

    @abstractmethod
    def sort_key(self, x):
        ...

    def format_el(self, x) -> str:
        return str(x)

    def parse_el(self, text: str):
        raise ValueError(f"cannot parse {text!r} as an element of {self.name}")

    def size(self) -> int | None:
        return None


class GroupDualRing(FusionRing):
    """Fusion ring of the dual of a discrete group: irreps are group
    elements, every dimension is 1, fusion is the group law."""

    declared_kac = True

    def __init__(self, group: DiscreteGroup, spec: str | None = None):
        self.group = group
        self.spec = spec if spec is not None else group.name
        self.is_finite = group.is_finite

    @property
    def unit(self):
        return self.group.identity

    def irrep(self, label) -> IrrepData:
        if not self._member(label):
            raise UnknownIrrepError(label, self.spec)
        return IrrepData(label, 1, 1, self.group.inv(label))

    def _member(self, label) -> bool:
        try:
            self.group.inv(label)
            return True
        except (ValueError, TypeError, KeyError, IndexError):
            return False

    def fuse(self, u, v) -> dict:
        self.irrep(u)
        self.irrep(v)
        return {self.group.mul(u, v): 1}

    def _fuse_trusted(self, u, v) -> dict:
        return {self.group._mul_raw(u, v): 1}

    def irreps(self) -> Iterator:
        return self.group.elements()

    def sort_key(self, label):
        return self.group.sort_key(label)

    def format_id(self, label) -> str:
        return self.group.format_el(label)

    def parse_id(self, text: str):
        try:
            return self.group.parse_el(text)
        except ValueError as exc:
            raise UnknownIrrepError(text, self.spec) from exc

    def size(self) -> int | None:
        return self.group.size()


class LazyQdimTable:
    """Append-only cache for quantum-dimension recursions.

    Guarded by a lock so concurrent readers extending the table agree on
    the values they observe.
    """

    def __init__(self, seed: list, step: Callable):
        self._values = list(seed)
        self._step = step
        self._lock = threading.Lock()

    def __getitem__(self, n: int):
        if n < len(self._values):
            return self._values[n]
        with self._lock:
            while len(self._values) <= n:
                self._values.append(self._step(self._values))
            return self._values[n]
