"""Sparse nonnegative-integer combinations of irreducibles.

A RepVector is an element of the positive cone of a representation ring:
a finitely supported map from irrep labels to multiplicities.  Python
integers keep the multiplicities exact; iterated tensor powers overflow
64 bits very quickly on rings of exponential growth.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class RepVector:
    """Finitely supported multiset of irreps with integer multiplicities."""

    __slots__ = ("_mults",)

    def __init__(self, mults: Mapping | Iterable | None = None):
        data = {}
        if mults:
            items = mults.items() if isinstance(mults, Mapping) else mults
            for label, m in items:
                m = int(m)
                if m < 0:
                    raise ValueError(f"negative multiplicity {m} for {label!r}")
                if m:
                    data[label] = data.get(label, 0) + m
        self._mults = data

    @classmethod
    def single(cls, label, mult: int = 1) -> "RepVector":
        return cls({label: mult})

    def mult(self, label) -> int:
        return self._mults.get(label, 0)

    def support(self):
        return self._mults.keys()

    def items(self):
        return self._mults.items()

    def copy_mults(self) -> dict:
        return dict(self._mults)

    def total(self) -> int:
        """Total number of irreducible summands, counted with multiplicity."""
        return sum(self._mults.values())

    def __len__(self) -> int:
        return len(self._mults)

    def __iter__(self) -> Iterator:
        return iter(self._mults)

    def __contains__(self, label) -> bool:
        return label in self._mults

    def __bool__(self) -> bool:
        return bool(self._mults)

    def __eq__(self, other) -> bool:
        if isinstance(other, RepVector):
            return self._mults == other._mults
        if isinstance(other, Mapping):
            return self._mults == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._mults.items()))

    def __add__(self, other: "RepVector") -> "RepVector":
        out = dict(self._mults)
        for label, m in other.items():
            out[label] = out.get(label, 0) + m
        return RepVector(out)

    def __rmul__(self, scalar: int) -> "RepVector":
        scalar = int(scalar)
        if scalar < 0:
            raise ValueError("RepVector multiplicities must stay nonnegative")
        if scalar == 0:
            return RepVector()
        return RepVector({label: scalar * m for label, m in self.items()})

    __mul__ = __rmul__

    def __repr__(self) -> str:
        inner = ", ".join(f"{label!r}: {m}" for label, m in sorted(
            self._mults.items(), key=lambda kv: repr(kv[0])))
        return f"RepVector({{{inner}}})"
