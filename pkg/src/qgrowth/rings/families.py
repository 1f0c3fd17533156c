"""Builtin ring families and theructural constructors (products, subrings).

The Chebyshev-type families (su2, so3, su2q, ao) share SU(2) fusion
combinatorics on integer labels.  Group-dual families wrap a normal
form for the group: lattice points for Z^d, reduced words for free
groups, triples (a, b, c) for the integer Heisenberg group with
(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
"""

from __future__ import annotations

import itertools
from typing import Iterator

from ..errors import EnumerationCapError, SpecError, UnknownIrrepError
from ..repvector import RepVector
from .base import (
    DiscreteGroup,
    FusionRing,
    GroupDualRing,
    IrrepData,
    LazyQdimTable,
)

DEFAULT_CLOSURE_CAP = 100_000


class _IndexRing(FusionRing):
    """Base for rings whose irreps are the nonnegative integers with
    SU(2)-type fusion m (x) n = |m-n|, |m-n|+step, ..., m+n."""

    fusion_step = 2

    @property
    def unit(self):
        return 0

    def _check(self, label):
        if not isinstance(label, int) or isinstance(label, bool) or label < 0:
            raise UnknownIrrepError(label, self.spec)

    def fuse(self, u, v) -> dict:
        self._check(u)
        self._check(v)
        return self._fuse_trusted(u, v)

    def _fuse_trusted(self, u, v) -> dict:
        return {w: 1 for w in range(abs(u - v), u + v + 1, self.fusion_step)}

    def irreps(self) -> Iterator[int]:
        return itertools.count(0)

    def sort_key(self, label):
        self._check(label)
        return label

    def format_id(self, label) -> str:
        return f"u{label}"

    def parse_id(self, text: str) -> int:
        raw = text[1:] if text[:1] == "u" else text
        try:
            n = int(raw)
        except ValueError:
            raise UnknownIrrepError(text, self.spec) from None
        if n < 0:
            raise UnknownIrrepError(text, self.spec)
        return n


class SU2Ring(_IndexRing):
    """Representation ring of SU(2): label n has dimension n+1."""

    spec = "su2"
    declared_kac = True

    def irrep(self, label) -> IrrepData:
        self._check(label)
        return IrrepData(label, label + 1, label + 1, label)


class SO3Ring(_IndexRing):
    """Representation ring of SO(3): integer spins, dim(l) = 2l+1."""

    spec = "so3"
    declared_kac = True
    fusion_step = 1

    def irrep(self, label) -> IrrepData:
        self._check(label)
        return IrrepData(label, 2 * label + 1, 2 * label + 1, label)


class SU2qRing(_IndexRing):
    """SU_q(2) for 0 < q < 1: SU(2) fusion, quantum dimensions
    [n+1]_q = (q^(n+1) - q^-(n+1)) / (q - 1/q).

    The table is built by the recursion [2]_q [n+1]_q = [n]_q + [n+2]_q,
    which is stable for small q where the closed form cancels.
    """

    declared_kac = False

    def __init__(self, q: float):
        if not (0.0 < q < 1.0):
            raise SpecError(f"su2q requires q in (0,1), got {q}")
        self.q = q
        self.spec = f"su2q:q={q!r}"
        two_q = q + 1.0 / q
        self._qdims = LazyQdimTable(
            [1.0, two_q], lambda vals: two_q * vals[-1] - vals[-2])

    def irrep(self, label) -> IrrepData:
        self._check(label)
        return IrrepData(label, label + 1, self._qdims[label], label)


class AORing(_IndexRing):
    """Free orthogonal quantum group with SU(2) fusion and dimensions
    d_0 = 1, d_1 = n, d_(k+1) = n*d_k - d_(k-1).

    Ships in the Kac normalisation, qdim = dim.
    """

    declared_kac = True

    def __init__(self, n: int):
        if n < 2:
            raise SpecError(f"ao requires n >= 2, got {n}")
        self.n = n
        self.spec = f"ao:n={n}"
        self._dims = LazyQdimTable([1, n], lambda vals: n * vals[-1] - vals[-2])

    def irrep(self, label) -> IrrepData:
        self._check(label)
        d = self._dims[label]
        return IrrepData(label, d, d, label)


class LatticeZd(DiscreteGroup):
    """Z^d in coordinates; canonical order by sup-norm shells then lex."""

    def __init__(self, d: int):
        if d < 1:
            raise SpecError(f"lattice rank must be >= 1, got {d}")
        self.d = d
        self.name = f"Z^{d}"

    @property
    def identity(self):
        return (0,) * self.d

    def _check(self, x):
        if (not isinstance(x, tuple) or len(x) != self.d
                or not all(isinstance(c, int) for c in x)):
            raise ValueError(f"{x!r} is not a point of {self.name}")

    def mul(self, x, y):
        self._check(x)
        self._check(y)
        return tuple(a + b for a, b in zip(x, y))

    def _mul_raw(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        self._check(x)
        return tuple(-a for a in x)

    def elements(self) -> Iterator:
        yield self.identity
        for r in itertools.count(1):
            shell = [p for p in itertools.product(range(-r, r + 1), repeat=self.d)
                     if max(abs(c) for c in p) == r]
            shell.sort()
            yield from shell

    def sort_key(self, x):
        self._check(x)
        return (max(abs(c) for c in x), x)

    def format_el(self, x) -> str:
        if self.d == 1:
            return str(x[0])
        return "(" + ",".join(str(c) for c in x) + ")"

    def parse_el(self, text: str):
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        parts = [p.strip() for p in body.split(",")] if body else []
        try:
            coords = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"bad lattice point {text!r}") from None
        if len(coords) != self.d:
            raise ValueError(f"{text!r} has rank {len(coords)}, expected {self.d}")
        return coords


class FreeGroup(DiscreteGroup):
    """Free group on k generators; elements are reduced words.

    Words are strings over 'a'..'z' with inverses 'A'..'Z'; canonical
    order is by length, then letterwise with each inverse directly
    after its generator.
    """

    def __init__(self, k: int):
        if k < 1:
            raise SpecError(f"free group rank must be >= 1, got {k}")
        if k > 26:
            raise SpecError("free group rank capped at 26 (one letter each)")
        self.k = k
        self.name = f"F_{k}"
        gens = [chr(ord("a") + i) for i in range(k)]
        self.letters = []
        for g in gens:
            self.letters.append(g)
            self.letters.append(g.upper())
        self._rank = {c: i for i, c in enumerate(self.letters)}
        self._inv_letter = {c: c.swapcase() for c in self.letters}

    @property
    def identity(self):
        return ""

    def _check(self, w):
        if not isinstance(w, str):
            raise ValueError(f"{w!r} is not a word in {self.name}")
        prev = ""
        for c in w:
            if c not in self._rank:
                raise ValueError(f"letter {c!r} is not a generator of {self.name}")
            if prev and prev == c.swapcase():
                raise ValueError(f"word {w!r} is not reduced")
            prev = c

    def mul(self, x, y):
        self._check(x)
        self._check(y)
        return self._mul_raw(x, y)

    def _mul_raw(self, x, y):
        inv = self._inv_letter
        i = len(x)
        j = 0
        ly = len(y)
        while i > 0 and j < ly and x[i - 1] == inv[y[j]]:
            i -= 1
            j += 1
        return x[:i] + y[j:]

    def inv(self, x):
        self._check(x)
        return x[::-1].swapcase()

    def elements(self) -> Iterator[str]:
        frontier = [""]
        yield ""
        while True:
            nxt = []
            for w in frontier:
                for c in self.letters:
                    if w and w[-1] == c.swapcase():
                        continue
                    nxt.append(w + c)
            nxt.sort(key=self._word_key)
            yield from nxt
            frontier = nxt

    def _word_key(self, w):
        return tuple(self._rank[c] for c in w)

    def sort_key(self, w):
        self._check(w)
        return (len(w), self._word_key(w))

    def format_el(self, w) -> str:
        return w if w else "e"

    def parse_el(self, text: str):
        w = "" if text in ("e", "1", "") else text
        self._check(w)
        return w


class HeisenbergZ(DiscreteGroup):
    """Integer Heisenberg group H3(Z) in normal form (a, b, c)."""

    name = "H3(Z)"

    @property
    def identity(self):
        return (0, 0, 0)

    def _check(self, x):
        if (not isinstance(x, tuple) or len(x) != 3
                or not all(isinstance(c, int) for c in x)):
            raise ValueError(f"{x!r} is not a Heisenberg triple")

    def mul(self, x, y):
        self._check(x)
        self._check(y)
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def _mul_raw(self, x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inv(self, x):
        self._check(x)
        a, b, c = x
        return (-a, -b, a * b - c)

    def elements(self) -> Iterator:
        yield self.identity
        for r in itertools.count(1):
            shell = [p for p in itertools.product(range(-r, r + 1), repeat=3)
                     if max(abs(c) for c in p) == r]
            shell.sort()
            yield from shell

    def sort_key(self, x):
        self._check(x)
        return (max(abs(c) for c in x), x)

    def format_el(self, x) -> str:
        return "(" + ",".join(str(c) for c in x) + ")"

    def parse_el(self, text: str):
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        try:
            coords = tuple(int(p) for p in body.split(","))
        except ValueError:
            raise ValueError(f"bad Heisenberg triple {text!r}") from None
        if len(coords) != 3:
            raise ValueError(f"{text!r} is not a triple")
        return coords


class FiniteGroupTable(DiscreteGroup):
    """Finite group presented by named elements and a multiplication
    table, row-major: table[i][j] is the index of g_i g_j."""

    is_finite = True

    def __init__(self, elements: list[str], table: list[list[int]],
                 name: str = "finite group"):
        n = len(elements)
        self.name = name
        if len(set(elements)) != n:
            raise SpecError("duplicate element names in group file")
        if len(table) != n or any(len(row) != n for row in table):
            raise SpecError(f"multiplication table must be {n}x{n}")
        for row in table:
            for v in row:
                if not 0 <= v < n:
                    raise SpecError(f"table index {v} out of range")
        self._elements = list(elements)
        self._index = {e: i for i, e in enumerate(elements)}
        self._table = [list(row) for row in table]
        ident = [i for i in range(n)
                 if all(self._table[i][j] == j and self._table[j][i] == j
                        for j in range(n))]
        if len(ident) != 1:
            raise SpecError("multiplication table has no unique identity")
        self._identity = self._elements[ident[0]]
        self._inv = {}
        e = ident[0]
        for i in range(n):
            js = [j for j in range(n)
                  if self._table[i][j] == e and self._table[j][i] == e]
            if len(js) != 1:
                raise SpecError(f"element {elements[i]!r} has no unique inverse")
            self._inv[self._elements[i]] = self._elements[js[0]]

    @property
    def identity(self):
        return self._identity

    def _idx(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValueError(f"{x!r} is not an element of {self.name}") from None

    def mul(self, x, y):
        return self._elements[self._table[self._idx(x)][self._idx(y)]]

    def inv(self, x):
        self._idx(x)
        return self._inv[x]

    def elements(self) -> Iterator[str]:
        return iter(self._elements)

    def mult_table(self) -> list[list[int]]:
        return [list(row) for row in self._table]

    def sort_key(self, x):
        return self._idx(x)

    def parse_el(self, text: str):
        self._idx(text)
        return text

    def size(self) -> int:
        return len(self._elements)


class TorusDualRing(GroupDualRing):
    """Dual of Z^d, i.e. the representation ring of the d-torus."""

    def __init__(self, d: int):
        super().__init__(LatticeZd(d), spec=f"torus:d={d}")
        self.d = d


class FreeDualRing(GroupDualRing):
    """Dual of the free group F_k."""

    def __init__(self, k: int):
        super().__init__(FreeGroup(k), spec=f"free:k={k}")
        self.k = k


class HeisenbergDualRing(GroupDualRing):
    """Dual of the integer Heisenberg group."""

    def __init__(self):
        super().__init__(HeisenbergZ(), spec="heisenberg")


class ProductRing(FusionRing):
    """Direct product of two rings: labels are pairs, everything is
    componentwise, dimensions multiply.

    Canonical enumeration runs over antidiagonals of the two factor
    enumerations; the sort key is the lexicographic pair of factor keys.
    """

    def __init__(self, left: FusionRing, right: FusionRing):
        self.left = left
        self.right = right
        self.spec = f"product:{left.spec}+{right.spec}"
        self.is_finite = left.is_finite and right.is_finite
        if left.declared_kac and right.declared_kac:
            self.declared_kac = True

    @property
    def unit(self):
        return (self.left.unit, self.right.unit)

    def _split(self, label):
        if not isinstance(label, tuple) or len(label) != 2:
            raise UnknownIrrepError(label, self.spec)
        return label

    def irrep(self, label) -> IrrepData:
        a, b = self._split(label)
        da = self.left.irrep(a)
        db = self.right.irrep(b)
        return IrrepData(label, da.dim * db.dim, da.qdim * db.qdim,
                         (da.conj, db.conj))

    def fuse(self, u, v) -> dict:
        ua, ub = self._split(u)
        va, vb = self._split(v)
        fa = self.left.fuse(ua, va)
        fb = self.right.fuse(ub, vb)
        return {(wa, wb): ma * mb
                for wa, ma in fa.items() for wb, mb in fb.items()}

    def _fuse_trusted(self, u, v) -> dict:
        fa = self.left._fuse_trusted(u[0], v[0])
        fb = self.right._fuse_trusted(u[1], v[1])
        return {(wa, wb): ma * mb
                for wa, ma in fa.items() for wb, mb in fb.items()}

    def irreps(self) -> Iterator:
        left_cache: list = []
        right_cache: list = []
        left_iter = self.left.irreps()
        right_iter = self.right.irreps()
        left_done = right_done = False
        for s in itertools.count(0):
            while not left_done and len(left_cache) <= s:
                try:
                    left_cache.append(next(left_iter))
                except StopIteration:
                    left_done = True
            while not right_done and len(right_cache) <= s:
                try:
                    right_cache.append(next(right_iter))
                except StopIteration:
                    right_done = True
            if left_done and right_done and s > len(left_cache) + len(right_cache) - 2:
                return
            for i in range(min(s + 1, len(left_cache))):
                j = s - i
                if j < len(right_cache):
                    yield (left_cache[i], right_cache[j])

    def sort_key(self, label):
        a, b = self._split(label)
        return (self.left.sort_key(a), self.right.sort_key(b))

    def format_id(self, label) -> str:
        a, b = self._split(label)
        return f"[{self.left.format_id(a)}|{self.right.format_id(b)}]"

    def parse_id(self, text: str):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]") and "|" in body):
            raise UnknownIrrepError(text, self.spec)
        la, _, lb = body[1:-1].partition("|")
        return (self.left.parse_id(la), self.right.parse_id(lb))

    def size(self) -> int | None:
        sa, sb = self.left.size(), self.right.size()
        if sa is None or sb is None:
            return None
        return sa * sb


def product_ring(left: FusionRing, right: FusionRing) -> ProductRing:
    return ProductRing(left, right)


class SubRing(FusionRing):
    """Smallest fusion-closed collection of irreps containing the unit
    and a generating set, closed under conjugation.

    The closure is materialised lazily, level by level, so subrings of
    infinite rings work; any operation that would materialise more than
    ``cap`` irreps raises EnumerationCapError.
    """

    def __init__(self, parent: FusionRing, generators,
                 cap: int = DEFAULT_CLOSURE_CAP):
        self.parent = parent
        self.cap = cap
        gens = sorted(set(generators), key=parent.sort_key)
        if not gens:
            raise SpecError("subring requires a nonempty generating set")
        for g in gens:
            parent.irrep(g)
        self.generators = gens
        self.spec = (parent.spec + ":sub<"
                     + ",".join(parent.format_id(g) for g in gens) + ">")
        self.is_finite = parent.is_finite
        self.declared_kac = parent.declared_kac
        seed = {parent.unit}
        for g in gens:
            seed.add(g)
            seed.add(parent.irrep(g).conj)
        self._known = set(seed)
        self._levels = [sorted(seed, key=parent.sort_key)]
        self._frontier = list(self._levels[0])
        self._closed = False

    def _grow_one_level(self):
        """Fuse the frontier against everything known so far."""
        if self._closed:
            return
        parent = self.parent
        new = set()
        known_list = sorted(self._known, key=parent.sort_key)
        for x in self._frontier:
            for y in known_list:
                for w in parent.fuse(x, y):
                    if w not in self._known and w not in new:
                        new.add(w)
                        new.add(parent.irrep(w).conj)
        new -= self._known
        if not new:
            self._closed = True
            self.is_finite = True
            self._frontier = []
            return
        if len(self._known) + len(new) > self.cap:
            raise EnumerationCapError(self.cap,
                                      f"closing subring {self.spec}")
        level = sorted(new, key=parent.sort_key)
        self._known |= new
        self._levels.append(level)
        self._frontier = level

    def _ensure_member(self, label) -> bool:
        # For an infinite parent a negative answer can only surface as a
        # cap error: the closure has no a-priori radius bound to test
        # against, so we keep growing until found, closed, or capped.
        self.parent.irrep(label)
        if label in self._known:
            return True
        while not self._closed:
            self._grow_one_level()
            if label in self._known:
                return True
        return label in self._known

    @property
    def unit(self):
        return self.parent.unit

    def irrep(self, label) -> IrrepData:
        if not self._ensure_member(label):
            raise UnknownIrrepError(label, self.spec)
        return self.parent.irrep(label)

    def fuse(self, u, v) -> dict:
        # outputs stay inside by closure; membership is only checked on inputs
        if not (self._ensure_member(u) and self._ensure_member(v)):
            raise UnknownIrrepError(u if u not in self._known else v, self.spec)
        return self.parent.fuse(u, v)

    def _fuse_trusted(self, u, v) -> dict:
        return self.parent._fuse_trusted(u, v)

    def irreps(self) -> Iterator:
        i = 0
        while True:
            while i >= len(self._levels) and not self._closed:
                self._grow_one_level()
            if i >= len(self._levels):
                return
            yield from self._levels[i]
            i += 1

    def sort_key(self, label):
        return self.parent.sort_key(label)

    def format_id(self, label) -> str:
        return self.parent.format_id(label)

    def parse_id(self, text: str):
        label = self.parent.parse_id(text)
        if not self._ensure_member(label):
            raise UnknownIrrepError(text, self.spec)
        return label

    def size(self) -> int | None:
        if not self._closed:
            return None
        return len(self._known)


def subring_generated(ring: FusionRing, generators,
                      cap: int = DEFAULT_CLOSURE_CAP) -> SubRing:
    """Subring generated by a set of irreps; see SubRing for the cap."""
    return SubRing(ring, generators, cap=cap)


def generator_vector(ring: FusionRing, labels) -> RepVector:
    """Convenience: multiplicity-one RepVector on the given labels."""
    return ring.rep_vector({label: 1 for label in labels})
