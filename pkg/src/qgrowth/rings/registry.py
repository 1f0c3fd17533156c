"""Ring registry: spec strings to rings, generator strings to RepVectors.

Registry grammar::

    su2 | so3 | su2q:q=<float> | ao:n=<int> | torus:d=<int> | free:k=<int>
    | heisenberg | product:<specA>+<specB> | file:<path>
    | group-dual:file=<path>

Product splits on the first top-level '+'; nest by building rings
programmatically if deeper products are needed.

Generator grammar: comma-separated "id:mult" pairs where the id syntax
is ring specific (su2-type: u<k>; torus/heisenberg: (a,b[,c]); free:
reduced words over a,b,...,A,B,...; table rings: declared ids).  Commas
inside parentheses do not split.
"""

from __future__ import annotations

from ..errors import SpecError
from ..repvector import RepVector
from .base import FusionRing
from .families import (
    AORing,
    FreeDualRing,
    HeisenbergDualRing,
    ProductRing,
    SO3Ring,
    SU2Ring,
    SU2qRing,
    TorusDualRing,
)
from .fileio import group_dual_ring_from_file, load_fusion_ring_file


def _int_param(spec: str, body: str, key: str) -> int:
    prefix = key + "="
    if not body.startswith(prefix):
        raise SpecError(f"ring spec {spec!r}: expected {key}=<int>")
    try:
        return int(body[len(prefix):])
    except ValueError:
        raise SpecError(f"ring spec {spec!r}: bad integer for {key}") from None


def load_ring(spec: str) -> FusionRing:
    """Resolve a registry string or file reference to a validated ring."""
    spec = spec.strip()
    if spec == "su2":
        return SU2Ring()
    if spec == "so3":
        return SO3Ring()
    if spec == "heisenberg":
        return HeisenbergDualRing()
    head, sep, body = spec.partition(":")
    if not sep:
        raise SpecError(f"unknown ring spec {spec!r}")
    if head == "su2q":
        if not body.startswith("q="):
            raise SpecError(f"ring spec {spec!r}: expected q=<float>")
        try:
            q = float(body[2:])
        except ValueError:
            raise SpecError(f"ring spec {spec!r}: bad float for q") from None
        return SU2qRing(q)
    if head == "ao":
        return AORing(_int_param(spec, body, "n"))
    if head == "torus":
        return TorusDualRing(_int_param(spec, body, "d"))
    if head == "free":
        return FreeDualRing(_int_param(spec, body, "k"))
    if head == "product":
        left, plus, right = body.partition("+")
        if not plus:
            raise SpecError(f"ring spec {spec!r}: product needs '<A>+<B>'")
        return ProductRing(load_ring(left), load_ring(right))
    if head == "file":
        return load_fusion_ring_file(body)
    if head == "group-dual":
        if not body.startswith("file="):
            raise SpecError(f"ring spec {spec!r}: expected file=<path>")
        return group_dual_ring_from_file(body[5:])
    raise SpecError(f"unknown ring spec {spec!r}")


def split_outside_parens(text: str, sep: str = ",") -> list[str]:
    """Split on a separator, ignoring occurrences inside parentheses."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise SpecError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return parts


def parse_generator(ring: FusionRing, text: str) -> RepVector:
    """Parse an "id:mult,id:mult,..." generator spec against a ring."""
    mults: dict = {}
    text = text.strip()
    if not text:
        raise SpecError("empty generator spec")
    for chunk in split_outside_parens(text):
        chunk = chunk.strip()
        if not chunk:
            raise SpecError(f"empty entry in generator spec {text!r}")
        ident, sep, mult_text = chunk.rpartition(":")
        if not sep:
            ident, mult_text = chunk, "1"
        try:
            mult = int(mult_text)
        except ValueError:
            raise SpecError(
                f"bad multiplicity {mult_text!r} in generator spec {text!r}"
            ) from None
        if mult < 1:
            raise SpecError(f"multiplicity must be >= 1 in {text!r}")
        label = ring.parse_id(ident.strip())
        mults[label] = mults.get(label, 0) + mult
    return RepVector(mults)


def format_generator(ring: FusionRing, gen: RepVector) -> str:
    """Canonical textual form of a generator (sorted, explicit mults)."""
    items = sorted(gen.items(), key=lambda kv: ring.sort_key(kv[0]))
    return ",".join(f"{ring.format_id(label)}:{m}" for label, m in items)
