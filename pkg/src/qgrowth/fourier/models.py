"""Finite quantum group models and coefficient-level modular data.

Conventions for conjugation data.  The conjugate of an irrep u is
carried by an invertible antilinear map j: H_u -> H_ubar; we store it as
the matrix T with j(x) = T @ conj(x).  Then

    F_u = T^t conj(T)            (positive, Tr F = Tr F^-1 after the
                                  canonical normalisation),
    J   = T conj(F^-1/2)         (the antiunitary part, J(x) = M conj(x)
                                  with M unitary).

For a conjugate pair the second member's matrix is conj(T)^-1, which
makes the star involution exactly involutive; a self-conjugate irrep
satisfies T conj(T) = +-I automatically and reuses its own T.  Finite
quantum groups are Kac (F = identity, stored as None, T unitary).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from ..errors import IntertwinerError, RingValidationError, SpecError
from ..rings.families import FiniteGroupTable

ATOL = 1e-10


def complex_matrix_from_json(rows) -> np.ndarray:
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows],
                        dtype=complex)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad complex matrix entry: {exc}") from exc


def complex_matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


class CoefficientSystem:
    """Per-irrep dimension, quantum dimension, conjugation and modular
    data; the minimum surface needed by the involutions, the weighted
    l1 norm, and the Fourier transform."""

    spec = "coefficients"

    def __init__(self):
        self._dims: dict = {}
        self._qdims: dict = {}
        self._conj: dict = {}
        self._conj_matrix: dict = {}
        self._f_matrix: dict = {}
        self.irrep_ids: list = []

    def dim(self, v) -> int:
        try:
            return self._dims[v]
        except KeyError:
            raise SpecError(f"unknown irrep {v!r} in {self.spec}") from None

    def qdim(self, v):
        self.dim(v)
        return self._qdims[v]

    def conj(self, v):
        self.dim(v)
        return self._conj[v]

    def conj_matrix(self, v) -> np.ndarray:
        self.dim(v)
        return self._conj_matrix[v]

    def f_matrix(self, v) -> np.ndarray | None:
        """Positive modular matrix F_v, or None meaning the identity."""
        self.dim(v)
        return self._f_matrix.get(v)

    def is_kac(self) -> bool:
        return all(self._f_matrix.get(v) is None for v in self.irrep_ids)

    def _register(self, v, dim, qdim, conj, conj_matrix, f_matrix=None):
        self.irrep_ids.append(v)
        self._dims[v] = dim
        self._qdims[v] = qdim
        self._conj[v] = conj
        self._conj_matrix[v] = conj_matrix
        if f_matrix is not None:
            self._f_matrix[v] = f_matrix


def _hom_space(reps_a: list[np.ndarray], reps_b: list[np.ndarray],
               cutoff: float = 1e-9) -> list[np.ndarray]:
    """Solutions X of A_g X = X B_g for all g, via the SVD nullspace of
    the stacked system; column-stacked vectorisation."""
    da = reps_a[0].shape[0]
    db = reps_b[0].shape[0]
    eye_b = np.eye(db)
    eye_a = np.eye(da)
    blocks = [np.kron(eye_b, a) - np.kron(b.T, eye_a)
              for a, b in zip(reps_a, reps_b)]
    system = np.vstack(blocks)
    _, svals, vh = np.linalg.svd(system)
    scale = max(1.0, float(svals[0]) if svals.size else 1.0)
    null_dim = int(np.sum(svals < cutoff * scale)) + (da * db - len(svals))
    out = []
    for row in vh[len(vh) - null_dim:]:
        out.append(row.conj().reshape((da, db), order="F"))
    return out


class FiniteQG(CoefficientSystem):
    """A finite quantum group in one of the two concrete models.

    model == "commutative": C(G) for a finite group G with explicit
    unitary irrep matrices; elements of the algebra are functions on G.
    model == "cocommutative": the group algebra of G; irreps are the
    group elements themselves, all one dimensional.
    """

    def __init__(self, model: str, group: FiniteGroupTable, spec: str):
        super().__init__()
        if model not in ("commutative", "cocommutative"):
            raise SpecError(f"unknown finite model {model!r}")
        self.model = model
        self.group = group
        self.spec = spec
        self.elements = list(group.elements())
        self._el_index = {g: i for i, g in enumerate(self.elements)}
        self._intertwiner_cache: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def unit_irrep(self):
        return self._unit_irrep

    # -- commutative-model extras ------------------------------------
    def matrices(self, v) -> dict:
        if self.model != "commutative":
            raise SpecError("irrep matrices exist only in the commutative model")
        return self._matrices[v]

    def matrix(self, v, g) -> np.ndarray:
        return self.matrices(v)[g]

    def character(self, v) -> np.ndarray:
        return self._chars[v]

    def coefficient_layout(self):
        """Flattened coefficient basis: list of (irrep, i, j) in irrep
        declaration order, row major."""
        return self._layout

    def value_matrix(self) -> np.ndarray:
        """|G| x D matrix sending stacked block coefficients to the
        associated function's values (rows indexed by group elements)."""
        return self._value_mat

    def recovery_matrix(self) -> np.ndarray:
        """D x |G| Peter-Weyl inverse of value_matrix."""
        return self._recovery_mat

    def multiplicity(self, u, uprime, w) -> int:
        """N(u, uprime -> w) from character inner products."""
        key = (u, uprime, w)
        if key not in self._mult_cache:
            if self.model == "cocommutative":
                val = 1 if self.group.mul(u, uprime) == w else 0
            else:
                prod = (self._chars[u] * self._chars[uprime]
                        * self._chars[w].conj())
                val = int(round(float(prod.mean().real)))
            self._mult_cache[key] = val
        return self._mult_cache[key]


def cocommutative_model(group: FiniteGroupTable,
                        spec: str | None = None) -> FiniteQG:
    """Dual of a finite group: the group algebra with its elements as
    one-dimensional irreps."""
    qg = FiniteQG("cocommutative", group,
                  spec or f"cocommutative:{group.name}")
    one = np.ones((1, 1), dtype=complex)
    for g in group.elements():
        qg._register(g, 1, 1, group.inv(g), one)
    qg._unit_irrep = group.identity
    qg._mult_cache = {}
    qg._layout = [(g, 0, 0) for g in group.elements()]
    return qg


def commutative_model(group: FiniteGroupTable, irrep_matrices: list,
                      spec: str | None = None, tol: float = ATOL) -> FiniteQG:
    """C(G) for a finite group with explicit unitary irreps.

    irrep_matrices: list of (irrep_id, {element: matrix}) pairs.  The
    constructor validates unitarity, multiplicativity, irreducibility
    and Peter-Weyl completeness, then derives quantum data: characters,
    conjugate pairing, and the antilinear conjugation matrices.
    """
    qg = FiniteQG("commutative", group, spec or f"C({group.name})")
    elements = qg.elements
    order = qg.order
    ids = [v for v, _ in irrep_matrices]
    if len(set(ids)) != len(ids):
        raise SpecError("duplicate irrep ids in commutative model")

    mats = {}
    dims = {}
    for v, table in irrep_matrices:
        table = {g: np.asarray(m, dtype=complex) for g, m in table.items()}
        missing = [g for g in elements if g not in table]
        if missing:
            raise SpecError(f"irrep {v!r}: missing matrix for {missing[0]!r}")
        d = table[elements[0]].shape[0]
        for g, m in table.items():
            if m.shape != (d, d):
                raise SpecError(f"irrep {v!r}: ragged matrix shapes")
            if np.linalg.norm(m @ m.conj().T - np.eye(d)) > 1e-9:
                raise RingValidationError(
                    f"irrep {v!r}: matrix at {g!r} is not unitary")
        mats[v] = table
        dims[v] = d
    if sum(d * d for d in dims.values()) != order:
        raise RingValidationError(
            "sum of squared dimensions does not match the group order; "
            "the irrep list is not complete")
    for v, table in mats.items():
        for g in elements:
            for h in elements:
                gh = group.mul(g, h)
                if np.linalg.norm(table[g] @ table[h] - table[gh]) > 1e-8:
                    raise RingValidationError(
                        f"irrep {v!r} is not multiplicative at ({g!r},{h!r})")

    chars = {v: np.array([np.trace(mats[v][g]) for g in elements])
             for v in ids}
    for v in ids:
        norm2 = float((np.abs(chars[v]) ** 2).mean())
        if abs(norm2 - 1.0) > 1e-8:
            raise RingValidationError(f"irrep {v!r} is not irreducible "
                                      f"(character norm^2 = {norm2})")

    unit_candidates = [v for v in ids
                       if dims[v] == 1 and np.allclose(chars[v], 1.0)]
    if len(unit_candidates) != 1:
        raise RingValidationError("expected exactly one trivial irrep")
    unit = unit_candidates[0]

    # conjugate pairing: conj(u) has the conjugate character
    conj_of = {}
    for u in ids:
        target = chars[u].conj()
        matches = [v for v in ids
                   if np.linalg.norm(chars[v] - target) < 1e-8]
        if len(matches) != 1:
            raise RingValidationError(
                f"irrep {u!r}: conjugate character matches {len(matches)} "
                "irreps")
        conj_of[u] = matches[0]

    # antilinear conjugation matrices: solve conj(u(g)) W = W ubar(g),
    # normalise W unitary, store T = W^H; the partner reuses T^t
    conj_T = {}
    for u in ids:
        if u in conj_T:
            continue
        v = conj_of[u]
        sols = _hom_space([mats[u][g].conj() for g in elements],
                          [mats[v][g] for g in elements])
        if len(sols) != 1:
            raise IntertwinerError(
                f"conjugation solve for {u!r} gave {len(sols)} solutions")
        w = sols[0]
        gram = w.conj().T @ w
        scale = math.sqrt(float(np.trace(gram).real) / dims[u])
        w = w / scale
        t = w.conj().T
        conj_T[u] = t
        if v != u:
            conj_T[v] = t.T
        else:
            sign = (t @ t.conj()).real
            if not (np.allclose(sign, np.eye(dims[u]))
                    or np.allclose(sign, -np.eye(dims[u]))):
                raise IntertwinerError(
                    f"self-conjugate irrep {u!r}: T conj(T) is not +-I")

    for v in ids:
        qg._register(v, dims[v], dims[v], conj_of[v], conj_T[v])
    qg._unit_irrep = unit
    qg._matrices = mats
    qg._chars = chars
    qg._mult_cache = {}

    layout = []
    for v in ids:
        d = dims[v]
        for i in range(d):
            for j in range(d):
                layout.append((v, i, j))
    qg._layout = layout
    value_mat = np.empty((order, len(layout)), dtype=complex)
    recovery = np.empty((len(layout), order), dtype=complex)
    for col, (v, i, j) in enumerate(layout):
        column = np.array([mats[v][g][i, j] for g in elements])
        value_mat[:, col] = column
        recovery[col, :] = dims[v] * column.conj() / order
    qg._value_mat = value_mat
    qg._recovery_mat = recovery
    if np.linalg.norm(recovery @ value_mat - np.eye(len(layout))) > 1e-8:
        raise RingValidationError(
            "Peter-Weyl recovery failed; irrep data is inconsistent")
    return qg


# ---------------------------------------------------------------------------
# builtins

def _cyclic_group(n: int) -> FiniteGroupTable:
    names = [f"g{k}" for k in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroupTable(names, table, name=f"Z/{n}")


def cyclic_model(n: int) -> FiniteQG:
    """C(Z/n) with characters chi_j(g^k) = exp(2 pi i j k / n)."""
    if n < 1:
        raise SpecError("cyclic order must be >= 1")
    group = _cyclic_group(n)
    irreps = []
    for m in range(n):
        table = {f"g{k}": np.array([[np.exp(2j * np.pi * m * k / n)]])
                 for k in range(n)}
        irreps.append((f"chi{m}", table))
    return commutative_model(group, irreps, spec=f"C(Z/{n})")


def s3_model() -> FiniteQG:
    """C(S3): trivial, sign, and the two-dimensional standard irrep."""
    # permutations of {0,1,2} as images tuples; r = 3-cycle, s = transposition
    perms = {"e": (0, 1, 2), "r": (1, 2, 0), "r2": (2, 0, 1),
             "s": (0, 2, 1), "rs": (1, 0, 2), "r2s": (2, 1, 0)}
    names = list(perms)

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    lookup = {v: k for k, v in perms.items()}
    table = [[names.index(lookup[compose(perms[a], perms[b])])
              for b in names] for a in names]
    group = FiniteGroupTable(names, table, name="S3")

    def sign(p):
        swaps = sum(1 for i in range(3) for k in range(i + 1, 3)
                    if p[i] > p[k])
        return -1.0 if swaps % 2 else 1.0

    c, s_ = math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)
    rot = np.array([[c, -s_], [s_, c]])
    ref = np.array([[1.0, 0.0], [0.0, -1.0]])
    std_gens = {"e": np.eye(2), "r": rot, "r2": rot @ rot, "s": ref,
                "rs": rot @ ref, "r2s": rot @ rot @ ref}
    irreps = [
        ("triv", {g: np.array([[1.0 + 0j]]) for g in names}),
        ("sgn", {g: np.array([[sign(perms[g]) + 0j]]) for g in names}),
        ("std", {g: std_gens[g].astype(complex) for g in names}),
    ]
    return commutative_model(group, irreps, spec="C(S3)")


_BUILTIN_MODELS = {
    "s3": s3_model,
    "z2": lambda: cyclic_model(2),
    "z3": lambda: cyclic_model(3),
    "z4": lambda: cyclic_model(4),
}


def builtin_model(name: str) -> FiniteQG:
    key = name.lower()
    if key.startswith("z") and key[1:].isdigit():
        return cyclic_model(int(key[1:]))
    try:
        return _BUILTIN_MODELS[key]()
    except KeyError:
        raise SpecError(f"unknown builtin finite model {name!r}") from None


# ---------------------------------------------------------------------------
# file formats

def load_group_rep_file(path) -> FiniteQG:
    """Commutative model from a finite-group representation file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot load {path}: {exc}") from exc
    for key in ("elements", "mult_table", "irreps"):
        if key not in data:
            raise SpecError(f"{path}: missing key {key!r}")
    group = FiniteGroupTable(list(data["elements"]),
                             [list(r) for r in data["mult_table"]],
                             name=f"group:{path}")
    irreps = []
    for entry in data["irreps"]:
        try:
            vid = entry["id"]
            mats = {g: complex_matrix_from_json(m)
                    for g, m in entry["matrices"].items()}
        except (KeyError, TypeError) as exc:
            raise SpecError(f"{path}: bad irrep entry") from exc
        irreps.append((vid, mats))
    return commutative_model(group, irreps, spec=f"C(group:{path})")


def load_qelement_file(path, model=None):
    """QElement from {"blocks": {id: [[[re,im],...],...]}}; block ids are
    kept as strings unless a model is given to resolve them."""
    from .elements import QElement

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot load {path}: {exc}") from exc
    if "blocks" not in data:
        raise SpecError(f"{path}: missing key 'blocks'")
    blocks = {}
    for key, rows in data["blocks"].items():
        blocks[key] = complex_matrix_from_json(rows)
    if model is not None:
        resolved = {}
        by_str = {str(v): v for v in model.irrep_ids}
        for key, mat in blocks.items():
            if key not in by_str:
                raise SpecError(f"{path}: unknown irrep id {key!r}")
            v = by_str[key]
            if mat.shape != (model.dim(v), model.dim(v)):
                raise SpecError(f"{path}: block {key!r} has shape "
                                f"{mat.shape}, expected {model.dim(v)}")
            resolved[v] = mat
        blocks = resolved
    return QElement(blocks)


def save_qelement_file(path, element) -> None:
    payload = {"blocks": {str(v): complex_matrix_to_json(m)
                          for v, m in sorted(element.blocks.items(),
                                             key=lambda kv: str(kv[0]))}}
    Path(path).write_text(json.dumps(payload, indent=1), encoding="utf-8")


# ---------------------------------------------------------------------------
# SU_q(2) coefficient data

class Su2qCoefficients(CoefficientSystem):
    """Modular data of SU_q(2) irreps u_0..u_n. No products: only the
    involutions, norms, and the Fourier transform act on these blocks.

    F_n = diag(q^n, q^(n-2), ..., q^-n) and j(e_i) is a signed
    antidiagonal with |j(e_i)| = q^((n-2i)/2), which reproduces
    Tr F = Tr F^-1 = [n+1]_q and J^2 = (-1)^n.
    """

    def __init__(self, q: float, n_max: int):
        super().__init__()
        if not (0.0 < q < 1.0):
            raise SpecError(f"su2q requires q in (0,1), got {q}")
        self.q = q
        self.n_max = n_max
        self.spec = f"su2q-coefficients:q={q!r}:n={n_max}"
        for n in range(n_max + 1):
            d = n + 1
            exponents = np.array([n - 2 * i for i in range(d)], dtype=float)
            f = np.diag(q ** exponents).astype(complex)
            t = np.zeros((d, d), dtype=complex)
            for i in range(d):
                t[n - i, i] = (-1.0) ** i * q ** ((n - 2 * i) / 2.0)
            qdim = float((q ** exponents).sum())
            self._register(n, d, qdim, n, t, f_matrix=f)
