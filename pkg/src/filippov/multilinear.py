"""Calculus on the tensor power L^(x)(n-1) and the exterior power of an n-Lie algebra.

Elements are carried as :class:`TensorElt` / :class:`WedgeElt` (dense
coordinate tuples in the bases of :mod:`filippov.indices`).  Internally they
are sparse dicts keyed by index tuples.  Linear maps of ``L`` are lists of
sparse columns.
"""

from __future__ import annotations

import copy

import random
from dataclasses import dataclass
from typing import ClassVar, Mapping, Sequence

from ._sparse import add_scaled, scaled, sparse_to_dense
from .exactlin import QQ, Subspace, rank, sparse_nullspace
from .indices import sort_sign, tensor_basis, tensor_flat, wedge_basis, wedge_index, wedge_label
from .nlie import NLieAlgebra, ad_columns
from .report import Report

__all__ = [
    "TensorElt",
    "WedgeElt",
    "BinAlgebra",
    "WellDefinednessError",
    "wedge",
    "tensor",
    "parse_wedge",
    "format_wedge",
    "ad_extend",
    "leibniz_bracket",
    "circle",
    "jacobiator",
    "check_dagger",
    "commutator_check",
    "kernel_K",
    "subspace_W",
    "basic_leibniz_tensor",
    "basic_leibniz_wedge",
    "basic_lie",
    "circle_algebra",
    "innder_iso_check",
    "is_skew",
    "check_jacobi",
    "check_leibniz",
    "killing_form",
    "random_wedge",
]


@dataclass(frozen=True)
class TensorElt:
    """Coordinates over ``e_{i1} (x) ... (x) e_{i_{n-1}}`` in lexicographic order."""

    coords: tuple
    kind: ClassVar[str] = "tensor"


@dataclass(frozen=True)
class WedgeElt:
    """Coordinates over ``e_{i1} ^ ... ^ e_{i_{n-1}}`` with ``i1 < ... < i_{n-1}``."""

    coords: tuple
    kind: ClassVar[str] = "wedge"


def _basis(L: NLieAlgebra, kind: str):
    if kind == "wedge":
        return wedge_basis(L.dim, L.n - 1)
    return tensor_basis(L.dim, L.n - 1)


def _terms(L: NLieAlgebra, x) -> dict:
    basis = _basis(L, x.kind)
    if len(x.coords) != len(basis):
        raise ValueError(f"{x.kind} element has {len(x.coords)} coordinates, expected {len(basis)}")
    return {basis[i]: L.field(c) for i, c in enumerate(x.coords) if c}


def _elt(L: NLieAlgebra, terms: dict, kind: str):
    basis = _basis(L, kind)
    if kind == "wedge":
        index = wedge_index(L.dim, L.n - 1)
        flat = {index[k]: c for k, c in terms.items()}
        return WedgeElt(tuple(sparse_to_dense(flat, len(basis), L.field.zero)))
    flat = {tensor_flat(k, L.dim): c for k, c in terms.items()}
    return TensorElt(tuple(sparse_to_dense(flat, len(basis), L.field.zero)))


def wedge(L: NLieAlgebra, terms: Mapping[Sequence[int], object]) -> WedgeElt:
    """Wedge element from ``{(i1, ..., i_{n-1}): coeff}`` (0-based, any order)."""
    out: dict = {}
    for idx, c in terms.items():
        if len(idx) != L.n - 1:
            raise ValueError(f"wedge term {idx} needs {L.n - 1} factors")
        s, key = sort_sign(tuple(idx))
        if s:
            add_scaled(out, s * L.field(c), {key: L.field.one})
    return _elt(L, out, "wedge")


def tensor(L: NLieAlgebra, terms: Mapping[Sequence[int], object]) -> TensorElt:
    out: dict = {}
    for idx, c in terms.items():
        if len(idx) != L.n - 1:
            raise ValueError(f"tensor term {idx} needs {L.n - 1} factors")
        add_scaled(out, L.field(c), {tuple(idx): L.field.one})
    return _elt(L, out, "tensor")


def parse_wedge(L: NLieAlgebra, text: str) -> WedgeElt:
    """``"x1^x4"`` -> e_1 ^ e_4 (1-based labels, any order; sign normalised)."""
    parts = [p.strip() for p in text.split("^")]
    idx = []
    for p in parts:
        if not (p.startswith("x") and p[1:].isdigit()):
            raise ValueError(f"malformed wedge expression {text!r}")
        i = int(p[1:]) - 1
        if not 0 <= i < L.dim:
            raise ValueError(f"basis label {p} out of range in {text!r}")
        idx.append(i)
    if len(idx) != L.n - 1:
        raise ValueError(f"wedge expression {text!r} needs {L.n - 1} factors")
    return wedge(L, {tuple(idx): 1})


def format_wedge(L: NLieAlgebra, x: WedgeElt) -> str:
    terms = _terms(L, x)
    if not terms:
        return "0"
    return " + ".join(f"{c} * {wedge_label(k)}" for k, c in sorted(terms.items()))


# ---------------------------------------------------------------------------
# Adjoint action extended by the derivation rule
# ---------------------------------------------------------------------------


def _ad_cols_terms(L: NLieAlgebra, terms: dict) -> list[dict]:
    cols: list[dict] = [dict() for _ in range(L.dim)]
    for idx, c in terms.items():
        for b, col in enumerate(ad_columns(L, idx)):
            add_scaled(cols[b], c, col)
    return cols


def ad_cols_of(L: NLieAlgebra, x) -> list[dict]:
    """Sparse columns of ad_x for a tensor or wedge element ``x``."""
    return _ad_cols_terms(L, _terms(L, x))


def _extend(cols: list[dict], terms: dict, alternating: bool) -> dict:
    out: dict = {}
    for idx, c in terms.items():
        for pos, i in enumerate(idx):
            for a, v in cols[i].items():
                new = idx[:pos] + (a,) + idx[pos + 1:]
                if alternating:
                    s, new = sort_sign(new)
                    if not s:
                        continue
                    add_scaled(out, s * c * v, {new: 1})
                else:
                    add_scaled(out, c * v, {new: 1})
    return out


def _compose(a: list[dict], b: list[dict]) -> list[dict]:
    """Columns of the composite ``a o b``."""
    out = []
    for col in b:
        acc: dict = {}
        for k, c in col.items():
            add_scaled(acc, c, a[k])
        out.append(acc)
    return out


def _commutator(a: list[dict], b: list[dict]) -> list[dict]:
    ab, ba = _compose(a, b), _compose(b, a)
    out = []
    for x, y in zip(ab, ba):
        acc = dict(x)
        add_scaled(acc, -1, y)
        out.append(acc)
    return out


def _check_kinds(x, y) -> None:
    if x.kind != y.kind:
        raise ValueError(f"operands of different kinds: {x.kind} and {y.kind}")


def ad_extend(L: NLieAlgebra, x, t):
    """``ad_x`` applied to ``t`` factor by factor; same kind as ``t``."""
    cols = ad_cols_of(L, x)
    return _elt(L, _extend(cols, _terms(L, t), t.kind == "wedge"), t.kind)


def leibniz_bracket(L: NLieAlgebra, x, y):
    _check_kinds(x, y)
    return ad_extend(L, x, y)


def _half(L: NLieAlgebra):
    if L.field.characteristic == 2:
        raise ValueError("the circle product needs characteristic different from 2")
    return L.field.one / L.field(2)


def _circle_terms(L: NLieAlgebra, x: dict, y: dict, alternating: bool) -> dict:
    half = _half(L)
    out = scaled(_extend(_ad_cols_terms(L, x), y, alternating), half)
    add_scaled(out, -half, _extend(_ad_cols_terms(L, y), x, alternating))
    return out


def circle(L: NLieAlgebra, x, y):
    """``x o y = (ad_x(y) - ad_y(x)) / 2``."""
    _check_kinds(x, y)
    return _elt(L, _circle_terms(L, _terms(L, x), _terms(L, y), x.kind == "wedge"), x.kind)


def _jacobiator_terms(L: NLieAlgebra, a: dict, b: dict, c: dict) -> dict:
    def o(x, y):
        return _circle_terms(L, x, y, True)

    out = o(a, o(b, c))
    add_scaled(out, 1, o(c, o(a, b)))
    add_scaled(out, 1, o(b, o(c, a)))
    return out


def jacobiator(L: NLieAlgebra, a: WedgeElt, b: WedgeElt, c: WedgeElt) -> WedgeElt:
    """``J(a,b,c) = a o (b o c) + c o (a o b) + b o (c o a)``."""
    for x in (a, b, c):
        if x.kind != "wedge":
            raise ValueError("the jacobiator takes wedge elements")
    return _elt(L, _jacobiator_terms(L, _terms(L, a), _terms(L, b), _terms(L, c)), "wedge")


def _dagger_rhs(L: NLieAlgebra, a: dict, b: dict, c: dict) -> dict:
    ada, adb, adc = (_ad_cols_terms(L, t) for t in (a, b, c))
    out: dict = {}
    for m, t in ((_commutator(adb, adc), a), (_commutator(ada, adb), c), (_commutator(adc, ada), b)):
        add_scaled(out, 1, _extend(m, t, True))
    quarter = L.field.one / L.field(4)
    return scaled(out, -quarter)


def dagger_rhs(L: NLieAlgebra, a: WedgeElt, b: WedgeElt, c: WedgeElt) -> WedgeElt:
    """``-1/4 ([ad_b, ad_c](a) + [ad_a, ad_b](c) + [ad_c, ad_a](b))``."""
    _half(L)
    return _elt(L, _dagger_rhs(L, _terms(L, a), _terms(L, b), _terms(L, c)), "wedge")


def check_dagger(L: NLieAlgebra, a: WedgeElt, b: WedgeElt, c: WedgeElt) -> Report:
    """Compare the jacobiator with its commutator expression, exactly."""
    ta, tb, tc = (_terms(L, x) for x in (a, b, c))
    lhs = _jacobiator_terms(L, ta, tb, tc)
    rhs = _dagger_rhs(L, ta, tb, tc)
    diff = dict(lhs)
    add_scaled(diff, -1, rhs)
    if diff:
        return Report(False, {
            "a": format_wedge(L, a),
            "b": format_wedge(L, b),
            "c": format_wedge(L, c),
            "jacobiator": format_wedge(L, _elt(L, lhs, "wedge")),
            "rhs": format_wedge(L, _elt(L, rhs, "wedge")),
        })
    return Report(True, details={"value": format_wedge(L, _elt(L, lhs, "wedge"))})


def random_wedge(L: NLieAlgebra, rng: random.Random, density: float = 0.5, bound: int = 3) -> WedgeElt:
    """Pseudo-random wedge element with small integer coordinates."""
    size = len(wedge_basis(L.dim, L.n - 1))
    coords = []
    for _ in range(size):
        if rng.random() < density:
            coords.append(L.field(rng.choice([c for c in range(-bound, bound + 1) if c])))
        else:
            coords.append(L.field.zero)
    return WedgeElt(tuple(coords))


def commutator_check(L: NLieAlgebra) -> Report:
    """``[ad_x, ad_y] = ad_[x,y] = ad_(x o y)`` for all basis tensor pairs."""
    basis = tensor_basis(L.dim, L.n - 1)
    one = L.field.one
    ads = {x: ad_columns(L, x) for x in basis}
    for x in basis:
        for y in basis:
            comm = _commutator(ads[x], ads[y])
            br = _extend(ads[x], {y: one}, False)
            circ = _circle_terms(L, {x: one}, {y: one}, False) if L.field.characteristic != 2 else br
            for name, t in (("[x,y]", br), ("x o y", circ)):
                other = _ad_cols_terms(L, t)
                if any(c != o for c, o in zip(comm, other)):
                    return Report(False, {
                        "x": wedge_label(x).replace("^", "(x)"),
                        "y": wedge_label(y).replace("^", "(x)"),
                        "against": name,
                    })
    return Report(True, details={"pairs": len(basis) ** 2})


# ---------------------------------------------------------------------------
# The subspaces K and W of the tensor power
# ---------------------------------------------------------------------------


def kernel_K(L: NLieAlgebra) -> Subspace:
    """``{x in L^(x)(n-1) : ad_x = 0}`` in flat tensor coordinates."""
    basis = tensor_basis(L.dim, L.n - 1)
    eqs: dict[int, dict] = {}
    for f, x in enumerate(basis):
        for b, col in enumerate(ad_columns(L, x)):
            for a, c in col.items():
                eqs.setdefault(a * L.dim + b, {})[f] = c
    return Subspace(sparse_nullspace(eqs.values(), len(basis), L.field), len(basis), L.field)


def _projection_rows(L: NLieAlgebra) -> dict[int, dict]:
    """Rows of the alternation map tensor -> wedge, keyed by wedge index."""
    index = wedge_index(L.dim, L.n - 1)
    rows: dict[int, dict] = {}
    for f, x in enumerate(tensor_basis(L.dim, L.n - 1)):
        s, key = sort_sign(x)
        if s:
            rows.setdefault(index[key], {})[f] = L.field(s)
    return rows


def subspace_W(L: NLieAlgebra) -> Subspace:
    """Kernel of the projection onto the exterior power."""
    size = len(tensor_basis(L.dim, L.n - 1))
    return Subspace(sparse_nullspace(_projection_rows(L).values(), size, L.field), size, L.field)


# ---------------------------------------------------------------------------
# Binary algebras
# ---------------------------------------------------------------------------


class WellDefinednessError(ArithmeticError):
    """A quotient product depends on the choice of representatives."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class BinAlgebra:
    """A bilinear product on ``K^dim`` given by structure constants.

    ``products`` maps ordered index pairs ``(i, j)`` to the product
    ``e_i e_j`` (sparse dict or dense vector).  No identities are assumed.
    """

    def __init__(self, dim: int, products: Mapping | None = None, field=None, labels: Sequence[str] | None = None):
        self.dim = dim
        self.field = field or QQ
        self.labels = list(labels) if labels is not None else [f"b{i + 1}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("one label per basis vector")
        prod: dict[tuple[int, int], dict] = {}
        for (i, j), v in (products or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i}, {j}) out of range")
            items = v.items() if isinstance(v, Mapping) else enumerate(v)
            vec = {k: self.field(c) for k, c in items if c}
            if any(not 0 <= k < dim for k in vec):
                raise ValueError("output index out of range")
            if vec:
                prod[(i, j)] = vec
        self._prod = prod
        self._left: dict[int, list[dict]] = {}
        self._right: dict[int, list[dict]] = {}
        self._supp: dict[str, dict[int, frozenset]] = {}

    def product(self, i: int, j: int) -> dict:
        return self._prod.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_scaled(out, a * b, self.product(i, j))
        return out

    def left(self, i: int) -> list[dict]:
        if i not in self._left:
            self._left[i] = [self.product(i, j) for j in range(self.dim)]
        return self._left[i]

    def right(self, i: int) -> list[dict]:
        if i not in self._right:
            self._right[i] = [self.product(j, i) for j in range(self.dim)]
        return self._right[i]

    def products(self) -> dict[tuple[int, int], dict]:
        return {k: dict(v) for k, v in self._prod.items()}

    def opposite(self) -> "BinAlgebra":
        return BinAlgebra(self.dim, {(j, i): v for (i, j), v in self._prod.items()}, self.field, self.labels)

    def is_zero(self) -> bool:
        return not self._prod

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinAlgebra):
            return NotImplemented
        return (self.dim, self.field, self._prod) == (other.dim, other.field, other._prod)

    __hash__ = None

    def __repr__(self) -> str:
        return f"BinAlgebra(dim={self.dim}, nonzero={len(self._prod)})"


def _active(A: BinAlgebra) -> set[int]:
    act = set()
    for i, j in A._prod:
        act.add(i)
        act.add(j)
    return act


def _dense(A: BinAlgebra, v: dict) -> list:
    return sparse_to_dense(v, A.dim, A.field.zero)


def is_skew(A: BinAlgebra) -> Report:
    for i in range(A.dim):
        for j in range(i, A.dim):
            s = dict(A.product(i, j))
            add_scaled(s, 1, A.product(j, i))
            if s:
                return Report(False, {"x": A.labels[i], "y": A.labels[j], "xy+yx": _dense(A, s)})
    return Report(True)


def _integral(A: BinAlgebra) -> BinAlgebra:
    """Same algebra with plain-int coefficients when that is exact (Q only)."""
    if A.field is not QQ or any(c.denominator != 1 for v in A._prod.values() for c in v.values()):
        return A
    B = copy.copy(A)
    B._prod = {k: {i: int(c) for i, c in v.items()} for k, v in A._prod.items()}
    B._left, B._right, B._supp = {}, {}, {}
    return B


def _support(A: BinAlgebra, side: str, idx: Sequence[int]) -> set[int]:
    """Basis vectors ``z`` with a nonzero product ``i z`` (left) or ``z i`` (right) for some ``i``."""
    cache = A._supp.setdefault(side, {})
    out: set[int] = set()
    for i in idx:
        if i not in cache:
            cols = A.left(i) if side == "left" else A.right(i)
            cache[i] = frozenset(z for z, v in enumerate(cols) if v)
        out |= cache[i]
    return out


def _apply(cols: list[dict], v: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        add_scaled(out, c, cols[k])
    return out


def check_leibniz(A: BinAlgebra, side: str = "left") -> Report:
    """Exhaustive Leibniz identity check on basis triples.

    ``side="left"``: x(yz) = (xy)z + y(xz), i.e. every left multiplication is a
    derivation.  ``side="right"``: (xy)z = (xz)y + x(yz).
    """
    if side == "right":
        rep = check_leibniz(A.opposite(), "left")
        if not rep.passed:
            w = rep.witness
            rep.witness = {"x": w["z"], "y": w["y"], "z": w["x"], "residual": w["residual"]}
        return rep
    if side != "left":
        raise ValueError("side must be 'left' or 'right'")
    field, A = A.field, _integral(A)
    act = _active(A)
    for x in range(A.dim):
        for y in range(A.dim):
            if x not in act and y not in act:
                continue
            Lx, Ly = A.left(x), A.left(y)
            xy = A.product(x, y)
            for z in sorted(_support(A, "left", (x, y, *xy))):
                res = _apply(Lx, Ly[z])
                add_scaled(res, -1, _apply(Ly, Lx[z]))
                for k, c in xy.items():
                    add_scaled(res, -c, A.product(k, z))
                if res:
                    return Report(False, {
                        "x": A.labels[x], "y": A.labels[y], "z": A.labels[z], "residual": sparse_to_dense({k: field(c) for k, c in res.items()}, A.dim, field.zero),
                    })
    return Report(True)


def check_jacobi(A: BinAlgebra) -> Report:
    """Exhaustive check of x(yz) + y(zx) + z(xy) = 0 on basis triples."""
    field, A = A.field, _integral(A)
    act = _active(A)
    for x in range(A.dim):
        for y in range(A.dim):
            if x not in act and y not in act:
                continue
            Lx, Ly, Rx = A.left(x), A.left(y), A.right(x)
            xy = A.product(x, y)
            zs = _support(A, "left", (y,)) | _support(A, "right", (x, *xy))
            for z in sorted(zs):
                res = _apply(Lx, Ly[z])
                add_scaled(res, 1, _apply(Ly, Rx[z]))
                for k, c in xy.items():
                    add_scaled(res, c, A.product(z, k))
                if res:
                    return Report(False, {
                        "x": A.labels[x], "y": A.labels[y], "z": A.labels[z], "residual": sparse_to_dense({k: field(c) for k, c in res.items()}, A.dim, field.zero),
                    })
    return Report(True)


def killing_form(A: BinAlgebra) -> list[list]:
    """``trace(L_x L_y)`` on basis pairs; requires a Lie algebra."""
    if not is_skew(A).passed or not check_jacobi(A).passed:
        raise ValueError("the Killing form is only defined here for Lie algebras")
    zero = A.field.zero
    m = [[zero] * A.dim for _ in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            t = zero
            Li, Lj = A.left(i), A.left(j)
            for z in range(A.dim):
                t = t + _apply(Li, Lj[z]).get(z, zero)
            m[i][j] = t
    return m


def _require_ideal(A: BinAlgebra, S: Subspace) -> None:
    """Raise unless ``S`` is a two-sided ideal (products with cosets are well defined)."""
    for s in S.sparse_basis():
        for j in range(A.dim):
            for side, prod in (("left", A.mul(s, {j: A.field.one})), ("right", A.mul({j: A.field.one}, s))):
                if not S.member(prod):
                    raise WellDefinednessError(
                        "quotient product is not well defined",
                        {"element": _dense(A, s), "basis": A.labels[j], "side": side},
                    )


def quotient_algebra(A: BinAlgebra, S: Subspace) -> BinAlgebra:
    """``A / S`` on the coset representatives of :meth:`Subspace.quotient_basis`."""
    _require_ideal(A, S)
    reps = S.quotient_basis()
    pos = {r: k for k, r in enumerate(reps)}
    prods = {}
    for a, i in enumerate(reps):
        for b, j in enumerate(reps):
            red = S.reduce(A.product(i, j))
            if red:
                prods[(a, b)] = {pos[k]: c for k, c in red.items()}
    return BinAlgebra(len(reps), prods, A.field, [A.labels[r] for r in reps])


def _tensor_labels(L: NLieAlgebra) -> list[str]:
    return [wedge_label(x).replace("^", "(x)") for x in tensor_basis(L.dim, L.n - 1)]


def basic_leibniz_tensor(L: NLieAlgebra) -> BinAlgebra:
    """``[x, y] = ad_x(y)`` on the tensor power."""
    basis = tensor_basis(L.dim, L.n - 1)
    one = L.field.one
    prods = {}
    for i, x in enumerate(basis):
        cols = ad_columns(L, x)
        if not any(cols):
            continue
        for j, y in enumerate(basis):
            out = _extend(cols, {y: one}, False)
            if out:
                prods[(i, j)] = {tensor_flat(k, L.dim): c for k, c in out.items()}
    return BinAlgebra(len(basis), prods, L.field, _tensor_labels(L))


def basic_leibniz_wedge(L: NLieAlgebra) -> BinAlgebra:
    """The Leibniz bracket induced on the exterior power.

    Asserts that the alternation kernel W is a two-sided ideal of the tensor
    Leibniz algebra and that projecting tensor brackets agrees with the wedge
    bracket.
    """
    basis = wedge_basis(L.dim, L.n - 1)
    index = wedge_index(L.dim, L.n - 1)
    one = L.field.one
    prods = {}
    for i, x in enumerate(basis):
        cols = ad_columns(L, x)
        if not any(cols):
            continue
        for j, y in enumerate(basis):
            out = _extend(cols, {y: one}, True)
            if out:
                prods[(i, j)] = {index[k]: c for k, c in out.items()}
    A = BinAlgebra(len(basis), prods, L.field, [wedge_label(x) for x in basis])

    T = basic_leibniz_tensor(L)
    _require_ideal(T, subspace_W(L))
    proj = _projection_rows(L)
    tproj = {}
    for w, row in proj.items():
        for f, s in row.items():
            tproj.setdefault(f, {})[w] = s
    pcols = [tproj.get(f, {}) for f in range(T.dim)]
    for (i, j), v in T.products().items():
        lhs = _apply(pcols, v)
        rhs = A.mul(tproj.get(i, {}), tproj.get(j, {}))
        if lhs != rhs:
            raise WellDefinednessError("projection is not a homomorphism", {"x": T.labels[i], "y": T.labels[j]})
    return A


def basic_lie(L: NLieAlgebra) -> BinAlgebra:
    """Tensor Leibniz algebra modulo ``K = ker(ad)``."""
    return quotient_algebra(basic_leibniz_tensor(L), kernel_K(L))


def circle_algebra(L: NLieAlgebra) -> BinAlgebra:
    """The circle product on the wedge basis."""
    basis = wedge_basis(L.dim, L.n - 1)
    index = wedge_index(L.dim, L.n - 1)
    one = L.field.one
    prods = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            out = _circle_terms(L, {x: one}, {y: one}, True)
            if out:
                prods[(i, j)] = {index[k]: c for k, c in out.items()}
    return BinAlgebra(len(basis), prods, L.field, [wedge_label(x) for x in basis])


def innder_iso_check(L: NLieAlgebra) -> Report:
    """Compare ``K = W`` with injectivity of ``x1 ^ ... ^ x_{n-1} -> ad_x``.

    Passes when both hold.  ``details["consistent"]`` records whether the two
    criteria agree, which they must.
    """
    K, W = kernel_K(L), subspace_W(L)
    k_eq_w = K.equal(W)
    basis = wedge_basis(L.dim, L.n - 1)
    flat = []
    for x in basis:
        row = [L.field.zero] * (L.dim * L.dim)
        for b, col in enumerate(ad_columns(L, x)):
            for a, c in col.items():
                row[a * L.dim + b] = c
        flat.append(row)
    innder_dim = rank(flat, L.dim * L.dim) if flat else 0
    injective = innder_dim == len(basis)
    details = {
        "K_dim": K.dim(),
        "W_dim": W.dim(),
        "K_equals_W": k_eq_w,
        "ad_injective": injective,
        "innder_dim": innder_dim,
        "wedge_dim": len(basis),
        "consistent": k_eq_w == injective,
    }
    if k_eq_w and injective:
        return Report(True, details=details)
    witness = {"K_equals_W": k_eq_w, "ad_injective": injective, "consistent": k_eq_w == injective}
    extra = [v for v in K.sparse_basis() if not W.member(v)]
    if extra:
        labels = _tensor_labels(L)
        witness["K_not_in_W"] = {labels[f]: c for f, c in sorted(extra[0].items())}
    return Report(False, witness, details)
