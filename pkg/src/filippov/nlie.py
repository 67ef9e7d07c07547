"""Finite-dimensional n-Lie algebras given by structure constants.

Basis indices are 0-based internally and 1-based (``x1, x2, ...``) in every
human-facing string.  Structure constants are stored only on strictly
increasing index tuples; every other bracket of basis vectors follows from the
sign of the sorting permutation, so alternation holds by construction.
"""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from ._sparse import add_scaled, sparse_to_dense
from .exactlin import QQ, Subspace, field_from_tag, sparse_nullspace
from .indices import sort_sign, wedge_basis
from .report import Report

__all__ = [
    "NLieAlgebra",
    "ParseError",
    "bracket",
    "check_fundamental_identity",
    "is_derivation",
    "derivation_algebra",
    "ad",
    "right_mult",
    "inner_derivations",
    "centre",
    "is_ideal",
    "derived_ideal",
    "is_simple",
    "make_Vn",
    "make_filiform5",
    "central_ext_trivial",
    "make_abelian",
    "free_nilpotent_weight2",
    "direct_sum",
    "parse_algebra",
    "serialize_algebra",
]


def _label(i: int) -> str:
    return f"x{i + 1}"


def _labels(idx: Iterable[int]) -> list[str]:
    return [_label(i) for i in idx]


class NLieAlgebra:
    """An alternating n-ary bracket on ``K^dim``.

    ``structure`` maps strictly increasing 0-based index tuples to the value of
    the bracket on those basis vectors, either as a dense coordinate vector or
    as a sparse ``{index: coefficient}`` dict.  Missing tuples bracket to zero.
    Nothing here enforces the fundamental identity; use
    :func:`check_fundamental_identity` for that.
    """

    def __init__(self, n: int, dim: int, structure: Mapping | None = None, field=QQ):
        if n < 2:
            raise ValueError("arity must be at least 2")
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.n = n
        self.dim = dim
        self.field = field
        table: dict[tuple[int, ...], dict] = {}
        for key, value in (structure or {}).items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"bracket key {key} has {len(key)} entries, expected {n}")
            if any(not 0 <= i < dim for i in key):
                raise ValueError(f"bracket key {key} out of range")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"bracket key {key} is not strictly increasing")
            if isinstance(value, Mapping):
                items = value.items()
            else:
                if len(value) != dim:
                    raise ValueError(f"value for {key} has length {len(value)}, expected {dim}")
                items = enumerate(value)
            vec = {}
            for k, c in items:
                if not 0 <= k < dim:
                    raise ValueError(f"output index {k} out of range")
                c = field(c)
                if c:
                    vec[k] = c
            if vec:
                table[key] = vec
        self._table = table

    @property
    def structure(self) -> dict[tuple[int, ...], tuple]:
        """Nonzero structure constants as dense vectors."""
        return {k: tuple(sparse_to_dense(v, self.dim, self.field.zero)) for k, v in sorted(self._table.items())}

    def table(self) -> dict[tuple[int, ...], dict]:
        return {k: dict(v) for k, v in self._table.items()}

    def is_abelian(self) -> bool:
        return not self._table

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def unit(self, i: int) -> list:
        v = self.zero()
        v[i] = self.field.one
        return v

    def basis_bracket(self, idx: Sequence[int]) -> dict:
        """Bracket of basis vectors ``e_{idx[0]}, ..., e_{idx[n-1]}`` as a sparse vector."""
        sign, key = sort_sign(tuple(idx))
        if not sign:
            return {}
        vec = self._table.get(key)
        if not vec:
            return {}
        if sign == 1:
            return dict(vec)
        return {k: -c for k, c in vec.items()}

    def sparse_bracket(self, *args: dict) -> dict:
        """Multilinear extension of :meth:`basis_bracket` to sparse arguments."""
        if len(args) != self.n:
            raise ValueError(f"bracket takes {self.n} arguments, got {len(args)}")
        out: dict = {}
        supports = [list(a.items()) for a in args]
        for combo in product(*supports):
            idx = tuple(i for i, _ in combo)
            if len(set(idx)) != len(idx):
                continue
            coef = self.field.one
            for _, c in combo:
                coef = coef * c
            add_scaled(out, coef, self.basis_bracket(idx))
        return out

    def to_sparse(self, v: Sequence) -> dict:
        if len(v) != self.dim:
            raise ValueError(f"element of length {len(v)} in an algebra of dimension {self.dim}")
        return {i: self.field(c) for i, c in enumerate(v) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.dim, self.field, self._table) == (other.n, other.dim, other.field, other._table)

    __hash__ = None

    def __repr__(self) -> str:
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, field={self.field!r}, nonzero={len(self._table)})"


def bracket(L: NLieAlgebra, *args: Sequence) -> list:
    """The n-ary bracket of ``n`` elements given as coordinate vectors."""
    if len(args) != L.n:
        raise ValueError(f"bracket takes {L.n} arguments, got {len(args)}")
    out = L.sparse_bracket(*(L.to_sparse(a) for a in args))
    return sparse_to_dense(out, L.dim, L.field.zero)


# ---------------------------------------------------------------------------
# Identities and derivations
# ---------------------------------------------------------------------------


def _fi_residual(L: NLieAlgebra, xs: tuple[int, ...], ys: tuple[int, ...]) -> dict:
    lhs: dict = {}
    for k, c in L.basis_bracket(xs).items():
        add_scaled(lhs, c, L.basis_bracket((k,) + ys))
    for i, xi in enumerate(xs):
        for a, c in L.basis_bracket((xi,) + ys).items():
            add_scaled(lhs, -c, L.basis_bracket(xs[:i] + (a,) + xs[i + 1:]))
    return lhs


def check_fundamental_identity(L: NLieAlgebra) -> Report:
    """Decide the fundamental identity on all of ``L``.

    Both sides are multilinear and alternating in the x's and in the y's, so
    strictly increasing basis tuples are enough.
    """
    for xs in wedge_basis(L.dim, L.n):
        for ys in wedge_basis(L.dim, L.n - 1):
            res = _fi_residual(L, xs, ys)
            if res:
                return Report(False, {
                    "x": _labels(xs),
                    "y": _labels(ys),
                    "residual": sparse_to_dense(res, L.dim, L.field.zero),
                })
    return Report(True, details={"checked": len(wedge_basis(L.dim, L.n)) * len(wedge_basis(L.dim, L.n - 1))})


def _columns(d: Sequence[Sequence], dim: int, field) -> list[dict]:
    if len(d) != dim or any(len(row) != dim for row in d):
        raise ValueError(f"expected a {dim}x{dim} matrix")
    return [{a: field(d[a][j]) for a in range(dim) if d[a][j]} for j in range(dim)]


def is_derivation(L: NLieAlgebra, d: Sequence[Sequence]) -> Report:
    """Check ``d[x1..xn] = sum_i [x1, .., d x_i, .., xn]`` on basis n-tuples."""
    cols = _columns(d, L.dim, L.field)
    for xs in wedge_basis(L.dim, L.n):
        res: dict = {}
        for k, c in L.basis_bracket(xs).items():
            add_scaled(res, c, cols[k])
        for i, xi in enumerate(xs):
            for a, c in cols[xi].items():
                add_scaled(res, -c, L.basis_bracket(xs[:i] + (a,) + xs[i + 1:]))
        if res:
            return Report(False, {"x": _labels(xs), "residual": sparse_to_dense(res, L.dim, L.field.zero)})
    return Report(True)


def derivation_algebra(L: NLieAlgebra) -> list[list[list]]:
    """Basis of Der(L) as dim x dim matrices (column j is the image of e_j).

    Unknown ``d[a][j]`` is variable ``a * dim + j``.
    """
    dim = L.dim
    rows = []
    for xs in wedge_basis(dim, L.n):
        eqs: dict[int, dict] = {}
        for j, c in L.basis_bracket(xs).items():
            for k in range(dim):
                add_scaled(eqs.setdefault(k, {}), c, {k * dim + j: L.field.one})
        for i, xi in enumerate(xs):
            for a in range(dim):
                for k, c in L.basis_bracket(xs[:i] + (a,) + xs[i + 1:]).items():
                    add_scaled(eqs.setdefault(k, {}), -c, {a * dim + xi: L.field.one})
        rows.extend(r for r in eqs.values() if r)
    basis = sparse_nullspace(rows, dim * dim, L.field)
    return [[v[a * dim:(a + 1) * dim] for a in range(dim)] for v in basis]


# ---------------------------------------------------------------------------
# Adjoint action, centre, ideals
# ---------------------------------------------------------------------------


def ad_columns(L: NLieAlgebra, xs: Sequence[int]) -> list[dict]:
    """Columns of ad(e_{xs}) : b -> [e_{xs}, b] as sparse vectors."""
    xs = tuple(xs)
    return [L.basis_bracket(xs + (b,)) for b in range(L.dim)]


def _sparse_ad(L: NLieAlgebra, args: Sequence[dict]) -> list[dict]:
    cols = [dict() for _ in range(L.dim)]
    for combo in product(*[list(a.items()) for a in args]):
        idx = tuple(i for i, _ in combo)
        if len(set(idx)) != len(idx):
            continue
        coef = L.field.one
        for _, c in combo:
            coef = coef * c
        for b, col in enumerate(ad_columns(L, idx)):
            add_scaled(cols[b], coef, col)
    return cols


def _dense_matrix(cols: list[dict], dim: int, zero) -> list[list]:
    m = [[zero] * dim for _ in range(dim)]
    for j, col in enumerate(cols):
        for a, c in col.items():
            m[a][j] = c
    return m


def ad(L: NLieAlgebra, *xs) -> list[list]:
    """Matrix of ``b -> [x1, ..., x_{n-1}, b]``.

    Accepts ``n - 1`` coordinate vectors, or a single wedge/tensor element
    (anything with ``kind`` and ``coords`` attributes, see
    :mod:`filippov.multilinear`).
    """
    if len(xs) == 1 and hasattr(xs[0], "coords"):
        from .multilinear import ad_cols_of

        cols = ad_cols_of(L, xs[0])
    else:
        if len(xs) != L.n - 1:
            raise ValueError(f"ad takes {L.n - 1} elements, got {len(xs)}")
        cols = _sparse_ad(L, [L.to_sparse(x) for x in xs])
    return _dense_matrix(cols, L.dim, L.field.zero)


def right_mult(L: NLieAlgebra, *xs) -> list[list]:
    """Matrix of ``a -> [a, x1, ..., x_{n-1}]``; equals ``(-1)^(n-1) ad``."""
    sign = -1 if (L.n - 1) % 2 else 1
    return [[sign * c for c in row] for row in ad(L, *xs)]


def _flatten(cols: list[dict], dim: int) -> dict:
    return {a * dim + j: c for j, col in enumerate(cols) for a, c in col.items()}


def inner_derivations(L: NLieAlgebra) -> Subspace:
    """Span of all ad maps, as a subspace of flattened (row-major) dim x dim matrices."""
    dim = L.dim
    return Subspace.from_sparse(
        (_flatten(ad_columns(L, xs), dim) for xs in wedge_basis(dim, L.n - 1)), dim * dim, L.field
    )


def matrices_of(S: Subspace, dim: int) -> list[list[list]]:
    return [[v[a * dim:(a + 1) * dim] for a in range(dim)] for v in S.basis()]


def centre(L: NLieAlgebra) -> Subspace:
    rows: list[dict] = []
    for xs in wedge_basis(L.dim, L.n - 1):
        eqs: dict[int, dict] = {}
        for b, col in enumerate(ad_columns(L, xs)):
            for k, c in col.items():
                eqs.setdefault(k, {})[b] = c
        rows.extend(eqs.values())
    return Subspace(sparse_nullspace(rows, L.dim, L.field), L.dim, L.field)


def _right_images(L: NLieAlgebra, v: dict) -> Iterable[tuple[tuple[int, ...], dict]]:
    for ys in wedge_basis(L.dim, L.n - 1):
        img: dict = {}
        for i, c in v.items():
            add_scaled(img, c, L.basis_bracket((i,) + ys))
        yield ys, img


def is_ideal(L: NLieAlgebra, S: Subspace) -> Report:
    if S.ambient != L.dim:
        raise ValueError("subspace does not live in the algebra")
    for k, s in enumerate(S.sparse_basis()):
        for ys, img in _right_images(L, s):
            if not S.member(img):
                return Report(False, {
                    "element": sparse_to_dense(s, L.dim, L.field.zero),
                    "y": _labels(ys),
                    "image": sparse_to_dense(img, L.dim, L.field.zero),
                })
    return Report(True)


def derived_ideal(L: NLieAlgebra, I: Subspace | None = None) -> Subspace:
    """``[I, L, ..., L]``; ``I`` defaults to the whole algebra."""
    if I is None:
        I = Subspace.whole(L.dim, L.field)
    return Subspace.from_sparse(
        (img for s in I.sparse_basis() for _, img in _right_images(L, s)), L.dim, L.field
    )


def ideal_closure(L: NLieAlgebra, vectors: Iterable[dict]) -> Subspace:
    """Smallest ideal containing ``vectors``."""
    S = Subspace((), L.dim, L.field)
    todo = list(vectors)
    while todo:
        v = todo.pop()
        if S._ech.add(dict(v)):
            todo.extend(img for _, img in _right_images(L, v))
    return S


def is_simple(L: NLieAlgebra) -> Report:
    """Simplicity test by ideal closure of probe vectors.

    The probe set is every basis vector and every sum of two distinct basis
    vectors.  A proper ideal containing a probe vector is a certificate of
    non-simplicity; a pass means no probe generates a proper ideal.
    """
    if derived_ideal(L).dim() == 0:
        return Report(False, {"reason": "abelian: L^1 = 0"})
    one = L.field.one
    probes = [{i: one} for i in range(L.dim)]
    probes += [{i: one, j: one} for i, j in combinations(range(L.dim), 2)]
    for p in probes:
        closure = ideal_closure(L, [p])
        if closure.dim() < L.dim:
            return Report(False, {
                "reason": "proper ideal",
                "generator": sparse_to_dense(p, L.dim, L.field.zero),
                "ideal": closure.basis(),
            })
    return Report(True, details={"probes": len(probes)})


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def make_Vn(n: int, field=QQ) -> NLieAlgebra:
    """The simple (n+1)-dimensional n-Lie algebra.

    Omitting ``e_i`` (1-based) from ``e_1..e_{n+1}`` brackets to
    ``(-1)^(n+1+i) e_i``.
    """
    if n < 2:
        raise ValueError("V_n needs n >= 2")
    table = {}
    for i in range(1, n + 2):
        key = tuple(j - 1 for j in range(1, n + 2) if j != i)
        table[key] = {i - 1: (-1) ** (n + 1 + i)}
    return NLieAlgebra(n, n + 1, table, field)


def make_filiform5(field=QQ) -> NLieAlgebra:
    """Five-dimensional filiform 3-Lie algebra.

    [x1,x2,x3] = x4 and [x1,x2,x4] = [x1,x3,x4] = [x2,x3,x4] = x5.
    """
    table = {(0, 1, 2): {3: 1}, (0, 1, 3): {4: 1}, (0, 2, 3): {4: 1}, (1, 2, 3): {4: 1}}
    return NLieAlgebra(3, 5, table, field)


def make_abelian(dim: int, n: int, field=QQ) -> NLieAlgebra:
    return NLieAlgebra(n, dim, {}, field)


def central_ext_trivial(L: NLieAlgebra) -> NLieAlgebra:
    """``K z + L``: one extra basis vector (last index) that brackets to zero."""
    return NLieAlgebra(L.n, L.dim + 1, L.table(), L.field)


def free_nilpotent_weight2(m: int, n: int, field=QQ) -> NLieAlgebra:
    """Weight-2 truncation of the free n-Lie algebra on ``m`` generators.

    Basis: generators ``0..m-1`` followed by one symbol per n-subset of
    generators (in lexicographic order).  The bracket of n distinct generators
    is its symbol; anything involving a symbol brackets to zero.
    """
    if n < 2 or m < n:
        raise ValueError("need n >= 2 and m >= n")
    subsets = wedge_basis(m, n)
    table = {s: {m + k: 1} for k, s in enumerate(subsets)}
    return NLieAlgebra(n, m + len(subsets), table, field)


def direct_sum(L1: NLieAlgebra, L2: NLieAlgebra) -> NLieAlgebra:
    if L1.n != L2.n or L1.field != L2.field:
        raise ValueError("direct sum needs equal arity and field")
    off = L1.dim
    table = L1.table()
    for key, vec in L2.table().items():
        table[tuple(i + off for i in key)] = {k + off: c for k, c in vec.items()}
    return NLieAlgebra(L1.n, L1.dim + L2.dim, table, L1.field)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_HEADER = re.compile(r"^\s*(n|dim|field)\s*=\s*(\S+)\s*$")
_BRACKET = re.compile(r"^\s*\[([^\]]*)\]\s*=\s*(.*?)\s*$")
_TERM = re.compile(r"\s*([+-])?\s*(?:([^\s*+]+?)\s*\*\s*)?x(\d+)\s*")


def _parse_terms(rhs: str, dim: int, field, lineno: int) -> dict:
    vec: dict = {}
    if rhs.strip() == "0":
        return vec
    pos = 0
    first = True
    while pos < len(rhs):
        m = _TERM.match(rhs, pos)
        if not m or m.end() == pos:
            raise ParseError(lineno, f"cannot parse term at {rhs[pos:]!r}")
        sign, coeff, j = m.groups()
        if not first and sign is None:
            raise ParseError(lineno, f"missing '+' before {rhs[pos:].strip()!r}")
        first = False
        try:
            c = field.parse(coeff) if coeff is not None else field.one
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, f"non-field scalar literal {coeff!r}") from None
        if sign == "-":
            c = -c
        k = int(j) - 1
        if not 0 <= k < dim:
            raise ParseError(lineno, f"index out of range: x{j}")
        add_scaled(vec, c, {k: field.one})
        pos = m.end()
    return vec


def parse_algebra(text: str) -> NLieAlgebra:
    """Parse the line-oriented algebra format (see :func:`serialize_algebra`)."""
    header: dict[str, str] = {}
    table: dict[tuple[int, ...], dict] = {}
    field = QQ
    n = dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        h = _HEADER.match(line)
        if h:
            key, value = h.groups()
            if table:
                raise ParseError(lineno, f"header '{key}' after bracket lines")
            if key in header:
                raise ParseError(lineno, f"repeated header '{key}'")
            header[key] = value
            try:
                if key == "field":
                    field = field_from_tag(value)
                elif key == "n":
                    n = int(value)
                    if n < 2:
                        raise ValueError("arity must be at least 2")
                else:
                    dim = int(value)
                    if dim < 0:
                        raise ValueError("dimension must be non-negative")
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
            continue
        b = _BRACKET.match(line)
        if not b:
            raise ParseError(lineno, f"syntax error: {line!r}")
        if n is None or dim is None:
            raise ParseError(lineno, "bracket line before 'n =' and 'dim =' headers")
        try:
            idx = tuple(int(t) - 1 for t in b.group(1).split(","))
        except ValueError:
            raise ParseError(lineno, f"bad index list [{b.group(1)}]") from None
        if len(idx) != n:
            raise ParseError(lineno, f"arity mismatch: {len(idx)} indices for n = {n}")
        if any(not 0 <= i < dim for i in idx):
            raise ParseError(lineno, f"index out of range in [{b.group(1)}]")
        if any(a >= c for a, c in zip(idx, idx[1:])):
            raise ParseError(lineno, f"indices must be strictly increasing in [{b.group(1)}]")
        if idx in table:
            raise ParseError(lineno, f"repeated bracket key [{b.group(1)}]")
        table[idx] = _parse_terms(b.group(2), dim, field, lineno)
    if n is None or dim is None:
        raise ParseError(0, "missing 'n =' or 'dim =' header")
    return NLieAlgebra(n, dim, table, field)


def format_vector(vec: dict) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{c}*x{k + 1}" for k, c in sorted(vec.items()))


def serialize_algebra(L: NLieAlgebra) -> str:
    lines = [f"n = {L.n}", f"dim = {L.dim}", f"field = {L.field.tag}"]
    for key, vec in sorted(L.table().items()):
        lines.append(f"[{','.join(str(i + 1) for i in key)}] = {format_vector(vec)}")
    return "\n".join(lines) + "\n"
