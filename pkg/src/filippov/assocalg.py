"""The associated algebra U(L) of an n-Lie algebra.

U(L) is presented as the free algebra on the wedge basis of the (n-1)-st
exterior power modulo two relation families:

* commutators: ``X_x X_y - X_y X_x - ad_x(y)`` for every ordered pair of
  wedge basis elements;
* bracket wedges: ``[x1..xn] ^ y2..y_{n-1} - sum_i (-1)^(n-i) X_{x^_i} X_{x_i ^ y}``
  for every n-subset ``x`` and (n-2)-subset ``y`` of basis indices.

Filtered dimensions come from a two-sided Buchberger completion under the
degree-lexicographic order, truncated at a degree bound.  Relations are
inhomogeneous, so the truncation is only as good as the bound: obstructions
above the bound that would reduce to lower-degree elements are not seen.
The engine is checked against the free algebra and polynomial rings.

H_1(L, K) = Omega / Omega^2 needs no completion: an element ``a r b`` of the
relation ideal with ``a`` or ``b`` of positive degree has no degree-1 part,
because no relation has a constant term.  So H_1 is the generator span modulo
the degree-1 parts of the generating relations.
"""

from __future__ import annotations

import heapq
import itertools
import os
from collections import deque
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable, Mapping, Sequence

from ._sparse import add_scaled
from .exactlin import QQ, Echelon, Subspace, sparse_nullspace
from .indices import sort_sign, wedge_basis, wedge_index
from .nlie import NLieAlgebra, ad_columns, free_nilpotent_weight2
from .report import Report

__all__ = [
    "NcPoly",
    "Presentation",
    "LModule",
    "ResourceCapExceeded",
    "associated_algebra_presentation",
    "free_presentation",
    "graded_dims",
    "groebner_truncated",
    "h1_dim",
    "h1_basis",
    "h1_cohomology_dim",
    "trivial_module",
    "adjoint_module",
    "check_module_axioms",
    "module_action_respects_relations",
    "invariants",
    "coinvariants_dim",
    "free_case_relation",
    "span_equal",
    "assoc_report",
]

Word = tuple[int, ...]

DEFAULT_WORD_CAP = 2_000_000


def _deglex(w: Word) -> tuple[int, Word]:
    return len(w), w


class NcPoly:
    """A noncommutative polynomial: ``{word: coefficient}`` over generator indices."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[Word, object] | None = None, field=QQ):
        self.field = field
        self.terms: dict[Word, object] = {}
        for w, c in (terms or {}).items():
            c = field(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms: dict, field) -> "NcPoly":
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def gen(cls, i: int, field=QQ) -> "NcPoly":
        return cls({(i,): 1}, field)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        add_scaled(out, 1, other.terms)
        return NcPoly._raw(out, self.field)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        add_scaled(out, -1, other.terms)
        return NcPoly._raw(out, self.field)

    def __neg__(self) -> "NcPoly":
        return NcPoly._raw({w: -c for w, c in self.terms.items()}, self.field)

    def scale(self, c) -> "NcPoly":
        c = self.field(c)
        if not c:
            return NcPoly._raw({}, self.field)
        return NcPoly._raw({w: c * v for w, v in self.terms.items()}, self.field)

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                add_scaled(out, a * b, {u + v: 1})
        return NcPoly._raw(out, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Word, object]]:
        """Terms in decreasing deglex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: _deglex(t[0]), reverse=True)

    def leading(self) -> tuple[Word, object]:
        w = max(self.terms, key=_deglex)
        return w, self.terms[w]

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def constant(self):
        return self.terms.get((), self.field.zero)

    def part(self, degree: int) -> dict[Word, object]:
        return {w: c for w, c in self.terms.items() if len(w) == degree}

    def monic(self) -> "NcPoly":
        _, c = self.leading()
        return self.scale(self.field.one / c)

    def substitute(self, images: Mapping[int, "NcPoly"]) -> "NcPoly":
        """Replace generator ``i`` by ``images[i]`` where given."""
        out: dict = {}
        for w, c in self.terms.items():
            prod = {(): self.field.one}
            for letter in w:
                img = images.get(letter)
                if img is None:
                    prod = {u + (letter,): a for u, a in prod.items()}
                else:
                    nxt: dict = {}
                    for u, a in prod.items():
                        for v, b in img.terms.items():
                            add_scaled(nxt, a * b, {u + v: 1})
                    prod = nxt
            add_scaled(out, c, prod)
        return NcPoly._raw(out, self.field)

    def format(self, labels: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = ".".join(labels[i] for i in w) if w else "1"
            parts.append(f"{c}*{word}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NcPoly({self.format([f'X{i}' for i in range(1 + max((max(w) for w in self.terms if w), default=0))])})"


def span_equal(a: Sequence[NcPoly], b: Sequence[NcPoly]) -> bool:
    """Whether two lists of polynomials span the same subspace."""
    words = sorted({w for p in (*a, *b) for w in p.terms}, key=_deglex)
    pos = {w: i for i, w in enumerate(words)}
    field = next((p.field for p in (*a, *b)), QQ)

    def span(ps):
        return Subspace.from_sparse(({pos[w]: c for w, c in p.terms.items()} for p in ps), len(words), field)

    return span(a) == span(b)


def _gen_label(idx: Sequence[int]) -> str:
    return "g{" + ",".join(str(i + 1) for i in idx) + "}"


@dataclass
class Presentation:
    """Generators and relations of a finitely presented unital algebra.

    The augmentation sends every generator to zero; it is well defined because
    relations have no constant term.
    """

    labels: list[str]
    relations: list[NcPoly]
    field: object = QQ
    family_counts: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        for r in self.relations:
            if r.constant():
                raise ValueError("relations must have zero constant term")

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def augmentation(self, p: NcPoly):
        return p.constant()

    def dump(self) -> str:
        return "".join(r.format(self.labels) + "\n" for r in self.relations)


def free_presentation(k: int, field=QQ) -> Presentation:
    return Presentation([f"X{i + 1}" for i in range(k)], [], field)


def _wedge_poly(terms: Mapping[tuple[int, ...], object], index: Mapping, field) -> dict:
    """Linear polynomial from a wedge combination with unsorted index tuples."""
    out: dict = {}
    for idx, c in terms.items():
        s, key = sort_sign(tuple(idx))
        if s:
            add_scaled(out, s * c, {(index[key],): field.one})
    return out


def _ad_on_wedge(L: NLieAlgebra, x: tuple[int, ...], y: tuple[int, ...]) -> dict:
    """``ad_x(y)`` on a wedge basis element, as ``{unsorted tuple: coeff}``."""
    out: dict = {}
    cols = ad_columns(L, x)
    for pos, yi in enumerate(y):
        for a, c in cols[yi].items():
            new = y[:pos] + (a,) + y[pos + 1:]
            out[new] = out.get(new, 0) + c
    return out


def _dedupe(polys: Iterable[NcPoly], seen: set) -> list[NcPoly]:
    out = []
    for p in polys:
        if not p:
            continue
        key = p.monic()
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


def associated_algebra_presentation(L: NLieAlgebra) -> Presentation:
    """Presentation of U(L) on the wedge basis (labels ``g{i1,...}``, 1-based).

    Zero relations and relations equal up to a scalar to an earlier one are
    dropped; ``family_counts`` records how many of each family survive.
    """
    k = L.n - 1
    basis = wedge_basis(L.dim, k)
    index = wedge_index(L.dim, k)
    F = L.field
    one = F.one

    fam1 = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            terms = {(i, j): one}
            add_scaled(terms, -one, {(j, i): one})
            add_scaled(terms, -one, _wedge_poly(_ad_on_wedge(L, x, y), index, F))
            fam1.append(NcPoly._raw(terms, F))

    fam2 = []
    n = L.n
    for xs in wedge_basis(L.dim, n):
        br = L.basis_bracket(xs)
        for ys in wedge_basis(L.dim, n - 2):
            terms = _wedge_poly({(a,) + ys: c for a, c in br.items()}, index, F)
            for i in range(1, n + 1):
                hat = xs[:i - 1] + xs[i:]
                s, key = sort_sign((xs[i - 1],) + ys)
                if not s:
                    continue
                sign = (-1) ** (n - i) * s
                add_scaled(terms, -sign * one, {(index[hat], index[key]): one})
            fam2.append(NcPoly._raw(terms, F))

    seen: set = set()
    r1 = _dedupe(fam1, seen)
    r2 = _dedupe(fam2, seen)
    return Presentation([_gen_label(x) for x in basis], r1 + r2, F, {"commutator": len(r1), "bracket_wedge": len(r2)})


# ---------------------------------------------------------------------------
# Truncated two-sided completion
# ---------------------------------------------------------------------------


class ResourceCapExceeded(RuntimeError):
    """The completion engine outgrew its word budget."""


def _word_cap() -> int:
    raw = os.environ.get("NLIE_WORD_CAP")
    return int(raw) if raw else DEFAULT_WORD_CAP


class _Completion:
    def __init__(self, field, max_degree: int, cap: int):
        self.field = field
        self.max_degree = max_degree
        self.cap = cap
        self.basis: dict[Word, dict] = {}  # leading word -> monic terms
        self._lengths: set[int] = set()

    def _divisor(self, w: Word):
        for i in range(len(w)):
            for ln in self._lengths:
                if i + ln <= len(w):
                    sub = w[i:i + ln]
                    if sub in self.basis:
                        return sub, i
        return None

    def reduce(self, terms: dict) -> dict:
        todo = dict(terms)
        heap = [(-len(w), tuple(-x for x in w), w) for w in todo]
        heapq.heapify(heap)
        done: dict = {}
        while heap:
            _, _, w = heapq.heappop(heap)
            c = todo.pop(w, None)
            if c is None:
                continue
            hit = self._divisor(w)
            if hit is None:
                done[w] = c
                continue
            lm, i = hit
            left, right = w[:i], w[i + len(lm):]
            for u, a in self.basis[lm].items():
                if u == lm:
                    continue
                nw = left + u + right
                nv = todo.get(nw, 0) - c * a
                if nv:
                    if nw not in todo:
                        heapq.heappush(heap, (-len(nw), tuple(-x for x in nw), nw))
                    todo[nw] = nv
                else:
                    todo.pop(nw, None)
        return done

    def _size(self) -> int:
        return sum(len(t) for t in self.basis.values())

    def run(self, relations: Iterable[dict]) -> None:
        counter = itertools.count()
        queue: list = []

        def push(terms: dict) -> None:
            if terms:
                lm = max(terms, key=_deglex)
                heapq.heappush(queue, (len(lm), lm, next(counter), terms))

        for r in relations:
            push(dict(r))
        while queue:
            if len(queue) + self._size() > self.cap:
                raise ResourceCapExceeded(f"completion exceeded the word cap of {self.cap}")
            *_, terms = heapq.heappop(queue)
            h = self.reduce(terms)
            if not h:
                continue
            lm = max(h, key=_deglex)
            if len(lm) > self.max_degree:
                continue
            inv = self.field.one / h[lm]
            h = {w: c * inv for w, c in h.items()}
            for old in [u for u in self.basis if _contains(u, lm)]:
                push(self.basis.pop(old))
            self.basis[lm] = h
            self._lengths = {len(u) for u in self.basis}
            for u, g in list(self.basis.items()):
                for s in _obstructions(lm, h, u, g, self.max_degree):
                    push(s)
                if u != lm:
                    for s in _obstructions(u, g, lm, h, self.max_degree):
                        push(s)


def _contains(word: Word, sub: Word) -> bool:
    if len(sub) > len(word):
        return False
    return any(word[i:i + len(sub)] == sub for i in range(len(word) - len(sub) + 1))


def _obstructions(u: Word, f: dict, v: Word, g: dict, max_degree: int) -> Iterable[dict]:
    """S-polynomials from a proper suffix of ``u`` overlapping a prefix of ``v``."""
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k:] != v[:k]:
            continue
        if len(u) + len(v) - k > max_degree:
            continue
        right, left = v[k:], u[:len(u) - k]
        out: dict = {}
        for w, c in f.items():
            add_scaled(out, c, {w + right: 1})
        for w, c in g.items():
            add_scaled(out, -c, {left + w: 1})
        yield out


def groebner_truncated(P: Presentation, max_degree: int, cap: int | None = None) -> list[NcPoly]:
    """Monic Groebner basis elements with leading word of length <= ``max_degree``."""
    eng = _Completion(P.field, max_degree, cap if cap is not None else _word_cap())
    eng.run(r.terms for r in P.relations)
    return [NcPoly._raw(t, P.field) for _, t in sorted(eng.basis.items(), key=lambda kv: _deglex(kv[0]))]


def _count_normal_words(k: int, obstructions: Iterable[Word], D: int) -> list[int]:
    """Words of each length up to ``D`` avoiding every obstruction as a factor.

    Dynamic programme over the Aho-Corasick automaton of the obstructions.
    """
    goto: list[dict[int, int]] = [{}]
    dead = [False]
    for w in obstructions:
        s = 0
        for a in w:
            if a not in goto[s]:
                goto.append({})
                dead.append(False)
                goto[s][a] = len(goto) - 1
            s = goto[s][a]
        dead[s] = True
    fail = [0] * len(goto)
    delta = [[0] * k for _ in goto]
    order = deque()
    for a in range(k):
        t = goto[0].get(a)
        if t is None:
            delta[0][a] = 0
        else:
            delta[0][a] = t
            order.append(t)
    while order:
        s = order.popleft()
        dead[s] = dead[s] or dead[fail[s]]
        for a in range(k):
            t = goto[s].get(a)
            if t is None:
                delta[s][a] = delta[fail[s]][a]
            else:
                fail[t] = delta[fail[s]][a]
                delta[s][a] = t
                order.append(t)
    counts = {0: 1}
    dims = [1]
    for _ in range(D):
        nxt: dict[int, int] = {}
        for s, c in counts.items():
            for a in range(k):
                t = delta[s][a]
                if not dead[t]:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
        dims.append(sum(counts.values()))
    return dims


def graded_dims(P: Presentation, D: int, cap: int | None = None, slack: int = 1) -> list[int]:
    """``dim F_d / F_{d-1}`` for ``d = 0..D`` (word-length filtration).

    Overlaps are completed through degree ``D + slack``.
    """
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    gb = groebner_truncated(P, D + slack, cap)
    lms = [g.leading()[0] for g in gb]
    return _count_normal_words(P.ngens, lms, D)


# ---------------------------------------------------------------------------
# First homology
# ---------------------------------------------------------------------------


def _linear_parts(P: Presentation) -> Subspace:
    rows = ({w[0]: c for w, c in r.part(1).items()} for r in P.relations)
    return Subspace.from_sparse(rows, P.ngens, P.field)


def h1_dim(P: Presentation) -> int:
    """``dim Omega / Omega^2``."""
    return P.ngens - _linear_parts(P).dim()


def h1_basis(P: Presentation) -> list[str]:
    """Generators whose classes form a basis of ``Omega / Omega^2``."""
    return [P.labels[i] for i in _linear_parts(P).quotient_basis()]


def h1_cohomology_dim(P: Presentation) -> int:
    """``dim Hom(Omega / Omega^2, K)``; the dual of a finite-dimensional space."""
    return len(h1_basis(P))


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

Cols = list  # operator as a list of sparse columns: cols[j] = image of m_j


@dataclass
class LModule:
    """A module over an n-Lie algebra: one ``mdim x mdim`` matrix per wedge basis element."""

    mdim: int
    action: list[list[list]]

    def columns(self) -> list[Cols]:
        """Each action matrix as sparse columns."""
        return [[{i: m[i][j] for i in range(self.mdim) if m[i][j]} for j in range(self.mdim)] for m in self.action]

    def mutated(self, gen: int, row: int, col: int, value) -> "LModule":
        action = [[list(r) for r in m] for m in self.action]
        action[gen][row][col] = value
        return LModule(self.mdim, action)


def trivial_module(L: NLieAlgebra) -> LModule:
    size = len(wedge_basis(L.dim, L.n - 1))
    return LModule(1, [[[L.field.zero]] for _ in range(size)])


def adjoint_module(L: NLieAlgebra) -> LModule:
    """``L`` acting on itself by ``x . m = [x1, ..., x_{n-1}, m]``."""
    mats = []
    for x in wedge_basis(L.dim, L.n - 1):
        m = [[L.field.zero] * L.dim for _ in range(L.dim)]
        for b, col in enumerate(ad_columns(L, x)):
            for a, c in col.items():
                m[a][b] = c
        mats.append(m)
    return LModule(L.dim, mats)


def _check_shape(L: NLieAlgebra, M: LModule) -> None:
    if len(M.action) != len(wedge_basis(L.dim, L.n - 1)):
        raise ValueError("module action needs one matrix per wedge basis element")
    for m in M.action:
        if len(m) != M.mdim or any(len(r) != M.mdim for r in m):
            raise ValueError("action matrices must be mdim x mdim")


def _apply(op: Cols, v: dict) -> dict:
    out: dict = {}
    for j, c in v.items():
        add_scaled(out, c, op[j])
    return out


def _compose(a: Cols, b: Cols) -> Cols:
    return [_apply(a, col) for col in b]


def _combine(terms: Iterable[tuple[object, Cols]], mdim: int) -> Cols:
    out: Cols = [{} for _ in range(mdim)]
    for c, op in terms:
        for j in range(mdim):
            add_scaled(out[j], c, op[j])
    return out


def _dense(op: Cols, mdim: int, zero) -> list[list]:
    m = [[zero] * mdim for _ in range(mdim)]
    for j, col in enumerate(op):
        for i, c in col.items():
            m[i][j] = c
    return m


def _rho_tuple(L: NLieAlgebra, ops: list[Cols], mdim: int, terms: Mapping[tuple[int, ...], object]) -> Cols:
    """Action of a combination of (unsorted) index tuples."""
    index = wedge_index(L.dim, L.n - 1)
    combo: dict = {}
    for idx, c in terms.items():
        s, key = sort_sign(tuple(idx))
        if s:
            add_scaled(combo, s * c, {index[key]: L.field.one})
    return _combine(((c, ops[i]) for i, c in combo.items()), mdim)


def check_module_axioms(L: NLieAlgebra, M: LModule) -> Report:
    """Check both module identities on basis instantiations.

    1. ``[x, [y, m]] - [y, [x, m]] = sum_i [y1, .., [x, y_i], .., y_{n-1}, m]``
    2. ``[[x1..xn], y2..y_{n-1}, m] = sum_{i=1}^{n} (-1)^(n-i) [x1..^xi..xn, [xi, y2..y_{n-1}, m]]``
    """
    _check_shape(L, M)
    n, F, d = L.n, L.field, M.mdim
    index = wedge_index(L.dim, n - 1)
    ops = M.columns()
    for xs in wedge_basis(L.dim, n - 1):
        for ys in wedge_basis(L.dim, n - 1):
            X, Y = ops[index[xs]], ops[index[ys]]
            terms: dict = {}
            for i, yi in enumerate(ys):
                for a, c in L.basis_bracket(xs + (yi,)).items():
                    key = ys[:i] + (a,) + ys[i + 1:]
                    terms[key] = terms.get(key, 0) + c
            res = _combine([(F.one, _compose(X, Y)), (-F.one, _compose(Y, X)),
                            (-F.one, _rho_tuple(L, ops, d, terms))], d)
            if any(res):
                return Report(False, {"identity": 1, "x": _gen_label(xs), "y": _gen_label(ys),
                                      "residual": _dense(res, d, F.zero)})
    for xs in wedge_basis(L.dim, n):
        br = L.basis_bracket(xs)
        for ys in wedge_basis(L.dim, n - 2):
            parts = [(F.one, _rho_tuple(L, ops, d, {(a,) + ys: c for a, c in br.items()}))]
            for i in range(1, n + 1):
                hat = xs[:i - 1] + xs[i:]
                inner = _rho_tuple(L, ops, d, {(xs[i - 1],) + ys: F.one})
                parts.append((-(-1) ** (n - i) * F.one, _compose(ops[index[hat]], inner)))
            res = _combine(parts, d)
            if any(res):
                return Report(False, {
                    "identity": 2,
                    "x": [f"x{i + 1}" for i in xs],
                    "y": [f"x{i + 1}" for i in ys],
                    "residual": _dense(res, d, F.zero),
                })
    return Report(True)


def _evaluate(p: NcPoly, ops: list[Cols], mdim: int) -> Cols:
    """Operator of ``p``; the last letter of a word acts first."""
    out: Cols = [{} for _ in range(mdim)]
    for j in range(mdim):
        for w, c in p.terms.items():
            v = {j: c}
            for letter in reversed(w):
                v = _apply(ops[letter], v)
                if not v:
                    break
            add_scaled(out[j], 1, v)
    return out


def module_action_respects_relations(L: NLieAlgebra, M: LModule, P: Presentation | None = None) -> Report:
    """Every defining relation of U(L) must act as the zero operator on ``M``."""
    _check_shape(L, M)
    P = P or associated_algebra_presentation(L)
    ops = M.columns()
    for k, r in enumerate(P.relations):
        op = _evaluate(r, ops, M.mdim)
        if any(op):
            return Report(False, {"relation": r.format(P.labels), "index": k,
                                  "operator": _dense(op, M.mdim, L.field.zero)})
    return Report(True, details={"relations": len(P.relations)})


def invariants(L: NLieAlgebra, M: LModule) -> Subspace:
    """``{m : x . m = 0 for every x}``."""
    _check_shape(L, M)
    rows = [{j: v for j, v in enumerate(row) if v} for m in M.action for row in m]
    return Subspace(sparse_nullspace(rows, M.mdim, L.field), M.mdim, L.field)


def coinvariants_dim(L: NLieAlgebra, M: LModule) -> int:
    """``dim M / LM``."""
    _check_shape(L, M)
    images = Echelon(M.mdim)
    for op in M.columns():
        for col in op:
            images.add(col)
    return M.mdim - len(images)


# ---------------------------------------------------------------------------
# Free n-Lie algebras, weight-2 model
# ---------------------------------------------------------------------------


def free_case_relation(m: int, n: int, field=QQ) -> list[NcPoly]:
    """Quadratic relations left among generator-only wedges.

    Works in the weight-2 free nilpotent model on ``m`` generators: every wedge
    generator containing a bracket symbol is eliminated through its
    bracket-wedge relation, then the commutator relations between
    generator-only wedges are rewritten.  An empty result means U is free on
    the generator-only wedges (through weight 2).  Polynomials use the
    generator indices of :func:`associated_algebra_presentation`.
    """
    if not m >= n >= 3:
        raise ValueError("need m >= n >= 3")
    L = free_nilpotent_weight2(m, n, field)
    k = n - 1
    basis = wedge_basis(L.dim, k)
    index = wedge_index(L.dim, k)
    one = field.one

    rewrite: dict[int, NcPoly] = {}
    for xs in wedge_basis(m, n):
        (sym, _), = L.basis_bracket(xs).items()
        for ys in wedge_basis(L.dim, n - 2):
            s, key = sort_sign((sym,) + ys)
            if not s:
                continue
            g = index[key]
            if g in rewrite:
                continue
            rhs: dict = {}
            for i in range(1, n + 1):
                hat = xs[:i - 1] + xs[i:]
                t, key2 = sort_sign((xs[i - 1],) + ys)
                if t:
                    add_scaled(rhs, (-1) ** (n - i) * t * s * one, {(index[hat], index[key2]): one})
            rewrite[g] = NcPoly._raw(rhs, field)

    def resolve(p: NcPoly) -> NcPoly:
        while any(letter in rewrite for w in p.terms for letter in w):
            p = p.substitute(rewrite)
        return p

    gen_only = [i for i, x in enumerate(basis) if all(j < m for j in x)]
    out = []
    for i in gen_only:
        for j in gen_only:
            x, y = basis[i], basis[j]
            terms = {(i, j): one}
            add_scaled(terms, -one, {(j, i): one})
            add_scaled(terms, -one, _wedge_poly(_ad_on_wedge(L, x, y), index, field))
            out.append(resolve(NcPoly._raw(terms, field)))
    return [p.monic() for p in _dedupe(out, set())]


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


def _poly_ring_dims(variables: int, D: int) -> list[int]:
    if variables == 0:
        return [1] + [0] * D
    return [comb(d + variables - 1, variables - 1) for d in range(D + 1)]


def assoc_report(L: NLieAlgebra, name: str, D: int, extra_claims: Sequence[dict] = (), cap: int | None = None) -> dict:
    """JSON-ready summary of U(L): generators, relations, filtered dims, H_1.

    Abelian algebras of dimension n - 1 or n are compared against the
    polynomial rings stated for them in the literature; disagreements are
    listed under ``disputed_claims``.
    """
    P = associated_algebra_presentation(L)
    dims = graded_dims(P, D, cap)
    claims = list(extra_claims)
    if L.is_abelian() and L.dim == L.n:
        stated = _poly_ring_dims(L.n - 1, D)
        if stated != dims:
            claims.append({
                "claim": f"U(abelian {L.n}-Lie algebra of dimension {L.n}) = K[X_1..X_{L.n - 1}]",
                "disputed": True,
                "paper": stated,
                "computed": dims,
                "computed_reading": f"commutative polynomial ring in {P.ngens} variables"
                if dims == _poly_ring_dims(P.ngens, D) else "see dims",
            })
    if L.is_abelian() and L.dim == L.n - 1:
        stated = _poly_ring_dims(1, D)
        if stated != dims:
            claims.append({"claim": "U(L_{n-1}) = K[X]", "disputed": True, "paper": stated, "computed": dims})
    return {
        "algebra": name,
        "generators": P.labels,
        "relation_count": len(P.relations),
        "dims": dims,
        "h1": h1_dim(P),
        "disputed_claims": claims,
    }
