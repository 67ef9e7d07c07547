"""Exact scalars and the linear-algebra kernel.

Two kinds of field are supported: the rationals (``QQ``, elements are
:class:`fractions.Fraction`) and prime fields ``GF(p)`` (elements are
:class:`FpElement`).  Everything is exact.

Matrices are plain lists of rows.  Internally elimination runs on sparse rows
(``dict`` column -> value) because most systems built by this package are
very sparse; the external contract is canonical reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "QQ",
    "GF",
    "FpElement",
    "RationalField",
    "PrimeField",
    "field_from_tag",
    "rref",
    "rank",
    "nullspace",
    "sparse_nullspace",
    "solve_linear",
    "det",
    "mat_mul",
    "mat_lincomb",
    "identity",
    "is_zero_matrix",
    "Subspace",
    "Echelon",
]


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class RationalField:
    characteristic = 0
    tag = "Q"

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElement):
            raise TypeError("cannot coerce a prime-field element to Q")
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(x)

    def parse(self, literal: str) -> Fraction:
        """Parse an integer or ``p/q`` literal."""
        text = literal.strip()
        try:
            num, _, den = text.partition("/")
            if not _is_int_literal(num) or (den and not _is_int_literal(den)):
                raise ValueError
            return Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational literal: {literal!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


def _is_int_literal(text: str) -> bool:
    t = text.strip()
    if t[:1] in "+-":
        t = t[1:]
    return t.isdigit()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FpElement:
    """Element of GF(p), stored as its representative in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FpElement({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


class PrimeField:
    tag: str

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, int):
            return FpElement(x, self.p)
        return self.zero + Fraction(x)

    def parse(self, literal: str) -> FpElement:
        return self(QQ.parse(literal))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """``"Q"`` -> QQ, ``"Fp:7"`` -> GF(7)."""
    t = tag.strip()
    if t == "Q":
        return QQ
    if t.startswith("Fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad field tag {tag!r}") from None
        return GF(p)
    raise ValueError(f"bad field tag {tag!r}; expected Q or Fp:<prime>")


def format_scalar(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Incremental sparse echelon form
# ---------------------------------------------------------------------------


class Echelon:
    """Fully reduced echelon basis grown one sparse row at a time.

    ``rows`` maps pivot column -> row (dict column -> value) with pivot entry 1
    and zeros in every other pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        """Return ``row`` minus its component along the current span."""
        r = {c: (Fraction(v) if isinstance(v, int) else v) for c, v in row.items() if v}
        for p in [c for c in r if c in self.rows]:
            coef = r.get(p)
            if not coef:
                continue
            for c, v in self.rows[p].items():
                nv = r.get(c, 0) - coef * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True iff it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for q, other in self.rows.items():
            coef = other.get(p)
            if coef:
                for c, v in r.items():
                    nv = other.get(c, 0) - coef * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self.rows[p] = r
        return True

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self, zero) -> list[list]:
        out = []
        for p in self.pivots:
            row = [zero] * self.ncols
            for c, v in self.rows[p].items():
                row[c] = v
            out.append(row)
        return out


def _ncols(m: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        for row in m:
            if len(row) != ncols:
                raise ValueError("row length does not match ncols")
        return ncols
    if not m:
        raise ValueError("ncols is required for a matrix with no rows")
    width = len(m[0])
    for row in m:
        if len(row) != width:
            raise ValueError("ragged matrix")
    return width


def _zero_of(m: Sequence[Sequence], default=Fraction(0)):
    for row in m:
        for x in row:
            return Fraction(0) if isinstance(x, int) else x * 0
    return default


def _echelon(m: Sequence[Sequence], ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for row in m:
        ech.add({c: v for c, v in enumerate(row) if v})
    return ech


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    width = _ncols(m, ncols)
    zero = _zero_of(m)
    ech = _echelon(m, width)
    rows = ech.dense_rows(zero)
    rows.extend([zero] * width for _ in range(len(m) - len(rows)))
    return rows, ech.pivots


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(_echelon(m, _ncols(m, ncols)))


def _nullspace_from(ech: Echelon, ncols: int, zero, one) -> list[list]:
    pivots = set(ech.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for p, row in ech.rows.items():
            coef = row.get(free)
            if coef:
                v[p] = -coef
        basis.append(v)
    return basis


def nullspace(m: Sequence[Sequence], ncols: int | None = None, field=None) -> list[list]:
    """Basis of ``{v : m v = 0}``, one vector per non-pivot column."""
    width = _ncols(m, ncols)
    zero = field.zero if field is not None else _zero_of(m)
    one = field.one if field is not None else zero + 1
    return _nullspace_from(_echelon(m, width), width, zero, one)


def sparse_nullspace(rows: Iterable[dict], ncols: int, field=QQ) -> list[list]:
    """Nullspace basis for a system given as sparse rows (dict column -> value)."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return _nullspace_from(ech, ncols, field.zero, field.one)


def solve_linear(m: Sequence[Sequence], rhs: Sequence, ncols: int | None = None):
    """One exact solution of ``m x = rhs``, or None if the system is inconsistent.

    Free variables are set to zero.  Raises ValueError on shape mismatch.
    """
    width = _ncols(m, ncols)
    if len(rhs) != len(m):
        raise ValueError("rhs length does not match the number of rows")
    zero = _zero_of(m, _zero_of([rhs]))
    ech = Echelon(width + 1)
    for row, b in zip(m, rhs):
        r = {c: v for c, v in enumerate(row) if v}
        if b:
            r[width] = b
        ech.add(r)
    if width in ech.rows:
        return None
    x = [zero] * width
    for p, row in ech.rows.items():
        x[p] = row.get(width, zero) + zero
    return x


def det(m: Sequence[Sequence]):
    """Determinant by exact Gaussian elimination."""
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant of a non-square matrix")
    if size == 0:
        return Fraction(1)
    zero = _zero_of(m)
    a = [[zero + x for x in row] for row in m]
    result = zero + 1
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return result * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        pv = a[col][col]
        result = result * pv
        for r in range(col + 1, size):
            f = a[r][col] / pv
            if f:
                for c in range(col, size):
                    a[r][c] = a[r][c] - f * a[col][c]
    return result


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if a and len(a[0]) != len(b):
        raise ValueError("inner dimensions differ")
    cols = len(b[0]) if b else 0
    zero = _zero_of(a)
    out = []
    for row in a:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] = acc[j] + x * brow[j]
        out.append(acc)
    return out


def mat_lincomb(terms: Iterable[tuple[object, Sequence[Sequence]]], rows: int, cols: int, zero) -> list[list]:
    """``sum(c * M)`` over ``(c, M)`` pairs."""
    out = [[zero] * cols for _ in range(rows)]
    for c, m in terms:
        if not c:
            continue
        for i in range(rows):
            for j in range(cols):
                if m[i][j]:
                    out[i][j] = out[i][j] + c * m[i][j]
    return out


def identity(size: int, field=QQ) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(size)] for i in range(size)]


def is_zero_matrix(m: Sequence[Sequence]) -> bool:
    return not any(x for row in m for x in row)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of ``K^ambient`` stored by its canonical RREF basis."""

    def __init__(self, vectors: Iterable[Sequence], ambient: int, field=QQ):
        self.ambient = ambient
        self.field = field
        self._ech = Echelon(ambient)
        for v in vectors:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in a space of dimension {ambient}")
            self._ech.add({c: x for c, x in enumerate(v) if x})

    @classmethod
    def from_sparse(cls, rows: Iterable[dict], ambient: int, field=QQ) -> "Subspace":
        s = cls((), ambient, field)
        for r in rows:
            s._ech.add(r)
        return s

    @classmethod
    def whole(cls, ambient: int, field=QQ) -> "Subspace":
        return cls.from_sparse(({i: field.one} for i in range(ambient)), ambient, field)

    def dim(self) -> int:
        return len(self._ech)

    @property
    def pivots(self) -> list[int]:
        return self._ech.pivots

    def basis(self) -> list[list]:
        return self._ech.dense_rows(self.field.zero)

    def sparse_basis(self) -> list[dict]:
        return [dict(self._ech.rows[p]) for p in self.pivots]

    def reduce(self, v: Sequence | dict) -> dict:
        """Canonical coset representative of ``v`` (sparse, supported off the pivots)."""
        if not isinstance(v, dict):
            if len(v) != self.ambient:
                raise ValueError("length mismatch")
            v = {c: x for c, x in enumerate(v) if x}
        return self._ech.reduce(v)

    def member(self, v: Sequence | dict) -> bool:
        return not self.reduce(v)

    __contains__ = member

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.member(r) for r in other.sparse_basis())

    def equal(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim() == other.dim() and self.contains(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace) or other.ambient != self.ambient:
            return NotImplemented
        return self.equal(other)

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_sparse(self.sparse_basis() + other.sparse_basis(), self.ambient, self.field)

    def quotient_basis(self, ambient_dim: int | None = None) -> list[int]:
        """Coordinates whose unit vectors represent a basis of ``K^ambient / self``."""
        if ambient_dim is not None and ambient_dim != self.ambient:
            raise ValueError("ambient dimension mismatch")
        piv = set(self._ech.rows)
        return [c for c in range(self.ambient) if c not in piv]

    def quotient_coords(self, v: Sequence | dict) -> list:
        """Coordinates of the coset of ``v`` in the basis given by :meth:`quotient_basis`."""
        r = self.reduce(v)
        return [r.get(c, self.field.zero) for c in self.quotient_basis()]

    def _check(self, other: "Subspace") -> None:
        if other.ambient != self.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim()}, ambient={self.ambient})"
