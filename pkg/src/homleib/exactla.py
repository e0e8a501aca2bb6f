"""Exact scalars, dense matrices and subspaces over Q or a prime field.

Two base fields are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields ``GF(p)`` with ``p`` odd
(elements are :class:`ModP`).  Nothing in here touches floating point.

Row reduction uses fraction-free (Bareiss) elimination on an integer image
of the matrix, followed by normalisation to the canonical reduced row
echelon form.  Pivoting is deterministic (first nonzero entry in column
order), so every output is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence


class FieldMismatchError(TypeError):
    """Raised when scalars or matrices from different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


class ModP:
    """Residue class modulo an odd prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction) and other.denominator == 1:
            return other.numerator
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot mix GF({self.p}) with a rational")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModP(pow(self.value, -1, self.p), self.p) ** (-e)
        return ModP(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Common interface of :data:`QQ` and :class:`GF`."""

    characteristic: int

    def __call__(self, value): ...

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        """Parse an exact scalar string such as ``"-3/4"``."""
        text = str(text).strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact scalar: {text!r}") from exc
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal notation is not exact: {text!r}")
        return self(q)

    def format(self, x) -> str:
        return str(x)

    def owns(self, x) -> bool: ...


class RationalField(Field):
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, ModP):
            raise FieldMismatchError("cannot convert a GF(p) element to Q")
        if isinstance(value, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(value)

    def owns(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class GF(Field):
    """The prime field with ``p`` elements; ``p`` must be an odd prime."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, ModP):
            if value.p != self.p:
                raise FieldMismatchError(f"GF({value.p}) element given to GF({self.p})")
            return value
        if isinstance(value, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / value.denominator
        return ModP(int(value), self.p)

    def owns(self, x) -> bool:
        return isinstance(x, ModP) and x.p == self.p

    def elements(self):
        return [ModP(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix over a single field.

    Column ``j`` of a matrix acting on an algebra holds the coordinates of
    the image of the ``j``-th basis vector.
    """

    field: Field
    rows: tuple[tuple, ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(field, data, ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> Matrix:
        """The matrix unit with a single 1 in position ``(i, j)``."""
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if (a, b) == (i, j) else z for b in range(n)) for a in range(n)), n)

    @classmethod
    def from_vector(cls, field: Field, vec: Sequence, n: int) -> Matrix:
        """Inverse of :meth:`flatten` for square ``n x n`` matrices."""
        if len(vec) != n * n:
            raise ValueError("vector length does not match n*n")
        return cls.from_rows(field, (vec[i * n:(i + 1) * n] for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def flatten(self) -> tuple:
        """Row-major coordinates ``(m11, m12, ..., mnn)``."""
        return tuple(x for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def _check(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + other.scale(-1)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix(self.field, tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        z = self.field.zero
        rows = tuple(tuple(sum((a * b for a, b in zip(r, c)), z) for c in cols) for r in self.rows)
        return Matrix(self.field, rows, other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match matrix")
        z = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, vec)), z) for r in self.rows)

    def __pow__(self, r: int) -> Matrix:
        if not self.is_square():
            raise ValueError("only square matrices have powers")
        if r < 0:
            raise ValueError("negative powers are not supported")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while r:
            if r & 1:
                result = result @ base
            base = base @ base
            r >>= 1
        return result

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def vstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def rank(self) -> int:
        return rref(self)[1]

    def __str__(self):
        f = self.field.format
        return "[" + ", ".join("[" + ", ".join(f(x) for x in r) + "]" for r in self.rows) + "]"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index ``(i, j)`` maps to ``i * b.nrows + j``."""
    a._check(b)
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix(a.field, tuple(rows), a.ncols * b.ncols)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _integer_image(field: Field, rows: Sequence[Sequence]) -> list[list[int]]:
    if isinstance(field, GF):
        return [[x.value for x in r] for r in rows]
    out = []
    for r in rows:
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in r), 1)
        out.append([int(x * den) for x in r])
    return out


def _bareiss(rows: list[list[int]], ncols: int, p: int | None) -> list[int]:
    """In-place fraction-free forward elimination; returns pivot columns.

    Over Z the division by the previous pivot is exact (Sylvester's identity);
    over GF(p) it is multiplication by the modular inverse.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        pc = top[c]
        if p is None:
            for i in range(r + 1, nrows):
                row = rows[i]
                f = row[c]
                for j in range(c + 1, ncols):
                    num = pc * row[j] - f * top[j]
                    q, rem = divmod(num, prev)
                    assert rem == 0, "Bareiss division not exact"
                    row[j] = q
                row[c] = 0
        else:
            inv = pow(prev, -1, p)
            for i in range(r + 1, nrows):
                row = rows[i]
                f = row[c]
                for j in range(c + 1, ncols):
                    row[j] = (pc * row[j] - f * top[j]) * inv % p
                row[c] = 0
        prev = pc
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank of ``m``.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    field = m.field
    for row in m.rows:
        for x in row:
            if not field.owns(x):
                raise FieldMismatchError(f"entry {x!r} does not belong to {field!r}")
    ints = _integer_image(field, m.rows)
    p = field.p if isinstance(field, GF) else None
    pivots = _bareiss(ints, m.ncols, p)
    rank = len(pivots)
    # back to the field, normalise pivots to 1 and clear above them
    echelon = [[field(x) for x in ints[i]] for i in range(rank)]
    for i, c in enumerate(pivots):
        inv = field.one / echelon[i][c]
        echelon[i] = [x * inv for x in echelon[i]]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = echelon[k][c]
            if f:
                echelon[k] = [a - f * b for a, b in zip(echelon[k], echelon[i])]
    z = field.zero
    rows = [tuple(r) for r in echelon] + [(z,) * m.ncols] * (m.nrows - rank)
    return Matrix(field, tuple(rows), m.ncols), rank


def pivot_columns(reduced: Matrix) -> list[int]:
    cols = []
    for row in reduced.rows:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        cols.append(c)
    return cols


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field ** ambient_dim`` with a canonical rref basis.

    Equal subspaces have identical ``basis`` tuples, so ``==`` is subspace
    equality.
    """

    field: Field
    ambient_dim: int
    basis: tuple[tuple, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        rows = [tuple(field(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise ValueError("vector length does not match ambient dimension")
        if not rows:
            return cls(field, ambient_dim, ())
        reduced, rank = rref(Matrix(field, tuple(rows), ambient_dim))
        return cls(field, ambient_dim, reduced.rows[:rank])

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: Subspace):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> Subspace:
        """Vectors orthogonal to every basis vector under the standard pairing."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient_dim)
        return nullspace(Matrix(self.field, self.basis, self.ambient_dim))

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def contains(self, vec: Sequence) -> bool:
        v = [self.field(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row in self.basis:
            c = next(j for j, x in enumerate(row) if x)
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    __le__ = issubspace


def nullspace(m: Matrix) -> Subspace:
    """Canonical basis of ``{x : m x = 0}``."""
    reduced, rank = rref(m)
    field = m.field
    pivots = pivot_columns(reduced)
    free = [j for j in range(m.ncols) if j not in pivots]
    vectors = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = -reduced.rows[i][f]
        vectors.append(v)
    return Subspace.span(field, m.ncols, vectors)


def commutant(alpha: Matrix) -> Subspace:
    """All ``u`` with ``u @ alpha == alpha @ u``, as row-major vectors of length n*n."""
    if not alpha.is_square():
        raise ValueError("commutant needs a square matrix")
    n = alpha.nrows
    field = alpha.field
    columns = []
    for a in range(n):
        for b in range(n):
            u = Matrix.unit(field, n, a, b)
            columns.append((u @ alpha - alpha @ u).flatten())
    constraints = Matrix(field, tuple(zip(*columns)), n * n)
    return nullspace(constraints)
