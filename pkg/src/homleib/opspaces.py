"""Derivation-type operator spaces as exact nullspaces.

Every solver works in the n*n-dimensional space of operator matrices
vectorised row-major (``d11, d12, ..., dnn``), with the column convention
``d(e_j) = sum_k d[k, j] e_k``.  The unknowns are constrained by

* commutation with the twisting map: ``d @ alpha == alpha @ d``;
* the weighted identity, on every basis pair ``(e_i, e_j)``:
  ``lam * d[e_i, e_j] - mu * [d e_i, m e_j] - gam * sign(i) * [m e_i, d e_j] = 0``
  where ``m = alpha**r`` and ``sign(i) = (-1)**(|d| * |e_i|)``.

The constraint matrix is assembled by evaluating that residual on the matrix
units, so it is only as correct as the bracket itself.  The expanded index
formula (:func:`assemble_index_formula`) is kept as an independent cross-check.

Two centroid notions are exposed.  :func:`centroid_space` is the one-sided
space ``{d : d[x, y] = [d x, m y]}`` -- the (1, 1, 0) generalized derivations --
which is what the reference tables tabulate.  :func:`two_sided_centroid_space`
adds ``d[x, y] = sign [m x, d y]`` as well; it is the space that appears in the
central-derivation and composition results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .exactla import Matrix, Subspace, commutant, nullspace
from .homalg import (
    HomAlgebra,
    PreconditionError,
    check_left_hom_leibniz,
    check_right_hom_leibniz,
    is_multiplicative,
)

KINDS = ("derivation", "centroid", "two_sided_centroid", "central_derivation", "generalized")


@dataclass(frozen=True)
class OperatorSpace:
    algebra: HomAlgebra
    kind: str
    r: int
    space: Subspace
    params: tuple | None = None
    parity: int | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def n(self) -> int:
        return self.algebra.dim

    def matrices(self) -> list[Matrix]:
        return [Matrix.from_vector(self.algebra.field, v, self.n) for v in self.space.basis]

    def __contains__(self, d: Matrix) -> bool:
        return self.space.contains(d.flatten())

    def __eq__(self, other):
        if not isinstance(other, OperatorSpace):
            return NotImplemented
        return self.space == other.space

    def __hash__(self):
        return hash(self.space)


# ---------------------------------------------------------------------------
# residuals and assembly
# ---------------------------------------------------------------------------


def _sigma(A: HomAlgebra, i: int, dpar: int) -> int:
    return -1 if (dpar * A.parity_of(i)) % 2 else 1


def weighted_residual(A: HomAlgebra, d: Matrix, r: int, lam, mu, gam, dpar: int = 0) -> list[tuple]:
    """Residual vectors of the weighted identity on all basis pairs, in (i, j) order."""
    m = A.alpha_power(r)
    n = A.dim
    de = [d.column(i) for i in range(n)]
    me = [m.column(i) for i in range(n)]
    out = []
    for i, j in itertools.product(range(n), repeat=2):
        t1 = d.apply(A.sc[i][j])
        t2 = A.bracket(de[i], me[j])
        t3 = A.bracket(me[i], de[j])
        s = _sigma(A, i, dpar)
        out.append(tuple(lam * a - mu * b - gam * s * c for a, b, c in zip(t1, t2, t3)))
    return out


def _commutation_rows(A: HomAlgebra) -> list[tuple]:
    """Rows of the linear system ``d alpha - alpha d = 0`` (columns = unknowns)."""
    n = A.dim
    F = A.field
    cols = []
    for a, b in itertools.product(range(n), repeat=2):
        u = Matrix.unit(F, n, a, b)
        cols.append((u @ A.alpha - A.alpha @ u).flatten())
    return [tuple(row) for row in zip(*cols)]


def assemble_identity(A: HomAlgebra, r: int, lam, mu, gam, dpar: int = 0) -> Matrix:
    """Constraint matrix built by evaluating the defining identity on matrix units.

    Rows: the n*n commutation equations, then one row per (i, j, s).
    Columns: the unknowns ``d[a, b]`` in row-major order.
    """
    n = A.dim
    F = A.field
    lam, mu, gam = F(lam), F(mu), F(gam)
    cols = []
    for a, b in itertools.product(range(n), repeat=2):
        res = weighted_residual(A, Matrix.unit(F, n, a, b), r, lam, mu, gam, dpar)
        cols.append(tuple(x for v in res for x in v))
    rows = _commutation_rows(A) + [tuple(row) for row in zip(*cols)]
    return Matrix(F, tuple(rows), n * n)


def assemble_index_formula(A: HomAlgebra, r: int, lam, mu, gam, dpar: int = 0) -> Matrix:
    """The same constraint matrix, written out coefficient-by-coefficient.

    Commutation: sum_k d_ik a_kj - sum_k a_ik d_kj = 0.
    Identity at (i, j, s):
      lam sum_k c_ij^k d_sk - mu sum_{k,l} d_ki m_lj c_kl^s
      - gam sign(i) sum_{k,l} d_lj m_ki c_kl^s = 0.
    """
    n = A.dim
    F = A.field
    lam, mu, gam = F(lam), F(mu), F(gam)
    a = A.alpha
    m = A.alpha_power(r)
    c = A.sc
    idx = lambda p, q: p * n + q  # noqa: E731
    rows = []
    for i, j in itertools.product(range(n), repeat=2):
        row = [F.zero] * (n * n)
        for k in range(n):
            row[idx(i, k)] += a[k, j]
            row[idx(k, j)] -= a[i, k]
        rows.append(tuple(row))
    for i, j, s in itertools.product(range(n), repeat=3):
        row = [F.zero] * (n * n)
        sg = _sigma(A, i, dpar)
        for k in range(n):
            row[idx(s, k)] += lam * c[i][j][k]
        for k, l in itertools.product(range(n), repeat=2):
            row[idx(k, i)] -= mu * m[l, j] * c[k][l][s]
            row[idx(l, j)] -= gam * sg * m[k, i] * c[k][l][s]
        rows.append(tuple(row))
    return Matrix(F, tuple(rows), n * n)


def _homogeneity_rows(A: HomAlgebra, dpar: int) -> list[tuple]:
    """Force ``d[a, b] = 0`` unless ``|e_a| = |e_b| + dpar``."""
    n = A.dim
    F = A.field
    rows = []
    for a, b in itertools.product(range(n), repeat=2):
        if A.parity_of(a) != (A.parity_of(b) + dpar) % 2:
            row = [F.zero] * (n * n)
            row[a * n + b] = F.one
            rows.append(tuple(row))
    return rows


def _solve(A: HomAlgebra, r: int, systems: Sequence[tuple], dpar: int | None) -> Subspace:
    """Nullspace of the stacked systems; ``dpar=None`` sums over both parities when graded."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if dpar is None:
        if not A.graded:
            return _solve(A, r, systems, 0)
        return _solve(A, r, systems, 0) + _solve(A, r, systems, 1)
    if dpar not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if dpar == 1 and not A.graded:
        return Subspace.zero(A.field, A.dim ** 2)
    rows = []
    for lam, mu, gam in systems:
        rows.extend(assemble_identity(A, r, lam, mu, gam, dpar).rows)
    rows.extend(_homogeneity_rows(A, dpar))
    return nullspace(Matrix(A.field, tuple(rows), A.dim ** 2))


def _verified(A: HomAlgebra, kind: str, r: int, space: Subspace, systems, params, dpar) -> OperatorSpace:
    out = OperatorSpace(A, kind, r, space, params, dpar)
    # re-check every basis element against its defining identities; for a
    # summed graded space the homogeneous parts are checked separately
    parities = [dpar] if dpar is not None else ([0, 1] if A.graded else [0])
    for q in parities:
        part = space if len(parities) == 1 else _solve(A, r, systems, q)
        for v in part.basis:
            d = Matrix.from_vector(A.field, v, A.dim)
            if d @ A.alpha != A.alpha @ d:
                raise AssertionError(f"{kind} basis element does not commute with alpha")
            for lam, mu, gam in systems:
                F = A.field
                if any(any(x) for x in weighted_residual(A, d, r, F(lam), F(mu), F(gam), q)):
                    raise AssertionError(f"{kind} basis element violates its defining identity")
    return out


def generalized_derivation_space(A: HomAlgebra, r: int, lam, mu, gam, parity: int | None = None) -> OperatorSpace:
    F = A.field
    systems = [(F(lam), F(mu), F(gam))]
    return _verified(A, "generalized", r, _solve(A, r, systems, parity), systems, systems[0], parity)


def derivation_space(A: HomAlgebra, r: int, parity: int | None = None) -> OperatorSpace:
    systems = [(1, 1, 1)]
    return _verified(A, "derivation", r, _solve(A, r, systems, parity), systems, None, parity)


def centroid_space(A: HomAlgebra, r: int, parity: int | None = None) -> OperatorSpace:
    """One-sided centroid: ``d[x, y] = [d x, alpha^r y]`` and ``d alpha = alpha d``."""
    systems = [(1, 1, 0)]
    return _verified(A, "centroid", r, _solve(A, r, systems, parity), systems, None, parity)


def two_sided_centroid_space(A: HomAlgebra, r: int, parity: int | None = None) -> OperatorSpace:
    """``d[x, y] = [d x, alpha^r y] = sign [alpha^r x, d y]`` and ``d alpha = alpha d``."""
    systems = [(1, 1, 0), (1, 0, 1)]
    return _verified(A, "two_sided_centroid", r, _solve(A, r, systems, parity), systems, None, parity)


def central_derivation_space(A: HomAlgebra, r: int, parity: int | None = None) -> OperatorSpace:
    """``d[x, y] = [d x, alpha^r y] = [alpha^r x, d y] = 0`` and ``d alpha = alpha d``."""
    systems = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return _verified(A, "central_derivation", r, _solve(A, r, systems, parity), systems, None, parity)


SOLVERS = {
    "der": derivation_space,
    "centroid": centroid_space,
    "centroid2": two_sided_centroid_space,
    "zder": central_derivation_space,
}


# ---------------------------------------------------------------------------
# inner derivations and the operator bracket
# ---------------------------------------------------------------------------


def _element_parity(A: HomAlgebra, a: Sequence) -> int:
    pars = {A.parity_of(i) for i, x in enumerate(a) if x}
    if len(pars) > 1:
        raise PreconditionError("element is not homogeneous")
    return pars.pop() if pars else 0


def _fixed_element(A: HomAlgebra, a: Sequence) -> tuple:
    a = A.element(a)
    if A.apply_alpha(a) != a:
        raise PreconditionError("alpha(a) != a", tuple(A.field.format(x) for x in a))
    return a


def inner_derivation_ad(A: HomAlgebra, a: Sequence, k: int) -> Matrix:
    """Matrix of ``x -> [a, alpha^k x]``; requires ``alpha(a) = a``."""
    a = _fixed_element(A, a)
    _element_parity(A, a)
    m = A.alpha_power(k)
    cols = [A.bracket(a, m.column(j)) for j in range(A.dim)]
    return Matrix(A.field, tuple(zip(*cols)), A.dim)


def inner_derivation_Ad(A: HomAlgebra, a: Sequence, k: int) -> Matrix:
    """Matrix of ``x -> (-1)^{|a||x|} [alpha^k x, a]``; requires ``alpha(a) = a``."""
    a = _fixed_element(A, a)
    pa = _element_parity(A, a)
    m = A.alpha_power(k)
    cols = []
    for j in range(A.dim):
        v = A.bracket(m.column(j), a)
        if (pa * A.parity_of(j)) % 2:
            v = tuple(-x for x in v)
        cols.append(v)
    return Matrix(A.field, tuple(zip(*cols)), A.dim)


def operator_bracket(u: Matrix, v: Matrix, pu: int = 0, pv: int = 0) -> Matrix:
    """Super-commutator ``uv - (-1)^{|u||v|} vu``."""
    if u.shape != v.shape or not u.is_square():
        raise ValueError("operator bracket needs square matrices of equal size")
    if (pu * pv) % 2:
        return u @ v + v @ u
    return u @ v - v @ u


def alpha_tilde(A: HomAlgebra, u: Matrix) -> Matrix:
    """Left composition with the twisting map."""
    if u.shape != A.alpha.shape:
        raise ValueError("operator size does not match the algebra")
    return A.alpha @ u


def matrix_parity(A: HomAlgebra, u: Matrix) -> int | None:
    """Parity of a homogeneous operator, ``None`` if it mixes parities (0 for the zero map)."""
    pars = set()
    for a, b in itertools.product(range(A.dim), repeat=2):
        if u[a, b]:
            pars.add((A.parity_of(a) + A.parity_of(b)) % 2)
    if len(pars) > 1:
        return None
    return pars.pop() if pars else 0


# ---------------------------------------------------------------------------
# operator Lie algebras
# ---------------------------------------------------------------------------


class NotClosedError(ValueError):
    """The operator span is not closed under the super-commutator."""


@dataclass(frozen=True)
class OperatorLieAlgebra:
    basis: tuple  # of Matrix
    parities: tuple

    @classmethod
    def from_space(cls, space: OperatorSpace) -> OperatorLieAlgebra:
        A = space.algebra
        if not A.graded:
            mats = space.matrices()
            return cls(tuple(mats), (0,) * len(mats))
        mats, pars = [], []
        for q in (0, 1):
            part = SOLVERS_BY_KIND[space.kind](A, space.r, q)
            mats += part.matrices()
            pars += [q] * part.dim
        return cls(tuple(mats), tuple(pars))

    @property
    def n(self) -> int:
        return self.basis[0].nrows if self.basis else 0

    def span(self, mats: Sequence[Matrix]) -> Subspace | None:
        if not self.basis:
            return None
        F = self.basis[0].field
        return Subspace.span(F, self.n * self.n, [m.flatten() for m in mats])

    def bracket(self, i: int, j: int) -> Matrix:
        return operator_bracket(self.basis[i], self.basis[j], self.parities[i], self.parities[j])

    def check_closed(self):
        if not self.basis:
            return
        whole = self.span(self.basis)
        for i, j in itertools.combinations_with_replacement(range(len(self.basis)), 2):
            if not whole.contains(self.bracket(i, j).flatten()):
                raise NotClosedError(f"bracket of basis elements {i} and {j} leaves the span")


SOLVERS_BY_KIND = {
    "derivation": derivation_space,
    "centroid": centroid_space,
    "two_sided_centroid": two_sided_centroid_space,
    "central_derivation": central_derivation_space,
}


def lower_central_series(ops: OperatorLieAlgebra) -> list[Subspace]:
    """``L^1 = span``, ``L^{m+1} = [L^1, L^m]``, until the series stabilises.

    Terms are built from homogeneous spanning sets so super signs stay exact.
    """
    ops.check_closed()
    if not ops.basis:
        return []
    F = ops.basis[0].field
    N = ops.n * ops.n
    first = list(zip(ops.basis, ops.parities))
    current = first
    series = [ops.span(ops.basis)]
    while True:
        gens = [
            (operator_bracket(x, y, px, py), (px + py) % 2)
            for (x, px), (y, py) in itertools.product(first, current)
        ]
        nxt = Subspace.span(F, N, [g.flatten() for g, _ in gens])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series
        # keep a homogeneous spanning set for the next step
        current = []
        for q in (0, 1):
            part = Subspace.span(F, N, [g.flatten() for g, p in gens if p == q])
            current += [(Matrix.from_vector(F, v, ops.n), q) for v in part.basis]


def is_nilpotent(ops: OperatorLieAlgebra) -> bool:
    series = lower_central_series(ops)
    return not series or series[-1].dim == 0


def is_characteristically_nilpotent(A: HomAlgebra) -> bool:
    """Whether the Lie (super)algebra of untwisted derivations is nilpotent."""
    return is_nilpotent(OperatorLieAlgebra.from_space(derivation_space(A, 0)))


def is_small_centroid(A: HomAlgebra) -> bool:
    """``Gamma_0 = ZDer_0 + K id`` with the one-sided centroid."""
    ident = Subspace.span(A.field, A.dim ** 2, [Matrix.identity(A.field, A.dim).flatten()])
    return centroid_space(A, 0).space == central_derivation_space(A, 0).space + ident


# ---------------------------------------------------------------------------
# structure results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    k: int
    l: int | None
    holds: bool
    witness: str | None = None


@dataclass(frozen=True)
class StructureReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[TheoremCheck]:
        return [c for c in self.checks if not c.holds]


def _homogeneous_basis(A: HomAlgebra, solver, r: int) -> list[tuple[Matrix, int]]:
    out = []
    for q in ((0, 1) if A.graded else (0,)):
        out += [(m, q) for m in solver(A, r, q).matrices()]
    return out


def alpha_fixed_elements(A: HomAlgebra) -> list[tuple]:
    """A homogeneous basis of ``{a : alpha(a) = a}``."""
    n = A.dim
    F = A.field
    fixed = nullspace(A.alpha - Matrix.identity(F, n))
    if not A.graded:
        return list(fixed.basis)
    out = []
    for q in (0, 1):
        coords = Subspace.span(
            F, n, [A.basis_vector(i) for i in range(n) if A.parity_of(i) == q]
        )
        out += list((fixed & coords).basis)
    return out


def verify_structure_theorems(A: HomAlgebra, kmax: int = 3) -> StructureReport:
    """Exercise the composition, intersection and inner-derivation results for k, l <= kmax.

    (i)   Phi o d lies in Der_{k+l} for Phi in C_l, d in Der_k;
    (ii)  [Phi, d]' lies in C_{k+l};
    (iii) ZDer_k = Der_k meet C_k;
    (iv)  ad_0(a) (Ad_0(a) for right-only algebras) lies in Der_1 for alpha-fixed a,
          asserted for multiplicative algebras only;
    (v)   the identity lies in Gamma_0.
    Here C is the two-sided centroid.
    """
    F = A.field
    fmt = lambda m: str(m)  # noqa: E731
    checks = []
    der = {k: derivation_space(A, k) for k in range(2 * kmax + 1)}
    cent = {k: two_sided_centroid_space(A, k) for k in range(2 * kmax + 1)}
    der_h = {k: _homogeneous_basis(A, derivation_space, k) for k in range(kmax + 1)}
    cent_h = {k: _homogeneous_basis(A, two_sided_centroid_space, k) for k in range(kmax + 1)}
    for k, l in itertools.product(range(kmax + 1), repeat=2):
        bad_i = bad_ii = None
        for (phi, pp), (d, pd) in itertools.product(cent_h[l], der_h[k]):
            comp = phi @ d
            if bad_i is None and comp not in der[k + l]:
                bad_i = f"Phi={fmt(phi)} d={fmt(d)}"
            br = operator_bracket(phi, d, pp, pd)
            if bad_ii is None and br not in cent[k + l]:
                bad_ii = f"Phi={fmt(phi)} d={fmt(d)}"
        checks.append(TheoremCheck("composition in Der", k, l, bad_i is None, bad_i))
        checks.append(TheoremCheck("bracket in C", k, l, bad_ii is None, bad_ii))
    for k in range(kmax + 1):
        z = central_derivation_space(A, k).space
        meet = der[k].space & cent[k].space
        checks.append(
            TheoremCheck("ZDer = Der meet C", k, None, z == meet, None if z == meet else f"dim {z.dim} vs {meet.dim}")
        )
    if not is_multiplicative(A).holds:
        inner = None  # ad(a) need not commute with alpha
    elif check_left_hom_leibniz(A).holds:
        inner = inner_derivation_ad
    elif check_right_hom_leibniz(A).holds:
        inner = inner_derivation_Ad
    else:
        inner = None
    if inner is not None:
        bad = None
        for a in alpha_fixed_elements(A):
            d = inner(A, a, 0)
            if d not in der[1]:
                bad = f"a={tuple(F.format(x) for x in a)}"
                break
        checks.append(TheoremCheck("inner derivation in Der_1", 0, None, bad is None, bad))
    ident = Matrix.identity(F, A.dim)
    ok = ident in centroid_space(A, 0)
    checks.append(TheoremCheck("identity in Gamma_0", 0, None, ok, None if ok else "identity"))
    return StructureReport(tuple(checks))

