"""Hom-algebras given by structure constants, identity checks and constructions.

A :class:`HomAlgebra` stores the structure constants ``sc[i][j][k]`` (the
``e_k`` coordinate of ``[e_i, e_j]``), the twisting map ``alpha`` as a matrix
whose ``j``-th column is ``alpha(e_j)``, and an optional parity vector making
the basis homogeneous for a Z/2 grading.  An ungraded algebra behaves exactly
like a graded one whose basis is entirely even.

All identities are trilinear or bilinear, so every checker quantifies over
basis triples (pairs) only.  Witnesses are reported for the first failing
tuple in lexicographic basis order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .exactla import Field, FieldMismatchError, Matrix, kron

Vector = tuple


class PreconditionError(ValueError):
    """An operation's input does not satisfy its documented requirements."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


@dataclass(frozen=True)
class CheckReport:
    identity: str
    holds: bool
    witness: tuple | None = None
    lhs: Vector | None = None
    rhs: Vector | None = None

    def __bool__(self):
        return self.holds

    def describe(self, fmt: Callable = str) -> str:
        if self.holds:
            return f"{self.identity}: holds"
        lhs = "(" + ", ".join(fmt(x) for x in self.lhs) + ")"
        rhs = "(" + ", ".join(fmt(x) for x in self.rhs) + ")"
        return f"{self.identity}: fails at {self.witness}: lhs={lhs} rhs={rhs}"


@dataclass(frozen=True)
class HomAlgebra:
    field: Field
    sc: tuple  # sc[i][j] is the coordinate vector of [e_i, e_j]
    alpha: Matrix
    parity: tuple | None = None
    names: tuple = dc_field(default=None)

    def __post_init__(self):
        n = len(self.sc)
        if any(len(row) != n or any(len(v) != n for v in row) for row in self.sc):
            raise ValueError("structure constants must form an n x n x n array")
        if self.alpha.shape != (n, n):
            raise ValueError(f"alpha must be {n} x {n}")
        if self.alpha.field != self.field:
            raise FieldMismatchError("alpha and structure constants use different fields")
        for row in self.sc:
            for v in row:
                for x in v:
                    if not self.field.owns(x):
                        raise FieldMismatchError(f"structure constant {x!r} not in {self.field!r}")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(n)))
        elif len(self.names) != n or len(set(self.names)) != n:
            raise ValueError("basis names must be n distinct labels")
        if self.parity is not None:
            par = tuple(int(p) for p in self.parity)
            if len(par) != n or any(p not in (0, 1) for p in par):
                raise ValueError("parity must be a 0/1 vector of length n")
            object.__setattr__(self, "parity", par)
            for i, j in itertools.product(range(n), repeat=2):
                if par[i] != par[j] and self.alpha[i, j]:
                    raise ValueError(f"alpha is not even: entry ({i + 1},{j + 1}) links different parities")
            for i, j, k in itertools.product(range(n), repeat=3):
                if self.sc[i][j][k] and par[k] != (par[i] + par[j]) % 2:
                    raise ValueError(
                        f"bracket is not even: [{self.names[i]},{self.names[j]}] has an {self.names[k]} component"
                    )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_brackets(
        cls,
        field: Field,
        dim: int,
        brackets: dict,
        alpha: Sequence[Sequence],
        parity: Sequence[int] | None = None,
        names: Sequence[str] | None = None,
    ) -> HomAlgebra:
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices; unlisted brackets are zero."""
        z = field.zero
        sc = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            for k, coeff in value.items():
                sc[i - 1][j - 1][k - 1] = field(coeff)
        return cls(
            field,
            tuple(tuple(tuple(v) for v in row) for row in sc),
            Matrix.from_rows(field, alpha, dim),
            None if parity is None else tuple(parity),
            None if names is None else tuple(names),
        )

    # -- basic structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.sc)

    @property
    def graded(self) -> bool:
        return self.parity is not None

    def parity_of(self, i: int) -> int:
        return 0 if self.parity is None else self.parity[i]

    def basis_vector(self, i: int) -> Vector:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def zero(self) -> Vector:
        return (self.field.zero,) * self.dim

    def element(self, coords: Sequence) -> Vector:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field(x) for x in coords)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ValueError("element dimension does not match the algebra")
        out = [self.field.zero] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, c in enumerate(self.sc[i][j]):
                    if c:
                        out[k] += w * c
        return tuple(out)

    def alpha_power(self, r: int) -> Matrix:
        if r < 0:
            raise ValueError("r must be non-negative")
        return self.alpha ** r

    def apply_alpha(self, x: Sequence, r: int = 1) -> Vector:
        return self.alpha_power(r).apply(x)

    def is_zero_bracket(self) -> bool:
        return all(not c for row in self.sc for v in row for c in v)

    def structure_matrix(self) -> Matrix:
        """The n^2 x n matrix whose row ``i*n + j`` is ``[e_i, e_j]``."""
        return Matrix(self.field, tuple(v for row in self.sc for v in row), self.dim)

    def with_alpha(self, alpha: Matrix) -> HomAlgebra:
        return HomAlgebra(self.field, self.sc, alpha, self.parity, self.names)


def _add(*vs):
    return tuple(sum(xs) for xs in zip(*vs))


def _scale(c, v):
    return tuple(c * x for x in v)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def bracket(A: HomAlgebra, x: Sequence, y: Sequence) -> Vector:
    return A.bracket(x, y)


def apply_alpha(A: HomAlgebra, x: Sequence, r: int = 1) -> Vector:
    return A.apply_alpha(x, r)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def _first_failure(A: HomAlgebra, name: str, arity: int, sides) -> CheckReport:
    for idx in itertools.product(range(A.dim), repeat=arity):
        lhs, rhs = sides(*idx)
        if lhs != rhs:
            return CheckReport(name, False, tuple(A.names[i] for i in idx), lhs, rhs)
    return CheckReport(name, True)


def is_multiplicative(A: HomAlgebra) -> CheckReport:
    """``alpha([x, y]) == [alpha(x), alpha(y)]`` on basis pairs."""
    al = A.alpha
    images = [al.column(i) for i in range(A.dim)]

    def sides(i, j):
        return al.apply(A.sc[i][j]), A.bracket(images[i], images[j])

    return _first_failure(A, "multiplicative", 2, sides)


def _triple_terms(A: HomAlgebra):
    e = [A.basis_vector(i) for i in range(A.dim)]
    ae = [A.alpha.column(i) for i in range(A.dim)]
    br = A.bracket
    return e, ae, br


def check_left_hom_leibniz(A: HomAlgebra) -> CheckReport:
    """[a(x),[y,z]] = [[x,y],a(z)] + (-1)^{|x||y|} [a(y),[x,z]]."""
    e, ae, br = _triple_terms(A)
    p = A.parity_of

    def sides(i, j, k):
        lhs = br(ae[i], A.sc[j][k])
        rhs = _add(br(A.sc[i][j], ae[k]), _scale(_sign(p(i) * p(j)), br(ae[j], A.sc[i][k])))
        return lhs, rhs

    return _first_failure(A, "left Hom-Leibniz", 3, sides)


def check_right_hom_leibniz(A: HomAlgebra) -> CheckReport:
    """[a(x),[y,z]] = [[x,y],a(z)] - (-1)^{|y||z|} [[x,z],a(y)]."""
    e, ae, br = _triple_terms(A)
    p = A.parity_of

    def sides(i, j, k):
        lhs = br(ae[i], A.sc[j][k])
        rhs = _add(br(A.sc[i][j], ae[k]), _scale(-_sign(p(j) * p(k)), br(A.sc[i][k], ae[j])))
        return lhs, rhs

    return _first_failure(A, "right Hom-Leibniz", 3, sides)


def _symmetry_criterion(A: HomAlgebra) -> CheckReport:
    """For left algebras: symmetric iff [a(y),[x,z]] = -(-1)^{(|x|+|z|)|y|} [[x,z],a(y)]."""
    e, ae, br = _triple_terms(A)
    p = A.parity_of

    def sides(i, j, k):
        lhs = br(ae[j], A.sc[i][k])
        rhs = _scale(-_sign((p(i) + p(k)) * p(j)), br(A.sc[i][k], ae[j]))
        return lhs, rhs

    return _first_failure(A, "symmetry criterion", 3, sides)


def check_symmetric(A: HomAlgebra) -> CheckReport:
    """Left and right Hom-Leibniz at once.

    When the left identity holds the result is cross-checked against the
    single-identity criterion; a disagreement means a bug and raises.
    """
    left = check_left_hom_leibniz(A)
    right = check_right_hom_leibniz(A)
    if left.holds:
        crit = _symmetry_criterion(A)
        if crit.holds != right.holds:
            raise AssertionError("symmetry criterion disagrees with the right Hom-Leibniz check")
    failing = left if not left.holds else right
    if failing.holds:
        return CheckReport("symmetric Hom-Leibniz", True)
    return CheckReport(
        "symmetric Hom-Leibniz", False, failing.witness, failing.lhs, failing.rhs
    )


def check_hom_lie(A: HomAlgebra) -> CheckReport:
    """Super skew-symmetry plus the cyclic super Hom-Jacobi identity."""
    e, ae, br = _triple_terms(A)
    p = A.parity_of
    name = "Hom-Lie"

    def skew(i, j):
        return A.sc[i][j], _scale(-_sign(p(i) * p(j)), A.sc[j][i])

    rep = _first_failure(A, name + " (skew-symmetry)", 2, skew)
    if not rep.holds:
        return rep
    for i in range(A.dim):
        if p(i) == 0 and any(A.sc[i][i]):
            return CheckReport(name + " ([x,x]=0)", False, (A.names[i], A.names[i]), A.sc[i][i], A.zero())

    def jacobi(i, j, k):
        total = _add(
            _scale(_sign(p(i) * p(k)), br(ae[i], A.sc[j][k])),
            _scale(_sign(p(j) * p(i)), br(ae[j], A.sc[k][i])),
            _scale(_sign(p(k) * p(j)), br(ae[k], A.sc[i][j])),
        )
        return total, A.zero()

    rep = _first_failure(A, name + " (Hom-Jacobi)", 3, jacobi)
    return rep if not rep.holds else CheckReport(name, True)


def hom_associator(A: HomAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """[[x,y],a(z)] - [a(x),[y,z]]."""
    br = A.bracket
    return _add(br(br(x, y), A.apply_alpha(z)), _scale(-1, br(A.apply_alpha(x), br(y, z))))


CHECKS = {
    "left": check_left_hom_leibniz,
    "right": check_right_hom_leibniz,
    "symmetric": check_symmetric,
    "hom-lie": check_hom_lie,
    "multiplicative": is_multiplicative,
}


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def endomorphism_failure(A: HomAlgebra, beta: Matrix) -> tuple | None:
    """First basis pair where ``beta`` fails to preserve the bracket, if any."""
    images = [beta.column(i) for i in range(A.dim)]
    for i, j in itertools.product(range(A.dim), repeat=2):
        if beta.apply(A.sc[i][j]) != A.bracket(images[i], images[j]):
            return (A.names[i], A.names[j])
    return None


def yau_twist(L: HomAlgebra, beta: Matrix) -> HomAlgebra:
    """Twist a Leibniz algebra along an endomorphism: [x,y]' = [b(x), b(y)], alpha = b."""
    n = L.dim
    if L.alpha != Matrix.identity(L.field, n):
        raise PreconditionError("the input must be an ordinary Leibniz algebra (alpha = id)")
    if beta.shape != (n, n) or beta.field != L.field:
        raise PreconditionError("beta must be a square matrix over the algebra's field")
    if not (check_left_hom_leibniz(L).holds or check_right_hom_leibniz(L).holds):
        raise PreconditionError("the input is neither a left nor a right Leibniz algebra")
    bad = endomorphism_failure(L, beta)
    if bad is not None:
        raise PreconditionError("beta is not an endomorphism of the bracket", bad)
    images = [beta.column(i) for i in range(n)]
    sc = tuple(tuple(L.bracket(images[i], images[j]) for j in range(n)) for i in range(n))
    return HomAlgebra(L.field, sc, beta, L.parity, L.names)


def tensor(u: Sequence, v: Sequence) -> Vector:
    """Coordinates of ``u (x) v`` with ``e_i (x) e_j`` at index ``i * n + j``."""
    return tuple(a * b for a in u for b in v)


def tensor_square_leibniz(G: HomAlgebra) -> HomAlgebra:
    """The Leibniz structure on G (x) G built from a Lie algebra G and an endomorphism alpha.

    [x(x)y, a(x)b] = [a(x), w](x)a(y) + a(x)(x)[a(y), w] with w = [a(a), a(b)]
    and twisting map alpha (x) alpha; basis ``e_i (x) e_j`` sits at ``i*n + j``.
    This is the Yau twist, along alpha (x) alpha, of the untwisted tensor-square
    Leibniz algebra, so the bracket of G itself must be an ordinary Lie bracket
    (it is checked with the identity as twisting map) and alpha an endomorphism.
    """
    if G.graded:
        raise PreconditionError("tensor squares are only built for ungraded algebras")
    n = G.dim
    untwisted = G.with_alpha(Matrix.identity(G.field, n))
    rep = check_hom_lie(untwisted)
    if not rep.holds:
        raise PreconditionError("the bracket is not a Lie bracket", rep.witness)
    bad = endomorphism_failure(G, G.alpha)
    if bad is not None:
        raise PreconditionError("alpha is not an endomorphism of the bracket", bad)
    al = [G.alpha.column(i) for i in range(n)]
    br = G.bracket
    sc = []
    for x, y in itertools.product(range(n), repeat=2):
        row = []
        for a, b in itertools.product(range(n), repeat=2):
            w = br(al[a], al[b])
            row.append(_add(tensor(br(al[x], w), al[y]), tensor(al[x], br(al[y], w))))
        sc.append(tuple(row))
    names = tuple(f"{a}⊗{b}" for a in G.names for b in G.names)
    return HomAlgebra(G.field, tuple(sc), kron(G.alpha, G.alpha), None, names)
