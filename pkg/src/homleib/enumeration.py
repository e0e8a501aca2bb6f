"""Exhaustive search for small Hom-Leibniz algebras over prime fields, and orbit classification.

A candidate is encoded as the integer vector
``(c_111, c_112, ..., c_nnn, a_11, ..., a_nn)`` -- structure constants
``c_ijk`` (the ``e_k`` coordinate of ``[e_i, e_j]``) followed by the twisting
map row-major.  Two scanners produce the same set by different routes:

* :func:`scan_lexicographic` walks the whole code space in lexicographic
  order, in chunks sharing the leading coefficient, and filters vectorised;
* :func:`scan_alpha_first` fixes the twisting map first, solves the
  multiplicativity condition (linear in the structure constants once alpha is
  fixed) exactly, and only tests the solutions.

Classification uses a canonical form: the lexicographically smallest code in
the GL_n(F_p) orbit.  That is self-certifying -- each orbit's size and
stabiliser are counted directly and ``orbit * stabiliser = |GL|`` is checked.
All arithmetic is on machine integers reduced mod p, which is exact.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactla import GF, FieldMismatchError, Matrix, nullspace, rref
from .homalg import HomAlgebra, check_symmetric

DEFAULT_BUDGET = 5_000_000
SIDEDNESS = ("left", "right", "symmetric")


class InfeasibleSearchError(ValueError):
    """The estimated scan exceeds the work budget."""


@dataclass(frozen=True)
class SearchConfig:
    p: int = 3
    dim: int = 2
    sidedness: str = "left"
    require_multiplicative: bool = True

    def __post_init__(self):
        GF(self.p)  # validates: prime, not 2
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.sidedness not in SIDEDNESS:
            raise ValueError(f"sidedness must be one of {SIDEDNESS}")

    @property
    def field(self) -> GF:
        return GF(self.p)

    @property
    def code_length(self) -> int:
        return self.dim ** 3 + self.dim ** 2


def budget() -> int:
    raw = os.environ.get("HOMLEIB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InfeasibleSearchError(f"HOMLEIB_BUDGET must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------


def encode(A: HomAlgebra) -> tuple:
    if not isinstance(A.field, GF):
        raise FieldMismatchError("encoding needs a prime field")
    c = [x.value for row in A.sc for v in row for x in v]
    a = [x.value for x in A.alpha.flatten()]
    return tuple(c + a)


def decode(code, p: int, dim: int = 2) -> HomAlgebra:
    F = GF(p)
    n = dim
    code = [int(x) for x in code]
    c = code[: n ** 3]
    sc = tuple(
        tuple(tuple(F(c[(i * n + j) * n + k]) for k in range(n)) for j in range(n)) for i in range(n)
    )
    alpha = Matrix.from_vector(F, code[n ** 3:], n)
    return HomAlgebra(F, sc, alpha)


def _split(codes: np.ndarray, n: int):
    N = codes.shape[0]
    return codes[:, : n ** 3].reshape(N, n, n, n), codes[:, n ** 3:].reshape(N, n, n)


# ---------------------------------------------------------------------------
# vectorised identity checks
# ---------------------------------------------------------------------------


def _passes(codes: np.ndarray, cfg: SearchConfig) -> np.ndarray:
    """Boolean mask of codes satisfying the configured identities."""
    p, n = cfg.p, cfg.dim
    c, a = _split(codes, n)
    ok = np.ones(codes.shape[0], dtype=bool)
    if cfg.require_multiplicative:
        lhs = np.einsum("Nsk,Nijk->Nijs", a, c)
        rhs = np.einsum("Nai,Nbj,Nabs->Nijs", a, a, c)
        ok &= ((lhs - rhs) % p == 0).reshape(len(ok), -1).all(axis=1)
    # [a x, [y, z]] with x, y, z = e_i, e_j, e_k
    t1 = np.einsum("Nai,Njkb,Nabs->Nijks", a, c, c)
    t2 = np.einsum("Nija,Nbk,Nabs->Nijks", c, a, c)  # [[x, y], a z]
    if cfg.sidedness in ("left", "symmetric"):
        t3 = np.einsum("Naj,Nikb,Nabs->Nijks", a, c, c)  # [a y, [x, z]]
        ok &= ((t1 - t2 - t3) % p == 0).reshape(len(ok), -1).all(axis=1)
    if cfg.sidedness in ("right", "symmetric"):
        t4 = np.einsum("Nika,Nbj,Nabs->Nijks", c, a, c)  # [[x, z], a y]
        ok &= ((t1 - t2 + t4) % p == 0).reshape(len(ok), -1).all(axis=1)
    return ok


# ---------------------------------------------------------------------------
# scanners
# ---------------------------------------------------------------------------


def _digits(count: int, width: int, p: int, start: int = 0) -> np.ndarray:
    """Base-p digit vectors (most significant first) of ``start .. start+count-1``."""
    idx = np.arange(start, start + count, dtype=np.int64)
    out = np.empty((count, width), dtype=np.int64)
    for pos in range(width - 1, -1, -1):
        out[:, pos] = idx % p
        idx //= p
    return out


def _check_budget(estimate: int):
    limit = budget()
    if estimate > limit:
        raise InfeasibleSearchError(
            f"estimated scan of {estimate} candidates exceeds the budget of {limit} (set HOMLEIB_BUDGET)"
        )


def scan_lexicographic(cfg: SearchConfig) -> list[tuple]:
    """Brute force over all p^(n^3+n^2) codes, one leading coefficient at a time."""
    p, L = cfg.p, cfg.code_length
    _check_budget(p ** L)
    found = []
    chunk = p ** (L - 1)
    for lead in range(p):
        codes = _digits(chunk, L, p, start=lead * chunk)
        found.extend(map(tuple, codes[_passes(codes, cfg)].tolist()))
    return found


def _multiplicative_solutions(alpha: Matrix, n: int) -> list[tuple]:
    """Basis of the structure constants making ``alpha`` multiplicative (linear for fixed alpha)."""
    F = alpha.field
    cols = []
    for u in range(n ** 3):
        a, b, k = u // (n * n), (u // n) % n, u % n
        # unit structure constant: [e_a, e_b] = e_k
        col = []
        for i, j in itertools.product(range(n), repeat=2):
            lhs = [F.zero] * n
            if (i, j) == (a, b):
                lhs = list(alpha.column(k))
            coef = alpha[a, i] * alpha[b, j]
            for s in range(n):
                rhs = coef if s == k else F.zero
                col.append(lhs[s] - rhs)
        cols.append(col)
    system = Matrix(F, tuple(zip(*cols)), n ** 3)
    return list(nullspace(system).basis)


def _alpha_first_plan(cfg: SearchConfig) -> list[tuple]:
    p, n = cfg.p, cfg.dim
    F = cfg.field
    plan = []
    for entries in itertools.product(range(p), repeat=n * n):
        alpha = Matrix.from_vector(F, entries, n)
        if cfg.require_multiplicative:
            basis = np.array([[x.value for x in v] for v in _multiplicative_solutions(alpha, n)], dtype=np.int64)
        else:
            basis = np.eye(n ** 3, dtype=np.int64)
        plan.append((entries, basis.reshape(-1, n ** 3)))
    return plan


def scan_alpha_first(cfg: SearchConfig) -> list[tuple]:
    """Fix alpha, enumerate the multiplicative structure constants, test the rest."""
    p, n = cfg.p, cfg.dim
    if p ** (n * n) > budget():
        raise InfeasibleSearchError("too many twisting maps for the budget")
    plan = _alpha_first_plan(cfg)
    _check_budget(sum(p ** len(b) for _, b in plan))
    found = []
    for entries, basis in plan:
        k = len(basis)
        coeffs = _digits(p ** k, k, p) if k else np.zeros((1, 0), dtype=np.int64)
        cs = (coeffs @ basis) % p if k else np.zeros((1, n ** 3), dtype=np.int64)
        codes = np.hstack([cs, np.tile(np.array(entries, dtype=np.int64), (len(cs), 1))])
        found.extend(map(tuple, codes[_passes(codes, cfg)].tolist()))
    return sorted(found)


def enumerate_codes(cfg: SearchConfig) -> list[tuple]:
    return scan_alpha_first(cfg)


def enumerate_all(cfg: SearchConfig) -> list[HomAlgebra]:
    """All (bracket, alpha) over F_p passing the configured checks, in code order."""
    return [decode(c, cfg.p, cfg.dim) for c in enumerate_codes(cfg)]


# ---------------------------------------------------------------------------
# GL action
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def general_linear_group(n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """All invertible n x n matrices over F_p (lexicographic) and their inverses."""
    F = GF(p)
    mats, invs = [], []
    ident = Matrix.identity(F, n)
    for entries in itertools.product(range(p), repeat=n * n):
        T = Matrix.from_vector(F, entries, n)
        if T.rank() < n:
            continue
        aug = Matrix(F, tuple(r1 + r2 for r1, r2 in zip(T.rows, ident.rows)), 2 * n)

        red, _ = rref(aug)
        inv = [[x.value for x in row[n:]] for row in red.rows]
        mats.append(np.array(entries, dtype=np.int64).reshape(n, n))
        invs.append(np.array(inv, dtype=np.int64))
    return np.stack(mats), np.stack(invs)


def transform_codes(codes: np.ndarray, T: np.ndarray, Tinv: np.ndarray, p: int, n: int) -> np.ndarray:
    """Codes of ``T . A`` for every code and every group element: shape (N, G, L).

    ``T . A`` has bracket ``T [T^-1 x, T^-1 y]`` and twisting map ``T alpha T^-1``,
    so ``T`` is an isomorphism from A to T . A.
    """
    c, a = _split(codes, n)
    cn = np.einsum("gai,gbj,gsk,Nabk->Ngijs", Tinv, Tinv, T, c) % p
    an = np.einsum("gsa,Nab,gbt->Ngst", T, a, Tinv) % p
    N, G = codes.shape[0], T.shape[0]
    return np.concatenate([cn.reshape(N, G, -1), an.reshape(N, G, -1)], axis=2)


def _keys(codes: np.ndarray, p: int) -> np.ndarray:
    weights = p ** np.arange(codes.shape[-1] - 1, -1, -1, dtype=np.int64)
    return codes @ weights


def hom_isomorphic(A: HomAlgebra, B: HomAlgebra) -> Matrix | None:
    """An invertible T with T[x,y]_A = [Tx,Ty]_B and T alpha_A = alpha_B T, or None."""
    if A.field != B.field or not isinstance(A.field, GF):
        raise FieldMismatchError("hom_isomorphic needs both algebras over the same prime field")
    if A.dim != B.dim:
        return None
    p, n = A.field.p, A.dim
    G, Ginv = general_linear_group(n, p)
    orbit = transform_codes(np.array([encode(A)], dtype=np.int64), G, Ginv, p, n)[0]
    hits = np.nonzero((orbit == np.array(encode(B), dtype=np.int64)).all(axis=1))[0]
    if len(hits) == 0:
        return None
    T = Matrix.from_vector(A.field, G[hits[0]].ravel().tolist(), n)
    if not _is_hom_morphism(T, A, B):
        raise AssertionError("isomorphism witness failed exact validation")
    return T


def _is_hom_morphism(T: Matrix, A: HomAlgebra, B: HomAlgebra) -> bool:
    if T @ A.alpha != B.alpha @ T:
        return False
    cols = [T.column(i) for i in range(A.dim)]
    return all(
        T.apply(A.sc[i][j]) == B.bracket(cols[i], cols[j]) for i, j in itertools.product(range(A.dim), repeat=2)
    )


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoClass:
    representative: HomAlgebra
    code: tuple
    orbit_size: int
    stabilizer_order: int
    fingerprint: tuple  # (dim Der_0, dim Gamma_0, dim ZDer_0, symmetric, rank alpha)

    def to_json(self) -> dict:
        return {
            "code": list(self.code),
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
            "fingerprint": {
                "dim_der0": self.fingerprint[0],
                "dim_centroid0": self.fingerprint[1],
                "dim_zder0": self.fingerprint[2],
                "symmetric": self.fingerprint[3],
                "alpha_rank": self.fingerprint[4],
            },
        }


def fingerprint(A: HomAlgebra) -> tuple:
    from .opspaces import central_derivation_space, centroid_space, derivation_space

    return (
        derivation_space(A, 0).dim,
        centroid_space(A, 0).dim,
        central_derivation_space(A, 0).dim,
        check_symmetric(A).holds,
        A.alpha.rank(),
    )


def canonical_codes(codes: np.ndarray, p: int, n: int, chunk: int = 4096):
    """Per code: (canonical key, canonical code, stabiliser order, orbit size)."""
    G, Ginv = general_linear_group(n, p)
    keys, canon, stab, orbit = [], [], [], []
    for start in range(0, len(codes), chunk):
        block = codes[start:start + chunk]
        images = transform_codes(block, G, Ginv, p, n)
        k = _keys(images, p)
        own = _keys(block, p)
        best = k.argmin(axis=1)
        keys.append(k[np.arange(len(block)), best])
        canon.append(images[np.arange(len(block)), best])
        stab.append((k == own[:, None]).sum(axis=1))
        orbit.append(np.array([len(np.unique(row)) for row in k]))
    if not keys:
        empty = np.zeros(0, dtype=np.int64)
        return empty, np.zeros((0, n ** 3 + n ** 2), dtype=np.int64), empty, empty
    return np.concatenate(keys), np.concatenate(canon), np.concatenate(stab), np.concatenate(orbit)


def classify(cfg: SearchConfig, with_fingerprints: bool = True) -> list[IsoClass]:
    """Partition the enumeration into Hom-isomorphism classes."""
    codes = np.array(enumerate_codes(cfg), dtype=np.int64).reshape(-1, cfg.code_length)
    p, n = cfg.p, cfg.dim
    G, _ = general_linear_group(n, p)
    keys, canon, stab, orbit = canonical_codes(codes, p, n)
    classes = []
    for key in np.unique(keys):
        members = np.nonzero(keys == key)[0]
        size = int(orbit[members[0]])
        st = int(stab[members[0]])
        if size * st != len(G):
            raise AssertionError("orbit-stabiliser count failed")
        if len(members) != size:
            raise AssertionError("enumeration is not closed under the GL action")
        rep_code = tuple(int(x) for x in canon[members[0]])
        rep = decode(rep_code, p, n)
        fp = fingerprint(rep) if with_fingerprints else ()
        classes.append(IsoClass(rep, rep_code, size, st, fp))
    return classes
