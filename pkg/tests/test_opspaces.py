from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homleib import catalog
from homleib.exactla import QQ, Matrix, Subspace, commutant
from homleib.homalg import HomAlgebra, PreconditionError
from homleib.opspaces import (
    NotClosedError,
    OperatorLieAlgebra,
    alpha_fixed_elements,
    alpha_tilde,
    assemble_identity,
    assemble_index_formula,
    central_derivation_space,
    centroid_space,
    derivation_space,
    generalized_derivation_space,
    inner_derivation_ad,
    inner_derivation_Ad,
    is_characteristically_nilpotent,
    is_nilpotent,
    is_small_centroid,
    lower_central_series,
    operator_bracket,
    two_sided_centroid_space,
    verify_structure_theorems,
)


def M(rows):
    return Matrix.from_rows(QQ, rows)


def span(*mats):
    return Subspace.span(QQ, len(mats[0].rows) ** 2 if mats else 4, [m.flatten() for m in mats])


def L(id_, variant="listed", **params):
    return catalog.instantiate(id_, variant, params or catalog.default_params(id_, variant))


ZERO2 = HomAlgebra.from_brackets(QQ, 2, {}, [[1, 0], [0, 1]])


# -- solver examples -------------------------------------------------------------


def test_generalized_examples():
    assert generalized_derivation_space(ZERO2, 0, 1, 1, 1).dim == 4
    g = generalized_derivation_space(L("L_1^2"), 1, 1, 1, 0)
    assert g.space == span(M([[0, 0], [0, 1]]))


def test_L12_centroid_at_r0_computed_value():
    # alpha^0 = id: d[e2,e1] = [d e2, e1] forces d11 = d22, so only scalars survive
    g = generalized_derivation_space(L("L_1^2"), 0, 1, 1, 0)
    assert g.space == span(M([[1, 0], [0, 1]]))


@pytest.mark.parametrize("r", [0, 1, 2])
def test_L15_derivations_computed_value(r):
    # alpha = diag(b^2, b) forces d diagonal; d[e2,e2] = 2 b^r d22 e1 gives d11 = 2 b^r d22
    b = 2
    got = generalized_derivation_space(L("L_1^5", "header", b=b), r, 1, 1, 1)
    assert got.space == span(M([[2 * b ** r, 0], [0, 1]]))


def test_generalized_zero_weights_give_commutant():
    A = L("L_1^7")
    # d kills [A, A] = <e1> and commutes with a Jordan block: only e1 <- e2 survives
    assert generalized_derivation_space(A, 2, 1, 0, 0).space == span(M([[0, 1], [0, 0]]))
    Z = HomAlgebra.from_brackets(QQ, 2, {}, [[1, 1], [0, 1]])
    assert generalized_derivation_space(Z, 0, 1, 0, 0).space == commutant(Z.alpha)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_derivation_examples(r):
    assert derivation_space(L("L_2^1"), r).space == span(M([[2, 0], [0, 1]]), M([[0, 1], [0, 0]]))
    assert derivation_space(L("L_4^1"), r).space == span(M([[1, 0], [0, 0]]), M([[0, 1], [0, 0]]))


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_L14_derivations_computed_value(r):
    # d = diag(d1, d2); d[e2,e1] = d2 a^r e1 + d1 e1 forces d2 = 0
    assert derivation_space(L("L_1^4", a=2), r).space == span(M([[1, 0], [0, 0]]))


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_centroid_examples(r):
    assert centroid_space(L("L_1^1"), r).space == span(M([[1, 0], [0, 1]]), M([[0, 1], [0, 0]]))
    a = Fraction(3)
    got = centroid_space(L("L_1^4", a=3), r)
    assert got.space == span(M([[1, 0], [0, 1 / a ** r]]))


def test_central_derivation_examples():
    assert central_derivation_space(ZERO2, 0).dim == 4
    assert central_derivation_space(L("L_2^1"), 0).space == span(M([[0, 1], [0, 0]]))
    assert central_derivation_space(L("L_4^1"), 0).dim == 0


def test_solutions_commute_with_alpha_and_satisfy_identity():
    for id_ in catalog.IDS:
        A = L(id_)
        for r in range(3):
            for space in (derivation_space(A, r), centroid_space(A, r), two_sided_centroid_space(A, r)):
                for d in space.matrices():
                    assert d @ A.alpha == A.alpha @ d
                    assert d in space


def test_membership_operator():
    D = derivation_space(L("L_2^1"), 0)
    assert M([[4, 7], [0, 2]]) in D
    assert M([[1, 0], [0, 1]]) not in D


# -- oracle: identity assembly vs index formula ------------------------------------------


@pytest.mark.parametrize("id_", catalog.IDS)
def test_identity_assembly_equals_index_formula(id_):
    A = L(id_)
    for r in range(3):
        for w in ((1, 1, 1), (1, 1, 0), (1, 0, 1), (2, -1, 3)):
            assert assemble_identity(A, r, *map(QQ, w)) == assemble_index_formula(A, r, *map(QQ, w))


# -- graded behaviour ----------------------------------------------------------------------


def test_all_even_grading_matches_ungraded():
    for id_ in catalog.IDS:
        A = L(id_)
        G = HomAlgebra(A.field, A.sc, A.alpha, (0, 0), A.names)
        for r in range(2):
            assert derivation_space(G, r).space == derivation_space(A, r).space
            assert derivation_space(G, r, parity=1).dim == 0


def test_superalgebra_spaces_split_by_parity():
    A = catalog.superalgebra_example(1, 1, 1, 1)
    even = derivation_space(A, 0, parity=0)
    odd = derivation_space(A, 0, parity=1)
    both = derivation_space(A, 0)
    assert both.space == even.space + odd.space
    assert both.dim == even.dim + odd.dim


# -- invariance --------------------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(catalog.IDS), st.sampled_from([2, -3, Fraction(1, 2)]), st.integers(0, 2))
def test_bracket_scaling_invariance(id_, s, r):
    A = L(id_)
    scaled = HomAlgebra(A.field, tuple(tuple(tuple(QQ(s) * x for x in v) for v in row) for row in A.sc), A.alpha)
    assert derivation_space(scaled, r).space == derivation_space(A, r).space
    assert centroid_space(scaled, r).space == centroid_space(A, r).space


# -- inner derivations -----------------------------------------------------------------


def test_inner_derivation_examples():
    A = L("L_4^1")
    assert inner_derivation_ad(A, (0, 0), 0) == Matrix.zeros(QQ, 2, 2)
    ad = inner_derivation_ad(A, (1, 0), 0)
    assert ad == M([[0, 1], [0, 0]])
    assert ad in derivation_space(A, 1)


def test_inner_derivation_requires_fixed_point():
    A = L("L_1^4", a=2)
    with pytest.raises(PreconditionError):
        inner_derivation_ad(A, (1, 0), 0)
    with pytest.raises(PreconditionError):
        inner_derivation_Ad(A, (1, 0), 0)


def test_alpha_fixed_elements():
    assert len(alpha_fixed_elements(L("L_2^1"))) == 2
    fixed = alpha_fixed_elements(L("L_1^4", a=2))
    assert Subspace.span(QQ, 2, fixed) == Subspace.span(QQ, 2, [[0, 1]])


# -- operator algebra ------------------------------------------------------------------


def test_operator_bracket_and_alpha_tilde():
    u, v = M([[1, 0], [0, 0]]), M([[0, 1], [0, 0]])
    assert operator_bracket(u, v) == v
    assert operator_bracket(v, u) == -v
    # odd-odd bracket is the anticommutator
    assert operator_bracket(v, v, 1, 1) == v @ v + v @ v
    A = L("L_2^1")
    assert alpha_tilde(A, u) == u


def test_lower_central_series_examples():
    abelian = OperatorLieAlgebra((M([[1, 0], [0, 0]]), M([[0, 0], [0, 1]])), (0, 0))
    series = lower_central_series(abelian)
    assert series[-1].dim == 0 and is_nilpotent(abelian)

    D4 = OperatorLieAlgebra.from_space(derivation_space(L("L_4^1"), 0))
    series = lower_central_series(D4)
    assert series[-1] == Subspace.span(QQ, 4, [[0, 1, 0, 0]])
    assert not is_nilpotent(D4)
    assert not is_characteristically_nilpotent(L("L_4^1"))

    assert is_nilpotent(OperatorLieAlgebra.from_space(derivation_space(L("L_1^1"), 0)))


def test_non_closed_operator_set():
    ops = OperatorLieAlgebra((M([[0, 1], [0, 0]]), M([[0, 0], [1, 0]])), (0, 0))
    with pytest.raises(NotClosedError):
        ops.check_closed()


def test_small_centroid_examples():
    assert is_small_centroid(L("L_2^1"))
    assert not is_small_centroid(L("L_1^1"))


# -- structure theorems ------------------------------------------------------------------


def test_structure_theorems_zero_algebra():
    assert verify_structure_theorems(ZERO2, kmax=1).ok


def test_structure_theorems_L21_central_derivations():
    rep = verify_structure_theorems(L("L_2^1"), kmax=1)
    assert rep.ok, rep.failures()
    assert central_derivation_space(L("L_2^1"), 0).space == (
        derivation_space(L("L_2^1"), 0).space & two_sided_centroid_space(L("L_2^1"), 0).space
    )
