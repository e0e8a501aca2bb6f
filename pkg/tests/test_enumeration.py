import numpy as np
import pytest

from homleib import catalog
from homleib.enumeration import (
    InfeasibleSearchError,
    SearchConfig,
    classify,
    decode,
    encode,
    enumerate_all,
    fingerprint,
    general_linear_group,
    hom_isomorphic,
    scan_alpha_first,
    scan_lexicographic,
)
from homleib.exactla import GF, FieldMismatchError, Matrix
from homleib.homalg import (
    HomAlgebra,
    check_left_hom_leibniz,
    check_right_hom_leibniz,
    check_symmetric,
    is_multiplicative,
)

# regression constants: two-dimensional multiplicative algebras over F_3
COUNTS_P3 = {"left": 7137, "right": 7137, "symmetric": 7041}
CLASSES_P3_LEFT = 194

F3 = GF(3)


@pytest.fixture(scope="module")
def left_p3():
    cfg = SearchConfig(p=3)
    return scan_lexicographic(cfg), scan_alpha_first(cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(p=2)
    with pytest.raises(ValueError):
        SearchConfig(p=4)
    with pytest.raises(ValueError):
        SearchConfig(sidedness="both")


def test_encode_decode_roundtrip():
    A = catalog.instantiate("L_1^7", field=F3)
    code = encode(A)
    assert len(code) == 12
    assert decode(code, 3) == A
    with pytest.raises(FieldMismatchError):
        encode(catalog.instantiate("L_1^7"))


def test_scanners_agree_left(left_p3):
    lex, alpha_first = left_p3
    assert sorted(lex) == alpha_first
    assert len(lex) == COUNTS_P3["left"]


@pytest.mark.parametrize("side", ["right", "symmetric"])
def test_scanners_agree_other_sides(side):
    cfg = SearchConfig(p=3, sidedness=side)
    a = scan_alpha_first(cfg)
    assert sorted(scan_lexicographic(cfg)) == a
    assert len(a) == COUNTS_P3[side]


def test_enumeration_members(left_p3):
    codes = set(left_p3[1])
    zero = tuple([0] * 8 + [1, 0, 0, 1])
    assert zero in codes
    assert encode(catalog.instantiate("L_3^1", field=F3)) in codes
    assert encode(catalog.instantiate("L_1^1", field=F3)) in codes


def test_enumerated_algebras_satisfy_checks():
    algs = enumerate_all(SearchConfig(p=3))
    for A in algs[::97]:
        assert is_multiplicative(A).holds and check_left_hom_leibniz(A).holds


def test_non_multiplicative_scan_is_larger():
    cfg = SearchConfig(p=3, require_multiplicative=False)
    assert len(scan_alpha_first(cfg)) > COUNTS_P3["left"]


def test_budget_rejection(monkeypatch):
    monkeypatch.setenv("HOMLEIB_BUDGET", "1000")
    with pytest.raises(InfeasibleSearchError):
        scan_lexicographic(SearchConfig(p=3))
    with pytest.raises(InfeasibleSearchError):
        scan_alpha_first(SearchConfig(p=5))


def test_general_linear_group_order():
    G, Ginv = general_linear_group(2, 3)
    assert len(G) == 48
    assert (np.einsum("gij,gjk->gik", G, Ginv) % 3 == np.eye(2, dtype=np.int64)).all()
    assert len(general_linear_group(2, 5)[0]) == 480


# -- isomorphism -------------------------------------------------------------------


def test_hom_isomorphic_reflexive_and_symmetric():
    for id_ in ("L_1^1", "L_2^1", "L_1^7", "L_2^3"):
        params = {"b": 2} if id_ == "L_2^3" else None
        A = catalog.instantiate(id_, params=params, field=F3)
        T = hom_isomorphic(A, A)
        assert T is not None


def test_hom_isomorphic_permutation_witness():
    A = catalog.instantiate("L_1^1", field=F3)
    P = Matrix.from_rows(F3, [[0, 1], [1, 0]])
    # permuted copy: brackets P[P^-1 x, P^-1 y], alpha conjugated
    cols = [P.column(i) for i in range(2)]
    sc = [[[F3(0)] * 2 for _ in range(2)] for _ in range(2)]
    for i in range(2):
        for j in range(2):
            img = P.apply(A.sc[i][j])
            a, b = cols[i].index(F3(1)), cols[j].index(F3(1))
            sc[a][b] = list(img)
    B = HomAlgebra(F3, tuple(tuple(tuple(v) for v in r) for r in sc), P @ A.alpha @ P)
    T = hom_isomorphic(A, B)
    assert T is not None
    S = hom_isomorphic(B, A)
    assert S is not None and (T @ S).rank() == 2


def test_L21_and_L31_not_isomorphic_over_F5():
    A = catalog.instantiate("L_2^1", field=GF(5))
    B = catalog.instantiate("L_3^1", field=GF(5))
    assert hom_isomorphic(A, B) is None
    assert hom_isomorphic(B, A) is None


def test_twisting_map_matters():
    A = HomAlgebra.from_brackets(F3, 2, {}, [[1, 0], [0, 1]])
    B = HomAlgebra.from_brackets(F3, 2, {}, [[1, 0], [0, 2]])
    assert hom_isomorphic(A, B) is None


def test_hom_isomorphic_rejects_rationals():
    A = catalog.instantiate("L_2^1")
    with pytest.raises(FieldMismatchError):
        hom_isomorphic(A, A)


# -- classification -----------------------------------------------------------------------


@pytest.fixture(scope="module")
def classes_p3():
    return classify(SearchConfig(p=3), with_fingerprints=True)


def test_partition_invariants(classes_p3):
    assert len(classes_p3) == CLASSES_P3_LEFT
    assert sum(c.orbit_size for c in classes_p3) == COUNTS_P3["left"]
    assert all(c.orbit_size * c.stabilizer_order == 48 for c in classes_p3)
    assert len({c.code for c in classes_p3}) == len(classes_p3)


def test_fingerprint_is_invariant_on_orbits(classes_p3):
    G, Ginv = general_linear_group(2, 3)
    for cls in classes_p3[::17]:
        A = cls.representative
        for g, ginv in zip(G[::11], Ginv[::11]):
            T = Matrix.from_rows(F3, g.tolist())
            B = _transport(A, T, Matrix.from_rows(F3, ginv.tolist()))
            assert hom_isomorphic(A, B) is not None
            assert fingerprint(B) == cls.fingerprint


def _transport(A, T, Tinv):
    """The algebra with bracket T[T^-1 x, T^-1 y] and twisting map T alpha T^-1."""
    n = A.dim
    cols = [Tinv.column(i) for i in range(n)]
    sc = tuple(tuple(T.apply(A.bracket(cols[i], cols[j])) for j in range(n)) for i in range(n))
    return HomAlgebra(A.field, sc, T @ A.alpha @ Tinv)


def test_classes_are_pairwise_non_isomorphic_sample(classes_p3):
    sample = [c.representative for c in classes_p3[::23]]
    for i, A in enumerate(sample):
        for B in sample[i + 1:]:
            assert hom_isomorphic(A, B) is None


def test_symmetric_fingerprint_matches_checker(classes_p3):
    for cls in classes_p3[::7]:
        A = cls.representative
        assert cls.fingerprint[3] == check_symmetric(A).holds
        assert check_symmetric(A).holds == (check_left_hom_leibniz(A).holds and check_right_hom_leibniz(A).holds)


def test_iso_class_json(classes_p3):
    data = classes_p3[0].to_json()
    assert set(data) == {"code", "orbit_size", "stabilizer_order", "fingerprint"}
