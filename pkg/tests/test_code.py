import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ecplab import linalg
from ecplab.code import (DistanceBudgetExceeded, LinearCode, contains, dual, equals,
                         extend_scalars, is_mds, is_nondegenerate, min_distance,
                         min_weight_in_range, projective_message_count, puncture, random_code,
                         schur_product, scale, shorten, stabilizer, star, systematic_block,
                         all_square_minors_nonsingular)
from ecplab.gf import GF


def all_codewords(C):
    """Oracle: every codeword by direct enumeration of messages."""
    F = C.field
    msgs = np.array(list(itertools.product(range(F.q), repeat=C.k)), dtype=np.int64)
    return C.encode(msgs)


def brute_distance(C):
    words = all_codewords(C)
    w = np.count_nonzero(words, axis=1)
    w = w[w > 0]
    return int(w.min()) if w.size else C.n + 1


def codes(max_q=9, max_n=7):
    @st.composite
    def strat(draw):
        q = draw(st.sampled_from([q for q in (2, 3, 4, 5, 7, 8, 9) if q <= max_q]))
        n = draw(st.integers(1, max_n))
        k = draw(st.integers(0, min(n, 4)))
        seed = draw(st.integers(0, 2 ** 32 - 1))
        return random_code(GF(q), n, k, np.random.default_rng(seed))
    return strat()


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def test_rref_pivot_rule_and_kernel():
    F = GF(5)
    M = np.array([[0, 2, 4, 1], [0, 1, 2, 4], [0, 0, 0, 0]])
    R, piv = linalg.rref(F, M)
    assert piv == [1, 3]
    assert R.tolist() == [[0, 1, 2, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
    K = linalg.kernel(F, M)
    assert K.tolist() == [[1, 0, 0, 0], [0, 3, 1, 0]]  # one row per free column, in order
    assert not F.matmul(M, K.T).any()


def test_solve_unique_inconsistent_underdetermined():
    F = GF(7)
    A = np.array([[1, 2], [3, 4]])
    x = linalg.solve(F, A, [5, 6])
    assert F.matmul(A, x).tolist() == [5, 6]
    assert linalg.solve(F, [[1, 1], [1, 1]], [1, 2]) is None
    assert linalg.solve(F, [[1, 1]], [1]) is None


@given(codes())
def test_kernel_is_orthogonal_complement(C):
    H = dual(C).gen
    assert C.k + H.shape[0] == C.n
    if C.k and H.shape[0]:
        assert not C.field.matmul(C.gen, H.T).any()
    assert dual(dual(C)) == C


def test_columns_independent_matches_rank():
    F = GF(4)
    rng = np.random.default_rng(1)
    M = rng.integers(0, 4, (3, 6))
    subsets = np.array(list(itertools.combinations(range(6), 3)))
    fast = linalg.columns_independent(F, M, subsets)
    slow = [linalg.rank(F, M[:, s]) == 3 for s in subsets]
    assert fast.tolist() == slow


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------

def test_repetition_code_distance():
    C = LinearCode(GF(3), [[1, 1, 1, 1, 1]])
    assert min_distance(C) == 5
    assert is_mds(C) and is_mds(dual(C))


def test_zero_and_full_code_conventions():
    F = GF(5)
    Z, U = LinearCode.zero(F, 4), LinearCode.full(F, 4)
    assert min_distance(Z) == 5 and min_distance(U) == 1
    assert dual(Z) == U and dual(U) == Z
    assert is_mds(Z) and is_mds(U)


@given(codes(max_q=5, max_n=6))
def test_distance_methods_agree_with_oracle(C):
    d = brute_distance(C)
    assert min_distance(C, method="enumerate") == d
    assert min_distance(C, method="columns") == d
    assert min_distance(C) == d
    assert is_mds(C, method="minors") == is_mds(C, method="distance") == (d == C.n - C.k + 1)


def test_work_splitting_independent_of_partition():
    C = random_code(GF(7), 8, 4, np.random.default_rng(3))
    total = projective_message_count(7, 4)
    whole = min_weight_in_range(C, 0, total)
    cuts = [0, 17, 100, 399, total]
    parts = min(min_weight_in_range(C, a, b) for a, b in zip(cuts, cuts[1:]))
    assert whole == parts == brute_distance(C)


def test_distance_budget():
    C = random_code(GF(13), 12, 6, np.random.default_rng(0))
    with pytest.raises(DistanceBudgetExceeded):
        min_distance(C, budget=10)


@given(codes(max_n=7), st.data())
def test_puncture_shorten_duality(C, data):
    J = data.draw(st.sets(st.integers(1, C.n), max_size=C.n - 1))
    assert dual(shorten(C, J)) == puncture(dual(C), J)
    assert dual(puncture(C, J)) == shorten(dual(C), J)


def test_puncture_keeps_complement():
    F = GF(5)
    C = LinearCode(F, [[1, 2, 3, 4], [0, 1, 1, 1]])
    P = puncture(C, [1])
    assert P.n == 3 and P == LinearCode(F, [[2, 3, 4], [1, 1, 1]])
    S = shorten(C, [1])
    assert S == LinearCode(F, [[1, 1, 1]])
    with pytest.raises(ValueError):
        puncture(C, [5])


@given(codes(max_q=5, max_n=5), st.integers(0, 2 ** 32 - 1))
def test_schur_product_spans_pairwise_products(A, seed):
    B = random_code(A.field, A.n, min(A.k, 2), np.random.default_rng(seed))
    AB = schur_product(A, B)
    prods = [star(x, y, A.field) for x in all_codewords(A) for y in all_codewords(B)]
    assert AB == LinearCode(A.field, np.array(prods), A.n)


def test_stabilizer_oracle():
    """St(C) by brute force over all vectors equals the computed stabiliser."""
    F = GF(3)
    for seed in range(6):
        C = random_code(F, 4, 2, np.random.default_rng(seed))
        words = all_codewords(C)
        brute = [x for x in itertools.product(range(3), repeat=4)
                 if all(C.contains_vector(star(x, w, F)) for w in words)]
        assert stabilizer(C) == LinearCode(F, np.array(brute), 4)


def test_stabilizer_contains_all_ones():
    C = random_code(GF(7), 6, 3, np.random.default_rng(9))
    assert contains(stabilizer(C), LinearCode(GF(7), [[1] * 6]))


def test_extend_scalars_preserves_parameters():
    C = random_code(GF(3), 5, 2, np.random.default_rng(2))
    E = extend_scalars(C, 2)
    assert E.field.q == 9 and E.k == C.k
    assert min_distance(E) == min_distance(C)
    assert dual(E) == extend_scalars(dual(C), 2)


def test_contains_equals_nondegenerate():
    F = GF(5)
    C = LinearCode(F, [[1, 0, 1], [0, 1, 1]])
    D = LinearCode(F, [[1, 1, 2]])
    assert contains(C, D) and not contains(D, C)
    assert equals(C, LinearCode(F, [[1, 1, 2], [1, 0, 1]]))
    assert is_nondegenerate(C)
    assert not is_nondegenerate(LinearCode(F, [[1, 0, 0]]))


def test_scale_is_monomial_equivalence():
    F = GF(7)
    C = random_code(F, 6, 3, np.random.default_rng(4))
    x = np.array([1, 2, 3, 4, 5, 6])
    assert min_distance(scale(x, C)) == min_distance(C)
    assert scale(F.inv(x), scale(x, C)) == C


def test_systematic_form_and_minors():
    F = GF(7)
    C = LinearCode(F, [[1, 1, 1, 1], [0, 1, 2, 3]])
    P = systematic_block(C)
    assert P is not None and P.shape == (2, 2)
    assert all_square_minors_nonsingular(F, P) == is_mds(C)
