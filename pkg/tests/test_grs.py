import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ecplab.code import (LinearCode, dual, extend_scalars, is_mds, min_distance, puncture,
                         random_mds_code, shorten)
from ecplab.gf import GF, field_extend
from ecplab.grs import (INF, CauchySpec, GrsSpec, Moebius, bracket, cauchy_generator,
                        cauchy_to_grs, descend_field, dual_spec, fit_multipliers,
                        grs_generator, grs_to_cauchy, moebius_apply, moebius_three_points,
                        normalize_spec, projective_points, random_grs_spec, random_moebius,
                        recognize_grs, recognize_grs_bruteforce, same_evaluation_sequence,
                        spec_transform, theta, trivial_grs)


def specs(qs=(7, 8, 9, 11), max_n=9):
    @st.composite
    def strat(draw):
        q = draw(st.sampled_from(qs))
        n = draw(st.integers(4, min(max_n, q + 1)))
        k = draw(st.integers(2, n - 2))
        seed = draw(st.integers(0, 2 ** 32 - 1))
        return random_grs_spec(GF(q), n, k, np.random.default_rng(seed))
    return strat()


# ---------------------------------------------------------------------------
# generator matrices, brackets, Cauchy form
# ---------------------------------------------------------------------------

def test_vandermonde_example():
    F = GF(5)
    G = grs_generator(GrsSpec(F, (0, 1, 2, 3, 4), (1,) * 5, 2))
    assert G.tolist() == [[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]]


def test_constant_row_and_infinity_column():
    F = GF(11)
    assert grs_generator(GrsSpec(F, (0, 1, INF), (1, 1, 1), 1)).tolist() == [[1, 1, 1]]
    spec = GrsSpec(F, (0, 1, 2, 3, 4, 5, INF), (1, 2, 3, 4, 5, 6, 7), 3)
    assert grs_generator(spec)[:, 6].tolist() == [0, 0, 7]


def test_spec_validation():
    F = GF(5)
    with pytest.raises(ValueError):
        GrsSpec(F, (0, 0, 1), (1, 1, 1), 1)
    with pytest.raises(ValueError):
        GrsSpec(F, (0, 1, 2), (1, 0, 1), 1)
    with pytest.raises(ValueError):
        GrsSpec(F, tuple(range(5)) + (INF,) + (1,), (1,) * 7, 2)


def test_bracket_values():
    F = GF(7)
    assert bracket(F, 5, 2) == 3
    assert bracket(F, INF, 4) == 1
    assert bracket(F, 4, INF) == 6
    with pytest.raises(ValueError):
        bracket(F, 3, 3)


def test_cauchy_entries_hand_expansion():
    # a = (0, 1, inf, 2, 3), c = 1, k = 2 over GF(7):
    # row a=0: 1/[inf,0] = 1, 1/[2,0] = 1/2 = 4, 1/[3,0] = 1/3 = 5
    # row a=1: 1/[inf,1] = 1, 1/[2,1] = 1,       1/[3,1] = 1/2 = 4
    F = GF(7)
    cs = CauchySpec(F, (0, 1, INF, 2, 3), (1,) * 5, 2)
    G = cauchy_generator(cs)
    assert G.tolist() == [[1, 0, 1, 4, 5], [0, 1, 1, 1, 4]]
    assert cauchy_to_grs(cs).code().gen.tolist() == G.tolist()


@given(specs())
def test_grs_cauchy_round_trip(spec):
    cs = grs_to_cauchy(spec)
    assert LinearCode(spec.field, cauchy_generator(cs)) == spec.code()
    assert cauchy_to_grs(cs).code() == spec.code()


def test_cauchy_k0_is_empty():
    cs = grs_to_cauchy(GrsSpec(GF(7), (0, 1, 2), (1, 1, 1), 0))
    assert cauchy_generator(cs).shape == (0, 3)


@given(specs(qs=(5, 7, 8)))
def test_grs_codes_are_mds(spec):
    C = spec.code()
    assert min_distance(C, method="enumerate") == spec.n - spec.k + 1


# ---------------------------------------------------------------------------
# fractional transformations
# ---------------------------------------------------------------------------

def test_moebius_basic_cases():
    F = GF(7)
    ident = Moebius.identity(F)
    for z in projective_points(F):
        assert moebius_apply(ident, z) == z
        if z is not INF:
            assert theta(ident, z) == 1
    inv = Moebius(F, 0, 1, 1, 0)
    assert moebius_apply(inv, 0) is INF and moebius_apply(inv, INF) == 0
    assert moebius_apply(inv, 3) == F.inv(3)
    assert theta(Moebius(F, 1, 0, 2, 3), 5) == 6


def test_moebius_canonical_form():
    F = GF(7)
    assert Moebius(F, 3, 6, 2, 1) == Moebius(F, 1, 2, 3, 5)
    with pytest.raises(ValueError):
        Moebius(F, 1, 2, 2, 4)


def test_theta_at_infinity():
    F = GF(11)
    assert theta(Moebius(F, 1, 2, 3, 4), INF) == 3
    assert theta(Moebius(F, 1, 2, 0, 4), INF) == 1


def test_three_points():
    F = GF(7)
    M = moebius_three_points(F, (2, 3, 5), (0, 1, INF))
    assert [moebius_apply(M, z) for z in (2, 3, 5)] == [0, 1, INF]
    assert moebius_three_points(F, (0, 1, INF), (0, 1, INF)) == Moebius.identity(F)
    assert moebius_three_points(F, (4, INF, 2), (4, INF, 2)) == Moebius.identity(F)
    with pytest.raises(ValueError):
        moebius_three_points(F, (1, 1, 2), (0, 1, INF))


def test_composition_law():
    F = GF(11)
    rng = np.random.default_rng(7)
    for _ in range(20):
        M, N = random_moebius(F, rng), random_moebius(F, rng)
        for z in projective_points(F):
            assert moebius_apply(M @ N, z) == moebius_apply(M, moebius_apply(N, z))
        assert M @ M.inverse() == Moebius.identity(F)


@given(specs(qs=(11,), max_n=8), st.integers(0, 2 ** 32 - 1))
def test_spec_transform_preserves_code(spec, seed):
    rng = np.random.default_rng(seed)
    M = random_moebius(spec.field, rng)
    lam = int(rng.integers(1, spec.field.q))
    assert spec_transform(spec, M, lam).code() == spec.code()


def test_spec_transform_identity():
    spec = random_grs_spec(GF(11), 8, 4, np.random.default_rng(0))
    assert spec_transform(spec, Moebius.identity(GF(11)), 1) == spec


def test_theta_at_pole_uses_numerator():
    """A finite point sent to infinity (Cz + D = 0) needs theta = Az + B:
    substituting Az + D there changes the code."""
    F = GF(11)
    M = Moebius(F, 2, 1, 1, 3)  # pole at z = -3 = 8
    spec = GrsSpec(F, (8, 0, 1, 2, 4, 5, 6), (1, 2, 3, 4, 5, 6, 7), 3)
    assert spec_transform(spec, M).code() == spec.code()
    good = spec_transform(spec, M)
    wrong_theta = int(F.add(F.mul(M.A, 8), M.D))  # A z + D
    b0 = int(F.mul(F.pow(wrong_theta, spec.k - 1), spec.b[0]))
    wrong = GrsSpec(F, good.a, (b0,) + good.b[1:], spec.k)
    assert wrong.code() != spec.code()


def test_equal_codes_related_by_three_point_map():
    F = GF(11)
    rng = np.random.default_rng(5)
    for _ in range(10):
        s = random_grs_spec(F, 8, 4, rng)
        t = spec_transform(s, random_moebius(F, rng), int(rng.integers(1, 11)))
        M = moebius_three_points(F, s.a[:3], t.a[:3])
        moved = spec_transform(s, M)
        assert moved.a == t.a
        lam = F.div(t.b[0], moved.b[0])
        assert tuple(F.mul(lam, moved.b)) == t.b


def test_same_evaluation_sequence_detects_mismatch():
    F = GF(11)
    s = GrsSpec(F, (0, 1, 2, 3, 4, 5), (1,) * 6, 3)
    t = spec_transform(s, Moebius(F, 1, 2, 3, 4), 5)
    u = GrsSpec(F, (0, 1, 2, 3, 4, 6), (1,) * 6, 3)
    assert same_evaluation_sequence([s, t])
    assert not same_evaluation_sequence([s, u])


# ---------------------------------------------------------------------------
# duals, recognition, trivial parameters, descent
# ---------------------------------------------------------------------------

def test_dual_spec_example():
    F = GF(5)
    s = GrsSpec(F, (0, 1, 2, 3, 4), (1,) * 5, 2)
    d = dual_spec(s)
    assert d.k == 3 and d.a == s.a
    assert d.code() == dual(s.code())
    assert min_distance(d.code()) == s.k + 1


@given(specs())
def test_dual_spec_property(spec):
    d = dual_spec(spec)
    assert d.code() == dual(spec.code())
    assert dual_spec(d).code() == spec.code()


def test_dual_spec_extreme_dimensions():
    F = GF(7)
    for k in (0, 5):
        s = GrsSpec(F, (0, 1, 2, 3, 4), (1, 2, 3, 4, 5), k)
        assert dual_spec(s).code() == dual(s.code())


@given(specs())
def test_recognize_is_sound_and_normalised(spec):
    C = spec.code()
    r = recognize_grs(C)
    assert r is not None and r.code() == C
    k = spec.k
    assert (r.a[0], r.a[1], r.a[k]) == (0, 1, INF)
    assert grs_to_cauchy(r).c[0] == 1


def test_recognize_agrees_with_bruteforce():
    from ecplab.fixtures import nucleus_code
    rng = np.random.default_rng(11)
    cases = [nucleus_code(8)]
    for q in (4, 5, 7, 8):
        F = GF(q)
        for n in range(4, min(7, q) + 1):
            for k in range(2, n - 1):
                cases.append(random_grs_spec(F, n, k, rng).code())
                cases.append(random_mds_code(F, n, k, rng))
    for q in (7, 8):  # random MDS codes of length 8 are too rare to sample here
        cases += [random_grs_spec(GF(q), 8, k, rng).code() for k in range(2, 7)]
    verdicts = []
    for C in cases:
        fast, slow = recognize_grs(C), recognize_grs_bruteforce(C)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert fast.code() == slow.code() == C
        verdicts.append(fast is None)
    assert any(verdicts) and not all(verdicts)


def test_recognize_preconditions():
    F = GF(7)
    with pytest.raises(ValueError):
        recognize_grs(LinearCode(F, [[1, 1, 1, 1, 1]]))
    with pytest.raises(ValueError):
        recognize_grs(LinearCode(F, [[1, 0, 0, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 0, 0]]))


def test_t1_every_distance3_mds_code_is_grs():
    """All [5,3,3] MDS codes over GF(4) (exhaustive over systematic blocks)."""
    F = GF(4)
    count = 0
    for vals in itertools.product(range(1, 4), repeat=6):
        P = np.array(vals).reshape(3, 2)
        C = LinearCode(F, np.hstack([np.eye(3, dtype=np.int64), P]))
        if not is_mds(C):
            continue
        count += 1
        r = recognize_grs(C)
        assert r is not None and r.code() == C
    assert count > 0


def test_trivial_grs():
    F = GF(7)
    Z = LinearCode.zero(F, 5)
    assert trivial_grs(Z).code() == Z
    rep = LinearCode(F, [[1] * 6])
    s = trivial_grs(rep)
    assert s.k == 1 and s.code() == rep
    full = LinearCode.full(F, 4)
    assert trivial_grs(full).code() == full
    par = dual(LinearCode(F, [[1, 2, 3, 4, 5, 6]]))
    assert trivial_grs(par).code() == par
    with pytest.raises(ValueError):
        trivial_grs(LinearCode(F, [[1, 0, 1]]))
    with pytest.raises(ValueError):
        trivial_grs(random_grs_spec(F, 6, 3, np.random.default_rng(0)).code())


def test_descend_field_round_trip():
    F = GF(7)
    s = random_grs_spec(F, 7, 3, np.random.default_rng(2))
    E = extend_scalars(s.code(), 2)
    d = descend_field(E)
    assert d is not None and d.field == F and d.code() == s.code()
    assert extend_scalars(d.code(), 2) == E


def test_descend_field_rejects_extension_only_basis():
    F49 = field_extend(GF(7), 2)
    s = random_grs_spec(F49, 6, 3, np.random.default_rng(3))
    if not F49.in_subfield(s.code().gen, GF(7)).all():
        with pytest.raises(ValueError):
            descend_field(s.code())


def test_shortening_law():
    F = GF(11)
    rng = np.random.default_rng(8)
    for _ in range(10):
        s = random_grs_spec(F, 8, 4, rng, allow_inf=False)
        an = s.a[-1]
        v = [F.sub(z, an) for z in s.a[:-1]]
        expected = GrsSpec(F, s.a[:-1], tuple(F.mul(s.b[:-1], v)), s.k - 1)
        assert shorten(s.code(), [s.n]) == expected.code()


def test_gluing_on_grs_codes():
    F = GF(13)
    rng = np.random.default_rng(4)
    for _ in range(10):
        s = random_grs_spec(F, 11, 3, rng)
        C = s.code()
        I, J = {1, 2}, {10, 11}
        assert recognize_grs(puncture(C, I)) is not None
        assert recognize_grs(puncture(C, J)) is not None
        assert recognize_grs(C) is not None


def test_fit_multipliers():
    F = GF(11)
    s = random_grs_spec(F, 8, 3, np.random.default_rng(1))
    fit = fit_multipliers(s.code(), s.a)
    assert fit is not None and fit.code() == s.code()
    other = tuple(z for z in projective_points(F) if z not in s.a)[:1] + s.a[1:]
    assert fit_multipliers(s.code(), other) is None


def test_normalize_spec_positions():
    F = GF(11)
    s = random_grs_spec(F, 7, 3, np.random.default_rng(6))
    t = normalize_spec(s, (0, 1, 2))
    assert t.a[:3] == (0, 1, INF) and t.b[0] == 1 and t.code() == s.code()
