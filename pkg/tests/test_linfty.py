import random
import warnings

import pytest
from hypothesis import given, strategies as st

from homhoch import fixtures as F
from homhoch.algebra import HomAlgebra, validate_hom_algebra
from homhoch.complex import CochainPair, apply_differential, build_total_differential, cochain_dim
from homhoch.linfty import GradedCochain, UnlistedBracket, bracket, differential_via_brackets, mc_residual
from homhoch.multimap import MultiMap, compose, from_vector, precompose

MU = "mu"
AL = "alpha"


def g(kind, m):
    return GradedCochain(kind, m)


def bracket_matrix(A, n):
    cols = []
    for j in range(cochain_dim(A.dim, n)):
        c = CochainPair.from_vector({j: 1}, A.dim, n)
        cols.append(differential_via_brackets(A, c).to_vector())
    return cols


def test_degrees():
    E = F.e2()
    assert g(MU, E.mu).degree == 0 and g(AL, E.alpha).degree == 0
    assert g(MU, MultiMap.zero(2, 3)).degree == 1 and g(AL, MultiMap.zero(2, 2)).degree == 1


def test_bracket_examples():
    E = F.e2()
    mu, al = g(MU, E.mu), g(AL, E.alpha)
    assert bracket([mu, al], AL) == compose(E.alpha, E.mu) == precompose(E.mu, [E.alpha, E.alpha])
    assert bracket([mu, al, al], AL) == precompose(E.mu, [E.alpha, E.alpha]).scale(-2)
    z = g(AL, MultiMap.zero(2, 1))
    assert bracket([mu, z], AL).is_zero()
    assert bracket([mu, mu, z], MU).is_zero()


def test_two_products_and_alpha():
    rng = random.Random(4)
    A = F.random_hom_algebra(rng, 2)
    B = F.random_hom_algebra(rng, 2)
    out = bracket([g(MU, A.mu), g(MU, B.mu), g(AL, A.alpha)], MU)
    m1, m2, a = A.mu, B.mu, A.alpha
    expected = (precompose(m1, [m2, a]) - precompose(m1, [a, m2]) + precompose(m2, [m1, a])
                - precompose(m2, [a, m1]))
    assert out == expected
    # with m1 = m2 = mu this is twice the Hom-associativity defect
    same = bracket([g(MU, A.mu), g(MU, A.mu), g(AL, A.alpha)], MU)
    assert same == (precompose(m1, [m1, a]) - precompose(m1, [a, m1])).scale(2)


@st.composite
def bracket_inputs(draw):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    d = 2

    def rnd(k):
        return from_vector({j: rng.randint(-1, 1) for j in range(d ** (k + 1))}, d, k, 1)

    cases = [
        ([g(MU, rnd(2)), g(MU, rnd(2)), g(AL, rnd(1))], MU),
        ([g(AL, rnd(1)), g(AL, rnd(1)), g(MU, rnd(2)), g(MU, rnd(3))], MU),
        ([g(AL, rnd(1)), g(AL, rnd(1)), g(MU, rnd(2)), g(MU, rnd(2)), g(AL, rnd(2))], MU),
        ([g(MU, rnd(2)), g(AL, rnd(1)), g(AL, rnd(1))], AL),
        ([g(AL, rnd(1)), g(AL, rnd(1)), g(AL, rnd(1)), g(MU, rnd(3))], AL),
        ([g(AL, rnd(1)), g(MU, rnd(2)), g(AL, rnd(2))], AL),
        ([g(AL, rnd(1)), g(AL, rnd(1)), g(MU, rnd(2)), g(AL, rnd(2))], AL),
    ]
    args, target = cases[draw(st.integers(0, len(cases) - 1))]
    perm = draw(st.permutations(range(len(args))))
    return args, [args[i] for i in perm], target


@given(bracket_inputs())
def test_bracket_symmetric_under_permutation(data):
    # at most one odd argument occurs, so graded symmetry means plain symmetry
    args, permuted, target = data
    assert sum(a.degree % 2 for a in args) <= 1
    assert bracket(args, target) == bracket(permuted, target)


def test_unlisted_bracket_warns_and_is_zero():
    E = F.e2()
    with pytest.warns(UnlistedBracket):
        out = bracket([g(MU, E.mu), g(MU, E.mu)], AL)
    assert out.is_zero()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bracket([g(MU, E.mu), g(AL, E.alpha)], AL)


# -- Maurer-Cartan -------------------------------------------------------------------------


def test_mc_examples():
    E = F.e2()
    m, a = mc_residual(E.mu, E.alpha)
    assert m.is_zero() and a.is_zero()
    N = F.nonassociative_example()
    m, a = mc_residual(N.mu, MultiMap.identity(N.dim))
    ident = MultiMap.identity(N.dim)
    assoc = precompose(N.mu, [ident, N.mu]) - precompose(N.mu, [N.mu, ident])
    assert m == assoc and a.is_zero()
    m, a = mc_residual(MultiMap.zero(2, 2), E.alpha)
    assert m.is_zero() and a.is_zero()


def test_mc_residual_is_defect():
    rng = random.Random(3)
    for _ in range(10):
        d = rng.randint(1, 3)
        mu = from_vector({j: rng.randint(-1, 1) for j in range(d ** 3)}, d, 2, 1)
        al = from_vector({j: rng.randint(-1, 1) for j in range(d ** 2)}, d, 1, 1)
        m, a = mc_residual(mu, al)
        assert m == precompose(mu, [al, mu]) - precompose(mu, [mu, al])
        assert a == compose(al, mu) - precompose(mu, [al, al])


def random_structure(rng):
    r = rng.random()
    if r < 0.4:
        return F.random_hom_algebra(rng, 3)
    d = rng.randint(1, 2)
    mu = from_vector({j: rng.choice([0, 0, 1, -1]) for j in range(d ** 3)}, d, 2, 1)
    al = from_vector({j: rng.choice([0, 0, 1]) for j in range(d ** 2)}, d, 1, 1)
    return HomAlgebra(d, mu, al)


def test_mc_iff_valid():
    rng = random.Random(100)
    seen = set()
    for _ in range(60):
        A = random_structure(rng)
        m, a = mc_residual(A.mu, A.alpha)
        ok = m.is_zero() and a.is_zero()
        assert ok == validate_hom_algebra(A).ok
        seen.add(ok)
    assert seen == {True, False}


# -- differential from brackets --------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_bracket_differential_matches_matrix_e2(n):
    E = F.e2()
    assert bracket_matrix(E, n) == build_total_differential(E, n).matrix.cols


def test_bracket_differential_random_algebras():
    rng = random.Random(41)
    for _ in range(4):
        A = F.random_hom_algebra(rng, 2)
        for n in (2, 3):
            assert bracket_matrix(A, n) == build_total_differential(A, n).matrix.cols


def test_bracket_differential_examples():
    E = F.e2()
    c = CochainPair(2, E.mu, E.alpha)
    assert differential_via_brackets(E, c) == apply_differential(E, c)
    assert differential_via_brackets(E, CochainPair(2, E.mu, MultiMap.zero(2, 1))).is_zero()
    assert differential_via_brackets(E, CochainPair.zero(2, 3)).is_zero()
    with pytest.raises(ValueError):
        differential_via_brackets(E, CochainPair.zero(2, 4))
