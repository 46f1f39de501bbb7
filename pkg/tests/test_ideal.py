import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from lefschetz_lab.errors import PreconditionError
from lefschetz_lab.ideal import (GradedIdeal, annihilator_piece, gorenstein_from_form, hilbert,
                                 hilbert_vector, ideal_piece, inverse_system_piece, is_artinian,
                                 jacobian_ideal_piece, quotient_basis, reduce)
from lefschetz_lab.linalg import same_subspace
from lefschetz_lab.poly import Polynomial, contract, divides, monomial_basis
from lefschetz_lab.sampling import random_form, random_monomial_ideal

from conftest import ideal, poly


def span_eq(a, b, nvars, k):
    basis = monomial_basis(nvars, k)
    return same_subspace([p.coefficient_vector(basis) for p in a],
                         [p.coefficient_vector(basis) for p in b], len(basis))


def survivors(I, k):
    gens = [next(iter(g.terms)) for g in I.generators]
    return [m for m in monomial_basis(I.n_vars, k) if not any(divides(g, m) for g in gens)]


def slow_copy(I):
    J = GradedIdeal(I.n_vars, I.generators)
    J._fast_monomial = False
    return J


def test_togliatti_pieces(tog):
    assert len(ideal_piece(tog, 3)) == 4
    assert span_eq(ideal_piece(tog, 3), list(tog.generators), 3, 3)
    assert ideal_piece(tog, 2) == []
    assert len(ideal_piece(tog, 4)) == 12
    assert hilbert_vector(tog, 5) == [1, 3, 6, 6, 3, 0]


def test_hilbert_examples():
    z = GradedIdeal(3, [])
    assert [hilbert(z, k) for k in range(5)] == [comb(2 + k, k) for k in range(5)]
    assert hilbert(ideal(2, "x0^2", "x1^2"), 2) == 1


def test_inverse_system_examples(tog):
    got = inverse_system_piece(tog, 3)
    want = [poly(t, 3) for t in ["x^2*y", "x^2*z", "x*y^2", "x*z^2", "y^2*z", "y*z^2"]]
    assert sorted(map(str, got)) == sorted(map(str, want))
    assert len(inverse_system_piece(GradedIdeal(3, []), 2)) == 6
    G = gorenstein_from_form(poly("x0^3 + x1^3", 2))
    assert span_eq(inverse_system_piece(G, 2), [poly("x0^2", 2), poly("x1^2", 2)], 2, 2)


def test_quotient_basis_examples(tog):
    assert len(quotient_basis(tog, 2)) == 6
    assert set(quotient_basis(tog, 4).monomials) == {(2, 2, 0), (2, 0, 2), (0, 2, 2)}
    assert len(quotient_basis(ideal(2, "x0^2", "x1^2"), 3)) == 0


def test_annihilator_examples():
    assert annihilator_piece(poly("x0*x1", 2), 1) == []
    f = poly("x0^3 + x1^3", 2)
    assert span_eq(annihilator_piece(f, 2), [poly("x0*x1", 2)], 2, 2)
    assert len(annihilator_piece(f, 4)) == 5


def test_gorenstein_hilbert_examples():
    assert hilbert_vector(gorenstein_from_form(poly("x0^3 + x1^3 + x2^3", 3)), 3) == [1, 3, 3, 1]
    assert hilbert_vector(gorenstein_from_form(poly("x0^5", 1)), 5) == [1] * 6
    assert hilbert_vector(gorenstein_from_form(poly("x0*x1*x2", 3)), 3) == [1, 3, 3, 1]


def test_gorenstein_embedding_dimension():
    # x2 does not occur: Ann(f)_1 contains X2 and is not reduced away
    G = gorenstein_from_form(poly("x0^3 + x1^3", 3))
    assert G.embedding_dimension == 2
    assert hilbert(G, 1) == 2


def test_jacobian_ideal_examples():
    assert span_eq(jacobian_ideal_piece(poly("x0^3 + x1^3", 2), 1, 2),
                   [poly("x0^2", 2), poly("x1^2", 2)], 2, 2)
    assert span_eq(jacobian_ideal_piece(poly("x0^2*x1", 2), 2, 1),
                   [poly("x0", 2), poly("x1", 2)], 2, 1)


def test_is_artinian_examples(tog):
    v = is_artinian(tog)
    assert v.status == "yes" and v.degree == 5
    assert is_artinian(ideal(2, "x0^2")).status == "no"
    v = is_artinian(gorenstein_from_form(poly("x0^3 + x1^3", 2)))
    assert v.status == "yes" and v.degree == 4
    assert is_artinian(ideal(3, "x0^2 + x1*x2"), bound=6).status == "unknown"
    v = is_artinian(ideal(2, "x0^2 + x1^2", "x0*x1"))
    assert v.status == "yes" and v.degree == 3


def test_reduce(tog):
    assert reduce(tog, poly("x^3 + x^2*y", 3)) == reduce(tog, poly("x^2*y", 3))
    with pytest.raises(PreconditionError):
        reduce(tog, Polynomial.zero(3))


def test_rejects_bad_generators():
    with pytest.raises(PreconditionError):
        GradedIdeal(2, [poly("x0^2 + x1", 2)])
    with pytest.raises(PreconditionError):
        GradedIdeal(2, [poly("x0", 3)])


@given(st.integers(0, 10**6))
def test_monomial_fast_path_matches_linear_algebra(seed):
    rng = random.Random(seed)
    I = random_monomial_ideal(rng, rng.randint(1, 4), 4, artinian=rng.random() < 0.7)
    J = slow_copy(I)
    for k in range(7):
        assert hilbert(I, k) == hilbert(J, k) == len(survivors(I, k))
        assert quotient_basis(I, k) == quotient_basis(J, k)
        assert inverse_system_piece(I, k) == inverse_system_piece(J, k)
    v, w = is_artinian(I), is_artinian(J, bound=20)
    assert (v.status == "yes") == (w.status == "yes")
    if v.status == "yes":
        assert v.degree == w.degree


def _binomial_ideal(rng, n):
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(1, 3)
        a, b = rng.sample(monomial_basis(n, d), 2) if comb(n - 1 + d, d) > 1 else \
            (monomial_basis(n, d)[0], None)
        g = Polynomial.monomial(a)
        if b is not None:
            g = g - Polynomial.monomial(b).scale(rng.randint(1, 3))
        gens.append(g)
    return GradedIdeal(n, gens)


def test_perfect_pairing_corpus():
    rng = random.Random(7)
    for i in range(40):
        n = rng.randint(1, 5)
        I = random_monomial_ideal(rng, n, 4) if i % 2 else _binomial_ideal(rng, n)
        for k in range(7 if n <= 3 else 5):
            forms = inverse_system_piece(I, k)
            assert len(forms) == hilbert(I, k)
            # every form is killed by every element of I_k
            for g in ideal_piece(I, k)[:4]:
                for f in forms[:4]:
                    assert contract(g, f).is_zero()


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 5))
def test_gorenstein_invariants(seed, n, d):
    f = random_form(random.Random(seed), n, d, density=0.8)
    G = gorenstein_from_form(f)
    hv = hilbert_vector(G, d + 1)
    assert hv[:d + 1] == hv[:d + 1][::-1]
    assert hv[d] == 1 and hv[d + 1] == 0
    (top,) = inverse_system_piece(G, d)
    # double annihilator: Ann of the dual generator reproduces each I_k
    for k in range(d + 1):
        assert span_eq(annihilator_piece(top, k), ideal_piece(G, k), n, k)


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 5))
def test_inverse_system_is_jacobian_ideal(seed, n, d):
    f = random_form(random.Random(seed), n, d, density=0.8)
    G = gorenstein_from_form(f)
    for k in range(d):
        assert span_eq(inverse_system_piece(G, k), jacobian_ideal_piece(f, d - k, k), n, k)
