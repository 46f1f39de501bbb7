import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from lefschetz_lab.errors import PreconditionError
from lefschetz_lab.ideal import GradedIdeal, gorenstein_from_form, hilbert, inverse_system_piece
from lefschetz_lab.lefschetz import slp_report
from lefschetz_lab.linalg import rank
from lefschetz_lab.osculating import (LinearSystem, hessian_forms, hessian_nonvanishing,
                                      jacobian, laplace_report, minimal_laplace_order,
                                      mixed_hessian, osculating_dim, relevant_jacobian,
                                      system_osculating_dim, theorem_trials, verify_main_theorem)
from lefschetz_lab.poly import LinearForm, Polynomial, contract, monomial_basis
from lefschetz_lab.sampling import random_dense_ideal, random_monomial_ideal, random_point
from lefschetz_lab.togliatti import family_2n_plus_1

from conftest import poly


def veronese(nvars, k):
    return LinearSystem([Polynomial.monomial(m) for m in monomial_basis(nvars, k)])


def test_jacobian_examples(tog):
    J = jacobian(veronese(3, 3), 1)
    assert J.rank_at((1, 1, 1)) == 3
    sys = LinearSystem.from_ideal(tog, 3)
    J = jacobian(sys, 2)
    assert J.shape == (6, 6)
    assert J.rank_at(random_point(random.Random(0), 3)) == 5
    J = jacobian(LinearSystem([poly("x0^4", 3)]), 1)
    assert J.shape == (3, 1)
    assert [r[0] for r in J.entries.entries] == [poly("4*x0^3", 3), 0, 0]


def test_linear_system_checks():
    with pytest.raises(PreconditionError):
        LinearSystem([poly("x0^2", 2), poly("x0", 2)])
    with pytest.raises(PreconditionError):
        LinearSystem([poly("x0^2", 2), poly("2*x0^2", 2)])


def test_relevant_jacobian(tog):
    R = relevant_jacobian(tog, 3, 2)
    F = jacobian(LinearSystem.from_ideal(tog, 3), 2)
    assert R.entries.entries == F.entries.entries
    I = GradedIdeal(2, [poly("x0^3", 2), poly("x1^3", 2)])
    R = relevant_jacobian(I, 4, 3)
    F = jacobian(LinearSystem.from_ideal(I, 4), 3)
    assert R.shape[0] == F.shape[0] - 2
    p = (3, 7)
    assert R.rank_at(p) == F.rank_at(p)
    with pytest.raises(PreconditionError):
        relevant_jacobian(I, 3, 3)


TOGLIATTI_OPERATOR = [("x^2", "x^2"), ("x*y", "-x*y"), ("x*z", "-x*z"),
                      ("y^2", "y^2"), ("y*z", "-y*z"), ("z^2", "z^2")]


def test_togliatti_laplace_equation(tog):
    r = laplace_report(tog, 3, 2, point=(1, 1, 1))
    assert (r.delta, r.delta_nontrivial) == (1, 1)
    (w,) = r.witnesses
    want = [1, -1, -1, 1, -1, 1]   # over X0^2, X0X1, X0X2, X1^2, X1X2, X2^2
    c = w.coefficient((2, 0, 0))
    assert [w.coefficient(m) / c for m in monomial_basis(3, 2)] == want
    # the displayed equation, with polynomial coefficients, kills every form
    for F in inverse_system_piece(tog, 3):
        total = Polynomial.zero(3)
        for op, coeff in TOGLIATTI_OPERATOR:
            total = total + poly(coeff, 3) * contract(poly(op, 3), F)
        assert total.is_zero()
    assert laplace_report(tog, 3, 1).delta == 0
    assert osculating_dim(tog, 3, 2, (1, 1, 1)) == 4


def test_minimal_laplace_order(tog):
    assert minimal_laplace_order(tog, 3) == 2
    assert minimal_laplace_order(GradedIdeal(3, []), 3) is None
    assert minimal_laplace_order(family_2n_plus_1(3, 4), 4) == 3


def test_osculating_dim_examples():
    assert system_osculating_dim(veronese(3, 3), 1, (1, 1, 1)) == 2


def test_laplace_precondition(tog):
    with pytest.raises(PreconditionError):
        laplace_report(tog, 3, 3)
    with pytest.raises(PreconditionError):
        laplace_report(tog, 3, 0)


def test_trivial_laplace_equations():
    # I_2 = span{X0^2}: the operator X0^2 kills every form, a trivial relation
    I = GradedIdeal(3, [poly("x0^2", 3)])
    r = laplace_report(I, 4, 2)
    assert r.delta_trivial == 1 and r.trivial_possible
    assert r.delta_nontrivial == 0


def test_main_theorem_togliatti(tog):
    chk = verify_main_theorem(tog, LinearForm.ones(3), 2, 3)
    assert chk.holds and chk.difference is None


def test_main_theorem_euler_case():
    I = GradedIdeal(3, [])
    L = LinearForm((2, -1, 3))
    d = 3
    chk = verify_main_theorem(I, L, 0, d)
    assert chk.holds
    forms = inverse_system_piece(I, d)
    assert chk.scaled_jacobian.tolist() == [[factorial(d) * F.evaluate(L.point) for F in forms]]


def test_theorem_trials_smoke():
    assert all(c.holds for _, c in theorem_trials(30, seed=11))


def test_mixed_hessian_examples():
    H = mixed_hessian(poly("x0*x1", 2), 1, 1)
    assert H.entries.entries == ((0, 1), (1, 0))
    f = poly("x0^3 + x1^3 + x2^3", 3)
    H = mixed_hessian(f, 1, 1)
    diag = [poly("6*x0", 3), poly("6*x1", 3), poly("6*x2", 3)]
    for i in range(3):
        for j in range(3):
            assert H.entries.entries[i][j] == (diag[i] if i == j else 0)
    with pytest.raises(PreconditionError):
        mixed_hessian(f, 2, 2)


def test_mixed_hessian_against_main_theorem():
    # Hess^(s, d-k)(P) is the transposed multiplication map once the forms
    # are the derivatives delta(f), delta in a basis of A_(d-k)
    f = poly("x0^3 + x1^3 + x2^3", 3)
    G = gorenstein_from_form(f)
    L = LinearForm((1, 2, -3))
    s, k, d = 1, 2, 3
    H = mixed_hessian(f, s, d - k, G).evaluate(L.point)
    chk = verify_main_theorem(G, L, s, k, forms=hessian_forms(f, k, G))
    assert chk.holds
    assert chk.mult_transpose == H * factorial(k - s)
    # a = 1, b = 2: a nonsingular constant matrix
    H12 = mixed_hessian(f, 1, 2, G)
    assert all(e.is_zero() or e.degree() == 0 for r in H12.entries.entries for e in r)
    assert rank(H12.evaluate((0, 0, 0))) == 3


def test_hessian_nonvanishing_examples():
    f = poly("x0^3 + x1^3 + x2^3", 3)
    assert hessian_nonvanishing(f, 1)
    for d in range(1, 7):
        for k in range(d // 2 + 1):
            assert hessian_nonvanishing(Polynomial.monomial((d,)), k)


def test_hessian_vanishing_example():
    # Gordan-Noether type cubic: hess^1 vanishes identically
    f = poly("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5)
    assert not hessian_nonvanishing(f, 1)
    rep = slp_report(gorenstein_from_form(f))
    assert not rep.holds
    assert [(p.s, p.k) for p in rep.failures] == [(1, 2)]


@given(st.integers(0, 10**6))
def test_relevant_rank_equals_full_rank(seed):
    rng = random.Random(seed)
    I = random_monomial_ideal(rng, 3, 4) if seed % 2 else random_dense_ideal(rng, 3, 3)
    k = 4
    forms = inverse_system_piece(I, k)
    if not forms:
        return
    p = random_point(rng, 3)
    for s in range(1, k):
        R = relevant_jacobian(I, k, s)
        F = jacobian(LinearSystem(forms), s)
        assert (R.rank_at(p) if R.shape[0] else 0) == F.rank_at(p)


@given(st.integers(0, 10**6))
def test_curves_have_no_laplace_equations(seed):
    rng = random.Random(seed)
    I = random_monomial_ideal(rng, 2, 6) if seed % 2 else random_dense_ideal(rng, 2, 4)
    for k in range(2, 7):
        N = hilbert(I, k)
        if N == 0:
            continue
        for s in range(1, k):
            if s < N:
                r = laplace_report(I, k, s, seed=seed)
                assert r.osculating_dim == s
                assert r.delta_nontrivial == 0 or r.delta == r.delta_trivial


@given(st.integers(0, 10**6))
def test_random_point_delta_matches_generic(seed):
    rng = random.Random(seed)
    I = random_dense_ideal(rng, 3, 3)
    if hilbert(I, 3) == 0:
        return
    for s in (1, 2):
        a = laplace_report(I, 3, s, seed=seed)
        b = laplace_report(I, 3, s, seed=seed, confirm=True)
        tries = 0
        while a.delta != b.delta and tries < 3:
            tries += 1
            a = laplace_report(I, 3, s, seed=seed + 1000 * tries)
        assert a.delta == b.delta
