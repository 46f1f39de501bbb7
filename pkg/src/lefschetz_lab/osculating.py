"""Higher Jacobians of Veronese projections, Laplace equations and Hessians.

The variety ``X_k`` is the image of ``P^n`` under the linear system
``I^{-1}_k``.  Its order-``s`` Jacobian has one row per operator of degree
``s`` and one column per form; the *relevant* Jacobian keeps only rows from
a basis of ``A_s``.  Matrices are stored unscaled: the ``(k-s)!`` factor
relating them to multiplication maps is applied in :func:`verify_main_theorem`
and nowhere else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from .errors import PreconditionError
from .ideal import GradedIdeal, gorenstein_from_form, inverse_system_piece, quotient_basis
from .lefschetz import mult_matrix
from .linalg import (ExactMatrix, PolyMatrix, generic_rank, left_kernel_basis, rank,
                     row_space_basis)
from .poly import LinearForm, Polynomial, contract, monomial_basis, monomials_as_polys
from .sampling import random_point, random_theorem_instance


class LinearSystem:
    """Linearly independent forms ``F_1..F_N`` of a common degree."""

    def __init__(self, forms: Sequence[Polynomial]):
        forms = list(forms)
        if not forms:
            raise PreconditionError("empty linear system")
        degs = {f.homogeneous_degree() for f in forms}
        if len(degs) != 1:
            raise PreconditionError(f"forms of different degrees {sorted(degs)}")
        self.degree = degs.pop()
        self.nvars = forms[0].nvars
        basis = monomial_basis(self.nvars, self.degree)
        _, piv = row_space_basis([f.coefficient_vector(basis) for f in forms], len(basis))
        if len(piv) != len(forms):
            raise PreconditionError("forms of a linear system must be linearly independent")
        self.forms = tuple(forms)

    @classmethod
    def from_ideal(cls, I: GradedIdeal, k: int) -> "LinearSystem":
        return cls(inverse_system_piece(I, k))

    @property
    def is_monomial(self) -> bool:
        return all(f.is_monomial() for f in self.forms)

    def __len__(self):
        return len(self.forms)


@dataclass
class JacobianMatrix:
    """``(alpha_i(F_j))`` with polynomial entries of degree ``deg F - s``."""

    order: int
    row_labels: tuple
    col_labels: tuple
    entries: PolyMatrix

    @property
    def shape(self) -> tuple:
        return self.entries.shape

    def evaluate(self, point: Sequence) -> ExactMatrix:
        return self.entries.evaluate(point)

    def rank_at(self, point: Sequence) -> int:
        return rank(self.evaluate(point))

    def generic_rank(self) -> int:
        return generic_rank(self.entries)


def _jacobian(ops: Sequence[Polynomial], forms: Sequence[Polynomial], order: int) -> JacobianMatrix:
    nv = forms[0].nvars if forms else ops[0].nvars
    entries = PolyMatrix([[contract(a, f) for f in forms] for a in ops], nv, len(forms))
    return JacobianMatrix(order, tuple(ops), tuple(forms), entries)


def jacobian(sys: LinearSystem, s: int) -> JacobianMatrix:
    """Order-``s`` Jacobian over the full monomial basis of ``Q_s``."""
    if not 0 <= s < sys.degree:
        raise PreconditionError(f"need 0 <= s < deg = {sys.degree}, got s={s}")
    return _jacobian(monomials_as_polys(monomial_basis(sys.nvars, s)), sys.forms, s)


def relevant_jacobian(I: GradedIdeal, k: int, s: int,
                      forms: Sequence[Polynomial] | None = None) -> JacobianMatrix:
    """Rows restricted to the quotient basis of ``A_s``; columns ``I^{-1}_k`` (or ``forms``)."""
    if not 0 <= s < k:
        raise PreconditionError(f"need 0 <= s < k, got s={s}, k={k}")
    if forms is None:
        forms = inverse_system_piece(I, k)
    ops = quotient_basis(I, s).polynomials()
    if not ops or not forms:
        nv = I.n_vars
        return JacobianMatrix(s, tuple(ops), tuple(forms),
                              PolyMatrix([[] for _ in ops], nv, len(forms)))
    return _jacobian(ops, forms, s)


@dataclass
class RankResult:
    rank: int
    method: str            # "point" | "ones" | "random-certified" | "random" | "symbolic"
    point: tuple | None


def _jacobian_rank(J: JacobianMatrix, monomial: bool, point, rng, confirm: bool) -> RankResult:
    nv = J.entries.nvars
    if point is not None:
        point = tuple(point)
        return RankResult(J.rank_at(point), "point", point)
    if monomial:
        # diagonal torus rescaling: every point with nonzero coordinates has this rank
        p = (1,) * nv
        return RankResult(J.rank_at(p), "ones", p)
    full = min(J.shape)
    p = random_point(rng, nv)
    r = J.rank_at(p)
    if r == full:
        return RankResult(r, "random-certified", p)
    if not confirm:
        return RankResult(r, "random", p)
    g = J.generic_rank()
    for _ in range(8):
        if r == g:
            break
        p = random_point(rng, nv)
        r = J.rank_at(p)
    return RankResult(g, "symbolic", p if r == g else None)


@dataclass
class LaplaceReport:
    order: int
    n: int
    expected_dim: int
    rank: int
    delta: int
    delta_trivial: int
    trivial_possible: bool
    method: str
    point: tuple | None
    witnesses: list = field(default_factory=list)   # operators of degree s
    row_labels: tuple = ()

    @property
    def osculating_dim(self) -> int:
        return self.rank - 1

    @property
    def delta_nontrivial(self) -> int:
        return self.delta - self.delta_trivial

    @property
    def nontrivial(self) -> bool:
        return self.delta_nontrivial > 0


def _ops_from_vectors(vectors, ops) -> list:
    out = []
    for v in vectors:
        p = Polynomial.zero(ops[0].nvars)
        for c, a in zip(v, ops):
            if c:
                p = p + a.scale(c)
        out.append(p)
    return out


def system_laplace_report(sys: LinearSystem, s: int, point=None, seed: int = 0,
                          confirm: bool = False, I: GradedIdeal | None = None) -> LaplaceReport:
    """Laplace equations of order ``s`` for the image of ``sys``.

    ``delta = C(n+s, s) - rank Jac^s``.  When ``I`` is given, relations
    lying in ``I_s`` are counted as trivial.
    """
    rng = random.Random(seed)
    n = sys.nvars - 1
    J = jacobian(sys, s)
    rr = _jacobian_rank(J, sys.is_monomial, point, rng, confirm)
    expected = comb(n + s, s)
    delta = expected - rr.rank
    ops = list(J.row_labels)
    witnesses, n_triv, triv_possible = [], 0, False
    if rr.point is not None:
        K = left_kernel_basis(J.evaluate(rr.point))
        witnesses = _ops_from_vectors(K, ops)
    if I is not None:
        c = I.initial_degree()
        triv_possible = c is not None and s >= c
        Is = I.piece(s)
        if Is.rows:
            if rr.point is not None:
                both = rank(ExactMatrix(list(K) + list(Is.rows), len(ops))) if K else Is.dim
                n_triv = len(K) + Is.dim - both
            else:
                # every operator of I_s kills the whole linear system
                n_triv = Is.dim
    return LaplaceReport(s, n, expected, rr.rank, delta, n_triv, triv_possible, rr.method,
                         rr.point, witnesses, tuple(ops))


def laplace_report(I: GradedIdeal, k: int, s: int, point=None, seed: int = 0,
                   confirm: bool = False) -> LaplaceReport:
    """Laplace equations of order ``s`` satisfied by ``X_k``.

    Without ``point`` the generic rank is used: all-ones for monomial
    ideals, a seeded random point otherwise (symbolically confirmed when
    deficient and ``confirm`` is set).
    """
    if not 0 < s < k:
        raise PreconditionError(f"need 0 < s < k, got s={s}, k={k}")
    forms = inverse_system_piece(I, k)
    if not forms:
        raise PreconditionError(f"I^-1_{k} is zero: empty linear system")
    return system_laplace_report(LinearSystem(forms), s, point, seed, confirm, I)


def minimal_laplace_order(I: GradedIdeal, k: int, seed: int = 0,
                          confirm: bool = False) -> int | None:
    """Least ``s`` in ``1..k-1`` with a nontrivial Laplace equation, or ``None``."""
    for s in range(1, k):
        if laplace_report(I, k, s, seed=seed, confirm=confirm).delta_nontrivial > 0:
            return s
    return None


def osculating_dim(I: GradedIdeal, k: int, s: int, point=None, seed: int = 0) -> int:
    """``rank Jac^s(point) - 1`` for the system ``I^{-1}_k``."""
    return laplace_report(I, k, s, point, seed).osculating_dim


def system_osculating_dim(sys: LinearSystem, s: int, point) -> int:
    return jacobian(sys, s).rank_at(point) - 1


@dataclass
class TheoremCheck:
    holds: bool
    s: int
    k: int
    L: LinearForm
    mult_transpose: ExactMatrix
    scaled_jacobian: ExactMatrix
    difference: ExactMatrix | None


def verify_main_theorem(I: GradedIdeal, L: LinearForm, s: int, k: int,
                        forms: Sequence[Polynomial] | None = None) -> TheoremCheck:
    """Check ``[x L^(k-s)]^T == (k-s)! * relevant_Jac^s(P)`` exactly.

    The multiplication side is computed in the algebra (multiply, reduce
    modulo ``I_k``, change to the basis dual to the forms); the Jacobian
    side by differentiating the forms and evaluating at ``P = coeffs(L)``.
    """
    if not 0 <= s < k:
        raise PreconditionError(f"need 0 <= s < k, got s={s}, k={k}")
    if forms is None:
        forms = inverse_system_piece(I, k)
    if not forms:
        raise PreconditionError(f"h_{k} = 0: nothing to verify")
    lhs = mult_matrix(I, L, s, k, basis="dual", forms=forms).matrix.transpose()
    J = relevant_jacobian(I, k, s, forms)
    rhs = J.evaluate(L.coeffs) * factorial(k - s) if J.row_labels else \
        ExactMatrix([], len(forms))
    ok = lhs == rhs
    return TheoremCheck(ok, s, k, L, lhs, rhs, None if ok else lhs - rhs)


def theorem_trials(trials: int, seed: int = 0, max_n: int = 3, max_k: int = 5):
    """Yield ``(I, check)`` for ``trials`` random instances of the identity."""
    rng = random.Random(seed)
    for _ in range(trials):
        I, L, s, k = random_theorem_instance(rng, max_n, max_k)
        yield I, verify_main_theorem(I, L, s, k)


def mixed_hessian(f: Polynomial, a: int, b: int, ideal: GradedIdeal | None = None) -> JacobianMatrix:
    """``((gamma_i * gamma'_j)(f))`` over quotient bases of ``A_a`` and ``A_b``, ``A = Q/Ann(f)``."""
    d = f.homogeneous_degree()
    if a < 0 or b < 0 or a + b > d:
        raise PreconditionError(f"need a + b <= deg f = {d}, got a={a}, b={b}")
    G = ideal if ideal is not None else gorenstein_from_form(f)
    rows = quotient_basis(G, a).polynomials()
    cols = quotient_basis(G, b).polynomials()
    entries = PolyMatrix([[contract(r * c, f) for c in cols] for r in rows], f.nvars, len(cols))
    return JacobianMatrix(a, tuple(rows), tuple(cols), entries)


def hessian_nonvanishing(f: Polynomial, k: int, seed: int = 0,
                         ideal: GradedIdeal | None = None) -> bool:
    """Whether ``det Hess^(k,k)_f`` is a nonzero polynomial.

    A nonsingular evaluation at a random point decides ``True``; otherwise
    the fraction-free generic rank decides.
    """
    H = mixed_hessian(f, k, k, ideal)
    size = H.shape[0]
    if size == 0:
        return True
    rng = random.Random(seed)
    if H.rank_at(random_point(rng, f.nvars)) == size:
        return True
    return H.generic_rank() == size


def hessian_forms(f: Polynomial, k: int, ideal: GradedIdeal | None = None) -> list:
    """``delta(f)`` for ``delta`` in the quotient basis of ``A_(d-k)``: a basis of ``I^{-1}_k``."""
    d = f.homogeneous_degree()
    G = ideal if ideal is not None else gorenstein_from_form(f)
    return [contract(g, f) for g in quotient_basis(G, d - k).polynomials()]
