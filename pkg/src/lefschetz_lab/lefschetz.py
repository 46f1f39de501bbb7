"""Multiplication maps ``x L^(k-s): A_s -> A_k`` and WLP/SLP reports.

A "general linear form" is handled two ways.  The authoritative route is the
rank of the symbolic matrix over ``Q(c_0..c_n)`` (:func:`symbolic_mult_matrix`
plus :func:`~lefschetz_lab.linalg.generic_rank`).  The fast route evaluates
at a random form; a maximal rank found that way is already a certificate,
since evaluation can only lower the rank, so the symbolic route is only
needed to confirm a deficiency.  Monomial ideals use ``L = X_0 + ... + X_n``:
the torus action rescaling the variables preserves the ideal and moves that
form to any form with nonzero coefficients, so its rank is the generic one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import PreconditionError
from .ideal import (GorensteinIdeal, GradedIdeal, hilbert, inverse_system_piece,
                    is_artinian, quotient_basis, reduce_vector)
from .linalg import ExactMatrix, PolyMatrix, generic_rank, inverse, kernel_basis, rank
from .poly import LinearForm, Polynomial, monomial_basis, monomial_index, pairing_matrix
from .sampling import random_linear_form


@dataclass(frozen=True)
class MultMap:
    s: int
    k: int
    L: LinearForm | None
    matrix: object                 # ExactMatrix, or PolyMatrix when L is symbolic
    domain_basis: tuple            # monomials of A_s
    codomain_basis: tuple          # monomials of A_k, or dual-basis operators
    basis_kind: str = "quotient"   # "quotient" | "dual"

    @property
    def shape(self) -> tuple:
        return self.matrix.shape


def _reduced_monomials(I: GradedIdeal, k: int) -> dict:
    """Quotient-basis coordinates of every monomial of degree ``k``."""
    cache = getattr(I, "_reduced_cache", None)
    if cache is None:
        cache = {}
        I._reduced_cache = cache
    hit = cache.get(k)
    if hit is not None:
        return hit
    basis = monomial_basis(I.n_vars, k)
    out = {}
    for i, m in enumerate(basis):
        v = [Fraction(0)] * len(basis)
        v[i] = Fraction(1)
        out[m] = reduce_vector(I, k, v)
    return cache.setdefault(k, out)


def _reduce_poly(I: GradedIdeal, k: int, f: Polynomial) -> list:
    idx = monomial_index(I.n_vars, k)
    v = [Fraction(0)] * len(idx)
    for m, c in f.terms.items():
        v[idx[m]] = c
    return reduce_vector(I, k, v)


def dual_basis(I: GradedIdeal, k: int, forms: Sequence[Polynomial] | None = None):
    """Operators ``beta_i`` spanning ``A_k`` with ``beta_i(F_j) = delta_ij``.

    ``forms`` defaults to :func:`inverse_system_piece`.  Returns
    ``(betas, B)`` where row ``i`` of ``B`` holds the coordinates of
    ``beta_i`` over the quotient monomial basis.
    """
    if forms is None:
        forms = inverse_system_piece(I, k)
    qb = quotient_basis(I, k)
    if len(forms) != len(qb):
        raise PreconditionError(
            f"{len(forms)} forms given but dim A_{k} = {len(qb)}")
    if not forms:
        return [], ExactMatrix([], 0)
    P = pairing_matrix(qb.polynomials(), list(forms))
    try:
        B = inverse(P)
    except ZeroDivisionError:
        raise ArithmeticError(
            "apolarity pairing between A_k and the forms is singular; "
            "forms do not span the inverse system piece") from None
    betas = [Polynomial.from_vector(qb.monomials, row) for row in B.entries]
    return betas, B


def mult_matrix(I: GradedIdeal, L: LinearForm, s: int, k: int, basis: str = "quotient",
                forms: Sequence[Polynomial] | None = None) -> MultMap:
    """Matrix of ``x L^(k-s): A_s -> A_k``.

    Columns follow ``quotient_basis(I, s)``.  Rows follow
    ``quotient_basis(I, k)`` (``basis="quotient"``) or the dual basis to
    ``forms`` / ``I^{-1}_k`` (``basis="dual"``).
    """
    if s > k:
        raise PreconditionError(f"need s <= k, got s={s}, k={k}")
    if L.nvars != I.n_vars:
        raise PreconditionError("linear form and ideal have different variable counts")
    dom = quotient_basis(I, s)
    cod = quotient_basis(I, k)
    Lm = L.power(k - s)
    cols = []
    for g in dom.polynomials():
        cols.append(_reduce_poly(I, k, Lm * g))
    M = ExactMatrix([list(r) for r in zip(*cols)] if cols else [[] for _ in cod.monomials],
                    len(dom))
    if basis == "quotient":
        return MultMap(s, k, L, M, dom.monomials, cod.monomials, "quotient")
    if basis != "dual":
        raise PreconditionError(f"unknown basis kind {basis!r}")
    betas, B = dual_basis(I, k, forms)
    if not betas:
        return MultMap(s, k, L, M, dom.monomials, (), "dual")
    # quotient coords v = B^T w, so w = (B^T)^{-1} v
    change = inverse(B.transpose())
    return MultMap(s, k, L, change @ M, dom.monomials, tuple(betas), "dual")


def symbolic_mult_matrix(I: GradedIdeal, s: int, k: int) -> MultMap:
    """``x L^(k-s)`` for ``L = sum c_i X_i`` with indeterminate ``c``.

    Entries are polynomials in ``c_0..c_n``; substituting a rational vector
    for ``c`` reproduces :func:`mult_matrix` in the quotient basis.
    """
    if s > k:
        raise PreconditionError(f"need s <= k, got s={s}, k={k}")
    nv = I.n_vars
    dom = quotient_basis(I, s)
    cod = quotient_basis(I, k)
    red = _reduced_monomials(I, k)
    m = k - s
    powers = []
    for a in monomial_basis(nv, m):
        coef = factorial(m)
        for e in a:
            coef //= factorial(e)
        powers.append((a, coef))
    entries = [[dict() for _ in dom.monomials] for _ in cod.monomials]
    for j, g in enumerate(dom.monomials):
        for a, coef in powers:
            v = red[tuple(x + y for x, y in zip(a, g))]
            for i, x in enumerate(v):
                if x:
                    t = entries[i][j]
                    t[a] = t.get(a, 0) + coef * x
    M = PolyMatrix([[Polynomial(nv, t) for t in row] for row in entries], nv, len(dom))
    return MultMap(s, k, None, M, dom.monomials, cod.monomials, "quotient")


@dataclass
class PairEntry:
    """Rank verdict for one map ``A_s -> A_k``."""

    s: int
    k: int
    h_s: int
    h_k: int
    rank: int
    method: str
    L: tuple | None = None
    witness: list = field(default_factory=list)

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.h_s, self.h_k)


@dataclass
class LefschetzReport:
    kind: str                      # "WLP" | "SLP"
    pairs: list
    hilbert: list
    max_degree: int
    narrow: bool = False
    truncated_at: int | None = None

    @property
    def holds(self) -> bool:
        return all(p.maximal for p in self.pairs)

    @property
    def failures(self) -> list:
        return [p for p in self.pairs if not p.maximal]

    @property
    def methods(self) -> list:
        return sorted({p.method for p in self.pairs})


def lefschetz_element_for_monomial(I: GradedIdeal) -> LinearForm:
    """``X_0 + ... + X_n``, a Lefschetz element whenever one exists for monomial ``I``."""
    if not I.is_monomial:
        raise PreconditionError("all-ones reduction only applies to monomial ideals")
    return LinearForm.ones(I.n_vars)


def _witness(M: ExactMatrix, dom: Sequence) -> list:
    basis = [Polynomial.monomial(m) for m in dom]
    out = []
    for v in kernel_basis(M):
        p = Polynomial.zero(len(dom[0]))
        for c, b in zip(v, basis):
            if c:
                p = p + b.scale(c)
        out.append(p)
    return out


def pair_rank(I: GradedIdeal, s: int, k: int, method: str = "auto",
              rng: random.Random | None = None, witness: bool = True) -> PairEntry:
    """Rank of ``x L^(k-s)`` for a general ``L``, with the route recorded.

    ``method``: ``"auto"`` (all-ones for monomial ideals, else random
    evaluation with symbolic confirmation of deficiencies), ``"ones"``,
    ``"random"`` (lower bound only), ``"symbolic"``.
    """
    rng = rng or random.Random(0)
    h_s, h_k = hilbert(I, s), hilbert(I, k)
    full = min(h_s, h_k)
    if h_s == 0 or h_k == 0:
        return PairEntry(s, k, h_s, h_k, 0, "empty")
    if method == "auto":
        method = "ones" if I.is_monomial else "random+symbolic"
    if method == "ones":
        L = lefschetz_element_for_monomial(I)
        M = mult_matrix(I, L, s, k)
        r = rank(M.matrix)
        wit = _witness(M.matrix, M.domain_basis) if witness and r < h_s else []
        return PairEntry(s, k, h_s, h_k, r, "ones", L.coeffs, wit)
    if method in ("random", "random+symbolic"):
        L = random_linear_form(rng, I.n_vars)
        M = mult_matrix(I, L, s, k)
        r = rank(M.matrix)
        if r == full or method == "random":
            wit = _witness(M.matrix, M.domain_basis) if witness and r < h_s else []
            return PairEntry(s, k, h_s, h_k, r, "random" if r < full else "random-certified",
                             L.coeffs, wit)
    elif method != "symbolic":
        raise PreconditionError(f"unknown rank method {method!r}")
    S = symbolic_mult_matrix(I, s, k)
    r = generic_rank(S.matrix)
    L, wit = None, []
    if witness and r < h_s:
        # a point where the evaluated rank reaches the generic rank
        for _ in range(8):
            cand = random_linear_form(rng, I.n_vars)
            Mc = S.matrix.evaluate(cand.coeffs)
            if rank(Mc) == r:
                L, wit = cand, _witness(Mc, S.domain_basis)
                break
    return PairEntry(s, k, h_s, h_k, r, "symbolic", L.coeffs if L else None, wit)


def _default_top(I: GradedIdeal, max_degree: int | None) -> int:
    if max_degree is not None:
        return max_degree
    if isinstance(I, GorensteinIdeal):
        return I.socle_degree
    v = is_artinian(I)
    if v.status != "yes":
        raise PreconditionError("max_degree is required for ideals not known to be Artinian")
    return v.degree - 1


def wlp_report(I: GradedIdeal, max_degree: int | None = None, method: str = "auto",
               seed: int = 0) -> LefschetzReport:
    """Maps ``x L: A_k -> A_(k+1)`` for ``k = 0..max_degree-1``.

    Stops at the first degree where the Hilbert function vanishes.
    """
    rng = random.Random(seed)
    top = _default_top(I, max_degree)
    hv = [hilbert(I, j) for j in range(top + 1)]
    pairs, trunc = [], None
    for k in range(top):
        if hv[k] == 0 or hv[k + 1] == 0:
            trunc = k if hv[k] == 0 else k + 1
            break
        pairs.append(pair_rank(I, k, k + 1, method, rng))
    return LefschetzReport("WLP", pairs, hv, top, truncated_at=trunc)


def slp_report(I: GradedIdeal, max_degree: int | None = None, method: str = "auto",
               seed: int = 0, narrow: bool | None = None) -> LefschetzReport:
    """All maps ``x L^(k-s): A_s -> A_k`` with ``s < k <= max_degree``.

    For ``Ann(f)`` (or ``narrow=True``) only the complementary maps
    ``A_j -> A_(d-j)``, ``j < d/2``, are checked: for Gorenstein algebras
    these decide the SLP.
    """
    rng = random.Random(seed)
    gor = isinstance(I, GorensteinIdeal)
    if narrow is None:
        narrow = gor
    if narrow and not gor:
        raise PreconditionError("narrow-sense SLP only applies to Ann(f)")
    top = _default_top(I, max_degree)
    hv = [hilbert(I, j) for j in range(top + 1)]
    pairs = []
    if narrow:
        d = I.socle_degree
        for j in range(0, (d + 1) // 2):
            pairs.append(pair_rank(I, j, d - j, method, rng))
        return LefschetzReport("SLP", pairs, hv, d, narrow=True)
    last = next((j for j, h in enumerate(hv) if h == 0), None)
    hi = top if last is None else last - 1
    for s in range(0, hi + 1):
        for k in range(s + 1, hi + 1):
            pairs.append(pair_rank(I, s, k, method, rng))
    return LefschetzReport("SLP", pairs, hv, top, truncated_at=last)
