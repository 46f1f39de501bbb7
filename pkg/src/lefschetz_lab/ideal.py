"""Graded pieces of homogeneous ideals, inverse systems and annihilators.

Everything here is linear algebra on one graded piece at a time: the
degree-``k`` piece of an ideal is the span of ``m * g`` over generators ``g``
and monomials ``m`` of complementary degree, stored as canonical RREF rows
over :func:`~lefschetz_lab.poly.monomial_basis`.  No Groebner bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import PreconditionError
from .linalg import ExactMatrix, kernel_basis, row_space_basis
from .poly import (Polynomial, contract, divides, monomial_basis, monomial_index,
                   monomials_as_polys)


@dataclass(frozen=True, eq=False)
class IdealPiece:
    """RREF basis of ``I_k`` over the monomial basis of ``Q_k``."""

    degree: int
    monomials: tuple
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def sparse_rows(self) -> tuple:
        return tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in self.rows)

    @cached_property
    def pivot_set(self) -> frozenset:
        return frozenset(self.pivots)

    def polynomials(self) -> list:
        return [Polynomial.from_vector(self.monomials, r) for r in self.rows]


@dataclass(frozen=True)
class QuotientBasis:
    """Monomial basis of ``A_k``: the non-pivot monomials of ``I_k``."""

    degree: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def polynomials(self) -> list:
        return monomials_as_polys(self.monomials)


@dataclass(frozen=True)
class ArtinianVerdict:
    status: str            # "yes" | "no" | "unknown"
    degree: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"


class GradedIdeal:
    """Homogeneous ideal of ``Q = Q[X_0..X_n]`` given by generators.

    Graded pieces are computed on demand and cached per degree.  Cache
    writes are idempotent, so concurrent readers at worst recompute a piece.
    """

    def __init__(self, n_vars: int, generators: Sequence[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.nvars != n_vars:
                raise PreconditionError(
                    f"generator {g} has {g.nvars} variables, ideal has {n_vars}")
            g.homogeneous_degree()  # raises on zero / inhomogeneous input
            gens.append(g)
        self.n_vars = n_vars
        self.generators = tuple(gens)
        self._pieces: dict = {}

    @property
    def n(self) -> int:
        """Projective dimension: the ring has ``n + 1`` variables."""
        return self.n_vars - 1

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    @property
    def is_gorenstein(self) -> bool:
        return False

    def generator_degrees(self) -> list:
        return [g.homogeneous_degree() for g in self.generators]

    def _compute_piece(self, k: int) -> IdealPiece:
        if self.is_monomial and self._fast_monomial:
            return self._monomial_piece(k)
        return self._linear_algebra_piece(k)

    # monomial ideals: I_k is spanned by the monomials divisible by a generator,
    # whose unit vectors already form the canonical RREF basis
    _fast_monomial = True

    def _monomial_piece(self, k: int) -> IdealPiece:
        basis = monomial_basis(self.n_vars, k)
        gens = [next(iter(g.terms)) for g in self.generators]
        pivots = [i for i, m in enumerate(basis) if any(divides(g, m) for g in gens)]
        one, zero = Fraction(1), Fraction(0)
        rows = []
        for p in pivots:
            r = [zero] * len(basis)
            r[p] = one
            rows.append(tuple(r))
        return IdealPiece(k, tuple(basis), tuple(rows), tuple(pivots))

    def standard_monomials(self, k: int) -> tuple:
        """Monomials of degree ``k`` outside a monomial ideal, descending grlex."""
        if k < 0:
            return ()
        cache = self.__dict__.setdefault("_standard", {})
        out = cache.get(k)
        if out is not None:
            return out
        gens = [next(iter(g.terms)) for g in self.generators]
        if k == 0:
            out = () if any(not any(g) for g in gens) else ((0,) * self.n_vars,)
        else:
            # a standard monomial divided by any of its variables stays standard
            prev = self.standard_monomials(k - 1)
            cand = set()
            for m in prev:
                for i in range(self.n_vars):
                    c = m[:i] + (m[i] + 1,) + m[i + 1:]
                    cand.add(c)
            out = tuple(sorted((m for m in cand if not any(divides(g, m) for g in gens)),
                               reverse=True))
        return cache.setdefault(k, out)

    def _linear_algebra_piece(self, k: int) -> IdealPiece:
        basis = monomial_basis(self.n_vars, k)
        idx = monomial_index(self.n_vars, k)
        vectors = []
        for g in self.generators:
            e = g.homogeneous_degree()
            if e > k:
                continue
            for m in monomial_basis(self.n_vars, k - e):
                v = [Fraction(0)] * len(basis)
                for gm, c in g.terms.items():
                    v[idx[tuple(a + b for a, b in zip(gm, m))]] = c
                vectors.append(v)
        rows, pivots = row_space_basis(vectors, len(basis)) if vectors else ([], [])
        return IdealPiece(k, tuple(basis), tuple(rows), tuple(pivots))

    def piece(self, k: int) -> IdealPiece:
        if k < 0:
            return IdealPiece(k, (), (), ())
        p = self._pieces.get(k)
        if p is None:
            p = self._pieces.setdefault(k, self._compute_piece(k))
        return p

    def initial_degree(self, bound: int = 64) -> int | None:
        """Smallest ``k`` with ``I_k != 0`` (searched up to ``bound``)."""
        if self.generators:
            return min(self.generator_degrees())
        return None

    def __repr__(self):
        return f"GradedIdeal(n_vars={self.n_vars}, generators={[str(g) for g in self.generators]})"


class GorensteinIdeal(GradedIdeal):
    """``Ann(f)`` for a form ``f`` of degree ``d``, realised lazily per degree."""

    def __init__(self, form: Polynomial):
        d = form.homogeneous_degree()
        super().__init__(form.nvars, ())
        self.form = form
        self.socle_degree = d

    @property
    def is_monomial(self) -> bool:
        return False

    @property
    def is_gorenstein(self) -> bool:
        return True

    def _compute_piece(self, k: int) -> IdealPiece:
        rows = annihilator_piece(self.form, k)
        basis = monomial_basis(self.n_vars, k)
        vecs, pivots = row_space_basis([p.coefficient_vector(basis) for p in rows], len(basis)) \
            if rows else ([], [])
        return IdealPiece(k, tuple(basis), tuple(vecs), tuple(pivots))

    def initial_degree(self, bound: int = 64) -> int | None:
        for k in range(1, self.socle_degree + 2):
            if self.piece(k).dim:
                return k
        return None

    @property
    def embedding_dimension(self) -> int:
        """``n + 1 - dim Ann(f)_1``; no variable reduction is performed."""
        return self.n_vars - self.piece(1).dim

    def __repr__(self):
        return f"GorensteinIdeal(form={self.form})"


def ideal_piece(I: GradedIdeal, k: int) -> list:
    """RREF basis of ``I_k`` as polynomials."""
    return I.piece(k).polynomials()


def hilbert(I: GradedIdeal, k: int) -> int:
    if k < 0:
        return 0
    if I.is_monomial and I._fast_monomial:
        return len(I.standard_monomials(k))
    return comb(I.n_vars - 1 + k, k) - I.piece(k).dim


def hilbert_vector(I: GradedIdeal, upto: int) -> list:
    return [hilbert(I, k) for k in range(upto + 1)]


def quotient_basis(I: GradedIdeal, k: int) -> QuotientBasis:
    if I.is_monomial and I._fast_monomial:
        return QuotientBasis(k, I.standard_monomials(k))
    p = I.piece(k)
    piv = set(p.pivots)
    mons = tuple(m for i, m in enumerate(monomial_basis(I.n_vars, k)) if i not in piv)
    return QuotientBasis(k, mons)


def reduce_vector(I: GradedIdeal, k: int, vec: Sequence) -> list:
    """Coordinates over :func:`quotient_basis` of a degree-``k`` element given
    by its coefficient vector over the full monomial basis."""
    if I.is_monomial and I._fast_monomial:
        idx = monomial_index(I.n_vars, k)
        return [vec[idx[m]] for m in I.standard_monomials(k)]
    p = I.piece(k)
    v = list(vec)
    for row, pc in zip(p.sparse_rows, p.pivots):
        c = v[pc]
        if c:
            for j, x in row:
                v[j] -= c * x
    piv = p.pivot_set
    return [x for j, x in enumerate(v) if j not in piv]


def reduce(I: GradedIdeal, f: Polynomial) -> list:
    """Coordinates of the class of homogeneous ``f`` in ``A_k`` over the quotient basis."""
    if f.is_zero():
        raise PreconditionError("reduce needs a nonzero homogeneous polynomial")
    k = f.homogeneous_degree()
    return reduce_vector(I, k, f.coefficient_vector(monomial_basis(I.n_vars, k)))


def _apolarity_weights(n_vars: int, k: int) -> list:
    # X^a applied to x^a is a! = prod a_i!
    out = []
    for m in monomial_basis(n_vars, k):
        w = 1
        for e in m:
            w *= factorial(e)
        out.append(w)
    return out


def inverse_system_piece(I: GradedIdeal, k: int) -> list:
    """Basis of ``I^{-1}_k = {f in R_k : alpha(f) = 0 for alpha in I_k}``.

    Null space of the pairing of ``I_k`` against the monomials of ``R_k``,
    returned in canonical RREF form.
    """
    if I.is_monomial and I._fast_monomial:
        # the perp of a span of monomials is spanned by the remaining monomials
        return monomials_as_polys(I.standard_monomials(k))
    basis = monomial_basis(I.n_vars, k)
    p = I.piece(k)
    if not p.rows:
        return monomials_as_polys(basis)
    w = _apolarity_weights(I.n_vars, k)
    M = ExactMatrix([[r[j] * w[j] for j in range(len(basis))] for r in p.rows], len(basis))
    ker = kernel_basis(M)
    rows, _ = row_space_basis(ker, len(basis)) if ker else ([], [])
    return [Polynomial.from_vector(basis, r) for r in rows]


def contraction_matrix(f: Polynomial, k: int) -> tuple:
    """Matrix of ``Q_k -> R_{d-k}``, ``alpha -> alpha(f)``, with its row/col monomials."""
    d = f.homogeneous_degree()
    src = monomial_basis(f.nvars, k)
    dst = monomial_basis(f.nvars, d - k)
    cols = []
    for a in monomials_as_polys(src):
        cols.append(contract(a, f).coefficient_vector(dst))
    M = ExactMatrix([list(r) for r in zip(*cols)] if dst else [], len(src))
    return M, src, dst


def annihilator_piece(f: Polynomial, k: int) -> list:
    """Basis of ``Ann(f)_k``; all of ``Q_k`` when ``k > deg f``."""
    d = f.homogeneous_degree()
    basis = monomial_basis(f.nvars, k)
    if k > d:
        return monomials_as_polys(basis)
    M, _, _ = contraction_matrix(f, k)
    ker = kernel_basis(M)
    rows, _ = row_space_basis(ker, len(basis)) if ker else ([], [])
    return [Polynomial.from_vector(basis, r) for r in rows]


def gorenstein_from_form(f: Polynomial) -> GorensteinIdeal:
    if f.is_zero():
        raise PreconditionError("dual generator must be nonzero")
    if not f.is_homogeneous():
        raise PreconditionError("dual generator must be homogeneous")
    return GorensteinIdeal(f)


def jacobian_ideal_piece(f: Polynomial, j: int, k: int) -> list:
    """Degree-``k`` piece of the ideal of ``R`` generated by all order-``j`` partials of ``f``."""
    d = f.homogeneous_degree()
    if j > d:
        raise PreconditionError(f"derivative order {j} exceeds degree {d}")
    e = d - j
    if k < e:
        return []
    gens = [contract(a, f) for a in monomials_as_polys(monomial_basis(f.nvars, j))]
    gens = [g for g in gens if g]
    basis = monomial_basis(f.nvars, k)
    vecs = []
    for g in gens:
        for m in monomials_as_polys(monomial_basis(f.nvars, k - e)):
            vecs.append((g * m).coefficient_vector(basis))
    if not vecs:
        return []
    rows, _ = row_space_basis(vecs, len(basis))
    return [Polynomial.from_vector(basis, r) for r in rows]


def is_artinian(I: GradedIdeal, bound: int = 32) -> ArtinianVerdict:
    """Decide whether ``Q/I`` is Artinian.

    Monomial ideals get an exact answer from the pure-power test and
    ``Ann(f)`` is always Artinian.  Anything else is a bounded scan of the
    Hilbert function for a zero value.
    """
    if isinstance(I, GorensteinIdeal):
        return ArtinianVerdict("yes", I.socle_degree + 1, "Ann(f) vanishes above deg f")
    if I.is_monomial:
        powers = [None] * I.n_vars
        for g in I.generators:
            (m, _), = g.terms.items()
            support = [i for i, e in enumerate(m) if e]
            if len(support) == 1:
                i = support[0]
                powers[i] = m[i] if powers[i] is None else min(powers[i], m[i])
        missing = [i for i, p in enumerate(powers) if p is None]
        if missing:
            return ArtinianVerdict("no", None, f"no pure power of variable(s) {missing} in I")
        top = sum(p - 1 for p in powers) + 1
        for k in range(top + 1):
            if hilbert(I, k) == 0:
                return ArtinianVerdict("yes", k, "pure power of every variable in I")
        raise AssertionError("unreachable: monomial ideal with all pure powers")
    for k in range(bound + 1):
        if hilbert(I, k) == 0:
            return ArtinianVerdict("yes", k, f"Hilbert function vanishes in degree {k}")
    return ArtinianVerdict("unknown", None, f"no zero of the Hilbert function up to degree {bound}")


def socle_top(I: GradedIdeal, bound: int = 32) -> int | None:
    """Largest ``k`` with ``h_k > 0`` for an Artinian ideal, else ``None``."""
    v = is_artinian(I, bound)
    if v.status != "yes":
        return None
    return v.degree - 1


def monomial_in_ideal(I: GradedIdeal, m) -> bool:
    """Membership of a monomial in a monomial ideal by divisibility."""
    if not I.is_monomial:
        raise PreconditionError("divisibility test needs a monomial ideal")
    return any(divides(next(iter(g.terms)), m) for g in I.generators)
