"""Togliatti systems: detection, minimality, the lattice-point criterion.

For a monomial ideal generated in degree ``d`` the variety ``X_d`` is toric
and its Laplace equations can be read off the lattice points ``A_I`` of the
inverse-system monomials: ``X_d`` has an order-``s`` relation exactly when a
degree-``s`` hypersurface passes through ``A_I``.  Points are dehomogenised
by dropping one coordinate first; they all lie on ``sum = d``, and in
homogeneous coordinates that hyperplane would always show up as a spurious
degree-1 witness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .errors import PreconditionError
from .ideal import GradedIdeal, inverse_system_piece, is_artinian
from .lefschetz import pair_rank
from .linalg import ExactMatrix, kernel_basis, rank
from .osculating import laplace_report
from .poly import Polynomial, format_polynomial, monomial_basis

DEFAULT_SUBSET_LIMIT = 20


@dataclass(frozen=True)
class LatticePointSet:
    n_plus_1: int
    d: int
    points: tuple                 # exponent vectors, descending grlex

    def __len__(self):
        return len(self.points)

    def dehomogenized(self, chart: int = 0) -> list:
        return [p[:chart] + p[chart + 1:] for p in self.points]


@dataclass
class TogliattiVerdict:
    is_togliatti: bool
    mu: int
    bound: int
    d: int
    fails_wlp_at_d_minus_1: bool
    kernel_dim: int
    minimal: bool | None = None
    minimality: "MinimalityCertificate | None" = None
    laplace_orders: dict = field(default_factory=dict)   # order -> nontrivial delta


@dataclass
class MinimalityCertificate:
    minimal: bool
    witness: tuple | None          # generators of a smaller Togliatti system
    subsets_checked: int
    # subsets always have fewer generators than I, so when I obeys the
    # generator bound both readings (bound required / not required) agree
    witness_ignoring_bound: tuple | None = None


def _single_degree(I: GradedIdeal) -> int:
    if not I.generators:
        raise PreconditionError("ideal has no generators")
    degs = set(I.generator_degrees())
    if len(degs) != 1:
        raise PreconditionError(f"generators of mixed degrees {sorted(degs)}")
    return degs.pop()


def _require_monomial(I: GradedIdeal):
    if not I.is_monomial:
        raise PreconditionError("operation needs a monomial ideal")


def generator_bound(n: int, d: int) -> int:
    """``C(n + d - 1, n - 1)``, the generator bound for Togliatti systems."""
    return comb(n + d - 1, n - 1)


def _wlp_kernel(I: GradedIdeal, d: int, seed: int) -> tuple:
    e = pair_rank(I, d - 1, d, "auto", random.Random(seed))
    return not e.maximal, e.h_s - e.rank, e


def is_togliatti(I: GradedIdeal, minimality: bool = False, laplace: bool = False,
                 seed: int = 0, subset_limit: int = DEFAULT_SUBSET_LIMIT) -> TogliattiVerdict:
    """Artinian, generated in one degree ``d``, ``mu <= C(n+d-1, n-1)`` and
    failing the WLP from degree ``d - 1`` to ``d``."""
    d = _single_degree(I)
    if is_artinian(I).status != "yes":
        raise PreconditionError("ideal is not Artinian")
    n = I.n
    mu = I.piece(d).dim
    bound = generator_bound(n, d)
    fails, kdim, _ = _wlp_kernel(I, d, seed)
    v = TogliattiVerdict(fails and mu <= bound, mu, bound, d, fails, kdim)
    if laplace:
        v.laplace_orders = {s: laplace_report(I, d, s, seed=seed).delta_nontrivial
                            for s in range(1, d)}
    if minimality and v.is_togliatti and I.is_monomial:
        cert = is_minimal_monomial_togliatti(I, subset_limit, seed, _verdict=v)
        v.minimal, v.minimality = cert.minimal, cert
    return v


def lattice_points(I: GradedIdeal, d: int | None = None) -> LatticePointSet:
    """Exponent vectors of the monomials spanning ``I^{-1}_d``."""
    _require_monomial(I)
    if d is None:
        d = _single_degree(I)
    pts = []
    for f in inverse_system_piece(I, d):
        if not f.is_monomial():
            raise AssertionError("inverse system of a monomial ideal must be monomial")
        pts.append(next(iter(f.terms)))
    return LatticePointSet(I.n_vars, d, tuple(pts))


def _affine_monomials(nv: int, s: int) -> list:
    out = []
    for t in range(s, -1, -1):
        out.extend(monomial_basis(nv, t))
    return out


def evaluation_matrix(pts: LatticePointSet, s: int, chart: int = 0) -> tuple:
    """Rows: points (coordinate ``chart`` dropped); cols: monomials of degree <= s."""
    nv = pts.n_plus_1 - 1
    mons = _affine_monomials(nv, s)
    rows = []
    for p in pts.dehomogenized(chart):
        row = []
        for m in mons:
            v = 1
            for x, e in zip(p, m):
                if e:
                    v *= x ** e
            row.append(v)
        rows.append(row)
    return ExactMatrix(rows, len(mons)), mons


def vanishing_space_dim(pts: LatticePointSet, s: int, chart: int = 0) -> int:
    """Dimension of the polynomials of degree ``<= s`` in ``n`` affine
    variables vanishing on every point."""
    M, mons = evaluation_matrix(pts, s, chart)
    return len(mons) - rank(M)


def vanishing_polynomials(pts: LatticePointSet, s: int, chart: int = 0) -> list:
    """A basis of the polynomials counted by :func:`vanishing_space_dim`."""
    M, mons = evaluation_matrix(pts, s, chart)
    return [Polynomial(pts.n_plus_1 - 1, dict(zip(mons, v))) for v in kernel_basis(M)]


def minimal_order_via_polytope(I: GradedIdeal, d: int | None = None, chart: int = 0) -> int | None:
    """Least ``s`` in ``1..d-1`` such that a degree-``s`` hypersurface contains ``A_I``."""
    _require_monomial(I)
    dd = _single_degree(I)
    if d is None:
        d = dd
    elif d != dd:
        raise PreconditionError(f"ideal is generated in degree {dd}, not {d}")
    if is_artinian(I).status != "yes":
        raise PreconditionError("ideal is not Artinian")
    mu = I.piece(d).dim
    if mu > generator_bound(I.n, d):
        raise PreconditionError(
            f"mu(I) = {mu} exceeds C(n+d-1, n-1) = {generator_bound(I.n, d)}")
    pts = lattice_points(I, d)
    for s in range(1, d):
        if vanishing_space_dim(pts, s, chart) > 0:
            return s
    return None


def _pure_power_split(I: GradedIdeal, d: int) -> tuple:
    pure, other = [], []
    for g in I.generators:
        m = next(iter(g.terms))
        (pure if max(m) == d else other).append(g)
    return pure, other


def is_minimal_monomial_togliatti(I: GradedIdeal, subset_limit: int = DEFAULT_SUBSET_LIMIT,
                                  seed: int = 0, _verdict: TogliattiVerdict | None = None
                                  ) -> MinimalityCertificate:
    """No proper generator subset containing all pure powers is Togliatti.

    Subsets are tried smallest first; the first Togliatti subset found is
    returned as the witness.  An ideal that is not itself a Togliatti
    system is answered ``False`` rather than rejected; the search still
    runs so that a Togliatti subset, if any, is reported.
    """
    _require_monomial(I)
    v = _verdict or is_togliatti(I, seed=seed)
    d = v.d
    pure, other = _pure_power_split(I, d)
    if len(pure) != I.n_vars:
        raise PreconditionError("expected exactly one pure power per variable")
    if len(other) > subset_limit:
        raise PreconditionError(
            f"{len(other)} non-pure-power generators exceed the subset limit {subset_limit}")
    checked = 0
    loose = None
    for size in range(len(other)):
        for sub in itertools.combinations(other, size):
            J = GradedIdeal(I.n_vars, pure + list(sub))
            checked += 1
            w = is_togliatti(J, seed=seed)
            if w.fails_wlp_at_d_minus_1:
                gens = tuple(J.generators)
                if loose is None:
                    loose = gens
                if w.is_togliatti:
                    return MinimalityCertificate(False, gens, checked, loose)
    return MinimalityCertificate(v.is_togliatti, None, checked, loose)


def family_2n_plus_1(n: int, d: int) -> GradedIdeal:
    """``(x_0^d, ..., x_n^d) + x_0^(d-1) (x_1, ..., x_n)`` in ``n + 1`` variables."""
    if n < 2 or d < 3:
        raise PreconditionError("family needs n >= 2 and d >= 3")
    nv = n + 1
    gens = []
    for i in range(nv):
        e = [0] * nv
        e[i] = d
        gens.append(Polynomial.monomial(e))
    for i in range(1, nv):
        e = [0] * nv
        e[0] = d - 1
        e[i] = 1
        gens.append(Polynomial.monomial(e))
    return GradedIdeal(nv, gens)


@dataclass
class ConjectureProbe:
    generators: list
    n: int
    d: int
    mu: int
    is_togliatti: bool
    minimal: bool | None
    delta_by_order: dict          # s -> dim ker(x L^(d-s): A_s -> A_d), L all-ones
    kernel_witnesses: dict        # s -> list of operators
    consistent: bool | None       # None when the conjecture does not apply

    def to_record(self, names=None) -> dict:
        fmt = (lambda p: format_polynomial(p, names))
        return {
            "generators": [fmt(g) for g in self.generators],
            "n": self.n,
            "d": self.d,
            "mu": self.mu,
            "togliatti": self.is_togliatti,
            "minimal": self.minimal,
            "delta_by_order": {str(s): v for s, v in sorted(self.delta_by_order.items())},
            "kernel_witnesses": {str(s): [fmt(w) for w in ws]
                                 for s, ws in sorted(self.kernel_witnesses.items())},
            "conjecture_consistent": self.consistent,
        }


def conjecture_probe(I: GradedIdeal, seed: int = 0,
                     subset_limit: int = DEFAULT_SUBSET_LIMIT) -> ConjectureProbe:
    """Kernel dimensions of ``x L^(d-s): A_s -> A_d`` for ``s = 1..d-1``.

    A minimal system is consistent with the conjecture when only order
    ``d - 1`` carries a relation and it is one-dimensional.
    """
    _require_monomial(I)
    d = _single_degree(I)
    v = is_togliatti(I, seed=seed)
    minimal = None
    if v.is_togliatti:
        minimal = is_minimal_monomial_togliatti(I, subset_limit, seed, _verdict=v).minimal
    rng = random.Random(seed)
    deltas, wits = {}, {}
    for s in range(1, d):
        e = pair_rank(I, s, d, "auto", rng)
        deltas[s] = e.h_s - e.rank
        wits[s] = e.witness
    consistent = None
    if minimal:
        consistent = deltas[d - 1] == 1 and all(deltas[s] == 0 for s in range(1, d - 1))
    return ConjectureProbe(list(I.generators), I.n, d, v.mu, v.is_togliatti, minimal,
                           deltas, wits, consistent)
