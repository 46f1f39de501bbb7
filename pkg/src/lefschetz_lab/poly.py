"""Sparse multivariate polynomials over the rationals and the apolarity action.

One representation serves both rings: forms ``f`` in ``R = Q[x_0..x_n]`` and
differential operators ``alpha`` in ``Q = Q[X_0..X_n]``.  Which role a
polynomial plays is decided by where it is passed; :func:`contract` treats its
first argument as an operator acting on the second by ``X_i = d/dx_i``.

Monomials are exponent tuples.  The artifact-wide monomial order is
graded-lexicographic with ``X_0 > X_1 > ... > X_n``; :func:`monomial_basis`
lists a graded piece in descending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError

Monomial = tuple  # tuple[int, ...]


def grlex_key(m: Monomial):
    """Sort key; larger key means larger monomial in graded-lex order."""
    return (sum(m), m)


@lru_cache(maxsize=None)
def _basis(n_vars: int, d: int) -> tuple:
    if n_vars == 0:
        return ((),) if d == 0 else ()
    if n_vars == 1:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in _basis(n_vars - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


def monomial_basis(n_vars: int, d: int) -> list:
    """All exponent vectors of degree ``d`` in ``n_vars`` variables, descending grlex."""
    if d < 0:
        return []
    return list(_basis(n_vars, d))


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, d: int) -> dict:
    """Position of each degree-``d`` monomial inside :func:`monomial_basis`."""
    return {m: i for i, m in enumerate(_basis(n_vars, d))}


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`~fractions.Fraction`
    coefficients.  Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise PreconditionError(
                        f"monomial {m} has {len(m)} exponents, expected {nvars}")
                if c:
                    clean[tuple(m)] = _frac(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if any(e < 0 for e in exps):
            raise PreconditionError(f"negative exponent in {exps}")
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def from_vector(cls, basis: Sequence[Monomial], vec: Sequence) -> "Polynomial":
        if not basis:
            raise PreconditionError("empty basis: cannot infer variable count")
        return cls(len(basis[0]), dict(zip(basis, vec)))

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_degree(self) -> int:
        """Common degree of all terms.

        Raises :class:`PreconditionError` for mixed degrees or the zero
        polynomial (whose degree is ambiguous).
        """
        degs = {sum(m) for m in self.terms}
        if len(degs) != 1:
            what = "zero polynomial" if not degs else f"mixed degrees {sorted(degs)}"
            raise PreconditionError(f"not a nonzero homogeneous polynomial: {what}")
        return degs.pop()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> list:
        """Terms in descending grlex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def coefficient_vector(self, basis: Sequence[Monomial]) -> list:
        """Coordinates over ``basis``; raises if a term falls outside it."""
        idx = {m: i for i, m in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for m, c in self.terms.items():
            try:
                vec[idx[m]] = c
            except KeyError:
                raise PreconditionError(f"term {m} not in the given basis") from None
        return vec

    # arithmetic

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise PreconditionError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise PreconditionError("negative power of a polynomial")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``self / other``, which must be exact.

        Grlex leading-term division; raises :class:`ArithmeticError` if a
        remainder appears.
        """
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = other.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=grlex_key)
            if not divides(lm, m):
                raise ArithmeticError("polynomial division is not exact")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = rem[m] / lc
            quot[qm] = qc
            for om, oc in other.terms.items():
                t = tuple(a + b for a, b in zip(qm, om))
                v = rem.get(t, 0) - qc * oc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial._raw(self.nvars, quot)

    def evaluate(self, point: Sequence) -> Fraction:
        """Value at ``point`` (a sequence of rationals of length ``nvars``)."""
        if len(point) != self.nvars:
            raise PreconditionError(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        pt = [_frac(p) for p in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_polynomial(self)


def default_names(nvars: int) -> list:
    return [f"x{i}" for i in range(nvars)]


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Render ``p`` as text accepted by :func:`lefschetz_lab.parse.parse_polynomial`."""
    names = list(names) if names is not None else default_names(p.nvars)
    if not p.terms:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# apolarity


def _contract_monomial(a: Monomial, b: Monomial):
    """``X^a`` applied to ``x^b``: (scalar, exponent) or ``None`` if it vanishes."""
    scalar = 1
    out = []
    for ai, bi in zip(a, b):
        if ai > bi:
            return None
        if ai:
            scalar *= math.perm(bi, ai)
        out.append(bi - ai)
    return scalar, tuple(out)


def contract(op: Polynomial, f: Polynomial) -> Polynomial:
    """Apply the differential operator ``op`` (in Q) to the form ``f`` (in R).

    ``X^a`` sends ``x^b`` to ``prod(b_i! / (b_i - a_i)!) x^(b - a)`` when
    ``b >= a`` componentwise and to zero otherwise; extended bilinearly.
    """
    op._check(f)
    out: dict = {}
    for a, ca in op.terms.items():
        for b, cb in f.terms.items():
            r = _contract_monomial(a, b)
            if r is None:
                continue
            s, m = r
            v = out.get(m, 0) + ca * cb * s
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial._raw(f.nvars, out)


def contract_scalar(op: Polynomial, f: Polynomial) -> Fraction:
    """Scalar value of ``op`` applied to ``f`` when both have the same degree."""
    r = contract(op, f)
    return r.coefficient((0,) * f.nvars)


@dataclass(frozen=True)
class LinearForm:
    """``L = sum c_i X_i`` in Q_1; its dual point is ``P = (c_0 : ... : c_n)``."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(_frac(x) for x in self.coeffs)
        if not any(c):
            raise PreconditionError("linear form must not be zero")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def ones(cls, nvars: int) -> "LinearForm":
        return cls((1,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def point(self) -> tuple:
        return self.coeffs

    def as_polynomial(self) -> Polynomial:
        terms = {}
        for i, c in enumerate(self.coeffs):
            e = [0] * self.nvars
            e[i] = 1
            terms[tuple(e)] = c
        return Polynomial(self.nvars, terms)

    def power(self, m: int) -> Polynomial:
        return self.as_polynomial() ** m

    def scaled(self, t) -> "LinearForm":
        return LinearForm(tuple(_frac(t) * c for c in self.coeffs))


def power_linear_contract(L: LinearForm, m: int, f: Polynomial) -> Polynomial:
    """``L^m`` applied to ``f``.  For ``m == deg f`` this is ``m! * f(P)``."""
    if f.terms and not f.is_homogeneous():
        raise PreconditionError("power_linear_contract expects a homogeneous form")
    return contract(L.power(m), f)


def pairing_matrix(ops: Sequence[Polynomial], forms: Sequence[Polynomial]):
    """Apolarity pairing: entry ``(i, j)`` is ``ops[i]`` applied to ``forms[j]``."""
    from .linalg import ExactMatrix

    degs = {p.homogeneous_degree() for p in list(ops) + list(forms)}
    if len(degs) > 1:
        raise PreconditionError(f"pairing needs equal degrees, got {sorted(degs)}")
    return ExactMatrix([[contract_scalar(a, f) for f in forms] for a in ops], len(forms))


def monomials_as_polys(monos: Iterable[Monomial]) -> list:
    return [Polynomial._raw(len(m), {tuple(m): Fraction(1)}) for m in monos]
