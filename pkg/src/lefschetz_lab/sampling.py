"""Seeded random instances: points, linear forms, forms and ideals.

All randomness flows through an explicit :class:`random.Random` so every
report and test is reproducible from its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from .ideal import GradedIdeal
from .poly import LinearForm, Polynomial, monomial_basis

# coordinates of random points are drawn from a set of this size
POINT_RANGE = 10**6


def random_point(rng: random.Random, nvars: int, nonzero: bool = True) -> tuple:
    half = POINT_RANGE // 2
    while True:
        p = tuple(Fraction(rng.randrange(-half, half)) for _ in range(nvars))
        if not nonzero or all(p):
            return p


def random_linear_form(rng: random.Random, nvars: int, small: bool = False) -> LinearForm:
    """Random form with nonzero coefficients.

    ``small=True`` draws rationals ``p/q`` with ``|p|, q <= 9``; otherwise
    integers from a set of size ``POINT_RANGE``.
    """
    if small:
        coeffs = []
        while len(coeffs) < nvars:
            p = rng.randint(-9, 9)
            if p:
                coeffs.append(Fraction(p, rng.randint(1, 9)))
        return LinearForm(tuple(coeffs))
    return LinearForm(random_point(rng, nvars))


def random_form(rng: random.Random, nvars: int, d: int, density: float = 1.0,
                coeff_range: int = 5) -> Polynomial:
    """Random nonzero homogeneous form of degree ``d`` with integer coefficients."""
    basis = monomial_basis(nvars, d)
    while True:
        terms = {}
        for m in basis:
            if rng.random() <= density:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    terms[m] = c
        if terms:
            return Polynomial(nvars, terms)


def random_monomial_ideal(rng: random.Random, nvars: int, max_degree: int,
                          artinian: bool = True, extra: int | None = None) -> GradedIdeal:
    """Random monomial ideal; with ``artinian`` it contains a pure power of every variable."""
    gens = set()
    if artinian:
        for i in range(nvars):
            e = [0] * nvars
            e[i] = rng.randint(1, max_degree)
            gens.add(tuple(e))
    if extra is None:
        extra = rng.randint(0, 3)
    for _ in range(extra):
        d = rng.randint(1, max_degree)
        gens.add(rng.choice(monomial_basis(nvars, d)))
    if not gens:
        gens.add(rng.choice(monomial_basis(nvars, rng.randint(1, max_degree))))
    return GradedIdeal(nvars, [Polynomial.monomial(m) for m in sorted(gens)])


def random_equigenerated_monomial_ideal(rng: random.Random, nvars: int, d: int,
                                        max_gens: int | None = None) -> GradedIdeal:
    """Artinian monomial ideal generated in degree ``d`` with at most ``max_gens``
    generators (default ``C(n + d - 1, n - 1)``)."""
    n = nvars - 1
    bound = comb(n + d - 1, n - 1) if max_gens is None else max_gens
    pure = []
    for i in range(nvars):
        e = [0] * nvars
        e[i] = d
        pure.append(tuple(e))
    others = [m for m in monomial_basis(nvars, d) if m not in pure]
    room = max(0, min(bound - nvars, len(others)))
    extra = rng.sample(others, rng.randint(0, room)) if room else []
    gens = sorted(set(pure) | set(extra), reverse=True)
    return GradedIdeal(nvars, [Polynomial.monomial(m) for m in gens])


def random_dense_ideal(rng: random.Random, nvars: int, max_degree: int,
                       n_gens: int | None = None) -> GradedIdeal:
    """Ideal generated by a few dense random forms of mixed degrees."""
    if n_gens is None:
        n_gens = rng.randint(1, nvars + 1)
    gens = [random_form(rng, nvars, rng.randint(1, max_degree), density=0.7, coeff_range=3)
            for _ in range(n_gens)]
    return GradedIdeal(nvars, gens)


def random_theorem_instance(rng: random.Random, max_n: int = 3, max_k: int = 5) -> tuple:
    """``(I, L, s, k)`` with ``1 <= s < k <= max_k`` and ``h_k > 0``.

    Ideals alternate between monomial and dense random ones in
    ``2..max_n + 1`` variables; ``L`` has small rational coefficients.
    """
    from .ideal import hilbert
    while True:
        nv = rng.randint(2, max_n + 1)
        if rng.random() < 0.5:
            I = random_monomial_ideal(rng, nv, max_k)
        else:
            I = random_dense_ideal(rng, nv, max_k - 1)
        k = rng.randint(2, max_k)
        s = rng.randint(1, k - 1)
        if hilbert(I, k) > 0:
            return I, random_linear_form(rng, nv, small=True), s, k
