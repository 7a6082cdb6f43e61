"""Shared generators for randomized tests.  Everything is seeded by the
caller, so failures reproduce exactly."""

import random
from fractions import Fraction

from paracr.cmoperator import weighted_monomials
from paracr.poly import Poly, REGULAR, UNIT, singular_grading
from paracr.surfaces import SurfaceJet


def random_regular_jet(rng: random.Random, order: int = 8,
                       density: float = 0.4) -> SurfaceJet:
    """a + bx + random rational terms of weight 3..order."""
    g = REGULAR
    F = Poly.var("a", g, order) + Poly.monomial(1, g, order, b=1, x=1)
    for nu in range(3, order + 1):
        for exps in weighted_monomials(nu, ("a", "b", "x"), g):
            if rng.random() < density:
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                F = F + Poly({exps: c}, g, order)
    return SurfaceJet(F)


def random_singular_jet(rng: random.Random, k: int, m: int,
                        order: int | None = None,
                        density: float = 0.35) -> SurfaceJet:
    """a + b^m x^n + random bottom-row and higher terms, type-k grading."""
    if order is None:
        order = k + 6
    g = singular_grading(k)
    n = k - m
    F = Poly.var("a", g, order) + Poly.monomial(1, g, order, b=m, x=n)
    for j in range(m + 1, k):
        F = F + Poly.monomial(Fraction(rng.randint(-2, 2)), g, order,
                              b=j, x=k - j)
    for nu in range(k + 1, order + 1):
        for exps in weighted_monomials(nu, ("a", "b", "x"), g):
            if rng.random() < density:
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                F = F + Poly({exps: c}, g, order)
    return SurfaceJet(F)


def random_ode_jet(rng: random.Random, order: int = 6,
                   density: float = 0.25):
    """Random right-hand side B(x, y, p) of total degree <= order."""
    from paracr.odebridge import OdeJet

    B = Poly.zero(UNIT, order)
    for w in range(order + 1):
        for exps in weighted_monomials(w, ("x", "y", "p"), UNIT):
            if rng.random() < density:
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                B = B + Poly({exps: c}, UNIT, order)
    return OdeJet(B)
