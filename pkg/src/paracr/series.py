"""Truncated-series solvers: implicit equations, reciprocals, square roots,
reversion and series solutions of ODEs.

Everything works order-by-order in the weight filtration, so a failure is
always attributable to a specific weight.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .poly import Poly, VAR_INDEX, mono_exps


class SolveError(RuntimeError):
    """An order-by-order solve stalled; the message names the blocking weight."""


def implicit_solve(rhs: Callable[[Poly], Poly], seed: Poly, order: int | None = None) -> Poly:
    """Solve s = rhs(s) by order-by-order improvement.

    `rhs` must be a contraction in the weight filtration: replacing s by a
    series that agrees with the solution up to weight w must pin rhs(s) down
    up to weight > w.  The returned series satisfies s == rhs(s) at its
    truncation order, asserted before returning.
    """
    if order is None:
        order = seed.order
    # Grow the truncation one weight per sweep: with s exact up to weight
    # w - 1, contraction makes rhs(s) exact up to weight w, and computing at
    # truncation w keeps the early sweeps cheap.
    s = seed.with_order(0)
    for w in range(1, order + 1):
        s = rhs(s.with_order(w)).with_order(w)
    s = s.with_order(order)
    residual = rhs(s).with_order(order) - s
    if not residual.is_zero():
        raise SolveError(
            f"implicit solve stalled at weight {residual.min_weight()}")
    return s


def reciprocal(p: Poly) -> Poly:
    """1/p for p with nonzero constant term, truncated at p's order."""
    c0 = p.constant_term()
    if c0 == 0:
        raise SolveError("reciprocal of a series with zero constant term")
    rest = p - c0
    inv0 = Fraction(1) / c0
    # 1/p = inv0 * 1/(1 + rest/c0), geometric series
    u = rest * inv0
    result = Poly.const(1, p.grading, p.order)
    power = Poly.const(1, p.grading, p.order)
    mw = u.min_weight()
    if mw is None:
        return result * inv0
    k = 1
    while k * mw <= p.order:
        power = power * u
        result = result + (power if k % 2 == 0 else -power)
        k += 1
    return result * inv0


def divide(p: Poly, q: Poly) -> Poly:
    return p * reciprocal(q)


def sqrt_unit(p: Poly) -> Poly:
    """Square root of a series whose constant term is the square of a rational;
    the branch with positive constant term."""
    c0 = p.constant_term()
    if c0 <= 0:
        raise SolveError("series square root needs a positive constant term")
    r = _fraction_sqrt(c0)
    # solve s = (p/r + r... ) via Newton-style fixpoint: s = (s + p/s)/2
    seed = Poly.const(r, p.grading, p.order)

    def step(s: Poly) -> Poly:
        return (s + divide(p, s)) * Fraction(1, 2)

    return implicit_solve(step, seed, p.order)


def _fraction_sqrt(c: Fraction) -> Fraction:
    import math

    num = math.isqrt(c.numerator)
    den = math.isqrt(c.denominator)
    if num * num != c.numerator or den * den != c.denominator:
        raise SolveError(f"constant term {c} is not a rational square")
    return Fraction(num, den)


def reverse_univariate(p: Poly, var: str) -> Poly:
    """Compositional inverse of p = c*var + higher (c != 0) in one variable."""
    i = VAR_INDEX[var]
    lin = p.coeff(mono_exps(**{var: 1}))
    if lin == 0:
        raise SolveError("series reversion needs an invertible linear part")
    if any(exps[i] == 0 and c != 0 for exps, c in p.terms.items()):
        raise SolveError("series reversion needs zero constant term")
    t = Poly.var(var, p.grading, p.order)
    rest = p - t * lin

    def step(q: Poly) -> Poly:
        return (t - rest.substitute({var: q})) * (Fraction(1) / lin)

    return implicit_solve(step, t * (Fraction(1) / lin), p.order)


def ode_solve(deriv_order: int,
              rhs: Callable[[Sequence[Poly], Poly], Poly],
              inits: Sequence,
              var: str,
              grading,
              order: int) -> Poly:
    """Series solution u(var) of u^(n) = rhs([u, u', ..., u^(n-1)], var).

    `inits` are the coefficients of var^0..var^(n-1) (rationals, or
    polynomials in the other variables).  Coefficients are matched
    order-by-order; the solution is verified against the equation before
    returning.
    """
    t = Poly.var(var, grading, order)
    u = Poly.zero(grading, order)
    for j, c in enumerate(inits):
        if isinstance(c, Poly):
            u = u + c * t ** j
        else:
            u = u + Poly.const(c, grading, order) * t ** j

    w = grading.weight_of(var)
    for n in range(deriv_order, order // w + 1):
        derivs = [u]
        for _ in range(deriv_order - 1):
            derivs.append(derivs[-1].partial(var).with_order(order))
        r = rhs(derivs, t)
        target = r.coeff_series(**{var: n - deriv_order})
        # u^(n-th coefficient) from matching u^(deriv_order) at var^(n-deriv_order)
        fall = 1
        for j in range(deriv_order):
            fall *= (n - j)
        c_n = target * Fraction(1, fall)
        u = u + c_n * t ** n

    derivs = [u]
    for _ in range(deriv_order):
        derivs.append(derivs[-1].partial(var).with_order(order))
    residual = derivs[deriv_order] - rhs(derivs[:deriv_order], t)
    check_order = order - deriv_order * w
    if not residual.up_to_weight(check_order).is_zero():
        bad = residual.up_to_weight(check_order).min_weight()
        raise SolveError(f"series ODE solve failed at weight {bad}")
    return u
