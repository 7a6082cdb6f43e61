"""Surface jets y = F(a, b, x), product-preserving point maps, and the exact
transformation of a jet under a map.

Maps respect the product structure: (X, Y) depend only on (x, y) and (A, B)
only on (a, b).  Applying a map to a jet is done by series inversion and an
implicit solve, entirely in the unit (total-degree) grading, where every map
used here preserves the degree filtration; the result is re-truncated in the
jet's own weighted grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, Grading, REGULAR, UNIT, mono_exps
from .series import SolveError, implicit_solve


@dataclass(frozen=True)
class SurfaceJet:
    """Defining function F(a, b, x), truncated at weight `order` of its
    grading."""

    F: Poly

    def __post_init__(self):
        if not self.F.variables() <= {"a", "b", "x"}:
            raise ValueError("a defining function depends on (a, b, x) only")

    @property
    def grading(self) -> Grading:
        return self.F.grading

    @property
    def order(self) -> int:
        return self.F.order

    def f_part(self, model: Poly) -> Poly:
        """F minus (a + model); the deformation part."""
        return self.F - Poly.var("a", self.grading, self.order) - model

    def f_regular(self) -> Poly:
        g, L = self.grading, self.order
        return self.F - Poly.var("a", g, L) - Poly.monomial(1, g, L, b=1, x=1)

    def __str__(self):
        return str(self.F)


@dataclass(frozen=True)
class PointMap:
    """(x, y, a, b) -> (X, Y, A, B) with Xc, Yc in (x, y) and Ac, Bc in
    (a, b); origin-preserving with invertible linear part."""

    Xc: Poly
    Yc: Poly
    Ac: Poly
    Bc: Poly

    def __post_init__(self):
        if not self.Xc.variables() <= {"x", "y"} or not self.Yc.variables() <= {"x", "y"}:
            raise ValueError("X, Y must depend on (x, y) only")
        if not self.Ac.variables() <= {"a", "b"} or not self.Bc.variables() <= {"a", "b"}:
            raise ValueError("A, B must depend on (a, b) only")
        for c in (self.Xc, self.Yc, self.Ac, self.Bc):
            if c.constant_term() != 0:
                raise ValueError("point maps must preserve the origin")

    @classmethod
    def identity(cls, grading: Grading, order: int) -> "PointMap":
        return cls(Poly.var("x", grading, order), Poly.var("y", grading, order),
                   Poly.var("a", grading, order), Poly.var("b", grading, order))

    def is_identity(self) -> bool:
        g, L = self.Xc.grading, self.Xc.order
        return self == PointMap.identity(g, L)

    def components(self) -> dict:
        return {"X": self.Xc, "Y": self.Yc, "A": self.Ac, "B": self.Bc}

    def to_unit(self, order: int) -> "PointMap":
        return PointMap(*(c.with_grading(UNIT, order) for c in
                          (self.Xc, self.Yc, self.Ac, self.Bc)))

    def compose(self, first: "PointMap") -> "PointMap":
        """self after `first` (as maps of the space)."""
        sub_xy = {"x": first.Xc, "y": first.Yc}
        sub_ab = {"a": first.Ac, "b": first.Bc}
        return PointMap(self.Xc.substitute(sub_xy, strict=False),
                        self.Yc.substitute(sub_xy, strict=False),
                        self.Ac.substitute(sub_ab, strict=False),
                        self.Bc.substitute(sub_ab, strict=False))


class MapError(ValueError):
    pass


def invert_pair(P: Poly, Q: Poly, variables: tuple) -> tuple:
    """Inverse of the 2-variable map (u, v) -> (P(u, v), Q(u, v)) with
    invertible linear part, as series in the same two variable names.
    Computed in the unit grading of the inputs."""
    v1, v2 = variables
    m11 = P.coeff(mono_exps(**{v1: 1}))
    m12 = P.coeff(mono_exps(**{v2: 1}))
    m21 = Q.coeff(mono_exps(**{v1: 1}))
    m22 = Q.coeff(mono_exps(**{v2: 1}))
    det = m11 * m22 - m12 * m21
    if det == 0:
        raise MapError("map has a singular linear part")
    i11, i12, i21, i22 = m22 / det, -m12 / det, -m21 / det, m11 / det
    g, L = P.grading, min(P.order, Q.order)
    t1, t2 = Poly.var(v1, g, L), Poly.var(v2, g, L)
    h1 = P - t1 * m11 - t2 * m12
    h2 = Q - t1 * m21 - t2 * m22

    state = (t1 * i11 + t2 * i12, t1 * i21 + t2 * i22)
    for _ in range(L + 2):
        s1, s2 = state
        subs = {v1: s1, v2: s2}
        r1 = h1.substitute(subs, strict=False)
        r2 = h2.substitute(subs, strict=False)
        n1 = (t1 - r1) * i11 + (t2 - r2) * i12
        n2 = (t1 - r1) * i21 + (t2 - r2) * i22
        if n1 == s1 and n2 == s2:
            return n1, n2
        state = (n1, n2)
    raise SolveError("series inversion did not converge")


def apply_map(surface: SurfaceJet, pmap: PointMap) -> SurfaceJet:
    """Transform y = F(a, b, x) by the map; returns the new jet F* with
    Y = F*(A, B, X) on the image.  The defining identity is re-checked by
    full substitution before returning."""
    g, L = surface.grading, surface.order
    F = surface.F.with_grading(UNIT, L)
    m = pmap.to_unit(L)

    ua, ub = invert_pair(m.Ac, m.Bc, ("a", "b"))
    ux, uy = invert_pair(m.Xc, m.Yc, ("x", "y"))

    d = uy.coeff(mono_exps(y=1))
    uy_rest = uy - Poly.var("y", UNIT, L) * d
    inv_d = Fraction(1) / d
    a_new = ua
    b_new = ub

    def rhs(u: Poly) -> Poly:
        x_old = ux.substitute({"y": u}, strict=False)
        f_val = F.substitute({"a": a_new, "b": b_new, "x": x_old}, strict=False)
        return (f_val - uy_rest.substitute({"y": u}, strict=False)) * inv_d

    u = implicit_solve(rhs, Poly.zero(UNIT, L), L)

    # verify: Yc(x, F) == u(Ac, Bc, Xc(x, F)) identically mod degree L+1
    on_surface = {"y": F}
    lhs = m.Yc.substitute(on_surface, strict=False)
    rhs_check = u.substitute({"a": m.Ac, "b": m.Bc,
                              "x": m.Xc.substitute(on_surface, strict=False)},
                             strict=False)
    if lhs != rhs_check:
        raise SolveError("apply_map: transformed equation failed verification")
    return SurfaceJet(u.with_grading(g, L))


def _pure_series(F: Poly, var: str) -> Poly:
    """The part of F supported on powers of a single variable (degree >= 1)."""
    terms = {}
    from .poly import VARS, VAR_INDEX
    i = VAR_INDEX[var]
    for exps, c in F.terms.items():
        if exps[i] >= 1 and all(e == 0 for j, e in enumerate(exps) if j != i):
            terms[exps] = c
    return Poly(terms, F.grading, F.order)


def preliminary_reduce(surface: SurfaceJet) -> tuple:
    """Reduce a regular (type 2) jet to the shape a + bx + (weight >= 3).

    Kills pure-x and pure-b series, scales a to coefficient 1 and bx to
    coefficient 1.  Raises MapError if F_a(0) = 0, and TypeError-like MapError
    if the jet is not of type 2 (no bx term after reduction; use the singular
    reduction instead).
    """
    g, L = surface.grading, surface.order
    F = surface.F.with_grading(UNIT, L)
    if F.coeff(mono_exps(a=1)) == 0:
        raise MapError("not a graph over a: F_a(0) = 0")
    total = PointMap.identity(UNIT, L)
    for _ in range(L + 2):
        px = _pure_series(F, "x")
        pb = _pure_series(F, "b")
        ga = F.coeff(mono_exps(a=1))
        if px.is_zero() and pb.is_zero() and ga == 1:
            break
        step = PointMap(
            Poly.var("x", UNIT, L),
            Poly.var("y", UNIT, L) - px,
            Poly.var("a", UNIT, L) * ga + pb,
            Poly.var("b", UNIT, L))
        F = apply_map(SurfaceJet(F), step).F
        total = step.compose(total)
    else:
        raise SolveError("preliminary reduction did not terminate")

    gamma = F.coeff(mono_exps(b=1, x=1))
    if gamma == 0:
        raise MapError("jet is not of type 2; use the singular reduction")
    if gamma != 1:
        step = PointMap(Poly.var("x", UNIT, L), Poly.var("y", UNIT, L),
                        Poly.var("a", UNIT, L),
                        Poly.var("b", UNIT, L) * gamma)
        F = apply_map(SurfaceJet(F), step).F
        total = step.compose(total)

    reduced = SurfaceJet(F.with_grading(g, L))
    low = reduced.f_regular().up_to_weight(2)
    if not low.is_zero():
        raise SolveError("preliminary reduction left weight-2 contamination")
    return reduced, PointMap(*(c.with_grading(g, L) for c in
                               (total.Xc, total.Yc, total.Ac, total.Bc)))
