"""The linearized normalization operator on graded vector fields.

For a model surface y = a + Q(b, x) (Q = bx in the regular case), a vector
field V = eta d/dy + alpha d/da + beta d/db + xi d/dx acts on the defining
equation and the weight-ell effect is

    T(V) = eta - alpha - Q_b * beta - Q_x * xi,   with y -> a + Q(b, x)

substituted in eta and xi.  Its image at each weight decides which terms of a
jet can be eliminated; the retained monomials span a complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .poly import Poly, Grading, REGULAR, VARS, VAR_INDEX, mono_exps


@dataclass(frozen=True)
class VField:
    """eta d/dy + alpha d/da + beta d/db + xi d/dx with the product structure:
    eta, xi depend on (x, y) only; alpha, beta on (a, b) only."""

    eta: Poly
    alpha: Poly
    beta: Poly
    xi: Poly

    def __post_init__(self):
        if not self.eta.variables() <= {"x", "y"}:
            raise ValueError("eta must depend on (x, y) only")
        if not self.xi.variables() <= {"x", "y"}:
            raise ValueError("xi must depend on (x, y) only")
        if not self.alpha.variables() <= {"a", "b"}:
            raise ValueError("alpha must depend on (a, b) only")
        if not self.beta.variables() <= {"a", "b"}:
            raise ValueError("beta must depend on (a, b) only")

    @property
    def grading(self) -> Grading:
        return self.eta.grading

    def is_zero(self) -> bool:
        return (self.eta.is_zero() and self.alpha.is_zero()
                and self.beta.is_zero() and self.xi.is_zero())

    def scaled(self, c) -> "VField":
        return VField(self.eta * c, self.alpha * c, self.beta * c, self.xi * c)

    def __add__(self, other: "VField") -> "VField":
        return VField(self.eta + other.eta, self.alpha + other.alpha,
                      self.beta + other.beta, self.xi + other.xi)

    @classmethod
    def zero(cls, grading: Grading, order: int) -> "VField":
        z = Poly.zero(grading, order)
        return cls(z, z, z, z)


def model_poly(grading: Grading, order: int, m: int = 1, n: int = 1,
               gammas=()) -> Poly:
    """Q(b, x) = b^m x^n + sum_j gamma_j b^j x^(k-j) for j = m+1..k-1."""
    q = Poly.monomial(1, grading, order, b=m, x=n)
    k = m + n
    for j, g in zip(range(m + 1, k), gammas):
        q = q + Poly.monomial(g, grading, order, b=j, x=k - j)
    return q


def apply_t(v: VField, model: Poly | None = None) -> Poly:
    """T(V) for the model y = a + Q; result is a polynomial in (a, b, x)."""
    g = v.grading
    order = max(v.eta.order, v.alpha.order, v.beta.order, v.xi.order)
    if model is None:
        model = Poly.monomial(1, g, order, b=1, x=1)
    surface = Poly.var("a", g, order) + model.with_order(order)
    q_b = model.partial("b").with_order(order)
    q_x = model.partial("x").with_order(order)
    eta = v.eta.with_order(order).substitute({"y": surface})
    xi = v.xi.with_order(order).substitute({"y": surface})
    return eta - v.alpha.with_order(order) - q_b * v.beta.with_order(order) - q_x * xi


def weighted_monomials(weight: int, variables: tuple, grading: Grading) -> list:
    """All exponent tuples of the exact given weight using only `variables`,
    in canonical (lex on the exponent tuple) order."""
    idxs = [VAR_INDEX[v] for v in variables]
    out = []

    def rec(pos: int, remaining: int, exps: list):
        if pos == len(idxs):
            if remaining == 0:
                out.append(tuple(exps))
            return
        i = idxs[pos]
        w = grading.weights[i]
        for e in range(remaining // w + 1):
            exps[i] = e
            rec(pos + 1, remaining - e * w, exps)
        exps[i] = 0

    rec(0, weight, [0] * len(VARS))
    return sorted(out)


# Component tags, in the order used for the regular operator's matrix.
COMPONENTS = ("eta", "alpha", "beta", "xi")
_COMPONENT_VARS = {"eta": ("x", "y"), "xi": ("x", "y"),
                   "alpha": ("a", "b"), "beta": ("a", "b")}


def domain_basis(ell: int, grading: Grading,
                 component_order: tuple = COMPONENTS) -> list:
    """Elementary fields spanning the homogeneous domain at output weight ell:
    (component, exps) pairs.  eta, alpha carry weight ell; beta, xi carry
    weight ell - (k - 1), k being the a-weight."""
    k = grading.weight_of("a")
    weights = {"eta": ell, "alpha": ell, "beta": ell - (k - 1), "xi": ell - (k - 1)}
    basis = []
    for comp in component_order:
        w = weights[comp]
        if w < 0:
            continue
        for exps in weighted_monomials(w, _COMPONENT_VARS[comp], grading):
            basis.append((comp, exps))
    return basis


def basis_field(comp: str, exps: tuple, grading: Grading, order: int,
                coef=Fraction(1)) -> VField:
    z = Poly.zero(grading, order)
    parts = {"eta": z, "alpha": z, "beta": z, "xi": z}
    parts[comp] = Poly({exps: coef}, grading, order)
    return VField(parts["eta"], parts["alpha"], parts["beta"], parts["xi"])


def operator_matrix(ell: int, grading: Grading = REGULAR,
                    model: Poly | None = None,
                    component_order: tuple = COMPONENTS):
    """Matrix of T at output weight ell.  Returns (matrix, domain, codomain)
    with rows indexed by codomain monomials (a, b, x) of weight ell and
    columns by the elementary domain fields."""
    order = ell + 1
    domain = domain_basis(ell, grading, component_order)
    codomain = weighted_monomials(ell, ("a", "b", "x"), grading)
    row_index = {e: i for i, e in enumerate(codomain)}
    matrix = [[Fraction(0)] * len(domain) for _ in codomain]
    for col, (comp, exps) in enumerate(domain):
        image = apply_t(basis_field(comp, exps, grading, order), model)
        for e, c in image.terms.items():
            matrix[row_index[e]][col] = c
    return matrix, domain, codomain


def kernel_basis(ell: int, grading: Grading = REGULAR,
                 model: Poly | None = None) -> list:
    matrix, domain, _ = operator_matrix(ell, grading, model)
    fields = []
    for vec in linalg.nullspace(matrix):
        v = VField.zero(grading, ell + 1)
        for coef, (comp, exps) in zip(vec, domain):
            if coef != 0:
                v = v + basis_field(comp, exps, grading, ell + 1, coef)
        fields.append(v)
    return fields


_EXCLUDED_BIDEGREES = {(2, 2), (2, 3), (3, 2), (3, 3)}


def normal_complement_monomials(ell: int) -> list:
    """Weight-ell monomials a^i b^j x^l retained by the regular normal form:
    j >= 2, l >= 2 and (j, l) outside the four excluded low bidegrees."""
    out = []
    for exps in weighted_monomials(ell, ("a", "b", "x"), REGULAR):
        j, l = exps[VAR_INDEX["b"]], exps[VAR_INDEX["x"]]
        if j >= 2 and l >= 2 and (j, l) not in _EXCLUDED_BIDEGREES:
            out.append(exps)
    return out


@dataclass
class OperatorReport:
    ell: int
    domain_dim: int
    image_dim: int
    kernel_dim: int
    kernel: list = field(default_factory=list)
    complement: list = field(default_factory=list)


def analyze(ell: int, grading: Grading = REGULAR,
            model: Poly | None = None) -> OperatorReport:
    matrix, domain, _ = operator_matrix(ell, grading, model)
    r = linalg.rank(matrix)
    kernel = kernel_basis(ell, grading, model)
    complement = normal_complement_monomials(ell) if grading == REGULAR and ell >= 3 else []
    return OperatorReport(ell=ell, domain_dim=len(domain), image_dim=r,
                          kernel_dim=len(domain) - r, kernel=kernel,
                          complement=complement)


def decompose(p: Poly, complement: list | None = None,
              grading: Grading = REGULAR, model: Poly | None = None,
              component_order: tuple = COMPONENTS):
    """Split a homogeneous weight-ell polynomial as P = -T(v) + normal_part
    with normal_part supported on the complement monomials.  Free parameters
    of the underdetermined solve are zeroed deterministically."""
    comps = p.weighted_components()
    if len(comps) > 1:
        raise ValueError("decompose needs a homogeneous input")
    if not comps:
        return VField.zero(grading, p.order), p
    ell = comps[0][0]
    if complement is None:
        complement = normal_complement_monomials(ell)
    matrix, domain, codomain = operator_matrix(ell, grading, model, component_order)
    row_index = {e: i for i, e in enumerate(codomain)}
    columns = len(domain) + len(complement)
    full = [[Fraction(0)] * columns for _ in codomain]
    for r_i in range(len(codomain)):
        for c_i in range(len(domain)):
            full[r_i][c_i] = -matrix[r_i][c_i]
    for c_i, exps in enumerate(complement):
        full[row_index[exps]][len(domain) + c_i] = Fraction(1)
    rhs = [Fraction(0)] * len(codomain)
    for e, c in p.terms.items():
        rhs[row_index[e]] = c
    sol = linalg.solve(full, rhs)
    if sol is None:
        raise RuntimeError(
            f"decompose: infeasible system at weight {ell}; the direct-sum "
            "property should make this impossible")
    order = p.order
    v = VField.zero(grading, order)
    for coef, (comp, exps) in zip(sol, domain):
        if coef != 0:
            v = v + basis_field(comp, exps, grading, order, coef)
    normal = Poly({exps: coef for exps, coef in
                   zip(complement, sol[len(domain):]) if coef != 0},
                  grading, order)
    check = (-apply_t(v, model).with_order(order)) + normal
    if check != p:
        raise RuntimeError("decompose: round-trip identity failed")
    return v, normal
