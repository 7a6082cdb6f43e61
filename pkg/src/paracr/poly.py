"""Sparse polynomials over Q with a weighted grading and a truncation order.

Every value in the package is built from these polynomials.  The variable
universe is fixed to (a, b, x, y, p); a polynomial stores only the exponent
tuples it actually uses.  All coefficients are `fractions.Fraction`, so every
operation in the package is exact.

Truncation convention: a polynomial of order L keeps terms of weight <= L and
silently discards anything heavier.  Arithmetic is closed under this rule.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

try:  # gmpy2's mpq is a drop-in exact rational, much faster than Fraction
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover
    RAT = Fraction

_RAT_TYPES = (type(RAT(1)), int, Fraction)

VARS = ("a", "b", "x", "y", "p")
VAR_INDEX = {v: i for i, v in enumerate(VARS)}

ZERO_EXPS = (0, 0, 0, 0, 0)


class GradingError(ValueError):
    """Raised when two polynomials with incompatible gradings are combined."""


class SubstitutionError(ValueError):
    """Raised when a substitution would break the weight filtration."""


class Grading:
    """Positive integer weights for the variables, plus the type parameter k.

    The regular grading is a,y -> 2 and b,x,p -> 1; the singular grading of
    type k replaces 2 by k.  The unit grading (all weights 1) is used where
    truncation is by total degree.
    """

    __slots__ = ("weights", "type_k", "_wcache")

    def __init__(self, weights: Mapping[str, int], type_k: int | None = None):
        self.weights = tuple(int(weights.get(v, 1)) for v in VARS)
        if any(w <= 0 for w in self.weights):
            raise ValueError("variable weights must be positive")
        self.type_k = type_k
        self._wcache: dict = {}

    def weight_of(self, var: str) -> int:
        return self.weights[VAR_INDEX[var]]

    def weight(self, exps: tuple) -> int:
        w = self._wcache.get(exps)
        if w is None:
            w = sum(e * wt for e, wt in zip(exps, self.weights))
            self._wcache[exps] = w
        return w

    def __eq__(self, other):
        return isinstance(other, Grading) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        pairs = ", ".join(f"{v}:{w}" for v, w in zip(VARS, self.weights))
        return f"Grading({pairs})"


REGULAR = Grading({"a": 2, "y": 2, "b": 1, "x": 1, "p": 1}, type_k=2)
UNIT = Grading({v: 1 for v in VARS})


def singular_grading(k: int) -> Grading:
    if k < 2:
        raise ValueError("type parameter k must be >= 2")
    return Grading({"a": k, "y": k, "b": 1, "x": 1, "p": 1}, type_k=k)


def _as_fraction(c):
    if isinstance(c, Fraction):  # gmpy2.mpq does not accept Fraction directly
        return RAT(c.numerator, c.denominator)
    if isinstance(c, _RAT_TYPES) or isinstance(c, str):
        return RAT(c)
    raise TypeError(f"not an exact coefficient: {c!r}")


def mono_exps(**kw) -> tuple:
    """Exponent tuple for a monomial, e.g. mono_exps(b=2, x=2)."""
    exps = [0] * len(VARS)
    for v, e in kw.items():
        if v not in VAR_INDEX:
            raise ValueError(f"unknown variable {v!r}")
        if e < 0:
            raise ValueError("exponents must be non-negative")
        exps[VAR_INDEX[v]] = int(e)
    return tuple(exps)


def format_monomial(exps: tuple) -> str:
    parts = []
    for v, e in zip(VARS, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return " ".join(parts) if parts else "1"


class Poly:
    """Immutable sparse polynomial with grading and truncation order."""

    __slots__ = ("terms", "grading", "order")

    def __init__(self, terms: Mapping[tuple, Fraction], grading: Grading, order: int):
        clean = {}
        for exps, c in terms.items():
            c = _as_fraction(c)
            if c == 0:
                continue
            if grading.weight(exps) > order:
                continue
            clean[exps] = c
        self.terms = clean
        self.grading = grading
        self.order = order

    # ---- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, grading: Grading, order: int) -> "Poly":
        """Internal fast path: terms already coerced and within the order."""
        obj = object.__new__(cls)
        obj.terms = {e: c for e, c in terms.items() if c}
        obj.grading = grading
        obj.order = order
        return obj

    @classmethod
    def zero(cls, grading: Grading, order: int) -> "Poly":
        return cls({}, grading, order)

    @classmethod
    def const(cls, c, grading: Grading, order: int) -> "Poly":
        return cls({ZERO_EXPS: _as_fraction(c)}, grading, order)

    @classmethod
    def var(cls, name: str, grading: Grading, order: int) -> "Poly":
        return cls({mono_exps(**{name: 1}): RAT(1)}, grading, order)

    @classmethod
    def monomial(cls, c, grading: Grading, order: int, **exps) -> "Poly":
        return cls({mono_exps(**exps): _as_fraction(c)}, grading, order)

    # ---- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: tuple) -> Fraction:
        return self.terms.get(exps, RAT(0))

    def coeff_mono(self, **exps) -> Fraction:
        return self.coeff(mono_exps(**exps))

    def constant_term(self) -> Fraction:
        return self.coeff(ZERO_EXPS)

    def variables(self) -> set:
        used = set()
        for exps in self.terms:
            for v, e in zip(VARS, exps):
                if e:
                    used.add(v)
        return used

    def min_weight(self) -> int | None:
        """Weighted order of the polynomial; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(self.grading.weight(e) for e in self.terms)

    def max_weight(self) -> int | None:
        if not self.terms:
            return None
        return max(self.grading.weight(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = VAR_INDEX[var]
        return max((e[i] for e in self.terms), default=0)

    # ---- structural adjustments --------------------------------------

    def with_order(self, order: int) -> "Poly":
        """Re-truncate.  Raising the order is only sound when the polynomial
        is known exactly (a jet given as data, or an exact derivative)."""
        return Poly(self.terms, self.grading, order)

    def with_grading(self, grading: Grading, order: int | None = None) -> "Poly":
        return Poly(self.terms, grading, self.order if order is None else order)

    # ---- ring operations ----------------------------------------------

    def _check(self, other: "Poly"):
        if self.grading != other.grading:
            raise GradingError(f"grading mismatch: {self.grading} vs {other.grading}")

    def __add__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = Poly.const(other, self.grading, self.order)
        self._check(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        if order < self.order or order < other.order:
            weight = self.grading.weight
            terms = {e: c for e, c in terms.items() if weight(e) <= order}
        return Poly._raw(terms, self.grading, order)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()},
                         self.grading, self.order)

    def __sub__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = Poly.const(other, self.grading, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _RAT_TYPES):
            c = _as_fraction(other)
            return Poly._raw({e: c * v for e, v in self.terms.items()},
                             self.grading, self.order)
        self._check(other)
        order = min(self.order, other.order)
        g = self.grading
        weight = g.weight
        if not self.terms or not other.terms:
            return Poly._raw({}, g, order)
        items1 = sorted((weight(e), e, c) for e, c in self.terms.items())
        items2 = sorted((weight(e), e, c) for e, c in other.terms.items())
        terms: dict = {}
        w2_min = items2[0][0]
        for w1, e1, c1 in items1:
            if w1 + w2_min > order:
                break
            for w2, e2, c2 in items2:
                if w1 + w2 > order:
                    break
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2],
                     e1[3] + e2[3], e1[4] + e2[4])
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(terms, g, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(1, self.grading, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, _RAT_TYPES):
                return self.terms == Poly.const(other, self.grading, self.order).terms
            return NotImplemented
        return self.grading == other.grading and self.terms == other.terms

    def __hash__(self):
        return hash((self.grading, frozenset(self.terms.items())))

    # ---- calculus -----------------------------------------------------

    def partial(self, var: str, n: int = 1) -> "Poly":
        """Iterated formal derivative.  The truncation order drops by
        n * weight(var): weight-L input terms only pin the derivative down to
        weight L - n*w."""
        i = VAR_INDEX[var]
        w = self.grading.weights[i]
        terms = self.terms
        for _ in range(n):
            new = {}
            for exps, c in terms.items():
                e = exps[i]
                if e == 0:
                    continue
                ne = exps[:i] + (e - 1,) + exps[i + 1:]
                new[ne] = new.get(ne, 0) + c * e
            terms = new
        return Poly._raw(dict(terms), self.grading, self.order - n * w)

    def integrate(self, var: str) -> "Poly":
        i = VAR_INDEX[var]
        w = self.grading.weights[i]
        new = {}
        for exps, c in self.terms.items():
            e = exps[i]
            ne = exps[:i] + (e + 1,) + exps[i + 1:]
            new[ne] = c / (e + 1)
        return Poly(new, self.grading, self.order + w)

    # ---- grading structure --------------------------------------------

    def weighted_components(self) -> list:
        """Decomposition into homogeneous parts, increasing weight."""
        buckets: dict = {}
        for exps, c in self.terms.items():
            buckets.setdefault(self.grading.weight(exps), {})[exps] = c
        return [(w, Poly(buckets[w], self.grading, self.order)) for w in sorted(buckets)]

    def component(self, weight: int) -> "Poly":
        g = self.grading
        return Poly({e: c for e, c in self.terms.items() if g.weight(e) == weight},
                    g, self.order)

    def up_to_weight(self, weight: int) -> "Poly":
        g = self.grading
        return Poly({e: c for e, c in self.terms.items() if g.weight(e) <= weight},
                    g, self.order)

    def coeff_series(self, **fixed) -> "Poly":
        """Coefficient of a monomial in some of the variables, as a polynomial
        in the remaining ones.  coeff_series(b=2, x=2) on f returns the series
        g(a, ...) with f = ... + g * b^2 x^2 + (other b,x powers)."""
        idx = {VAR_INDEX[v]: e for v, e in fixed.items()}
        new = {}
        for exps, c in self.terms.items():
            if all(exps[i] == e for i, e in idx.items()):
                ne = tuple(0 if i in idx else e for i, e in enumerate(exps))
                new[ne] = c
        return Poly(new, self.grading, self.order)

    def set_zero(self, *vars_: str) -> "Poly":
        """Substitute 0 for the named variables."""
        idx = [VAR_INDEX[v] for v in vars_]
        new = {}
        for exps, c in self.terms.items():
            if all(exps[i] == 0 for i in idx):
                new[exps] = new.get(exps, RAT(0)) + c
        return Poly(new, self.grading, self.order)

    # ---- substitution -------------------------------------------------

    def substitute(self, subs: Mapping[str, "Poly"], strict: bool = True) -> "Poly":
        """Formal composition, truncated.

        Each substituted series must have weighted order >= the weight of the
        variable it replaces; otherwise truncation of the inputs is not sound
        and a SubstitutionError is raised (bypass only via strict=False, for
        callers that manage degrees themselves).
        """
        g = self.grading
        order = self.order
        for v, s in subs.items():
            if s.grading != g:
                raise GradingError("substituted series has a different grading")
            order = min(order, s.order)
            mw = s.min_weight()
            if strict and mw is not None and mw < g.weight_of(v):
                raise SubstitutionError(
                    f"substitution for {v} has weight {mw} < {g.weight_of(v)}")
        sub_idx = [(VAR_INDEX[v], subs[v].with_order(order)) for v in subs]
        sub_idx.sort()
        one = Poly.const(1, g, order)
        # product of the substituted series, cached by the exponent pattern
        # restricted to the substituted variables; shared prefixes hit the cache
        prod_cache: dict = {(0,) * len(sub_idx): one}

        def sub_product(key: tuple) -> Poly:
            p = prod_cache.get(key)
            if p is not None:
                return p
            pos = max(j for j, e in enumerate(key) if e)
            prev = key[:pos] + (key[pos] - 1,) + key[pos + 1:]
            p = sub_product(prev) * sub_idx[pos][1]
            prod_cache[key] = p
            return p

        sub_positions = [i for i, _ in sub_idx]
        weight = g.weight
        out: dict = {}
        for exps, c in self.terms.items():
            key = tuple(exps[i] for i in sub_positions)
            shift = tuple(0 if i in sub_positions else e
                          for i, e in enumerate(exps))
            for pe, pc in sub_product(key).terms.items():
                ne = (pe[0] + shift[0], pe[1] + shift[1], pe[2] + shift[2],
                      pe[3] + shift[3], pe[4] + shift[4])
                if weight(ne) > order:
                    continue
                out[ne] = out.get(ne, 0) + c * pc
        return Poly._raw(out, g, order)

    # ---- printing ------------------------------------------------------

    def sorted_terms(self) -> list:
        """Canonical term order: increasing weight; within a weight, higher
        powers of earlier variables (a before b before x) come first."""
        g = self.grading
        return sorted(self.terms.items(),
                      key=lambda kv: (g.weight(kv[0]),
                                      tuple(-e for e in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = format_monomial(exps)
            if mono == "1":
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c} {mono}"
            parts.append(body)
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"Poly({self}, order={self.order})"


def poly_sum(polys: Iterable[Poly], grading: Grading, order: int) -> Poly:
    total = Poly.zero(grading, order)
    for p in polys:
        total = total + p
    return total
