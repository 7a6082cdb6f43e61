import random
from fractions import Fraction

import pytest

from paracr import singnorm
from paracr.poly import Poly, UNIT, VAR_INDEX, singular_grading
from paracr.surfaces import MapError, SurfaceJet, apply_map
from conftest import random_singular_jet


def unit_jet(*terms, order=9):
    F = Poly.zero(UNIT, order)
    for c, exps in terms:
        F = F + Poly.monomial(c, UNIT, order, **exps)
    return SurfaceJet(F)


def test_finite_type_detection():
    assert singnorm.finite_type(
        unit_jet((1, dict(a=1)), (1, dict(b=1, x=1)))).k == 2
    t = singnorm.finite_type(unit_jet((1, dict(a=1)), (1, dict(b=2, x=3))))
    assert (t.k, t.m, t.n) == (5, 2, 3)
    # pure-b and pure-x terms have a zero index and are ignored
    t = singnorm.finite_type(unit_jet(
        (1, dict(a=1)), (1, dict(b=3)), (1, dict(x=4)), (1, dict(b=1, x=2))))
    assert (t.k, t.m, t.n) == (3, 1, 2)


def test_finite_type_undetermined():
    assert singnorm.finite_type(unit_jet((1, dict(a=1)), (1, dict(b=5)))) is None


def test_finite_type_needs_graph():
    with pytest.raises(MapError):
        singnorm.finite_type(unit_jet((1, dict(b=1, x=1))))


def test_prelim_reduce_absorbs_pure_terms():
    S = unit_jet((2, dict(a=1)), (1, dict(b=2)), (1, dict(b=2, x=2)))
    red, pm, t = singnorm.prelim_reduce_singular(S)
    assert (t.k, t.m, t.n) == (4, 2, 2)
    g = red.grading
    assert red.F == (Poly.var("a", g, 9)
                     + Poly.monomial(1, g, 9, b=2, x=2))

    S = unit_jet((1, dict(a=1)), (1, dict(b=2, x=1)), (3, dict(b=3)),
                 (1, dict(x=3)))
    red, pm, t = singnorm.prelim_reduce_singular(S)
    assert (t.k, t.m, t.n) == (3, 2, 1)
    g = red.grading
    assert red.F == (Poly.var("a", g, 9)
                     + Poly.monomial(1, g, 9, b=2, x=1))


def test_prelim_reduce_leading_scale_m1():
    # m = 1: the b-scaling normalizes the leading coefficient, and the other
    # bottom-row coefficients rescale accordingly
    S = unit_jet((1, dict(a=1)), (2, dict(b=1, x=2)), (1, dict(b=2, x=1)))
    red, pm, t = singnorm.prelim_reduce_singular(S)
    assert (t.k, t.m, t.n) == (3, 1, 2)
    assert t.gammas == (Fraction(1, 4),)
    assert red.F.coeff_mono(b=1, x=2) == 1
    assert red.F.coeff_mono(b=2, x=1) == Fraction(1, 4)


def test_prelim_reduce_rejects_regular():
    with pytest.raises(MapError):
        singnorm.prelim_reduce_singular(
            unit_jet((1, dict(a=1)), (1, dict(b=1, x=1))))


def test_prelim_preserves_type():
    rng = random.Random(6)
    S = random_singular_jet(rng, k=4, m=2)
    uS = SurfaceJet(S.F.with_grading(UNIT, S.order))
    red, pm, t = singnorm.prelim_reduce_singular(uS)
    t2 = singnorm.finite_type(red)
    assert (t2.k, t2.m, t2.n) == (t.k, t.m, t.n)


def test_forbidden_families_k4():
    t = singnorm.TypeData(4, 2, 2)
    forb = {tuple(e) for e in singnorm.forbidden_monomials(7, t)}
    ib, ix, ia = VAR_INDEX["b"], VAR_INDEX["x"], VAR_INDEX["a"]
    # pure powers of x and b at weight 7
    assert any(e[ix] == 7 and e[ib] == 0 and e[ia] == 0 for e in forb)
    # a b^2 x belongs to the x-degree-n band (b-degree >= m - 1)
    assert (1, 2, 1, 0, 0) in forb
    # the doubled monomial b^4 x^4 sits at weight 8, not 7
    assert (0, 4, 4, 0, 0) not in forb
    forb8 = {tuple(e) for e in singnorm.forbidden_monomials(8, t)}
    assert (0, 4, 4, 0, 0) in forb8


def test_forbidden_edge_families():
    # m = 1 adds a^i b x^(2n); n = 1 adds a^i b^(2m) x
    t = singnorm.TypeData(3, 1, 2)
    forb = {tuple(e) for e in singnorm.forbidden_monomials(8, t)}
    assert (1, 1, 4, 0, 0) in forb  # a b x^4, weight 3 + 1 + 4
    t = singnorm.TypeData(3, 2, 1)
    forb = {tuple(e) for e in singnorm.forbidden_monomials(8, t)}
    assert (1, 4, 1, 0, 0) in forb  # a b^4 x, weight 3 + 4 + 1


def test_check_singular_normal():
    g = singular_grading(4)
    t = singnorm.TypeData(4, 2, 2)
    model = SurfaceJet(Poly.var("a", g, 10) + Poly.monomial(1, g, 10, b=2, x=2))
    assert singnorm.is_singular_normal(model, t)
    bad = SurfaceJet(model.F + Poly.monomial(1, g, 10, a=1, x=1))
    assert not singnorm.is_singular_normal(bad, t)
    doubled = SurfaceJet(model.F + Poly.monomial(1, g, 10, b=4, x=4))
    assert not singnorm.is_singular_normal(doubled, t)


def test_model_is_fixed_point():
    g = singular_grading(4)
    t = singnorm.TypeData(4, 2, 2)
    model = SurfaceJet(Poly.var("a", g, 10) + Poly.monomial(1, g, 10, b=2, x=2))
    rep = singnorm.normalize_singular_jet(model, t)
    assert rep.normalized.F == model.F
    assert rep.transform.is_identity()


def test_pure_x_power_eliminated():
    g = singular_grading(4)
    t = singnorm.TypeData(4, 2, 2)
    model = Poly.var("a", g, 10) + Poly.monomial(1, g, 10, b=2, x=2)
    S = SurfaceJet(model + Poly.monomial(1, g, 10, x=5))
    rep = singnorm.normalize_singular_jet(S, t)
    assert rep.normalized.F == model


def test_normalize_random_jets_sound():
    rng = random.Random(7)
    for k, m in ((3, 1), (3, 2), (4, 2), (5, 3)):
        S = random_singular_jet(rng, k=k, m=m)
        t = singnorm.TypeData(
            k=k, m=m, n=k - m,
            gammas=tuple(S.F.coeff_mono(b=j, x=k - j) for j in range(m + 1, k)))
        rep = singnorm.normalize_singular_jet(S, t)
        assert rep.ok
        assert apply_map(S, rep.transform).F == rep.normalized.F
