"""Elliptic curve group law, division polynomials, x-multiplication maps,
quotient descents, and the fiber/ramification profiles that identify them."""

import random
from fractions import Fraction

import pytest

from schurscope.exactalg import QQ, FqField, reduce_mod_place
from schurscope.ellipt import (
    DescentError,
    EllCurve,
    OffCurve,
    division_polynomials,
    fiber_profiles,
    point_add,
    point_mul,
    point_neg,
    quotient_descent,
    random_point,
    verify_cm7,
    xmul_map,
)
from schurscope.funfam import a4s4_function


def small_curve(p=101, a=-18, b=1):
    return EllCurve(FqField(p), a % p, b % p)


def test_curve_validation():
    with pytest.raises(ValueError):
        EllCurve(QQ, Fraction(0), Fraction(0))
    with pytest.raises(ValueError):
        EllCurve(QQ, Fraction(-3), Fraction(2))  # disc = 0


def test_group_law_basics():
    E = small_curve()
    rng = random.Random(0)
    P = random_point(E, rng)
    assert E.on_curve(P)
    assert point_add(E, P, None) == P
    assert point_add(E, P, point_neg(P)) is None
    bad = (E.field.from_int(0), E.field.from_int(5))
    if not E.on_curve(bad):
        with pytest.raises(OffCurve):
            point_add(E, bad, None)


def test_group_law_associative_commutative():
    E = small_curve()
    rng = random.Random(1)
    for _ in range(20):
        P, Q, R = (random_point(E, rng) for _ in range(3))
        assert point_add(E, P, Q) == point_add(E, Q, P)
        assert point_add(E, point_add(E, P, Q), R) == \
            point_add(E, P, point_add(E, Q, R))


def test_point_mul_matches_repeated_addition():
    E = small_curve()
    rng = random.Random(2)
    P = random_point(E, rng)
    acc = None
    for m in range(12):
        assert point_mul(E, m, P) == acc
        acc = point_add(E, acc, P)
    assert point_mul(E, -3, P) == point_neg(point_mul(E, 3, P))


def test_division_polynomial_roots_are_torsion():
    # the x-part of psi_m vanishes exactly at x-coords of nontrivial m-torsion
    E = small_curve(101, -18, 1)
    K = E.field
    dp = division_polynomials(E, 7)
    for m in (2, 3, 5, 7):
        xs = {v for v in range(101) if not dp.x_part(m).eval(K.from_int(v))}
        tor = set()
        for v in range(101):
            r = E.rhs(K.from_int(v))
            from schurscope.exactalg import kronecker, sqrt_mod
            if not r:
                ys = [K.zero]
            elif kronecker(r.v, 101) == 1:
                ys = [K.from_int(sqrt_mod(r.v, 101))]
            else:
                continue
            for y in ys:
                if point_mul(E, m, (K.from_int(v), y)) is None:
                    tor.add(v)
        # every rational m-torsion x is a root (roots over F_p^2 may add more)
        assert tor <= xs


def test_xmul_degree_and_equality_with_closed_formula():
    EQ = EllCurve(QQ, Fraction(0), Fraction(2))
    assert xmul_map(EQ, 2) == a4s4_function(0, 2)
    EQ2 = EllCurve(QQ, Fraction(-1), Fraction(3))
    assert xmul_map(EQ2, 2) == a4s4_function(-1, 3)
    for m in (2, 3, 4, 5):
        assert xmul_map(EQ, m).degree == m * m


def test_xmul_pointwise():
    for p in (101, 103, 107):
        E = small_curve(p, -18, 1)
        rng = random.Random(p)
        for m in (2, 3, 5):
            F = xmul_map(E, m)
            for _ in range(15):
                P = random_point(E, rng)
                Q = point_mul(E, m, P)
                d = F.den.eval(P[0])
                if Q is None:
                    assert not d
                else:
                    assert d and F.num.eval(P[0]) / d == Q[0]


def _check_descent_pointwise(a, b, m, beta_order, psi, beta_apply, primes):
    """R(psi(P)) == psi(mP) on random points mod several primes."""
    EQ = EllCurve(QQ, Fraction(a), Fraction(b))
    R = quotient_descent(EQ, m, beta_order)
    assert R.degree == m * m
    for p in primes:
        Rp = reduce_mod_place(R, p)
        E = EllCurve(FqField(p), a % p, b % p)
        rng = random.Random(p + m)
        for _ in range(20):
            P = random_point(E, rng)
            Q = point_mul(E, m, P)
            v = psi(P)
            d = Rp.den.eval(v)
            if Q is None:
                assert not d
            else:
                assert d and Rp.num.eval(v) / d == psi(Q)


def test_descent_order_2():
    _check_descent_pointwise(-18, 1, 3, 2, lambda P: P[0], None,
                             (101, 103, 107))


def test_descent_order_3():
    # quotient by (x, y) -> (w x, y): psi = y, curve y^2 = x^3 + B
    _check_descent_pointwise(0, 2, 2, 3, lambda P: P[1], None,
                             (103, 109, 127))


def test_descent_order_4():
    # quotient by (x, y) -> (-x, iy): psi = x^2, curve y^2 = x^3 + Ax
    _check_descent_pointwise(3, 0, 3, 4, lambda P: P[0] * P[0], None,
                             (101, 103, 107))


def test_descent_order_6():
    # psi = y^2, curve y^2 = x^3 + B
    _check_descent_pointwise(0, 2, 5, 6, lambda P: P[1] * P[1], None,
                             (103, 109))


def test_descent_validation():
    EQ = EllCurve(QQ, Fraction(0), Fraction(2))
    with pytest.raises(ValueError):
        quotient_descent(EQ, 3, 3)  # gcd(m, order) != 1
    with pytest.raises(ValueError):
        quotient_descent(EQ, 2, 5)
    with pytest.raises(ValueError):
        quotient_descent(EQ, 2, 4)  # needs b = 0
    EA = EllCurve(QQ, Fraction(3), Fraction(0))
    with pytest.raises(ValueError):
        quotient_descent(EA, 2, 3)  # needs a = 0


def test_verify_cm7():
    for p in (13, 31, 61):
        assert verify_cm7(p)
    assert verify_cm7(13, B=2)
    with pytest.raises(ValueError):
        verify_cm7(11)  # 11 != 1 mod 3


def test_fiber_profiles_xmul2():
    # x-multiplication by 2 has three (2,2)-branch values (the roots of the
    # 2-division cubic); index sum 3 * 2 = 2(4 - 1) as genus 0 demands.
    # mod 109 the cubic splits, so all three are visible.
    EQ = EllCurve(QQ, Fraction(-18), Fraction(1))
    F = reduce_mod_place(xmul_map(EQ, 2), 109)
    prof = fiber_profiles(F)
    assert sorted(prof.values()) == [[2, 2], [2, 2], [2, 2]]


def test_fiber_profiles_ramification_types():
    # m = 3, order 2: type (2,2,2,2) -> profiles [1, 2, 2, 2, 2]
    EQ = EllCurve(QQ, Fraction(-18), Fraction(1))
    F = reduce_mod_place(quotient_descent(EQ, 3, 2), 109)
    prof = fiber_profiles(F)
    assert len(prof) == 4
    assert all(m == [1, 2, 2, 2, 2] for m in prof.values())
    # m = 2, order 3: type (3,3,3) -> profiles [1, 3]
    EB = EllCurve(QQ, Fraction(0), Fraction(2))
    F = reduce_mod_place(quotient_descent(EB, 2, 3), 103)
    prof = fiber_profiles(F)
    assert len(prof) == 3
    assert all(m == [1, 3] for m in prof.values())


def test_fiber_profiles_orders_4_and_6():
    # m = 3, order 4: type (2,4,4)
    EA = EllCurve(QQ, Fraction(3), Fraction(0))
    F = reduce_mod_place(quotient_descent(EA, 3, 4), 101)
    profs = sorted(fiber_profiles(F).values())
    assert profs == [[1, 2, 2, 2, 2], [1, 4, 4], [1, 4, 4]]
    # m = 5, order 6: type (2,3,6)
    EB = EllCurve(QQ, Fraction(0), Fraction(2))
    F = reduce_mod_place(quotient_descent(EB, 5, 6), 103)
    profs = sorted(fiber_profiles(F).values())
    mults = sorted(tuple(p) for p in profs)
    # one fiber ramified with index 2 everywhere but one point, one with 3,
    # one with 6
    shapes = []
    for m in mults:
        es = {e for e in m if e > 1}
        assert len(es) == 1
        shapes.append(es.pop())
    assert sorted(shapes) == [2, 3, 6]


def test_division_polynomial_constant_shape():
    # for y^2 = x^3 + B, the constant term of psi_5 restricted to the order-3
    # quotient variable t (x^3 = t - B) is 3^6 B^4 / 5 after dividing by 5
    from schurscope.exactalg import Poly
    from schurscope.ellipt import _reduce_mod_cubic
    from schurscope.exactalg import poly_x, poly_const
    for B in (1, 2, 3):
        E = EllCurve(QQ, Fraction(0), Fraction(B))
        dp = division_polynomials(E, 5)
        t = poly_x(QQ)
        c = t - poly_const(QQ, Fraction(B))
        red = _reduce_mod_cubic(dp.x_part(5), c)
        assert red[1].is_zero() and red[2].is_zero()
        const = red[0].eval(Fraction(0)) / 5
        assert const == Fraction(3 ** 6 * B ** 4, 5)
