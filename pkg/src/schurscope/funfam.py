"""Classical families of low-genus rational functions (power-conjugate
constructions and explicit sporadic maps), with the number-theoretic
predicates that decide when they permute P^1 over a prime field."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from .exactalg import (
    QQ,
    Poly,
    QuadElem,
    QuadField,
    RatFunc,
    kronecker,
    poly_const,
    poly_x,
)


def dickson(n, a):
    """Degree-n Dickson polynomial D_n(a, X), defined by
    D_n(a, Z + a/Z) = Z^n + (a/Z)^n, via the three-term recurrence."""
    if n < 1:
        raise ValueError("need n >= 1")
    a = Fraction(a)
    if a == 0:
        raise ValueError("need a != 0")
    x = poly_x(QQ)
    prev = poly_const(QQ, Fraction(2))  # D_0
    cur = x                             # D_1
    for _ in range(n - 1):
        prev, cur = cur, x * cur - a * prev
    poly = cur if n > 1 else x
    return RatFunc(poly, poly_const(QQ, Fraction(1)))


def _is_rational_square(d):
    num, den = d.numerator, d.denominator
    if num < 0:
        return False
    rn, rd = _isqrt(num), _isqrt(den)
    return rn * rn == num and rd * rd == den


def _isqrt(n):
    import math
    return math.isqrt(n)


def redei(n, d):
    """Degree-n rational function conjugate to the power map Z -> Z^n by
    (X - a)/(X + a) with a^2 = d.  Only even powers of a survive, so the
    coefficients are rational:
        R_n = sum_{k even} C(n,k) d^(k/2) X^(n-k)
              / sum_{k odd} C(n,k) d^((k-1)/2) X^(n-k).
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("need odd n >= 1")
    d = Fraction(d)
    if d == 0 or _is_rational_square(d):
        raise ValueError("d must be a nonzero non-square rational")
    num = [Fraction(0)] * (n + 1)
    den = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        c = Fraction(comb(n, k))
        if k % 2 == 0:
            num[n - k] = c * d ** (k // 2)
        else:
            den[n - k] = c * d ** ((k - 1) // 2)
    return RatFunc(Poly(QQ, num), Poly(QQ, den))


def redei_bijectivity_predicate(n, d, p):
    """Predicted bijectivity of the degree-n map of redei() on P^1(F_p).

    The map is conjugate to Z -> Z^n on a cyclic group of order p - chi(d, p)
    (chi the quadratic character), so for prime n it permutes exactly when n
    does not divide that order.  For n = 3 this is the condition that p stays
    inert in Q(sqrt(-3 d)).  Implemented for n in {3, 5}.
    """
    if p < 3:
        raise ValueError("p must be an odd prime")
    d = Fraction(d)
    dn = d.numerator * d.denominator
    if dn % p == 0 or d.denominator % p == 0:
        raise ValueError(f"p = {p} is a bad prime for d = {d}")
    if n == 3:
        m = -3 * dn
        return kronecker(m, p) == -1
    if n == 5:
        return gcd(5, p - kronecker(dn, p)) == 1
    raise NotImplementedError("predicate implemented for n in {3, 5} only")


def a4s4_function(p, q):
    """The degree-4 function (X^4 - 2pX^2 - 8qX + p^2) / (4(X^3 + pX + q)).

    For each root l of the (separable) cubic, f - l is a square over the
    splitting field divided by the same denominator, which makes every
    finite branch point of cycle type (2,2).  It is also the x-coordinate
    duplication map of the curve y^2 = x^3 + px + q.
    """
    p, q = Fraction(p), Fraction(q)
    if -4 * p ** 3 - 27 * q ** 2 == 0:
        raise ValueError("the cubic X^3 + pX + q must be separable")
    x = poly_x(QQ)
    num = x ** 4 - 2 * p * x ** 2 - 8 * q * x + poly_const(QQ, p * p)
    den = 4 * (x ** 3 + p * x + poly_const(QQ, q))
    return RatFunc(num, den)


def a4s4_branch_identity(p, q):
    """Check f(X) - l == (X^2 - 2lX - 2l^2 - p)^2 / (4(X^3+pX+q)) symbolically
    for l a root of X^3 + pX + q, working in Q[l] modulo that cubic.
    Returns True when the identity holds."""
    p, q = Fraction(p), Fraction(q)
    cubic = [q, p, Fraction(0), Fraction(1)]  # l^3 + p l + q
    x = poly_x(QQ)
    raw_num = x ** 4 - 2 * p * x ** 2 - 8 * q * x + poly_const(QQ, p * p)
    raw_den = 4 * (x ** 3 + p * x + poly_const(QQ, q))
    # bivariate polynomials: list over X-degree of Poly(QQ) in l
    lam = Poly(QQ, [0, 1])
    one = Poly(QQ, [1])

    def reduce_l(poly):
        return poly % Poly(QQ, cubic)

    def biv_mul(a, b):
        out = [Poly(QQ, [0])] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = reduce_l(out[i + j] + ai * bj)
        return out

    def biv_sub(a, b):
        n = max(len(a), len(b))
        z = Poly(QQ, [0])
        a = list(a) + [z] * (n - len(a))
        b = list(b) + [z] * (n - len(b))
        return [reduce_l(x - y) for x, y in zip(a, b)]

    # s = X^2 - 2lX - (2l^2 + p)
    s = [-(2 * lam * lam + p * one), -2 * lam, one]
    lhs = [Poly(QQ, [c]) for c in raw_num.coeffs]
    den = [Poly(QQ, [c]) for c in raw_den.coeffs]
    lhs = biv_sub(lhs, biv_mul([lam], den))  # num - l*den
    rhs = biv_mul(s, s)
    return all(c.is_zero() for c in biv_sub(lhs, rhs))


def sporadic_degree5():
    """The degree-5 isogeny-derived function
    X(11X^4 + 40X^3 + 10X^2 - 40X - 5) / (5X^2 - 1)^2."""
    x = poly_x(QQ)
    num = x * (11 * x ** 4 + 40 * x ** 3 + 10 * x ** 2 - 40 * x
               - poly_const(QQ, Fraction(5)))
    den = (5 * x ** 2 - poly_const(QQ, Fraction(1))) ** 2
    return RatFunc(num, den)


def sporadic_degree5_isogeny_identity():
    """The defining identity q2(f(X)) = q1(X) * (f'(X)/5)^2 with
    q1 = 11X^3 - 5X^2 - 3X - 1 and q2 = X^3 - 5X^2 + 7X - 1;
    it exhibits f as an isogeny Y^2 = q1(X) -> Y^2 = q2(X) of degree 5."""
    f = sporadic_degree5()
    x = poly_x(QQ)
    q1 = 11 * x ** 3 - 5 * x ** 2 - 3 * x - poly_const(QQ, Fraction(1))
    q2 = x ** 3 - 5 * x ** 2 + 7 * x - poly_const(QQ, Fraction(1))
    q2f = RatFunc(q2, poly_const(QQ, Fraction(1))).compose(f)
    fp = f.derivative() / RatFunc(poly_const(QQ, Fraction(5)),
                                  poly_const(QQ, Fraction(1)))
    rhs = RatFunc(q1, poly_const(QQ, Fraction(1))) * fp * fp
    return q2f == rhs


def cm7_function(B):
    """The degree-7 endomorphism quotient on y-coordinates of y^2 = x^3 + B
    over Q(sqrt(-3)), w = (-1 + sqrt(-3))/2 a primitive cube root of unity:

        R(Y) = (1-18w)(Y^6 + (9+108w)B Y^4 + (459+216w)B^2 Y^2
               - (405+324w)B^3) Y / (7Y^2 - (3-12w)B)^3
    """
    K = QuadField(-3)

    def w_lin(a, b):
        # a + b*w = (a - b/2) + (b/2) sqrt(-3)
        return QuadElem(Fraction(a) - Fraction(b, 2), Fraction(b, 2), -3)

    B = K.coerce(B)
    if not B:
        raise ValueError("need B != 0")
    y = poly_x(K)
    one = poly_const(K, K.one)
    num = (y ** 6 + poly_const(K, w_lin(9, 108) * B) * y ** 4
           + poly_const(K, w_lin(459, 216) * B * B) * y ** 2
           - poly_const(K, w_lin(405, 324) * B * B * B)) * y
    num = num.scale(w_lin(1, -18))
    den = (7 * y ** 2 - poly_const(K, w_lin(3, -12) * B) * one) ** 3
    return RatFunc(num, den)
