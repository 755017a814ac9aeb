"""Short-Weierstrass elliptic curves over exact fields and prime fields:
group law, division polynomials, the rational map induced on x by
multiplication, and the quotient descents that turn curve endomorphisms into
rational functions on the projective line."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactalg import (
    QQ,
    FqField,
    Poly,
    QuadElem,
    RatFunc,
    kronecker,
    poly_const,
    poly_x,
    sqrt_mod,
)

DIVPOLY_CAP = 30


class OffCurve(ValueError):
    pass


class EllCurve:
    """y^2 = x^3 + a x + b over a field from exactalg (or QQ)."""

    def __init__(self, field, a, b):
        self.field = field
        self.a = field.coerce(a)
        self.b = field.coerce(b)
        disc = -(field.coerce(16)) * (4 * self.a * self.a * self.a
                                      + 27 * self.b * self.b)
        if not disc:
            raise ValueError("singular curve: discriminant is zero")
        self.disc = disc

    def rhs(self, x):
        return x * x * x + self.a * x + self.b

    def on_curve(self, P):
        if P is None:
            return True
        x, y = P
        return y * y == self.rhs(x)

    def __repr__(self):
        return f"EllCurve(a={self.a!r}, b={self.b!r})"


def point_neg(P):
    if P is None:
        return None
    return (P[0], -P[1])


def point_add(E, P, Q):
    """Chord-tangent addition with None as the point at infinity."""
    if not (E.on_curve(P) and E.on_curve(Q)):
        raise OffCurve("point not on the curve")
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (3 * x1 * x1 + E.a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def point_mul(E, m, P):
    """m*P by double-and-add; negative m allowed."""
    if m < 0:
        return point_mul(E, -m, point_neg(P))
    R = None
    Q = P
    while m:
        if m & 1:
            R = point_add(E, R, Q)
        Q = point_add(E, Q, Q)
        m >>= 1
    return R


# ---------------------------------------------------------------------------
# division polynomials

class DivPolySet:
    """psi_1..psi_m with the y-factor tracked by parity: psi_k = a_k(x) for
    odd k and psi_k = y * a_k(x) for even k.  a[k] is the x-part."""

    def __init__(self, E, m):
        self.E = E
        self.m = m
        self.a = _xparts(E, m)

    def x_part(self, k):
        return self.a[k]

    def has_y_factor(self, k):
        return k % 2 == 0


def _xparts(E, m):
    """x-parts a_0..a_m of the division polynomials, by the standard
    recursion with y^2 eliminated via f = x^3 + ax + b."""
    if m > DIVPOLY_CAP:
        raise ValueError(f"m = {m} exceeds cap {DIVPOLY_CAP}")
    K = E.field
    x = poly_x(K)
    a_, b_ = E.a, E.b
    f = x * x * x + a_ * x + poly_const(K, b_)
    one = poly_const(K, K.one)
    zero = poly_const(K, K.zero)
    a = [zero, one, poly_const(K, K.coerce(2)),
         3 * x ** 4 + 6 * a_ * x ** 2 + 12 * b_ * x - poly_const(K, a_ * a_),
         4 * (x ** 6 + 5 * a_ * x ** 4 + 20 * b_ * x ** 3
              - 5 * (a_ * a_) * x ** 2 - 4 * (a_ * b_) * x
              - poly_const(K, 8 * b_ * b_ + a_ * a_ * a_))]
    f2 = f * f
    two = poly_const(K, K.coerce(2))
    for k in range(5, m + 1):
        j = k // 2
        if k % 2 == 1:
            # psi_{2j+1} = psi_{j+2} psi_j^3 - psi_{j-1} psi_{j+1}^3
            if j % 2 == 0:
                nxt = f2 * a[j + 2] * a[j] ** 3 - a[j - 1] * a[j + 1] ** 3
            else:
                nxt = a[j + 2] * a[j] ** 3 - f2 * a[j - 1] * a[j + 1] ** 3
        else:
            # psi_{2j} = psi_j (psi_{j+2} psi_{j-1}^2 - psi_{j-2} psi_{j+1}^2) / psi_2
            nxt, rem = (a[j] * (a[j + 2] * a[j - 1] ** 2
                                - a[j - 2] * a[j + 1] ** 2)).divmod(two)
            if not rem.is_zero():
                raise AssertionError("even division polynomial not divisible by 2")
        a.append(nxt)
    return a


def division_polynomials(E, m):
    return DivPolySet(E, m)


def xmul_map(E, m):
    """The degree-m^2 rational function F with F(x(P)) = x(mP):
    x(mP) = x - psi_{m-1} psi_{m+1} / psi_m^2."""
    if m < 2:
        raise ValueError("need m >= 2")
    K = E.field
    a = _xparts(E, m + 1)
    x = poly_x(K)
    f = x * x * x + E.a * x + poly_const(K, E.b)
    if m % 2 == 1:
        num = x * a[m] ** 2 - f * a[m - 1] * a[m + 1]
        den = a[m] ** 2
    else:
        num = x * f * a[m] ** 2 - a[m - 1] * a[m + 1]
        den = f * a[m] ** 2
    F = RatFunc(num, den)
    if F.degree != m * m:
        raise AssertionError(f"x-multiplication map has degree {F.degree}, "
                             f"expected {m * m}")
    return F


def _ymul_parts(E, m):
    """y(mP) = y * num(x) / den(x): returns (num, den) as polynomials in x,
    from y(mP) = psi_2m / (2 psi_m^4)."""
    K = E.field
    a = _xparts(E, 2 * m)
    x = poly_x(K)
    f = x * x * x + E.a * x + poly_const(K, E.b)
    num = a[2 * m]
    if m % 2 == 1:
        den = 2 * a[m] ** 4
    else:
        den = 2 * f * f * a[m] ** 4
    return num, den


# ---------------------------------------------------------------------------
# quotient descents

class DescentError(ArithmeticError):
    """Residual terms survive where the quotient symmetry says they must
    vanish; signals an implementation or hypothesis error."""


def _reduce_mod_cubic(poly, c_poly):
    """Rewrite a polynomial in x as d0(t) + d1(t) x + d2(t) x^2 modulo
    x^3 = c(t), coefficients in QQ[t].  Input coefficients are rationals;
    returns three Polys in t."""
    zero = Poly(QQ, [0])
    out = [zero, zero, zero]
    powers = {0: Poly(QQ, [1])}  # (t - B)^q cache

    def cpow(q):
        if q not in powers:
            powers[q] = cpow(q - 1) * c_poly
        return powers[q]

    for e, coeff in enumerate(poly.coeffs):
        if not coeff:
            continue
        q, r = divmod(e, 3)
        out[r] = out[r] + coeff * cpow(q)
    return out


def _cubic_norm_and_adjugate(d, c_poly):
    """For D = d0 + d1 x + d2 x^2 in QQ[t][x]/(x^3 - c), return (norm, adj)
    with D * adj = norm, norm in QQ[t]."""
    d0, d1, d2 = d
    c = c_poly
    norm = (d0 ** 3 + d1 ** 3 * c + d2 ** 3 * c * c
            - 3 * d0 * d1 * d2 * c)
    adj = [d0 * d0 - c * d1 * d2,
           c * d2 * d2 - d0 * d1,
           d1 * d1 - d0 * d2]
    return norm, adj


def _cubic_mul(u, v, c_poly):
    """Product in QQ[t][x]/(x^3 - c)."""
    zero = Poly(QQ, [0])
    raw = [zero] * 5
    for i, ui in enumerate(u):
        for j, vj in enumerate(v):
            raw[i + j] = raw[i + j] + ui * vj
    out = list(raw[:3])
    out[0] = out[0] + raw[3] * c_poly
    out[1] = out[1] + raw[4] * c_poly
    return out


def _descend_to_y(E, m):
    """For y^2 = x^3 + B, express y(mP) as a function of y alone:
    y(mP) = y * W(y^2) / N(y^2).  Returns (W, N) as Polys in t = y^2."""
    if E.a:
        raise ValueError("curve must have the shape y^2 = x^3 + B")
    B = E.b
    num_x, den_x = _ymul_parts(E, m)
    t = poly_x(QQ)
    c_poly = t - poly_const(QQ, Fraction(B))  # x^3 = t - B
    num_red = _reduce_mod_cubic(num_x, c_poly)
    den_red = _reduce_mod_cubic(den_x, c_poly)
    norm, adj = _cubic_norm_and_adjugate(den_red, c_poly)
    w = _cubic_mul(num_red, adj, c_poly)
    if not (w[1].is_zero() and w[2].is_zero()):
        raise DescentError("x-dependence survives the order-3 descent")
    return w[0], norm


def quotient_descent(E, m, beta_order):
    """The rational function R with R(psi(P)) = psi(m P) on the quotient of E
    by an automorphism of order beta_order, where psi is x (order 2),
    y (order 3, curve y^2=x^3+B), x^2 (order 4, curve y^2=x^3+Ax), or
    y^2 (order 6, curve y^2=x^3+B).  deg R = m^2."""
    if beta_order not in (2, 3, 4, 6):
        raise ValueError("beta_order must be one of 2, 3, 4, 6")
    from math import gcd
    if gcd(m, beta_order) != 1:
        raise ValueError(f"m = {m} must be coprime to the automorphism "
                         f"order {beta_order}")

    if beta_order == 2:
        return xmul_map(E, m)

    if beta_order == 3:
        w, norm = _descend_to_y(E, m)
        y = poly_x(QQ)
        R = RatFunc(y * w.compose(y * y), norm.compose(y * y))
        if R.degree != m * m:
            raise DescentError(f"order-3 descent degree {R.degree} != {m * m}")
        return R

    if beta_order == 6:
        w, norm = _descend_to_y(E, m)
        t = poly_x(QQ)
        R = RatFunc(t * w * w, norm * norm)
        if R.degree != m * m:
            raise DescentError(f"order-6 descent degree {R.degree} != {m * m}")
        return R

    # beta_order == 4: psi = x^2 on y^2 = x^3 + Ax
    if E.b:
        raise ValueError("curve must have the shape y^2 = x^3 + Ax")
    F = xmul_map(E, m)
    neg_x = -poly_x(E.field)
    flipped = RatFunc(F.num.compose(neg_x), F.den.compose(neg_x))
    if flipped != -F:
        raise DescentError("x-multiplication map is not odd on y^2 = x^3 + Ax")
    F2 = F * F
    num_u = _even_part_as_u(F2.num)
    den_u = _even_part_as_u(F2.den)
    R = RatFunc(num_u, den_u)
    if R.degree != m * m:
        raise DescentError(f"order-4 descent degree {R.degree} != {m * m}")
    return R


def _even_part_as_u(poly):
    """Rewrite an even polynomial p(x) as q(u) with u = x^2; error if an
    odd-degree coefficient survives."""
    coeffs = poly.coeffs
    if any(c for i, c in enumerate(coeffs) if i % 2 == 1):
        raise DescentError("odd-degree terms survive an even-function rewrite")
    return Poly(poly.field, list(coeffs[0::2]))


# ---------------------------------------------------------------------------
# numeric verification helpers over F_p

def random_point(E, rng):
    """A uniformly-ish random affine point on E over F_p (by rejection)."""
    K = E.field
    p = K.p
    while True:
        xv = rng.randrange(p)
        x = K.from_int(xv)
        r = E.rhs(x)
        if not r:
            return (x, K.zero)
        if kronecker(r.v, p) == 1:
            y = K.from_int(sqrt_mod(r.v, p))
            return (x, y)


def _cm7_ratfunc_mod_p(field, omega, B):
    """The degree-7 quotient map of cm7_function, instantiated over F_p with
    a concrete cube root of unity omega."""
    def w(a, b):
        return field.from_int(a) + field.from_int(b) * omega

    y = poly_x(field)
    num = (y ** 6 + poly_const(field, w(9, 108) * B) * y ** 4
           + poly_const(field, w(459, 216) * B * B) * y ** 2
           - poly_const(field, w(405, 324) * B * B * B)) * y
    num = num.scale(w(1, -18))
    den = (7 * y ** 2 - poly_const(field, w(3, -12) * B)) ** 3
    return RatFunc(num, den)


def verify_cm7(p, B=1, trials=50, seed=0):
    """Check y(([3] + beta) P) = R(y(P)) on random points of y^2 = x^3 + B
    over F_p, with beta(x, y) = (omega x, y).  Both cube roots of unity are
    tried; returns True when one works for every sampled point."""
    if p % 3 != 1:
        raise ValueError("need p = 1 (mod 3) so that F_p has cube roots of 1")
    if p % 7 == 0 or p == 3:
        raise ValueError("bad prime")
    K = FqField(p)
    Bf = K.from_int(B % p)
    if not Bf:
        raise ValueError("need B nonzero mod p")
    E = EllCurve(K, 0, Bf.v)
    s = sqrt_mod((-3) % p, p)  # sqrt(-3); exists since p = 1 (mod 3)
    inv2 = pow(2, -1, p)
    omegas = [K.from_int((p - 1 + s) * inv2 % p),
              K.from_int((p - 1 - s) * inv2 % p)]
    rng = random.Random(seed)
    pts = [random_point(E, rng) for _ in range(trials)]
    for omega in omegas:
        R = _cm7_ratfunc_mod_p(K, omega, Bf)
        ok = True
        for P in pts:
            Q = point_add(E, point_mul(E, 3, P), (omega * P[0], P[1]))
            d = R.den.eval(P[1])
            if Q is None or not d:
                # infinite value on either side; require both infinite
                if not (Q is None and not d):
                    ok = False
                    break
                continue
            if R.num.eval(P[1]) / d != Q[1]:
                ok = False
                break
        if ok:
            return True
    return False


def fiber_profiles(f):
    """Branch data of a rational function over F_p: for every value v in
    P^1(F_p) whose fiber is not squarefree, the multiset of point
    multiplicities (counting points over the algebraic closure).
    Returns {value: sorted multiplicities}, with 'inf' for v = infinity."""
    K = f.field
    p = K.p
    if K.ext != 1:
        raise ValueError("prime fields only")
    deg = f.degree
    out = {}
    values = [K.from_int(v) for v in range(p)] + [None]
    for v in values:
        if v is None:
            h = f.den
        else:
            h = f.num - poly_const(K, v) * f.den
        mults = _multiplicity_profile(h)
        drop = deg - h.degree
        if drop > 0:
            mults = sorted(mults + [drop])
        if any(e > 1 for e in mults):
            out["inf" if v is None else v.v] = mults
    return out


def _multiplicity_profile(h):
    """Multiplicities of the roots of h over the closure, via repeated
    gcd with the derivative: if u_0 = h and u_{k+1} = gcd(u_k, u_k'), then
    deg u_k - deg u_{k+1} counts the distinct roots of multiplicity > k.
    Valid while the characteristic exceeds every multiplicity."""
    if h.degree <= 0:
        return []
    u = [h.monic()]
    while u[-1].degree > 0:
        if len(u) > 64:
            raise AssertionError("runaway multiplicity computation")
        u.append(u[-1].gcd(u[-1].derivative()))
    ge = [u[k].degree - u[k + 1].degree for k in range(len(u) - 1)]
    out = []
    for e in range(1, len(ge) + 1):
        exactly = ge[e - 1] - (ge[e] if e < len(ge) else 0)
        out.extend([e] * exactly)
    return sorted(out)
