"""Projective-line evaluation, bijectivity, and prime sweeps."""

from fractions import Fraction

import pytest

from schurscope.exactalg import (
    QQ,
    FqField,
    RatFunc,
    poly_const,
    poly_x,
    primes_up_to,
    reduce_mod_place,
)
from schurscope.projmap import (
    INF,
    Infinity,
    PointCapExceeded,
    eval_proj,
    is_bijective,
    schur_sweep,
    sweep_prime,
)


def _over_fp(p, num_coeffs, den_coeffs):
    F = FqField(p)
    from schurscope.exactalg import Poly
    return RatFunc(Poly(F, [F.from_int(c) for c in num_coeffs]),
                   Poly(F, [F.from_int(c) for c in den_coeffs]))


def test_inf_is_a_singleton():
    assert Infinity() is INF


def test_eval_proj_mobius():
    # (x+1)/(x-1) over F_7
    f = _over_fp(7, [1, 1], [-1, 1])
    F = f.field
    assert eval_proj(f, F.from_int(1)) is INF
    assert eval_proj(f, INF) == F.one
    assert eval_proj(f, F.from_int(0)) == F.from_int(-1)


def test_eval_proj_at_inf_degree_cases():
    F = FqField(5)
    x = poly_x(F)
    one = poly_const(F, F.one)
    assert eval_proj(RatFunc(x * x, x + one), INF) is INF
    assert eval_proj(RatFunc(x, x * x + one), INF) == F.zero
    assert eval_proj(RatFunc(3 * x, 2 * x + one), INF) == F.from_int(3) / F.from_int(2)


def test_is_bijective_power_map_oracle():
    # x^3 permutes P^1(F_p) iff 3 does not divide p - 1
    for p in primes_up_to(50):
        if p == 2:
            continue
        f = _over_fp(p, [0, 0, 0, 1], [1])
        ok, witness = is_bijective(f)
        assert ok == ((p - 1) % 3 != 0)
        if not ok:
            a, b = witness
            assert eval_proj(f, a) == eval_proj(f, b) and a != b


def test_is_bijective_mobius_always():
    for p in (3, 5, 11):
        ok, _ = is_bijective(_over_fp(p, [1, 2], [1, 1]))  # det = 1, never degenerate
        assert ok


def test_is_bijective_over_fq2():
    # x^3 on P^1(F_25): 3 | 25 - 1 fails... 24 % 3 == 0, not bijective;
    # use x^7 with 7 coprime to 25^2 - 1? 624 = 16*39, 7 coprime -> bijective
    F = FqField(5, ext=2)
    from schurscope.exactalg import Poly
    x7 = [F.zero] * 7 + [F.one]
    f = RatFunc(Poly(F, x7), Poly(F, [F.one]))
    ok, _ = is_bijective(f)
    assert ok
    x3 = [F.zero] * 3 + [F.one]
    ok, witness = is_bijective(RatFunc(Poly(F, x3), Poly(F, [F.one])))
    assert not ok and witness is not None


def test_is_bijective_cap():
    f = _over_fp(1009, [0, 1], [1])
    with pytest.raises(PointCapExceeded):
        is_bijective(f, cap=100)


def test_sweep_prime_verdicts():
    x = poly_x(QQ)
    f = RatFunc(x ** 3, poly_const(QQ, Fraction(1)))
    assert sweep_prime(f, 7).verdict == "not-bijective"  # 3 | 6
    assert sweep_prime(f, 5).verdict == "bijective"
    g = RatFunc(x * x + poly_const(QQ, Fraction(2)), x + poly_const(QQ, Fraction(1)))
    assert sweep_prime(g, 3).verdict == "bad-reduction"


def test_schur_sweep_report():
    x = poly_x(QQ)
    f = RatFunc(x ** 3, poly_const(QQ, Fraction(1)))
    rep = schur_sweep(f, 100)
    odd_primes = [p for p in primes_up_to(100) if p > 2]
    assert len(rep.records) == len(odd_primes)
    assert [r.p for r in rep.records] == odd_primes
    assert rep.bijective == sum(1 for p in odd_primes if (p - 1) % 3)
    assert rep.bijective + rep.not_bijective + rep.bad_reduction + rep.ramified \
        == len(odd_primes)
    assert rep.density == Fraction(rep.bijective, rep.good_primes)


def test_schur_sweep_quadratic_constants():
    # x^2 is never bijective (squaring is 2:1 away from 0)
    x = poly_x(QQ)
    rep = schur_sweep(RatFunc(x * x, poly_const(QQ, Fraction(1))), 60)
    assert rep.bijective == 0 and rep.density == 0


def test_sweep_to_dict_shape():
    x = poly_x(QQ)
    rep = schur_sweep(RatFunc(x ** 3, poly_const(QQ, Fraction(1))), 20)
    d = rep.to_dict("x^3")
    assert d["function"] == "x^3"
    assert set(d) == {"function", "records", "density"}
    assert all(set(r) == {"p", "place_degree", "verdict"} for r in d["records"])
    num, den = d["density"].split("/")
    assert int(num) >= 0 and int(den) >= 1
