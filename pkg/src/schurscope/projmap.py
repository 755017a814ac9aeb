"""Evaluation of rational functions on P^1(F_q), bijectivity testing, and
prime sweeps measuring how often a function permutes the projective line."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (
    BadReduction,
    FqField,
    RamifiedPlace,
    RatFunc,
    primes_up_to,
    reduce_mod_place,
)


class Infinity:
    """The point at infinity on P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = Infinity()

DEFAULT_POINT_CAP = 1 << 20


class PointCapExceeded(ValueError):
    pass


def eval_proj(f, x):
    """Evaluate f at a point of P^1(F_q), x an FqElem/Fq2Elem or INF."""
    if x is INF:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return f.field.zero
        return f.num.coeffs[-1] / f.den.coeffs[-1]
    d = f.den.eval(x)
    if not d:
        return INF
    return f.num.eval(x) / d


def _int_coeffs(poly, p):
    return [c.v for c in poly.coeffs]


def _images_fp(f, p):
    """Images of all of P^1(F_p) as ints in 0..p, with p encoding INF."""
    num = _int_coeffs(f.num, p)
    den = _int_coeffs(f.den, p)
    out = []
    for x in range(p):
        n = 0
        for c in reversed(num):
            n = (n * x + c) % p
        d = 0
        for c in reversed(den):
            d = (d * x + c) % p
        out.append(p if d == 0 else n * pow(d, -1, p) % p)
    # infinity
    dn, dd = len(num) - 1, len(den) - 1
    if dn > dd:
        out.append(p)
    elif dn < dd:
        out.append(0)
    else:
        out.append(num[-1] * pow(den[-1], -1, p) % p)
    return out


def _images_fq2(f, field):
    p = field.p
    q = p * p

    def enc(e):
        return e.u * p + e.v

    out = []
    for x in field.elements():
        d = f.den.eval(x)
        if not d:
            out.append(q)
        else:
            out.append(enc(f.num.eval(x) / d))
    dn, dd = f.num.degree, f.den.degree
    if dn > dd:
        out.append(q)
    elif dn < dd:
        out.append(0)
    else:
        out.append(enc(f.num.coeffs[-1] / f.den.coeffs[-1]))
    return out


def is_bijective(f, cap=DEFAULT_POINT_CAP):
    """Whether f permutes P^1(F_q). Returns (verdict, witness).

    witness is a colliding pair of point encodings (as returned by the
    evaluation order: field elements in enumeration order, then INF) when the
    verdict is False, else None.
    """
    field = f.field
    if not isinstance(field, FqField):
        raise TypeError("is_bijective needs a function over a finite field")
    q = field.order
    if q + 1 > cap:
        raise PointCapExceeded(f"q + 1 = {q + 1} exceeds cap {cap}")
    if f.is_constant():
        return False, (_decode(field, 0), _decode(field, 1))
    images = _images_fp(f, field.p) if field.ext == 1 else _images_fq2(f, field)
    first = {}
    for i, img in enumerate(images):
        if img in first:
            return False, (_decode(field, first[img]), _decode(field, i))
        first[img] = i
    return True, None


def _decode(field, i):
    if i == field.order:
        return INF
    if field.ext == 1:
        return field.from_int(i)
    els = field.elements()
    return els[i]


@dataclass(frozen=True)
class SweepRecord:
    p: int
    place_degree: int  # 1 or 2; 0 for skipped primes
    verdict: str  # bijective | not-bijective | bad-reduction | ramified


@dataclass(frozen=True)
class SweepReport:
    records: tuple
    bijective: int
    not_bijective: int
    bad_reduction: int
    ramified: int

    @property
    def good_primes(self):
        return self.bijective + self.not_bijective

    @property
    def density(self):
        """Bijective density among good primes, as an exact fraction."""
        if self.good_primes == 0:
            return Fraction(0)
        return Fraction(self.bijective, self.good_primes)

    def to_dict(self, function_text=""):
        d = self.density
        return {
            "function": function_text,
            "records": [{"p": r.p, "place_degree": r.place_degree, "verdict": r.verdict}
                        for r in self.records],
            "density": f"{d.numerator}/{d.denominator}",
        }


def sweep_prime(f, p, cap=DEFAULT_POINT_CAP):
    """The sweep verdict for one odd prime."""
    try:
        fp = reduce_mod_place(f, p)
    except RamifiedPlace:
        return SweepRecord(p, 0, "ramified")
    except BadReduction:
        return SweepRecord(p, 0, "bad-reduction")
    ok, _ = is_bijective(fp, cap=cap)
    return SweepRecord(p, fp.field.ext, "bijective" if ok else "not-bijective")


def schur_sweep(f, prime_bound, cap=DEFAULT_POINT_CAP):
    """Classify every odd prime <= prime_bound: does f mod p permute P^1?

    p = 2 is always skipped; per-prime failures are verdicts, not errors.
    Deterministic: records in increasing prime order.
    """
    if prime_bound < 3:
        raise ValueError("prime_bound must be >= 3")
    records = []
    counts = {"bijective": 0, "not-bijective": 0, "bad-reduction": 0, "ramified": 0}
    for p in primes_up_to(prime_bound):
        if p == 2:
            continue
        rec = sweep_prime(f, p, cap=cap)
        records.append(rec)
        counts[rec.verdict] += 1
    return SweepReport(
        records=tuple(records),
        bijective=counts["bijective"],
        not_bijective=counts["not-bijective"],
        bad_reduction=counts["bad-reduction"],
        ramified=counts["ramified"],
    )
