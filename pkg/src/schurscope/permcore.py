"""Permutation-group engine: Schreier-Sims stabilizer chains, orbits on
points and pairs, conjugacy classes, centralizers and normalizers by
bounded enumeration, coset actions, and named group constructors
(PSL/PGL/PGammaL over small fields, M10, affine groups)."""

from __future__ import annotations

import re
from math import gcd

import numpy as np

DEGREE_CAP = 4096
ENUM_CAP = 200_000
PAIR_CAP = 4_000_000


class DegreeMismatch(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations

class Perm:
    """Permutation of {0..n-1}; right action, so (g*h)(i) = h(g(i))."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation")
        self.images = images

    @classmethod
    def _raw(cls, images):
        p = object.__new__(cls)
        p.images = images
        return p

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        a, b = self.images, other.images
        if len(a) != len(b):
            raise DegreeMismatch(f"{len(a)} vs {len(b)}")
        return Perm._raw(tuple(b[x] for x in a))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k):
        n = len(self.images)
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self, h):
        """h^-1 * self * h."""
        return h.inverse() * self * h

    @staticmethod
    def identity(n):
        return Perm._raw(tuple(range(n)))

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed=False):
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            c = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                c.append(x)
                seen[x] = True
                x = self.images[x]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self):
        """Multiset of cycle lengths (including fixed points), sorted."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def num_cycles(self):
        return len(self.cycles(include_fixed=True))

    def fixed_points(self):
        return [i for i, x in enumerate(self.images) if i == x]

    def order(self):
        out = 1
        for c in self.cycles():
            out = out * len(c) // gcd(out, len(c))
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return format_cycles(self)


def format_cycles(perm):
    cs = perm.cycles()
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cs)


def parse_cycles(s, degree):
    """Parse cycle notation like '(0 1 2)(3 4)'."""
    images = list(range(degree))
    for grp in re.findall(r"\(([^()]*)\)", s):
        pts = [int(t) for t in grp.replace(",", " ").split()]
        for i, pt in enumerate(pts):
            if pt >= degree:
                raise ValueError(f"point {pt} out of range for degree {degree}")
            images[pt] = pts[(i + 1) % len(pts)]
    return Perm(images)


# ---------------------------------------------------------------------------
# stabilizer chains (Schreier-Sims)

class _ChainLevel:
    __slots__ = ("base_point", "gens", "transversal")

    def __init__(self, base_point):
        self.base_point = base_point
        self.gens = []
        self.transversal = {}  # point -> perm mapping base_point to point


class PermGroup:
    """Group given by generators; order and membership via a stabilizer chain."""

    def __init__(self, degree, gens):
        if degree > DEGREE_CAP:
            raise CapExceeded(f"degree {degree} exceeds cap {DEGREE_CAP}")
        gens = [g if isinstance(g, Perm) else Perm(g) for g in gens]
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generator degree mismatch")
        self.degree = degree
        self.gens = [g for g in dict.fromkeys(gens) if not g.is_identity()]
        self._chain = None
        self._order = None
        self._elements = None

    # -- stabilizer chain ---------------------------------------------------

    def _build_chain(self):
        """Deterministic Schreier-Sims.

        Level i stores the strong generators first seen there; the generators
        effective at level i are those stored at levels >= i (all of which fix
        the base points of levels < i).  Transversals only ever grow, so a
        Schreier generator verified once stays verified; the build loops until
        every Schreier generator of every level sifts to the identity.
        """
        if self._chain is not None:
            return
        self._chain = []
        for g in self.gens:
            j, residue = self._strip(0, g)
            if not residue.is_identity():
                self._add_generator(j, residue)
        verified = set()  # (level, point, generator images)
        dirty = True
        while dirty:
            dirty = False
            for i in range(len(self._chain)):
                self._extend_orbit(i)
            for i in range(len(self._chain)):
                lvl = self._chain[i]
                eff = self._effective_gens(i)
                for pt in list(lvl.transversal):
                    t = lvl.transversal[pt]
                    for s in eff:
                        key = (i, pt, s.images)
                        if key in verified:
                            continue
                        schreier = t * s * lvl.transversal[s.images[pt]].inverse()
                        j, residue = self._strip(i + 1, schreier)
                        if residue.is_identity():
                            verified.add(key)
                        else:
                            self._add_generator(j, residue)
                            dirty = True
                    if dirty:
                        break
                if dirty:
                    break
        order = 1
        for lvl in self._chain:
            order *= len(lvl.transversal)
        self._order = order

    def _effective_gens(self, i):
        return [g for lvl in self._chain[i:] for g in lvl.gens]

    def _extend_orbit(self, i):
        """Grow the transversal of level i; existing entries are never replaced,
        so earlier sift verifications stay valid."""
        lvl = self._chain[i]
        eff = self._effective_gens(i)
        queue = list(lvl.transversal)
        while queue:
            pt = queue.pop()
            t = lvl.transversal[pt]
            for g in eff:
                img = g.images[pt]
                if img not in lvl.transversal:
                    lvl.transversal[img] = t * g
                    queue.append(img)

    def _strip(self, i, g):
        """Sift g through levels i.. ; returns (stuck level, residue)."""
        while i < len(self._chain):
            lvl = self._chain[i]
            img = g.images[lvl.base_point]
            t = lvl.transversal.get(img)
            if t is None:
                return i, g
            g = g * t.inverse()
            i += 1
        return i, g

    def _add_generator(self, i, g):
        """Store g (which fixes all base points below level i) at level i."""
        if i == len(self._chain):
            bp = next(k for k, x in enumerate(g.images) if x != k)
            lvl = _ChainLevel(bp)
            lvl.transversal = {bp: Perm.identity(self.degree)}
            self._chain.append(lvl)
        self._chain[i].gens.append(g)

    @property
    def order(self):
        self._build_chain()
        return self._order

    def contains(self, g):
        if g.degree != self.degree:
            raise DegreeMismatch("degree mismatch")
        self._build_chain()
        _, residue = self._strip(0, g)
        return residue.is_identity()

    def __contains__(self, g):
        return self.contains(g)

    # -- enumeration ---------------------------------------------------------

    def elements(self, cap=ENUM_CAP):
        """All elements by BFS closure; cached. Raises CapExceeded if too big."""
        if self._elements is not None:
            return self._elements
        ident = Perm.identity(self.degree)
        seen = {ident.images: ident}
        frontier = [ident]
        while frontier:
            new = []
            for h in frontier:
                for g in self.gens:
                    w = h * g
                    if w.images not in seen:
                        if len(seen) >= cap:
                            raise CapExceeded(f"group larger than cap {cap}")
                        seen[w.images] = w
                        new.append(w)
            frontier = new
        self._elements = list(seen.values())
        return self._elements

    # -- orbits ---------------------------------------------------------------

    def orbit(self, point):
        seen = {point}
        queue = [point]
        while queue:
            pt = queue.pop()
            for g in self.gens:
                img = g.images[pt]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return seen

    def orbits(self):
        left = set(range(self.degree))
        out = []
        while left:
            o = self.orbit(min(left))
            out.append(sorted(o))
            left -= o
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def stabilizer_gens(self, point):
        """Generators of the stabilizer of `point` (Schreier generators)."""
        ident = Perm.identity(self.degree)
        transversal = {point: ident}
        queue = [point]
        while queue:
            pt = queue.pop()
            for g in self.gens:
                img = g.images[pt]
                if img not in transversal:
                    transversal[img] = transversal[pt] * g
                    queue.append(img)
        out = []
        seen = set()
        for pt, t in transversal.items():
            for g in self.gens:
                s = t * g * transversal[g.images[pt]].inverse()
                if not s.is_identity() and s.images not in seen:
                    seen.add(s.images)
                    out.append(s)
        return out

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"


def group_order(G):
    return G.order


def is_member(G, g):
    return G.contains(g)


# ---------------------------------------------------------------------------
# orbits on pairs

class PairOrbits:
    """Orbit partition of {0..n-1}^2 under a generator list."""

    def __init__(self, n, labels):
        self.n = n
        self.labels = labels  # numpy array of size n*n; value = min pair index in orbit

    def label_of(self, i, j):
        return int(self.labels[i * self.n + j])

    def orbit_count(self):
        return len(np.unique(self.labels))

    def orbit_sizes(self):
        _, counts = np.unique(self.labels, return_counts=True)
        return sorted(int(c) for c in counts)

    def orbit_reps(self):
        """Smallest pair of each orbit, as (i, j) tuples, sorted."""
        return [divmod(int(v), self.n) for v in np.unique(self.labels)]

    def orbit_pairs(self, i, j):
        lab = self.labels[i * self.n + j]
        idx = np.nonzero(self.labels == lab)[0]
        return [divmod(int(k), self.n) for k in idx]

    def diagonal_labels(self):
        diag = np.arange(self.n) * (self.n + 1)
        return set(int(v) for v in self.labels[diag])


def orbits_on_pairs(gens, n, cap=PAIR_CAP):
    """BFS/min-label orbit partition of {0..n-1}^2 using the generators only."""
    if n * n > cap:
        raise CapExceeded(f"{n * n} pairs exceed cap {cap}")
    dtype = np.int32 if n * n < 2 ** 31 else np.int64
    maps = []
    for g in gens:
        arr = np.array(g.images, dtype=dtype)
        maps.append((arr[:, None] * np.asarray(n, dtype) + arr[None, :]).ravel())
        inv = np.array(g.inverse().images, dtype=dtype)
        maps.append((inv[:, None] * np.asarray(n, dtype) + inv[None, :]).ravel())
    labels = np.arange(n * n, dtype=dtype)
    changed = True
    while changed:
        changed = False
        for P in maps:
            new = np.minimum(labels, labels[P])
            if not np.array_equal(new, labels):
                labels = new
                changed = True
    # canonicalize: orbit label = min pair index actually in the orbit
    return PairOrbits(n, labels)


# ---------------------------------------------------------------------------
# classes, centralizers, normalizers

def conjugacy_class(G, g, cap=ENUM_CAP):
    """The conjugacy class g^G as a set of Perm (orbit under generator conjugation)."""
    seen = {g.images: g}
    queue = [g]
    inv = {s.images: s.inverse() for s in G.gens}
    while queue:
        h = queue.pop()
        for s in G.gens:
            w = inv[s.images] * h * s
            if w.images not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"class larger than cap {cap}")
                seen[w.images] = w
                queue.append(w)
    return list(seen.values())


def conjugacy_classes(G, cap=ENUM_CAP):
    """All conjugacy classes, each as a list of Perm. Needs full enumeration."""
    els = G.elements(cap)
    remaining = {e.images for e in els}
    out = []
    for e in els:
        if e.images not in remaining:
            continue
        cls = conjugacy_class(G, e, cap)
        for c in cls:
            remaining.discard(c.images)
        out.append(cls)
    return out


def centralizer(G, g, cap=ENUM_CAP):
    """C_G(g) by full enumeration."""
    els = [h for h in G.elements(cap) if h * g == g * h]
    return PermGroup(G.degree, els or [Perm.identity(G.degree)])


def normalizer_of_cyclic(G, g, cap=ENUM_CAP):
    """N_G(<g>) by full enumeration."""
    powers = set()
    h = g
    ident = Perm.identity(G.degree)
    while h.images not in powers and not h.is_identity():
        powers.add(h.images)
        h = h * g
    powers.add(ident.images)
    els = [h for h in G.elements(cap) if (h.inverse() * g * h).images in powers]
    return PermGroup(G.degree, els or [ident])


def sylow_subgroup(G, p, cap=ENUM_CAP):
    """A Sylow p-subgroup by greedy closure over the enumerated elements."""
    order = G.order
    target = 1
    while order % p == 0:
        target *= p
        order //= p
    if target == 1:
        return PermGroup(G.degree, [Perm.identity(G.degree)])
    els = G.elements(cap)
    sub_gens = []
    sub = PermGroup(G.degree, [Perm.identity(G.degree)])
    while sub.order < target:
        for h in els:
            o = h.order()
            if o == 1 or not _is_p_power(o, p):
                continue
            if h in sub:
                continue
            cand = PermGroup(G.degree, sub_gens + [h])
            co = cand.order
            if _is_p_power(co, p):
                sub_gens.append(h)
                sub = cand
                break
        else:
            raise RuntimeError("greedy Sylow search stalled")
    return sub


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# coset actions

class CosetAction:
    """Action of A on the right cosets of M, with coset labels canonicalized
    as the minimum image tuple over M * rep. Provides the induced permutation
    for any element of A."""

    def __init__(self, A, M, index_cap=DEGREE_CAP, m_cap=ENUM_CAP):
        for g in M.gens:
            if g not in A:
                raise NotASubgroup("M is not contained in A")
        if A.order % M.order != 0 or A.order // M.order > index_cap:
            raise CapExceeded(f"index {A.order // M.order} exceeds cap {index_cap}")
        self.A = A
        self.M = M
        m_els = M.elements(m_cap)
        self._m_els = m_els
        ident = Perm.identity(A.degree)
        reps = [ident]
        self._canon_to_idx = {self._canon(ident): 0}
        i = 0
        while i < len(reps):
            r = reps[i]
            for g in A.gens:
                w = r * g
                c = self._canon(w)
                if c not in self._canon_to_idx:
                    self._canon_to_idx[c] = len(reps)
                    reps.append(w)
            i += 1
        self.reps = reps
        self.index = len(reps)
        if self.index != A.order // M.order:
            raise NotASubgroup("coset count does not match the index")
        self.group = PermGroup(self.index, [self.image(g) for g in A.gens])

    def _canon(self, r):
        return min((m * r).images for m in self._m_els)

    def image(self, g):
        """The permutation induced by g in A on the cosets."""
        return Perm._raw(tuple(self._canon_to_idx[self._canon(r * g)] for r in self.reps))


def coset_action(A, M):
    return CosetAction(A, M)


# ---------------------------------------------------------------------------
# small finite fields for the named constructors

_GF_MODULI = {
    (2, 2): (1, 1, 1),          # x^2+x+1
    (2, 3): (1, 1, 0, 1),       # x^3+x+1
    (2, 4): (1, 1, 0, 0, 1),    # x^4+x+1
    (2, 5): (1, 0, 1, 0, 0, 1), # x^5+x^2+1
    (3, 2): (1, 0, 1),          # x^2+1
    (3, 3): (1, 2, 0, 1),       # x^3+2x+1
    (5, 2): (2, 1, 1),          # x^2+x+2
}


class SmallGF:
    """GF(p^k), elements as tuples of k coefficients (low degree first)."""

    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.q = p ** k
        if k == 1:
            self.modulus = None
        else:
            if (p, k) not in _GF_MODULI:
                raise ValueError(f"no modulus stored for GF({p}^{k})")
            self.modulus = _GF_MODULI[(p, k)]
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def elements(self):
        out = []
        for n in range(self.q):
            cs = []
            for _ in range(self.k):
                cs.append(n % self.p)
                n //= self.p
            out.append(tuple(cs))
        return out

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple((-a) % self.p for a in x)

    def mul(self, x, y):
        p, k = self.p, self.k
        if k == 1:
            return ((x[0] * y[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # reduce by modulus (monic of degree k)
        mod = self.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(k):
                    prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
        return tuple(prod[:k])

    def power(self, x, n):
        out = self.one
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError
        return self.power(x, self.q - 2)

    def frobenius(self, x):
        return self.power(x, self.p)

    def multiplicative_generator(self):
        for x in self.elements():
            if x == self.zero:
                continue
            ok = True
            for d in _proper_prime_divisors(self.q - 1):
                if self.power(x, (self.q - 1) // d) == self.one:
                    ok = False
                    break
            if ok:
                return x
        raise RuntimeError("no generator found")

    def is_square(self, x):
        if self.p == 2:
            return True
        return self.power(x, (self.q - 1) // 2) == self.one


def _proper_prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# named constructors: projective groups on P^1(F_q)

class ProjectiveLine:
    """P^1(F_q) with a fixed point order: field elements in enumeration
    order, then infinity (index q)."""

    def __init__(self, p, k):
        self.gf = SmallGF(p, k)
        self.points = self.gf.elements()
        self.index = {x: i for i, x in enumerate(self.points)}
        self.inf = self.gf.q

    @property
    def degree(self):
        return self.gf.q + 1

    def moebius_perm(self, a, b, c, d):
        """z -> (az+b)/(cz+d) as a permutation, for an invertible matrix."""
        gf = self.gf
        det = gf.add(gf.mul(a, d), gf.neg(gf.mul(b, c)))
        if det == gf.zero:
            raise ValueError("singular matrix")
        images = []
        for z in self.points:
            den = gf.add(gf.mul(c, z), d)
            if den == gf.zero:
                images.append(self.inf)
            else:
                num = gf.add(gf.mul(a, z), b)
                images.append(self.index[gf.mul(num, gf.inv(den))])
        # image of infinity: a/c
        if c == gf.zero:
            images.append(self.inf)
        else:
            images.append(self.index[gf.mul(a, gf.inv(c))])
        return Perm(images)

    def frobenius_perm(self):
        images = [self.index[self.gf.frobenius(z)] for z in self.points]
        images.append(self.inf)
        return Perm(images)


def _psl2_gens(line):
    gf = line.gf
    gens = []
    # translations by a basis of F_q over F_p
    basis = [tuple(1 if i == j else 0 for i in range(gf.k)) for j in range(gf.k)]
    for e in basis:
        gens.append(line.moebius_perm(gf.one, e, gf.zero, gf.one))
    # scaling by a square generator: z -> g^2 z (all scalings for even q)
    g = gf.multiplicative_generator()
    sq = gf.mul(g, g) if gf.p != 2 else g
    gens.append(line.moebius_perm(sq, gf.zero, gf.zero, gf.one))
    # inversion z -> -1/z
    gens.append(line.moebius_perm(gf.zero, gf.neg(gf.one), gf.one, gf.zero))
    return gens


def psl2(q):
    """PSL_2(q) in its natural action on P^1(F_q), degree q+1."""
    p, k = _factor_prime_power(q)
    line = ProjectiveLine(p, k)
    G = PermGroup(line.degree, _psl2_gens(line))
    expected = q * (q * q - 1) // gcd(2, q - 1)
    if G.order != expected:
        raise RuntimeError(f"PSL2({q}) construction has order {G.order}, expected {expected}")
    return G, line


def pgl2(q):
    """PGL_2(q) on P^1(F_q)."""
    p, k = _factor_prime_power(q)
    line = ProjectiveLine(p, k)
    gens = _psl2_gens(line)
    g = line.gf.multiplicative_generator()
    gens.append(line.moebius_perm(g, line.gf.zero, line.gf.zero, line.gf.one))
    G = PermGroup(line.degree, gens)
    expected = q * (q * q - 1)
    if G.order != expected:
        raise RuntimeError(f"PGL2({q}) construction has order {G.order}")
    return G, line


def pgammal2(q):
    """PGammaL_2(q) on P^1(F_q): PGL_2(q) extended by the Frobenius."""
    p, k = _factor_prime_power(q)
    line = ProjectiveLine(p, k)
    gens = _psl2_gens(line)
    g = line.gf.multiplicative_generator()
    if p != 2:
        gens.append(line.moebius_perm(g, line.gf.zero, line.gf.zero, line.gf.one))
    gens.append(line.frobenius_perm())
    G = PermGroup(line.degree, gens)
    expected = q * (q * q - 1) // gcd(2, q - 1) * gcd(2, q - 1) * k
    if G.order != expected:
        raise RuntimeError(f"PGammaL2({q}) construction has order {G.order}")
    return G, line


def m10():
    """M10 = PSL2(9).<delta*frob> of order 720, acting on P^1(F_9)."""
    line = ProjectiveLine(3, 2)
    gens = _psl2_gens(line)
    g = line.gf.multiplicative_generator()
    delta = line.moebius_perm(g, line.gf.zero, line.gf.zero, line.gf.one)
    frob = line.frobenius_perm()
    gens.append(delta * frob)
    G = PermGroup(line.degree, gens)
    if G.order != 720:
        raise RuntimeError(f"M10 construction has order {G.order}")
    return G, line


def _factor_prime_power(q):
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                break
            return p, k
    raise ValueError(f"{q} is not a supported prime power")


def element_of_order(G, n, cap=ENUM_CAP):
    """A deterministic element of order n: first one found in enumeration order."""
    for h in G.elements(cap):
        if h.order() == n:
            return h
    raise ValueError(f"no element of order {n}")


def psl2_torus_coset_action(q, ambient="psl"):
    """The degree q(q-1)/2 action of PSL2(q) (or an overgroup) on cosets of the
    normalizer of the nonsplit torus of order (q+1)/gcd(2,q-1).

    ambient: 'psl', 'pgammal', or 'm10' (q=9 only).
    Returns (coset_action, G_in_ambient) where G_in_ambient is PSL2(q) given
    by its generators inside the ambient group.
    """
    if ambient == "psl":
        A, line = psl2(q)
        g_gens = A.gens
    elif ambient == "pgammal":
        A, line = pgammal2(q)
        g_gens = _psl2_gens(line)
    elif ambient == "m10":
        A, line = m10()
        g_gens = _psl2_gens(line)
    else:
        raise ValueError(ambient)
    torus_order = (q + 1) // gcd(2, q - 1)
    G = PermGroup(A.degree, g_gens)
    t = element_of_order(G, torus_order)
    M = normalizer_of_cyclic(A, t)
    act = CosetAction(A, M)
    return act, G


def psl2_sylow2_coset_action(q, ambient="psl"):
    """The degree q(q+1)/2 action on cosets of a Sylow 2-subgroup normalizer
    setup used for PSL2(9)/M10 (stabilizer = Sylow 2-subgroup of the ambient)."""
    if ambient == "psl":
        A, line = psl2(q)
        g_gens = A.gens
    elif ambient == "m10":
        A, line = m10()
        g_gens = _psl2_gens(line)
    elif ambient == "pgammal":
        A, line = pgammal2(q)
        g_gens = _psl2_gens(line)
    else:
        raise ValueError(ambient)
    M = sylow_subgroup(A, 2)
    act = CosetAction(A, M)
    G = PermGroup(A.degree, g_gens)
    return act, G


# ---------------------------------------------------------------------------
# affine constructions on F_p^e

class AffineSpace:
    """F_p^e with vectors enumerated as mixed-radix tuples."""

    def __init__(self, p, e):
        self.p = p
        self.e = e
        self.n = p ** e
        self.vectors = []
        for idx in range(self.n):
            v = []
            m = idx
            for _ in range(e):
                v.append(m % p)
                m //= p
            self.vectors.append(tuple(v))
        self.index = {v: i for i, v in enumerate(self.vectors)}

    def translation(self, v):
        return Perm([self.index[tuple((a + b) % self.p for a, b in zip(w, v))]
                     for w in self.vectors])

    def linear(self, matrix):
        """Row-vector convention: w -> w * M (M given as list of rows)."""
        images = []
        for w in self.vectors:
            out = [0] * self.e
            for i, wi in enumerate(w):
                if wi:
                    for j in range(self.e):
                        out[j] = (out[j] + wi * matrix[i][j]) % self.p
            images.append(self.index[tuple(out)])
        return Perm(images)

    def map_perm(self, fn):
        """Permutation from an arbitrary bijection on vectors."""
        return Perm([self.index[fn(w)] for w in self.vectors])


def affine_group(p, e, matrix_gens):
    """V semidirect H on p^e points: translations plus the given linear maps."""
    sp = AffineSpace(p, e)
    gens = []
    for j in range(e):
        v = tuple(1 if i == j else 0 for i in range(e))
        gens.append(sp.translation(v))
    for mat in matrix_gens:
        gens.append(sp.linear(mat))
    return PermGroup(sp.n, gens), sp
