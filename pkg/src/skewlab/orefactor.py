"""Eigenrings, factorization, irreducibility and similarity over F_q[x; sigma].

Eigenrings are computed as F_p-subspaces (p the characteristic) of the
polynomials of degree < deg f; F_p is central in every supported ring, so all
the defining conditions are F_p-linear.
"""

import random
from itertools import product

from .coeffs import fp_proper_factor
from .errors import UnsupportedRingError
from .kernels import rref_mod_p
from .orepoly import _left_divide, extended_euclid, lrem, mul, rgcd

MAX_ENUMERATION = 1 << 16


def _require_finite(ring):
    if not (ring.field.is_finite and ring.delta.is_zero):
        raise UnsupportedRingError(
            "eigenrings are computed only over F_q[x; sigma]; over Q(t)[x; d/dt] the condition is a differential system")


def _poly_coords(q, n, field):
    out = []
    for i in range(n):
        out.extend(field.prime_coords(q.coeff(i)))
    return out


def _coords_poly(ring, v, n):
    F = ring.field
    k = getattr(F, "k", 1)
    return ring.poly([F.from_prime_coords(v[i * k:(i + 1) * k]) for i in range(n)])


def _solve_space(ring, n, image):
    """F_p-basis of {q : deg q < n, image(q) = 0} where image(q) is a polynomial of degree < n.

    Returns (basis polynomials, basis coordinate vectors, free columns).
    """
    F = ring.field
    p = F.p
    k = getattr(F, "k", 1)
    N = n * k
    cols = []
    for idx in range(N):
        e = [0] * N
        e[idx] = 1
        cols.append(_poly_coords(image(_coords_poly(ring, e, n)), n, F))
    rows = [[cols[j][i] for j in range(N)] for i in range(N)]
    red, pivots = rref_mod_p(rows, N, p)
    pivset = set(pivots)
    free = [c for c in range(N) if c not in pivset]
    vecs = []
    for fcol in free:
        v = [0] * N
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fcol]) % p
        vecs.append(v)
    return [_coords_poly(ring, v, n) for v in vecs], vecs, free


class Eigenring:
    """E(f) = {q : deg q < deg f, l-rem(f q, f) = 0} with q'.q = l-rem(q' q, f)."""

    def __init__(self, f):
        _require_finite(f.ring)
        if f.degree() < 1:
            raise ValueError("eigenring needs deg f >= 1")
        self.f = f
        self.ring = f.ring
        self.p = f.ring.field.p
        self.n = f.degree()
        self.basis, self._vecs, self._free = _solve_space(self.ring, self.n, lambda q: lrem(mul(f, q), f))
        self.dim = len(self.basis)
        self.table = [[self.coords(self.mul(a, b)) for b in self.basis] for a in self.basis]

    def coords(self, q):
        v = _poly_coords(q, self.n, self.ring.field)
        return [v[c] for c in self._free]

    def element(self, coords):
        out = self.ring.zero
        for c, b in zip(coords, self.basis):
            if c % self.p:
                out = out + (c % self.p) * b
        return out

    def mul(self, a, b):
        return lrem(mul(a, b), self.f)

    def mul_coords(self, a, b):
        p = self.p
        out = [0] * self.dim
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        row = self.table[i][j]
                        xy = x * y
                        for k in range(self.dim):
                            out[k] = (out[k] + xy * row[k]) % p
        return out

    def one_coords(self):
        return self.coords(self.ring.one)

    def contains(self, q):
        return q.degree() < self.n and not lrem(mul(self.f, q), self.f)

    def is_commutative(self):
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def elements(self):
        for coords in product(range(self.p), repeat=self.dim):
            yield self.element(coords)

    def __len__(self):
        return self.dim


def eigenring(f):
    return Eigenring(f)


# ---------------------------------------------------------------------------
# zero divisors

def _minimal_polynomial(E, u):
    """Minimal polynomial of u over F_p, as coefficient list (low first, monic)."""
    p = E.p
    powers = [E.one_coords()]
    while True:
        nxt = E.mul_coords(powers[-1], u)
        # is nxt in the span of powers?  solve sum c_i powers_i = nxt
        rows = [[powers[j][i] for j in range(len(powers))] + [nxt[i]] for i in range(E.dim)]
        red, pivots = rref_mod_p(rows, len(powers) + 1, p)
        if len(powers) not in pivots:
            sol = [0] * len(powers)
            for row, pc in zip(red, pivots):
                sol[pc] = row[-1]
            return [(-c) % p for c in sol] + [1]
        powers.append(nxt)


def _eval_poly(E, coeffs, u):
    p = E.p
    acc = [0] * E.dim
    for c in reversed(coeffs):
        acc = E.mul_coords(acc, u)
        if c:
            one = E.one_coords()
            acc = [(a + c * o) % p for a, o in zip(acc, one)]
    return acc


def _from_minpoly(E, u):
    mp = _minimal_polynomial(E, u)
    if len(mp) <= 2:
        return None
    g = fp_proper_factor(mp, E.p)
    if g is None:
        return None
    z = _eval_poly(E, g, u)
    return z if any(z) else None


def _left_mult_singular(E, u):
    p = E.p
    cols = [E.mul_coords(u, [1 if j == i else 0 for j in range(E.dim)]) for i in range(E.dim)]
    rows = [[cols[j][i] for j in range(E.dim)] for i in range(E.dim)]
    _, pivots = rref_mod_p(rows, E.dim, p)
    return len(pivots) < E.dim


def _frobenius_images(E, power):
    """Images of the basis under u -> u^(p^power); F_p-linear when E is commutative."""
    p = E.p
    images = []
    for i in range(E.dim):
        u = [1 if j == i else 0 for j in range(E.dim)]
        v = u
        for _ in range(power):
            w = E.one_coords()
            for _ in range(p):
                w = E.mul_coords(w, v)
            v = w
        images.append(v)
    return images


def find_zero_divisor(E):
    """A nonzero non-unit of E as a polynomial, or None when E is a field."""
    if E.dim <= 1:
        return None
    p = E.p
    dim = E.dim
    one = E.one_coords()
    cands = [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            cands.append(E.table[i][j])
    for i in range(dim):
        for j in range(i + 1, dim):
            cands.append([(a + b) % p for a, b in zip(cands[i], cands[j])])
    seen = set()
    for u in cands:
        key = tuple(u)
        if key in seen or not any(u):
            continue
        seen.add(key)
        z = _from_minpoly(E, u)
        if z is not None:
            return E.element(z)
    if E.is_commutative():
        # Berlekamp subalgebra {u : u^p = u} and the nilradical decide the field case
        frob = _frobenius_images(E, 1)
        rows = [[(frob[j][i] - (1 if i == j else 0)) % p for j in range(dim)] for i in range(dim)]
        for v in _nullspace(rows, dim, p):
            if not _is_scalar(v, one, p):
                z = _from_minpoly(E, v)
                if z is not None:
                    return E.element(z)
        N = 1
        while p ** N < dim:
            N += 1
        nil = _nullspace([[r[i] for r in _frobenius_images(E, N)] for i in range(dim)], dim, p)
        if nil:
            return E.element(nil[0])
        return None
    # non-commutative finite algebras always have zero divisors
    if p ** dim <= MAX_ENUMERATION:
        for coords in product(range(p), repeat=dim):
            if any(coords) and _left_mult_singular(E, list(coords)):
                return E.element(list(coords))
    rng = random.Random(0)
    for _ in range(20000):
        u = [rng.randrange(p) for _ in range(dim)]
        if any(u) and _left_mult_singular(E, u):
            return E.element(u)
    raise AssertionError("no zero divisor found in a non-commutative eigenring")


def _is_scalar(v, one, p):
    # v == c * one for some c
    for c in range(p):
        if all((a - c * b) % p == 0 for a, b in zip(v, one)):
            return True
    return False


def _nullspace(rows, ncols, p):
    from .kernels import nullspace_mod_p
    return nullspace_mod_p(rows, ncols, p)


# ---------------------------------------------------------------------------
# factorization

def factorize(f):
    """Monic irreducible factors f_1, ..., f_t with f = lc(f) * f_1 * ... * f_t."""
    _require_finite(f.ring)
    if f.degree() < 1:
        raise ValueError("factorize needs deg f >= 1")
    factors = _factor(f.monic())
    check = f.ring.one
    for g in factors:
        check = mul(check, g)
    if check != f.monic():
        raise AssertionError("factor product does not reproduce f")
    return factors


def _factor(f):
    if f.degree() <= 1:
        return [f]
    z = find_zero_divisor(Eigenring(f))
    if z is None:
        return [f]
    d = rgcd(z, f)
    if not (0 < d.degree() < f.degree()):
        raise AssertionError("zero divisor did not give a proper factor")
    f1, r = _left_divide(f, d)
    if r:
        raise AssertionError("r-gcd is not a right factor")
    return _factor(f1) + _factor(d)


def monic_polynomials(ring, degree):
    F = ring.field
    elems = F.elements()
    for tail in product(elems, repeat=degree):
        yield ring.poly(list(tail) + [F.one])


def has_right_factor_bruteforce(f):
    """Exhaustive search for a monic right factor of degree 1..deg f - 1."""
    for d in range(1, f.degree()):
        for g in monic_polynomials(f.ring, d):
            if not lrem(f, g):
                return True
    return False


def is_irreducible(f):
    _require_finite(f.ring)
    if f.degree() < 1:
        return False
    if f.degree() == 1:
        return True
    no_zd = find_zero_divisor(Eigenring(f.monic())) is None
    if f.degree() <= 4 and f.ring.field.q <= 9:
        brute = not has_right_factor_bruteforce(f)
        if brute != no_zd:
            raise AssertionError(f"eigenring and brute force disagree on {f}")
        return no_zd and brute
    return no_zd


# ---------------------------------------------------------------------------
# similarity

def hom_space(f, g):
    """F_p-basis of {u : deg u < deg g, l-rem(f u, g) = 0}."""
    basis, _, _ = _solve_space(g.ring, g.degree(), lambda u: lrem(mul(f, u), g))
    return basis


def _size_key(u):
    F = u.ring.field
    return (u.degree(), tuple(F.code(c) for c in reversed(u.c)))


def similar(f, g):
    """A witness u of R/Rf = R/Rg (so f u in R g and r-gcd(u, g) = 1), or None."""
    _require_finite(f.ring)
    if f.degree() != g.degree() or f.degree() < 1:
        return None
    basis = hom_space(f, g)
    p = f.ring.field.p
    if p ** len(basis) > MAX_ENUMERATION:
        raise UnsupportedRingError("hom space too large to enumerate")
    elems = []
    for coords in product(range(p), repeat=len(basis)):
        if any(coords):
            u = f.ring.zero
            for c, b in zip(coords, basis):
                if c:
                    u = u + c * b
            elems.append(u)
    elems.sort(key=_size_key)
    for u in elems:
        if rgcd(u, g).degree() == 0:
            return u
    return None


def verify_similarity(f, g, u):
    if not u or not g or f.degree() != g.degree():
        return False
    if u.degree() >= g.degree():
        return False
    if lrem(mul(f, u), g):
        return False
    return extended_euclid(u, g)[0].degree() == 0
