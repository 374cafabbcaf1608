"""Univariate Ore polynomials D[x; sigma, delta] with left coefficients."""

from .coeffs import (
    DtDerivation,
    IdentityTwist,
    RationalFunctionField,
    RatFunc,
    ZeroDerivation,
    check_ore_data,
    qp_divmod,
    qp_gcd,
)
from .errors import FieldMismatchError, NotBijectiveError, ParseError, UnsupportedRingError
from .parsing import evaluate, format_term, join_terms, parse_expr

NEG_INF = float("-inf")


class _OppositeDerivation:
    kind = "opposite"

    def __init__(self, delta, sigma_inv):
        self.delta = delta
        self.sigma_inv = sigma_inv
        self.is_zero = delta.is_zero
        self.field = delta.field

    def __call__(self, a):
        return -self.delta(self.sigma_inv(a))


class OreRing:
    def __init__(self, field, sigma=None, delta=None, var="x", check=True):
        self.field = field
        self.sigma = sigma if sigma is not None else IdentityTwist(field)
        self.delta = delta if delta is not None else ZeroDerivation(field, self.sigma)
        if self.sigma.field != field or self.delta.field != field:
            raise FieldMismatchError("ring data act on a different field")
        if var == field.gen_name:
            raise ParseError(f"variable name {var!r} clashes with the field generator")
        self.var = var
        if check:
            check_ore_data(field, self.sigma, self.delta)
        self.is_bijective = self.sigma.is_bijective
        self.commutative = self.sigma.is_identity() and self.delta.is_zero
        self.zero = OrePoly(self, ())
        self.one = OrePoly(self, (field.one,))
        self.x = OrePoly(self, (field.zero, field.one))

    @property
    def is_simple(self):
        """Q(t)[x; d/dt], the one simple ring flagged for total-divisor decisions."""
        return isinstance(self.field, RationalFunctionField) and isinstance(self.delta, DtDerivation)

    @property
    def is_bounded_family(self):
        """F_q[x; sigma] with zero derivation: every polynomial has a bound."""
        return self.field.is_finite and self.delta.is_zero and self.sigma.order is not None

    def __eq__(self, other):
        return self is other or (
            isinstance(other, OreRing)
            and self.field == other.field
            and self.var == other.var
            and _descr(self.sigma) == _descr(other.sigma)
            and _descr(self.delta) == _descr(other.delta)
        )

    def __hash__(self):
        return hash((self.field, self.var))

    def __call__(self, value):
        if isinstance(value, OrePoly):
            if value.ring != self:
                raise FieldMismatchError("polynomial from a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (list, tuple)):
            return self.poly(value)
        return OrePoly(self, (self.field(value),))

    def poly(self, coeffs):
        return OrePoly(self, tuple(self.field(c) for c in coeffs))

    def monomial(self, c, k):
        c = self.field(c)
        if not c:
            return self.zero
        return OrePoly(self, (self.field.zero,) * k + (c,), True)

    def parse(self, text):
        return evaluate(parse_expr(text), _PolyContext(self))

    def opposite(self):
        """A^op[y; sigma^-1, -delta sigma^-1]; A is commutative here."""
        if not self.is_bijective:
            raise NotBijectiveError("opposite ring needs a bijective twist")
        sinv = self.sigma.inverse()
        delta = ZeroDerivation(self.field, sinv) if self.delta.is_zero else _OppositeDerivation(self.delta, sinv)
        return OreRing(self.field, sinv, delta, self.var, check=False)

    def describe(self):
        return {"field": self.field.descriptor(), "sigma": _descr(self.sigma), "delta": _descr(self.delta), "var": self.var}

    def __repr__(self):
        return f"OreRing({self.field.name}, sigma={self.sigma.kind}, delta={self.delta.kind})"


def _descr(obj):
    d = getattr(obj, "descriptor", None)
    return d() if d else {"type": obj.kind}


class _PolyContext:
    def __init__(self, ring):
        self.ring = ring

    def const(self, n):
        return self.ring(n)

    def var(self, name):
        if name == self.ring.var:
            return self.ring.x
        if name == self.ring.field.gen_name:
            return OrePoly(self.ring, (self.ring.field.gen,))
        raise ParseError(f"unknown symbol {name!r}")

    def div(self, a, b):
        if b.degree() != 0:
            raise ParseError("division is only defined by nonzero scalars")
        return a * OrePoly(self.ring, (self.ring.field.inv(b.c[0]),))

    def inverse(self, a):
        if a.degree() != 0:
            raise ParseError("negative powers are only defined for scalars")
        return OrePoly(self.ring, (self.ring.field.inv(a.c[0]),))


class OrePoly:
    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs, trimmed=False):
        self.ring = ring
        if not trimmed:
            coeffs = list(coeffs)
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            coeffs = tuple(coeffs)
        self.c = coeffs

    # --- basic accessors
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def lc(self):
        return self.c[-1] if self.c else self.ring.field.zero

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.ring.field.zero

    def is_monic(self):
        return bool(self.c) and self.c[-1] == self.ring.field.one

    def monic(self):
        if not self.c:
            return self
        inv = self.ring.field.inv(self.c[-1])
        return OrePoly(self.ring, tuple(inv * a for a in self.c), True)

    # --- arithmetic
    def _coerce(self, other):
        if isinstance(other, OrePoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise FieldMismatchError("ring mismatch")
            return other
        return OrePoly(self.ring, (self.ring.field(other),))

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return OrePoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.ring, tuple(-a for a in self.c), True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        return mul(self, self._coerce(other))

    def __rmul__(self, other):
        # scalar on the left: c * f scales the left coefficients
        c = self.ring.field(other)
        if not c:
            return self.ring.zero
        return OrePoly(self.ring, tuple(c * a for a in self.c))

    def scale_left(self, c):
        return self.__rmul__(c)

    def __pow__(self, e):
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.c == other.c and (self.ring is other.ring or self.ring == other.ring)
        try:
            return self == self._coerce(other)
        except (FieldMismatchError, TypeError, ParseError):
            return False

    def __hash__(self):
        return hash(self.c)

    def __str__(self):
        F = self.ring.field
        var = self.ring.var
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            terms.append(format_term(F.format(a), mono))
        return join_terms(terms)

    def __repr__(self):
        return f"OrePoly({self})"


def x_times(ring, coeffs):
    """Coefficients of x * (sum c_j x^j)."""
    sigma, delta = ring.sigma, ring.delta
    zero = ring.field.zero
    out = [zero] * (len(coeffs) + 1)
    if sigma.is_identity():
        out[1:] = coeffs
    else:
        for j, b in enumerate(coeffs):
            if b:
                out[j + 1] = sigma(b)
    if not delta.is_zero:
        for j, b in enumerate(coeffs):
            if b:
                out[j] = out[j] + delta(b)
    return out


def mul(f, g):
    ring = f.ring
    if g.ring is not ring and g.ring != ring:
        raise FieldMismatchError("ring mismatch")
    if not f.c or not g.c:
        return ring.zero
    zero = ring.field.zero
    out = [zero] * (len(f.c) + len(g.c) - 1)
    if ring.commutative:
        for i, a in enumerate(f.c):
            if a:
                for j, b in enumerate(g.c):
                    out[i + j] = out[i + j] + a * b
        return OrePoly(ring, out)
    cur = list(g.c)
    last = len(f.c) - 1
    for i, a in enumerate(f.c):
        if a:
            for j, b in enumerate(cur):
                if b:
                    out[j] = out[j] + a * b
        if i < last:
            cur = x_times(ring, cur)
    return OrePoly(ring, out)


def x_power_times(g, k):
    """x^k * g."""
    cur = list(g.c)
    for _ in range(k):
        cur = x_times(g.ring, cur)
    return OrePoly(g.ring, cur)


def divide(f, g, side="left"):
    """Left division f = q*g + r or right division f = g*q + r, deg r < deg g."""
    g = f._coerce(g)
    if not g.c:
        raise ZeroDivisionError("division by the zero polynomial")
    if side == "left":
        return _left_divide(f, g)
    if side == "right":
        return _right_divide(f, g)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def _left_divide(f, g):
    ring = f.ring
    F = ring.field
    dg = g.degree()
    r = list(f.c)
    q = [F.zero] * max(len(r) - dg, 0)
    # cache x^m * g
    shifted = [list(g.c)]
    while len(r) - 1 >= dg and r:
        m = len(r) - 1 - dg
        while len(shifted) <= m:
            shifted.append(x_times(ring, shifted[-1]))
        xg = shifted[m]
        c = r[-1] / xg[-1]
        q[m] = c
        for j, b in enumerate(xg):
            if b:
                r[j] = r[j] - c * b
        while r and not r[-1]:
            r.pop()
    return OrePoly(ring, q), OrePoly(ring, r)


def _right_divide(f, g):
    ring = f.ring
    if not ring.is_bijective:
        raise NotBijectiveError("right division needs a bijective twist")
    F = ring.field
    dg = g.degree()
    inv_lc = F.inv(g.lc())
    q = [F.zero] * max(len(f.c) - dg, 0)
    r = f
    while r.c and r.degree() >= dg:
        k = r.degree() - dg
        a = ring.sigma.apply(inv_lc * r.lc(), -dg)
        q[k] = q[k] + a
        r = r - mul(g, ring.monomial(a, k))
    return OrePoly(ring, q), r


def lrem(f, g):
    return _left_divide(f, f._coerce(g))[1]


def rrem(f, g):
    return _right_divide(f, f._coerce(g))[1]


def _ensure_polynomial_domain(f):
    ring = f.ring
    if not isinstance(ring.field, RationalFunctionField):
        raise UnsupportedRingError("pseudo-division is implemented over Q[t] coefficients only")
    if ring.sigma.kind not in ("identity", "shift") or ring.delta.kind not in ("zero", "d/dt"):
        raise UnsupportedRingError("pseudo-division needs sigma = shift/identity and delta = d/dt/zero")


def pseudo_divide(f, g):
    """Return (a, q, r) with a*f = q*g + r and deg r < deg g, all coefficients in Q[t]."""
    ring = f.ring
    g = f._coerce(g)
    if not g.c:
        raise ZeroDivisionError("pseudo-division by zero")
    _ensure_polynomial_domain(f)
    for p in (f, g):
        if not all(c.is_polynomial() for c in p.c):
            raise UnsupportedRingError("coefficients must be polynomials in t")
    F = ring.field
    a = F.one
    q = ring.zero
    r = f
    dg = g.degree()
    while r.c and r.degree() >= dg:
        m = r.degree() - dg
        c = r.lc()
        d = ring.sigma.apply(g.lc(), m)
        gg = qp_gcd(c.num, d.num)
        a1 = RatFunc(qp_divmod(d.num, gg)[0], (F.one.num[0],), F, True)
        b1 = RatFunc(qp_divmod(c.num, gg)[0], (F.one.num[0],), F, True)
        a = a1 * a
        xm = ring.monomial(b1, m)
        q = a1 * q + xm
        r = a1 * r - mul(xm, g)
    return a, q, r


def _euclid(f, g):
    """Remainder sequence with cofactors; returns (d, u, v, s, w) with
    d = u f + v g the last nonzero remainder and s f + w g = 0 minimal."""
    ring = f.ring
    r0, r1 = f, g
    u0, u1 = ring.one, ring.zero
    v0, v1 = ring.zero, ring.one
    while r1.c:
        qq, rr = _left_divide(r0, r1)
        r0, r1 = r1, rr
        u0, u1 = u1, u0 - mul(qq, u1)
        v0, v1 = v1, v0 - mul(qq, v1)
    return r0, u0, v0, u1, v1


def extended_euclid(f, g):
    """Return (d, u, v, m): d = r-gcd(f, g) = u f + v g monic, m = l-lcm(f, g) monic."""
    g = f._coerce(g)
    if not f.c and not g.c:
        raise ValueError("extended_euclid needs a nonzero input")
    ring = f.ring
    if not g.c:
        inv = ring.field.inv(f.lc())
        return f.monic(), OrePoly(ring, (inv,)), ring.zero, ring.zero
    if not f.c:
        inv = ring.field.inv(g.lc())
        return g.monic(), ring.zero, OrePoly(ring, (inv,)), ring.zero
    d, u, v, s, w = _euclid(f, g)
    inv = ring.field.inv(d.lc())
    d, u, v = inv * d, inv * u, inv * v
    m = mul(s, f)
    return d, u, v, m.monic()


def rgcd(f, g):
    return extended_euclid(f, g)[0]


def llcm(f, g):
    return extended_euclid(f, g)[3]


def lcm_cofactor(f, g):
    """s with s*f = l-lcm(f, g) (monic lcm); zero when g = 0."""
    ring = f.ring
    if not g.c or not f.c:
        return ring.zero
    d, u, v, s, w = _euclid(f, g)
    m = mul(s, f)
    return ring.field.inv(m.lc()) * s


def right_coefficients(f):
    """b_i with f = sum x^i b_i (needs a bijective twist)."""
    ring = f.ring
    if not ring.is_bijective:
        raise NotBijectiveError("right coefficients need a bijective twist")
    out = [ring.field.zero] * len(f.c)
    r = f
    while r.c:
        n = r.degree()
        b = ring.sigma.apply(r.lc(), -n)
        out[n] = b
        r = r - mul(ring.monomial(ring.field.one, n), OrePoly(ring, (b,)))
    return out


def from_right_coefficients(ring, coeffs):
    out = ring.zero
    for i, b in enumerate(coeffs):
        if b:
            out = out + mul(ring.monomial(ring.field.one, i), OrePoly(ring, (ring.field(b),)))
    return out


def to_opposite(f, op_ring):
    """The anti-isomorphism sum x^i b_i -> sum b_i y^i into the opposite ring."""
    return OrePoly(op_ring, tuple(right_coefficients(f)))


def from_opposite(h, ring):
    return from_right_coefficients(ring, h.c)
