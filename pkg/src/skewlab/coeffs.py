"""Exact coefficient fields and the Ore data (sigma, delta) over them.

Four families are supported: the rationals, prime fields F_p, extension
fields F_p[a]/(m(a)) and the rational function field Q(t).  Rationals are
gmpy2 ``mpq`` values; the other families use small immutable element classes
that refuse to mix with elements of a different field.
"""

from functools import lru_cache
from itertools import product

from gmpy2 import mpq

from .errors import FieldMismatchError, NotBijectiveError, ParseError, UnsupportedRingError
from .parsing import evaluate, format_term, join_terms, parse_expr

MPQ = type(mpq(0))


# ---------------------------------------------------------------------------
# dense univariate helpers over F_p (int lists, low degree first)

def fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return fp_trim(out)


def fp_divmod(a, b, p):
    b = fp_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = fp_trim(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - c * y) % p
        r = fp_trim(r)
    return fp_trim(q), r


def fp_monic(a, p):
    a = fp_trim(a)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def fp_gcd(a, b, p):
    a, b = fp_trim(a), fp_trim(b)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    return fp_monic(a, p)


def fp_powmod(base, e, mod, p):
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
    return result


def fp_derivative(a, p):
    return fp_trim([(i * a[i]) % p for i in range(1, len(a))])


def fp_is_irreducible_exhaustive(m, p):
    """Irreducibility by trying every monic divisor of degree <= deg(m)/2."""
    m = fp_trim(m)
    k = len(m) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            if fp_divmod(m, list(tail) + [1], p)[1] == []:
                return False
    return True


def fp_proper_factor(m, p):
    """Return a monic proper factor of the monic polynomial m, or None if m is irreducible.

    Squarefree part first, then distinct-degree splitting with X^(p^i) - X.
    """
    m = fp_monic(m, p)
    k = len(m) - 1
    if k <= 1:
        return None
    dm = fp_derivative(m, p)
    if not dm:
        # m = h(X^p); over F_p this is h(X)^p
        h = [m[i] for i in range(0, len(m), p)]
        return fp_monic(h, p)
    g = fp_gcd(m, dm, p)
    if len(g) > 1:
        return g
    x = [0, 1]
    xp = x
    for i in range(1, k // 2 + 1):
        xp = fp_powmod(xp, p, m, p)
        g = fp_gcd(m, fp_sub(xp, x, p), p)
        if 1 < len(g) < len(m):
            return g
        if len(g) == len(m):
            # m splits into factors of degree i only
            return _equal_degree_split(m, i, p)
    return None


def _equal_degree_split(m, d, p):
    # deterministic search over small polynomials; m is squarefree with all factors of degree d
    k = len(m) - 1
    for size in range(1, k + 1):
        for coeffs in product(range(p), repeat=size):
            a = fp_trim(list(coeffs) + [1])
            if p == 2:
                t = list(a)
                s = list(a)
                for _ in range(d - 1):
                    t = fp_divmod(fp_mul(t, t, p), m, p)[1]
                    s = fp_add(s, t, p)
                cand = s
            else:
                cand = fp_sub(fp_powmod(a, (p ** d - 1) // 2, m, p), [1], p)
            g = fp_gcd(m, cand, p)
            if 1 < len(g) < len(m):
                return g
    raise AssertionError("equal-degree split failed")


# ---------------------------------------------------------------------------
# dense univariate helpers over Q (tuples of mpq, low degree first)

def qp_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def qp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return qp_trim(out)


def qp_neg(a):
    return tuple(-x for x in a)


def qp_sub(a, b):
    return qp_add(a, qp_neg(b))


def qp_scale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def qp_mul(a, b):
    if not a or not b:
        return ()
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qp_trim(out)


def qp_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    lc = b[-1]
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        c = r[-1] / lc
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = list(qp_trim(r))
    return qp_trim(q), tuple(r)


def qp_monic(a):
    if not a:
        return a
    lc = a[-1]
    return tuple(x / lc for x in a)


def qp_gcd(a, b):
    a, b = qp_trim(a), qp_trim(b)
    while b:
        a, b = b, qp_divmod(a, b)[1]
    return qp_monic(a)


def qp_derivative(a):
    return qp_trim([a[i] * i for i in range(1, len(a))])


def qp_compose_shift(a, c):
    """a(t + c) by Horner's rule."""
    out = ()
    lin = qp_trim((mpq(c), mpq(1)))
    for x in reversed(a):
        out = qp_add(qp_mul(out, lin), (x,))
    return out


def qp_format(a, var="t"):
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        terms.append(format_term(str(c), mono))
    return join_terms(terms)


# ---------------------------------------------------------------------------
# fields

class _ScalarContext:
    def __init__(self, field):
        self.field = field

    def const(self, n):
        return self.field(n)

    def var(self, name):
        if name == self.field.gen_name and self.field.gen_name is not None:
            return self.field.gen
        raise ParseError(f"unknown symbol {name!r} for field {self.field.name}")

    def div(self, a, b):
        return self.field.div(a, b)

    def inverse(self, a):
        return self.field.inv(a)


class Field:
    name = "?"
    characteristic = 0
    is_finite = False
    gen_name = None
    gen = None

    def parse(self, text):
        return evaluate(parse_expr(text), _ScalarContext(self))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def add(self, a, b):
        return self(a) + self(b)

    def sub(self, a, b):
        return self(a) - self(b)

    def mul(self, a, b):
        return self(a) * self(b)

    def neg(self, a):
        return -self(a)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, MPQ):
            return x
        if isinstance(x, int):
            return mpq(x)
        if isinstance(x, str):
            return self.parse(x)
        if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, (FpElement, FqElement, RatFunc)):
            return mpq(x.numerator, x.denominator)
        raise FieldMismatchError(f"{x!r} is not a rational number")

    def contains(self, x):
        return isinstance(x, MPQ)

    def inv(self, a):
        a = self(a)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def format(self, a):
        return str(a)

    def enumerate(self):
        yield mpq(1)
        n = 2
        while True:
            yield mpq(n)
            yield mpq(-n + 1) if n > 2 else mpq(-1)
            yield mpq(1, n)
            n += 1

    def descriptor(self):
        return {"type": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


class FpElement:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v
        self.field = field

    def _other(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise FieldMismatchError(f"mixed-field operands GF({self.field.p}) and GF({other.field.p})")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, (FqElement, RatFunc, MPQ)):
            raise FieldMismatchError(f"mixed-field operands GF({self.field.p}) and {type(other).__name__}")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpElement((self.v + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpElement((self.v - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpElement((o - self.v) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpElement(self.v * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.v % self.field.p, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * self.field.inv(FpElement(o, self.field))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpElement(o, self.field) * self.field.inv(self)

    def __pow__(self, e):
        if e < 0:
            return self.field.inv(self) ** (-e)
        return FpElement(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.v == other.v and self.field.p == other.field.p
        if isinstance(other, int):
            return self.v == other % self.field.p
        return False

    def __hash__(self):
        return hash(("Fp", self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField(Field):
    is_finite = True

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise UnsupportedRingError(f"{p} is not prime")
        self.p = p
        self.k = 1
        self.q = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = FpElement(0, self)
        self.one = FpElement(1, self)

    def __call__(self, x):
        if isinstance(x, FpElement):
            if x.field.p != self.p:
                raise FieldMismatchError(f"mixed-field operands GF({self.p}) and GF({x.field.p})")
            return x
        if isinstance(x, int):
            return FpElement(x % self.p, self)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, MPQ) and x.denominator == 1:
            return FpElement(int(x.numerator) % self.p, self)
        raise FieldMismatchError(f"{x!r} is not an element of {self.name}")

    def contains(self, x):
        return isinstance(x, FpElement) and x.field.p == self.p

    def inv(self, a):
        a = self(a)
        if not a.v:
            raise ZeroDivisionError("inverse of zero")
        return FpElement(pow(a.v, self.p - 2, self.p), self)

    def format(self, a):
        return str(a.v)

    def elements(self):
        return [FpElement(v, self) for v in range(self.p)]

    enumerate = elements

    def from_code(self, v):
        return FpElement(v, self)

    def code(self, a):
        return a.v

    def prime_coords(self, a):
        return [a.v]

    def from_prime_coords(self, coords):
        return FpElement(coords[0] % self.p, self)

    def descriptor(self):
        return {"type": "GF", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class FqElement:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v
        self.field = field

    def _other(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"mixed-field operands {self.field.name} and {other.field.name}")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, FpElement) and other.field.p == self.field.p:
            return other.v
        if isinstance(other, (FpElement, RatFunc, MPQ)):
            raise FieldMismatchError(f"mixed-field operands {self.field.name} and {type(other).__name__}")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(self.field._add(self.v, o), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(self.field._sub(self.v, o), self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(self.field._sub(o, self.v), self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(self.field._mul(self.v, o), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.field._neg(self.v), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * self.field.inv(FqElement(o, self.field))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(o, self.field) * self.field.inv(self)

    def __pow__(self, e):
        f = self.field
        if e < 0:
            return f.inv(self) ** (-e)
        if self.v == 0:
            return FqElement(0 if e else 1, f)
        return FqElement(f._exp[(f._log[self.v] * e) % (f.q - 1)], f)

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.v == other.v and self.field == other.field
        if isinstance(other, int):
            return self.v == other % self.field.p
        return False

    def __hash__(self):
        return hash(("Fq", self.field.q, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return self.field.format(self)


# Conway polynomials for the small fields (coefficients low degree first)
CONWAY = {
    (2, 2): [1, 1, 1], (2, 3): [1, 1, 0, 1], (2, 4): [1, 1, 0, 0, 1],
    (3, 2): [2, 2, 1], (3, 3): [1, 2, 0, 1], (3, 4): [2, 0, 0, 2, 1],
    (5, 2): [2, 4, 1], (5, 3): [3, 3, 0, 1],
    (7, 2): [3, 6, 1], (7, 3): [4, 0, 6, 1],
}

MAX_EXTENSION_ORDER = 1 << 12


class ExtensionField(Field):
    """F_p[a]/(m(a)); elements are integer codes sum c_i p^i for sum c_i a^i."""

    is_finite = True

    def __init__(self, p, modulus=None, gen_name="a"):
        PrimeField(p)
        if modulus is None:
            raise UnsupportedRingError("extension field needs a modulus")
        m = fp_monic([c % p for c in modulus], p)
        k = len(m) - 1
        if k < 2:
            raise UnsupportedRingError("extension modulus must have degree >= 2")
        if p ** k > MAX_EXTENSION_ORDER:
            raise UnsupportedRingError(f"field of order {p ** k} exceeds the supported size")
        if not fp_is_irreducible_exhaustive(m, p):
            raise UnsupportedRingError(f"modulus {m} is reducible over GF({p})")
        self.p, self.k, self.q = p, k, p ** k
        self.modulus = tuple(m)
        self.characteristic = p
        self.gen_name = gen_name
        self.name = f"GF({p}^{k})"
        self._build_tables()
        self.zero = FqElement(0, self)
        self.one = FqElement(1, self)
        self.gen = FqElement(p if k > 1 else 0, self)

    def _digits(self, v):
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _code(self, digits):
        v = 0
        for d in reversed(list(digits) + [0] * (self.k - len(digits))):
            v = v * self.p + (d % self.p)
        return v

    def _build_tables(self):
        p, q = self.p, self.q
        digits = [self._digits(v) for v in range(q)]
        self._dig = digits
        self._addt = [[self._code([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                      for a in range(q)] if q <= 256 else None
        self._negt = [self._code([(-x) % p for x in digits[a]]) for a in range(q)]
        # find a primitive element and build log tables
        m = list(self.modulus)
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            cur = [1]
            gd = fp_trim(digits[g])
            for _ in range(q - 2):
                cur = fp_divmod(fp_mul(cur, gd, p), m, p)[1]
                c = self._code(cur)
                if c == 1:
                    break
                exp.append(c)
            if len(exp) == q - 1:
                self._exp = exp + exp
                self._log = [0] * q
                for i, c in enumerate(exp):
                    self._log[c] = i
                return
        raise AssertionError("no primitive element found")

    def _add(self, a, b):
        if self._addt is not None:
            return self._addt[a][b]
        return self._code([(x + y) % self.p for x, y in zip(self._dig[a], self._dig[b])])

    def _neg(self, a):
        return self._negt[a]

    def _sub(self, a, b):
        return self._add(a, self._negt[b])

    def _mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def __call__(self, x):
        if isinstance(x, FqElement):
            if x.field != self:
                raise FieldMismatchError(f"mixed-field operands {self.name} and {x.field.name}")
            return x
        if isinstance(x, int):
            return FqElement(x % self.p, self)
        if isinstance(x, FpElement) and x.field.p == self.p:
            return FqElement(x.v, self)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, MPQ) and x.denominator == 1:
            return FqElement(int(x.numerator) % self.p, self)
        raise FieldMismatchError(f"{x!r} is not an element of {self.name}")

    def contains(self, x):
        return isinstance(x, FqElement) and x.field == self

    def inv(self, a):
        a = self(a)
        if not a.v:
            raise ZeroDivisionError("inverse of zero")
        return FqElement(self._exp[(self.q - 1 - self._log[a.v]) % (self.q - 1)], self)

    def format(self, a):
        d = self._dig[a.v]
        terms = []
        for i in range(self.k - 1, -1, -1):
            if d[i]:
                mono = "" if i == 0 else (self.gen_name if i == 1 else f"{self.gen_name}^{i}")
                terms.append(format_term(str(d[i]), mono))
        return join_terms(terms)

    def elements(self):
        return [FqElement(v, self) for v in range(self.q)]

    enumerate = elements

    def from_code(self, v):
        return FqElement(v, self)

    def code(self, a):
        return a.v

    def prime_coords(self, a):
        return list(self._dig[a.v])

    def from_prime_coords(self, coords):
        return FqElement(self._code(coords), self)

    def descriptor(self):
        return {"type": "GF", "p": self.p, "k": self.k, "modulus": list(self.modulus), "gen": self.gen_name}

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.p == self.p and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GFk", self.p, self.modulus))


class RatFunc:
    """Reduced fraction num/den of polynomials over Q with monic denominator."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, normalized=False):
        if not normalized:
            num, den = qp_trim(num), qp_trim(den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                den = (mpq(1),)
            elif len(den) > 1:
                g = qp_gcd(num, den)
                if len(g) > 1:
                    num = qp_divmod(num, g)[0]
                    den = qp_divmod(den, g)[0]
            lc = den[-1]
            if lc != 1:
                num = tuple(x / lc for x in num)
                den = tuple(x / lc for x in den)
        self.num = num
        self.den = den
        self.field = field

    def _other(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise FieldMismatchError("mixed-field operands")
            return other
        if isinstance(other, (int, MPQ)):
            return self.field(other)
        if isinstance(other, (FpElement, FqElement)):
            raise FieldMismatchError(f"mixed-field operands Q(t) and {type(other).__name__}")
        return None

    def is_polynomial(self):
        return len(self.den) == 1

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(qp_add(self.num, o.num), self.den, self.field, True)
        if self.den == o.den:
            return RatFunc(qp_add(self.num, o.num), self.den, self.field)
        return RatFunc(qp_add(qp_mul(self.num, o.den), qp_mul(o.num, self.den)), qp_mul(self.den, o.den), self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(qp_neg(self.num), self.den, self.field, True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(qp_mul(self.num, o.num), self.den, self.field, True)
        return RatFunc(qp_mul(self.num, o.num), qp_mul(self.den, o.den), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * self.field.inv(o)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.field.inv(self)

    def __pow__(self, e):
        if e < 0:
            return self.field.inv(self) ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, MPQ)):
            return len(self.den) == 1 and self.num == qp_trim((mpq(other),))
        return False

    def __hash__(self):
        return hash(("Qt", self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return self.field.format(self)


class RationalFunctionField(Field):
    characteristic = 0

    def __init__(self, var="t"):
        self.gen_name = var
        self.name = f"Q({var})"
        self.zero = RatFunc((), (mpq(1),), self, True)
        self.one = RatFunc((mpq(1),), (mpq(1),), self, True)
        self.gen = RatFunc((mpq(0), mpq(1)), (mpq(1),), self, True)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field != self:
                raise FieldMismatchError("mixed-field operands")
            return x
        if isinstance(x, int):
            return RatFunc(qp_trim((mpq(x),)), (mpq(1),), self, True)
        if isinstance(x, MPQ):
            return RatFunc(qp_trim((x,)), (mpq(1),), self, True)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"{x!r} is not an element of {self.name}")

    def from_polys(self, num, den=(1,)):
        return RatFunc(tuple(mpq(c) for c in num), tuple(mpq(c) for c in den), self)

    def contains(self, x):
        return isinstance(x, RatFunc) and x.field == self

    def inv(self, a):
        a = self(a)
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(a.den, a.num, self)

    def format(self, a):
        num = qp_format(a.num, self.gen_name)
        if len(a.den) == 1:
            return num
        den = qp_format(a.den, self.gen_name)
        if not _is_plain(num):
            num = "(" + num + ")"
        if not _is_plain(den):
            den = "(" + den + ")"
        return num + "/" + den

    def enumerate(self):
        t = self.gen
        one = self.one
        yield one
        yield t
        yield one / t
        n = 1
        while True:
            yield t + n
            yield t * t + n - 1 if n > 1 else t * t
            yield one / (t + n)
            yield self(n + 1)
            yield t - n
            n += 1

    def descriptor(self):
        return {"type": "Q(t)", "var": self.gen_name}

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.gen_name == self.gen_name

    def __hash__(self):
        return hash(("Qt", self.gen_name))


def _is_plain(text):
    import re
    return bool(re.match(r"^-?[A-Za-z_0-9]+(\^\d+)?$", text))


@lru_cache(maxsize=None)
def GF(p, k=1, modulus=None, gen_name="a"):
    """Finite field of order p^k; Conway-style modulus by default."""
    if k == 1 and modulus is None:
        return PrimeField(p)
    if modulus is None:
        if (p, k) in CONWAY:
            modulus = tuple(CONWAY[(p, k)])
        else:
            modulus = _first_irreducible(p, k)
    return ExtensionField(p, list(modulus), gen_name)


def _first_irreducible(p, k):
    for tail in product(range(p), repeat=k):
        m = list(reversed(tail)) + [1]
        if m[0] and fp_is_irreducible_exhaustive(m, p):
            return tuple(m)
    raise UnsupportedRingError(f"no irreducible polynomial of degree {k} over GF({p})")


@lru_cache(maxsize=None)
def QQt(var="t"):
    return RationalFunctionField(var)


# ---------------------------------------------------------------------------
# twists

def _finite_field(field):
    return getattr(field, "is_finite", False)


class Twist:
    kind = "?"
    is_bijective = True
    order = None

    def __init__(self, field):
        self.field = field

    def is_identity(self):
        return False

    def apply(self, a, n=1):
        """sigma^n(a); negative n needs a bijective twist."""
        if n >= 0:
            for _ in range(n):
                a = self(a)
            return a
        inv = self.inverse()
        for _ in range(-n):
            a = inv(a)
        return a

    def inverse(self):
        raise NotBijectiveError(f"{self.kind} twist is not invertible")


class IdentityTwist(Twist):
    kind = "identity"
    order = 1

    def __call__(self, a):
        return a

    def is_identity(self):
        return True

    def apply(self, a, n=1):
        return a

    def inverse(self):
        return self

    def descriptor(self):
        return {"type": "identity"}


class TableTwist(Twist):
    """Endomorphism of a finite field given by the image of its generator."""

    kind = "table"

    def __init__(self, field, image, kind="table", power=None):
        super().__init__(field)
        if not _finite_field(field):
            raise UnsupportedRingError("table twists need a finite field")
        self.kind = kind
        self.power = power
        image = field(image)
        self.image = image
        if isinstance(field, PrimeField):
            table = list(range(field.p))
            if image != field.one:
                raise UnsupportedRingError("the only endomorphism of a prime field is the identity")
        else:
            # sigma(sum c_i a^i) = sum c_i image^i; check m(image) = 0
            val = field.zero
            pw = field.one
            for c in field.modulus:
                val = val + pw * c
                pw = pw * image
            if val:
                raise UnsupportedRingError("generator image is not a root of the modulus")
            powers = [field.one]
            for _ in range(field.k - 1):
                powers.append(powers[-1] * image)
            table = []
            for v in range(field.q):
                acc = field.zero
                for c, pw in zip(field._dig[v], powers):
                    if c:
                        acc = acc + pw * c
                table.append(acc.v)
        self.table = table
        self.is_bijective = len(set(table)) == len(table)
        self.order = None
        if self.is_bijective:
            cur = list(range(len(table)))
            for m in range(1, len(table) + 1):
                cur = [table[c] for c in cur]
                if all(cur[i] == i for i in range(len(table))):
                    self.order = m
                    break

    def __call__(self, a):
        a = self.field(a)
        return self.field.from_code(self.table[a.v])

    def is_identity(self):
        return all(self.table[i] == i for i in range(len(self.table)))

    def apply(self, a, n=1):
        a = self.field(a)
        if self.order:
            n %= self.order
        elif n < 0:
            raise NotBijectiveError("twist is not invertible")
        v = a.v
        for _ in range(n):
            v = self.table[v]
        return self.field.from_code(v)

    def inverse(self):
        if not self.is_bijective:
            raise NotBijectiveError("twist is not bijective")
        inv_table = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv_table[j] = i
        gen = self.field.gen if self.field.gen is not None else self.field.one
        return TableTwist(self.field, self.field.from_code(inv_table[gen.v]))

    def descriptor(self):
        if self.kind == "frobenius":
            return {"type": "frobenius", "power": self.power}
        return {"type": "table", "image": self.field.format(self.image)}


def frobenius(field, power=1):
    if not _finite_field(field):
        raise UnsupportedRingError("Frobenius twist needs a finite field")
    gen = field.gen if field.gen is not None else field.one
    return TableTwist(field, gen ** (field.p ** power), kind="frobenius", power=power)


class ShiftTwist(Twist):
    """t -> t + offset on Q(t)."""

    kind = "shift"

    def __init__(self, field, offset):
        super().__init__(field)
        if not isinstance(field, RationalFunctionField):
            raise UnsupportedRingError("shift twists act on Q(t)")
        self.offset = QQ(offset)
        self.order = 1 if self.offset == 0 else None

    def __call__(self, a):
        a = self.field(a)
        if not self.offset:
            return a
        return RatFunc(qp_compose_shift(a.num, self.offset), qp_compose_shift(a.den, self.offset), self.field)

    def is_identity(self):
        return self.offset == 0

    def apply(self, a, n=1):
        a = self.field(a)
        c = self.offset * n
        if not c:
            return a
        return RatFunc(qp_compose_shift(a.num, c), qp_compose_shift(a.den, c), self.field)

    def inverse(self):
        return ShiftTwist(self.field, -self.offset)

    def descriptor(self):
        return {"type": "shift", "offset": str(self.offset)}


# ---------------------------------------------------------------------------
# derivations

class Derivation:
    kind = "?"
    is_zero = False

    def __init__(self, field, twist):
        self.field = field
        self.twist = twist


class ZeroDerivation(Derivation):
    kind = "zero"
    is_zero = True

    def __call__(self, a):
        return self.field.zero

    def descriptor(self):
        return {"type": "zero"}


class DtDerivation(Derivation):
    """d/dt on Q(t); only a derivation for the identity twist."""

    kind = "d/dt"

    def __init__(self, field, twist):
        super().__init__(field, twist)
        if not isinstance(field, RationalFunctionField):
            raise UnsupportedRingError("d/dt acts on Q(t)")
        if not twist.is_identity():
            raise UnsupportedRingError("d/dt is a sigma-derivation only for sigma = identity")

    def __call__(self, a):
        a = self.field(a)
        if len(a.den) == 1:
            return RatFunc(qp_derivative(a.num), a.den, self.field, True)
        n, d = a.num, a.den
        return RatFunc(qp_sub(qp_mul(qp_derivative(n), d), qp_mul(n, qp_derivative(d))), qp_mul(d, d), self.field)

    def descriptor(self):
        return {"type": "d/dt"}


class CustomDerivation(Derivation):
    """sigma-derivation determined by its value on the field generator."""

    kind = "custom"

    def __init__(self, field, twist, value):
        super().__init__(field, twist)
        self.value = field(value)
        if isinstance(field, RationalFunctionField):
            self._table = None
        elif isinstance(field, ExtensionField):
            self._table = self._finite_table()
        elif isinstance(field, PrimeField):
            if self.value:
                raise UnsupportedRingError("prime fields carry only the zero derivation")
            self._table = [0] * field.p
        else:
            raise UnsupportedRingError(f"custom derivations are not supported over {field.name}")

    def _powers_delta(self, gen, count):
        # delta(g^i) = sigma(g) delta(g^(i-1)) + delta(g) g^(i-1)
        sg = self.twist(gen)
        out = [self.field.zero]
        pw = self.field.one
        for _ in range(1, count):
            out.append(sg * out[-1] + self.value * pw)
            pw = pw * gen
        return out

    def _finite_table(self):
        F = self.field
        dp = self._powers_delta(F.gen, F.k + 1)
        # consistency: delta(m(a)) computed formally must vanish
        check = F.zero
        for c, d in zip(F.modulus, dp):
            check = check + d * c
        if check:
            raise UnsupportedRingError("derivation value is inconsistent with the field modulus")
        table = []
        for v in range(F.q):
            acc = F.zero
            for c, d in zip(F._dig[v], dp):
                if c:
                    acc = acc + d * c
            table.append(acc.v)
        return table

    def _poly(self, coeffs):
        F = self.field
        dp = self._powers_delta(F.gen, len(coeffs))
        acc = F.zero
        for c, d in zip(coeffs, dp):
            if c:
                acc = acc + d * c
        return acc

    def __call__(self, a):
        a = self.field(a)
        if self._table is not None:
            return self.field.from_code(self._table[a.v])
        F = self.field
        num = F.from_polys(a.num)
        dnum = self._poly(a.num)
        if len(a.den) == 1:
            return dnum
        den = F.from_polys(a.den)
        dden = self._poly(a.den)
        den_inv = F.inv(den)
        d_den_inv = -(F.inv(self.twist(den)) * dden * den_inv)
        return self.twist(num) * d_den_inv + dnum * den_inv

    def descriptor(self):
        return {"type": "custom", "value": self.field.format(self.value)}


def apply_ore_data(sigma, delta, a):
    """Return (sigma(a), delta(a))."""
    if sigma.field != delta.field:
        raise FieldMismatchError("twist and derivation act on different fields")
    if not sigma.field.contains(a):
        raise FieldMismatchError(f"{a!r} is not in {sigma.field.name}")
    return sigma(a), delta(a)


def check_ore_data(field, sigma, delta, samples=None):
    """Verify the endomorphism and sigma-Leibniz identities; exhaustive on small finite fields."""
    if samples is None:
        samples = sample_elements(field, 12)
    for a in samples:
        for b in samples:
            if sigma(a * b) != sigma(a) * sigma(b) or sigma(a + b) != sigma(a) + sigma(b):
                raise UnsupportedRingError("twist is not a ring endomorphism")
            if delta(a * b) != sigma(a) * delta(b) + delta(a) * b or delta(a + b) != delta(a) + delta(b):
                raise UnsupportedRingError("derivation violates delta(ab) = sigma(a)delta(b) + delta(a)b")
    if sigma(field.one) != field.one:
        raise UnsupportedRingError("twist does not fix 1")


def sample_elements(field, count):
    if field.is_finite and field.q <= 64:
        return field.elements()
    out = []
    for a in field.enumerate():
        out.append(a)
        if len(out) >= count:
            break
    return out


def field_from_spec(spec):
    """Field from a descriptor dict or a short name such as "QQ", "GF(5)", "GF(2,2)", "Q(t)"."""
    import re
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("type")
        if kind == "Q":
            return QQ
        if kind == "Qt":
            return QQt(spec.get("var", "t"))
        if kind == "GF":
            mod = spec.get("modulus")
            return GF(int(spec["p"]), int(spec.get("k", 1)), tuple(mod) if mod else None, spec.get("gen", "a"))
        raise ParseError(f"unknown field type {kind!r}")
    text = str(spec).replace(" ", "")
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Q|QQ)\((\w+)\)", text)
    if m:
        return QQt(m.group(1))
    m = re.fullmatch(r"(?:GF|F)\((\d+)(?:,(\d+))?\)", text)
    if m:
        p = int(m.group(1))
        k = int(m.group(2) or 1)
        if p < 2 or k < 1:
            raise ParseError(f"GF({p}) is not a field")
        if k == 1:
            # GF(q) for a prime power q
            for base in range(2, p + 1):
                if p % base == 0:
                    break
            e, r = 0, p
            while r % base == 0:
                r //= base
                e += 1
            if r != 1:
                raise ParseError(f"{p} is not a prime power")
            p, k = base, e
        if any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ParseError(f"{p} is not prime")
        return GF(p, k)
    raise ParseError(f"cannot read field {spec!r}")
