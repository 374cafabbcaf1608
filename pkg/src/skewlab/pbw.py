"""PBW algebras over a commutative field.

An algebra on generators x_1, ..., x_n is given by relations

    x_j x_i = q_ji x_i x_j + p_ji        (i < j)

with nonzero scalars q_ji and tails p_ji in standard form.  Elements are
stored as dicts from exponent tuples to nonzero coefficients; a standard
monomial x^a is x_1^a_1 ... x_n^a_n, read left to right.

Orders compare exponents with the last variable most significant, so
e_1 < e_2 < ... < e_n under lex.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
import math

from .coeffs import QQ, field_from_spec
from .errors import InfeasibleError, MathError, ParseError
from .parsing import evaluate, format_term, join_terms, parse_expr


class InvalidAlgebraError(MathError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


# ---------------------------------------------------------------------------
# term orders

class TermOrder:
    """Admissible order on N^n: lex, deglex or weighted (w-degree, then lex)."""

    def __init__(self, kind="deglex", weights=None):
        if kind not in ("lex", "deglex", "weighted"):
            raise ParseError(f"unknown order {kind!r}")
        if kind == "weighted":
            if not weights or any(int(w) != w or w < 1 for w in weights):
                raise ParseError("weights must be integers >= 1")
            weights = tuple(int(w) for w in weights)
        else:
            weights = None
        self.kind = kind
        self.weights = weights

    def key(self, a):
        lex = tuple(reversed(a))
        if self.kind == "lex":
            return lex
        if self.kind == "deglex":
            return (sum(a), lex)
        return (sum(w * e for w, e in zip(self.weights, a)), lex)

    def less(self, a, b):
        return self.key(a) < self.key(b)

    def max(self, exps):
        return max(exps, key=self.key)

    def descriptor(self):
        d = {"type": self.kind}
        if self.weights:
            d["weights"] = list(self.weights)
        return d

    @classmethod
    def from_spec(cls, spec):
        if spec is None:
            return cls()
        if isinstance(spec, TermOrder):
            return spec
        if isinstance(spec, str):
            return cls(spec)
        return cls(spec.get("type", "deglex"), spec.get("weights"))

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        return f"TermOrder({self.kind}{', ' + str(self.weights) if self.weights else ''})"


# ---------------------------------------------------------------------------
# small dict-polynomial helpers (coefficients in a field, keys exponent tuples)

def _addto(acc, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _scaled(d, c):
    return {k: v * c for k, v in d.items()} if c else {}


def _shift(a, i, k=1):
    b = list(a)
    b[i] += k
    return tuple(b)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


class _CommContext:
    """Evaluates an expression as a commutative polynomial (dict)."""

    def __init__(self, field, names):
        self.field = field
        self.names = list(names)
        self.n = len(names)

    def const(self, k):
        return _DictPoly({(0,) * self.n: self.field(k)} if k else {}, self.field)

    def var(self, name):
        if name in self.names:
            return _DictPoly({_unit(self.n, self.names.index(name)): self.field.one}, self.field)
        if name == self.field.gen_name:
            return _DictPoly({(0,) * self.n: self.field.gen}, self.field)
        raise ParseError(f"unknown symbol {name!r}")

    def div(self, a, b):
        c = b.scalar()
        return a * _DictPoly({(0,) * self.n: self.field.inv(c)}, self.field)

    def inverse(self, a):
        return _DictPoly({(0,) * self.n: self.field.inv(a.scalar())}, self.field)


class _DictPoly:
    __slots__ = ("d", "field")

    def __init__(self, d, field):
        self.d = d
        self.field = field

    def scalar(self):
        if not self.d:
            raise ZeroDivisionError("division by zero")
        if len(self.d) != 1 or any(next(iter(self.d))):
            raise ParseError("division is only defined by nonzero scalars")
        return next(iter(self.d.values()))

    def __add__(self, o):
        out = dict(self.d)
        for k, v in o.d.items():
            _addto(out, k, v)
        return _DictPoly(out, self.field)

    def __neg__(self):
        return _DictPoly({k: -v for k, v in self.d.items()}, self.field)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out = {}
        for a, x in self.d.items():
            for b, y in o.d.items():
                _addto(out, _add_exp(a, b), x * y)
        return _DictPoly(out, self.field)


def parse_standard(field, names, text):
    """Read `text` as a commutative polynomial, i.e. already in standard form."""
    return evaluate(parse_expr(text), _CommContext(field, names)).d


# ---------------------------------------------------------------------------
# the algebra

class PBWAlgebra:
    """k{x_1..x_n; x_j x_i = q_ji x_i x_j + p_ji} with an admissible order."""

    def __init__(self, field, names, relations=None, order=None, check=True):
        self.field = field_from_spec(field)
        self.names = list(names)
        self.n = len(self.names)
        if len(set(self.names)) != self.n or not self.n:
            raise ParseError("generator names must be distinct and non-empty")
        if self.field.gen_name in self.names:
            raise ParseError(f"generator name {self.field.gen_name!r} clashes with the field")
        self.order = TermOrder.from_spec(order)
        if self.order.weights and len(self.order.weights) != self.n:
            raise ParseError("weight vector has the wrong length")
        F = self.field
        n = self.n
        self.q = {}
        self.p = {}
        for j in range(n):
            for i in range(j):
                self.q[(j, i)] = F.one
                self.p[(j, i)] = {}
        for (j, i), (qv, pv) in (relations or {}).items():
            if not (0 <= i < j < n):
                raise ParseError(f"relation index ({j + 1}, {i + 1}) must satisfy 1 <= i < j <= n")
            qv = F(qv)
            if not qv:
                raise MathError(f"q_{j + 1}{i + 1} must be nonzero")
            if isinstance(pv, str):
                pv = parse_standard(F, self.names, pv)
            self.q[(j, i)] = qv
            self.p[(j, i)] = {tuple(k): F(v) for k, v in pv.items() if v}
        self.zero = PBWElement(self, {})
        self.one = PBWElement(self, {(0,) * n: F.one})
        self._varmul = lru_cache(maxsize=None)(self._varmul_impl)
        self._monomul = lru_cache(maxsize=None)(self._monomul_impl)
        if check:
            res = validate(self)
            if not res.valid:
                raise InvalidAlgebraError(res.reason, res)

    # --- construction helpers
    def with_order(self, order, check=False):
        rel = {k: (self.q[k], self.p[k]) for k in self.q}
        return PBWAlgebra(self.field, self.names, rel, order, check=check)

    def gen(self, i):
        return PBWElement(self, {_unit(self.n, i): self.field.one})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, a, c=None):
        c = self.field.one if c is None else self.field(c)
        return PBWElement(self, {tuple(a): c} if c else {})

    def element(self, terms):
        F = self.field
        return PBWElement(self, {tuple(k): F(v) for k, v in dict(terms).items() if F(v)})

    def __call__(self, value):
        if isinstance(value, PBWElement):
            if value.algebra is not self:
                raise MathError("element of a different algebra")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, dict):
            return self.element(value)
        c = self.field(value)
        return PBWElement(self, {(0,) * self.n: c} if c else {})

    def parse(self, text):
        """Products are taken in the written order: parse("d*x") is x*d + 1 in A_1."""
        return evaluate(parse_expr(text), _PBWContext(self))

    def relation(self, j, i):
        """(q_ji, p_ji) as (scalar, PBWElement), 0-based indices with i < j."""
        return self.q[(j, i)], PBWElement(self, dict(self.p[(j, i)]))

    def is_commutative(self):
        return all(q == self.field.one and not self.p[k] for k, q in self.q.items())

    def descriptor(self):
        rels = []
        for (j, i) in sorted(self.q, key=lambda t: (t[0], t[1])):
            qv, pv = self.q[(j, i)], self.p[(j, i)]
            if qv != self.field.one or pv:
                rels.append({"j": j + 1, "i": i + 1, "q": self.field.format(qv), "p": str(PBWElement(self, dict(pv)))})
        return {"family": "pbw", "field": self.field.descriptor(), "vars": self.names,
                "relations": rels, "order": self.order.descriptor()}

    def __repr__(self):
        return f"PBWAlgebra({self.field.name}, {self.names}, {self.order.kind})"

    # --- multiplication
    def _varmul_impl(self, k, g):
        """x_k * x^g as a dict."""
        i = next((t for t in range(k) if g[t]), None)
        if i is None:
            return {_shift(g, k): self.field.one}
        rest = _shift(g, i, -1)
        out = {}
        # x_k x_i x^rest = q x_i (x_k x^rest) + p_ki x^rest
        inner = self._varmul(k, rest)
        qv = self.q[(k, i)]
        for e, c in inner.items():
            for e2, c2 in self._varmul(i, e).items():
                _addto(out, e2, qv * c * c2)
        for a, c in self.p[(k, i)].items():
            for e2, c2 in self._monomul(a, rest).items():
                _addto(out, e2, c * c2)
        return out

    def _monomul_impl(self, a, b):
        """x^a * x^b as a dict."""
        if not any(b):
            return {a: self.field.one}
        j = next((t for t in range(self.n - 1, -1, -1) if a[t]), None)
        if j is None:
            return {b: self.field.one}
        lo = next(t for t in range(self.n) if b[t])
        if j <= lo:
            return {_add_exp(a, b): self.field.one}
        out = {}
        head = _shift(a, j, -1)
        for e, c in self._varmul(j, b).items():
            for e2, c2 in self._monomul(head, e).items():
                _addto(out, e2, c * c2)
        return out

    def mul_dicts(self, f, g):
        out = {}
        for a, x in f.items():
            for b, y in g.items():
                xy = x * y
                for e, c in self._monomul(a, b).items():
                    _addto(out, e, xy * c)
        return out


class _PBWContext:
    def __init__(self, algebra):
        self.A = algebra

    def const(self, k):
        return self.A(k)

    def var(self, name):
        if name in self.A.names:
            return self.A.gen(self.A.names.index(name))
        F = self.A.field
        if name == F.gen_name:
            return PBWElement(self.A, {(0,) * self.A.n: F.gen})
        raise ParseError(f"unknown symbol {name!r}")

    def div(self, a, b):
        return a * self.inverse(b)

    def inverse(self, b):
        c = b.scalar_value()
        if c is None:
            raise ParseError("division is only defined by nonzero scalars")
        return self.A(self.A.field.inv(c))


class PBWElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    # --- accessors
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def exp(self):
        if not self.terms:
            return None
        return self.algebra.order.max(self.terms)

    def lc(self):
        e = self.exp()
        return self.terms[e] if e is not None else self.algebra.field.zero

    def lm(self):
        e = self.exp()
        return self.algebra.monomial(e) if e is not None else self.algebra.zero

    def newton(self):
        return set(self.terms)

    def total_degree(self):
        return max((sum(a) for a in self.terms), default=-1)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.algebra.field.inv(self.lc()))

    def scalar_value(self):
        if not self.terms:
            return None
        if len(self.terms) == 1:
            (a, c), = self.terms.items()
            if not any(a):
                return c
        return None

    def scale(self, c):
        c = self.algebra.field(c)
        return PBWElement(self.algebra, _scaled(self.terms, c))

    # --- arithmetic
    def _coerce(self, other):
        if isinstance(other, PBWElement):
            if other.algebra is not self.algebra:
                raise MathError("elements of different algebras")
            return other
        return self.algebra(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            _addto(out, k, v)
        return PBWElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PBWElement):
            try:
                c = self.algebra.field(other)
            except Exception:
                return NotImplemented
            return self.scale(c)
        o = self._coerce(other)
        return PBWElement(self.algebra, self.algebra.mul_dicts(self.terms, o.terms))

    def __rmul__(self, other):
        try:
            c = self.algebra.field(other)
        except Exception:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, e):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra is other.algebra and self.terms == other.terms
        try:
            return self == self.algebra(other)
        except Exception:
            return False

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms from the largest exponent down."""
        key = self.algebra.order.key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def __str__(self):
        A = self.algebra
        out = []
        for a, c in self.sorted_terms():
            mono = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in zip(A.names, a) if e)
            out.append(format_term(A.field.format(c), mono))
        return join_terms(out)

    def __repr__(self):
        return f"PBWElement({self})"


def monomial_scalar(algebra, a, b):
    """x^a x^b = q x^(a+b) + tail; returns (q, tail)."""
    a, b = tuple(a), tuple(b)
    prod = dict(algebra._monomul(a, b))
    s = _add_exp(a, b)
    qv = prod.pop(s, algebra.field.zero)
    return qv, PBWElement(algebra, prod)


def multiply(f, g):
    return f * g


# ---------------------------------------------------------------------------
# validation via an independent word-rewriting engine

class ValidationResult:
    def __init__(self, valid, reason="", overlap=None, left=None, right=None):
        self.valid = valid
        self.reason = reason
        self.overlap = overlap
        self.left = left
        self.right = right

    def __bool__(self):
        return self.valid

    def to_json(self):
        d = {"valid": self.valid}
        if not self.valid:
            d["reason"] = self.reason
            if self.overlap is not None:
                d["overlap"] = self.overlap
            if self.left is not None:
                d["left"] = str(self.left)
                d["right"] = str(self.right)
                d["difference"] = str(self.left - self.right)
        return d


class _WordRewriter:
    """Normal forms of words in the generators, rewriting one adjacent pair at a time."""

    def __init__(self, algebra, limit=200000):
        self.A = algebra
        self.limit = limit
        # tails as words: p_ji -> list of (word, coeff)
        self.tails = {}
        for k, pv in algebra.p.items():
            self.tails[k] = [(_exp_to_word(a), c) for a, c in pv.items()]

    def _pick(self, word):
        # the misordered adjacent pair x_j x_i (j > i) with the largest e_i + e_j; ties go left
        best = None
        for pos in range(len(word) - 1):
            j, i = word[pos], word[pos + 1]
            if j > i:
                key = self.A.order.key(_add_exp(_unit(self.A.n, i), _unit(self.A.n, j)))
                if best is None or key > best[0]:
                    best = (key, pos)
        return None if best is None else best[1]

    def normal_form(self, words):
        """words: dict word -> coeff.  Returns a dict exponent -> coeff."""
        todo = dict(words)
        done = {}
        steps = 0
        while todo:
            w, c = todo.popitem()
            pos = self._pick(w)
            if pos is None:
                _addto(done, _word_to_exp(w, self.A.n), c)
                continue
            steps += 1
            if steps > self.limit:
                raise MathError("rewriting did not terminate within the step limit")
            j, i = w[pos], w[pos + 1]
            pre, post = w[:pos], w[pos + 2:]
            _addto(todo, pre + (i, j) + post, c * self.A.q[(j, i)])
            for tw, tc in self.tails[(j, i)]:
                _addto(todo, pre + tw + post, c * tc)
        return done

    def apply_at(self, word, pos):
        """Rewrite the pair at `pos` once (it must be misordered)."""
        j, i = word[pos], word[pos + 1]
        pre, post = word[:pos], word[pos + 2:]
        out = {}
        _addto(out, pre + (i, j) + post, self.A.q[(j, i)])
        for tw, tc in self.tails[(j, i)]:
            _addto(out, pre + tw + post, tc)
        return out


def _exp_to_word(a):
    w = []
    for i, e in enumerate(a):
        w.extend([i] * e)
    return tuple(w)


def _word_to_exp(w, n):
    a = [0] * n
    for i in w:
        a[i] += 1
    return tuple(a)


def validate(algebra):
    """Boundedness of every p_ji and resolution of every overlap x_k x_j x_i."""
    A = algebra
    n = A.n
    for (j, i), pv in sorted(A.p.items()):
        if pv:
            e = A.order.max(pv)
            if not A.order.less(e, _add_exp(_unit(n, i), _unit(n, j))):
                return ValidationResult(
                    False, f"relation x{j + 1} x{i + 1} is not bounded: exp(p) = {list(e)}",
                    overlap=[j + 1, i + 1])
    rw = _WordRewriter(A)
    for k in range(n):
        for j in range(k):
            for i in range(j):
                w = (k, j, i)
                left = rw.normal_form(rw.apply_at(w, 0))
                right = rw.normal_form(rw.apply_at(w, 1))
                if left != right:
                    L, R = PBWElement(A, left), PBWElement(A, right)
                    names = A.names
                    return ValidationResult(
                        False,
                        f"overlap {names[k]}*{names[j]}*{names[i]} reduces to two different standard forms",
                        overlap=[k + 1, j + 1, i + 1], left=L, right=R)
    return ValidationResult(True)


def validate_data(field, names, relations, order=None):
    """validate() on raw data without raising."""
    try:
        A = PBWAlgebra(field, names, relations, order, check=False)
    except MathError as exc:
        return ValidationResult(False, str(exc))
    return validate(A)


def normal_form_of_word(algebra, word):
    """Independent evaluation of a product of generators (a word of 0-based indices)."""
    return PBWElement(algebra, _WordRewriter(algebra).normal_form({tuple(word): algebra.field.one}))


# ---------------------------------------------------------------------------
# weight vectors

def weight_cone(algebra_or_relations, n=None):
    """C_Q = {delta - e_i - e_j : delta in N(p_ji)} as a sorted list of tuples."""
    if isinstance(algebra_or_relations, PBWAlgebra):
        A = algebra_or_relations
        items = [((j, i), set(pv)) for (j, i), pv in A.p.items()]
    else:
        items = [((j, i), set(map(tuple, exps))) for (j, i), exps in algebra_or_relations.items()]
    cone = set()
    for (j, i), exps in items:
        for d in exps:
            g = list(d)
            g[i] -= 1
            g[j] -= 1
            cone.add(tuple(g))
    return sorted(cone)


def weight_vector(algebra_or_relations, n=None):
    """Integer w >= 1 with <w, g> <= -1 on C_Q and minimal coordinate sum."""
    if isinstance(algebra_or_relations, PBWAlgebra):
        n = algebra_or_relations.n
    cone = weight_cone(algebra_or_relations, n)
    if any(not any(g) for g in cone):
        raise InfeasibleError("a tail contains the exponent e_i + e_j itself; no weight bounds it")
    if any(all(x >= 0 for x in g) for g in cone):
        raise InfeasibleError("a tail exponent dominates e_i + e_j; no weight bounds it")
    # w = 1 + u, u >= 0:  <g, u> <= -1 - <g, 1>
    A = [list(g) for g in cone]
    b = [Fraction(-1 - sum(g)) for g in cone]
    c = [Fraction(1)] * n
    w = _integer_minimum(A, b, c, n)
    if w is None:
        raise InfeasibleError("the weight polyhedron is empty")
    w = tuple(1 + x for x in w)
    assert all(sum(a * x for a, x in zip(g, w)) <= -1 for g in cone)
    return w


def check_weight(algebra, w):
    """Strict inequalities deg_w(p_ji) < w_i + w_j and w_i >= 1."""
    if len(w) != algebra.n or any(int(x) != x or x < 1 for x in w):
        return False
    return all(sum(a * x for a, x in zip(g, w)) < 0 for g in weight_cone(algebra))


def weight_bruteforce(algebra_or_relations, n=None, box=5):
    """Minimal-sum w in {1..box}^n by exhaustive search, or None."""
    if isinstance(algebra_or_relations, PBWAlgebra):
        n = algebra_or_relations.n
    cone = weight_cone(algebra_or_relations, n)
    best = None
    for w in product(range(1, box + 1), repeat=n):
        if all(sum(a * x for a, x in zip(g, w)) <= -1 for g in cone):
            if best is None or (sum(w), w) < (sum(best), best):
                best = w
    return best


def _simplex(A, b, c):
    """min c.u subject to A u <= b, u >= 0, exact over Fractions.

    Two-phase tableau with Bland's rule.  Returns (value, u) or None when
    infeasible.  The problems here are bounded below (c >= 0).
    """
    m = len(A)
    n = len(c)
    # rows with negative rhs are flipped to >= and get an artificial variable
    ncols = n + m  # structural + slack/surplus
    art = [r for r in range(m) if b[r] < 0]
    total = ncols + len(art)
    T = []
    basis = []
    for r in range(m):
        sign = -1 if b[r] < 0 else 1
        row = [Fraction(sign * A[r][k]) for k in range(n)]
        row += [Fraction(0)] * m
        row[n + r] = Fraction(sign)
        row += [Fraction(0)] * len(art)
        if sign < 0:
            row[ncols + art.index(r)] = Fraction(1)
            basis.append(ncols + art.index(r))
        else:
            basis.append(n + r)
        row.append(Fraction(sign) * b[r])
        T.append(row)

    def pivot(r, col):
        pv = T[r][col]
        T[r] = [x / pv for x in T[r]]
        for rr in range(m):
            if rr != r and T[rr][col]:
                f = T[rr][col]
                T[rr] = [x - f * y for x, y in zip(T[rr], T[r])]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs
            red = []
            for col in range(allowed):
                z = cost[col] - sum(cost[basis[r]] * T[r][col] for r in range(m))
                red.append(z)
            enter = next((col for col in range(allowed) if red[col] < 0), None)
            if enter is None:
                return True
            best = None
            for r in range(m):
                if T[r][enter] > 0:
                    ratio = T[r][-1] / T[r][enter]
                    if best is None or (ratio, basis[r]) < (best[0], basis[best[1]]):
                        best = (ratio, r)
            if best is None:
                return False
            pivot(best[1], enter)

    if art:
        cost1 = [Fraction(0)] * ncols + [Fraction(1)] * len(art)
        run(cost1, total)
        if sum(T[r][-1] for r in range(m) if basis[r] >= ncols) > 0:
            return None
        # drive remaining artificial variables out of the basis
        for r in range(m):
            if basis[r] >= ncols:
                col = next((k for k in range(ncols) if T[r][k]), None)
                if col is not None:
                    pivot(r, col)
    cost2 = list(c) + [Fraction(0)] * (total - n)
    if not run(cost2, ncols):
        raise MathError("unbounded linear program")
    u = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            u[basis[r]] = T[r][-1]
    return sum(ci * ui for ci, ui in zip(c, u)), u


def _integer_minimum(A, b, c, n):
    """Branch and bound over _simplex; c is integral and nonnegative."""
    first = _simplex(A, b, c)
    if first is None:
        return None
    _, u = first
    # scaling a rational solution of the homogeneous-in-w problem gives an incumbent
    den = 1
    for x in u:
        den = den * x.denominator // math.gcd(den, x.denominator)
    w = [(1 + x) * den for x in u]
    inc = [int(x) - 1 for x in w]
    inc_val = sum(ci * x for ci, x in zip(c, inc))
    stack = [([], [])]
    while stack:
        extra_a, extra_b = stack.pop()
        res = _simplex(A + extra_a, b + extra_b, c)
        if res is None:
            continue
        val, u = res
        if math.ceil(val) >= inc_val:
            continue
        frac = next((k for k in range(n) if u[k].denominator != 1), None)
        if frac is None:
            ui = [int(x) for x in u]
            inc, inc_val = ui, val
            continue
        lo = math.floor(u[frac])
        row_le = [1 if k == frac else 0 for k in range(n)]
        row_ge = [-1 if k == frac else 0 for k in range(n)]
        stack.append((extra_a + [row_ge], extra_b + [Fraction(-(lo + 1))]))
        stack.append((extra_a + [row_le], extra_b + [Fraction(lo)]))
    return inc


# ---------------------------------------------------------------------------
# iterated Ore extensions

def from_iterated_ore(field, names, tower, order="lex"):
    """Algebra of k[x_1][x_2; s_2, d_2]...[x_n; s_n, d_n].

    `tower` maps a 0-based index j to {"sigma": {i: expr}, "delta": {i: expr}}
    describing s_j(x_i) and d_j(x_i) for i < j; missing entries mean s_j(x_i) = x_i
    and d_j(x_i) = 0.  s_j(x_i) must read q x_i + f with f a polynomial in
    x_1..x_{i-1}.  `order` is "lex" or "weighted" (computed weight vector).
    """
    F = field_from_spec(field)
    names = list(names)
    n = len(names)
    rel = {}
    for j in range(n):
        spec = tower.get(j, tower.get(str(j), {})) if tower else {}
        sig = {int(k): v for k, v in (spec.get("sigma") or {}).items()}
        dlt = {int(k): v for k, v in (spec.get("delta") or {}).items()}
        for i in list(sig) + list(dlt):
            if not 0 <= i < j:
                raise ParseError(f"twist data for x{j + 1} may only refer to earlier generators")
        for i in range(j):
            s = parse_standard(F, names, sig[i]) if i in sig else {_unit(n, i): F.one}
            d = parse_standard(F, names, dlt[i]) if i in dlt else {}
            qv = s.pop(_unit(n, i), F.zero)
            if not qv:
                raise MathError(f"sigma_{j + 1}(x{i + 1}) has no q*x{i + 1} term")
            for a in s:
                if any(a[t] for t in range(i, n)):
                    raise MathError(
                        f"sigma_{j + 1}(x{i + 1}) must be q*x{i + 1} + f with f in the earlier generators")
            for a in d:
                if any(a[t] for t in range(j, n)):
                    raise MathError(f"delta_{j + 1}(x{i + 1}) must involve only x1..x{j}")
            tail = {}
            for a, c in s.items():
                _addto(tail, _shift(a, j), c)
            for a, c in d.items():
                _addto(tail, a, c)
            rel[(j, i)] = (qv, tail)
    A = PBWAlgebra(F, names, rel, "lex", check=True)
    if order == "lex":
        return A
    if order == "weighted":
        return A.with_order(TermOrder("weighted", weight_vector(A)), check=True)
    return A.with_order(TermOrder.from_spec(order), check=True)


# ---------------------------------------------------------------------------
# named algebras

def weyl(n_pairs=1, field=QQ, order="deglex"):
    """A_n on x1..xn, d1..dn with d_i x_i = x_i d_i + 1."""
    if n_pairs == 1:
        names = ["x", "d"]
    else:
        names = [f"x{i}" for i in range(1, n_pairs + 1)] + [f"d{i}" for i in range(1, n_pairs + 1)]
    rel = {(n_pairs + i, i): (1, {(0,) * (2 * n_pairs): 1}) for i in range(n_pairs)}
    F = field_from_spec(field)
    rel = {k: (F(q), {a: F(c) for a, c in p.items()}) for k, (q, p) in rel.items()}
    return PBWAlgebra(F, names, rel, order)


def quantum_plane(q=2, field=QQ, order="deglex"):
    F = field_from_spec(field)
    return PBWAlgebra(F, ["x", "y"], {(1, 0): (F(q), {})}, order)


def polynomial_ring(names, field=QQ, order="deglex"):
    return PBWAlgebra(field, names, {}, order)


def sl2(field=QQ, order="deglex"):
    F = field_from_spec(field)
    names = ["e", "f", "h"]
    rel = {
        (1, 0): (1, "-h"),
        (2, 0): (1, "2*e"),
        (2, 1): (1, "-2*f"),
    }
    return PBWAlgebra(F, names, rel, order)


def algebra_from_json(doc):
    """Build from {"field", "vars", "relations": [{"j","i","q","p"}], "order"}; indices are 1-based."""
    if "vars" not in doc:
        raise ParseError("PBW spec needs 'vars'")
    F = field_from_spec(doc.get("field", "QQ"))
    names = doc["vars"]
    if "tower" in doc:
        tower = {}
        for k, v in doc["tower"].items():
            tower[int(k) - 1] = {
                part: {int(i) - 1: e for i, e in (v.get(part) or {}).items()} for part in ("sigma", "delta")
            }
        order = doc.get("order", "lex")
        if isinstance(order, dict):
            order = order.get("type", "lex") if order.get("type") != "weighted" or "weights" not in order else order
        return from_iterated_ore(F, names, tower, order)
    rel = {}
    for r in doc.get("relations", []):
        try:
            j, i = int(r["j"]) - 1, int(r["i"]) - 1
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"relation needs integer 'j' and 'i': {r!r}") from None
        rel[(j, i)] = (F.parse(str(r.get("q", "1"))), str(r.get("p", "0")))
    return PBWAlgebra(F, names, rel, doc.get("order"), check=doc.get("check", True))
