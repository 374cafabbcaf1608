"""Stable subsets of N^(n,(m)), Hilbert functions, GK dimension and grade.

The Hilbert function of E counts the points (alpha, i) outside E with
|alpha| <= s.  Unweighted values come from inclusion-exclusion over joins of
basis elements; weighted values from lattice enumeration.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import MathError
from .groebner import ModuleElement, ModuleOrder, buchberger, minimal_basis
from .kernels import lattice_histogram
from .matrix import Matrix
from .pbw import PBWElement, TermOrder, check_weight, weight_vector

NEG_INF = float("-inf")
MAX_HITTING_VARS = 12


def _join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _le(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(basis):
    """Antichain of the minimal elements of `basis` (duplicates removed)."""
    pts = sorted(set(tuple(b) for b in basis), key=lambda a: (sum(a), a))
    out = []
    for a in pts:
        if not any(_le(b, a) for b in out):
            out.append(a)
    return out


class StableSet:
    """E = union over levels i of (0, i) + E_i with E_i = B_i + N^n."""

    def __init__(self, n, bases, w=None):
        self.n = n
        self.bases = [minimalize(b) for b in bases]
        self.w = tuple(w) if w is not None else None

    @property
    def rank(self):
        return len(self.bases)

    def contains(self, alpha, level):
        return any(_le(b, alpha) for b in self.bases[level])

    def to_json(self):
        return {"n": self.n, "bases": [[list(b) for b in B] for B in self.bases]}

    def __repr__(self):
        return f"StableSet(n={self.n}, bases={self.bases})"


# ---------------------------------------------------------------------------
# Hilbert functions

def _incex_terms(basis):
    """{join: coefficient} with #(E and |a| <= s) = sum c * C(n + s - |join|, n)."""
    terms = {}
    for b in basis:
        new = dict(terms)
        new[b] = new.get(b, 0) + 1
        for a, c in terms.items():
            j = _join(a, b)
            new[j] = new.get(j, 0) - c
        terms = {k: v for k, v in new.items() if v}
    return terms


def _level_hf(n, basis, s, terms=None):
    total = comb(n + s, n)
    if terms is None:
        terms = _incex_terms(basis)
    inside = 0
    for a, c in terms.items():
        d = sum(a)
        if s >= d:
            inside += c * comb(n + s - d, n)
    return total - inside


def hilbert_function(E, s, w=None):
    """Number of (alpha, i) outside E with <w, alpha> <= s (w = 1 by default)."""
    if s < 0:
        return 0
    if w is None or all(x == 1 for x in w):
        return sum(_level_hf(E.n, B, s) for B in E.bases)
    return sum(sum(lattice_histogram(B, E.n, s, list(w))) for B in E.bases)


def hilbert_values(E, s_max, w=None):
    """[HF(0), ..., HF(s_max)]."""
    if w is None or all(x == 1 for x in w):
        terms = [_incex_terms(B) for B in E.bases]
        return [sum(_level_hf(E.n, B, s, t) for B, t in zip(E.bases, terms)) for s in range(s_max + 1)]
    hist = [0] * (s_max + 1)
    for B in E.bases:
        for k, c in enumerate(lattice_histogram(B, E.n, s_max, list(w))):
            hist[k] += c
    out, acc = [], 0
    for c in hist:
        acc += c
        out.append(acc)
    return out


def lattice_count(E, s, w=None):
    """Brute-force count, used as an independent check."""
    w = w or (1,) * E.n
    return sum(sum(lattice_histogram(B, E.n, s, list(w))) for B in E.bases)


def threshold(E):
    """s_0 = max over levels of |join of the whole basis|."""
    s0 = 0
    for B in E.bases:
        if B:
            j = B[0]
            for b in B[1:]:
                j = _join(j, b)
            s0 = max(s0, sum(j))
    return s0


# ---------------------------------------------------------------------------
# dimension

def _hitting_number(n, basis):
    """Smallest |sigma| meeting supp(b) for every b, or None when some b = 0."""
    supports = [frozenset(i for i in range(n) if b[i]) for b in basis]
    if any(not sp for sp in supports):
        return None
    if not supports:
        return 0
    if n > MAX_HITTING_VARS:
        raise MathError(f"hitting-set search is limited to {MAX_HITTING_VARS} variables")
    for k in range(1, n + 1):
        for sigma in combinations(range(n), k):
            ss = set(sigma)
            if all(ss & sp for sp in supports):
                return k
    raise AssertionError("unreachable: the full index set meets every support")


def dimension_degree(E):
    """max over levels of n - (minimal hitting set size); -inf when E is everything."""
    best = NEG_INF
    for B in E.bases:
        h = _hitting_number(E.n, B)
        if h is not None:
            best = max(best, E.n - h)
    return best


class HilbertData:
    def __init__(self, w, threshold, coefficients, samples):
        self.w = w
        self.threshold = threshold
        self.coefficients = coefficients
        self.samples = samples

    @property
    def degree(self):
        for k in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[k]:
                return k
        return NEG_INF

    def __call__(self, s):
        return sum(c * s ** k for k, c in enumerate(self.coefficients))

    def to_json(self):
        deg = self.degree
        return {
            "degree": "-inf" if deg == NEG_INF else deg,
            "threshold": self.threshold,
            "coefficients": [str(c) for c in self.coefficients],
            "samples": self.samples,
            "weights": list(self.w) if self.w else None,
        }


def _interpolate(xs, ys):
    """Coefficients (low first) of the polynomial through the points, exactly."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j != i:
                basis = [Fraction(0)] + basis
                for t in range(len(basis) - 1):
                    basis[t] -= xs[j] * basis[t + 1]
                denom *= xs[i] - xs[j]
        for t in range(k):
            coeffs[t] += Fraction(ys[i]) * basis[t] / denom
    return coeffs


def hilbert_polynomial(E):
    """HP_E by interpolation at s_0, ..., s_0 + n (n + 1 points for degree <= n)."""
    s0 = threshold(E)
    n = E.n
    samples = hilbert_values(E, s0 + n)
    xs = list(range(s0, s0 + n + 1))
    coeffs = _interpolate(xs, [samples[x] for x in xs])
    data = HilbertData(E.w, s0, coeffs, samples)
    if data.degree != dimension_degree(E):
        raise AssertionError("Hilbert polynomial degree disagrees with the hitting-set count")
    return data


# ---------------------------------------------------------------------------
# modules over PBW algebras

def weighted_algebra(A, w=None):
    if w is None:
        w = weight_vector(A)
    elif not check_weight(A, w):
        raise MathError(f"weight vector {list(w)} does not bound the relations")
    return A.with_order(TermOrder("weighted", w)), tuple(w)


def _rows(P):
    A = P.A if hasattr(P, "A") else P
    return A


def exp_set(P, algebra=None, w=None):
    """Exp(K) for K = rows of the relation matrix, computed under <=_w (TOP)."""
    M = _rows(P)
    A = algebra or M.ring
    B, w = weighted_algebra(A, w)
    t = M.ncols
    elems = []
    for row in M.rows:
        e = ModuleElement(B, t, {(a, lev): c for lev, f in enumerate(row) for a, c in f.terms.items()})
        if e:
            elems.append(e)
    bases = [[] for _ in range(t)]
    if elems:
        order = ModuleOrder(B.order, "TOP")
        gb = buchberger(elems, order, track=False)
        for k in minimal_basis(gb):
            a, lev = gb.G[k].exp(order)
            bases[lev].append(a)
    return StableSet(A.n, bases, w)


def gk_dimension(P, w=None):
    M = _rows(P)
    if M.ncols == 0:
        return NEG_INF
    return dimension_degree(exp_set(M, None, w))


def grade_number(P, w=None):
    M = _rows(P)
    d = gk_dimension(M, w)
    if d == NEG_INF:
        raise MathError("the grade number of the zero module is undefined")
    return M.ring.n - d


def relations_matrix(A, rows, t=None):
    """Convenience: a Matrix over A from strings or elements."""
    rows = [[A(e) if not isinstance(e, PBWElement) else e for e in r] for r in rows]
    return Matrix(A, rows, t if t is not None else (len(rows[0]) if rows else 1))
