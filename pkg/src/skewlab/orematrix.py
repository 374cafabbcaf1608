"""Normal forms of matrices over D[x; sigma, delta]: echelon, diagonal, Jacobson.

Every transform is recorded as a TransformLog of elementary operations so
that P (and Q) can be rebuilt and checked independently.
"""

import os
from dataclasses import dataclass, field

from .errors import NotBijectiveError, UnsupportedRingError, WitnessCapExceeded
from .kernels import nullspace_mod_p
from .matrix import Matrix
from .orepoly import OrePoly, _left_divide, _right_divide, lcm_cofactor, lrem, mul, rrem

OreMatrix = Matrix


@dataclass
class TransformLog:
    """Elementary operations on rows (left multiplication) or columns (right multiplication).

    ("swap", i, j); ("add", i, q, j): row_i += q*row_j, or col_i += col_j*q;
    ("scale", i, u): row_i = u*row_i, or col_i = col_i*u, with u a unit.
    """

    side: str
    size: int
    ops: list = field(default_factory=list)

    def replay(self, ring):
        M = [list(r) for r in Matrix.identity(ring, self.size).rows]
        for op in self.ops:
            _apply(M, self.side, op)
        return Matrix(ring, M, self.size)

    def inverse(self, ring):
        """P^-1 (or Q^-1), by undoing the operations in reverse order."""
        M = [list(r) for r in Matrix.identity(ring, self.size).rows]
        for op in reversed(self.ops):
            _apply(M, self.side, _undo(ring, op))
        return Matrix(ring, M, self.size)

    def to_json(self):
        out = []
        for op in self.ops:
            if op[0] == "swap":
                out.append(["swap", op[1], op[2]])
            elif op[0] == "add":
                out.append(["add", op[1], str(op[2]), op[3]])
            else:
                out.append(["scale", op[1], str(op[2])])
        return out


def _undo(ring, op):
    if op[0] == "swap":
        return op
    if op[0] == "add":
        return ("add", op[1], -op[2], op[3])
    u = op[2]
    return ("scale", op[1], OrePoly(u.ring, (u.ring.field.inv(u.c[0]),)))


def _apply(M, side, op):
    # for the inverse of a row log we left-multiply, so rows again; columns likewise act on the right
    kind = op[0]
    if side == "row":
        if kind == "swap":
            M[op[1]], M[op[2]] = M[op[2]], M[op[1]]
        elif kind == "add":
            i, q, j = op[1], op[2], op[3]
            M[i] = [a + mul(q, b) if b else a for a, b in zip(M[i], M[j])]
        else:
            i, u = op[1], op[2]
            M[i] = [mul(u, a) for a in M[i]]
    else:
        if kind == "swap":
            i, j = op[1], op[2]
            for row in M:
                row[i], row[j] = row[j], row[i]
        elif kind == "add":
            i, q, j = op[1], op[2], op[3]
            for row in M:
                if row[j]:
                    row[i] = row[i] + mul(row[j], q)
        else:
            i, u = op[1], op[2]
            for row in M:
                row[i] = mul(row[i], u)


class _Work:
    """Mutable matrix with row/column logs and the running P and Q."""

    def __init__(self, A):
        self.ring = A.ring
        self.t, self.m = A.shape
        self.M = [list(r) for r in A.rows]
        self.rowlog = TransformLog("row", self.t)
        self.collog = TransformLog("col", self.m)
        self.P = [list(r) for r in Matrix.identity(self.ring, self.t).rows]
        self.Q = [list(r) for r in Matrix.identity(self.ring, self.m).rows]

    def row(self, op):
        self.rowlog.ops.append(op)
        _apply(self.M, "row", op)
        _apply(self.P, "row", op)

    def col(self, op):
        self.collog.ops.append(op)
        _apply(self.M, "col", op)
        _apply(self.Q, "col", op)

    def matrices(self):
        ring = self.ring
        return Matrix(ring, self.P, self.t), Matrix(ring, self.M, self.m), Matrix(ring, self.Q, self.m)

    def make_monic_row(self, i, j):
        a = self.M[i][j]
        if a and not a.is_monic():
            u = OrePoly(self.ring, (self.ring.field.inv(a.lc()),))
            self.row(("scale", i, u))


@dataclass
class EchelonResult:
    P: Matrix
    B: Matrix
    kernel_rows: list
    rank: int
    log: TransformLog

    def __iter__(self):
        return iter((self.P, self.B, self.kernel_rows))


def row_echelon(A):
    """P*A = B in staircase form; the last t - r rows of P span the left kernel."""
    w = _Work(A)
    M = w.M
    r = 0
    for c in range(w.m):
        if r == w.t:
            break
        found = False
        while True:
            cand = [i for i in range(r, w.t) if M[i][c]]
            if not cand:
                break
            found = True
            piv = min(cand, key=lambda i: (M[i][c].degree(), i))
            if piv != r:
                w.row(("swap", r, piv))
            clean = True
            for i in range(r + 1, w.t):
                if M[i][c]:
                    q, rem = _left_divide(M[i][c], M[r][c])
                    if q:
                        w.row(("add", i, -q, r))
                    if rem:
                        clean = False
            if clean:
                break
        if found:
            w.make_monic_row(r, c)
            r += 1
    P, B, _ = w.matrices()
    kernel = [P.rows[i] for i in range(r, w.t)]
    return EchelonResult(P, B, kernel, r, w.rowlog)


@dataclass
class DiagonalResult:
    P: Matrix
    D: Matrix
    Q: Matrix
    rowlog: TransformLog
    collog: TransformLog

    def __iter__(self):
        return iter((self.P, self.D, self.Q))

    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.shape))]


def _require_bijective(ring):
    if not ring.is_bijective:
        raise NotBijectiveError("column operations need right division, i.e. a bijective twist")


def _diag_range(w, k0, k1, full=False):
    """Diagonalize the block of rows and columns [k0, k1) in place.

    With `full`, pivots and eliminations use every remaining row and column, so
    non-square matrices end up with all nonzero entries on the diagonal.
    """
    M = w.M
    rend, cend = (w.t, w.m) if full else (min(k1, w.t), min(k1, w.m))
    for k in range(k0, k1):
        entries = [(M[i][j].degree(), i, j) for i in range(k, rend) for j in range(k, cend) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        if i != k:
            w.row(("swap", k, i))
        if j != k:
            w.col(("swap", k, j))
        while True:
            clean = True
            for i in range(k + 1, rend):
                if M[i][k]:
                    q, rem = _left_divide(M[i][k], M[k][k])
                    if q:
                        w.row(("add", i, -q, k))
                    if rem:
                        clean = False
            for j in range(k + 1, cend):
                if M[k][j]:
                    q, rem = _right_divide(M[k][j], M[k][k])
                    if q:
                        w.col(("add", j, -q, k))
                    if rem:
                        clean = False
            if clean:
                break
            line = [(M[i][k].degree(), i, k) for i in range(k, rend) if M[i][k]]
            line += [(M[k][j].degree(), k, j) for j in range(k + 1, cend) if M[k][j]]
            _, i, j = min(line)
            if i != k:
                w.row(("swap", k, i))
            if j != k:
                w.col(("swap", k, j))
        w.make_monic_row(k, k)


def diagonalize(A):
    """P*A*Q = diag(b_1, ..., b_r, 0, ...) with monic b_i."""
    _require_bijective(A.ring)
    w = _Work(A)
    _diag_range(w, 0, min(w.t, w.m), full=True)
    P, D, Q = w.matrices()
    return DiagonalResult(P, D, Q, w.rowlog, w.collog)


# ---------------------------------------------------------------------------
# total divisors

def witness_cap(f, g):
    env = os.environ.get("SKEWLAB_WITNESS_CAP")
    if env:
        return int(env)
    return 4 * max(f.degree(), g.degree(), 1)


class TotalDivisorOracle:
    """Decides Rg inside fR and produces witnesses b with b*g outside fR."""

    def is_total_divisor(self, f, g):
        raise NotImplementedError

    def coefficients(self, ring):
        raise NotImplementedError

    def witness(self, f, g, cap=None):
        ring = f.ring
        if cap is None:
            cap = witness_cap(f, g)
        coeffs = self.coefficients(ring)
        for k in range(0, cap + 1):
            for c in coeffs:
                b = ring.monomial(c, k)
                if rrem(mul(b, g), f):
                    return b
        raise WitnessCapExceeded(f"no witness b with deg b <= {cap} for ({f}, {g})")


class BoundOracle(TotalDivisorOracle):
    """F_q[x; sigma]: f totally divides g iff g lies in R f*."""

    def is_total_divisor(self, f, g):
        if not g:
            return True
        if not f:
            return False
        if f.degree() == 0:
            return True
        return not lrem(g, bound_any(f))

    def coefficients(self, ring):
        return [c for c in ring.field.elements() if c]

    def witness(self, f, g, cap=None):
        # monomials c*x^k with k < ord(sigma) already span R over its centre
        m = f.ring.sigma.order
        if cap is None:
            cap = max(witness_cap(f, g), m - 1)
        return super().witness(f, g, min(cap, m - 1) if m else cap)


class SimpleRingOracle(TotalDivisorOracle):
    """Simple rings: f totally divides g iff f is a unit or g = 0."""

    def is_total_divisor(self, f, g):
        if not g:
            return True
        return bool(f) and f.degree() == 0

    def coefficients(self, ring):
        out = []
        for c in ring.field.enumerate():
            out.append(c)
            if len(out) >= 12:
                break
        return out


def oracle_for(ring):
    if ring.is_bounded_family:
        return BoundOracle()
    if ring.is_simple:
        return SimpleRingOracle()
    raise UnsupportedRingError(f"no total-divisor oracle for {ring!r}")


def is_total_divisor(f, g, oracle=None, want_witness=False):
    oracle = oracle or oracle_for(f.ring)
    ok = oracle.is_total_divisor(f, g)
    if want_witness:
        return ok, (None if ok else oracle.witness(f, g))
    return ok


@dataclass
class JacobsonResult(DiagonalResult):
    witnesses: list = field(default_factory=list)


def jacobson(A, oracle=None):
    """P*A*Q = diag(f_1, ..., f_r, 0, ...) with f_i a total divisor of f_(i+1)."""
    ring = A.ring
    _require_bijective(ring)
    oracle = oracle or oracle_for(ring)
    w = _Work(A)
    n = min(w.t, w.m)
    _diag_range(w, 0, n, full=True)
    M = w.M
    witnesses = []
    while True:
        r = sum(1 for i in range(n) if M[i][i])
        bad = None
        for i in range(r - 1):
            if not oracle.is_total_divisor(M[i][i], M[i + 1][i + 1]):
                bad = i
                break
        if bad is None:
            break
        i = bad
        try:
            b = oracle.witness(M[i][i], M[i + 1][i + 1])
        except WitnessCapExceeded as exc:
            P, D, Q = w.matrices()
            raise WitnessCapExceeded(str(exc), partial=DiagonalResult(P, D, Q, w.rowlog, w.collog)) from None
        witnesses.append((i, b))
        w.row(("add", i, b, i + 1))
        q, _ = _right_divide(M[i][i + 1], M[i][i])
        if q:
            w.col(("add", i + 1, -q, i))
        _diag_range(w, i, i + 2)
    P, J, Q = w.matrices()
    return JacobsonResult(P, J, Q, w.rowlog, w.collog, witnesses)


# ---------------------------------------------------------------------------
# bound

def _fixed_field_basis(field, sigma):
    p = field.p
    k = getattr(field, "k", 1)
    if k == 1:
        return [field.one]
    rows = []
    cols = []
    for i in range(k):
        e = field.from_prime_coords([1 if j == i else 0 for j in range(k)])
        cols.append([a - b for a, b in zip(field.prime_coords(sigma(e)), field.prime_coords(e))])
    rows = [[cols[j][i] for j in range(k)] for i in range(k)]
    return [field.from_prime_coords(v) for v in nullspace_mod_p(rows, k, p)]


def _coords(poly, n, field):
    out = []
    for i in range(n):
        out.extend(field.prime_coords(poly.coeff(i)))
    return out


def bound(f):
    """Minimal monic central f* in F^sigma[x^m] with f* in R f; needs f(0) != 0."""
    ring = f.ring
    if not ring.is_bounded_family:
        raise UnsupportedRingError("bound is implemented for F_q[x; sigma] with sigma of finite order")
    if not f or f.degree() < 0:
        raise ValueError("bound of zero")
    if not f.coeff(0):
        raise ValueError("bound needs a nonzero constant term; strip the power of x first")
    if f.degree() == 0:
        return ring.one
    F = ring.field
    p = F.p
    m = ring.sigma.order
    n = f.degree()
    kbasis = _fixed_field_basis(F, ring.sigma)
    xm = ring.monomial(F.one, m)
    rems = [lrem(ring.one, f)]
    cur = ring.one
    limit = n * m * len(kbasis) + 1
    for D in range(0, limit + 1):
        if D > 0:
            cur = mul(cur, xm)
            rems.append(lrem(cur, f))
        # unknowns: lambda_(i,b) for i <= D, b in kbasis
        vecs = []
        for i in range(D + 1):
            for beta in kbasis:
                vecs.append(_coords(beta * rems[i], n, F))
        nrows = len(vecs[0])
        rows = [[vecs[u][r] for u in range(len(vecs))] for r in range(nrows)]
        null = nullspace_mod_p(rows, len(vecs), p)
        if null:
            lam = null[0]
            coeffs = []
            for i in range(D + 1):
                c = F.zero
                for b, beta in enumerate(kbasis):
                    c = c + beta * lam[i * len(kbasis) + b]
                coeffs.append(c)
            if not coeffs[-1]:
                continue
            out = ring.zero
            for i, c in enumerate(coeffs):
                if c:
                    out = out + ring.monomial(c, i * m)
            return out.monic()
    raise AssertionError("bound search exceeded the dimension bound")


def bound_any(f):
    """Bound of f = g*x^j, taken as bound(g)*x^j."""
    j = 0
    while not f.coeff(j):
        j += 1
    if j == 0:
        return bound(f)
    g = OrePoly(f.ring, f.c[j:])
    return mul(bound(g), f.ring.monomial(f.ring.field.one, j))


def annihilator(q, f):
    """Monic generator c of ann(q + Rf), i.e. minimal c with c*q in Rf."""
    if not f:
        raise ValueError("annihilator needs f != 0")
    if not lrem(q, f):
        return f.ring.one
    return lcm_cofactor(q, f).monic()
