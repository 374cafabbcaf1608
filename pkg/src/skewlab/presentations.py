"""Finitely presented left modules M = R^t / rows(A) and their morphisms.

Works over any ring with a syzygy provider: univariate Ore rings use the
echelon form, PBW algebras use Groebner bases.
"""

from .errors import InvalidMorphismError, MathError, UnsupportedRingError
from .groebner import (ModuleElement, buchberger, default_order, reduced_basis, schreyer_resolution,
                       syzygy_basis)
from .matrix import Matrix
from .orematrix import row_echelon
from .orepoly import OreRing
from .pbw import PBWAlgebra


# ---------------------------------------------------------------------------
# providers

class OreSyzygies:
    """Left kernels from the row echelon form."""

    name = "ore"

    def __init__(self, ring):
        if not isinstance(ring, OreRing):
            raise UnsupportedRingError("the echelon backend needs a univariate Ore ring")
        self.ring = ring

    def syzygy(self, A):
        if A.nrows == 0:
            return Matrix(self.ring, [], 0)
        if A.ncols == 0:
            return Matrix.identity(self.ring, A.nrows)
        res = row_echelon(A)
        return Matrix(self.ring, res.kernel_rows, A.nrows)

    def normalize(self, A):
        """Nonzero rows of the echelon form: a canonical generating set of rows(A)."""
        if A.nrows == 0 or A.ncols == 0:
            return Matrix(self.ring, [], A.ncols)
        return row_echelon(A).B.drop_zero_rows()

    def resolution(self, A, max_len=None):
        chain = []
        cur = A.drop_zero_rows()
        limit = max_len if max_len is not None else 2
        while cur.nrows:
            chain.append(cur)
            if len(chain) > limit:
                raise MathError(f"resolution longer than {limit}")
            cur = self.syzygy(cur).drop_zero_rows()
        return chain


class PBWSyzygies:
    """Syzygies from Groebner bases: [syz(G) P ; I - Phat P]."""

    name = "pbw"

    def __init__(self, algebra, order=None):
        if not isinstance(algebra, PBWAlgebra):
            raise UnsupportedRingError("the Groebner backend needs a PBW algebra")
        self.ring = algebra
        self.order = order

    def _elems(self, A):
        return [ModuleElement.from_row(self.ring, row) for row in A.rows]

    def _order(self):
        return self.order or default_order(self.ring)

    def syzygy(self, A):
        if A.nrows == 0:
            return Matrix(self.ring, [], 0)
        if A.ncols == 0:
            return Matrix.identity(self.ring, A.nrows)
        rows = syzygy_basis(self._elems(A), self._order())
        return Matrix(self.ring, [r.to_row() for r in rows], A.nrows)

    def normalize(self, A):
        """Reduced Groebner basis of rows(A)."""
        elems = [e for e in self._elems(A) if e]
        if not elems:
            return Matrix(self.ring, [], A.ncols)
        gb = reduced_basis(buchberger(elems, self._order(), track=False))
        return Matrix(self.ring, [g.to_row() for g in gb.G], A.ncols)

    def resolution(self, A, max_len=None):
        elems = [e for e in self._elems(A) if e]
        if not elems:
            return []
        chain = schreyer_resolution(elems, self._order(), max_len)
        out = []
        width = A.ncols
        for rows in chain:
            out.append(Matrix(self.ring, [r.to_row() for r in rows], width))
            width = len(rows)
        return out


def provider_for(ring, order=None):
    if isinstance(ring, OreRing):
        return OreSyzygies(ring)
    if isinstance(ring, PBWAlgebra):
        return PBWSyzygies(ring, order)
    raise UnsupportedRingError(f"no syzygy backend for {ring!r}")


def syzygy(A, via=None):
    via = via or provider_for(A.ring)
    S = via.syzygy(A)
    if S.nrows and not (S * A).is_zero():
        raise AssertionError("syzygy rows do not annihilate the input")
    return S


# ---------------------------------------------------------------------------
# presentations and morphisms

class Presentation:
    """M = R^t / rows(A) with A of shape s x t."""

    def __init__(self, ring, A, ncols=None):
        if not isinstance(A, Matrix):
            A = Matrix(ring, A, ncols)
        self.ring = ring
        self.A = A
        self.t = A.ncols

    @property
    def s(self):
        return self.A.nrows

    @classmethod
    def free(cls, ring, t):
        return cls(ring, Matrix(ring, [], t))

    @classmethod
    def cyclic(cls, ring, f):
        return cls(ring, Matrix(ring, [[f]], 1))

    def provider(self):
        return provider_for(self.ring)

    def normalized(self):
        return Presentation(self.ring, self.provider().normalize(self.A))

    def is_zero_module(self):
        """True when every generator is killed, i.e. rows(A) = R^t."""
        N = self.provider().normalize(self.A)
        if self.t == 0:
            return True
        if isinstance(self.ring, OreRing):
            return N.nrows == self.t and all(N[i, i].degree() == 0 for i in range(self.t))
        gb = [ModuleElement.from_row(self.ring, r) for r in N.rows]
        order = default_order(self.ring)
        levels = {g.exp(order)[1] for g in gb if not any(g.exp(order)[0])}
        return levels == set(range(self.t))

    def equivalent(self, other):
        """Equal normalized relation modules (same rows after echelon/reduced GB)."""
        return self.t == other.t and self.provider().normalize(self.A) == other.provider().normalize(other.A)

    def __repr__(self):
        return f"Presentation(t={self.t}, A={self.A})"


class MorphismData:
    """h : R^t/rows(A) -> R^t'/rows(A') given by Q (t x t') and P (s x s') with A Q = P A'."""

    def __init__(self, source, target, Q, P=None, check=True):
        self.source = source
        self.target = target
        self.Q = Q
        self.P = P
        if Q.shape != (source.t, target.t):
            raise InvalidMorphismError(f"Q has shape {Q.shape}, expected {(source.t, target.t)}")
        if P is None:
            self.P = _solve_p(source, target, Q)
        if check:
            self.validate()

    def validate(self):
        A, A2 = self.source.A, self.target.A
        if self.P.shape != (A.nrows, A2.nrows):
            raise InvalidMorphismError("P has the wrong shape")
        lhs = A * self.Q if A.nrows else Matrix(self.Q.ring, [], self.Q.ncols)
        rhs = self.P * A2 if A.nrows else lhs
        if lhs != rhs:
            raise InvalidMorphismError("A*Q != P*A'")
        return True


def _solve_p(source, target, Q):
    """Find P with A Q = P A' by dividing each row of A Q by rows(A')."""
    A, A2 = source.A, target.A
    ring = Q.ring
    if A.nrows == 0:
        return Matrix(ring, [], A2.nrows)
    AQ = A * Q
    if isinstance(ring, PBWAlgebra):
        from .groebner import divide_module
        elems = [ModuleElement.from_row(ring, r) for r in A2.rows]
        nz = [k for k, e in enumerate(elems) if e]
        gb = buchberger([elems[k] for k in nz]) if nz else None
        rows = []
        for r in AQ.rows:
            v = ModuleElement.from_row(ring, r)
            if not v:
                rows.append([ring.zero] * A2.nrows)
                continue
            if gb is None:
                raise InvalidMorphismError("Q does not map relations into relations")
            quo, rem = divide_module(v, gb.G, gb.order)
            if rem:
                raise InvalidMorphismError("Q does not map relations into relations")
            # coefficients on G, then back to the rows of A' through P
            coeff = [ring.zero] * A2.nrows
            for q, prow in zip(quo, gb.P):
                if q:
                    for k, c in zip(nz, prow.to_row()):
                        coeff[k] = coeff[k] + q * c
            rows.append(coeff)
        return Matrix(ring, rows, A2.nrows)
    # Ore ring: solve x A' = row through the echelon form P' A' = B
    ech = row_echelon(A2)
    rows = []
    for r in AQ.rows:
        x = _solve_echelon(ech, list(r), A2.nrows)
        if x is None:
            raise InvalidMorphismError("Q does not map relations into relations")
        rows.append(x)
    return Matrix(ring, rows, A2.nrows)


def _solve_echelon(ech, row, s):
    """y with y B = row (B staircase), returned as y P, or None."""
    from .orepoly import _left_divide
    B, P = ech.B, ech.P
    ring = B.ring
    rest = list(row)
    y = [ring.zero] * B.nrows
    for i in range(ech.rank):
        c = next(j for j in range(B.ncols) if B[i, j])
        if rest[c]:
            q, r = _left_divide(rest[c], B[i, c])
            if r:
                return None
            y[i] = q
            rest = [a - q * b for a, b in zip(rest, B.rows[i])]
    if any(rest):
        return None
    out = [ring.zero] * s
    for i, yi in enumerate(y):
        if yi:
            out = [o + yi * p for o, p in zip(out, P.rows[i])]
    return out


# ---------------------------------------------------------------------------
# constructions

def compose_syzygy(A, Ahat, P, Phat, via=None):
    """Syz(A) from Syz(Ahat) when Ahat = P A and A = Phat Ahat: [syz(Ahat) P ; I - Phat P]."""
    if P * A != Ahat or Phat * Ahat != A:
        raise InvalidMorphismError("Ahat = P*A and A = Phat*Ahat must both hold")
    via = via or provider_for(A.ring)
    S = via.syzygy(Ahat)
    top = S * P if S.nrows else Matrix(A.ring, [], A.nrows)
    out = top.vstack(Matrix.identity(A.ring, A.nrows) - Phat * P)
    return out


def kernel_of_composite(Aq, A2, via=None):
    """Generators of ker(R^r -> R^t -> R^t/rows(A2)) for the map given by Aq (r x t)."""
    ring = Aq.ring
    r = Aq.nrows
    via = via or provider_for(ring)
    stacked = Aq.vstack(A2) if A2.nrows else Aq
    S = via.syzygy(stacked)
    K = S.columns(0, r).drop_zero_rows() if S.nrows else Matrix(ring, [], r)
    return via.normalize(K) if K.nrows else K


def image_presentation(h):
    """Im h = R^t / ker(R^t -> N)."""
    h.validate()
    K = kernel_of_composite(h.Q, h.target.A)
    return Presentation(h.Q.ring, K, h.source.t)


def kernel_presentation(h):
    """ker h = (rows(S) + rows(A)) / rows(A) with S generating ker(R^t -> N)."""
    h.validate()
    ring = h.Q.ring
    via = provider_for(ring)
    S = kernel_of_composite(h.Q, h.target.A, via)
    r = S.nrows
    if r == 0:
        return Presentation(ring, Matrix(ring, [], 0))
    A = h.source.A
    stacked = S.vstack(A) if A.nrows else S
    Z = via.syzygy(stacked)
    K = Z.columns(0, r).drop_zero_rows() if Z.nrows else Matrix(ring, [], r)
    if K.nrows:
        K = via.normalize(K)
    return Presentation(ring, K, r)


def free_resolution(P, max_len=None):
    """[A_1, A_2, ...] with A_{i+1} A_i = 0 and rows(A_{i+1}) = Syz(A_i)."""
    via = P.provider()
    if isinstance(P.ring, PBWAlgebra) and max_len is None:
        max_len = P.ring.n
    chain = via.resolution(P.A, max_len)
    for a, b in zip(chain, chain[1:]):
        if not (b * a).is_zero():
            raise AssertionError("resolution composite is not zero")
    return chain


def element_annihilator(P, v):
    """ann_R(m) for m the class of the row vector v; returned as a presentation of R m = R/ann."""
    ring = P.ring
    if not isinstance(v, Matrix):
        v = Matrix(ring, [list(v)], P.t)
    if v.shape != (1, P.t):
        raise ValueError(f"vector needs {P.t} coordinates")
    K = kernel_of_composite(v, P.A)
    return Presentation(ring, K, 1)
