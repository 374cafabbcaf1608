"""Left Groebner bases of submodules of A^m for a PBW algebra A.

A module element is a dict {(alpha, level): coeff} with 0-based levels.  The
basis vector e_i is printed as `@i` with i counted from 1.
"""

from .errors import MathError, ParseError
from .matrix import Matrix
from .pbw import PBWElement, _addto


# ---------------------------------------------------------------------------
# module orders

class ModuleOrder:
    """TOP compares the term first and breaks ties by level (e_1 < e_2 < ...); POT the reverse."""

    def __init__(self, term_order, kind="TOP"):
        if kind not in ("TOP", "POT"):
            raise ParseError(f"unknown module order {kind!r}")
        self.term_order = term_order
        self.kind = kind

    def key(self, t):
        a, lev = t
        k = self.term_order.key(a)
        return (k, lev) if self.kind == "TOP" else (lev, k)

    def descriptor(self):
        return {"module": self.kind, **self.term_order.descriptor()}


class SchreyerOrder:
    """x^a e_i < x^b e_j iff exp(x^a g_i) < exp(x^b g_j), ties: larger index is smaller."""

    def __init__(self, parent, leads):
        self.parent = parent
        self.term_order = parent.term_order
        self.leads = list(leads)

    def key(self, t):
        a, i = t
        b, lev = self.leads[i]
        return (self.parent.key((tuple(x + y for x, y in zip(a, b)), lev)), -i)

    def descriptor(self):
        return {"module": "schreyer", **self.term_order.descriptor()}


def default_order(algebra, kind="TOP"):
    return ModuleOrder(algebra.order, kind)


# ---------------------------------------------------------------------------
# module elements

class ModuleElement:
    __slots__ = ("algebra", "rank", "terms")

    def __init__(self, algebra, rank, terms):
        self.algebra = algebra
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_row(cls, algebra, row):
        terms = {}
        for lev, f in enumerate(row):
            f = algebra(f)
            for a, c in f.terms.items():
                terms[(a, lev)] = c
        return cls(algebra, len(row), terms)

    @classmethod
    def basis_vector(cls, algebra, rank, i):
        return cls(algebra, rank, {((0,) * algebra.n, i): algebra.field.one})

    def to_row(self):
        comps = [dict() for _ in range(self.rank)]
        for (a, lev), c in self.terms.items():
            comps[lev][a] = c
        return [PBWElement(self.algebra, d) for d in comps]

    def component(self, i):
        return PBWElement(self.algebra, {a: c for (a, lev), c in self.terms.items() if lev == i})

    def __bool__(self):
        return bool(self.terms)

    def lead(self, order):
        t = max(self.terms, key=order.key)
        return t, self.terms[t]

    def exp(self, order):
        return max(self.terms, key=order.key) if self.terms else None

    def sexp(self, order):
        t = self.exp(order)
        return None if t is None else t[0]

    def level(self, order):
        t = self.exp(order)
        return None if t is None else t[1]

    def monic(self, order):
        if not self.terms:
            return self
        _, c = self.lead(order)
        return self.scale(self.algebra.field.inv(c))

    def scale(self, c):
        if not c:
            return ModuleElement(self.algebra, self.rank, {})
        return ModuleElement(self.algebra, self.rank, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _addto(out, k, v)
        return ModuleElement(self.algebra, self.rank, out)

    def __neg__(self):
        return ModuleElement(self.algebra, self.rank, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f):
        """Left action of an algebra element (or scalar)."""
        if not isinstance(f, PBWElement):
            return self.scale(self.algebra.field(f))
        return ModuleElement(self.algebra, self.rank, left_mul(self.algebra, f.terms, self.terms))

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if self.rank == 1:
            return str(self.component(0))
        return "(" + ", ".join(str(c) for c in self.to_row()) + ")"

    def at_form(self):
        """`poly@1 + poly@2` form."""
        parts = []
        for i, c in enumerate(self.to_row()):
            if c:
                s = str(c)
                parts.append(f"({s})@{i + 1}" if len(c.terms) > 1 or s.startswith("-") else f"{s}@{i + 1}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ModuleElement({self})"


def left_mul(A, f, g):
    """f * g for f a dict polynomial and g a dict module element."""
    out = {}
    for b, x in f.items():
        for (a, lev), y in g.items():
            xy = x * y
            for e, c in A._monomul(b, a).items():
                _addto(out, (e, lev), xy * c)
    return out


def _mono_mul(A, gamma, coef, g):
    out = {}
    for (a, lev), y in g.items():
        cy = coef * y
        for e, c in A._monomul(gamma, a).items():
            _addto(out, (e, lev), cy * c)
    return out


def _sub_into(acc, d):
    for k, v in d.items():
        _addto(acc, k, -v)


def _divides(b, a):
    return all(x <= y for x, y in zip(b, a))


def parse_module_element(algebra, text, rank=None):
    """`[f1, f2]`, `(f1, f2)`, a bare polynomial (rank 1) or `f@1 + g@2`."""
    text = text.strip()
    if "@" in text:
        row = {}
        for neg, part in _split_signed(text):
            if "@" not in part:
                raise ParseError(f"term {part!r} has no @level")
            poly, _, lev = part.rpartition("@")
            try:
                lev = int(lev)
            except ValueError:
                raise ParseError(f"bad level in {part!r}") from None
            f = algebra.parse(poly)
            if neg:
                f = -f
            row[lev - 1] = row.get(lev - 1, algebra.zero) + f
        r = rank if rank is not None else max(row) + 1
        if any(k >= r or k < 0 for k in row):
            raise ParseError("level out of range")
        return ModuleElement.from_row(algebra, [row.get(i, algebra.zero) for i in range(r)])
    if text[:1] in "[(" and text[-1:] in "])":
        inner = text[1:-1]
        parts = _split_top(inner, ",")
        row = [algebra.parse(p) for p in parts]
    else:
        row = [algebra.parse(text)]
    if rank is not None and len(row) != rank:
        raise ParseError(f"expected {rank} coordinates, got {len(row)}")
    return ModuleElement.from_row(algebra, row)


def _split_top(text, sep):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _split_signed(text):
    """Top-level summands as (negated, text) pairs."""
    out, depth, cur, neg = [], 0, "", False
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in "+-" and depth == 0 and not cur.rstrip().endswith("^"):
            if cur.strip():
                out.append((neg, cur.strip()))
            elif ch == "-":
                neg = not neg
                continue
            cur, neg = "", ch == "-"
            continue
        cur += ch
    if cur.strip():
        out.append((neg, cur.strip()))
    return out


# ---------------------------------------------------------------------------
# division

class _Reducer:
    """Leading data of a list of divisors under a fixed order."""

    def __init__(self, A, F, order):
        self.A = A
        self.order = order
        self.F = [g.terms if isinstance(g, ModuleElement) else g for g in F]
        self.leads = []
        for g in self.F:
            t = max(g, key=order.key)
            self.leads.append((t, g[t]))

    def find(self, t):
        a, lev = t
        for i, ((b, l2), _) in enumerate(self.leads):
            if l2 == lev and _divides(b, a):
                return i
        return None

    def step_coeff(self, i, t, c):
        (b, _), lc = self.leads[i]
        gamma = tuple(x - y for x, y in zip(t[0], b))
        q = self.A._monomul(gamma, b)[t[0]]
        return gamma, c / (q * lc)


def divide_terms(A, f, F, order, full=True):
    """Algorithm 3 on dict data.  Returns (list of quotient dicts, remainder dict)."""
    red = _Reducer(A, F, order)
    rest = dict(f)
    quo = [dict() for _ in F]
    r = {}
    key = order.key
    while rest:
        t = max(rest, key=key)
        c = rest[t]
        i = red.find(t)
        if i is None:
            if not full:
                r.update(rest)
                break
            r[t] = c
            del rest[t]
            continue
        gamma, coef = red.step_coeff(i, t, c)
        _addto(quo[i], gamma, coef)
        _sub_into(rest, _mono_mul(A, gamma, coef, red.F[i]))
        rest.pop(t, None)
    return quo, r


def divide_module(f, F, order=None):
    """f = sum h_i F_i + r with no term of r in a leading cone of F."""
    A = f.algebra
    order = order or default_order(A)
    if any(not g for g in F):
        raise ValueError("divisors must be nonzero")
    quo, r = divide_terms(A, f.terms, F, order)
    return [PBWElement(A, q) for q in quo], ModuleElement(A, f.rank, r)


def lres(f, F, order=None):
    return divide_module(f, F, order)[1]


# ---------------------------------------------------------------------------
# Buchberger

class GroebnerBasis:
    """G = P F and F = Phat G; rows of P and Phat are module elements of rank len(F)."""

    def __init__(self, algebra, rank, G, P, Phat, order, F):
        self.algebra = algebra
        self.rank = rank
        self.G = G
        self.P = P
        self.Phat = Phat
        self.order = order
        self.F = F

    def __len__(self):
        return len(self.G)

    def __iter__(self):
        return iter(self.G)

    def leads(self):
        return [g.exp(self.order) for g in self.G]

    def P_matrix(self):
        return Matrix(self.algebra, [p.to_row() for p in self.P], len(self.F))

    def Phat_matrix(self):
        return Matrix(self.algebra, [p.to_row() for p in self.Phat], len(self.G))


def _spair(A, gi, gj, order):
    """(gamma_i, c_i, gamma_j, c_j) with SP = c_i x^gamma_i g_i - c_j x^gamma_j g_j."""
    (ai, _), lci = _lead(gi, order)
    (aj, _), lcj = _lead(gj, order)
    top = tuple(max(x, y) for x, y in zip(ai, aj))
    gi_ = tuple(x - y for x, y in zip(top, ai))
    gj_ = tuple(x - y for x, y in zip(top, aj))
    qi = A._monomul(gi_, ai)[top] * lci
    qj = A._monomul(gj_, aj)[top] * lcj
    F = A.field
    return gi_, F.inv(qi), gj_, F.inv(qj)


def _lead(g, order):
    t = max(g, key=order.key)
    return t, g[t]


def spoly(A, gi, gj, order):
    gi_, ci, gj_, cj = _spair(A, gi, gj, order)
    out = _mono_mul(A, gi_, ci, gi)
    _sub_into(out, _mono_mul(A, gj_, cj, gj))
    return out


def _scale(d, c):
    return {k: v * c for k, v in d.items()}


def buchberger(F, order=None, track=True, criteria=True):
    """Groebner basis of the submodule generated by F (a list of ModuleElements).

    Pairs are taken by the normal strategy (smallest lcm first).  With
    `criteria` the chain criterion and redundant-element removal of
    Gebauer-Moeller prune pairs; the product criterion is not used since it
    fails without commutativity.
    """
    if not F:
        raise ValueError("buchberger needs at least one generator")
    A = F[0].algebra
    rank = F[0].rank
    order = order or default_order(A)
    s = len(F)
    zero_exp = (0,) * A.n
    G, P, leads = [], [], []
    active = []
    pairs = {}

    def lcm(i, j):
        return tuple(max(x, y) for x, y in zip(leads[i][0], leads[j][0]))

    def add(g, prow):
        t, lc = _lead(g, order)
        inv = A.field.inv(lc)
        G.append(_scale(g, inv))
        if track:
            P.append(_scale(prow, inv))
        leads.append(t)
        h = len(G) - 1
        a, lev = t
        same = [k for k in active if leads[k][1] == lev]
        if criteria:
            # chain criterion on the old pairs
            for (i, j), top in list(pairs.items()):
                if leads[i][1] == lev and _divides(a, top) and lcm(i, h) != top and lcm(j, h) != top:
                    del pairs[(i, j)]
            # new pairs: drop proper multiples and repeated lcms
            cand = {k: lcm(k, h) for k in same}
            chosen = {}
            for k in sorted(cand, key=lambda k: (order.key((cand[k], lev)), k)):
                top = cand[k]
                if any(_divides(o, top) for o in chosen.values()):
                    continue
                chosen[k] = top
            for k, top in chosen.items():
                pairs[(k, h)] = top
            for k in same:
                if _divides(a, leads[k][0]):
                    active.remove(k)
        else:
            for k in same:
                pairs[(k, h)] = lcm(k, h)
        active.append(h)

    for idx, f in enumerate(F):
        if f.rank != rank:
            raise ValueError("generators of different rank")
        if f:
            add(dict(f.terms), {(zero_exp, idx): A.field.one})

    while pairs:
        i, j = min(pairs, key=lambda ij: (order.key((pairs[ij], leads[ij[0]][1])), ij[1], ij[0]))
        del pairs[(i, j)]
        gi_, ci, gj_, cj = _spair(A, G[i], G[j], order)
        sp = _mono_mul(A, gi_, ci, G[i])
        _sub_into(sp, _mono_mul(A, gj_, cj, G[j]))
        if not sp:
            continue
        basis = list(active)
        quo, r = divide_terms(A, sp, [G[k] for k in basis], order)
        if not r:
            continue
        prow = None
        if track:
            prow = _mono_mul(A, gi_, ci, P[i])
            _sub_into(prow, _mono_mul(A, gj_, cj, P[j]))
            for k, q in zip(basis, quo):
                if q:
                    _sub_into(prow, left_mul(A, q, P[k]))
        add(r, prow)
    keep = sorted(active)
    Gm = [ModuleElement(A, rank, G[k]) for k in keep]
    Pm = [ModuleElement(A, s, P[k]) for k in keep] if track else None
    Phat = _phat(A, F, [G[k] for k in keep], order, len(keep)) if track else None
    return GroebnerBasis(A, rank, Gm, Pm, Phat, order, list(F))


def _phat(A, F, G, order, size):
    rows = []
    for f in F:
        if not f:
            rows.append(ModuleElement(A, size, {}))
            continue
        quo, r = divide_terms(A, f.terms, G, order)
        if r:
            raise MathError("an input generator does not reduce to zero")
        row = {}
        for k, q in enumerate(quo):
            for a, c in q.items():
                row[(a, k)] = c
        rows.append(ModuleElement(A, size, row))
    return rows


def certificate(gb, check_transforms=True):
    """Re-check Buchberger's criterion, input membership and G = P F, F = Phat G."""
    A, order, G = gb.algebra, gb.order, [g.terms for g in gb.G]
    leads = [_lead(g, order)[0] for g in G]
    for j in range(len(G)):
        for i in range(j):
            if leads[i][1] == leads[j][1]:
                sp = spoly(A, G[i], G[j], order)
                if sp and divide_terms(A, sp, G, order)[1]:
                    return False
    for f in gb.F:
        if f and divide_terms(A, f.terms, G, order)[1]:
            return False
    if check_transforms and gb.P is not None:
        for g, prow in zip(gb.G, gb.P):
            if combine(A, prow, gb.F, gb.rank) != g:
                return False
        for f, hrow in zip(gb.F, gb.Phat):
            if combine(A, hrow, gb.G, gb.rank) != f:
                return False
    return True


def combine(A, row, elems, rank=None):
    """sum_k row_k * elems_k for a row given as a module element over len(elems)."""
    if rank is None:
        rank = elems[0].rank if elems else 0
    out = {}
    comps = {}
    for (a, k), c in row.terms.items():
        comps.setdefault(k, {})[a] = c
    for k, poly in comps.items():
        for key, v in left_mul(A, poly, elems[k].terms).items():
            _addto(out, key, v)
    return ModuleElement(A, rank, out)


def minimal_basis(gb_or_list, order=None):
    """Drop elements whose leading exponent lies in another element's cone (first wins)."""
    G = list(gb_or_list.G) if isinstance(gb_or_list, GroebnerBasis) else list(gb_or_list)
    order = order or gb_or_list.order
    keep = []
    leads = [g.exp(order) for g in G]
    for i, (a, lev) in enumerate(leads):
        dominated = False
        for j, (b, l2) in enumerate(leads):
            if j != i and l2 == lev and _divides(b, a) and (b != a or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


def reduced_basis(gb):
    """Monic, minimal and tail-reduced; transformation rows are carried along."""
    A, order = gb.algebra, gb.order
    keep = minimal_basis(gb)
    G = [gb.G[i] for i in keep]
    P = [gb.P[i] for i in keep] if gb.P is not None else None
    newG, newP = [], []
    for idx, g in enumerate(G):
        others = [h.terms for k, h in enumerate(G) if k != idx]
        oidx = [k for k in range(len(G)) if k != idx]
        t, lc = _lead(g.terms, order)
        tail = dict(g.terms)
        del tail[t]
        if others:
            quo, r = divide_terms(A, tail, others, order)
        else:
            quo, r = [], tail
        r[t] = lc
        inv = A.field.inv(lc)
        newG.append(ModuleElement(A, gb.rank, _scale(r, inv)))
        if P is not None:
            prow = dict(P[idx].terms)
            for k, q in zip(oidx, quo):
                if q:
                    _sub_into(prow, left_mul(A, q, P[k].terms))
            newP.append(ModuleElement(A, len(gb.F), _scale(prow, inv)))
    # sort by leading term, smallest first, for a canonical order
    perm = sorted(range(len(newG)), key=lambda k: order.key(newG[k].exp(order)))
    newG = [newG[k] for k in perm]
    newP = [newP[k] for k in perm] if P is not None else None
    Phat = _phat(A, gb.F, [g.terms for g in newG], order, len(newG)) if P is not None else None
    return GroebnerBasis(A, gb.rank, newG, newP, Phat, order, gb.F)


def groebner(F, order=None, reduced=True):
    gb = buchberger(F, order)
    return reduced_basis(gb) if reduced else gb


def normal_form(f, gb):
    """Remainder of f modulo a Groebner basis."""
    return lres(f, gb.G, gb.order)


# ---------------------------------------------------------------------------
# syzygies

def gb_syzygies(G, order):
    """The s_ij for a Groebner basis G (a list of dict or ModuleElement).

    Returns dicts {(alpha, k): c} over len(G).  Leading term of s_ij under the
    Schreyer order is x^(top - exp g_i) e_i.
    """
    Gd = [g.terms if isinstance(g, ModuleElement) else g for g in G]
    if not Gd:
        return []
    A = G[0].algebra if isinstance(G[0], ModuleElement) else None
    return _gb_syz(A, Gd, order)


def _gb_syz(A, Gd, order):
    leads = [_lead(g, order)[0] for g in Gd]
    out = []
    for j in range(len(Gd)):
        for i in range(j):
            if leads[i][1] != leads[j][1]:
                continue
            gi_, ci, gj_, cj = _spair(A, Gd[i], Gd[j], order)
            sp = _mono_mul(A, gi_, ci, Gd[i])
            _sub_into(sp, _mono_mul(A, gj_, cj, Gd[j]))
            row = {}
            _addto(row, (gi_, i), ci)
            _addto(row, (gj_, j), -cj)
            if sp:
                quo, r = divide_terms(A, sp, Gd, order)
                if r:
                    raise MathError("input is not a Groebner basis")
                for k, q in enumerate(quo):
                    for a, c in q.items():
                        _addto(row, (a, k), -c)
            out.append(row)
    return out


def syzygy_basis(F, order=None):
    """Rows generating Syz(F): [syz(G) P ; I - Phat P], zero rows removed."""
    if not F:
        return []
    A = F[0].algebra
    s = len(F)
    order = order or default_order(A)
    nonzero = [f for f in F if f]
    rows = []
    if nonzero:
        # any Groebner basis will do; the reduced one has the fewest pairs
        gb = reduced_basis(buchberger(F, order))
        for srow in _gb_syz(A, [g.terms for g in gb.G], order):
            rows.append(combine_rows(A, srow, gb.P, s))
        # I - Phat P
        for i in range(s):
            e = {((0,) * A.n, i): A.field.one}
            prod = combine_rows(A, gb.Phat[i].terms, gb.P, s).terms
            _sub_into(e, prod)
            rows.append(ModuleElement(A, s, e))
    else:
        rows = [ModuleElement.basis_vector(A, s, i) for i in range(s)]
    out, seen = [], set()
    for r in rows:
        if r and r not in seen:
            seen.add(r)
            out.append(r)
    return out


def combine_rows(A, coeffs, rows, rank):
    """sum_k coeffs_k * rows_k where coeffs is a dict {(alpha, k): c}."""
    out = {}
    comps = {}
    for (a, k), c in coeffs.items():
        comps.setdefault(k, {})[a] = c
    for k, poly in comps.items():
        for key, v in left_mul(A, poly, rows[k].terms).items():
            _addto(out, key, v)
    return ModuleElement(A, rank, out)


def annihilates(rows, F):
    """True when every row r satisfies sum r_k F_k = 0."""
    if not rows:
        return True
    A = F[0].algebra
    return all(not combine(A, r, F) for r in rows)


# ---------------------------------------------------------------------------
# Schreyer resolutions

def schreyer_resolution(F, order=None, max_len=None):
    """Free resolution of A^m / <F> of length at most n.

    Returns a list of (list of ModuleElement rows) [A_1, A_2, ...] where rows of
    A_{k+1} generate the syzygies of the rows of A_k.  A_1 is a minimal Groebner
    basis of <F>.
    """
    if not F:
        return []
    A = F[0].algebra
    n = A.n
    order = order or default_order(A)
    gb = buchberger(F, order, track=False)
    keep = minimal_basis(gb)
    G = [gb.G[i].monic(order) for i in keep]
    if not G:
        return []
    chain = []
    cur_order = order
    step = 0
    limit = n if max_len is None else max_len
    while True:
        var = step % n
        lead = [g.exp(cur_order) for g in G]
        perm = sorted(range(len(G)), key=lambda k: (lead[k][1], -lead[k][0][var], k))
        G = [G[k] for k in perm]
        lead = [lead[k] for k in perm]
        chain.append(G)
        syz = _gb_syz(A, [g.terms for g in G], cur_order)
        if not syz:
            break
        sch = SchreyerOrder(cur_order, lead)
        S = [ModuleElement(A, len(G), s) for s in syz]
        keep = minimal_basis(S, sch)
        S = [S[k].monic(sch) for k in keep]
        slead = [s.exp(sch) for s in S]
        if all(not any(a) for a, _ in slead):
            # rows of S are e_j + lower terms: the image of G is free on the other rows
            J = {lev for _, lev in slead}
            chain[-1] = [g for k, g in enumerate(G) if k not in J]
            break
        G = S
        cur_order = sch
        step += 1
        if len(chain) > limit + 1:
            raise AssertionError("resolution exceeded its length bound")
    if len(chain) > limit:
        raise AssertionError(f"resolution of length {len(chain)} exceeds the bound {limit}")
    return chain
