"""Small dense matrices over a (possibly non-commutative) ring.

The ring object must expose `zero`, `one` and be callable for coercion; its
elements must support +, -, * and truthiness.  Row vectors act on the left:
y = x * A.
"""

import json

from .errors import FieldMismatchError, ParseError


class Matrix:
    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring, rows, ncols=None):
        rows = tuple(tuple(ring(e) if not _is_elem(e, ring) else e for e in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("an empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring, r, c):
        return cls(ring, [[ring.zero] * c for _ in range(r)], c)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        zero = self.ring.zero
        out = []
        for row in self.rows:
            new = []
            for j in range(other.ncols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                new.append(acc)
            out.append(new)
        return Matrix(self.ring, out, other.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return not any(a for row in self.rows for a in row)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return Matrix(self.ring, self.rows + other.rows, self.ncols)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return Matrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def columns(self, start, stop):
        return Matrix(self.ring, [row[start:stop] for row in self.rows], stop - start)

    def select_rows(self, idx):
        return Matrix(self.ring, [self.rows[i] for i in idx], self.ncols)

    def drop_zero_rows(self):
        return Matrix(self.ring, [row for row in self.rows if any(row)], self.ncols)

    def to_lists(self):
        return [[str(a) for a in row] for row in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in row) for row in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self})"


def _is_elem(e, ring):
    return getattr(e, "ring", None) is ring or getattr(e, "algebra", None) is ring


def row_vector(ring, entries):
    return Matrix(ring, [list(entries)], len(entries))


def parse_matrix(ring, text, ncols=None):
    """Parse `[p11, p12; p21, p22]` or a JSON array of arrays."""
    text = text.strip()
    rows = None
    if text.startswith("[["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            data = None
        if data is not None:
            rows = [[str(e) for e in row] for row in data]
    if rows is None:
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError("matrix must be written as [a, b; c, d]")
        body = text[1:-1].strip()
        if not body:
            rows = []
        else:
            rows = [[e.strip() for e in r.split(",")] for r in body.split(";")]
    if any(e == "" for r in rows for e in r):
        raise ParseError("empty matrix entry")
    if ncols is None:
        if not rows:
            raise ParseError("cannot infer the width of an empty matrix")
        ncols = len(rows[0])
    try:
        return Matrix(ring, [[ring(e) for e in r] for r in rows], ncols)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    except FieldMismatchError as exc:
        raise ParseError(str(exc)) from None
