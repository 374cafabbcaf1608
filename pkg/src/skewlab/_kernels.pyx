# cython: boundscheck=False, wraparound=False
"""Compiled integer kernels; same API as _kernels_py."""

from libc.stdlib cimport malloc, free


def rref_mod_p(rows, int ncols, long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef long *m = <long *> malloc(max(nrows * ncols, 1) * sizeof(long))
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long inv, f, x
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                x = row[j] % p
                m[i * ncols + j] = x
        pivots = []
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    x = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = x
            inv = pow(m[r * ncols + c], p - 2, p)
            for j in range(ncols):
                m[r * ncols + j] = (m[r * ncols + j] * inv) % p
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f != 0:
                        for j in range(ncols):
                            m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
        return out, pivots
    finally:
        free(m)


def nullspace_mod_p(rows, int ncols, long p):
    red, pivots = rref_mod_p(rows, ncols, p)
    pivset = set(pivots)
    basis = []
    for fcol in range(ncols):
        if fcol in pivset:
            continue
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fcol]) % p
        basis.append(v)
    return basis


def _check_lattice_args(bases, n, s_max, weights):
    if n < 0 or s_max < 0:
        raise ValueError("n and s_max must be nonnegative")
    if len(weights) != n or any(x < 1 for x in weights):
        raise ValueError("need n weights, all >= 1")
    if any(len(b) != n for b in bases):
        raise ValueError("every basis element needs n coordinates")


def lattice_histogram(bases, int n, int s_max, weights):
    bases = [tuple(x) for x in bases]
    weights = list(weights)
    _check_lattice_args(bases, n, s_max, weights)
    cdef int nb = len(bases)
    cdef int *b = <int *> malloc(max(nb * n, 1) * sizeof(int))
    cdef int *w = <int *> malloc(max(n, 1) * sizeof(int))
    cdef int *alpha = <int *> malloc(max(n, 1) * sizeof(int))
    cdef int *partial = <int *> malloc((n + 1) * sizeof(int))
    cdef long *hist = <long *> malloc((s_max + 1) * sizeof(long))
    cdef int i, k, level, s
    cdef bint hit, ok
    try:
        for k in range(nb):
            for i in range(n):
                b[k * n + i] = bases[k][i]
        for i in range(n):
            w[i] = weights[i]
            alpha[i] = 0
        for s in range(s_max + 1):
            hist[s] = 0
        if n == 0:
            hit = nb > 0
            if not hit:
                hist[0] = 1
            return [hist[s] for s in range(s_max + 1)]
        # odometer over all alpha with weighted size <= s_max
        partial[0] = 0
        for i in range(n):
            partial[i + 1] = 0
        level = n - 1
        while True:
            s = partial[n - 1] + w[n - 1] * alpha[n - 1]
            hit = False
            for k in range(nb):
                ok = True
                for i in range(n):
                    if alpha[i] < b[k * n + i]:
                        ok = False
                        break
                if ok:
                    hit = True
                    break
            if not hit:
                hist[s] += 1
            # advance
            level = n - 1
            while level >= 0:
                alpha[level] += 1
                if partial[level] + w[level] * alpha[level] <= s_max:
                    break
                alpha[level] = 0
                level -= 1
            if level < 0:
                break
            for i in range(level + 1, n):
                partial[i] = partial[i - 1] + w[i - 1] * alpha[i - 1]
        return [hist[s] for s in range(s_max + 1)]
    finally:
        free(b)
        free(w)
        free(alpha)
        free(partial)
        free(hist)
