"""Pure-Python reference versions of the integer kernels."""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over F_p; returns (rows, pivot_columns)."""
    m = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        row = [x * inv % p for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                other = m[i]
                m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace_mod_p(rows, ncols, p):
    """Basis of {v : A v = 0} over F_p."""
    red, pivots = rref_mod_p(rows, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fcol]) % p
        basis.append(v)
    return basis


def lattice_histogram(bases, n, s_max, weights):
    """Count points of N^n outside the union of cones b + N^n, by weighted size 0..s_max."""
    bases = [tuple(b) for b in bases]
    if n < 0 or s_max < 0:
        raise ValueError("n and s_max must be nonnegative")
    if len(weights) != n or any(x < 1 for x in weights):
        raise ValueError("need n weights, all >= 1")
    if any(len(b) != n for b in bases):
        raise ValueError("every basis element needs n coordinates")
    hist = [0] * (s_max + 1)
    alpha = [0] * n

    def inside():
        for b in bases:
            for i in range(n):
                if alpha[i] < b[i]:
                    break
            else:
                return True
        return False

    def rec(i, used):
        if i == n:
            if not inside():
                hist[used] += 1
            return
        w = weights[i]
        e = 0
        while used + w * e <= s_max:
            alpha[i] = e
            rec(i + 1, used + w * e)
            e += 1
        alpha[i] = 0

    rec(0, 0)
    return hist
