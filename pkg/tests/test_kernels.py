import os
import random
import subprocess
import sys

import pytest
from hypothesis import given
from sympy import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from conftest import seeds
from skewlab import _kernels_py, kernels

try:
    from skewlab import _kernels as compiled
except ImportError:
    compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python"),
            pytest.param(compiled, id="compiled",
                         marks=pytest.mark.skipif(compiled is None, reason="extension not built"))]
PRIMES = [2, 3, 5, 7, 101]


def rand_rows(rng, p):
    r, c = rng.randint(0, 6), rng.randint(1, 6)
    return [[rng.randrange(p) for _ in range(c)] for _ in range(r)], c


@pytest.mark.parametrize("impl", BACKENDS)
@given(seed=seeds)
def test_rref_rank_and_nullspace(impl, seed):
    rng = random.Random(seed)
    p = rng.choice(PRIMES)
    rows, c = rand_rows(rng, p)
    red, pivots = impl.rref_mod_p(rows, c, p)
    rank = DomainMatrix([[SymGF(p)(x) for x in row] for row in rows], (len(rows), c), SymGF(p)).rank() if rows else 0
    assert len(pivots) == rank == len(red)
    for row, pc in zip(red, pivots):
        assert row[pc] == 1 and all(r2[pc] == 0 for r2 in red if r2 is not row)
    null = impl.nullspace_mod_p(rows, c, p)
    assert len(null) == c - rank
    for v in null:
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)


@pytest.mark.skipif(compiled is None, reason="extension not built")
@given(seed=seeds)
def test_backends_agree(seed):
    rng = random.Random(seed)
    p = rng.choice(PRIMES)
    rows, c = rand_rows(rng, p)
    assert compiled.rref_mod_p(rows, c, p) == _kernels_py.rref_mod_p(rows, c, p)
    assert compiled.nullspace_mod_p(rows, c, p) == _kernels_py.nullspace_mod_p(rows, c, p)
    n = rng.randint(1, 4)
    basis = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(0, 4))]
    w = [rng.randint(1, 3) for _ in range(n)]
    assert compiled.lattice_histogram(basis, n, 12, w) == _kernels_py.lattice_histogram(basis, n, 12, w)


@pytest.mark.parametrize("impl", BACKENDS)
def test_lattice_histogram_small(impl):
    # outside (0, 1) + N^2 in N^2: only the points (k, 0), one per size
    assert list(impl.lattice_histogram([(0, 1)], 2, 5, [1, 1])) == [1] * 6
    assert list(impl.lattice_histogram([], 2, 3, [1, 1])) == [1, 2, 3, 4]
    assert list(impl.lattice_histogram([(0, 0, 0)], 3, 3, [1, 1, 1])) == [0, 0, 0, 0]


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("args", [([(0, 0)], 3, 3, [1, 1, 1]), ([], 2, 3, [1]), ([], 2, 3, [1, 0])])
def test_lattice_histogram_rejects_bad_input(impl, args):
    with pytest.raises(ValueError):
        impl.lattice_histogram(*args)


def test_backend_switch():
    assert kernels.BACKEND in ("compiled", "python")
    env = dict(os.environ, SKEWLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from skewlab import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
