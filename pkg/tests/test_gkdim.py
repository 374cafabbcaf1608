import random
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given

from conftest import seeds
from skewlab.coeffs import QQ
from skewlab.errors import MathError
from skewlab.gkdim import (NEG_INF, StableSet, dimension_degree, exp_set, gk_dimension, grade_number,
                           hilbert_function, hilbert_polynomial, hilbert_values, minimalize, relations_matrix,
                           threshold)
from skewlab.pbw import PBWAlgebra, polynomial_ring, quantum_plane, sl2, weyl
from skewlab.presentations import Presentation


def brute_count(E, s, w=None):
    """Points (alpha, i) outside E with <w, alpha> <= s, by direct enumeration."""
    n = E.n
    w = w or (1,) * n
    total = 0
    for B in E.bases:
        for alpha in product(*(range(s // wi + 1) for wi in w)):
            if sum(a * wi for a, wi in zip(alpha, w)) <= s and not any(
                    all(x >= y for x, y in zip(alpha, b)) for b in B):
                total += 1
    return total


def brute_hitting(n, B):
    if any(not any(b) for b in B):
        return None
    for k in range(n + 1):
        for sigma in combinations(range(n), k):
            if all(any(b[i] for i in sigma) for b in B):
                return k


def rand_stable(rng, n, levels=None):
    levels = levels or rng.randint(1, 2)
    return StableSet(n, [[tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(0, 5))]
                         for _ in range(levels)])


@given(seed=seeds)
def test_hf_matches_lattice_count(seed):
    rng = random.Random(seed)
    E = rand_stable(rng, rng.randint(1, 3))
    vals = hilbert_values(E, 12)
    for s in range(13):
        assert vals[s] == hilbert_function(E, s) == brute_count(E, s)


@given(seed=seeds)
def test_weighted_hf(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    E = rand_stable(rng, n)
    w = tuple(rng.randint(1, 3) for _ in range(n))
    vals = hilbert_values(E, 10, w)
    for s in range(11):
        assert vals[s] == hilbert_function(E, s, w) == brute_count(E, s, w)


@given(seed=seeds)
def test_polynomial_and_degree(seed):
    rng = random.Random(seed)
    E = rand_stable(rng, rng.randint(1, 4))
    hp = hilbert_polynomial(E)
    s0 = threshold(E)
    for s in range(s0, s0 + 8):
        assert hp(s) == hilbert_function(E, s)
    expected = NEG_INF
    for B in E.bases:
        h = brute_hitting(E.n, minimalize(B))
        if h is not None:
            expected = max(expected, E.n - h)
    assert hp.degree == dimension_degree(E) == expected


def test_examples():
    E = StableSet(2, [[(0, 1)]])
    assert [hilbert_function(E, s) for s in range(5)] == [s + 1 for s in range(5)]
    assert threshold(E) == 1
    for n in (1, 2, 3):
        E = StableSet(n, [[]])
        assert all(hilbert_function(E, s) == comb(n + s, s) for s in range(8))
        assert dimension_degree(E) == n
    E = StableSet(2, [[(2, 0), (0, 2)]])
    hp = hilbert_polynomial(E)
    assert hp.degree == 0 and hp(10) == 4
    E = StableSet(3, [[(0, 0, 0)]])
    assert dimension_degree(E) == NEG_INF and hilbert_polynomial(E).degree == NEG_INF
    assert dimension_degree(StableSet(2, [[(0, 1)]])) == 1


def test_minimalize():
    assert minimalize([(1, 1), (0, 1), (2, 1), (0, 1)]) == [(0, 1)]


# ---------------------------------------------------------------------------
# modules

def test_weyl_examples():
    A = weyl(1, QQ)
    M = relations_matrix(A, [["d"]])
    assert gk_dimension(M) == 1 and grade_number(M) == 1
    assert gk_dimension(relations_matrix(A, [["x", "d"]])) == 2
    assert gk_dimension(Presentation.free(A, 1)) == 2
    assert gk_dimension(relations_matrix(A, [["1"]])) == NEG_INF
    with pytest.raises(MathError):
        grade_number(relations_matrix(A, [["1"]]))


def test_commutative_examples():
    R = polynomial_ring(["x", "y"], QQ)
    assert grade_number(relations_matrix(R, [["x"], ["y"]])) == 2
    assert gk_dimension(relations_matrix(R, [["x*y"]])) == 1


@pytest.mark.parametrize("A", [weyl(1, QQ), weyl(2, QQ), quantum_plane(QQ(2), QQ),
                               polynomial_ring(["x", "y", "z"], QQ), sl2(QQ)],
                         ids=["A1", "A2", "qplane", "k3", "sl2"])
def test_free_module(A):
    assert gk_dimension(Presentation.free(A, 1)) == A.n
    assert gk_dimension(Presentation.free(A, 2)) == A.n


def test_exp_set_uses_weights():
    # x2 x1 = x1 x2 + x1^3 needs w = (1, 3); deglex would not bound the relation
    A = PBWAlgebra(QQ, ["x1", "x2"], {(1, 0): (1, "x1^3")}, {"type": "weighted", "weights": [1, 3]})
    E = exp_set(relations_matrix(A, [["x2"]]))
    assert E.w == (1, 3)
    assert E.bases == [[(0, 1)]]
    assert gk_dimension(relations_matrix(A, [["x2"]])) == 1
    with pytest.raises(MathError):
        exp_set(relations_matrix(A, [["x2"]]), None, (1, 1))


@given(seed=seeds)
def test_weighted_and_standard_hf_bound(seed):
    # HF is monotone and bounded by the free module count
    rng = random.Random(seed)
    E = rand_stable(rng, 2)
    vals = hilbert_values(E, 8)
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert all(v <= E.rank * comb(2 + s, 2) for s, v in enumerate(vals))
