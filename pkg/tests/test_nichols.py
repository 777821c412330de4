import os

import pytest
from hypothesis import given, settings, strategies as st

from gradedtraces.braidings import diagonal_braiding
from gradedtraces.nichols import (build, cache_path, load_cache, symmetrizer_rank_oracle)
from gradedtraces.qfactor import qsymbol
from gradedtraces.scalars import TracePoly, field

from helpers import algebra

F12 = field(0, 12)


def zeta(j):
    return F12.zeta_pow(j % 12)


def order_of(j):
    from math import gcd
    return 12 // gcd(j % 12, 12)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 11))
def test_rank_one_diagonal_is_truncated_polynomial_ring(j):
    N = order_of(j)
    A = build(diagonal_braiding(F12, [[zeta(j)]]), 20)
    assert A.complete and A.hilbert == qsymbol(F12, N, F12.one, 1)


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 11), st.integers(1, 11), st.integers(0, 11))
def test_quantum_plane_is_a_tensor_product(j1, j2, c):
    # q12 q21 = 1: B(V) = B(x1) (x) B(x2)
    br = diagonal_braiding(F12, [[zeta(j1), zeta(c)], [zeta(-c), zeta(j2)]])
    A = build(br, 30)
    want = qsymbol(F12, order_of(j1), F12.one, 1) * qsymbol(F12, order_of(j2), F12.one, 1)
    assert A.complete and A.hilbert == want


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 11), min_size=4, max_size=9))
def test_random_diagonal_braidings_match_symmetrizer(exps):
    n = 3 if len(exps) >= 9 else 2
    m = [[zeta(exps[(i * n + j) % len(exps)]) for j in range(n)] for i in range(n)]
    br = diagonal_braiding(F12, m)
    A = build(br, 3)
    for d in range(1, min(3, A.top_degree) + 1):
        assert symmetrizer_rank_oracle(br, d) == A.dims[d]


@pytest.mark.parametrize("name,dims", [
    ("s3_transpositions", [1, 3, 4, 3, 1]),
    ("a2_minus_one", [1, 2, 2, 2, 1]),
    ("d4_a2_cover", None),
])
def test_known_layer_dimensions(name, dims):
    if dims is None:
        # (1+t)^4 (1+t^2)^2 by plain convolution
        dims = [1]
        for f in [[1, 1]] * 4 + [[1, 0, 1]] * 2:
            dims = [sum(dims[i] * f[n - i] for i in range(len(dims)) if 0 <= n - i < len(f))
                    for n in range(len(dims) + len(f) - 1)]
    _, N = algebra(name)
    assert N.dims == dims and N.complete


@pytest.mark.parametrize("name", ["s3_transpositions", "a4xz2", "s4_fourcycles", "a3_flip"])
def test_derivation_recursion_and_reduction(name):
    _, N = algebra(name)
    for n in range(1, len(N.layers)):
        assert N.check_recursion(n)
    # every basis word reduces to its own basis vector
    for n in range(len(N.layers)):
        for i, w in enumerate(N.layers[n].words):
            assert N.reduce(w) == {i: N.F.one}


def test_cap_reached_is_reported():
    F = field(0, 1)
    A = build(diagonal_braiding(F, [[1]]), 5)     # q = 1: polynomial ring
    assert not A.complete and A.dims == [1] * 6


def test_cache_round_trip(tmp_path):
    s, N = algebra("s4_transpositions_mixed")
    B = build(s.braiding, 40, cache_dir=str(tmp_path))
    path = cache_path(s.braiding, str(tmp_path))
    assert os.path.exists(path)
    C = load_cache(s.braiding, path)
    assert C.dims == N.dims == B.dims and C.complete
    assert [L.words for L in C.layers] == [L.words for L in N.layers]
    # a corrupted cache is ignored and rebuilt
    with open(path, "w") as f:
        f.write("garbage")
    D = build(s.braiding, 40, cache_dir=str(tmp_path))
    assert D.dims == N.dims


def test_multiplication_is_associative_on_samples():
    _, N = algebra("s3_transpositions")
    F = N.F
    for a in range(3):
        for b in range(3):
            for c in range(3):
                left = N.reduce((a, b, c))
                ab = N.reduce((a, b))
                right = N.multiply(ab, 2, {c: F.one}, 1)
                assert left == right
