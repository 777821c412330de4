import pytest
from hypothesis import given, settings, strategies as st

from gradedtraces import divisibility as dv
from gradedtraces.qfactor import qsymbol
from gradedtraces.scalars import TracePoly, field

from helpers import algebra


@pytest.mark.parametrize("name", ["s3_transpositions", "d4_a2_cover"])
def test_op_derivation_closed_form_in_degree_two(name):
    _, N = algebra(name)
    F, n = N.F, N.braiding.size
    mats = dv.op_derivation(N, 0)
    for x in range(n):
        mats = dv.op_derivation(N, x)
        for y in range(n):
            for z in range(n):
                v = N.reduce((y, z))
                got = {}
                for i, c in v.items():
                    for k, d in mats[2][i].items():
                        got[k] = F.add(got.get(k, F.zero), F.mul(c, d))
                got = {k: c for k, c in got.items() if c != F.zero}
                assert got == dv.op_derivation_closed_form(N, x, y, z)


def test_right_derivations_cut_out_the_relations():
    # in degree >= 1 no nonzero element is killed by every right derivation
    _, N = algebra("s3_transpositions")
    dims = dv.joint_kernel_dims(N, list(range(N.braiding.size)))
    assert dims == [1]


@pytest.mark.parametrize("name,m", [("s3_transpositions", 2), ("a4xz2", 2), ("s4_fourcycles", 2)])
def test_modified_shift(name, m):
    s, N = algebra(name)
    assert dv.order_of_q(s.braiding) == m
    assert dv.coefficients_are_mth_roots(s.braiding, m)
    for x in range(s.braiding.size):
        for a, b, r in dv.xi_bijectivity(N, x, m):
            assert a == b == r
    assert dv.check_shift_equivariance(N, s.group, s.realization, m)


@pytest.mark.parametrize("name", ["s3_transpositions", "a4_char2"])
def test_xi_orbit_of_one_spans(name):
    s, N = algebra(name)
    assert dv.xi_orbit_span(N, dv.order_of_q(s.braiding)) == N.dimension


def test_commutation_scalar_for_a_commuting_letter():
    s, N = algebra("s4_transpositions_sign")
    G, br = s.group, s.braiding
    ops = {l: Q for l, Q, _ in s.operators}
    x = br.degrees.index(G.word("(3 4)"))
    assert dv.commutation_scalar(N, ops["(1 2)"], x, 2) == N.F.neg(N.F.one)
    y = br.degrees.index(G.word("(1 3)"))
    assert dv.commutation_scalar(N, ops["(1 2)"], y, 2) is None


def test_sector_sums_add_up():
    _, N = algebra("a4xz2")
    F = N.F
    sec = dv.SectorDecomposition.of(N.hilbert, 3, F.one)
    total = F.zero
    for v in sec.sums:
        total = F.add(total, v)
    assert total == F.from_int(N.dimension)


Q6 = field(0, 6)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_balanced_iff_divisible_on_random_products(data):
    F = Q6
    roots = F.roots_of_unity()
    p = TracePoly.one(F)
    for _ in range(data.draw(st.integers(0, 4))):
        p = p * qsymbol(F, data.draw(st.integers(2, 4)), data.draw(st.sampled_from(roots)),
                        data.draw(st.integers(1, 2)))
    extra = data.draw(st.lists(st.integers(-2, 2), min_size=1, max_size=3))
    p = p * TracePoly.from_values(F, extra) if any(extra) else p
    k = data.draw(st.integers(1, 6))
    lam = data.draw(st.sampled_from([r for r in roots if F.pow(r, k) == F.one]))
    bal, div = dv.balanced_and_divisible(p, k, lam)
    assert bal == div


def test_sub_nichols_divisibility():
    s, N = algebra("s4_transpositions_sign")
    G, F = s.group, N.F
    rep, chi = s.blocks[0]
    sub = dv.sub_nichols(G, s.realization, rep, chi, [G.word("(1 2)"), G.word("(1 2 3)")], F)
    assert sub.algebra.dimension == 12
    for label, Q, g in s.operators:
        if g in set(sub.to_big):
            from gradedtraces.traces import graded_trace
            rep_ = dv.divisibility_report(graded_trace(N, Q).poly, [("sub", dv.sub_trace(sub, g))])
            assert rep_[0].divides


def test_order_of_q_requires_constant_diagonal():
    s, _ = algebra("a2_root_of_unity")
    assert dv.order_of_q(s.braiding) == 3
