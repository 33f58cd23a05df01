import pytest

from toricimplicit.complex import (ComplexContext, NuSearchError, cycle_dim, find_nu0,
                                   koszul_matrix, nu_row)
from toricimplicit.pipeline import JobSpec, prepare
from toricimplicit.toric import ToricAlgebra

from conftest import EXAMPLE_F


def _composites_vanish(ctx, mu):
    for p in (2, 3):
        A, B = koszul_matrix(ctx, p - 1, mu), koszul_matrix(ctx, p, mu)
        if A.cols and B.cols and A.rows:
            assert (A @ B).is_zero()


@pytest.mark.parametrize("which", ["example", "example_small_q", "plane"])
def test_koszul_squares_to_zero(which, request):
    S = request.getfixturevalue(which)
    for mu in range(S.nu0 + 3 * S.d + 1):
        _composites_vanish(S.ctx, mu)


def test_example_nu_table(example):
    r = example.nu_report
    assert r.nu0 == 2
    assert (r.row.dim_a, r.row.z1, r.row.z2, r.row.z3) == (17, 34, 23, 6)
    assert [row.chi for row in r.table[:-1]] != [0] * (len(r.table) - 1)
    assert example.expected_degree() == 6


def test_small_q_nu_table(example_small_q):
    r = example_small_q.nu_report
    assert r.nu0 == 2 == r.d
    assert (r.row.dim_a, r.row.z1, r.row.z2, r.row.z3) == (12, 19, 8, 1)
    assert example_small_q.expected_degree() == 6


def test_plane_nu0_is_zero(plane):
    assert plane.nu0 == 0
    assert plane.expected_degree() == 1


def test_prime_field_agrees(example):
    S = prepare(JobSpec(f=EXAMPLE_F, field="prime"))
    assert S.nu_report.table == example.nu_report.table


def test_cap_reached_raises_with_table(example):
    ctx = ComplexContext(ToricAlgebra(example.Q), example.ctx.g)
    with pytest.raises(NuSearchError) as info:
        find_nu0(ctx, cap=1)
    assert len(info.value.table) == 2


def test_z1_dimension_is_kernel_dimension(example):
    ctx = example.ctx
    assert cycle_dim(ctx, 1, 3) == 34
    assert nu_row(ctx, 2).chi == 0


def test_koszul_rejects_bad_index(example):
    with pytest.raises(ValueError):
        koszul_matrix(example.ctx, 4, 3)


def test_report_json(example):
    js = example.nu_report.to_json()
    assert js["nu0"] == 2 and js["table"][-1]["chi"] == 0
