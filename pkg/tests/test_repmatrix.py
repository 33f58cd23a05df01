from fractions import Fraction
import random

import pytest

from toricimplicit.arith import random_rational
from toricimplicit.pipeline import JobSpec, prepare
from toricimplicit.repmatrix import (P3Point, RepMatrix, evaluate, image_point, rank_at,
                                     syzygy_residual)

from conftest import EXAMPLE_F


def test_shapes(example, example_small_q, plane):
    assert example.rep_matrix.shape == (17, 34)
    assert example_small_q.rep_matrix.shape == (12, 19)
    assert plane.rep_matrix.shape == (1, 1)


@pytest.mark.parametrize("model,kw,shape", [
    ("bihomogeneous", {"bidegree": (2, 6)}, (21, 34)),
    ("bihomogeneous", {"bidegree": (1, 3)}, (21, 34)),
    ("dense-homogeneous", {"field": "prime"}, (28, 35)),
])
def test_comparison_models(model, kw, shape):
    S = prepare(JobSpec(f=EXAMPLE_F, model=model, **kw))
    assert S.rep_matrix.shape == shape


def test_plane_matrix_is_the_plane(plane):
    M = plane.rep_matrix
    entries = [Mi.data[0][0] for Mi in M.pencil]
    scale = entries[0]
    assert [e / scale for e in entries] == [1, 1, 0, -1]


@pytest.mark.parametrize("which", ["example", "example_small_q"])
def test_every_column_is_a_syzygy(which, request):
    S = request.getfixturevalue(which)
    M = S.rep_matrix
    for j in range(M.shape[1]):
        assert all(v == 0 for v in syzygy_residual(M, S.ctx, j))


def test_rank_drops_on_image(example_small_q):
    M = example_small_q.rep_matrix
    rng = random.Random(5)
    for _ in range(3):
        p = image_point(example_small_q.fs, (random_rational(rng, 50), random_rational(rng, 50)))
        assert rank_at(M, p)[1]
    assert not rank_at(M, P3Point([1, 2, 3, 5]))[1]


def test_evaluate_is_linear(example_small_q):
    M = example_small_q.rep_matrix
    a = evaluate(M, P3Point([1, 0, 0, 0]))
    b = evaluate(M, P3Point([0, 1, 0, 0]))
    assert evaluate(M, P3Point([1, 1, 0, 0])) == a + b


def test_json_roundtrip(example_small_q):
    M = example_small_q.rep_matrix
    back = RepMatrix.from_json(M.dumps())
    assert back == M
    js = M.to_json()
    assert js["nu0"] == 2 and js["cols"] == 19 and len(js["rows"]) == 12


def test_p3_point_canonical_form():
    assert P3Point([2, 4, 0, 6]) == P3Point([1, 2, 0, 3])
    assert P3Point([0, Fraction(1, 2), 1, 0]).coords == (0, 1, 2, 0)
    with pytest.raises(ValueError):
        P3Point([0, 0, 0, 0])
