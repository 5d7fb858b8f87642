import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adsorbits.errors import ConstraintError, DimensionError, UnsupportedError
from adsorbits.indefinite_linear import (
    COMPLEX,
    REAL,
    AdsPoint,
    Signature,
    basepoint,
    complex_to_real,
    form,
    hermitian_real_part,
    numerical_rank,
    project_onto,
    real_to_complex,
    sample_ads_point,
    scalar_product,
    span_contains,
    spans_equal,
)
from adsorbits.roots import closed_form_root_space
from adsorbits.lie_core import Algebra

SIG23 = Signature(2, 3)


def unit(dim, i, dtype=float):
    e = np.zeros(dim, dtype=dtype)
    e[i] = 1
    return e


def test_scalar_product_basis_vectors():
    assert scalar_product(unit(5, 0), unit(5, 0), SIG23) == -1
    assert scalar_product(unit(5, 0), unit(5, 2), SIG23) == 0
    assert scalar_product([1, 0, 1, 0, 0], [1, 0, 1, 0, 0], SIG23) == 0


def test_scalar_product_length_mismatch():
    with pytest.raises(DimensionError):
        scalar_product(np.ones(4), np.ones(5), SIG23)


def test_hermitian_real_part_examples():
    e0 = unit(3, 0, complex)
    assert hermitian_real_part(e0, e0) == -1
    assert hermitian_real_part(e0, 1j * e0) == 0
    assert hermitian_real_part(np.ones(3, complex), np.ones(3, complex)) == 1
    with pytest.raises(DimensionError):
        hermitian_real_part(np.ones(3), np.ones(2))


def test_complex_to_real_layout():
    np.testing.assert_array_equal(complex_to_real(unit(3, 0, complex)), [1, 0, 0, 0, 0, 0])
    np.testing.assert_array_equal(complex_to_real(1j * unit(3, 1, complex)), [0, 0, 0, 1, 0, 0])


@given(st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=3, max_size=6))
def test_realification_round_trip(zs):
    z = np.array(zs)
    np.testing.assert_array_equal(real_to_complex(complex_to_real(z)), z)


@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
@settings(max_examples=50)
def test_realification_preserves_the_form(a, b):
    # the complex scalar product is the real R^{2,2n} product after realification
    rng = np.random.default_rng([a, b])
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    w = rng.normal(size=4) + 1j * rng.normal(size=4)
    real = scalar_product(complex_to_real(z), complex_to_real(w), Signature(2, 6))
    assert np.isclose(hermitian_real_part(z, w), real)


def test_basepoints_on_quadric():
    assert basepoint(REAL, 3).residual() == 0
    assert basepoint(COMPLEX, 2).residual() == 0


@pytest.mark.parametrize("model,n", [(REAL, 3), (REAL, 6), (COMPLEX, 2), (COMPLEX, 4)])
def test_sampler_lands_on_quadric(model, n):
    for i in range(30):
        assert sample_ads_point(n, model, (1, i)).residual() < 1e-10


def test_sampler_is_deterministic():
    p, q = sample_ads_point(3, REAL, 11), sample_ads_point(3, REAL, 11)
    np.testing.assert_array_equal(p.coords, q.coords)


def test_sampler_constraints_hold():
    for i in range(20):
        p = sample_ads_point(5, REAL, i, equal=[(2, 4)])
        assert abs(p[1] - p[3]) < 1e-12
        q = sample_ads_point(3, COMPLEX, i, zero=[2, 3])
        assert abs(q[2]) < 1e-12 and abs(q[3]) < 1e-12


def test_sampler_unsatisfiable_constraint():
    # zeroing both timelike coordinates leaves a spacelike subspace
    with pytest.raises(ConstraintError):
        sample_ads_point(3, REAL, 0, zero=[1, 2])


def test_ads_point_rejects_off_quadric():
    with pytest.raises(ConstraintError):
        AdsPoint.from_coords(np.array([2.0, 0, 0, 0, 0]))


def test_numerical_rank_examples():
    e1, e2 = unit(3, 0), unit(3, 1)
    assert numerical_rank([e1, e2, e1 + e2]) == 2
    assert numerical_rank([np.zeros(3)]) == 0
    g = closed_form_root_space(Algebra.SO, 5, (0, 1))
    assert numerical_rank([x.mat for x in g]) == 3


def test_project_onto_examples():
    V = [unit(3, 0), unit(3, 1)]
    v = np.array([1.0, 2.0, 0.0])
    np.testing.assert_allclose(project_onto(v, V), v)
    np.testing.assert_allclose(project_onto(unit(3, 2), V), 0, atol=1e-15)
    z = np.array([1, 1j])
    np.testing.assert_allclose(project_onto(z, [unit(2, 0, complex)]), [1, 0])


def test_project_onto_indefinite_subspace():
    with pytest.raises(UnsupportedError):
        project_onto(unit(5, 0), [unit(5, 0), unit(5, 2)], SIG23)


@given(st.integers(0, 10_000))
@settings(max_examples=30)
def test_projection_is_idempotent(seed):
    rng = np.random.default_rng(seed)
    V = rng.normal(size=(2, 5))
    v = rng.normal(size=5)
    once = project_onto(v, V)
    np.testing.assert_allclose(project_onto(once, V), once, atol=1e-10)
    assert span_contains(V, once)


def test_span_helpers():
    a = np.eye(4)[:2]
    b = np.array([[1.0, 1, 0, 0], [1, -1, 0, 0]])
    assert spans_equal(a, b)
    assert not span_contains(a, np.eye(4)[2])
    assert form(unit(5, 2), unit(5, 2), REAL) == 1
