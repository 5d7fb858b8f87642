import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adsorbits.errors import ArgumentError
from adsorbits.kaehler import (
    RealSubspace,
    build_w_decomposition,
    constant_kaehler_angle,
    kaehler_angle,
    kaehler_spectrum,
)


def e(m, j):
    """Canonical e_j (j >= 2) of the g_alpha coordinates, stored at j - 2."""
    v = np.zeros(m, dtype=complex)
    v[j - 2] = 1
    return v


def test_complex_line_has_angle_zero():
    V = RealSubspace.complex_span([e(3, 2)], 3)
    v = (1 + 2j) * e(3, 2)
    assert kaehler_angle(v, V) == pytest.approx(0, abs=1e-12)


def test_totally_real_plane():
    V = RealSubspace(3, (e(3, 2), e(3, 3)))
    assert kaehler_angle(e(3, 2), V) == pytest.approx(math.pi / 2)


def test_w_phi_vector_angle_by_projection_formula():
    phi = math.pi / 3
    dec = build_w_decomposition(0, 1, phi, 3)
    f1 = dec.w_phi.basis[0]
    assert kaehler_angle(f1, dec.w_phi) == pytest.approx(phi, abs=1e-12)
    # independent route: cos(angle) = |proj_V(i v)| / |v| with V orthonormalized by hand
    Q, _ = np.linalg.qr(np.array([np.r_[b.real, b.imag] for b in dec.w_phi.basis]).T)
    iv = 1j * f1
    x = np.r_[iv.real, iv.imag]
    assert np.linalg.norm(Q.T @ x) / np.linalg.norm(f1) == pytest.approx(math.cos(phi), abs=1e-12)


def test_kaehler_angle_errors():
    V = RealSubspace(3, (e(3, 2),))
    with pytest.raises(ArgumentError):
        kaehler_angle(e(3, 3), V)
    with pytest.raises(ArgumentError):
        kaehler_angle(np.zeros(3), V)


def test_constant_angle_examples():
    assert constant_kaehler_angle(RealSubspace.complex_span([e(4, 2), e(4, 3)], 4)) == pytest.approx(0, abs=1e-12)
    assert constant_kaehler_angle(RealSubspace(4, (e(4, 2), e(4, 3), e(4, 4)))) == pytest.approx(math.pi / 2)


def test_mixed_space_has_no_constant_angle():
    # e_2 is totally real while f, h span a plane of angle phi
    phi = math.pi / 5
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    f = c * e(3, 3) + s * 1j * e(3, 4)
    h = c * 1j * e(3, 3) + s * e(3, 4)
    V = RealSubspace(3, (e(3, 2), f, h))
    assert constant_kaehler_angle(V) is None
    np.testing.assert_allclose(kaehler_spectrum(V), [phi, phi, math.pi / 2], atol=1e-12)


def test_two_vectors_of_a_half_angle_space_are_totally_real():
    # e_2 and cos(phi/2) e_3 + sin(phi/2) i e_4 alone span a totally real plane
    phi = math.pi / 3
    V = RealSubspace(3, (e(3, 2), math.cos(phi / 2) * e(3, 3) + math.sin(phi / 2) * 1j * e(3, 4)))
    assert constant_kaehler_angle(V) == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("phi", [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2])
@pytest.mark.parametrize("k,ell", [(0, 1), (1, 1), (0, 2), (2, 1)])
def test_w_decomposition_structure(k, ell, phi):
    n = k + 2 * ell + 1
    dec = build_w_decomposition(k, ell, phi, n)
    assert dec.w0.dim == 2 * k and dec.w_phi.dim == 2 * ell and dec.w_perp.dim == 2 * ell
    assert constant_kaehler_angle(dec.w_phi) == pytest.approx(phi, abs=1e-9)
    assert constant_kaehler_angle(dec.w_perp) == pytest.approx(phi, abs=1e-9)
    assert dec.w0.is_orthogonal_to(dec.w_phi) and dec.w_phi.is_orthogonal_to(dec.w_perp)
    assert dec.w.dim + dec.w_perp.dim == 2 * (n - 1)


def test_w_decomposition_parameter_mismatch():
    with pytest.raises(ArgumentError):
        build_w_decomposition(1, 1, 0.5, 3)
    with pytest.raises(ArgumentError):
        build_w_decomposition(0, 1, 0.0, 3)


@given(st.floats(0.05, math.pi / 2), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_angle_is_constant_on_random_vectors(phi, seed):
    dec = build_w_decomposition(1, 1, phi, 4)
    c = np.random.default_rng(seed).normal(size=2)
    v = c[0] * dec.w_perp.basis[0] + c[1] * dec.w_perp.basis[1]
    assert kaehler_angle(v, dec.w_perp) == pytest.approx(phi, abs=1e-9)


def test_dependent_basis_rejected():
    with pytest.raises(ArgumentError):
        RealSubspace(3, (e(3, 2), 2 * e(3, 2)))
