import numpy as np
import pytest

from adsorbits.errors import ArgumentError, NotNilpotentError
from adsorbits.indefinite_linear import spans_equal
from adsorbits.lie_core import Algebra, Subalgebra, algebra_basis, bracket
from adsorbits.roots import (
    closed_form_k0,
    closed_form_root_space,
    covector,
    flat_so,
    flat_su,
    iwasawa_parts,
    maximal_flat,
    nilpotency_degree,
    root_decomposition,
)


def test_flat_dimensions_and_abelian():
    so_flat = maximal_flat(Algebra.SO, 4)
    assert len(so_flat) == 2 and len(maximal_flat(Algebra.SU, 3)) == 1
    assert bracket(*so_flat).norm() == 0


def test_flat_element_entries():
    H = flat_so(0.5, -2.0, 3)
    assert H.mat[0, 2] == 0.5 and H.mat[1, 3] == -2.0
    assert flat_su(1.0, 2).mat[0, 1] == 1


def test_alpha2_multiplicity_at_n5():
    assert root_decomposition(Algebra.SO, 5).multiplicity((0, 1)) == 3


@pytest.mark.parametrize("n", [3, 4, 5])
def test_so_root_spaces_are_eigenspaces(n):
    rng = np.random.default_rng(n)
    a, b = rng.normal(size=2)
    H = flat_so(a, b, n)
    for root in [(1, 0), (0, 1), (1, 1), (1, 2), (-1, -2)]:
        lam = covector(Algebra.SO, root) @ np.array([a, b])
        for X in closed_form_root_space(Algebra.SO, n, root):
            np.testing.assert_allclose(bracket(H, X).mat, lam * X.mat, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_su_root_spaces_are_eigenspaces(n):
    H = flat_su(1.0, n)
    for root in [(1,), (2,), (-1,)]:
        for X in closed_form_root_space(Algebra.SU, n, root):
            np.testing.assert_allclose(bracket(H, X).mat, root[0] * X.mat, atol=1e-12)


def test_closed_form_counts():
    n = 5
    assert len(closed_form_root_space(Algebra.SO, n, (1, 0))) == 1
    assert len(closed_form_root_space(Algebra.SO, n, (0, 1))) == n - 2
    assert len(closed_form_root_space(Algebra.SU, 3, (2,))) == 1


def test_unknown_root():
    with pytest.raises(ArgumentError):
        closed_form_root_space(Algebra.SO, 3, (2, 0))


@pytest.mark.parametrize("alg,n,k0dim", [(Algebra.SO, 3, 0), (Algebra.SO, 5, 3), (Algebra.SU, 2, 1), (Algebra.SU, 4, 9)])
def test_k0_matches_closed_form(alg, n, k0dim):
    dec = root_decomposition(alg, n)
    assert len(dec.k0) == k0dim
    if k0dim:
        assert spans_equal([x.mat for x in dec.k0], [x.mat for x in closed_form_k0(alg, n)], 1e-8)


@pytest.mark.parametrize("alg,n", [(Algebra.SO, 4), (Algebra.SU, 3)])
def test_root_space_decomposition_is_complete(alg, n):
    dec = root_decomposition(alg, n)
    total = len(dec.zero_space) + sum(dec.multiplicities().values())
    assert total == alg.dim(n)


def test_iwasawa_dimensions():
    k0, a, nil = iwasawa_parts(root_decomposition(Algebra.SO, 5))
    assert (k0.dim, a.dim, nil.dim) == (3, 2, 2 * 3 + 2)


def test_nilpotency_examples():
    assert nilpotency_degree(iwasawa_parts(root_decomposition(Algebra.SO, 4))[2]) == 3
    assert nilpotency_degree(iwasawa_parts(root_decomposition(Algebra.SU, 3))[2]) == 2
    assert nilpotency_degree(Subalgebra.span(maximal_flat(Algebra.SO, 3))) == 1


def test_non_nilpotent_detected():
    with pytest.raises(NotNilpotentError):
        nilpotency_degree(Subalgebra.span(algebra_basis(Algebra.SO, 3)))
