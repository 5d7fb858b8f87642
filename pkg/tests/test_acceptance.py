"""Acceptance suite: one group of tests per criterion, summarized as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
every criterion once.
"""

import math
import sys

import numpy as np
import pytest

from adsorbits import so2n_actions as so
from adsorbits import su1n_actions as su
from adsorbits.cli_report import fn_plus_n, random_fn_subalgebra, random_s_normal_point, cohomogeneity_one_cases
from adsorbits.indefinite_linear import COMPLEX, REAL, basepoint, real_to_complex, sample_ads_point, spans_equal
from adsorbits.kaehler import build_w_decomposition, constant_kaehler_angle
from adsorbits.lie_core import Algebra, combine, exp_series, killing_form, killing_form_adtrace, random_element
from adsorbits.orbit_engine import (
    cohomogeneity_report,
    fiber_contained,
    invariant_subspace,
    orbit_dim,
    tangent_vectors,
    tube_sample,
)
from adsorbits.roots import closed_form_root_space, iwasawa_parts, nilpotency_degree, root_decomposition

SO_NS = [3, 4, 5, 6]
SU_NS = [2, 3, 4]


def crit(number, title):
    return pytest.mark.criterion(number, title)


# 1 -----------------------------------------------------------------------


@crit(1, "so(2,n) restricted roots, multiplicities and closed-form spans")
@pytest.mark.parametrize("n", SO_NS)
def test_so_root_structure(n):
    dec = root_decomposition(Algebra.SO, n)
    pos = {(1, 0): 1, (0, 1): n - 2, (1, 1): n - 2, (1, 2): 1}
    expected = {**pos, **{(-a, -b): m for (a, b), m in pos.items()}}
    assert dec.multiplicities() == expected
    for root in dec.roots:
        computed = [x.mat for x in dec.space(root)]
        closed = [x.mat for x in closed_form_root_space(Algebra.SO, n, root)]
        assert spans_equal(computed, closed, 1e-8), root


# 2 -----------------------------------------------------------------------


@crit(2, "su(1,n) restricted roots and multiplicities")
@pytest.mark.parametrize("n", SU_NS)
def test_su_root_structure(n):
    dec = root_decomposition(Algebra.SU, n)
    assert dec.multiplicities() == {(-2,): 1, (-1,): 2 * (n - 1), (1,): 2 * (n - 1), (2,): 1}
    for root in dec.roots:
        computed = [x.mat for x in dec.space(root)]
        assert spans_equal(computed, [x.mat for x in closed_form_root_space(Algebra.SU, n, root)], 1e-8)


# 3 -----------------------------------------------------------------------


@crit(3, "Killing form n tr XY against the ad-trace oracle")
@pytest.mark.parametrize("n", SO_NS)
def test_killing_form_identity(n):
    rng = np.random.default_rng([3, n])
    for _ in range(50):
        X, Y = random_element(Algebra.SO, n, rng), random_element(Algebra.SO, n, rng)
        ref = killing_form_adtrace(X, Y)
        assert abs(killing_form(X, Y) - ref) <= 1e-8 * abs(ref)


# 4 -----------------------------------------------------------------------


def _max_exp_gap(closed, series):
    return float(np.abs(closed.mat - series.mat).max())


@crit(4, "closed-form exponentials against the power series")
@pytest.mark.parametrize("kind", ["so-singular", "so-principal"])
@pytest.mark.parametrize("n", SO_NS)
def test_so_closed_exponentials(n, kind):
    rng = np.random.default_rng([4, n, len(kind)])
    worst = 0.0
    for _ in range(200):
        a, b = rng.uniform(-2, 2, 2)
        vec = rng.uniform(-2, 2, n - 2)
        X = so.singular(a, vec) if kind == "so-singular" else so.principal(a, b, vec)
        worst = max(worst, _max_exp_gap(so.exp_n_closed(X, n), exp_series(X.element(n))))
    assert worst <= 1e-10


@crit(4, "closed-form exponentials against the power series")
@pytest.mark.parametrize("kind", ["A", "N", "S"])
@pytest.mark.parametrize("n", SU_NS)
def test_su_closed_exponentials(n, kind):
    rng = np.random.default_rng([4, n, ord(kind)])
    worst = 0.0
    for i in range(200):
        x, mu = rng.uniform(-2, 2, 2)
        if i % 20 == 0:
            x = 10.0 ** rng.uniform(-8, -3)  # exercise the small-x expansions
        z = rng.uniform(-1, 1, n - 1) + 1j * rng.uniform(-1, 1, n - 1)
        params = {"A": su.AParams(x), "N": su.NParams(mu, z), "S": su.SParams(x, mu, z)}[kind]
        worst = max(worst, _max_exp_gap(su.exp_closed(params, n), exp_series(su.algebra_element_of(params, n))))
    assert worst <= 1e-10


# 5 -----------------------------------------------------------------------


@crit(5, "N has cohomogeneity one on the real model; dims split by p2 = p4")
@pytest.mark.parametrize("n", SO_NS)
def test_n_cohomogeneity_one(n):
    nil = so.n_subalgebra(n)
    free = [sample_ads_point(n, REAL, (5, n, i)) for i in range(200)]
    sing = [sample_ads_point(n, REAL, (55, n, i), equal=[(2, 4)]) for i in range(50)]
    rep = cohomogeneity_report(nil, REAL, n, 1, (5, n, 999), points=free + sing)
    assert rep.value == 1
    assert rep.dims == [n - 1, n]
    for p in free:
        assert orbit_dim(nil, p) == n
    for p in sing:
        assert orbit_dim(nil, p) == n - 1


# 6 -----------------------------------------------------------------------


def _residual(group_elem, p, q):
    return float(np.linalg.norm(group_elem.apply(p).coords - q.coords))


@crit(6, "slice solvers round-trip within 1e-9")
@pytest.mark.parametrize("n", SO_NS)
def test_so_slice_solver(n):
    rng = np.random.default_rng([6, n])
    for i in range(100):
        if i % 2:
            p = sample_ads_point(n, REAL, (6, n, i))
            X = so.principal(*rng.uniform(-1, 1, 2), rng.uniform(-1, 1, n - 2))
        else:
            p = sample_ads_point(n, REAL, (6, n, i), equal=[(2, 4)])
            X = so.singular(rng.uniform(-1, 1), rng.uniform(-1, 1, n - 2))
        q = so.exp_n_closed(X, n).apply(p)
        assert _residual(so.exp_n_closed(so.solve_n_element_so(p, q), n), p, q) <= 1e-9


@crit(6, "slice solvers round-trip within 1e-9")
@pytest.mark.parametrize("n", SU_NS)
def test_su_n_slice_solver(n):
    rng = np.random.default_rng([61, n])
    for i in range(100):
        p = sample_ads_point(n, COMPLEX, (61, n, i))
        q = su.n_slice_point(p, rng.normal(), rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1))
        assert _residual(su.exp_closed(su.solve_slice_element("N", p, q), n), p, q) <= 1e-9


@crit(6, "slice solvers round-trip within 1e-9")
@pytest.mark.parametrize("n", SU_NS)
def test_su_s_slice_solver(n):
    rng = np.random.default_rng([62, n])
    for i in range(100):
        d = su.CaseDescriptor("4", n, r=1 + i % (n - 1))
        w = d.w()
        p = random_s_normal_point(d.w_perp(), n, rng)
        wp = real_to_complex(rng.standard_normal(w.dim) @ w.orthonormal)
        q = su.s_slice_point(w, p, rng.normal(), rng.normal(), wp)
        assert _residual(su.exp_closed(su.solve_slice_element("S", p, q, w), n), p, q) <= 1e-9


# 7 -----------------------------------------------------------------------


def _foliation_label(p):
    r, s = p[1] - p[3], p[0] - p[2]
    if abs(r) > 1e-12:
        return "principal_plus" if r > 0 else "principal_minus"
    return "singular_plus" if s > 0 else "singular_minus"


@crit(7, "parabolic Q0, Q1, Q2 orbit dimensions and leaf labels")
@pytest.mark.parametrize("n", SO_NS)
def test_parabolic_orbits(n):
    free = [sample_ads_point(n, REAL, (7, n, i)) for i in range(80)]
    sing = [sample_ads_point(n, REAL, (77, n, i), equal=[(2, 4)]) for i in range(20)]
    q0, q1, q2 = (so.group_subalgebra(g, n) for g in ("Q0", "Q1", "Q2"))
    assert all(orbit_dim(q2, p) == n + 1 for p in free + sing)
    assert all(orbit_dim(q0, p) == n and orbit_dim(q1, p) == n for p in sing)
    for group in ("Q0", "Q1", "AN"):
        assert all(so.leaf_id(group, p).label == _foliation_label(p) for p in free + sing)


@crit(7, "parabolic Q0, Q1, Q2 orbit dimensions and leaf labels")
@pytest.mark.parametrize("group", ["Q0", "Q1", "AN"])
@pytest.mark.parametrize("n", SO_NS)
def test_leaves_preserved(n, group):
    h = so.group_subalgebra(group, n)
    rng = np.random.default_rng([71, n])
    pts = [sample_ads_point(n, REAL, (71, n, i)) for i in range(40)]
    pts += [sample_ads_point(n, REAL, (72, n, i), equal=[(2, 4)]) for i in range(10)]
    for _ in range(50):
        g = exp_series(combine(rng.uniform(-1, 1, h.dim), h.basis))
        for p in pts:
            assert so.leaf_id(group, g.apply(p)).same_leaf(so.leaf_id(group, p))


# 8 -----------------------------------------------------------------------


@crit(8, "R H_{a,b} + n has cohomogeneity one iff b = 0")
@pytest.mark.parametrize("n", [3, 4, 5])
def test_line_plus_n_dichotomy(n):
    grid = [-1.0, -0.5, 0.0, 0.5, 1.0]
    sing = [sample_ads_point(n, REAL, (8, n, i), equal=[(2, 4)]) for i in range(10)]
    for a in grid:
        for b in grid:
            if a == b == 0:
                continue
            value = cohomogeneity_report(so.line_plus_n(a, b, n), REAL, n, 30, (8, n), sing).value
            assert (value == 1) == (b == 0), (a, b, value)


# 9 -----------------------------------------------------------------------

CASES = [(n, d) for n in SU_NS for d in cohomogeneity_one_cases(n)]
CASE_IDS = [f"n{n}-{d.label}" for n, d in CASES]


def _cases(pred):
    sel = [(n, d) for n, d in CASES if pred(d)]
    return pytest.mark.parametrize("n,d", sel, ids=[f"n{n}-{d.label}" for n, d in sel])


@crit(9, "the seven cohomogeneity one families on the complex model")
@pytest.mark.parametrize("n,d", CASES, ids=CASE_IDS)
def test_case_cohomogeneity_one(n, d):
    rep = cohomogeneity_report(su.case_subalgebra(d), COMPLEX, n, 50, (9, n))
    assert rep.value == 1


@crit(9, "the seven cohomogeneity one families on the complex model")
@_cases(lambda d: d.case in ("1a", "1b", "1c"))
def test_case_one_all_principal(n, d):
    rep = cohomogeneity_report(su.case_subalgebra(d), COMPLEX, n, 50, (91, n))
    assert rep.dims == [2 * n]


@crit(9, "the seven cohomogeneity one families on the complex model")
@_cases(lambda d: d.case == "2")
def test_case_two_singular_dim(n, d):
    assert orbit_dim(su.case_subalgebra(d), basepoint(COMPLEX, n)) == 2 * d.k + 1


@crit(9, "the seven cohomogeneity one families on the complex model")
@_cases(lambda d: d.case in ("4", "5"))
def test_case_four_five_singular_dim(n, d):
    assert orbit_dim(su.case_subalgebra(d), basepoint(COMPLEX, n)) == d.W_dim() - 1


@crit(9, "the seven cohomogeneity one families on the complex model")
@_cases(lambda d: d.case in ("4", "5"))
def test_case_four_five_W_invariant(n, d):
    assert invariant_subspace(su.case_subalgebra(d), d.W())


@crit(9, "the seven cohomogeneity one families on the complex model")
@_cases(lambda d: d.case not in ("1a", "1c"))
def test_case_fiber_containment(n, d):
    h = su.case_subalgebra(d)
    pts = [sample_ads_point(n, COMPLEX, (92, n, i)) for i in range(50)]
    assert all(fiber_contained(h, p) for p in pts)


@crit(9, "the seven cohomogeneity one families on the complex model")
@pytest.mark.parametrize("n", SU_NS)
def test_fn_criterion_matches_measurement(n):
    rng = np.random.default_rng([93, n])
    for i in range(20):
        f, _ = random_fn_subalgebra(n, rng, admissible=i % 2 == 0)
        measured = cohomogeneity_report(fn_plus_n(f, n), COMPLEX, n, 10, (93, n, i)).value
        assert su.fn_cohomogeneity_one(f) == (measured == 1)


# 10 ----------------------------------------------------------------------


@crit(10, "(f + n) . p equals (f_c + n) . p for admissible f")
@pytest.mark.parametrize("n", SU_NS)
def test_fn_reduction(n):
    rng = np.random.default_rng([10, n])
    for i in range(10):
        f, _ = random_fn_subalgebra(n, rng, admissible=True)
        c = su.fn_c(f)
        fn = fn_plus_n(f, n)
        fc = su.f_c_plus_n(c, n)
        for j in range(50):
            p = sample_ads_point(n, COMPLEX, (10, n, i, j))
            assert spans_equal(tangent_vectors(fn, p), tangent_vectors(fc, p))


# 11 ----------------------------------------------------------------------


@crit(11, "w_perp has constant Kähler angle phi and real dimension 2 ell")
@pytest.mark.parametrize("phi", [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2])
@pytest.mark.parametrize("n,ell", [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2)])
def test_kaehler_angle_of_complement(n, ell, phi):
    dec = build_w_decomposition(n - 1 - 2 * ell, ell, phi, n)
    angle = constant_kaehler_angle(dec.w_perp)
    assert angle is not None and abs(angle - phi) <= 1e-9
    assert dec.w_perp.dim == 2 * ell


# 12 ----------------------------------------------------------------------


@crit(12, "tubes around the singular orbit are principal")
@pytest.mark.parametrize("r", [0.5, 1.0])
@_cases(lambda d: d.case in ("2", "5"))
def test_tubes_are_principal(n, d, r):
    h = su.case_subalgebra(d)
    pts = tube_sample(h, basepoint(COMPLEX, n), r, 20, (12, n))
    assert [orbit_dim(h, q) for q in pts] == [2 * n] * 20


# 13 ----------------------------------------------------------------------


@crit(13, "nilpotency degree 3 in so(2,n) and 2 in su(1,n)")
@pytest.mark.parametrize("n", SO_NS)
def test_so_nilpotency(n):
    assert nilpotency_degree(iwasawa_parts(root_decomposition(Algebra.SO, n))[2]) == 3
    assert nilpotency_degree(so.n_subalgebra(n)) == 3


@crit(13, "nilpotency degree 3 in so(2,n) and 2 in su(1,n)")
@pytest.mark.parametrize("n", SU_NS)
def test_su_nilpotency(n):
    assert nilpotency_degree(iwasawa_parts(root_decomposition(Algebra.SU, n))[2]) == 2
    assert nilpotency_degree(su.n_subalgebra(n)) == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
