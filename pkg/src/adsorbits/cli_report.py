"""Command-line verification suites and their JSON/text reports.

Usage::

    adsorbits verify --suite prop-4-1 --n 3-6 --samples 200 --seed 7
    adsorbits list-suites
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kaehler as kh
from . import so2n_actions as so
from . import su1n_actions as su
from .errors import AdsOrbitsError, WrongHalfError
from .indefinite_linear import (
    COMPLEX,
    REAL,
    AdsPoint,
    basepoint,
    numerical_rank,
    real_to_complex,
    realify,
    sample_ads_point,
    spans_equal,
)
from .lie_core import (
    Algebra,
    combine,
    exp_series,
    killing_form,
    killing_form_adtrace,
    random_element,
)
from .orbit_engine import (
    cohomogeneity_report,
    fiber_contained,
    invariant_subspace,
    orbit_dim,
    tangent_vectors,
    tube_sample,
)
from .roots import (
    SO_POSITIVE,
    SU_POSITIVE,
    closed_form_k0,
    closed_form_root_space,
    iwasawa_parts,
    nilpotency_degree,
    root_decomposition,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n_range: tuple
    samples: int
    seed: int
    tol: float = 1e-9
    format: str = "json"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.samples < 1:
            raise UsageError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        lo, hi = SUITES[self.suite].n_bounds
        bad = [n for n in self.n_range if not lo <= n <= hi]
        if not self.n_range or bad:
            raise UsageError(f"suite {self.suite} supports n in [{lo}, {hi}], got {list(self.n_range)}")


class UsageError(Exception):
    pass


class _Checks:
    """Accumulates check records; exceptions inside a check become ``error`` records."""

    def __init__(self):
        self.items = []

    def add(self, name, ok, observed=None, expected=None, max_err=None):
        self.items.append(
            {
                "name": name,
                "status": "pass" if ok else "fail",
                "observed": _plain(observed),
                "expected": _plain(expected),
                "max_err": None if max_err is None else float(max_err),
            }
        )

    def run(self, name, fn: Callable):
        try:
            ok, observed, expected, max_err = fn()
        except (AdsOrbitsError, np.linalg.LinAlgError, ValueError) as exc:
            self.items.append(
                {"name": name, "status": "error", "observed": f"{type(exc).__name__}: {exc}", "expected": None, "max_err": None}
            )
            return
        self.add(name, ok, observed, expected, max_err)


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    return x


def _rng(cfg: SuiteConfig, *tags):
    return np.random.default_rng([cfg.seed, *tags])


def _pts(cfg, n, model, count, tag, **constraints):
    return [sample_ads_point(n, model, (cfg.seed, tag, n, i), **constraints) for i in range(count)]


# ------------------------------------------------------------------ suites


def _roots(cfg: SuiteConfig, algebra: Algebra, positive, expected_mult, nil_degree):
    out = _Checks()
    for n in cfg.n_range:
        def mult(n=n):
            dec = root_decomposition(algebra, n)
            exp = expected_mult(n)
            got = {str(r): dec.multiplicity(r) for r in dec.roots}
            want = {str(r): m for r, m in exp.items()}
            return got == want, got, want, None

        def spans(n=n):
            dec = root_decomposition(algebra, n)
            bad = [
                str(r)
                for r in dec.roots
                if not spans_equal([x.mat for x in dec.space(r)], [x.mat for x in closed_form_root_space(algebra, n, r)], 1e-8)
            ]
            k0_ok = len(dec.k0) == len(closed_form_k0(algebra, n)) and (
                not dec.k0 or spans_equal([x.mat for x in dec.k0], [x.mat for x in closed_form_k0(algebra, n)], 1e-8)
            )
            return not bad and k0_ok, {"mismatched_roots": bad, "k0_matches": k0_ok}, {"mismatched_roots": [], "k0_matches": True}, None

        def nil(n=n):
            deg = nilpotency_degree(iwasawa_parts(root_decomposition(algebra, n))[2])
            return deg == nil_degree, deg, nil_degree, None

        out.run(f"n={n}:multiplicities", mult)
        out.run(f"n={n}:closed-form-spans", spans)
        out.run(f"n={n}:nilpotency-degree", nil)
        if algebra is Algebra.SO:
            def killing(n=n):
                rng = _rng(cfg, 1, n)
                worst = 0.0
                for _ in range(cfg.samples):
                    X, Y = random_element(algebra, n, rng), random_element(algebra, n, rng)
                    ref = killing_form_adtrace(X, Y)
                    worst = max(worst, abs(killing_form(X, Y) - ref) / max(1e-300, abs(ref)))
                return worst <= 1e-8, worst, "<= 1e-8", worst

            out.run(f"n={n}:killing-form", killing)
    return out.items


def suite_roots_so2n(cfg):
    def mult(n):
        m = {(1, 0): 1, (0, 1): n - 2, (1, 1): n - 2, (1, 2): 1}
        return {**m, **{(-a, -b): k for (a, b), k in m.items()}}

    return _roots(cfg, Algebra.SO, SO_POSITIVE, mult, 3)


def suite_roots_su1n(cfg):
    def mult(n):
        return {(1,): 2 * (n - 1), (2,): 1, (-1,): 2 * (n - 1), (-2,): 1}

    return _roots(cfg, Algebra.SU, SU_POSITIVE, mult, 2)


def suite_exp_closed_forms(cfg):
    out = _Checks()
    for n in cfg.n_range:
        rng = _rng(cfg, 2, n)
        if n >= 3:
            for kind in ("singular", "principal"):
                def so_exp(kind=kind, n=n):
                    worst = 0.0
                    for _ in range(cfg.samples):
                        a, b = rng.uniform(-2, 2, 2)
                        vec = rng.uniform(-2, 2, n - 2)
                        X = so.singular(a, vec) if kind == "singular" else so.principal(a, b, vec)
                        diff = so.exp_n_closed(X, n).mat - exp_series(X.element(n)).mat
                        worst = max(worst, float(np.abs(diff).max()))
                    return worst <= 1e-10, worst, "<= 1e-10", worst

                out.run(f"n={n}:so-{kind}", so_exp)
        if n >= 2:
            for kind in ("A", "N", "S"):
                def su_exp(kind=kind, n=n):
                    worst = 0.0
                    for _ in range(cfg.samples):
                        x, mu = rng.uniform(-2, 2, 2)
                        z = rng.uniform(-1, 1, n - 1) + 1j * rng.uniform(-1, 1, n - 1)
                        P = {"A": su.AParams(x), "N": su.NParams(mu, z), "S": su.SParams(x, mu, z)}[kind]
                        diff = su.exp_closed(P, n).mat - exp_series(su.algebra_element_of(P, n)).mat
                        worst = max(worst, float(np.abs(diff).max()))
                    return worst <= 1e-10, worst, "<= 1e-10", worst

                out.run(f"n={n}:su-{kind}", su_exp)
    return out.items


def cohomogeneity_one_cases(n: int) -> list:
    """One descriptor per case and admissible parameter at ``n``."""
    cases = [su.CaseDescriptor("1a", n), su.CaseDescriptor("1b", n), su.CaseDescriptor("1c", n, c=0.7)]
    cases += [su.CaseDescriptor("2", n, k=k) for k in range(n)]
    cases += [su.CaseDescriptor("3", n)]
    cases += [su.CaseDescriptor("4", n, r=r) for r in range(1, n)]
    cases += [
        su.CaseDescriptor("5", n, k=n - 1 - 2 * ell, ell=ell, phi=phi)
        for ell in range(1, (n - 1) // 2 + 1)
        for phi in (math.pi / 6, math.pi / 3)
    ]
    return cases


def random_fn_subalgebra(n: int, rng, admissible: bool):
    """Random f inside k0 + a with a-projection onto a.

    ``f`` is spanned by ``<c, e1, diag(ic, X)>`` with diagonal X, a diagonal
    su(n-1) element, and (when not admissible) an element of k0 with y != 0.
    Everything is diagonal in the k0 part, so f is abelian.
    """
    c = float(rng.uniform(-2, 2))
    d = rng.uniform(-1, 1, n - 1)
    X = np.diag(1j * (d - d.mean() - 2 * c / (n - 1)))
    block = np.zeros((n, n), dtype=complex)
    block[0, 0] = 1j * c
    block[1:, 1:] = X
    e1 = np.eye(n)[0]
    els = [su.ceil(c, e1, block)]
    if n > 2:
        e = rng.uniform(-1, 1, n - 1)
        els.append(su.ceil(0, np.zeros(n), np.diag(np.concatenate([[0], 1j * (e - e.mean())]))))
    if not admissible:
        y = float(rng.uniform(0.5, 1.0) * rng.choice([-1, 1]))
        tail = np.zeros(n - 1, dtype=complex)
        tail[0] = -2j * y
        els.append(su.ceil(y, np.zeros(n), np.diag(np.concatenate([[1j * y], tail]))))
    return su.Subalgebra.span(els, Algebra.SU, n), c


def fn_plus_n(f, n):
    return su.Subalgebra.span(list(f.retag(Algebra.U).basis) + list(su.n_subalgebra(n).basis), Algebra.U, n)


def suite_unitary_cases(cfg):
    out = _Checks()
    for n in cfg.n_range:
        e0 = basepoint(COMPLEX, n)
        pts = _pts(cfg, n, COMPLEX, min(cfg.samples, 50), 3)
        for d in cohomogeneity_one_cases(n):
            h = su.case_subalgebra(d)
            tag = f"n={n}:{d.label}"

            def coh(h=h, d=d):
                rep = cohomogeneity_report(h, COMPLEX, n, cfg.samples, (cfg.seed, 4, n))
                if d.case in ("1a", "1b", "1c"):
                    ok = rep.value == 1 and rep.dims == [2 * n]
                    return ok, {"cohomogeneity": rep.value, "dims": rep.dims}, {"cohomogeneity": 1, "dims": [2 * n]}, None
                return rep.value == 1, rep.value, 1, None

            out.run(f"{tag}:cohomogeneity", coh)
            if d.case == "2":
                out.run(f"{tag}:orbit-dim-e0", lambda h=h, d=d: (orbit_dim(h, e0) == 2 * d.k + 1, orbit_dim(h, e0), 2 * d.k + 1, None))
            if d.case == "3":
                out.run(f"{tag}:orbit-dim-e0", lambda h=h: (orbit_dim(h, e0) == n + 1, orbit_dim(h, e0), n + 1, None))
            if d.case in ("4", "5"):
                out.run(
                    f"{tag}:orbit-dim-e0",
                    lambda h=h, d=d: (orbit_dim(h, e0) == d.W_dim() - 1, orbit_dim(h, e0), d.W_dim() - 1, None),
                )
                out.run(
                    f"{tag}:W-invariant",
                    lambda h=h, d=d: (invariant_subspace(h, d.W()), invariant_subspace(h, d.W()), True, None),
                )

                def nk(d=d):
                    got = su.normalizer_in_k(su.s_subalgebra(d.w(), n)).dim
                    return got == su.expected_normalizer_dim(d), got, su.expected_normalizer_dim(d), None

                out.run(f"{tag}:normalizer-dim", nk)
            if d.case not in ("1a", "1c"):
                def fib(h=h):
                    miss = sum(not fiber_contained(h, p) for p in pts)
                    return miss == 0, miss, 0, None

                out.run(f"{tag}:fiber-contained", fib)
            if d.case in ("2", "5"):
                for r in (0.5, 1.0):
                    def tube(h=h, r=r, d=d):
                        tp = tube_sample(h, e0, r, 20, (cfg.seed, 5, n))
                        dims = sorted({orbit_dim(h, q) for q in tp})
                        return dims == [2 * n], dims, [2 * n], None

                    out.run(f"{tag}:tube-r={r}", tube)

        def fn_agree(n=n):
            rng = _rng(cfg, 6, n)
            bad = 0
            for i in range(20):
                f, _ = random_fn_subalgebra(n, rng, admissible=i % 2 == 0)
                measured = cohomogeneity_report(fn_plus_n(f, n), COMPLEX, n, 10, (cfg.seed, 7, n, i)).value
                bad += su.fn_cohomogeneity_one(f) != (measured == 1)
            return bad == 0, bad, 0, None

        def fn_reduce(n=n):
            rng = _rng(cfg, 8, n)
            bad = 0
            for i in range(10):
                f, c = random_fn_subalgebra(n, rng, admissible=True)
                for p in _pts(cfg, n, COMPLEX, 50, 900 + i):
                    bad += not su.fn_orbit_equivalence_check(f, su.fn_c(f), p)
            return bad == 0, bad, 0, None

        out.run(f"n={n}:fn-criterion-agrees", fn_agree)
        out.run(f"n={n}:fn-reduction", fn_reduce)
        out.run(f"n={n}:slice-solver-N", lambda n=n: _su_solver_check(cfg, n, "N"))
        out.run(f"n={n}:slice-solver-S", lambda n=n: _su_solver_check(cfg, n, "S"))
    return out.items


def random_s_normal_point(w_perp: kh.RealSubspace, n: int, rng) -> AdsPoint:
    """``lam (x0 e0 + nu)`` with random phase and random ``nu`` in ``w_perp``."""
    lam = np.exp(1j * rng.uniform(0, 2 * math.pi))
    nu = real_to_complex(rng.standard_normal(w_perp.dim) @ w_perp.orthonormal) if w_perp.dim else np.zeros(n - 1)
    x0 = math.sqrt(1 + float(np.vdot(nu, nu).real))
    return AdsPoint(lam * np.concatenate([[x0, 0], nu]), COMPLEX, n)


def _su_solver_check(cfg, n, kind, pairs=100):
    rng = _rng(cfg, 10, n, kind == "S")
    worst = 0.0
    for i in range(pairs):
        if kind == "N":
            p = sample_ads_point(n, COMPLEX, (cfg.seed, 11, n, i))
            q = su.n_slice_point(p, rng.normal(), rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1))
            params = su.solve_slice_element("N", p, q)
        else:
            d = su.CaseDescriptor("4", n, r=1 + i % (n - 1))
            w = d.w()
            p = random_s_normal_point(d.w_perp(), n, rng)
            wp = real_to_complex(rng.standard_normal(w.dim) @ w.orthonormal)
            q = su.s_slice_point(w, p, rng.normal(), rng.normal(), wp)
            params = su.solve_slice_element("S", p, q, w)
        worst = max(worst, float(np.linalg.norm(su.exp_closed(params, n).apply(p).coords - q.coords)))
    return worst <= cfg.tol, worst, f"<= {cfg.tol:g}", worst


def suite_nilpotent_orbits(cfg):
    out = _Checks()
    for n in cfg.n_range:
        nil = so.n_subalgebra(n)
        free = _pts(cfg, n, REAL, cfg.samples, 12)
        sing = _pts(cfg, n, REAL, max(1, cfg.samples // 4), 13, equal=[(2, 4)])

        def coh(n=n, free=free, sing=sing):
            rep = cohomogeneity_report(nil, REAL, n, 1, (cfg.seed, 14), points=free + sing)
            return rep.value == 1 and rep.dims == [n - 1, n], {"value": rep.value, "dims": rep.dims}, {"value": 1, "dims": [n - 1, n]}, None

        def split(n=n, free=free, sing=sing):
            bad = 0
            for p in free + sing:
                want = n - 1 if abs(p[1] - p[3]) <= 1e-12 else n
                bad += orbit_dim(nil, p) != want
            return bad == 0, bad, 0, None

        def slice_inv(n=n, free=free, sing=sing):
            bad = 0
            for p in free[:20] + sing[:20]:
                model = so.n_orbit_model(p)
                V = model.model.subspace
                bad += not span_contains_all(V, tangent_vectors(nil, p))
                bad += not invariant_subspace(nil, V)
            return bad == 0, bad, 0, None

        def solver(n=n):
            rng = _rng(cfg, 15, n)
            worst = 0.0
            for i in range(100):
                for shape in ("principal", "singular"):
                    if shape == "principal":
                        p = sample_ads_point(n, REAL, (cfg.seed, 16, n, i))
                        X = so.principal(*rng.uniform(-1, 1, 2), rng.uniform(-1, 1, n - 2))
                    else:
                        p = sample_ads_point(n, REAL, (cfg.seed, 17, n, i), equal=[(2, 4)])
                        X = so.singular(rng.uniform(-1, 1), rng.uniform(-1, 1, n - 2))
                    q = so.exp_n_closed(X, n).apply(p)
                    sol = so.solve_n_element_so(p, q)
                    worst = max(worst, float(np.linalg.norm(so.exp_n_closed(sol, n).apply(p).coords - q.coords)))
            return worst <= cfg.tol, worst, f"<= {cfg.tol:g}", worst

        out.run(f"n={n}:cohomogeneity", coh)
        out.run(f"n={n}:dims-split-by-p2=p4", split)
        out.run(f"n={n}:slice-invariance", slice_inv)
        out.run(f"n={n}:slice-solver", solver)
    return out.items


def span_contains_all(big, small) -> bool:
    from .indefinite_linear import span_contains

    return span_contains(big, small)


def suite_line_subgroups(cfg):
    out = _Checks()
    grid = [-1.0, -0.5, 0.0, 0.5, 1.0]
    for n in cfg.n_range:
        sing = _pts(cfg, n, REAL, 10, 18, equal=[(2, 4)])

        def dichotomy(n=n, sing=sing):
            wrong = []
            for a in grid:
                for b in grid:
                    if a == 0 and b == 0:
                        continue
                    c = cohomogeneity_report(so.line_plus_n(a, b, n), REAL, n, cfg.samples, (cfg.seed, 19, n), sing).value
                    if (c == 1) != (b == 0):
                        wrong.append([a, b, c])
            return not wrong, wrong, [], None

        def an(n=n):
            c = cohomogeneity_report(so.group_subalgebra("AN", n), REAL, n, cfg.samples, (cfg.seed, 20, n)).value
            return c == 0, c, 0, None

        out.run(f"n={n}:line-dichotomy", dichotomy)
        out.run(f"n={n}:AN-cohomogeneity-zero", an)
    return out.items


def suite_parabolic_orbits(cfg):
    out = _Checks()
    for n in cfg.n_range:
        free = _pts(cfg, n, REAL, max(1, cfg.samples - 20), 21)
        sing = _pts(cfg, n, REAL, 20, 22, equal=[(2, 4)])
        q0, q1, q2 = (so.group_subalgebra(g, n) for g in ("Q0", "Q1", "Q2"))

        def q2_transitive(n=n):
            dims = sorted({orbit_dim(q2, p) for p in free + sing})
            return dims == [n + 1], dims, [n + 1], None

        def q0q1_singular(n=n):
            dims = sorted({orbit_dim(q, p) for q in (q0, q1) for p in sing})
            return dims == [n], dims, [n], None

        def an_tangent(n=n):
            an = so.group_subalgebra("AN", n)
            bad = 0
            for p in sing:
                eps = np.diag([-1.0, -1.0] + [1.0] * n)
                rows = np.vstack([p.coords @ eps, np.eye(n + 2)[1] - np.eye(n + 2)[3]])
                from scipy.linalg import null_space

                bad += not spans_equal(tangent_vectors(an, p), null_space(rows).T)
            return bad == 0, bad, 0, None

        def leaves(n=n):
            rng = _rng(cfg, 23, n)
            bad = 0
            for grp in so.GROUPS:
                h = so.group_subalgebra(grp, n)
                for i in range(50):
                    p = (free + sing)[i % len(free + sing)] if i % 3 else sing[i % len(sing)]
                    g = exp_series(combine(rng.uniform(-1, 1, h.dim), h.basis))
                    bad += not so.leaf_id(grp, p).same_leaf(so.leaf_id(grp, g.apply(p)))
            return bad == 0, bad, 0, None

        def labels(n=n):
            bad = 0
            for p in free + sing:
                r, s = p[1] - p[3], p[0] - p[2]
                want = ("principal_plus" if r > 0 else "principal_minus") if abs(r) > 1e-12 else (
                    "singular_plus" if s > 0 else "singular_minus"
                )
                bad += any(so.leaf_id(g, p).label != want for g in ("Q0", "Q1", "AN"))
                bad += so.leaf_id("Q2", p).label != "all"
            return bad == 0, bad, 0, None

        out.run(f"n={n}:q2-transitive", q2_transitive)
        out.run(f"n={n}:q0-q1-singular-dim", q0q1_singular)
        out.run(f"n={n}:an-tangent-on-singular-locus", an_tangent)
        out.run(f"n={n}:leaf-labels", labels)
        out.run(f"n={n}:leaf-preservation", leaves)
    return out.items


def suite_kaehler(cfg):
    out = _Checks()
    phis = (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2)
    for n in cfg.n_range:
        for ell in range(1, (n - 1) // 2 + 1):
            k = n - 1 - 2 * ell
            for phi in phis:
                def angle(k=k, ell=ell, phi=phi):
                    dec = kh.build_w_decomposition(k, ell, phi, n)
                    got_perp = kh.constant_kaehler_angle(dec.w_perp, samples=cfg.samples, seed=cfg.seed)
                    got_phi = kh.constant_kaehler_angle(dec.w_phi, samples=cfg.samples, seed=cfg.seed)
                    if got_perp is None or got_phi is None:
                        return False, [got_perp, got_phi], phi, None
                    err = max(abs(got_perp - phi), abs(got_phi - phi))
                    return err <= 1e-9, [got_perp, got_phi], phi, err

                def dims(k=k, ell=ell, phi=phi):
                    dec = kh.build_w_decomposition(k, ell, phi, n)
                    cw = kh.RealSubspace.complex_span(dec.w_phi.basis, n - 1)
                    both = np.vstack([dec.w_phi.orthonormal, dec.w_perp.orthonormal])
                    split_ok = spans_equal(cw.orthonormal, both) and numerical_rank(both) == 4 * ell
                    orth = dec.w0.is_orthogonal_to(dec.w_phi) and dec.w_phi.is_orthogonal_to(dec.w_perp) and dec.w0.is_orthogonal_to(dec.w_perp)
                    ok = dec.w_perp.dim == 2 * ell and split_ok and orth
                    return ok, {"dim_w_perp": dec.w_perp.dim, "split": split_ok, "orthogonal": orth}, {"dim_w_perp": 2 * ell, "split": True, "orthogonal": True}, None

                tag = f"n={n}:k={k}:l={ell}:phi={phi:.6f}"
                out.run(f"{tag}:constant-angle", angle)
                out.run(f"{tag}:dimensions", dims)
    return out.items


def suite_parabolic_structure(cfg):
    out = _Checks()
    for n in cfg.n_range:
        base = (n - 2) * (n - 3) // 2 + 2 + 2 * (n - 2) + 2
        expected = {"Q0": base, "Q1": base + (n - 2), "Q2": base + 1}
        for grp, phi in (("Q0", ()), ("Q1", (so.ALPHA2,)), ("Q2", (so.ALPHA1,))):
            def structure(phi=phi, grp=grp):
                L = so.parabolic(phi, n)
                closed = max(L.q.closure_residual(), L.l.closure_residual(), L.n_part.closure_residual())
                direct = L.q.dim == L.l.dim + L.n_part.dim
                deg = nilpotency_degree(L.n_part)
                obs = {"dim": L.q.dim, "direct_sum": direct, "nilpotency": deg}
                ok = L.q.dim == expected[grp] and direct and closed <= 1e-9 and deg >= 1
                return ok, obs, {"dim": expected[grp], "direct_sum": True}, closed

            out.run(f"n={n}:{grp}:structure", structure)

        def n_empty(n=n):
            deg = nilpotency_degree(so.parabolic((), n).n_part)
            return deg == 3, deg, 3, None

        def extra_roots(n=n):
            q0 = so.parabolic((), n).q
            ok = True
            for phi, root in (((so.ALPHA2,), (0, -1)), ((so.ALPHA1,), (-1, 0))):
                q = so.parabolic(phi, n).q
                neg = closed_form_root_space(Algebra.SO, n, root)
                ok = ok and spans_equal([x.mat for x in q.basis], [x.mat for x in list(q0.basis) + neg])
            return ok, ok, True, None

        out.run(f"n={n}:n_empty-nilpotency", n_empty)
        out.run(f"n={n}:q_i-equals-q_empty-plus-negative-root", extra_roots)
    return out.items


@dataclass(frozen=True)
class Suite:
    run: Callable
    verifies: str
    n_bounds: tuple
    default_n: tuple
    default_samples: int


SUITES = {
    "roots-so2n": Suite(suite_roots_so2n, "restricted roots and root spaces of so(2,n), Killing form", (3, 8), (3, 4, 5, 6), 50),
    "roots-su1n": Suite(suite_roots_su1n, "restricted roots and root spaces of su(1,n)", (2, 6), (2, 3, 4), 50),
    "exp-closed-forms": Suite(suite_exp_closed_forms, "closed-form exponentials of a, n and s", (2, 8), (2, 3, 4, 5), 200),
    "theorem-3-1": Suite(suite_unitary_cases, "cohomogeneity one actions of subgroups of U(1,n)", (2, 5), (2, 3, 4), 50),
    "prop-4-1": Suite(suite_nilpotent_orbits, "N acts with cohomogeneity one on AdS^{n+1}", (3, 8), (3, 4, 5, 6), 200),
    "remark-4-2": Suite(suite_line_subgroups, "subgroups between N and AN", (3, 8), (3, 4, 5), 30),
    "prop-4-3": Suite(suite_parabolic_orbits, "parabolic subgroups Q_0, Q_1, Q_2 and their foliations", (3, 8), (3, 4, 5, 6), 100),
    "kaehler": Suite(suite_kaehler, "constant Kähler angle decompositions", (3, 8), (3, 4, 5, 6), 50),
    "parabolic-structure": Suite(suite_parabolic_structure, "Langlands decompositions q = l + n", (3, 8), (3, 4, 5, 6), 1),
}


# ------------------------------------------------------------------ reports


def run_suite(cfg: SuiteConfig) -> dict:
    """Run a suite and return the report as an ordered dict."""
    return make_report(cfg, SUITES[cfg.suite].run(cfg))


def make_report(cfg: SuiteConfig, checks: list) -> dict:
    """Assemble a report; ``overall`` passes only if every check passed."""
    overall = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {
        "suite": cfg.suite,
        "n": list(cfg.n_range),
        "seed": cfg.seed,
        "samples": cfg.samples,
        "tol": float(cfg.tol),
        "checks": checks,
        "overall": overall,
    }


def _json(x, indent=0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in x.items())
        return "{\n" + body + "\n" + end + "}"
    if isinstance(x, (list, tuple)):
        if not x:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in x):
            return "[" + ", ".join(_json(v, indent + 1) for v in x) + "]"
        return "[\n" + ",\n".join(pad + _json(v, indent + 1) for v in x) + "\n" + end + "]"
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return "%.17g" % x
    return json.dumps(str(x))


def emit_report(report: dict, fmt: str = "json") -> str:
    """Render a report as JSON (stable key order, 17 significant digits) or a text table."""
    if fmt == "json":
        return _json(report) + "\n"
    if fmt != "text":
        raise UsageError(f"unknown format {fmt!r}")
    lines = [f"suite {report['suite']}  n={report['n']}  seed={report['seed']}  samples={report['samples']}  tol={report['tol']:g}"]
    width = max([len(c["name"]) for c in report["checks"]] + [5])
    for c in report["checks"]:
        err = "" if c["max_err"] is None else f"  max_err={c['max_err']:.3e}"
        lines.append(f"{c['status'].upper():5}  {c['name']:{width}}  observed={c['observed']}  expected={c['expected']}{err}")
    lines.append(f"overall: {report['overall']}")
    return "\n".join(lines) + "\n"


def exit_code(report: dict) -> int:
    return EXIT_PASS if report["overall"] == "pass" else EXIT_FAIL


def parse_n(text: str) -> tuple:
    """Accept ``4``, ``3-6``, ``3..6`` or ``3,5,6``."""
    text = text.strip()
    try:
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = (int(t) for t in text.split(sep))
                if hi < lo:
                    raise ValueError
                return tuple(range(lo, hi + 1))
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adsorbits", description="Verify orbit structure of isometric actions on AdS.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--n", type=parse_n, default=None, help="int, range lo-hi, or comma list")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_parser("list-suites", help="print suite names")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-suites":
        for name in sorted(SUITES):
            print(f"{name:22} {SUITES[name].verifies}")
        return EXIT_PASS
    suite = SUITES[args.suite]
    try:
        cfg = SuiteConfig(
            args.suite,
            args.n if args.n is not None else suite.default_n,
            args.samples if args.samples is not None else suite.default_samples,
            args.seed,
            args.tol,
            args.format,
        )
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(cfg)
    sys.stdout.write(emit_report(report, cfg.format))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
