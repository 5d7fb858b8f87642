"""Orbits of subalgebras acting on AdS: tangent spaces, dimensions, tubes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .errors import (
    ArgumentError,
    DegeneracyError,
    TagError,
    UnsupportedError,
    UnsupportedTubeError,
)
from .indefinite_linear import (
    COMPLEX,
    RANK_GAP,
    RANK_TOL,
    AdsPoint,
    ads_dim,
    ambient_signature,
    form,
    numerical_rank,
    realify,
    sample_ads_point,
    span_basis,
    span_contains,
)
from .lie_core import Subalgebra

__all__ = [
    "Subalgebra",
    "tangent_vectors",
    "tangent_space",
    "orbit_dim",
    "CohomogeneityReport",
    "cohomogeneity_report",
    "cohomogeneity",
    "fiber_contained",
    "invariant_subspace",
    "normal_space",
    "geodesic_exp",
    "tube_sample",
]


def _check_model(h: Subalgebra, p: AdsPoint):
    if h.algebra.model != p.model or h.n != p.n:
        raise TagError(f"{h.algebra.value} with n={h.n} does not act on the {p.model} model with n={p.n}")


def tangent_vectors(h: Subalgebra, p: AdsPoint) -> np.ndarray:
    """Realified vectors ``X . p`` for the basis elements ``X`` of ``h`` (rows)."""
    _check_model(h, p)
    dim = ambient_signature(p.model, p.n).dim
    if not h.dim:
        return np.zeros((0, dim))
    return realify(np.array([X.act(p) for X in h.basis]))


def tangent_space(h: Subalgebra, p: AdsPoint, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal real basis (rows) of ``h . p``, the tangent space of the orbit."""
    vecs = tangent_vectors(h, p)
    if not len(vecs):
        return vecs
    return span_basis(vecs, tol)


def orbit_dim(h: Subalgebra, p: AdsPoint, tol: float = RANK_TOL, gap: float | None = RANK_GAP) -> int:
    """Dimension of the orbit of the connected group of ``h`` through ``p``.

    Raises:
        DegeneracyError: the rank of ``h . p`` is ambiguous at ``tol``.
    """
    vecs = tangent_vectors(h, p)
    if not len(vecs):
        return 0
    return numerical_rank(vecs, tol, gap)


@dataclass
class CohomogeneityReport:
    """Outcome of a sampled cohomogeneity estimate.

    Attributes:
        value: dim AdS minus the largest orbit dimension seen.
        dims: sorted distinct orbit dimensions observed.
        per_sample: orbit dimension at each point (None where the rank was ambiguous).
        errors: messages for samples whose rank was ambiguous.
    """

    value: int
    dims: list
    per_sample: list = field(default_factory=list)
    errors: list = field(default_factory=list)


def cohomogeneity_report(h: Subalgebra, model: str, n: int, samples: int, seed, points=()) -> CohomogeneityReport:
    """Estimate the cohomogeneity of ``h`` from random points and extra given points.

    Args:
        h: acting subalgebra.
        model: ``"real"`` or ``"complex"``.
        n: dimension parameter of the model.
        samples: number of unconstrained random points.
        seed: base seed; point ``i`` uses the stream ``(seed, i)``.
        points: additional points, e.g. drawn on a singular locus.
    """
    if samples < 1:
        raise ArgumentError("samples must be >= 1")
    base = tuple(seed) if isinstance(seed, (tuple, list)) else (seed,)
    pts = [sample_ads_point(n, model, (*base, i)) for i in range(samples)] + list(points)
    per_sample, errors = [], []
    for p in pts:
        try:
            per_sample.append(orbit_dim(h, p))
        except DegeneracyError as exc:
            per_sample.append(None)
            errors.append(str(exc))
    seen = sorted({d for d in per_sample if d is not None})
    if not seen:
        raise DegeneracyError("every sampled orbit dimension was ambiguous")
    return CohomogeneityReport(ads_dim(model, n) - seen[-1], seen, per_sample, errors)


def cohomogeneity(h: Subalgebra, model: str, n: int, samples: int, seed, points=()) -> int:
    return cohomogeneity_report(h, model, n, samples, seed, points).value


def fiber_contained(h: Subalgebra, p: AdsPoint) -> bool:
    """True iff ``i p`` is tangent to the orbit, i.e. the orbit contains the circle fiber."""
    if p.model != COMPLEX:
        raise UnsupportedError("circle fibers exist only in the complex model")
    vecs = tangent_vectors(h, p)
    return span_contains(vecs, realify(1j * p.coords))


def invariant_subspace(h: Subalgebra, W) -> bool:
    """True iff every basis element of ``h`` maps the real span of ``W`` into itself.

    Args:
        h: subalgebra acting on the ambient space.
        W: vectors spanning the subspace, in the ambient coordinates of ``h``.
    """
    W = np.asarray(W)
    if W.ndim == 1:
        W = W[None, :]
    if W.shape[1] != h.algebra.size(h.n):
        raise TagError("subspace lives in a different ambient space")
    images = [X.mat @ w for X in h.basis for w in W]
    if not images:
        return True
    return span_contains(W, np.array(images))


def normal_space(h: Subalgebra, p: AdsPoint) -> tuple[np.ndarray, np.ndarray]:
    """Normal space of ``h . p`` inside ``T_p AdS`` and its Gram matrix.

    Returns:
        A pair ``(basis, gram)`` with realified basis vectors as rows and the
        induced ambient form on them.
    """
    eps = ambient_signature(p.model, p.n).diag()
    tangent = tangent_space(h, p)
    rows = np.vstack([p.real_coords[None, :], tangent]) * eps
    basis = null_space(rows).T
    gram = basis @ (eps[:, None] * basis.T)
    return basis, gram


def geodesic_exp(p: AdsPoint, xi, r: float, tol: float = 1e-10) -> AdsPoint:
    """Point at distance ``r`` along the geodesic from ``p`` with unit spacelike velocity ``xi``.

    Args:
        p: starting point.
        xi: tangent vector in the coordinates of ``p`` with <p, xi> = 0 and <xi, xi> = 1.
        r: arc length.
    """
    xi = np.asarray(xi, dtype=p.coords.dtype)
    if xi.shape != p.coords.shape:
        raise ArgumentError("velocity and point have different shapes")
    if abs(form(p.coords, xi, p.model)) > tol:
        raise ArgumentError("velocity is not orthogonal to the point")
    if abs(form(xi, xi, p.model) - 1.0) > tol:
        raise ArgumentError("velocity is not a unit spacelike vector")
    return AdsPoint(np.cosh(r) * p.coords + np.sinh(r) * xi, p.model, p.n)


def tube_sample(h: Subalgebra, singular_p: AdsPoint, r: float, count: int, seed) -> list[AdsPoint]:
    """Points on the tube of radius ``r`` around the orbit through ``singular_p``.

    Raises:
        ArgumentError: the orbit through ``singular_p`` is not singular.
        UnsupportedTubeError: the normal space is not spacelike.
    """
    m = ads_dim(singular_p.model, singular_p.n)
    if orbit_dim(h, singular_p) >= m - 1:
        raise ArgumentError("the orbit through the given point is not singular")
    basis, gram = normal_space(h, singular_p)
    evals = np.linalg.eigvalsh(gram) if len(gram) else np.zeros(0)
    if not len(evals) or evals.min() <= 1e-10:
        raise UnsupportedTubeError("normal space of the orbit is not positive definite")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        c = rng.standard_normal(len(basis))
        xi = c @ basis / np.sqrt(c @ gram @ c)
        if singular_p.model == COMPLEX:
            xi = xi[0::2] + 1j * xi[1::2]
        out.append(geodesic_exp(singular_p, xi, r))
    return out
