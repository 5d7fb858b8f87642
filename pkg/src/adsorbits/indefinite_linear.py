"""Indefinite scalar products, the anti de Sitter quadric and rank utilities.

Two ambient models are used throughout:

* the real model ``R^{2,n}`` with ``<x, y> = -x_1 y_1 - x_2 y_2 + sum_{i>2} x_i y_i``,
  holding ``AdS^{n+1}``;
* the complex model ``C^{1,n}`` with ``<z, w> = Re(-z_0 conj(w_0) + sum_k z_k conj(w_k))``,
  holding ``AdS^{2n+1}``.

Documentation uses the 1-based indices ``p_1, ..., p_{n+2}`` for the real model
and ``e_0, ..., e_n`` for the complex model; arrays are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .errors import ConstraintError, DegeneracyError, DimensionError, UnsupportedError

REAL = "real"
COMPLEX = "complex"

RANK_TOL = 1e-8
RANK_GAP = 1e4
QUADRIC_TOL = 1e-10


@dataclass(frozen=True)
class Signature:
    """Counts of negative and positive directions of a diagonal scalar product."""

    neg: int
    pos: int

    def __post_init__(self):
        if self.neg < 0 or self.pos < 0:
            raise DimensionError(f"invalid signature ({self.neg}, {self.pos})")

    @property
    def dim(self) -> int:
        return self.neg + self.pos

    def diag(self) -> np.ndarray:
        return np.concatenate([-np.ones(self.neg), np.ones(self.pos)])


def scalar_product(x, y, sig: Signature) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (sig.dim,) or y.shape != (sig.dim,):
        raise DimensionError(f"expected vectors of length {sig.dim}, got {x.shape} and {y.shape}")
    return float(-x[: sig.neg] @ y[: sig.neg] + x[sig.neg :] @ y[sig.neg :])


def hermitian_real_part(z, w) -> float:
    """Real part of the pseudo-hermitian product of ``C^{1,n}``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.ndim != 1 or z.shape != w.shape or len(z) < 1:
        raise DimensionError(f"length mismatch: {z.shape} vs {w.shape}")
    h = -z[0] * np.conj(w[0]) + np.sum(z[1:] * np.conj(w[1:]))
    return float(h.real)


def complex_to_real(z) -> np.ndarray:
    """Realify ``z`` as ``(Re z_0, Im z_0, Re z_1, Im z_1, ...)``.

    With this layout the two negative directions of ``R^{2,2n}`` come first,
    so ``scalar_product(complex_to_real(z), complex_to_real(w), Signature(2, 2n))``
    equals ``hermitian_real_part(z, w)``.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def real_to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] % 2:
        raise DimensionError("realified vector must have even length")
    return x[..., 0::2] + 1j * x[..., 1::2]


def realify(vectors) -> np.ndarray:
    """Stack vectors (or matrices) as rows of a real 2-D array.

    Complex entries are split into real and imaginary parts so that ranks and
    spans are taken over the reals.
    """
    arr = np.asarray(vectors)
    if arr.ndim == 1:
        arr = arr[None, :]
    arr = arr.reshape(arr.shape[0], -1)
    if np.iscomplexobj(arr):
        return complex_to_real(arr)
    return arr.astype(float)


def ambient_signature(model: str, n: int) -> Signature:
    """Signature of the realified ambient space for ``AdS`` in ``model``."""
    if model == REAL:
        return Signature(2, n)
    if model == COMPLEX:
        return Signature(2, 2 * n)
    raise UnsupportedError(f"unknown model {model!r}")


def ads_dim(model: str, n: int) -> int:
    return ambient_signature(model, n).dim - 1


def form(x, y, model: str) -> float:
    """Ambient scalar product in either model."""
    if model == COMPLEX:
        return hermitian_real_part(x, y)
    x = np.asarray(x, dtype=float)
    return scalar_product(x, y, Signature(2, len(x) - 2))


@dataclass(frozen=True, eq=False)
class AdsPoint:
    """A point of the quadric ``<p, p> = -1`` in the real or complex model."""

    coords: np.ndarray
    model: str
    n: int

    def __post_init__(self):
        dtype = complex if self.model == COMPLEX else float
        if self.model not in (REAL, COMPLEX):
            raise UnsupportedError(f"unknown model {self.model!r}")
        coords = np.array(self.coords, dtype=dtype)
        expected = self.n + 1 if self.model == COMPLEX else self.n + 2
        if coords.shape != (expected,):
            raise DimensionError(f"{self.model} model with n={self.n} needs {expected} coordinates")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_coords(cls, coords, model: str | None = None, tol: float = QUADRIC_TOL) -> "AdsPoint":
        """Build a point and check quadric membership."""
        coords = np.asarray(coords)
        if model is None:
            model = COMPLEX if np.iscomplexobj(coords) else REAL
        n = len(coords) - 1 if model == COMPLEX else len(coords) - 2
        p = cls(coords, model, n)
        if p.residual() > tol:
            raise ConstraintError(f"point is off the quadric by {p.residual():.3e}")
        return p

    @property
    def real_coords(self) -> np.ndarray:
        if self.model == COMPLEX:
            return complex_to_real(self.coords)
        return np.asarray(self.coords, dtype=float)

    @property
    def signature(self) -> Signature:
        return ambient_signature(self.model, self.n)

    def norm2(self) -> float:
        return form(self.coords, self.coords, self.model)

    def residual(self) -> float:
        return abs(self.norm2() + 1.0)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"AdsPoint({np.array2string(self.coords, precision=4)}, model={self.model!r})"


def basepoint(model: str, n: int) -> AdsPoint:
    """``e_1`` of the real model, ``e_0`` of the complex model."""
    coords = np.zeros(n + 1 if model == COMPLEX else n + 2, dtype=complex if model == COMPLEX else float)
    coords[0] = 1
    return AdsPoint(coords, model, n)


def _constraint_rows(model, dim_real, equal, zero):
    rows = []
    if model == REAL:
        for i, j in equal:
            r = np.zeros(dim_real)
            r[i - 1] += 1
            r[j - 1] -= 1
            rows.append(r)
        for i in zero:
            r = np.zeros(dim_real)
            r[i - 1] = 1
            rows.append(r)
    else:
        for i, j in equal:
            for part in (0, 1):
                r = np.zeros(dim_real)
                r[2 * i + part] += 1
                r[2 * j + part] -= 1
                rows.append(r)
        for i in zero:
            for part in (0, 1):
                r = np.zeros(dim_real)
                r[2 * i + part] = 1
                rows.append(r)
    return np.array(rows).reshape(len(rows), dim_real)


def sample_ads_point(
    n: int,
    model: str = REAL,
    seed=0,
    *,
    equal: Sequence[tuple[int, int]] = (),
    zero: Sequence[int] = (),
    within=None,
    max_tries: int = 1000,
) -> AdsPoint:
    """Draw a point of ``AdS`` deterministically from ``seed``.

    Args:
        n: dimension parameter (``n >= 3`` real model, ``n >= 2`` complex model).
        model: ``"real"`` or ``"complex"``.
        seed: anything accepted by ``numpy.random.default_rng``; tuples such as
            ``(seed, index)`` give independent per-sample streams.
        equal: coordinate pairs forced equal. Indices are 1-based ``p_i`` in the
            real model and 0-based ``z_i`` in the complex model.
        zero: coordinates forced to vanish (same indexing).
        within: optional basis of a real subspace of the ambient space that
            must contain the point.

    Raises:
        ConstraintError: the constrained subspace carries no timelike vector,
            so it does not meet the quadric.
    """
    if model == REAL and n < 3:
        raise DimensionError("real model requires n >= 3")
    if model == COMPLEX and n < 2:
        raise DimensionError("complex model requires n >= 2")
    sig = ambient_signature(model, n)
    eps = sig.diag()
    dim = sig.dim

    if within is not None:
        base = np.linalg.qr(realify(within).T)[0]
        base = base[:, : numerical_rank(realify(within))]
    else:
        base = np.eye(dim)
    rows = _constraint_rows(model, dim, equal, zero)
    if len(rows):
        base = base @ null_space(rows @ base)
    if base.shape[1] == 0:
        raise ConstraintError("constraints leave only the zero vector")

    gram = base.T @ (eps[:, None] * base)
    evals, evecs = np.linalg.eigh(gram)
    timelike = evecs[:, evals < -1e-12]
    if timelike.shape[1] == 0:
        raise ConstraintError("constrained subspace has no timelike direction; it misses the quadric")

    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        x = base @ rng.standard_normal(base.shape[1])
        u = base @ (timelike @ rng.standard_normal(timelike.shape[1]))
        uu = u @ (eps * u)
        xu = x @ (eps * u)
        c = x @ (eps * x) + 1.0
        disc = xu * xu - uu * c
        if disc < 0:
            continue
        s = (-xu + rng.choice([-1.0, 1.0]) * np.sqrt(disc)) / uu
        p = x + s * u
        norm2 = p @ (eps * p)
        if norm2 >= 0:
            continue
        p = p / np.sqrt(-norm2)
        coords = real_to_complex(p) if model == COMPLEX else p
        return AdsPoint(coords, model, n)
    raise ConstraintError(f"no quadric point found in {max_tries} draws")


def singular_values(vectors) -> np.ndarray:
    arr = realify(vectors)
    if arr.size == 0:
        return np.zeros(0)
    return np.linalg.svd(arr, compute_uv=False)


def numerical_rank(vectors, tol: float = RANK_TOL, gap: float | None = RANK_GAP) -> int:
    """Real rank of a family of vectors (or matrices), relative to the largest singular value.

    A kept/dropped singular-value ratio below ``gap`` raises ``DegeneracyError``;
    pass ``gap=None`` to skip the guard.
    """
    s = singular_values(vectors)
    if s.size == 0 or s[0] == 0:
        return 0
    keep = s > tol * s[0]
    rank = int(keep.sum())
    if gap is not None and rank < len(s) and s[rank] > 0:
        if s[rank - 1] / s[rank] < gap:
            raise DegeneracyError(
                f"ambiguous rank: kept {s[rank - 1]:.3e}, dropped {s[rank]:.3e} (ratio < {gap:g})"
            )
    return rank


def span_basis(vectors, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal (Euclidean) real basis of the real span, as rows."""
    arr = realify(vectors)
    if arr.size == 0:
        return np.zeros((0, arr.shape[-1]))
    _, s, vt = np.linalg.svd(arr, full_matrices=False)
    if s[0] == 0:
        return np.zeros((0, arr.shape[1]))
    return vt[: int((s > tol * s[0]).sum())]


def span_contains(big, small, tol: float = RANK_TOL) -> bool:
    """True iff every vector of ``small`` lies in the real span of ``big``."""
    big_r = realify(big) if len(big) else None
    small_r = realify(small)
    if not np.any(small_r):
        return True
    if big_r is None:
        return False
    return numerical_rank(np.vstack([big_r, small_r]), tol) == numerical_rank(big_r, tol)


def spans_equal(a, b, tol: float = RANK_TOL) -> bool:
    return span_contains(a, b, tol) and span_contains(b, a, tol)


def project_onto(v, basis, sig: Signature | None = None) -> np.ndarray:
    """Orthogonal projection of ``v`` onto the real span of ``basis``.

    The inner product is the real part of the standard positive form unless a
    signature is given; an indefinite or degenerate induced form raises
    ``UnsupportedError``. Complex input is projected over the reals and
    returned complex.
    """
    v = np.asarray(v)
    is_complex = np.iscomplexobj(v) or np.iscomplexobj(np.asarray(basis))
    vr = realify(v)[0]
    br = realify(basis)
    eps = np.ones(br.shape[1]) if sig is None else sig.diag()
    if len(eps) != br.shape[1] or len(vr) != br.shape[1]:
        raise DimensionError("vector and subspace live in different spaces")
    gram = br @ (eps[:, None] * br.T)
    evals = np.linalg.eigvalsh(gram)
    if evals.min() <= 1e-12 * max(1.0, abs(evals).max()):
        raise UnsupportedError("induced form on the subspace is not positive definite")
    coef = np.linalg.solve(gram, br @ (eps * vr))
    proj = coef @ br
    return real_to_complex(proj) if is_complex else proj
