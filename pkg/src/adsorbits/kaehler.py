"""Kähler angles of real subspaces of C^m and the w = w0 + w_phi constructions.

Vectors of ``g_alpha`` are stored in C^{n-1} with the canonical vector
``e_j`` (j = 2..n) at position ``j - 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError
from .indefinite_linear import complex_to_real, numerical_rank, real_to_complex

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class RealSubspace:
    """Real span of complex vectors in C^m.

    Attributes:
        m: complex dimension of the ambient space.
        basis: complex vectors, linearly independent over R.
    """

    m: int
    basis: tuple = ()
    _ortho: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = tuple(np.asarray(b, dtype=complex).reshape(-1) for b in self.basis)
        for b in vecs:
            if b.shape != (self.m,):
                raise ArgumentError(f"basis vector of length {b.shape[0]} in C^{self.m}")
        object.__setattr__(self, "basis", vecs)
        if vecs:
            real = complex_to_real(np.array(vecs))
            if numerical_rank(real, gap=None) != len(vecs):
                raise ArgumentError("basis is not independent over R")
            q, _ = np.linalg.qr(real.T)
            ortho = q.T
        else:
            ortho = np.zeros((0, 2 * self.m))
        object.__setattr__(self, "_ortho", ortho)

    @classmethod
    def complex_span(cls, vectors, m: int) -> "RealSubspace":
        """Real subspace spanned by ``vectors`` and ``i * vectors``."""
        vecs = [np.asarray(v, dtype=complex) for v in vectors]
        return cls(m, tuple(vecs) + tuple(1j * v for v in vecs))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def orthonormal(self) -> np.ndarray:
        """Orthonormal real basis (rows, realified coordinates)."""
        return self._ortho

    def project(self, v) -> np.ndarray:
        """Orthogonal projection for the real inner product Re<u, w>."""
        x = complex_to_real(np.asarray(v, dtype=complex))
        Q = self._ortho
        return real_to_complex(Q.T @ (Q @ x))

    def contains(self, v, tol: float = 1e-9) -> bool:
        v = np.asarray(v, dtype=complex)
        scale = max(1.0, np.linalg.norm(v))
        return np.linalg.norm(v - self.project(v)) <= tol * scale

    def is_orthogonal_to(self, other: "RealSubspace", tol: float = 1e-12) -> bool:
        if not self.dim or not other.dim:
            return True
        return bool(np.abs(self._ortho @ other._ortho.T).max() <= tol)


def _unit_i(m: int, j: int) -> np.ndarray:
    e = np.zeros(m, dtype=complex)
    e[j] = 1.0
    return e


def kaehler_angle(v, V: RealSubspace, tol: float = 1e-9) -> float:
    """Angle between ``i v`` and ``V`` for a nonzero ``v`` in ``V``.

    Args:
        v: complex vector of length ``V.m``.
        V: the real subspace containing ``v``.
        tol: relative residual allowed for the membership check.

    Returns:
        The angle in ``[0, pi/2]``.
    """
    v = np.asarray(v, dtype=complex)
    norm = np.linalg.norm(v)
    if norm <= 1e-14:
        raise ArgumentError("Kähler angle of the zero vector is undefined")
    if not V.contains(v, tol):
        raise ArgumentError("vector does not lie in the subspace")
    iv = 1j * v
    inside = V.project(iv)
    # arctan2 keeps accuracy near 0 and pi/2 where arccos loses digits
    return float(np.arctan2(np.linalg.norm(iv - inside), np.linalg.norm(inside)))


def kaehler_spectrum(V: RealSubspace) -> np.ndarray:
    """Kähler angles along the principal directions of ``V`` (sorted).

    The symmetric operator ``P J^T P J P`` on ``V`` has the squared cosines of
    the angles as eigenvalues; each eigenvector then gives its angle by the
    projection formula.
    """
    Q = V.orthonormal
    if not len(Q):
        return np.zeros(0)
    JQ = complex_to_real(1j * real_to_complex(Q))
    omega = JQ @ Q.T  # omega[a, b] = Re<i u_a, u_b>
    _, vecs = np.linalg.eigh(omega.T @ omega)
    U = vecs.T @ Q
    JU = vecs.T @ JQ
    inside = (JU @ Q.T) @ Q
    cos = np.linalg.norm(inside, axis=1)
    sin = np.linalg.norm(JU - inside, axis=1)
    return np.sort(np.arctan2(sin, cos)) if len(U) else np.zeros(0)


def constant_kaehler_angle(V: RealSubspace, tol: float = ANGLE_TOL, samples: int = 50, seed: int = 0):
    """Common Kähler angle of all nonzero vectors of ``V``, or None.

    The spectral test decides; random unit vectors of ``V`` are checked as
    well and must agree.
    """
    if V.dim < 1:
        raise ArgumentError("constant Kähler angle needs a nonzero subspace")
    angles = kaehler_spectrum(V)
    if angles.max() - angles.min() > tol:
        return None
    phi = float(np.mean(angles))
    rng = np.random.default_rng(seed)
    Q = V.orthonormal
    for _ in range(samples):
        c = rng.standard_normal(V.dim)
        v = real_to_complex(c @ Q)
        if abs(kaehler_angle(v, V) - phi) > tol:
            return None
    return min(max(phi, 0.0), math.pi / 2)


@dataclass(frozen=True)
class WDecomposition:
    """w = w0 + w_phi inside C^{n-1} together with the complement w_perp.

    ``w_phi`` has basis ``f_1..f_l, h_1..h_l`` and ``w_perp`` has basis
    ``f'_1..f'_l, h'_1..h'_l``.
    """

    k: int
    ell: int
    phi: float
    n: int
    w0: RealSubspace
    w_phi: RealSubspace
    w_perp: RealSubspace

    @property
    def w(self) -> RealSubspace:
        return RealSubspace(self.n - 1, self.w0.basis + self.w_phi.basis)


def build_w_decomposition(k: int, ell: int, phi: float, n: int) -> WDecomposition:
    """Subspaces w0, w_phi and w_perp of C^{n-1} with k + 2 ell = n - 1.

    Args:
        k: complex dimension of w0 = span_C{e_2, ..., e_{k+1}}.
        ell: half the real dimension of w_phi.
        phi: Kähler angle of w_phi, in (0, pi/2].
        n: the ambient parameter; vectors live in C^{n-1}.
    """
    if k < 0 or ell < 0 or k + 2 * ell != n - 1:
        raise ArgumentError(f"need k + 2*ell = n - 1, got k={k}, ell={ell}, n={n}")
    if not 0 < phi <= math.pi / 2:
        raise ArgumentError(f"phi must lie in (0, pi/2], got {phi}")
    m = n - 1
    c, s = math.cos(phi / 2), math.sin(phi / 2)

    def e(j):  # canonical e_j of C^{1,n}, j >= 2
        return _unit_i(m, j - 2)

    w0 = RealSubspace.complex_span([e(j) for j in range(2, k + 2)], m)
    f = [c * e(k + j + 1) + s * 1j * e(k + ell + j + 1) for j in range(1, ell + 1)]
    h = [c * 1j * e(k + j + 1) + s * e(k + ell + j + 1) for j in range(1, ell + 1)]
    fp = [-s * e(k + j + 1) + c * 1j * e(k + ell + j + 1) for j in range(1, ell + 1)]
    hp = [-s * 1j * e(k + j + 1) + c * e(k + ell + j + 1) for j in range(1, ell + 1)]
    return WDecomposition(
        k, ell, phi, n, w0, RealSubspace(m, tuple(f + h)), RealSubspace(m, tuple(fp + hp))
    )
