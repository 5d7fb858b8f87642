"""Matrix Lie algebras so(2,n), u(1,n), su(1,n) and their groups.

so(2,n) is realised as ``{X real : eps X + X^T eps = 0}`` with
``eps = diag(-1, -1, 1, ..., 1)`` acting on ``R^{2,n}``; u(1,n) as
``{X complex : X^* eps + eps X = 0}`` with ``eps = diag(-1, 1, ..., 1)`` acting
on ``C^{1,n}``, and su(1,n) as its traceless part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericError, TagError
from .indefinite_linear import COMPLEX, REAL, AdsPoint, realify


class Algebra(str, enum.Enum):
    SO = "so(2,n)"
    U = "u(1,n)"
    SU = "su(1,n)"

    @property
    def is_complex(self) -> bool:
        return self is not Algebra.SO

    @property
    def model(self) -> str:
        return COMPLEX if self.is_complex else REAL

    def size(self, n: int) -> int:
        return n + 1 if self.is_complex else n + 2

    def dim(self, n: int) -> int:
        if self is Algebra.SO:
            return (n + 2) * (n + 1) // 2
        if self is Algebra.U:
            return (n + 1) ** 2
        return (n + 1) ** 2 - 1


def epsilon(algebra: Algebra, n: int) -> np.ndarray:
    neg = 1 if algebra.is_complex else 2
    return np.diag([-1.0] * neg + [1.0] * (algebra.size(n) - neg))


def _coerce(mat, algebra, n):
    algebra = Algebra(algebra)
    mat = np.array(mat, dtype=complex if algebra.is_complex else float)
    if algebra is Algebra.SO and np.iscomplexobj(mat):
        raise TagError("so(2,n) elements are real")
    size = algebra.size(n)
    if mat.shape != (size, size):
        raise TagError(f"{algebra.value} with n={n} needs {size}x{size} matrices, got {mat.shape}")
    mat.setflags(write=False)
    return mat, algebra


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A square matrix tagged with its parent algebra."""

    mat: np.ndarray
    algebra: Algebra
    n: int

    def __post_init__(self):
        mat, algebra = _coerce(self.mat, self.algebra, self.n)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "algebra", algebra)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.n != self.n or other.algebra is not self.algebra:
            raise TagError(f"cannot combine {self.algebra.value} (n={self.n}) with {other.algebra.value} (n={other.n})")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.mat + other.mat, self.algebra, self.n)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.mat - other.mat, self.algebra, self.n)

    def __neg__(self):
        return AlgebraElement(-self.mat, self.algebra, self.n)

    def __mul__(self, c):
        return AlgebraElement(float(c) * self.mat, self.algebra, self.n)

    __rmul__ = __mul__

    def act(self, p) -> np.ndarray:
        """Infinitesimal action ``X . p`` on an ambient vector or ``AdsPoint``."""
        coords = p.coords if isinstance(p, AdsPoint) else np.asarray(p)
        return self.mat @ coords

    def retag(self, algebra: Algebra) -> "AlgebraElement":
        """View an su(1,n) element as an element of u(1,n) (or vice versa)."""
        algebra = Algebra(algebra)
        if algebra.is_complex != self.algebra.is_complex:
            raise TagError("cannot move between real and complex algebras")
        return AlgebraElement(self.mat, algebra, self.n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __repr__(self):
        return f"AlgebraElement({self.algebra.value}, n={self.n})"


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A matrix of SO(2,n), U(1,n) or SU(1,n); ``group`` reuses the algebra tag."""

    mat: np.ndarray
    group: Algebra
    n: int

    def __post_init__(self):
        mat, group = _coerce(self.mat, self.group, self.n)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "group", group)

    def __matmul__(self, other):
        if isinstance(other, GroupElement):
            if other.group is not self.group or other.n != self.n:
                raise TagError("group elements from different groups")
            return GroupElement(self.mat @ other.mat, self.group, self.n)
        return NotImplemented

    def apply(self, p):
        """Act on an ``AdsPoint`` (returning one) or on a raw ambient vector."""
        if isinstance(p, AdsPoint):
            if p.model != self.group.model or p.n != self.n:
                raise TagError("point and group live in different models")
            return AdsPoint(self.mat @ p.coords, p.model, p.n)
        return self.mat @ np.asarray(p)

    def inverse(self) -> "GroupElement":
        eps = epsilon(self.group, self.n)
        m = self.mat
        inv = eps @ (m.conj().T if self.group.is_complex else m.T) @ eps
        return GroupElement(inv, self.group, self.n)


def element(mat, algebra, n: int | None = None) -> AlgebraElement:
    algebra = Algebra(algebra)
    if n is None:
        n = np.asarray(mat).shape[0] - (1 if algebra.is_complex else 2)
    return AlgebraElement(mat, algebra, n)


def zero(algebra, n: int) -> AlgebraElement:
    algebra = Algebra(algebra)
    size = algebra.size(n)
    return AlgebraElement(np.zeros((size, size)), algebra, n)


@lru_cache(maxsize=None)
def _basis_mats(algebra: Algebra, n: int) -> tuple[np.ndarray, ...]:
    size = algebra.size(n)
    eps = np.diag(epsilon(algebra, n))
    mats = []

    def unit(i, j):
        m = np.zeros((size, size), dtype=complex if algebra.is_complex else float)
        m[i, j] = 1
        return m

    if algebra is Algebra.SO:
        for i in range(size):
            for j in range(i + 1, size):
                mats.append(unit(i, j) - eps[i] * eps[j] * unit(j, i))
        return tuple(mats)

    if algebra is Algebra.U:
        mats.extend(1j * unit(k, k) for k in range(size))
    else:
        mats.extend(1j * (unit(k, k) - unit(k + 1, k + 1)) for k in range(size - 1))
    for j in range(size):
        for k in range(j + 1, size):
            s = eps[j] * eps[k]
            mats.append(unit(j, k) - s * unit(k, j))
            mats.append(1j * (unit(j, k) + s * unit(k, j)))
    return tuple(mats)


def algebra_basis(algebra, n: int) -> list[AlgebraElement]:
    """A real basis of the whole algebra (elementary matrices adapted to ``eps``)."""
    algebra = Algebra(algebra)
    return [AlgebraElement(m, algebra, n) for m in _basis_mats(algebra, n)]


@lru_cache(maxsize=None)
def _coord_solver(algebra: Algebra, n: int) -> np.ndarray:
    return np.linalg.pinv(realify(np.array(_basis_mats(algebra, n))))


def coordinates(X: AlgebraElement) -> np.ndarray:
    """Real coordinates of ``X`` in ``algebra_basis``."""
    return realify(X.mat[None])[0] @ _coord_solver(X.algebra, X.n)


def bracket(X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    if X.algebra is not Y.algebra or X.n != Y.n:
        raise TagError(f"bracket of {X.algebra.value} (n={X.n}) with {Y.algebra.value} (n={Y.n})")
    return AlgebraElement(X.mat @ Y.mat - Y.mat @ X.mat, X.algebra, X.n)


def ad_matrix(X: AlgebraElement) -> np.ndarray:
    """Matrix of ``ad X`` in the coordinates of ``algebra_basis``."""
    images = [X.mat @ B - B @ X.mat for B in _basis_mats(X.algebra, X.n)]
    return (realify(np.array(images)) @ _coord_solver(X.algebra, X.n)).T


def killing_form_adtrace(X: AlgebraElement, Y: AlgebraElement) -> float:
    """``tr(ad X o ad Y)`` computed on a full basis; the oracle for closed forms."""
    if X.algebra is not Y.algebra or X.n != Y.n:
        raise TagError("Killing form of elements from different algebras")
    return float(np.trace(ad_matrix(X) @ ad_matrix(Y)))


def killing_form(X: AlgebraElement, Y: AlgebraElement) -> float:
    """Killing form of so(2,n), ``B(X, Y) = n tr(XY)``."""
    if X.algebra is not Algebra.SO or Y.algebra is not Algebra.SO or X.n != Y.n:
        raise TagError("killing_form is defined here for so(2,n) only; use btheta_inner")
    return float(X.n * np.trace(X.mat @ Y.mat))


def theta(X: AlgebraElement) -> AlgebraElement:
    """Cartan involution ``X -> -X^T`` (so) or ``X -> -X^*`` (u, su)."""
    return AlgebraElement(-X.mat.conj().T, X.algebra, X.n)


def cartan_split(X: AlgebraElement) -> tuple[AlgebraElement, AlgebraElement]:
    """Split ``X = k + p`` with ``theta k = k`` and ``theta p = -p``."""
    tX = theta(X).mat
    return (
        AlgebraElement((X.mat + tX) / 2, X.algebra, X.n),
        AlgebraElement((X.mat - tX) / 2, X.algebra, X.n),
    )


def btheta_inner(X: AlgebraElement, Y: AlgebraElement) -> float:
    """Inner product ``B_theta(X, Y) = -B(X, theta Y)``.

    For so(2,n) this is ``n tr(X Y^T)``. For su(1,n) the Killing form is
    ``2(n+1) tr(XY)``, giving ``2(n+1) Re tr(X Y^*)``; the same expression is
    used on u(1,n), where it stays positive definite on the centre.
    """
    if X.algebra is not Y.algebra or X.n != Y.n:
        raise TagError("inner product of elements from different algebras")
    if X.algebra is Algebra.SO:
        return float(X.n * np.sum(X.mat * Y.mat))
    return float(2 * (X.n + 1) * np.sum(X.mat * Y.mat.conj()).real)


def validate(x, tol: float = 1e-10) -> bool:
    """Check the defining identities of an algebra or group element.

    Group identities are compared relative to ``max(1, |g|_max^2)`` because
    entries of hyperbolic elements grow like ``cosh``.
    """
    if isinstance(x, AlgebraElement):
        m = x.mat
        eps = epsilon(x.algebra, x.n)
        if x.algebra is Algebra.SO:
            ok = np.abs(eps @ m + m.T @ eps).max() <= tol
            return bool(ok and abs(np.trace(m)) <= tol)
        ok = np.abs(m.conj().T @ eps + eps @ m).max() <= tol
        if x.algebra is Algebra.SU:
            ok = ok and abs(np.trace(m)) <= tol
        return bool(ok)
    if isinstance(x, GroupElement):
        g = x.mat
        eps = epsilon(x.group, x.n)
        scale = max(1.0, float(np.abs(g).max()) ** 2)
        gstar = g.conj().T if x.group.is_complex else g.T
        if np.abs(gstar @ eps @ g - eps).max() > tol * scale:
            return False
        if x.group is not Algebra.U:
            det = np.linalg.det(g)
            if abs(det - 1) > tol * scale:
                return False
        return True
    return False


def exp_series(X: AlgebraElement, tol: float = 1e-14, max_terms: int = 60) -> GroupElement:
    """Matrix exponential by scaling and squaring of the Taylor series.

    The argument is halved until its 1-norm is below 1/2; the series is cut
    once a term falls below ``tol`` times the partial sum. Nilpotent arguments
    stop exactly when their powers vanish.
    """
    A = X.mat
    norm = np.abs(A).sum(axis=0).max() if A.size else 0.0
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    B = A / 2.0**squarings
    result = np.eye(A.shape[0], dtype=A.dtype)
    term = result.copy()
    for k in range(1, max_terms + 1):
        term = term @ B / k
        result = result + term
        if np.abs(term).max() <= tol * np.abs(result).max():
            break
    else:
        raise NumericError(f"series did not converge in {max_terms} terms")
    for _ in range(squarings):
        result = result @ result
    return GroupElement(result, X.algebra, X.n)


def random_element(algebra, n: int, rng, scale: float = 1.0) -> AlgebraElement:
    """Element with coefficients uniform in ``[-scale, scale]`` on ``algebra_basis``."""
    mats = _basis_mats(Algebra(algebra), n)
    coef = rng.uniform(-scale, scale, size=len(mats))
    return AlgebraElement(np.tensordot(coef, np.array(mats), axes=1), algebra, n)


def combine(coefs, basis) -> AlgebraElement:
    """Real linear combination of basis elements."""
    first = basis[0]
    mat = np.tensordot(np.asarray(coefs, dtype=float), np.array([b.mat for b in basis]), axes=1)
    return AlgebraElement(mat, first.algebra, first.n)


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """A real subalgebra given by a basis of algebra elements.

    Construction reduces a spanning family to a basis and, unless told
    otherwise, checks closure under the bracket.
    """

    algebra: Algebra
    n: int
    basis: tuple[AlgebraElement, ...]

    @classmethod
    def span(cls, elements, algebra=None, n=None, check: bool = True, tol: float = 1e-9) -> "Subalgebra":
        elements = list(elements)
        if algebra is None or n is None:
            if not elements:
                raise TagError("empty span needs an explicit algebra and n")
            algebra, n = elements[0].algebra, elements[0].n
        algebra = Algebra(algebra)
        for e in elements:
            if e.algebra is not algebra or e.n != n:
                raise TagError(f"element of {e.algebra.value} (n={e.n}) in a {algebra.value} span")
        basis = tuple(_independent(elements))
        sub = cls(algebra, n, basis)
        if check:
            res = sub.closure_residual()
            if res > tol:
                raise TagError(f"span is not closed under the bracket (residual {res:.2e})")
        return sub

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def mats(self) -> np.ndarray:
        size = self.algebra.size(self.n)
        if not self.basis:
            return np.zeros((0, size, size))
        return np.array([b.mat for b in self.basis])

    def residual(self, X: AlgebraElement) -> float:
        """Relative distance of ``X`` from the span."""
        target = realify(X.mat[None])[0]
        scale = np.linalg.norm(target)
        if scale == 0:
            return 0.0
        if not self.basis:
            return 1.0
        B = realify(self.mats())
        coef, *_ = np.linalg.lstsq(B.T, target, rcond=None)
        return float(np.linalg.norm(B.T @ coef - target) / scale)

    def contains(self, X: AlgebraElement, tol: float = 1e-9) -> bool:
        return self.residual(X) <= tol

    def closure_residual(self) -> float:
        worst = 0.0
        for i, x in enumerate(self.basis):
            for y in self.basis[i + 1 :]:
                z = bracket(x, y)
                if z.norm() > 1e-14 * max(1.0, x.norm() * y.norm()):
                    worst = max(worst, self.residual(z))
        return worst

    def direct_sum(self, *others: "Subalgebra", check: bool = True) -> "Subalgebra":
        elements = list(self.basis)
        for o in others:
            elements.extend(o.basis)
        return Subalgebra.span(elements, self.algebra, self.n, check=check)

    def retag(self, algebra) -> "Subalgebra":
        return Subalgebra(Algebra(algebra), self.n, tuple(b.retag(algebra) for b in self.basis))


def _independent(elements, tol: float = 1e-10):
    """Greedy selection of a linearly independent subfamily, in order."""
    kept = []
    rows = []
    for e in elements:
        r = realify(e.mat[None])[0]
        nr = np.linalg.norm(r)
        if nr == 0:
            continue
        if rows:
            Q = np.array(rows)
            r_perp = r - Q.T @ (Q @ r)
            if np.linalg.norm(r_perp) <= tol * nr:
                continue
        else:
            r_perp = r
        rows.append(r_perp / np.linalg.norm(r_perp))
        kept.append(e)
    return kept
