"""Restricted root space decompositions of so(2,n) and su(1,n).

Roots are labelled by integer tuples in the simple-root basis: ``(1, 0)`` is
alpha_1, ``(0, 1)`` alpha_2, ``(1, 2)`` alpha_1 + 2 alpha_2 for so(2,n), and
``(1,)``, ``(2,)`` are alpha, 2 alpha for su(1,n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArgumentError, DegeneracyError, NotNilpotentError, TagError
from .indefinite_linear import realify, span_basis
from .lie_core import (
    Algebra,
    AlgebraElement,
    Subalgebra,
    algebra_basis,
    bracket,
    btheta_inner,
    cartan_split,
    theta,
)

# simple roots evaluated on the flat basis (H_{1,0}, H_{0,1}); alpha_1(H_{a,b}) = -a + b, alpha_2 = a
SO_SIMPLE = np.array([[-1.0, 1.0], [1.0, 0.0]])
# alpha evaluated on the generator <0, e_1, 0> of a
SU_SIMPLE = np.array([[1.0]])

SO_POSITIVE = ((1, 0), (0, 1), (1, 1), (1, 2))
SU_POSITIVE = ((1,), (2,))

ROOT_NAMES = {
    (1, 0): "alpha1",
    (0, 1): "alpha2",
    (1, 1): "alpha1+alpha2",
    (1, 2): "alpha1+2alpha2",
    (1,): "alpha",
    (2,): "2alpha",
}


def root_name(root) -> str:
    root = tuple(root)
    if root in ROOT_NAMES:
        return ROOT_NAMES[root]
    neg = tuple(-c for c in root)
    if neg in ROOT_NAMES:
        return "-" + ROOT_NAMES[neg]
    return str(root)


def flat_so(a: float, b: float, n: int) -> AlgebraElement:
    """The flat element ``H_{a,b}`` of so(2,n)."""
    m = np.zeros((n + 2, n + 2))
    m[0, 2] = m[2, 0] = a
    m[1, 3] = m[3, 1] = b
    return AlgebraElement(m, Algebra.SO, n)


def ceil_mat(t: float, v, X, n: int) -> np.ndarray:
    """Raw matrix ``[[i t, v^*], [v, X]]``; see ``su1n_actions.ceil`` for the checked version."""
    m = np.zeros((n + 1, n + 1), dtype=complex)
    v = np.asarray(v, dtype=complex)
    m[0, 0] = 1j * t
    m[0, 1:] = v.conj()
    m[1:, 0] = v
    m[1:, 1:] = X
    return m


def flat_su(x: float, n: int, algebra=Algebra.SU) -> AlgebraElement:
    """``x <0, e_1, 0>``, spanning the flat of su(1,n)."""
    e1 = np.zeros(n)
    e1[0] = x
    return AlgebraElement(ceil_mat(0.0, e1, np.zeros((n, n)), n), algebra, n)


def maximal_flat(algebra, n: int) -> list[AlgebraElement]:
    algebra = Algebra(algebra)
    if algebra is Algebra.SO:
        return [flat_so(1, 0, n), flat_so(0, 1, n)]
    if algebra is Algebra.SU:
        return [flat_su(1.0, n)]
    raise TagError(f"no maximal flat defined for {algebra.value}")


def _simple(algebra):
    return SO_SIMPLE if algebra is Algebra.SO else SU_SIMPLE


def covector(algebra, root) -> np.ndarray:
    """Values of the root on the flat basis returned by ``maximal_flat``."""
    return np.asarray(root, dtype=float) @ _simple(Algebra(algebra))


@dataclass(frozen=True, eq=False)
class RootDecomposition:
    algebra: Algebra
    n: int
    flat: tuple[AlgebraElement, ...]
    spaces: dict
    zero_space: tuple[AlgebraElement, ...]
    k0: tuple[AlgebraElement, ...]

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return sorted(self.spaces)

    @property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return [r for r in self.roots if next(c for c in r if c != 0) > 0]

    def multiplicity(self, root) -> int:
        return len(self.spaces.get(tuple(root), ()))

    def space(self, root) -> tuple[AlgebraElement, ...]:
        root = tuple(root)
        if all(c == 0 for c in root):
            return self.zero_space
        return self.spaces.get(root, ())

    def multiplicities(self) -> dict:
        return {r: len(b) for r, b in sorted(self.spaces.items())}


def _btheta_orthonormal(elements):
    gram = np.array([[btheta_inner(x, y) for y in elements] for x in elements])
    L = np.linalg.cholesky(gram)
    coef = np.linalg.inv(L)
    mats = np.tensordot(coef, np.array([e.mat for e in elements]), axes=1)
    return [AlgebraElement(m, elements[0].algebra, elements[0].n) for m in mats]


def _generic_flat(algebra, n):
    if algebra is Algebra.SO:
        return flat_so(1.0, math.sqrt(2.0), n)
    return flat_su(1.0, n)


def _cluster(values, tol):
    order = np.argsort(values)
    clusters = [[order[0]]]
    for prev, cur in zip(order, order[1:]):
        if values[cur] - values[prev] > tol:
            clusters.append([cur])
        else:
            clusters[-1].append(cur)
    centers = [float(np.mean(values[c])) for c in clusters]
    for c in clusters:
        if np.ptp(values[c]) > tol:
            raise DegeneracyError("eigenvalue cluster wider than tolerance")
    for a, b in zip(centers, centers[1:]):
        if b - a <= 1e3 * tol:
            raise DegeneracyError(f"eigenvalue clusters {a:.3g} and {b:.3g} too close to separate")
    return clusters


@lru_cache(maxsize=None)
def root_decomposition(algebra, n: int, tol: float = 1e-6) -> RootDecomposition:
    """Restricted roots and root spaces by diagonalising ``ad`` of a generic flat element.

    ``ad H`` is symmetric for ``B_theta`` when ``H`` lies in p, so it is
    diagonalised in a ``B_theta``-orthonormal basis; eigenvectors are grouped by
    eigenvalue and each group's joint eigenvalues on the flat basis are
    rounded to integer coordinates in the simple roots.
    """
    algebra = Algebra(algebra)
    if algebra is Algebra.SO and n < 3:
        raise ArgumentError("so(2,n) decomposition requires n >= 3")
    if algebra is Algebra.SU and n < 2:
        raise ArgumentError("su(1,n) decomposition requires n >= 2")
    flat = maximal_flat(algebra, n)
    ortho = _btheta_orthonormal(algebra_basis(algebra, n))
    H = _generic_flat(algebra, n)
    ad = np.array([[btheta_inner(x, bracket(H, y)) for y in ortho] for x in ortho])
    ad = (ad + ad.T) / 2
    values, vectors = np.linalg.eigh(ad)
    mats = np.array([e.mat for e in ortho])
    simple = _simple(algebra)

    spaces = {}
    zero_space = ()
    for cluster in _cluster(values, tol):
        elems = [AlgebraElement(np.tensordot(vectors[:, j], mats, axes=1), algebra, n) for j in cluster]
        joint = []
        for Hi in flat:
            lam = [btheta_inner(x, bracket(Hi, x)) for x in elems]
            joint.append(float(np.mean(lam)))
        joint = np.array(joint)
        coef, *_ = np.linalg.lstsq(simple.T, joint, rcond=None)
        root = tuple(int(c) for c in np.rint(coef))
        if np.abs(coef - np.rint(coef)).max() > 1e-6:
            raise DegeneracyError(f"joint eigenvalues {joint} are not an integer combination of simple roots")
        if all(c == 0 for c in root):
            zero_space = tuple(elems)
        else:
            spaces[root] = tuple(elems)

    # the zero space is a + k0; drop k-parts that are pure round-off
    scale = max(x.norm() for x in zero_space)
    k_parts = [k for k in (cartan_split(x)[0] for x in zero_space) if k.norm() > 1e-9 * scale]
    k_rows = span_basis(np.array([k.mat for k in k_parts])) if k_parts else []
    k0 = tuple(_from_real_rows(k_rows, algebra, n))
    return RootDecomposition(algebra, n, tuple(flat), spaces, zero_space, k0)


def _from_real_rows(rows, algebra, n):
    size = algebra.size(n)
    out = []
    for r in rows:
        if algebra.is_complex:
            m = (r[0::2] + 1j * r[1::2]).reshape(size, size)
        else:
            m = r.reshape(size, size)
        out.append(AlgebraElement(m, algebra, n))
    return out


def closed_form_root_space(algebra, n: int, root) -> list[AlgebraElement]:
    """Explicit root-space bases (negative roots via the Cartan involution)."""
    algebra = Algebra(algebra)
    root = tuple(root)
    positive = SO_POSITIVE if algebra is Algebra.SO else SU_POSITIVE
    if algebra is Algebra.U:
        raise TagError("root spaces are defined for so(2,n) and su(1,n)")
    if root not in positive:
        neg = tuple(-c for c in root)
        if neg in positive:
            return [theta(x) for x in closed_form_root_space(algebra, n, neg)]
        raise ArgumentError(f"unknown root {root} for {algebra.value}")
    if algebra is Algebra.SO:
        return _so_root_space(n, root)
    return _su_root_space(n, root)


def _so_root_space(n, root):
    size = n + 2

    def corner(tl, tm, ml, mm):
        m = np.zeros((size, size))
        m[0:2, 0:2] = tl
        m[0:2, 2:4] = tm
        m[2:4, 0:2] = ml
        m[2:4, 2:4] = mm
        return AlgebraElement(m, Algebra.SO, n)

    J = np.array([[0, 1], [-1, 0]])
    S = np.array([[0, -1], [-1, 0]])
    if root == (1, 0):
        return [corner(J, S, S, J)]
    if root == (1, 2):
        return [corner(J, -J, J, -J)]
    row = 0 if root == (0, 1) else 1
    out = []
    for k in range(n - 2):
        m = np.zeros((size, size))
        m[row, 4 + k] = 1
        m[2 + row, 4 + k] = 1
        m[4 + k, row] = 1
        m[4 + k, 2 + row] = -1
        out.append(AlgebraElement(m, Algebra.SO, n))
    return out


def _su_root_space(n, root):
    if root == (2,):
        m = np.zeros((n + 1, n + 1), dtype=complex)
        m[0, 0] = m[1, 0] = 1j
        m[0, 1] = m[1, 1] = -1j
        return [AlgebraElement(m, Algebra.SU, n)]
    out = []
    for k in range(n - 1):
        for c in (1.0, 1j):
            v = np.zeros(n - 1, dtype=complex)
            v[k] = c
            out.append(AlgebraElement(g_alpha_mat(v, n), Algebra.SU, n))
    return out


def g_alpha_mat(v, n: int) -> np.ndarray:
    """``<0, (0, v), [[0, v^*], [-v, 0]]>`` for ``v`` in ``C^{n-1}``."""
    v = np.asarray(v, dtype=complex)
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[0, 2:] = v.conj()
    m[1, 2:] = v.conj()
    m[2:, 0] = v
    m[2:, 1] = -v
    return m


def g_2alpha_mat(mu: float, n: int) -> np.ndarray:
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[0, 0] = m[1, 0] = 1j * mu
    m[0, 1] = m[1, 1] = -1j * mu
    return m


def closed_form_k0(algebra, n: int) -> list[AlgebraElement]:
    """Explicit basis of ``k_0``: so(n-2) on the last coordinates, or s(u(1) u(n-1))."""
    algebra = Algebra(algebra)
    out = []
    if algebra is Algebra.SO:
        for i in range(4, n + 2):
            for j in range(i + 1, n + 2):
                m = np.zeros((n + 2, n + 2))
                m[i, j], m[j, i] = 1, -1
                out.append(AlgebraElement(m, algebra, n))
        return out
    if algebra is Algebra.U:
        raise TagError("k_0 is taken inside su(1,n)")
    # <mu, 0, diag(i mu, Y)> with 2 i mu + tr Y = 0
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[0, 0] = m[1, 1] = 1j
    m[2, 2] = -2j
    out.append(AlgebraElement(m, algebra, n))
    for Y in unitary_basis(n - 1, traceless=True):
        m = np.zeros((n + 1, n + 1), dtype=complex)
        m[2:, 2:] = Y
        out.append(AlgebraElement(m, algebra, n))
    return out


def unitary_basis(m: int, traceless: bool = False) -> list[np.ndarray]:
    """Real basis of u(m) (or su(m)) as skew-hermitian matrices."""
    out = []

    def unit(i, j):
        e = np.zeros((m, m), dtype=complex)
        e[i, j] = 1
        return e

    if traceless:
        out.extend(1j * (unit(k, k) - unit(k + 1, k + 1)) for k in range(m - 1))
    else:
        out.extend(1j * unit(k, k) for k in range(m))
    for j in range(m):
        for k in range(j + 1, m):
            out.append(unit(j, k) - unit(k, j))
            out.append(1j * (unit(j, k) + unit(k, j)))
    return out


def iwasawa_parts(dec: RootDecomposition) -> tuple[Subalgebra, Subalgebra, Subalgebra]:
    """``(k_0, a, n)`` with ``n`` the sum of the positive root spaces."""
    alg, n = dec.algebra, dec.n
    k0 = Subalgebra.span(dec.k0, alg, n)
    a = Subalgebra.span(dec.flat, alg, n)
    nil = Subalgebra.span([x for r in dec.positive_roots for x in dec.spaces[r]], alg, n)
    return k0, a, nil


def nilpotency_degree(s: Subalgebra, tol: float = 1e-10) -> int:
    """Smallest ``k`` with ``C^{k+1}(s) = 0`` in the lower central series."""
    if s.dim == 0:
        return 0
    base = [b * (1.0 / b.norm()) for b in s.basis]
    current = base
    for k in range(1, s.dim + 1):
        brackets = [bracket(x, y) for x in base for y in current]
        if max(b.norm() for b in brackets) <= tol:
            return k
        rows = span_basis(realify(np.array([b.mat for b in brackets])), tol=1e-9)
        current = _from_real_rows(rows, s.algebra, s.n)
    raise NotNilpotentError(f"lower central series did not vanish within {s.dim} steps")
