"""U(1,n) acting on AdS^{2n+1}: closed-form exponentials, case subalgebras, slices.

Coordinates are those of C^{1,n} with basis e_0, ..., e_n; vectors of
``g_alpha`` live in C^{n-1} and correspond to e_2, ..., e_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import null_space

from .errors import (
    ArgumentError,
    PreconditionError,
    UnreachableError,
    WrongHalfError,
)
from .indefinite_linear import (
    COMPLEX,
    AdsPoint,
    form,
    realify,
    span_basis,
    span_contains,
    spans_equal,
)
from .kaehler import RealSubspace, build_w_decomposition
from .lie_core import (
    Algebra,
    AlgebraElement,
    GroupElement,
    Subalgebra,
    algebra_basis,
    cartan_split,
    combine,
)
from .orbit_engine import tangent_vectors
from .roots import closed_form_k0, closed_form_root_space, flat_su, g_2alpha_mat, g_alpha_mat

SMALL_X = 1e-4


# ---------------------------------------------------------------- builders


@dataclass(frozen=True)
class CeilElement:
    """The block matrix ``[[i t, v^*], [v, X]]`` of u(1,n)."""

    t: float
    v: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        X = np.asarray(self.X, dtype=complex)
        if X.ndim == 0 and X == 0:
            X = np.zeros((len(v), len(v)), dtype=complex)
        if X.shape != (len(v), len(v)):
            raise ArgumentError(f"X must be {len(v)}x{len(v)}, got {X.shape}")
        if np.abs(X + X.conj().T).max(initial=0.0) > 1e-12 * max(1.0, np.abs(X).max(initial=0.0)):
            raise ArgumentError("X is not skew-hermitian")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "X", X)

    @property
    def n(self) -> int:
        return len(self.v)

    def matrix(self) -> np.ndarray:
        n = self.n
        m = np.zeros((n + 1, n + 1), dtype=complex)
        m[0, 0] = 1j * self.t
        m[0, 1:] = self.v.conj()
        m[1:, 0] = self.v
        m[1:, 1:] = self.X
        return m

    def in_su(self, tol: float = 1e-12) -> bool:
        return abs(1j * self.t + np.trace(self.X)) <= tol

    def element(self) -> AlgebraElement:
        """Tagged su(1,n) when the trace condition holds, else u(1,n)."""
        alg = Algebra.SU if self.in_su() else Algebra.U
        return AlgebraElement(self.matrix(), alg, self.n)


def ceil(t, v, X=0) -> AlgebraElement:
    return CeilElement(t, v, X).element()


def a_generator(n: int, algebra=Algebra.SU) -> AlgebraElement:
    return flat_su(1.0, n, Algebra(algebra))


def n_algebra_element(mu: float, v, n: int) -> AlgebraElement:
    """Element ``mu`` of g_{2 alpha} plus ``v`` of g_alpha."""
    return AlgebraElement(g_2alpha_mat(mu, n) + g_alpha_mat(v, n), Algebra.SU, n)


def s_algebra_element(x: float, mu: float, zeta, n: int) -> AlgebraElement:
    """``x`` times the flat generator plus an element of n."""
    return n_algebra_element(mu, zeta, n) + a_generator(n) * x


# ---------------------------------------------------- stable x-functions


def _taylor(x, coefs):
    return sum(c * x**k for k, c in enumerate(coefs))


_F = math.factorial


def sinhc(x: float) -> float:
    """sinh(x) / x."""
    if abs(x) < SMALL_X:
        return _taylor(x, [1, 0, 1 / _F(3), 0, 1 / _F(5), 0])
    return math.sinh(x) / x


def cosh_m1_over_x(x: float) -> float:
    """(cosh(x) - 1) / x."""
    if abs(x) < SMALL_X:
        return _taylor(x, [0, 1 / _F(2), 0, 1 / _F(4), 0, 1 / _F(6)])
    # cosh x - 1 = 2 sinh^2(x/2) avoids cancellation for moderate x
    return 2 * math.sinh(x / 2) ** 2 / x


def cosh_m1_over_x2(x: float) -> float:
    """(cosh(x) - 1) / x**2."""
    if abs(x) < SMALL_X:
        return _taylor(x, [1 / _F(2), 0, 1 / _F(4), 0, 1 / _F(6), 0])
    return 0.5 * sinhc(x / 2) ** 2


def one_m_expneg_over_x(x: float) -> float:
    """(1 - e^{-x}) / x."""
    if abs(x) < SMALL_X:
        return _taylor(x, [(-1) ** k / _F(k + 1) for k in range(6)])
    return -math.expm1(-x) / x


def expm1_over_x(x: float) -> float:
    """(e^x - 1) / x."""
    if abs(x) < SMALL_X:
        return _taylor(x, [1 / _F(k + 1) for k in range(6)])
    return math.expm1(x) / x


# --------------------------------------------------------- exponentials


@dataclass(frozen=True)
class AParams:
    x: float = 0.0


@dataclass(frozen=True)
class NParams:
    mu: float = 0.0
    v: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))


@dataclass(frozen=True)
class SParams:
    """Exponent ``x H + mu Z + zeta`` of ``s = a + w + g_{2 alpha}``."""

    x: float = 0.0
    mu: float = 0.0
    zeta: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))


def _vec(v, n):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size == 0:
        return np.zeros(n - 1, dtype=complex)
    if v.shape != (n - 1,):
        raise ArgumentError(f"g_alpha vector must have length {n - 1}")
    return v


def algebra_element_of(params, n: int) -> AlgebraElement:
    """The su(1,n) element whose exponential ``exp_closed`` evaluates."""
    if isinstance(params, AParams):
        return a_generator(n) * params.x
    if isinstance(params, NParams):
        return n_algebra_element(params.mu, _vec(params.v, n), n)
    if isinstance(params, SParams):
        return s_algebra_element(params.x, params.mu, _vec(params.zeta, n), n)
    raise ArgumentError(f"unknown exponential kind {type(params).__name__}")


def exp_closed(params, n: int) -> GroupElement:
    """Closed-form exponential of an element of a, n or a + n.

    Args:
        params: ``AParams``, ``NParams`` or ``SParams``.
        n: size parameter of su(1,n).
    """
    size = n + 1
    g = np.eye(size, dtype=complex)
    if isinstance(params, AParams):
        x = params.x
        g[0, 0] = g[1, 1] = math.cosh(x)
        g[0, 1] = g[1, 0] = math.sinh(x)
        return GroupElement(g, Algebra.SU, n)
    if isinstance(params, NParams):
        v = _vec(params.v, n)
        h = 1j * params.mu + 0.5 * np.vdot(v, v).real
        g[0, 0] += h
        g[1, 0] += h
        g[0, 1] -= h
        g[1, 1] -= h
        g[0, 2:] += v.conj()
        g[1, 2:] += v.conj()
        g[2:, 0] += v
        g[2:, 1] -= v
        return GroupElement(g, Algebra.SU, n)
    if isinstance(params, SParams):
        x, mu = params.x, params.mu
        z = _vec(params.zeta, n)
        c = np.vdot(z, z).real
        X = s_algebra_element(x, mu, z, n).mat
        f1 = cosh_m1_over_x(x)
        g[0, 0] += (math.cosh(x) - 1) + cosh_m1_over_x2(x) * c
        g[1, 1] += (math.cosh(x) - 1) - cosh_m1_over_x2(x) * c
        g[0, 1] -= cosh_m1_over_x2(x) * c
        g[1, 0] += cosh_m1_over_x2(x) * c
        g[0, 2:] += f1 * z.conj()
        g[1, 2:] += f1 * z.conj()
        g[2:, 0] -= f1 * z
        g[2:, 1] += f1 * z
        g += sinhc(x) * X
        return GroupElement(g, Algebra.SU, n)
    raise ArgumentError(f"unknown exponential kind {type(params).__name__}")


# ------------------------------------------------------------ subalgebras


def _retag(elements, algebra=Algebra.U):
    return [e.retag(algebra) for e in elements]


def n_subalgebra(n: int, algebra=Algebra.U) -> Subalgebra:
    els = closed_form_root_space(Algebra.SU, n, (1,)) + closed_form_root_space(Algebra.SU, n, (2,))
    return Subalgebra.span(_retag(els, algebra), algebra, n)


def k_subalgebra(n: int) -> Subalgebra:
    """The fixed algebra s(u(1) + u(n)) of the Cartan involution in su(1,n)."""
    parts = [cartan_split(b)[0] for b in algebra_basis(Algebra.SU, n)]
    return Subalgebra.span(parts, Algebra.SU, n, check=False)


def k0_subalgebra(n: int, algebra=Algebra.SU) -> Subalgebra:
    return Subalgebra.span(_retag(closed_form_k0(Algebra.SU, n), algebra), algebra, n)


def x_c(c: float, n: int) -> AlgebraElement:
    """The u(1,n) element with corner block [[ic, 1], [1, ic]] and zeros elsewhere."""
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[0, 0] = m[1, 1] = 1j * c
    m[0, 1] = m[1, 0] = 1
    return AlgebraElement(m, Algebra.U, n)


def totally_real_w(r: int, n: int) -> RealSubspace:
    """w = span_C{e_2..e_{n-r}} + span_R{e_{n-r+1}..e_n} inside C^{n-1}."""
    if not 1 <= r <= n - 1:
        raise ArgumentError(f"need 1 <= r <= n-1, got r={r}, n={n}")
    m = n - 1
    eye = np.eye(m, dtype=complex)
    cplx = [eye[j - 2] for j in range(2, n - r + 1)]
    real = [eye[j - 2] for j in range(n - r + 1, n + 1)]
    return RealSubspace(m, tuple(cplx) + tuple(1j * v for v in cplx) + tuple(real))


def s_subalgebra(w: RealSubspace, n: int) -> Subalgebra:
    """``s = a + w + g_{2 alpha}`` inside su(1,n)."""
    if w.m != n - 1:
        raise ArgumentError("w must be a subspace of C^{n-1}")
    els = [a_generator(n), AlgebraElement(g_2alpha_mat(1.0, n), Algebra.SU, n)]
    els += [AlgebraElement(g_alpha_mat(b, n), Algebra.SU, n) for b in w.basis]
    return Subalgebra.span(els, Algebra.SU, n)


def normalizer_in_k(s: Subalgebra, tol: float = 1e-9) -> Subalgebra:
    """``{X in k : [X, s] in s}`` as the null space of ``X -> [X, s] mod s``."""
    n = s.n
    kb = k_subalgebra(n).basis
    Q = span_basis(realify(s.mats()))
    cols = []
    for K in kb:
        images = realify(np.array([K.mat @ S.mat - S.mat @ K.mat for S in s.basis]))
        images = images - (images @ Q.T) @ Q
        cols.append(images.reshape(-1))
    A = np.array(cols).T
    coef = null_space(A, rcond=tol)
    els = [combine(c, kb) for c in coef.T]
    return Subalgebra.span(els, Algebra.SU, n) if els else Subalgebra(Algebra.SU, n, ())


def _u_subspace(n: int, constraint: Callable[[np.ndarray], np.ndarray]) -> list[AlgebraElement]:
    """Elements of u(1,n) on which a real-linear ``constraint`` vanishes."""
    basis = algebra_basis(Algebra.U, n)
    A = np.array([constraint(b.mat) for b in basis]).T
    return [combine(c, basis) for c in null_space(A).T]


CASES = ("1a", "1b", "1c", "2", "3", "4", "5")


@dataclass(frozen=True)
class CaseDescriptor:
    """One of the seven families of cohomogeneity one actions on AdS^{2n+1}.

    Attributes:
        case: one of ``CASES``.
        n: size parameter, n >= 2.
        c: real, nonzero, for case 1c.
        k: block size for case 2 (0..n-1) or dim_C w0 for case 5.
        r: dim of the totally real part of w for case 4 (1..n-1).
        ell: half the real dimension of w_phi for case 5.
        phi: Kähler angle in (0, pi/2) for case 5.
    """

    case: str
    n: int
    c: float | None = None
    k: int | None = None
    r: int | None = None
    ell: int | None = None
    phi: float | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ArgumentError(f"unknown case {self.case!r}")
        if self.n < 2:
            raise ArgumentError("n must be at least 2")
        if self.case == "1c" and (self.c is None or self.c == 0):
            raise ArgumentError("case 1c needs a nonzero c")
        if self.case == "2" and (self.k is None or not 0 <= self.k <= self.n - 1):
            raise ArgumentError("case 2 needs k in {0, ..., n-1}")
        if self.case == "4" and (self.r is None or not 1 <= self.r <= self.n - 1):
            raise ArgumentError("case 4 needs r in {1, ..., n-1}")
        if self.case == "5":
            if self.k is None or self.ell is None or self.phi is None:
                raise ArgumentError("case 5 needs k, ell and phi")
            if self.ell < 1 or self.k < 0 or self.k + 2 * self.ell != self.n - 1:
                raise ArgumentError("case 5 needs ell >= 1 and k + 2 ell = n - 1")
            if not 0 < self.phi < math.pi / 2:
                raise ArgumentError("case 5 needs phi in (0, pi/2)")

    @property
    def label(self) -> str:
        extra = None
        if self.case == "1c":
            extra = f"c={self.c:g}"
        elif self.case == "2":
            extra = f"k={self.k}"
        elif self.case == "4":
            extra = f"r={self.r}"
        elif self.case == "5":
            extra = f"k={self.k},l={self.ell},phi={self.phi:.4g}"
        return f"{self.case}({extra})" if extra else self.case

    def w(self) -> RealSubspace:
        if self.case == "4":
            return totally_real_w(self.r, self.n)
        if self.case == "5":
            return build_w_decomposition(self.k, self.ell, self.phi, self.n).w
        raise ArgumentError(f"case {self.case} has no w")

    def w_perp(self) -> RealSubspace:
        """Real orthogonal complement of w in C^{n-1}."""
        if self.case == "5":
            return build_w_decomposition(self.k, self.ell, self.phi, self.n).w_perp
        w = self.w()
        perp = null_space(w.orthonormal).T
        return RealSubspace(self.n - 1, tuple(perp[:, 0::2] + 1j * perp[:, 1::2]))

    def W(self) -> np.ndarray:
        """Complex vectors spanning the stated subspace W for cases 2, 4 and 5.

        Case 2: span_C{e0..ek}. Cases 4 and 5: span_C{e0, e1} + w. For cases 4
        and 5 the orbit of e_0 is tangent to W at e_0 but the set W is not
        invariant once w has a non-complex part.
        """
        n = self.n
        eye = np.eye(n + 1, dtype=complex)
        if self.case == "2":
            head = [eye[j] for j in range(self.k + 1)]
            return np.array(head + [1j * v for v in head])
        if self.case in ("4", "5"):
            head = [eye[0], eye[1], 1j * eye[0], 1j * eye[1]]
            tail = [np.concatenate([[0, 0], b]) for b in self.w().basis]
            return np.array(head + tail)
        raise ArgumentError(f"case {self.case} has no W subspace")

    def W_dim(self) -> int:
        return len(span_basis(realify(self.W())))


def case_subalgebra(d: CaseDescriptor) -> Subalgebra:
    """Bracket-closed basis in u(1,n) of the acting algebra for a case."""
    n = d.n
    U = Algebra.U
    nil = n_subalgebra(n)
    if d.case == "1a":
        return Subalgebra.span([a_generator(n, U)] + list(nil.basis), U, n)
    if d.case == "1b":
        return Subalgebra.span(list(k0_subalgebra(n, U).basis) + list(nil.basis), U, n)
    if d.case == "1c":
        return Subalgebra.span([x_c(d.c, n)] + list(nil.basis), U, n)
    if d.case == "2":
        k = d.k

        def off_block(m):
            mask = np.zeros(m.shape, dtype=bool)
            mask[: k + 1, k + 1 :] = True
            mask[k + 1 :, : k + 1] = True
            return np.concatenate([realify(m[mask][None])[0], [np.trace(m).imag]])

        return Subalgebra.span(_u_subspace(n, off_block), U, n)
    if d.case == "3":

        def not_real_mod_centre(m):
            im = m.imag - (np.trace(m).imag / (n + 1)) * np.eye(n + 1)
            return im.reshape(-1)

        return Subalgebra.span(_u_subspace(n, not_real_mod_centre), U, n)
    # the circle of scalars is added so the lift contains the fibres even
    # when the normalizer has no u(1) factor (e.g. n = 2, r = 1)
    s = s_subalgebra(d.w(), n)
    nk = normalizer_in_k(s)
    els = _retag(list(nk.basis) + list(s.basis)) + [centre(n)]
    return Subalgebra.span(els, U, n)


def centre(n: int) -> AlgebraElement:
    """``i I``, generating the circle of scalars in U(1,n)."""
    return AlgebraElement(1j * np.eye(n + 1), Algebra.U, n)


def expected_normalizer_dim(d: CaseDescriptor) -> int:
    """Dimension of S(U(1) U(n-r-1) O(r)) for case 4, of U(k) x U(l) for case 5."""
    if d.case == "4":
        m = d.n - d.r - 1
        return m * m + d.r * (d.r - 1) // 2
    if d.case == "5":
        return d.k**2 + d.ell**2
    raise ArgumentError(f"case {d.case} has no normalizer factor")


# ----------------------------------------------------------- FN criterion


def _a_coefficient(X: AlgebraElement) -> float:
    return float(X.mat[1, 0].real)


def fn_split(f: Subalgebra, tol: float = 1e-10):
    """Split ``f`` inside k0 + a into a unit a-lift and a basis of f cap k0.

    Returns:
        ``(xi, kernel)`` where ``xi`` has a-coefficient 1 and ``kernel`` lists
        a basis of the elements of ``f`` with vanishing a-coefficient.
    """
    coefs = np.array([_a_coefficient(X) for X in f.basis])
    if not len(coefs) or np.abs(coefs).max() <= tol:
        raise PreconditionError("f has trivial projection onto a")
    j = int(np.argmax(np.abs(coefs)))
    xi = f.basis[j] * (1.0 / coefs[j])
    kernel = [X - xi * coefs[i] for i, X in enumerate(f.basis) if i != j]
    return xi, kernel


def fn_cohomogeneity_one(f: Subalgebra, tol: float = 1e-10) -> bool:
    """True iff every element of ``f`` cap k0 has vanishing e_0 phase rate ``y``."""
    _, kernel = fn_split(f, tol)
    return all(abs(K.mat[0, 0].imag) <= tol * max(1.0, K.norm()) for K in kernel)


def fn_c(f: Subalgebra) -> float:
    """Parameter ``c`` read off the element of ``f`` with a-coefficient 1."""
    xi, _ = fn_split(f)
    return float(xi.mat[0, 0].imag)


def f_c_plus_n(c: float, n: int) -> Subalgebra:
    gen = a_generator(n, Algebra.U) if c == 0 else x_c(c, n)
    return Subalgebra.span([gen] + list(n_subalgebra(n).basis), Algebra.U, n)


def fn_orbit_equivalence_check(f: Subalgebra, c: float, p: AdsPoint) -> bool:
    """True iff (f + n) . p and (f_c + n) . p are the same real subspace."""
    n = f.n
    fn = Subalgebra.span(list(f.retag(Algebra.U).basis) + list(n_subalgebra(n).basis), Algebra.U, n)
    return spans_equal(tangent_vectors(fn, p), tangent_vectors(f_c_plus_n(c, n), p))


# ------------------------------------------------------------ orbit models


@dataclass(frozen=True)
class OrbitModel:
    """Description of an orbit as a subset of the quadric.

    kind is one of ``affine_slice`` (AdS cap (point + V)), ``half_slice``
    (affine slice cut by ``sign(q) > 0``), ``sphere_slice`` (points of the
    quadric whose ``invariant`` equals ``value``) and ``membership_predicate``.
    """

    kind: str
    point: AdsPoint
    subspace: np.ndarray | None = None
    sign: Callable | None = None
    invariant: Callable | None = None
    value: float | None = None
    predicate: Callable | None = None

    def contains(self, q: AdsPoint, tol: float = 1e-9) -> bool:
        if q.residual() > tol:
            return False
        if self.kind in ("affine_slice", "half_slice"):
            d = q.coords - self.point.coords
            if not span_contains(self.subspace, realify(d), tol):
                return False
            if self.kind == "half_slice":
                return self.sign(q) > 0
            return True
        if self.kind == "sphere_slice":
            return abs(self.invariant(q) - self.value) <= tol * max(1.0, abs(self.value))
        return bool(self.predicate(q, tol))


def n_slice_basis(n: int) -> np.ndarray:
    """span_R{e0+e1, i(e0+e1), e2, i e2, ..., en, i en}."""
    eye = np.eye(n + 1, dtype=complex)
    rows = [eye[0] + eye[1], 1j * (eye[0] + eye[1])]
    for j in range(2, n + 1):
        rows += [eye[j], 1j * eye[j]]
    return np.array(rows)


def s_slice_basis(w: RealSubspace, n: int) -> np.ndarray:
    """span_R{e0, e1, i(e0+e1)} + w."""
    eye = np.eye(n + 1, dtype=complex)
    rows = [eye[0], eye[1], 1j * (eye[0] + eye[1])]
    rows += [np.concatenate([[0, 0], b]) for b in w.basis]
    return np.array(rows)


@dataclass(frozen=True)
class SNormalForm:
    """``p = lam (x0 e0 + nu)`` with ``x0 > 0`` and ``nu`` in w_perp."""

    lam: complex
    x0: float
    nu: np.ndarray


def s_normal_form(w: RealSubspace, p: AdsPoint, tol: float = 1e-10) -> SNormalForm:
    """Write ``p`` as ``lam (x0 e0 + nu)``; other points are outside the solver's reach."""
    z = p.coords
    if abs(z[1]) > tol or abs(z[0]) <= tol:
        raise PreconditionError("point is not of the form lam (x0 e0 + nu)")
    lam = z[0] / abs(z[0])
    nu = z[2:] / lam
    if w.dim and np.abs(w.orthonormal @ realify(nu)[0]).max() > tol * max(1.0, np.linalg.norm(nu)):
        raise PreconditionError("the g_alpha part of the point is not orthogonal to w")
    return SNormalForm(complex(lam), float(abs(z[0])), nu)


def w_perp_invariant(d: CaseDescriptor):
    """Orbit invariant for cases 4 and 5.

    The phase ``lam`` of ``q0 - q1`` is preserved by S and rotated along with
    ``q`` by the scalars, so ``|proj_{w_perp}(conj(lam) q_alpha)|`` is constant
    on orbits (the normalizer acts orthogonally on w_perp).
    """
    perp = d.w_perp()

    def inv(q: AdsPoint) -> float:
        if not perp.dim:
            return 0.0
        delta = q[0] - q[1]
        tail = np.conj(delta / abs(delta)) * q.coords[2:]
        return float(np.linalg.norm(perp.orthonormal @ realify(tail)[0]))

    return inv


def orbit_model(kind, p: AdsPoint, w: RealSubspace | None = None) -> OrbitModel:
    """Model of the orbit through ``p``.

    Args:
        kind: ``"N"``, ``"S"`` (needs ``w``) or a ``CaseDescriptor``.
        p: point of the complex model.
        w: the real subspace of C^{n-1} defining s for the S kind.
    """
    if p.model != COMPLEX:
        raise ArgumentError("U(1,n) orbit models live in the complex model")
    n = p.n
    if kind == "N":
        return OrbitModel("affine_slice", p, realify(n_slice_basis(n)))
    if kind == "S":
        if w is None:
            raise ArgumentError("S orbit model needs w")
        nf = s_normal_form(w, p)
        V = nf.lam * s_slice_basis(w, n)
        lam_bar = np.conj(nf.lam)
        return OrbitModel("half_slice", p, realify(V), sign=lambda q: float((lam_bar * q.coords[0]).real))
    if not isinstance(kind, CaseDescriptor):
        raise ArgumentError(f"unsupported orbit kind {kind!r}")
    d = kind
    if d.n != n:
        raise ArgumentError("descriptor and point have different n")
    if d.case == "1a":
        # q0 - q1 keeps its argument under A and N
        ref = np.angle(p[0] - p[1])
        return OrbitModel(
            "membership_predicate", p,
            predicate=lambda q, tol: abs(np.angle((q[0] - q[1]) * np.exp(-1j * ref))) <= tol,
        )
    if d.case == "1b":
        return OrbitModel("sphere_slice", p, invariant=lambda q: float(abs(q[0] - q[1])), value=float(abs(p[0] - p[1])))
    if d.case == "1c":
        c = d.c

        def phase(q):
            delta = q[0] - q[1]
            return np.angle(delta) + c * np.log(abs(delta))

        ref = phase(p)
        return OrbitModel(
            "membership_predicate", p,
            predicate=lambda q, tol: abs(np.angle(np.exp(1j * (phase(q) - ref)))) <= tol,
        )
    if d.case == "2":
        k = d.k

        def tail(q):
            return float(np.linalg.norm(q.coords[k + 1 :]))

        return OrbitModel("sphere_slice", p, subspace=realify(d.W()), invariant=tail, value=tail(p))
    if d.case == "3":
        eps = np.diag([-1.0] + [1.0] * n)

        def bilinear(q):
            return float(abs(q.coords @ eps @ q.coords))

        if abs(bilinear(p) - 1.0) <= 1e-12:
            # S^1 times a real vector: all pairwise phases agree
            def same_phase(q, tol):
                z = q.coords
                return bool(np.abs(np.imag(np.outer(z, z.conj()))).max() <= tol)

            return OrbitModel("membership_predicate", p, predicate=same_phase)
        return OrbitModel("sphere_slice", p, invariant=bilinear, value=bilinear(p))
    inv = w_perp_invariant(d)
    return OrbitModel("sphere_slice", p, invariant=inv, value=inv(p))


# --------------------------------------------------------- slice solvers


def solve_slice_element(kind, p: AdsPoint, q: AdsPoint, w: RealSubspace | None = None, tol: float = 1e-9):
    """Parameters of an exponential moving ``p`` to ``q`` inside one N- or S-orbit.

    Args:
        kind: ``"N"`` or ``"S"``.
        p, q: points of the complex model.
        w: subspace of C^{n-1} defining s (S kind only); ``p`` must then be
            of the form ``lam (x0 e0 + nu)`` with ``nu`` orthogonal to w.

    Returns:
        ``NParams`` or ``SParams`` with ``exp_closed(params) p = q``.

    Raises:
        UnreachableError: ``q - p`` leaves the slice.
        WrongHalfError: ``q`` lies in the opposite half of an S-slice.
    """
    n = p.n
    if kind == "N":
        d = q.coords - p.coords
        scale = max(1.0, np.abs(q.coords).max())
        if abs(d[0] - d[1]) > tol * scale or q.residual() > tol * scale:
            raise UnreachableError("q is not in the N-slice of p")
        z, wv = d[0], d[2:]
        D = p[0] - p[1]  # never zero on the quadric
        v = wv / D
        mu = float(((z - np.vdot(v, p.coords[2:])) / D).imag)
        return NParams(mu, v)
    if kind == "S":
        if w is None:
            raise ArgumentError("S solver needs w")
        nf = s_normal_form(w, p)
        d = q.coords / nf.lam - np.concatenate([[nf.x0, 0], nf.nu])
        scale = max(1.0, np.abs(q.coords).max())
        b = d[0].imag
        if abs(d[1].imag - b) > tol * scale or q.residual() > tol * scale:
            raise UnreachableError("q is not in the S-slice of p")
        wprime = d[2:]
        inside = w.contains(wprime, tol) if w.dim else np.abs(wprime).max() <= tol * scale
        if not inside:
            raise UnreachableError("g_alpha part of q - p leaves w")
        y0, y1 = d[0].real, d[1].real
        ratio = (nf.x0 + y0 - y1) / nf.x0
        if ratio <= 0:
            raise WrongHalfError("q lies in the opposite half-slice")
        x = -math.log(ratio)
        zeta = wprime / (nf.x0 * one_m_expneg_over_x(x))
        beta = float(np.vdot(zeta, nf.nu).imag)
        mu = (b - beta * expm1_over_x(x)) / (nf.x0 * sinhc(x))
        return SParams(x, mu, zeta)
    raise ArgumentError(f"unknown slice kind {kind!r}")


def s_slice_point(w: RealSubspace, p: AdsPoint, y1: float, b: float, wprime, sign: float = 1.0) -> AdsPoint:
    """Point ``lam((x0 + y0) e0 + y1 e1 + i b (e0+e1) + w' + nu)`` on the quadric.

    ``y0`` is fixed by the quadric; ``sign = -1`` picks the opposite half.
    """
    nf = s_normal_form(w, p)
    wprime = np.asarray(wprime, dtype=complex)
    a0 = sign * math.sqrt(nf.x0**2 + y1**2 + float(np.vdot(wprime, wprime).real))
    body = np.concatenate([[a0 + 1j * b, y1 + 1j * b], wprime + nf.nu])
    return AdsPoint(nf.lam * body, COMPLEX, p.n)


def n_slice_point(p: AdsPoint, z_imag: float, wv) -> AdsPoint:
    """Point ``p + z (e0+e1) + w`` of the N-slice; Re z is fixed by the quadric."""
    wv = np.asarray(wv, dtype=complex)
    # <q,q> = -1 is linear in Re z once Im z and w are fixed
    base = p.coords + np.concatenate([[1j * z_imag, 1j * z_imag], wv])
    e = np.zeros(p.n + 1, dtype=complex)
    e[0] = e[1] = 1
    lin = 2 * form(base, e, COMPLEX)
    rest = form(base, base, COMPLEX) + 1
    if abs(lin) < 1e-14:
        raise UnreachableError("degenerate N-slice direction")
    t = -rest / lin
    return AdsPoint(base + t * e, COMPLEX, p.n)
