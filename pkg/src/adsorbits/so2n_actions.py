"""SO^0(2,n) acting on AdS^{n+1}: elements of n, N-orbit slices, leaves, parabolics.

Ambient coordinates are ``p_1, ..., p_{n+2}`` with ``p_1, p_2`` timelike; in
code the index ``p_i`` is ``coords[i - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, DegeneratePointError, UnreachableError
from .indefinite_linear import REAL, AdsPoint
from .lie_core import Algebra, AlgebraElement, GroupElement, Subalgebra
from .roots import SO_POSITIVE, closed_form_k0, closed_form_root_space, flat_so, nilpotency_degree
from .su1n_actions import OrbitModel

ALPHA1 = (1, 0)
ALPHA2 = (0, 1)
SIMPLE = (ALPHA1, ALPHA2)
SO_ROOTS = SO_POSITIVE + tuple((-a, -b) for a, b in SO_POSITIVE)


@dataclass(frozen=True)
class NElement:
    """Coordinates ``(a, b, v, w)`` of an element of n.

    ``a`` spans g_{alpha1+2alpha2}, ``b`` spans g_{alpha1}, ``v`` runs over
    g_{alpha2} and ``w`` over g_{alpha1+alpha2}.
    """

    a: float
    b: float
    v: np.ndarray = field(default_factory=lambda: np.zeros(0))
    w: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float).reshape(-1)
        w = np.asarray(self.w, dtype=float).reshape(-1)
        if v.size == 0 and w.size:
            v = np.zeros_like(w)
        if w.size == 0 and v.size:
            w = np.zeros_like(v)
        if v.shape != w.shape:
            raise ArgumentError("v and w must have the same length")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    def vectors(self, n: int):
        v, w = self.v, self.w
        if v.size == 0:
            v = w = np.zeros(n - 2)
        if v.shape != (n - 2,):
            raise ArgumentError(f"v and w must have length n-2 = {n - 2}")
        return v, w

    def element(self, n: int) -> AlgebraElement:
        return n_element(self.a, self.b, *self.vectors(n), n)


def singular(a: float, v) -> NElement:
    """Element with ``b = 0`` and ``w = 0``."""
    v = np.asarray(v, dtype=float)
    return NElement(a, 0.0, v, np.zeros_like(v))


def principal(a: float, b: float, w) -> NElement:
    """Element with ``v = 0``."""
    w = np.asarray(w, dtype=float)
    return NElement(a, b, np.zeros_like(w), w)


def n_element(a: float, b: float, v, w, n: int) -> AlgebraElement:
    """The element of n with coordinates ``(a, b, v, w)``.

    Args:
        a, b: real coefficients.
        v, w: vectors of length ``n - 2``.
        n: size parameter of so(2,n).
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    w = np.asarray(w, dtype=float).reshape(-1)
    if v.shape != (n - 2,) or w.shape != (n - 2,):
        raise ArgumentError(f"v and w must have length n-2 = {n - 2}")
    m = np.zeros((n + 2, n + 2))
    m[0, :4] = [0, b + a, 0, -b - a]
    m[1, :4] = [-b - a, 0, -b + a, 0]
    m[2, :4] = [0, -b + a, 0, b - a]
    m[3, :4] = [-b - a, 0, -b + a, 0]
    m[0, 4:] = m[2, 4:] = v
    m[1, 4:] = m[3, 4:] = w
    m[4:, 0], m[4:, 1], m[4:, 2], m[4:, 3] = v, w, -v, -w
    return AlgebraElement(m, Algebra.SO, n)


def exp_n_closed(X: NElement, n: int) -> GroupElement:
    """Closed-form exponential for the singular (b = w = 0) or principal (v = 0) shape."""
    v, w = X.vectors(n)
    a, b = X.a, X.b
    g = np.eye(n + 2)
    if b == 0 and not w.any():
        h = 0.5 * v @ v
        g[0, :4] = [1 + h, a, -h, -a]
        g[1, :4] = [-a, 1, a, 0]
        g[2, :4] = [h, a, 1 - h, -a]
        g[3, :4] = [-a, 0, a, 1]
        g[0, 4:] = g[2, 4:] = v
        g[4:, 0], g[4:, 2] = v, -v
        return GroupElement(g, Algebra.SO, n)
    if not v.any():
        h = 0.5 * w @ w
        ab = 2 * a * b
        g[0, :4] = [1, a + b, 0, -a - b]
        g[1, :4] = [-a - b, 1 - ab + h, a - b, ab - h]
        g[2, :4] = [0, a - b, 1, -a + b]
        g[3, :4] = [-a - b, -ab + h, a - b, 1 + ab - h]
        g[1, 4:] = g[3, 4:] = w
        g[4:, 1], g[4:, 3] = w, -w
        return GroupElement(g, Algebra.SO, n)
    raise ArgumentError("closed form needs b = w = 0 or v = 0")


# ------------------------------------------------------------------ orbits


@dataclass(frozen=True)
class NOrbitModel:
    """Slice model of an N-orbit with its invariants.

    Attributes:
        model: affine slice through the point.
        principal: whether p_2 != p_4.
        r: p_2 - p_4.
        s: p_1 - p_3.
        expected_dim: n for principal orbits, n - 1 for singular ones.
    """

    model: OrbitModel
    principal: bool
    r: float
    s: float
    expected_dim: int

    def contains(self, q: AdsPoint, tol: float = 1e-9) -> bool:
        return self.model.contains(q, tol)


def slice_subspace(n: int, principal: bool) -> np.ndarray:
    """Basis of {x_2 = x_4} (principal) or {x_1 = x_3, x_2 = x_4} (singular)."""
    eye = np.eye(n + 2)
    rows = [eye[1] + eye[3]] + [eye[j] for j in range(4, n + 2)]
    if principal:
        rows += [eye[0], eye[2]]
    else:
        rows += [eye[0] + eye[2]]
    return np.array(rows)


def n_orbit_model(p: AdsPoint, tol: float = 1e-12) -> NOrbitModel:
    if p.model != REAL:
        raise ArgumentError("N-orbits of SO(2,n) live in the real model")
    r = float(p[1] - p[3])
    s = float(p[0] - p[2])
    is_principal = abs(r) > tol
    V = slice_subspace(p.n, is_principal)
    return NOrbitModel(OrbitModel("affine_slice", p, V), is_principal, r, s, p.n if is_principal else p.n - 1)


def solve_n_element_so(p: AdsPoint, q: AdsPoint, tol: float = 1e-9) -> NElement:
    """Element X of n with ``exp(X) p = q`` for ``q`` in the N-orbit of ``p``.

    Raises:
        UnreachableError: ``q - p`` leaves the slice.
        DegeneratePointError: ``p_2 = p_4`` and ``p_1 = p_3`` together.
    """
    n = p.n
    d = q.coords - p.coords
    r = p[1] - p[3]
    s = p[0] - p[2]
    scale = max(1.0, np.abs(q.coords).max())
    if abs(r) <= 1e-12 and abs(s) <= 1e-12:
        raise DegeneratePointError("p_2 = p_4 and p_1 = p_3: not a point of AdS")
    if abs(d[1] - d[3]) > tol * scale:
        raise UnreachableError("q_2 - q_4 differs from p_2 - p_4")
    if abs(r) > 1e-12:
        a = ((d[0] + d[2])) / (2 * r)
        b = ((d[0] - d[2])) / (2 * r)
        return principal(a, b, d[4:] / r)
    if abs(d[0] - d[2]) > tol * scale:
        raise UnreachableError("q_1 - q_3 differs from p_1 - p_3 on the singular locus")
    return singular((p[1] - q[1]) / s, d[4:] / s)


# ------------------------------------------------------------------ leaves

GROUPS = ("N", "A1N", "AN", "Q0", "Q1", "Q2")


@dataclass(frozen=True)
class LeafId:
    """Label of the leaf of a group's orbit foliation through a point.

    ``label`` is one of principal, principal_plus, principal_minus, singular,
    singular_plus, singular_minus, all; ``value`` carries r or s for the
    N-labels principal(r), singular(s) and principal(r) of A1N.
    """

    group: str
    label: str
    value: float | None = None

    def same_leaf(self, other: "LeafId", tol: float = 1e-9) -> bool:
        if (self.group, self.label) != (other.group, other.label):
            return False
        if self.value is None or other.value is None:
            return self.value is other.value
        return abs(self.value - other.value) <= tol * max(1.0, abs(self.value))


def _sign_label(kind, x):
    return f"{kind}_plus" if x > 0 else f"{kind}_minus"


def leaf_id(group: str, p: AdsPoint, tol: float = 1e-12) -> LeafId:
    """Leaf through ``p`` for N, A1N = R H_{1,0} + n, AN, Q0, Q1 or Q2.

    Raises:
        DegeneratePointError: both ``p_2 - p_4`` and ``p_1 - p_3`` vanish.
    """
    if group not in GROUPS:
        raise ArgumentError(f"unknown group {group!r}; expected one of {GROUPS}")
    if group == "Q2":
        return LeafId(group, "all")
    r = float(p[1] - p[3])
    s = float(p[0] - p[2])
    if abs(r) <= tol and abs(s) <= tol:
        raise DegeneratePointError("p_2 = p_4 and p_1 = p_3")
    if abs(r) > tol:
        if group in ("N", "A1N"):
            return LeafId(group, "principal", r)
        return LeafId(group, _sign_label("principal", r))
    if group == "N":
        return LeafId(group, "singular", s)
    return LeafId(group, _sign_label("singular", s))


# -------------------------------------------------------------- subalgebras


def root_space(root, n: int) -> list[AlgebraElement]:
    return closed_form_root_space(Algebra.SO, n, tuple(root))


def n_subalgebra(n: int) -> Subalgebra:
    return Subalgebra.span([X for r in SO_POSITIVE for X in root_space(r, n)], Algebra.SO, n)


def a_subalgebra(n: int) -> Subalgebra:
    return Subalgebra.span([flat_so(1, 0, n), flat_so(0, 1, n)], Algebra.SO, n)


def line_plus_n(a: float, b: float, n: int) -> Subalgebra:
    """``R H_{a,b} + n``."""
    return Subalgebra.span([flat_so(a, b, n)] + list(n_subalgebra(n).basis), Algebra.SO, n)


def group_subalgebra(group: str, n: int) -> Subalgebra:
    """Lie algebra of N, A1N, AN, Q0, Q1 or Q2."""
    if group == "N":
        return n_subalgebra(n)
    if group == "A1N":
        return line_plus_n(1.0, 0.0, n)
    if group == "AN":
        return a_subalgebra(n).direct_sum(n_subalgebra(n))
    phi = {"Q0": (), "Q1": (ALPHA2,), "Q2": (ALPHA1,)}.get(group)
    if phi is None:
        raise ArgumentError(f"unknown group {group!r}")
    return parabolic(phi, n).q


@dataclass(frozen=True)
class LanglandsDecomposition:
    """``q = l + n`` for a proper subset ``phi`` of the simple roots."""

    phi: tuple
    l: Subalgebra
    n_part: Subalgebra
    q: Subalgebra
    sigma_phi: tuple
    nil_roots: tuple


def _generated_roots(phi):
    """Roots in the integer span of ``phi`` (rank two, so a coordinate test suffices)."""
    idx = [SIMPLE.index(a) for a in phi]
    return tuple(r for r in SO_ROOTS if all(c == 0 for i, c in enumerate(r) if i not in idx))


def parabolic(phi, n: int) -> LanglandsDecomposition:
    """Parabolic subalgebra of so(2,n) for a proper subset of {alpha1, alpha2}.

    Args:
        phi: iterable of simple roots given as (1, 0) = alpha1, (0, 1) = alpha2.
        n: size parameter, n >= 3.
    """
    phi = tuple(sorted({tuple(a) for a in phi}))
    if any(a not in SIMPLE for a in phi):
        raise ArgumentError(f"{phi} is not a set of simple roots")
    if len(phi) == len(SIMPLE):
        raise ArgumentError("phi must be a proper subset of the simple roots")
    sigma = _generated_roots(phi)
    nil_roots = tuple(r for r in SO_POSITIVE if r not in sigma)
    g0 = list(closed_form_k0(Algebra.SO, n)) + list(a_subalgebra(n).basis)
    l_els = g0 + [X for r in sigma for X in root_space(r, n)]
    n_els = [X for r in nil_roots for X in root_space(r, n)]
    l = Subalgebra.span(l_els, Algebra.SO, n)
    nil = Subalgebra.span(n_els, Algebra.SO, n)
    return LanglandsDecomposition(phi, l, nil, l.direct_sum(nil), sigma, nil_roots)


def n_phi_nilpotency(phi, n: int) -> int:
    return nilpotency_degree(parabolic(phi, n).n_part)
