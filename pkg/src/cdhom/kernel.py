"""Matrix-valued reproducing kernels and their verification checks.

The kernel of the (lam, m, mu) family is the sum K = sum_j mu_j^2 K_j
with K_j = D_j Btilde^(lam_j) D_j, where Btilde^(lam_j) collects the
mixed derivatives del^(l-j) delbar^(p-j) (1 - z*conj(w))^(-2*lam_j) in
rows/columns j..m and D_j is an explicit diagonal.  Each derivative
entry is evaluated through its finite Leibniz closed form

    del^a delbar^b (1-s)^(-beta) =
        (beta)_b * sum_i C(a,i) (b-i+1)_i (beta+b)_{a-i}
                   z^(b-i) conj(w)^(a-i) (1-s)^(-(beta+a+b-i)),

with s = z*conj(w), not through a series.  The independent oracle
kernel_series sums the orthonormal-basis outer products instead and goes
through the ladder closed form, so the two routes share no code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import e_basis
from .errors import DomainError, NormalizationError, SingularKernelColumnError
from .mobius import GroupElement, act
from .representation import ModelParams, TriangularRep, multiplier_J
from .scalars import binom, cpow_principal, pochhammer

DEFAULT_RADII = (0.15, 0.3, 0.45)
DEFAULT_ANGLE_COUNT = 4
DEFAULT_ANGLE_OFFSET = 0.4
DEFAULT_TRUNCATION = 60


@dataclass(frozen=True)
class SampleGrid:
    """A finite set of pairwise-distinct disc points used by grid checks."""

    points: tuple[complex, ...]
    r_max: float = 0.5

    def __post_init__(self):
        if not self.points:
            raise ValueError("grid must contain at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("grid points must be pairwise distinct")
        if any(abs(z) > self.r_max for z in self.points):
            raise ValueError(f"grid point outside radius {self.r_max}")
        if not self.r_max < 1.0:
            raise ValueError("r_max must be < 1")


def default_grid(r_max: float = 0.5) -> SampleGrid:
    """12 points: radii (0.15, 0.3, 0.45) times 4 angles, offset to avoid axes."""
    pts = []
    for r in DEFAULT_RADII:
        for k in range(DEFAULT_ANGLE_COUNT):
            theta = DEFAULT_ANGLE_OFFSET + 2.0 * math.pi * k / DEFAULT_ANGLE_COUNT
            pts.append(r * complex(math.cos(theta), math.sin(theta)))
    return SampleGrid(points=tuple(pts), r_max=r_max)


def _require_disc(*points: complex):
    for z in points:
        if abs(z) >= 1.0:
            raise DomainError(f"|z| = {abs(z)} is not inside the open unit disc")


def _deriv_power_entry(a: int, b: int, beta: float, z: complex, w: complex) -> complex:
    """del^a delbar^b (1 - z*conj(w))^(-beta) via the Leibniz closed form."""
    wbar = w.conjugate()
    s = 1.0 - z * wbar
    total = 0.0 + 0.0j
    for i in range(min(a, b) + 1):
        coeff = (
            binom(a, i)
            * pochhammer(b - i + 1.0, i)
            * pochhammer(beta + b, a - i)
        )
        total += coeff * z ** (b - i) * wbar ** (a - i) * cpow_principal(s, -(beta + a + b - i))
    return pochhammer(beta, b) * total


def kernel_Bj_closed(j: int, z: complex, w: complex, params: ModelParams) -> np.ndarray:
    """Derivative block Btilde^(lam_j)(z, w) embedded at rows/cols j..m."""
    _require_disc(z, w)
    m = params.m
    if not 0 <= j <= m:
        raise ValueError(f"j must lie in 0..{m}, got {j}")
    beta = 2.0 * params.lambda_j(j)
    out = np.zeros((m + 1, m + 1), dtype=complex)
    for ell in range(j, m + 1):
        for p in range(j, m + 1):
            out[ell, p] = _deriv_power_entry(ell - j, p - j, beta, z, w)
    return out


def d_j_diagonal(j: int, params: ModelParams) -> np.ndarray:
    """Diagonal D_j with 1/(2*lam_j)_{l-j} * (j+1)_{l-j}/(1)_{l-j} at (l, l), l >= j."""
    m = params.m
    if not 0 <= j <= m:
        raise ValueError(f"j must lie in 0..{m}, got {j}")
    out = np.zeros((m + 1, m + 1))
    beta = 2.0 * params.lambda_j(j)
    for ell in range(j, m + 1):
        k = ell - j
        den = pochhammer(beta, k)
        if den == 0.0:
            raise NormalizationError(
                f"(2*lam_{j})_{k} = 0: diagonal D_{j} degenerates (2*lam = {2 * params.lam}, m = {m})"
            )
        out[ell, ell] = (1.0 / den) * pochhammer(j + 1.0, k) / pochhammer(1.0, k)
    return out


def kernel_Kj(j: int, z: complex, w: complex, params: ModelParams) -> np.ndarray:
    """Summand kernel K_j(z, w) = D_j Btilde^(lam_j)(z, w) D_j."""
    dj = d_j_diagonal(j, params)
    return dj @ kernel_Bj_closed(j, z, w, params) @ dj


def kernel_full(z: complex, w: complex, params: ModelParams) -> np.ndarray:
    """The reproducing kernel K(z, w) = sum_j mu_j^2 K_j(z, w)."""
    _require_disc(z, w)
    out = np.zeros((params.m + 1, params.m + 1), dtype=complex)
    for j in range(params.m + 1):
        out += params.mu[j] ** 2 * kernel_Kj(j, z, w, params)
    return out


def kernel_series(z: complex, w: complex, params: ModelParams, n_trunc: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """Truncated basis series sum_{n<=N} sum_j mu_j^2 e^j_{n-j}(z) e^j_{n-j}(w)^*.

    This is the independent oracle for kernel_full: it goes through the
    ladder closed form and the normalizing constants, not through the
    derivative formula.
    """
    _require_disc(z, w)
    m = params.m
    out = np.zeros((m + 1, m + 1), dtype=complex)
    for n in range(n_trunc + 1):
        for j in range(min(n, m) + 1):
            vec = e_basis(j, n, params)
            out += params.mu[j] ** 2 * np.outer(vec(z), vec(w).conjugate())
    return out


@dataclass(frozen=True)
class PositiveDefiniteReport:
    """Minimum eigenvalue of the block Gram matrix over a grid."""

    min_eigenvalue: float
    gram_size: int
    tolerance: float
    passed: bool


def check_positive_definite(
    params: ModelParams, grid: SampleGrid, tolerance: float = -1e-10
) -> PositiveDefiniteReport:
    """Assemble the Hermitian block Gram matrix [K(z_i, z_k)] and test its spectrum."""
    pts = grid.points
    m = params.m
    size = len(pts) * (m + 1)
    gram = np.zeros((size, size), dtype=complex)
    for i, zi in enumerate(pts):
        for k, zk in enumerate(pts):
            if k < i:
                continue
            block = kernel_full(zi, zk, params)
            gram[i * (m + 1): (i + 1) * (m + 1), k * (m + 1): (k + 1) * (m + 1)] = block
            if k > i:
                gram[k * (m + 1): (k + 1) * (m + 1), i * (m + 1): (i + 1) * (m + 1)] = block.conj().T
    eigs = np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))
    min_eig = float(eigs[0])
    return PositiveDefiniteReport(
        min_eigenvalue=min_eig, gram_size=size, tolerance=tolerance, passed=min_eig >= tolerance
    )


def check_quasi_invariance(
    g: GroupElement, grid: SampleGrid, params: ModelParams, rep: TriangularRep
) -> float:
    """Max over grid pairs of || J_g(z) K(g.z, g.w) J_g(w)^* - K(z, w) ||_F."""
    pts = grid.points
    jz = {z: multiplier_J(g, z, params, rep) for z in pts}
    worst = 0.0
    for z in pts:
        for w in pts:
            lhs = jz[z] @ kernel_full(act(g, z), act(g, w), params) @ jz[w].conj().T
            worst = max(worst, float(np.linalg.norm(lhs - kernel_full(z, w, params))))
    return worst


def _hermitian_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(0.5 * (mat + mat.conj().T))
    if vals[0] <= 0:
        raise NormalizationError(f"matrix square root needs a positive matrix, min eig {vals[0]}")
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


@dataclass(frozen=True)
class NormalizationReport:
    """Constancy check of the normalized kernel along the second slot at 0."""

    residual: float
    phi0: np.ndarray = field(repr=False)


def normalize_kernel(params: ModelParams, grid: SampleGrid | None = None) -> NormalizationReport:
    """Build phi(z) = K(0,0)^(1/2) K(z,0)^(-1) and verify the normalization.

    The transformed kernel Ktilde(z, w) = phi(z) K(z, w) phi(w)^* has
    Ktilde(z, 0) constant in z; the report carries the max deviation of
    phi(z) K(z, 0) phi(0)^* from its value at z = 0 over the grid, along
    with phi(0) = K(0,0)^(-1/2).
    """
    if grid is None:
        grid = default_grid()
    k00 = kernel_full(0.0, 0.0, params)
    root = _hermitian_sqrt(k00)
    phi0 = root @ np.linalg.inv(k00)

    def phi(z: complex) -> np.ndarray:
        kz0 = kernel_full(z, 0.0, params)
        if np.linalg.cond(kz0) > 1e13:
            raise SingularKernelColumnError(f"K(z, 0) numerically singular at z = {z}")
        return root @ np.linalg.inv(kz0)

    constant = phi0 @ k00 @ phi0.conj().T
    residual = 0.0
    for z in grid.points:
        val = phi(z) @ kernel_full(z, 0.0, params) @ phi0.conj().T
        residual = max(residual, float(np.linalg.norm(val - constant)))
    return NormalizationReport(residual=residual, phi0=phi0)
