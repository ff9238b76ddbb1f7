"""The Moebius group of the disc and its Lie algebra.

Group elements are stored as 2x2 complex matrices of determinant one
acting on the disc by fractional-linear maps.  Elements of SU(1,1) (the
realization of the biholomorphism group used throughout) are recognised
by the `is_unitary_disc` predicate.  The Lie algebra carries two bases:
the real one X0, X1, Y spanning su(1,1), and the complex triangular
basis h, x, y with

    h = diag(1/2, -1/2),   x = [[0, 1], [0, 0]],   y = [[0, 0], [1, 0]],

related by h = -i*X0, x = X1 + i*Y, y = X1 - i*Y.  Matrix exponentials
of real spans are evaluated in closed form (every traceless 2x2 matrix M
satisfies M^2 = -det(M) I, so exp(tM) is a two-term expression).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import PoleError

_DET_TOL = 1e-12
_POLE_EPS = 1e-14


@dataclass(frozen=True)
class GroupElement:
    """Matrix [[a, b], [c, d]] with ad - bc = 1, acting by z -> (az+b)/(cz+d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > _DET_TOL:
            raise ValueError(f"determinant {det} deviates from 1 beyond {_DET_TOL}")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, theta: float) -> "GroupElement":
        """diag(e^{i theta/2}, e^{-i theta/2}); acts as z -> e^{i theta} z."""
        ph = cmath.exp(0.5j * theta)
        return cls(ph, 0.0, 0.0, 1.0 / ph)

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "GroupElement":
        return cls(complex(mat[0, 0]), complex(mat[0, 1]), complex(mat[1, 0]), complex(mat[1, 1]))

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def is_unitary_disc(self, tol: float = 1e-12) -> bool:
        """True for the SU(1,1) form: d = conj(a), c = conj(b), |a|^2 - |b|^2 = 1."""
        return (
            abs(self.d - self.a.conjugate()) <= tol
            and abs(self.c - self.b.conjugate()) <= tol
            and abs(abs(self.a) ** 2 - abs(self.b) ** 2 - 1.0) <= tol
        )


def act(g: GroupElement, z: complex) -> complex:
    """Fractional-linear action (az + b)/(cz + d)."""
    den = g.c * z + g.d
    if abs(den) < _POLE_EPS:
        raise PoleError(f"c*z + d = {den} at z = {z}")
    return (g.a * z + g.b) / den


def derivative(g: GroupElement, z: complex) -> complex:
    """g'(z) = (cz + d)^(-2), using det = 1."""
    den = g.c * z + g.d
    if abs(den) < _POLE_EPS:
        raise PoleError(f"c*z + d = {den} at z = {z}")
    return 1.0 / (den * den)


@dataclass(frozen=True)
class LieAlgebraElement:
    """Coefficients over the complex basis: c_h * h + c_x * x + c_y * y."""

    c_h: complex = 0.0
    c_x: complex = 0.0
    c_y: complex = 0.0

    def matrix(self) -> np.ndarray:
        return np.array(
            [[0.5 * self.c_h, self.c_x], [self.c_y, -0.5 * self.c_h]], dtype=complex
        )


# Complex triangular basis.
H = LieAlgebraElement(c_h=1.0)
X = LieAlgebraElement(c_x=1.0)
Y_LOWER = LieAlgebraElement(c_y=1.0)

# Real basis of su(1,1): X0 spans the rotation subalgebra, X1 and Y the rest.
X0 = LieAlgebraElement(c_h=1j)
X1 = LieAlgebraElement(c_x=0.5, c_y=0.5)
Y = LieAlgebraElement(c_x=-0.5j, c_y=0.5j)


def exp_basis(elem: LieAlgebraElement, t: float) -> GroupElement:
    """Closed-form exp(t * elem) for any span of h, x, y.

    For traceless M, M^2 = -det(M) I, hence with delta = sqrt(-det M):
    exp(tM) = cosh(t*delta) I + sinh(t*delta)/delta * M (nilpotent limit
    I + tM when delta = 0).
    """
    mat = elem.matrix()
    negdet = mat[0, 0] * mat[0, 0] + mat[0, 1] * mat[1, 0]  # -det for traceless M
    delta = cmath.sqrt(negdet)
    if abs(delta) < 1e-30:
        out = np.eye(2, dtype=complex) + t * mat
    else:
        out = cmath.cosh(t * delta) * np.eye(2, dtype=complex) + (
            cmath.sinh(t * delta) / delta
        ) * mat
    return GroupElement.from_matrix(out)


def infinitesimal_action(elem: LieAlgebraElement) -> tuple[complex, complex, complex]:
    """Vector-field coefficients (c0, c1, c2) of d/dt exp(t*elem).z at t=0.

    For M = [[alpha, beta], [gamma, -alpha]] the field is
    beta + 2*alpha*z - gamma*z^2; in particular x -> 1, h -> z, y -> -z^2.
    """
    mat = elem.matrix()
    return (complex(mat[0, 1]), 2.0 * complex(mat[0, 0]), -complex(mat[1, 0]))


def eval_vector_field(coeffs: tuple[complex, complex, complex], z: complex) -> complex:
    c0, c1, c2 = coeffs
    return c0 + c1 * z + c2 * z * z
