"""Minkowski four-vectors and the proper orthochronous Lorentz group.

Signature convention is (+, -, -, -): the pairing of a = (a0, a_s) and
b = (b0, b_s) is a0*b0 - a_s.b_s. The open forward cone V consists of the
x with x0 > |x_s|; the causal semigroup pairs translations from the closure
of V with proper orthochronous Lorentz matrices.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "FourVector", "CausalClass", "LorentzTransform", "PoincareElement",
    "minkowski_product", "causal_class", "in_light_cone",
    "decompose_translation", "kappa_split", "lightlike_boost",
    "in_semigroup", "ETA",
]

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


class FourVector:
    """Immutable spacetime vector (x0, x1, x2, x3)."""

    __slots__ = ("_a",)

    def __init__(self, x0, x1=0.0, x2=0.0, x3=0.0):
        a = np.array([x0, x1, x2, x3], dtype=float)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def from_array(cls, arr) -> "FourVector":
        arr = np.asarray(arr, dtype=float).reshape(4)
        return cls(arr[0], arr[1], arr[2], arr[3])

    @classmethod
    def from_parts(cls, x0: float, xs) -> "FourVector":
        xs = np.asarray(xs, dtype=float).reshape(3)
        return cls(x0, xs[0], xs[1], xs[2])

    @property
    def x0(self) -> float:
        return float(self._a[0])

    @property
    def xs(self) -> np.ndarray:
        return self._a[1:]

    @property
    def components(self) -> np.ndarray:
        return self._a

    def square(self) -> float:
        """Minkowski square x.x (positive for timelike x)."""
        return minkowski_product(self, self)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self._a + other._a)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self._a - other._a)

    def __neg__(self) -> "FourVector":
        return FourVector.from_array(-self._a)

    def __mul__(self, c: float) -> "FourVector":
        return FourVector.from_array(self._a * float(c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FourVector) and bool(
            np.array_equal(self._a, other._a))

    def approx_eq(self, other: "FourVector", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._a - other._a)) <= tol)

    def __repr__(self) -> str:
        return "FourVector({}, {}, {}, {})".format(*self._a)


def minkowski_product(a: FourVector, b: FourVector) -> float:
    """Lorentz pairing a0*b0 - a_s.b_s."""
    return float(a.x0 * b.x0 - a.xs @ b.xs)


class CausalClass(enum.Enum):
    TIMELIKE_FUTURE = "timelike-future"
    TIMELIKE_PAST = "timelike-past"
    LIGHTLIKE_FUTURE = "lightlike-future"
    LIGHTLIKE_PAST = "lightlike-past"
    SPACELIKE = "spacelike"
    ZERO = "zero"


def causal_class(x: FourVector,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> CausalClass:
    """Classify x by the signs of its Minkowski square and time component."""
    eps = tol.linear_identity
    if np.max(np.abs(x.components)) <= eps:
        return CausalClass.ZERO
    q = x.square()
    if abs(q) <= eps:
        return (CausalClass.LIGHTLIKE_FUTURE if x.x0 > 0
                else CausalClass.LIGHTLIKE_PAST)
    if q > 0:
        return (CausalClass.TIMELIKE_FUTURE if x.x0 > 0
                else CausalClass.TIMELIKE_PAST)
    return CausalClass.SPACELIKE


def in_light_cone(x: FourVector) -> bool:
    """Strict membership in the open forward cone: x0 > |x_s|."""
    return x.x0 > float(np.linalg.norm(x.xs))


class LorentzTransform:
    """Proper orthochronous Lorentz matrix, validated at construction."""

    __slots__ = ("_m",)

    def __init__(self, matrix, *, tol: Tolerances = DEFAULT_TOLERANCES,
                 _skip_check: bool = False):
        m = np.array(matrix, dtype=float).reshape(4, 4)
        if not _skip_check:
            _check_proper_orthochronous(m, tol)
        m.flags.writeable = False
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @classmethod
    def identity(cls) -> "LorentzTransform":
        return cls(np.eye(4), _skip_check=True)

    @classmethod
    def boost(cls, direction, rapidity: float) -> "LorentzTransform":
        """Pure boost along a spatial unit vector with the given rapidity."""
        n = np.asarray(direction, dtype=float).reshape(3)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise ValueError("boost direction must be nonzero")
        n = n / norm
        ch, sh = math.cosh(rapidity), math.sinh(rapidity)
        m = np.eye(4)
        m[0, 0] = ch
        m[0, 1:] = sh * n
        m[1:, 0] = sh * n
        m[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(n, n)
        return cls(m, _skip_check=True)

    @classmethod
    def rotation(cls, axis, angle: float) -> "LorentzTransform":
        """Spatial rotation about an axis (Rodrigues form)."""
        n = np.asarray(axis, dtype=float).reshape(3)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise ValueError("rotation axis must be nonzero")
        n = n / norm
        k = np.array([[0.0, -n[2], n[1]],
                      [n[2], 0.0, -n[0]],
                      [-n[1], n[0], 0.0]])
        r = np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)
        m = np.eye(4)
        m[1:, 1:] = r
        return cls(m, _skip_check=True)

    @classmethod
    def from_matrix(cls, matrix,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> "LorentzTransform":
        return cls(matrix, tol=tol)

    def verify(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        try:
            _check_proper_orthochronous(np.array(self._m), tol)
        except ValueError:
            return False
        return True

    def inverse(self) -> "LorentzTransform":
        # eta m^T eta inverts any eta-orthogonal matrix without solving
        return LorentzTransform(ETA @ self._m.T @ ETA, _skip_check=True)

    def __matmul__(self, other: "LorentzTransform") -> "LorentzTransform":
        return LorentzTransform(self._m @ other._m, _skip_check=True)

    def apply(self, x: FourVector) -> FourVector:
        return FourVector.from_array(self._m @ x.components)

    def __repr__(self) -> str:
        return f"LorentzTransform({self._m.tolist()})"


def _check_proper_orthochronous(m: np.ndarray, tol: Tolerances) -> None:
    gram = m.T @ ETA @ m
    if np.max(np.abs(gram - ETA)) > tol.matrix_identity:
        raise ValueError("matrix does not preserve the Minkowski form")
    if m[0, 0] < 1.0 - tol.matrix_identity:
        raise ValueError("matrix is not orthochronous")
    if abs(np.linalg.det(m) - 1.0) > tol.matrix_identity:
        raise ValueError("matrix is not proper (det != +1)")


@dataclass(frozen=True)
class PoincareElement:
    """Pair (translation, Lorentz part) acting as x -> L x + t."""

    translation: FourVector
    lorentz: LorentzTransform

    def apply(self, x: FourVector) -> FourVector:
        return self.lorentz.apply(x) + self.translation

    def compose(self, other: "PoincareElement") -> "PoincareElement":
        return PoincareElement(
            self.translation + self.lorentz.apply(other.translation),
            self.lorentz @ other.lorentz)


def in_semigroup(g: PoincareElement,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether g translates into the closed forward cone with a valid
    proper orthochronous Lorentz part."""
    t = g.translation
    eps = tol.linear_identity
    closed_future = t.x0 >= float(np.linalg.norm(t.xs)) - eps
    return closed_future and g.lorentz.verify(tol)


def decompose_translation(z: FourVector) -> tuple[FourVector, FourVector]:
    """Split an arbitrary translation as z = x - y with x, y in the closed
    forward cone.

    The canonical choice takes x = (|z_s| + max(z0, 0), z_s); the remainder
    y = x - z is then a pure non-negative time translation.
    """
    zs = z.xs
    x0 = float(np.linalg.norm(zs)) + max(z.x0, 0.0)
    x = FourVector.from_parts(x0, zs)
    y = x - z
    return x, y


def kappa_split(x: FourVector) -> tuple[FourVector, float]:
    """Split x into a future lightlike part plus kappa times (1, 0, 0, 0).

    kappa = x0 - |x_s| measures how far x sits above (or below) the forward
    light cone boundary; the remainder (|x_s|, x_s) is lightlike and future
    pointing (or zero).
    """
    r = float(np.linalg.norm(x.xs))
    kappa = x.x0 - r
    return FourVector.from_parts(r, x.xs), kappa


def lightlike_boost(l: FourVector, beta: float,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> LorentzTransform:
    """Boost scaling the lightlike ray l = (1, n) by 1/beta.

    The returned transform maps l to l/beta and the reflected ray
    l' = (1, -n) to beta*l'. Requires beta >= 1, so the named ray is
    contracted.
    """
    eps = tol.linear_identity
    n = l.xs
    if abs(l.x0 - 1.0) > eps or abs(np.linalg.norm(n) - 1.0) > eps:
        raise ValueError("expected a normalized lightlike ray (1, n), |n| = 1")
    if beta < 1.0:
        raise ValueError("scaling factor must be >= 1")
    # rapidity -log(beta) along n sends e^chi -> 1/beta on the (1, n) ray
    return LorentzTransform.boost(n, -math.log(beta))
