"""Projective ball model of the hyperboloid shells inside the light cone.

Points of the shell H_tau = {x : x0 = sqrt(|x_s|^2 + tau^2)} are encoded by
u = x_s / x0, which fills the open unit ball. Chords of the ball are the
geodesics, the boundary sphere collects asymptotic lightlike directions, and
the Lorentz group acts projectively. All distances on a shell carry the tau
prefactor of that shell's induced metric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import FitFailure
from .minkowski import FourVector, LorentzTransform
from .spherical import orthonormal_frame as _orthonormal_frame

__all__ = [
    "Hyperboloid", "BallPoint", "SphereDirection", "Cap",
    "project_to_ball", "lift_from_ball", "hyperboloid_distance",
    "ball_distance", "shadow_radius", "euclidean_radius_of_centered_ball",
    "lorentz_ball_action", "boost_ball_action", "sphere_action",
    "ball_action_many", "homology_through", "cap_image",
]


@dataclass(frozen=True)
class Hyperboloid:
    """Time shell at proper time tau > 0 inside the forward cone."""

    tau: float

    def __post_init__(self):
        if not self.tau > 0.0:
            raise ValueError("shell parameter tau must be positive")


class BallPoint:
    """Point of the open unit ball."""

    __slots__ = ("_v",)

    def __init__(self, v):
        v = np.array(v, dtype=float).reshape(3)
        if not np.linalg.norm(v) < 1.0:
            raise ValueError("ball point must satisfy |u| < 1")
        v.flags.writeable = False
        self._v = v

    @property
    def v(self) -> np.ndarray:
        return self._v

    def __eq__(self, other) -> bool:
        return isinstance(other, BallPoint) and bool(
            np.array_equal(self._v, other._v))

    def approx_eq(self, other: "BallPoint", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._v - other._v)) <= tol)

    def __repr__(self) -> str:
        return "BallPoint({}, {}, {})".format(*self._v)


class SphereDirection:
    """Unit vector marking an asymptotic lightlike direction."""

    __slots__ = ("_v",)

    def __init__(self, v, *, tol: Tolerances = DEFAULT_TOLERANCES):
        v = np.array(v, dtype=float).reshape(3)
        n = np.linalg.norm(v)
        if abs(n - 1.0) > 1e-6:
            raise ValueError("direction must be unit length")
        v = v / n
        v.flags.writeable = False
        self._v = v

    @classmethod
    def normalized(cls, v) -> "SphereDirection":
        v = np.asarray(v, dtype=float).reshape(3)
        n = np.linalg.norm(v)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / n)

    @property
    def v(self) -> np.ndarray:
        return self._v

    def __eq__(self, other) -> bool:
        return isinstance(other, SphereDirection) and bool(
            np.array_equal(self._v, other._v))

    def approx_eq(self, other: "SphereDirection", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._v - other._v)) <= tol)

    def __repr__(self) -> str:
        return "SphereDirection({}, {}, {})".format(*self._v)


@dataclass(frozen=True)
class Cap:
    """Spherical cap: directions within half_angle of the axis."""

    axis: SphereDirection
    half_angle: float

    def __post_init__(self):
        if not 0.0 < self.half_angle < math.pi:
            raise ValueError("cap half-angle must lie in (0, pi)")

    @property
    def cos_half(self) -> float:
        return math.cos(self.half_angle)

    def boundary_points(self, n: int) -> np.ndarray:
        """n points evenly spaced on the boundary circle, as an (n, 3) array."""
        e1, e2 = _orthonormal_frame(self.axis.v)
        theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        ring = (math.sin(self.half_angle)
                * (np.outer(np.cos(theta), e1) + np.outer(np.sin(theta), e2)))
        return math.cos(self.half_angle) * self.axis.v + ring

    def boundary_point(self, theta: float) -> np.ndarray:
        e1, e2 = _orthonormal_frame(self.axis.v)
        return (math.cos(self.half_angle) * self.axis.v
                + math.sin(self.half_angle)
                * (math.cos(theta) * e1 + math.sin(theta) * e2))

    def contains_directions(self, dirs: np.ndarray,
                            slack: float = 0.0) -> np.ndarray:
        """Vectorized strict membership of unit rows in the open cap."""
        dirs = np.atleast_2d(dirs)
        return dirs @ self.axis.v > self.cos_half + slack


def project_to_ball(a: FourVector, shell: Hyperboloid,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> BallPoint:
    """Map a point of the shell to u = a_s / a0."""
    expected = math.sqrt(float(a.xs @ a.xs) + shell.tau ** 2)
    if abs(a.x0 - expected) > 1e-9 * max(1.0, abs(a.x0)):
        raise ValueError("point does not lie on the requested shell")
    return BallPoint(a.xs / a.x0)


def lift_from_ball(u: BallPoint, shell: Hyperboloid) -> FourVector:
    """Inverse of project_to_ball: lift u to the shell."""
    a0 = shell.tau / math.sqrt(1.0 - float(u.v @ u.v))
    return FourVector.from_parts(a0, a0 * u.v)


def _acosh_clamped(arg: float, tol: Tolerances) -> float:
    if arg < 1.0:
        if arg < 1.0 - tol.acosh_clamp:
            raise ValueError(f"acosh argument {arg} below clamp window")
        arg = 1.0
    return math.acosh(arg)


def hyperboloid_distance(a: FourVector, b: FourVector, shell: Hyperboloid,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Geodesic distance on the shell from the Lorentz pairing."""
    project_to_ball(a, shell, tol)
    project_to_ball(b, shell, tol)
    from .minkowski import minkowski_product
    arg = minkowski_product(a, b) / shell.tau ** 2
    return shell.tau * _acosh_clamped(arg, tol)


def ball_distance(u: BallPoint, w: BallPoint, shell: Hyperboloid,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Geodesic distance between ball points in the shell metric."""
    uu, ww = u.v, w.v
    arg = ((1.0 - float(uu @ ww))
           / math.sqrt((1.0 - float(uu @ uu)) * (1.0 - float(ww @ ww))))
    return shell.tau * _acosh_clamped(arg, tol)


def ball_distance_many(center: np.ndarray, pts: np.ndarray,
                       tau: float) -> np.ndarray:
    """Vectorized shell distance from one ball point to (n, 3) ball points."""
    pts = np.atleast_2d(pts)
    num = 1.0 - pts @ center
    den = np.sqrt((1.0 - float(center @ center))
                  * (1.0 - np.einsum("ij,ij->i", pts, pts)))
    arg = np.maximum(num / den, 1.0)
    return tau * np.arccosh(arg)


def shadow_radius(sigma: float, tau: float,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Radius (in the shell-tau metric) of the causal shadow that a point on
    shell sigma casts on shell tau.

    The shadow of x with sqrt(x.x) = sigma is a metric ball on H_tau whose
    radius depends only on the ratio of the two shell times; it vanishes
    exactly when sigma = tau.
    """
    if not (sigma > 0.0 and tau > 0.0):
        raise ValueError("shell parameters must be positive")
    c = _acosh_clamped((sigma ** 2 + tau ** 2) / (2.0 * sigma * tau), tol)
    return tau * c


def euclidean_radius_of_centered_ball(radius: float, tau: float) -> float:
    """Euclidean radius of a metric ball centered at the ball origin."""
    return math.tanh(radius / tau)


def ball_action_many(transform: LorentzTransform,
                     pts: np.ndarray) -> np.ndarray:
    """Projective action on (n, 3) rows of the closed ball."""
    m = transform.matrix
    pts = np.atleast_2d(pts)
    den = m[0, 0] + pts @ m[0, 1:]
    num = m[1:, 0] + pts @ m[1:, 1:].T
    return num / den[:, None]


def lorentz_ball_action(transform: LorentzTransform, u):
    """Apply the projective ball action to a BallPoint or SphereDirection.

    The denominator is bounded below by sqrt(1 + s) - sqrt(s) > 0 with
    s = sum of the squared mixed components, so the action extends
    continuously to the boundary sphere.
    """
    if isinstance(u, BallPoint):
        return BallPoint(ball_action_many(transform, u.v[None, :])[0])
    if isinstance(u, SphereDirection):
        w = ball_action_many(transform, u.v[None, :])[0]
        return SphereDirection.normalized(w)
    raise TypeError("expected BallPoint or SphereDirection")


def boost_ball_action(l: SphereDirection, chi: float, u):
    """Ball action of the pure boost along l with rapidity chi.

    Computed directly from the closed form
    ((sinh(chi) + cosh(chi) v.l) l + v_perp) / (cosh(chi) + sinh(chi) v.l);
    it agrees with lorentz_ball_action of the matrix boost and fixes the
    boundary points +-l.
    """
    ch, sh = math.cosh(chi), math.sinh(chi)
    n = l.v

    def act(v: np.ndarray) -> np.ndarray:
        par = float(v @ n)
        perp = v - par * n
        return ((sh + ch * par) * n + perp) / (ch + sh * par)

    if isinstance(u, BallPoint):
        return BallPoint(act(u.v))
    if isinstance(u, SphereDirection):
        return SphereDirection.normalized(act(u.v))
    raise TypeError("expected BallPoint or SphereDirection")


def sphere_action(transform: LorentzTransform,
                  dirs: np.ndarray) -> np.ndarray:
    """Boundary restriction of the ball action on (n, 3) unit rows,
    renormalized onto the sphere."""
    w = ball_action_many(transform, dirs)
    return w / np.linalg.norm(w, axis=1)[:, None]


def homology_through(u0: BallPoint, l: SphereDirection) -> SphereDirection:
    """Second sphere intersection of the line through u0 and l.

    This is the involution that sends the endpoint of a chord through u0 to
    the opposite endpoint; applying it twice returns l.
    """
    d = l.v - u0.v
    # the known root s = 1 factors out: the other root is c/a in s
    s2 = (float(u0.v @ u0.v) - 1.0) / float(d @ d)
    return SphereDirection.normalized(u0.v + s2 * d)


def homology_through_many(u0: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    d = np.atleast_2d(dirs) - u0
    s2 = (float(u0 @ u0) - 1.0) / np.einsum("ij,ij->i", d, d)
    w = u0 + s2[:, None] * d
    return w / np.linalg.norm(w, axis=1)[:, None]


def fit_cap(points: np.ndarray, inside_hint: np.ndarray,
            tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[Cap, float]:
    """Fit a spherical cap whose boundary passes through unit points.

    The boundary circle of a cap spans a plane; a rank-
    deficient direction of the centered samples recovers the plane normal.
    inside_hint (a unit vector known to lie inside the cap region) picks
    which of the two complementary caps to return. Returns (cap, residual)
    where the residual is the worst angular misfit of the samples.
    """
    pts = np.atleast_2d(points)
    centroid = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - centroid)
    normal = vt[-1]
    offset = float((pts @ normal).mean())
    if normal @ inside_hint < offset:
        normal, offset = -normal, -offset
    offset = min(1.0, max(-1.0, offset))
    half_angle = math.acos(offset)
    angles = np.arccos(np.clip(pts @ normal, -1.0, 1.0))
    residual = float(np.max(np.abs(angles - half_angle)))
    return Cap(SphereDirection.normalized(normal), half_angle), residual


def cap_image(transform: LorentzTransform, cap: Cap, *, samples: int = 16,
              tol: Tolerances = DEFAULT_TOLERANCES) -> Cap:
    """Image of a cap under the boundary action of a Lorentz transform.

    The boundary circle maps to a circle; at least four mapped samples are
    refit by a plane. Raises FitFailure when the refit residual exceeds the
    configured bound (which would indicate the samples do not lie on any
    circle to working precision).
    """
    if samples < 4:
        raise ValueError("need at least four boundary samples")
    mapped = sphere_action(transform, cap.boundary_points(samples))
    hint = sphere_action(transform, cap.axis.v[None, :])[0]
    fitted, residual = fit_cap(mapped, hint, tol)
    if residual > tol.circle_fit:
        raise FitFailure(
            f"mapped boundary circle refit residual {residual:.3e} exceeds "
            f"{tol.circle_fit:.1e}")
    return fitted
