"""Support-function machinery for the convex bodies used by the predicates.

Two body types cover everything the package needs: the closed hull of a cone
(apex joined to a spherical cap region) and the ellipsoid realizing a metric
ball of a shell in the projective model. Distances, witnesses and separating
planes come from a GJK iteration driven by exact support maps, so reported
margins are certified by support values rather than sampling alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ConeHullSupport", "Ellipsoid", "hyperball_ellipsoid",
           "gjk_distance", "GJKResult"]


class ConeHullSupport:
    """Support map of hull({apex} u cap region) for a cone in the ball."""

    __slots__ = ("apex", "axis", "cos_half", "sin_half", "_frame")

    def __init__(self, apex: np.ndarray, axis: np.ndarray, half_angle: float):
        self.apex = np.asarray(apex, dtype=float).reshape(3)
        self.axis = np.asarray(axis, dtype=float).reshape(3)
        self.cos_half = math.cos(half_angle)
        self.sin_half = math.sin(half_angle)
        seed = np.zeros(3)
        seed[int(np.argmin(np.abs(self.axis)))] = 1.0
        e1 = np.cross(self.axis, seed)
        self._frame = e1 / np.linalg.norm(e1)

    def cap_support(self, w: np.ndarray) -> np.ndarray:
        """Farthest point of the closed cap region in direction w."""
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return self.axis.copy()
        par = float(w @ self.axis)
        perp = w - par * self.axis
        pn = np.linalg.norm(perp)
        if par >= norm * self.cos_half:
            return w / norm
        if pn == 0.0:
            # w anti-parallel to axis: every circle point ties
            return self.cos_half * self.axis + self.sin_half * self._frame
        return self.cos_half * self.axis + self.sin_half * perp / pn

    def support(self, w: np.ndarray) -> np.ndarray:
        cap_pt = self.cap_support(w)
        if float(w @ self.apex) >= float(w @ cap_pt):
            return self.apex.copy()
        return cap_pt

    def support_value(self, w: np.ndarray) -> float:
        return float(w @ self.support(w))


class Ellipsoid:
    """Spheroid m + M s (|s| <= 1) with symmetry axis and two semi-axes."""

    __slots__ = ("center", "axis", "a_par", "a_perp")

    def __init__(self, center, axis, a_par: float, a_perp: float):
        self.center = np.asarray(center, dtype=float).reshape(3)
        axis = np.asarray(axis, dtype=float).reshape(3)
        self.axis = axis / np.linalg.norm(axis)
        self.a_par = float(a_par)
        self.a_perp = float(a_perp)

    def _apply(self, v: np.ndarray, par_scale: float,
               perp_scale: float) -> np.ndarray:
        par = (v @ self.axis)
        if v.ndim == 1:
            return (par_scale * par * self.axis
                    + perp_scale * (v - par * self.axis))
        return (par_scale * par[:, None] * self.axis
                + perp_scale * (v - par[:, None] * self.axis))

    def support(self, w: np.ndarray) -> np.ndarray:
        mw = self._apply(np.asarray(w, dtype=float), self.a_par, self.a_perp)
        n = np.linalg.norm(mw)
        if n == 0.0:
            return self.center.copy()
        return self.center + self._apply(mw / n, self.a_par, self.a_perp)

    def support_value(self, w: np.ndarray) -> float:
        return float(w @ self.support(w))

    def boundary_points(self, dirs: np.ndarray) -> np.ndarray:
        """Images of unit rows on the ellipsoid surface."""
        return self.center + self._apply(np.atleast_2d(dirs),
                                         self.a_par, self.a_perp)

    def contains(self, pts: np.ndarray, slack: float = 0.0) -> np.ndarray:
        d = np.atleast_2d(pts) - self.center
        s = self._apply(d, 1.0 / self.a_par, 1.0 / self.a_perp)
        return np.linalg.norm(s, axis=1) <= 1.0 + slack


def hyperball_ellipsoid(center: np.ndarray, radius: float,
                        tau: float) -> Ellipsoid:
    """Euclidean realization of the metric ball around a ball point.

    In the projective model the metric ball of shell radius `radius` about a
    point at Euclidean distance a from the origin is a spheroid: boosting the
    centered ball of Euclidean radius r0 = tanh(radius/tau) out to a shifts
    its Euclidean center inward of the metric center and flattens it along
    the radial axis.
    """
    center = np.asarray(center, dtype=float).reshape(3)
    a = float(np.linalg.norm(center))
    r0 = math.tanh(radius / tau)
    if a == 0.0:
        return Ellipsoid(np.zeros(3), np.array([0.0, 0.0, 1.0]), r0, r0)
    ch = 1.0 / math.sqrt(1.0 - a * a)
    sh = a * ch
    d = 1.0 / (ch * ch - sh * sh * r0 * r0)
    axis = center / a
    e_center = sh * ch * (1.0 - r0 * r0) * d
    return Ellipsoid(e_center * axis, axis, r0 * d, r0 * math.sqrt(d))


@dataclass(frozen=True)
class GJKResult:
    distance: float
    point_a: np.ndarray
    point_b: np.ndarray
    common_point: np.ndarray | None

    @property
    def intersecting(self) -> bool:
        return self.common_point is not None


def _closest_on_simplex(points: list[np.ndarray]) -> tuple[np.ndarray,
                                                           np.ndarray,
                                                           list[int]]:
    """Closest point of conv(points) to the origin with barycentrics.

    Enumerates the faces of the (at most 3-) simplex and keeps the best
    feasible minimizer; small and robust for the sizes GJK produces.
    """
    n = len(points)
    best = None
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        p = np.array([points[i] for i in idx])
        k = len(idx)
        gram = p @ p.T
        # minimize |sum l_i p_i|^2 subject to sum l_i = 1
        a = np.zeros((k + 1, k + 1))
        a[:k, :k] = 2.0 * gram
        a[:k, k] = 1.0
        a[k, :k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        try:
            sol = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError:
            continue
        lam = sol[:k]
        if np.any(lam < -1e-12):
            continue
        lam = np.clip(lam, 0.0, None)
        lam = lam / lam.sum()
        v = lam @ p
        norm = float(v @ v)
        if best is None or norm < best[0] - 1e-18:
            best = (norm, v, lam, idx)
    assert best is not None
    return best[1], best[2], best[3]


def gjk_distance(body_a, body_b, *, tol: float = 1e-12,
                 max_iter: int = 200) -> GJKResult:
    """Distance between two convex bodies given by support maps.

    Returns closest points on each body; when the bodies overlap the
    returned distance is 0.0 and common_point carries a shared point
    reconstructed from the terminal simplex barycentrics.
    """
    direction = body_b.support(np.zeros(3)) - body_a.support(np.zeros(3))
    if np.linalg.norm(direction) == 0.0:
        direction = np.array([1.0, 0.0, 0.0])

    def pair(w):
        pa = body_a.support(w)
        pb = body_b.support(-w)
        return pa, pb, pa - pb

    pa, pb, w0 = pair(-direction)
    simplex = [(w0, pa, pb)]
    v = w0
    lam = np.array([1.0])
    for _ in range(max_iter):
        vn = float(np.linalg.norm(v))
        if vn <= tol:
            common = sum(l * s[1] for l, s in zip(lam, simplex))
            return GJKResult(0.0, common, common, common)
        pa, pb, w = pair(-v)
        # duality gap |v|^2 - v.w bounds the remaining improvement
        if vn * vn - float(v @ w) <= tol * max(1.0, vn * vn):
            break
        if any(np.linalg.norm(w - s[0]) <= 1e-15 for s in simplex):
            break
        simplex.append((w, pa, pb))
        v, lam, keep = _closest_on_simplex([s[0] for s in simplex])
        simplex = [simplex[i] for i in keep]
        if len(simplex) == 4:
            # origin inside a full tetrahedron
            vn = float(np.linalg.norm(v))
            if vn <= tol:
                common = sum(l * s[1] for l, s in zip(lam, simplex))
                return GJKResult(0.0, common, common, common)
    point_a = sum(l * s[1] for l, s in zip(lam, simplex))
    point_b = sum(l * s[2] for l, s in zip(lam, simplex))
    dist = float(np.linalg.norm(point_a - point_b))
    if dist <= tol:
        return GJKResult(0.0, point_a, point_b, point_a)
    return GJKResult(dist, point_a, point_b, None)
