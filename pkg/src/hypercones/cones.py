"""Cones in the projective ball and their certified predicates.

A cone is the interior of the convex hull of an apex point together with a
closed spherical cap region on the boundary sphere: equivalently, the union
of the open chords from the apex to the points of the open cap. Membership
reduces to an exit-point test (follow the ray from the apex and ask where it
leaves the sphere), containment of one cone in another reduces to cap
inclusion plus apex membership, and disjointness is decided by GJK on the
closed hulls with support-function-certified separating planes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .ball_model import (BallPoint, Cap, Hyperboloid, SphereDirection,
                         ball_action_many, ball_distance_many, cap_image,
                         homology_through_many, fit_cap,
                         lorentz_ball_action, shadow_radius, sphere_action)
from .config import (DEFAULT_BUDGETS, DEFAULT_TOLERANCES, Budgets, Tolerances)
from .convex import ConeHullSupport, Ellipsoid, gjk_distance, \
    hyperball_ellipsoid
from .errors import DegenerateGeometry
from .minkowski import FourVector, LorentzTransform, in_light_cone
from .spherical import angle_between, orthonormal_frame, rotate_toward, slerp

__all__ = [
    "BallCone", "Hypercone", "Hyperball", "contains_point", "cone_leq",
    "LeqResult", "disjoint", "DisjointResult", "opposite", "enclosing_cone",
    "hyperball_in_cone", "InclusionResult", "in_causal_completion",
    "map_cone", "point_margin",
]


@dataclass(frozen=True)
class BallCone:
    """Open cone spanned from an apex over a spherical cap region.

    Validity requires the apex to sit strictly on the cap-free side of the
    base-circle plane; that single inequality is equivalent to the cone
    being convex and pointed (after moving the apex to the ball center the
    cap subtends less than a right angle).
    """

    apex: BallPoint
    base: Cap

    def __post_init__(self):
        slack = DEFAULT_TOLERANCES.pointedness
        if float(self.base.axis.v @ self.apex.v) >= self.base.cos_half - slack:
            raise ValueError(
                "apex must lie strictly below the base-circle plane")

    # -- raw geometry helpers ------------------------------------------

    def exit_directions(self, pts: np.ndarray) -> tuple[np.ndarray,
                                                        np.ndarray]:
        """Where rays from the apex through the rows of pts leave the sphere.

        Returns (unit exit rows, mask of rows coinciding with the apex).
        """
        a = self.apex.v
        pts = np.atleast_2d(pts)
        d = pts - a
        dd = np.einsum("ij,ij->i", d, d)
        degenerate = dd < 1e-28
        dd_safe = np.where(degenerate, 1.0, dd)
        ad = d @ a
        aa = float(a @ a)
        disc = np.sqrt(ad * ad + dd_safe * (1.0 - aa))
        # positive quadratic root, in the cancellation-free arrangement
        t = np.where(ad > 0.0, (1.0 - aa) / (ad + disc), (disc - ad) / dd_safe)
        exits = a + t[:, None] * d
        exits[degenerate] = self.base.axis.v
        exits /= np.linalg.norm(exits, axis=1)[:, None]
        return exits, degenerate

    def interior_margins(self, pts: np.ndarray) -> np.ndarray:
        """Cos-space margin of each row: positive strictly inside the open
        cone, negative outside the closed hull, ~0 on the boundary."""
        exits, degenerate = self.exit_directions(pts)
        margins = exits @ self.base.axis.v - self.base.cos_half
        return np.where(degenerate, 0.0, margins)

    def contains_many(self, pts: np.ndarray, *, slack: float = 0.0,
                      closed: bool = False) -> np.ndarray:
        m = self.interior_margins(pts)
        if closed:
            _, degenerate = self.exit_directions(pts)
            return (m >= -slack) | degenerate
        return m > slack

    def centroid(self) -> BallPoint:
        """Midpoint of the chord from the apex toward the cap center; always
        strictly interior."""
        return BallPoint(0.5 * (self.apex.v + self.base.axis.v))

    def lateral_points(self, n_theta: int, s_values: np.ndarray) -> np.ndarray:
        """Grid on the ruled boundary surface, apex (s=0) to circle (s=1)."""
        ring = self.base.boundary_points(n_theta)
        a = self.apex.v
        pts = a + s_values[:, None, None] * (ring[None, :, :] - a)
        return pts.reshape(-1, 3)

    def sample_points(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Random interior points (not uniform, but covering the cone)."""
        z = self.base.cos_half + (1.0 - self.base.cos_half) * rng.random(n)
        phi = 2.0 * math.pi * rng.random(n)
        e1, e2 = orthonormal_frame(self.base.axis.v)
        rad = np.sqrt(1.0 - z * z)
        dirs = (z[:, None] * self.base.axis.v
                + rad[:, None] * (np.outer(np.cos(phi), e1)
                                  + np.outer(np.sin(phi), e2)))
        s = rng.random(n) ** 0.5
        return self.apex.v + s[:, None] * (dirs - self.apex.v)

    def support_body(self) -> ConeHullSupport:
        return ConeHullSupport(self.apex.v, self.base.axis.v,
                               self.base.half_angle)


@dataclass(frozen=True)
class Hypercone:
    """Causal completion region spanned by a ball cone on a time shell."""

    shell: Hyperboloid
    cone: BallCone


@dataclass(frozen=True)
class Hyperball:
    """Closed metric ball of a shell, encoded in ball coordinates."""

    shell: Hyperboloid
    center: BallPoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("hyperball radius must be positive")

    def ellipsoid(self) -> Ellipsoid:
        return hyperball_ellipsoid(self.center.v, self.radius, self.shell.tau)


def contains_point(cone: BallCone, u: BallPoint,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Strict membership of a ball point in the open cone.

    The ray from the apex through u exits the sphere somewhere; u is inside
    exactly when that exit lies in the open cap region. Boundary points
    (including the apex itself) return False.
    """
    exits, degenerate = cone.exit_directions(u.v[None, :])
    if bool(degenerate[0]):
        return False
    return float(exits[0] @ cone.base.axis.v) > cone.base.cos_half


def _lateral_segment_distances(cone: BallCone, p: np.ndarray,
                               thetas: np.ndarray) -> np.ndarray:
    ring = np.array([cone.base.boundary_point(t) for t in thetas])
    a = cone.apex.v
    d = ring - a
    dd = np.einsum("ij,ij->i", d, d)
    t = np.clip(((p - a) @ d.T) / dd, 0.0, 1.0)
    closest = a + t[:, None] * d
    return np.linalg.norm(closest - p, axis=1)


def _lateral_distance(cone: BallCone, p: np.ndarray, seeds: int = 64) -> float:
    thetas = np.linspace(0.0, 2.0 * math.pi, seeds, endpoint=False)
    dists = _lateral_segment_distances(cone, p, thetas)
    best = int(np.argmin(dists))
    width = 2.0 * math.pi / seeds
    res = optimize.minimize_scalar(
        lambda th: float(_lateral_segment_distances(
            cone, p, np.array([th]))[0]),
        bounds=(thetas[best] - width, thetas[best] + width),
        method="bounded", options={"xatol": 1e-12})
    return min(float(dists[best]), float(res.fun))


def _cap_face_distance(cone: BallCone, p: np.ndarray) -> float:
    n = cone.base.axis.v
    norm = float(np.linalg.norm(p))
    if norm > 0.0 and float(p @ n) / norm >= cone.base.cos_half:
        return abs(1.0 - norm)
    # otherwise the nearest cap-face point is on the base circle
    c0 = cone.base.cos_half * n
    v = p - c0
    par = float(v @ n)
    perp = v - par * n
    return math.hypot(par, float(np.linalg.norm(perp))
                      - math.sin(cone.base.half_angle))


def point_margin(cone: BallCone, p: np.ndarray) -> float:
    """Signed Euclidean distance from p to the cone boundary.

    Positive inside the open cone, negative outside the closed hull. The
    boundary consists of the ruled lateral surface (apex to base circle)
    and the spherical cap face.
    """
    dist = min(_lateral_distance(cone, p), _cap_face_distance(cone, p))
    inside = bool(cone.contains_many(p[None, :])[0])
    return dist if inside else -dist


@dataclass(frozen=True)
class LeqResult:
    """Outcome of a containment test between two cones."""

    holds: bool
    cap_margin: float     # radians of cap-inclusion slack
    apex_margin: float    # cos-space closed-membership margin of the apex
    sample_margin: float  # worst cos-space margin over certificate samples

    def __bool__(self) -> bool:
        return self.holds


def cone_leq(inner: BallCone, outer: BallCone,
             tol: Tolerances = DEFAULT_TOLERANCES,
             budgets: Budgets = DEFAULT_BUDGETS) -> LeqResult:
    """Closed containment inner <= outer (a partial order on cones).

    The closed hull of a cone is generated by its apex and its cap region,
    and the sphere trace of the outer hull is exactly the outer cap, so the
    test is: inner cap included in outer cap, and inner apex in the outer
    closed hull. Both parts are exact up to the configured slacks; sampled
    base/interior points provide the reported defense-in-depth margin.
    """
    gamma = angle_between(inner.base.axis.v, outer.base.axis.v)
    cap_margin = outer.base.half_angle - inner.base.half_angle - gamma
    apex_margin = float(outer.interior_margins(inner.apex.v[None, :])[0])
    if np.linalg.norm(inner.apex.v - outer.apex.v) < 1e-15:
        apex_margin = 0.0
    holds = (cap_margin >= -tol.cap_angle_slack
             and apex_margin >= -tol.containment_slack)

    s_grid = np.linspace(0.0, 1.0, max(4, budgets.interior_samples // 16))
    samples = np.vstack([
        inner.lateral_points(budgets.base_samples // 4 or 4, s_grid),
        inner.apex.v[None, :],
    ])
    sample_margin = float(np.min(outer.interior_margins(samples)))
    return LeqResult(holds, cap_margin, apex_margin, sample_margin)


@dataclass(frozen=True)
class DisjointResult:
    """Outcome of a disjointness test, with its witness."""

    disjoint: bool
    margin: float
    plane: tuple[np.ndarray, float] | None
    common_point: np.ndarray | None

    def __bool__(self) -> bool:
        return self.disjoint


def _normalizing_transform(apex: BallPoint) -> LorentzTransform:
    """Boost whose ball action moves the apex to the origin."""
    a = float(np.linalg.norm(apex.v))
    if a < 1e-14:
        return LorentzTransform.identity()
    return LorentzTransform.boost(apex.v / a, -math.atanh(a))


def _plane_from_points(q0, q1, q2) -> tuple[np.ndarray, float]:
    w = np.cross(q1 - q0, q2 - q0)
    w /= np.linalg.norm(w)
    return w, float(w @ q0)


def _cap_min_value(cone: BallCone, w: np.ndarray) -> float:
    """min of w.x over the closed cap region of the cone."""
    return float(w @ cone.support_body().cap_support(-w))


def _common_apex_disjoint(k1: BallCone, k2: BallCone, tol: Tolerances,
                          budgets: Budgets) -> DisjointResult:
    norm = _normalizing_transform(k1.apex)
    c1 = cap_image(norm, k1.base, tol=tol)
    c2 = cap_image(norm, k2.base, tol=tol)
    gamma = angle_between(c1.axis.v, c2.axis.v)
    gap = gamma - c1.half_angle - c2.half_angle
    if abs(gap) <= tol.degenerate_window:
        raise DegenerateGeometry(
            "cones with a shared apex are angularly tangent; perturb inputs")
    inv = norm.inverse()
    if gap > 0.0:
        # plane through the apex separating the two direction sectors
        beta = 0.5 * ((math.pi - gamma) + (c2.half_angle - c1.half_angle))
        h = rotate_toward(c1.axis.v, -c2.axis.v, beta)
        e1 = rotate_toward(h, c1.axis.v, 0.5 * math.pi)
        e2 = np.cross(h, e1)
        q = sphere_action(inv, np.array([e1, e2]))
        w, c = _plane_from_points(k1.apex.v, q[0], q[1])
        m1 = _cap_min_value(k1, w) - c
        if m1 < 0.0:
            w, c = -w, -c
            m1 = _cap_min_value(k1, w) - c
        m2 = c - k2.support_body().cap_support(w) @ w
        margin = min(m1, m2)
        if margin <= tol.degenerate_window:
            raise DegenerateGeometry(
                "separating plane margin through the shared apex collapsed")
        return DisjointResult(True, float(margin), (w, c), None)
    # overlapping sectors: exhibit a direction interior to both caps
    alpha = 0.5 * (gamma + c1.half_angle - c2.half_angle)
    alpha = min(max(alpha, 0.0), gamma)
    mid = rotate_toward(c1.axis.v, c2.axis.v, alpha)
    p = ball_action_many(inv, 0.5 * mid[None, :])[0]
    depth = min(float(k1.interior_margins(p[None, :])[0]),
                float(k2.interior_margins(p[None, :])[0]))
    if depth <= tol.degenerate_window:
        raise DegenerateGeometry("shared-apex overlap is tangent; perturb")
    return DisjointResult(False, float(-depth), None, p)


def _closest_segment_points(p0: np.ndarray, p1: np.ndarray, q0: np.ndarray,
                            q1: np.ndarray) -> np.ndarray:
    """Midpoint of the shortest connector between two segments."""
    d1, d2, r = p1 - p0, q1 - q0, p0 - q0
    a, e, f = float(d1 @ d1), float(d2 @ d2), float(d2 @ r)
    b, c = float(d1 @ d2), float(d1 @ r)
    den = a * e - b * b
    s = 0.0 if den < 1e-15 else min(1.0, max(0.0, (b * f - c * e) / den))
    t = 0.0 if e < 1e-15 else min(1.0, max(0.0, (b * s + f) / e))
    return 0.5 * ((p0 + s * d1) + (q0 + t * d2))


def _overlap_seed_candidates(k1: BallCone, k2: BallCone,
                             seed: np.ndarray) -> np.ndarray:
    """Structured interior candidates for the deepest common point.

    Covers the three ways two cap cones can meet: overlapping caps (points
    near the sphere toward the cap lens), bodies crossing (points along
    chords from each apex toward its cap ring, which sweep the whole body),
    and one cone swallowing the other's tip (apex-chord ladder points).
    """
    cands = [seed, 0.5 * (k1.centroid().v + k2.centroid().v),
             k1.centroid().v, k2.centroid().v,
             _closest_segment_points(k1.apex.v, k1.base.axis.v,
                                     k2.apex.v, k2.base.axis.v)]
    for w in (0.25, 0.5, 0.75):
        m = slerp(k1.base.axis.v, k2.base.axis.v, w)
        for apex in (k1.apex.v, k2.apex.v):
            for t in (0.9, 0.99, 0.999):
                cands.append(apex + t * (m - apex))
    ladder = np.array([0.05, 0.15, 0.3, 0.45, 0.6, 0.75, 0.85, 0.93,
                       0.98, 0.997])
    for cone in (k1, k2):
        half = 0.5 * cone.base.half_angle
        ring = Cap(cone.base.axis, half).boundary_points(8) \
            if half > 1e-9 else np.empty((0, 3))
        dirs = np.vstack([cone.base.axis.v[None, :],
                          cone.base.boundary_points(8), ring])
        chords = (cone.apex.v
                  + ladder[:, None, None] * (dirs[None, :, :] - cone.apex.v))
        cands.append(chords.reshape(-1, 3))
    return np.vstack([np.atleast_2d(np.asarray(c)) for c in cands])


def _deepest_common_point(k1: BallCone, k2: BallCone, seed: np.ndarray,
                          window: float) -> tuple[np.ndarray, float]:
    """Common point of depth above the window if one exists.

    Structured candidates decide the common case outright; the optimizer
    only runs when every candidate sits inside the contact window, to
    separate genuine tangency from a thin but real overlap.
    """
    def neg_depth(p):
        p = np.asarray(p)
        if np.linalg.norm(p) >= 1.0:
            return 1.0
        return -min(float(k1.interior_margins(p[None, :])[0]),
                    float(k2.interior_margins(p[None, :])[0]))

    candidates = _overlap_seed_candidates(k1, k2, seed)
    depths = np.minimum(k1.interior_margins(candidates),
                        k2.interior_margins(candidates))
    depths[np.linalg.norm(candidates, axis=1) >= 1.0] = -1.0
    order = np.argsort(depths)[::-1]
    best = candidates[order[0]]
    best_depth = float(depths[order[0]])
    if best_depth > window:
        return best, best_depth
    for idx in order[:3]:
        res = optimize.minimize(neg_depth, candidates[idx],
                                method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-12,
                                         "maxiter": 400})
        if neg_depth(res.x) < neg_depth(best):
            best = np.asarray(res.x)
            if -neg_depth(best) > window:
                break
    return best, -neg_depth(best)


def disjoint(k1: BallCone, k2: BallCone,
             tol: Tolerances = DEFAULT_TOLERANCES,
             budgets: Budgets = DEFAULT_BUDGETS) -> DisjointResult:
    """Whether two open cones have empty intersection.

    On True the witness is a separating plane (unit normal w, offset c) with
    the first cone on the w.x > c side; its margin is certified against the
    closed cap regions by support values. On False the witness is a common
    interior point. Contact tighter than the degenerate window raises
    DegenerateGeometry. Cones sharing an apex are handled by an exact
    angular comparison (their closures always meet at the apex, which open
    disjointness permits).
    """
    if np.linalg.norm(k1.apex.v - k2.apex.v) <= 1e-12:
        return _common_apex_disjoint(k1, k2, tol, budgets)
    result = gjk_distance(k1.support_body(), k2.support_body())
    if result.distance > tol.degenerate_window:
        w = result.point_b - result.point_a
        w /= np.linalg.norm(w)
        c = float(w @ (0.5 * (result.point_a + result.point_b)))
        body1, body2 = k1.support_body(), k2.support_body()
        m1 = c - float(w @ body1.support(w))
        m2 = float(w @ body2.support(-w)) - c
        margin = min(m1, m2)
        if margin <= tol.degenerate_window:
            raise DegenerateGeometry("separation margin inside the window")
        # report with the first cone on the positive side
        return DisjointResult(True, float(margin), (-w, -c), None)
    seed = (result.common_point if result.common_point is not None
            else 0.5 * (result.point_a + result.point_b))
    point, depth = _deepest_common_point(k1, k2, seed,
                                         tol.degenerate_window)
    if depth <= tol.degenerate_window:
        raise DegenerateGeometry(
            "cones touch within the degenerate window; perturb inputs")
    return DisjointResult(False, float(-depth), None, point)


def opposite(cone: BallCone, *, samples: int = 16,
             tol: Tolerances = DEFAULT_TOLERANCES) -> BallCone:
    """Cone of the rays opposite to a cone's rays, across its apex.

    The asymptotic endpoints of the opposite rays are the images of the base
    circle under the involution through the apex; they again form a circle,
    refit as a cap. Applying the construction twice returns the input.
    """
    ring = cone.base.boundary_points(max(4, samples))
    mapped = homology_through_many(cone.apex.v, ring)
    hint = homology_through_many(cone.apex.v, cone.base.axis.v[None, :])[0]
    fitted, residual = fit_cap(mapped, hint, tol)
    if residual > tol.circle_fit:
        from .errors import FitFailure
        raise FitFailure(
            f"opposite-cap refit residual {residual:.3e} exceeds "
            f"{tol.circle_fit:.1e}")
    return BallCone(cone.apex, fitted)


def _covering_cap(caps: list[Cap], pad: float,
                  tol: Tolerances) -> Cap | None:
    """Smallest-ish cap containing the given caps, padded; None when the
    required half-angle leaves the valid range."""
    axis = caps[0].axis.v
    half = caps[0].half_angle
    for cap in caps[1:]:
        gamma = angle_between(axis, cap.axis.v)
        if gamma + cap.half_angle <= half:
            continue
        if gamma + half <= cap.half_angle:
            axis, half = cap.axis.v, cap.half_angle
            continue
        new_half = 0.5 * (gamma + half + cap.half_angle)
        axis = rotate_toward(axis, cap.axis.v, new_half - half)
        half = new_half
    half += pad
    if half >= math.pi - tol.cap_limit:
        return None
    return Cap(SphereDirection.normalized(axis), half)


_APEX_DEPTH_LADDER = (0.5, 0.75, 0.9, 0.99, 1.0 - 1e-4, 1.0 - 1e-6,
                      1.0 - 1e-8)


def enclosing_cone(k1: BallCone, k2: BallCone,
                   tol: Tolerances = DEFAULT_TOLERANCES,
                   budgets: Budgets = DEFAULT_BUDGETS) -> BallCone | None:
    """Smallest-effort common upper bound of two cones, or None.

    Covers both caps by one padded cap and walks the apex down the ray
    opposite the covering axis until both containments certify; gives up
    (returns None) when the covering cap would exceed the valid range or no
    ladder depth works.
    """
    if cone_leq(k1, k2, tol, budgets):
        return k2
    if cone_leq(k2, k1, tol, budgets):
        return k1
    for pad in (0.02, 0.1, 0.25):
        cover = _covering_cap([k1.base, k2.base], pad, tol)
        if cover is None:
            return None
        for rho in _APEX_DEPTH_LADDER:
            apex = BallPoint(-rho * cover.axis.v)
            if float(cover.axis.v @ apex.v) >= cover.cos_half:
                continue
            candidate = BallCone(apex, cover)
            if (cone_leq(k1, candidate, tol, budgets)
                    and cone_leq(k2, candidate, tol, budgets)):
                return candidate
    return None


@dataclass(frozen=True)
class InclusionResult:
    holds: bool
    margin: float  # shell-metric clearance of the ball from the boundary

    def __bool__(self) -> bool:
        return self.holds


def _min_boundary_distance(cone: BallCone, center: BallPoint,
                           tau: float) -> float:
    """Minimum shell distance from a ball point to the cone's lateral
    boundary (the cap face sits at infinite distance)."""
    thetas = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    s_grid = np.concatenate([[0.0], np.geomspace(1e-3, 0.999, 23)])
    ring = cone.base.boundary_points(len(thetas))
    a = cone.apex.v
    pts = (a + s_grid[:, None, None] * (ring[None, :, :] - a)).reshape(-1, 3)
    dists = ball_distance_many(center.v, pts, tau)
    best = int(np.argmin(dists))
    th0 = thetas[best % len(thetas)]
    s0 = s_grid[best // len(thetas)]

    def objective(x):
        th, s = x
        s = min(max(s, 0.0), 0.999999)
        q = a + s * (cone.base.boundary_point(th) - a)
        return float(ball_distance_many(center.v, q[None, :], tau)[0])

    res = optimize.minimize(objective, np.array([th0, s0]),
                            method="Nelder-Mead",
                            options={"xatol": 1e-12, "fatol": 1e-14,
                                     "maxiter": 400})
    return min(float(dists[best]), float(res.fun))


def hyperball_in_cone(ball: Hyperball, cone: BallCone,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> InclusionResult:
    """Whether a closed metric ball lies inside the open cone.

    Decided by comparing the ball radius with the minimal shell distance
    from the center to the cone boundary; a difference inside the degenerate
    window raises DegenerateGeometry.
    """
    boundary = _min_boundary_distance(cone, ball.center, ball.shell.tau)
    inside = bool(cone.contains_many(ball.center.v[None, :])[0])
    margin = boundary - ball.radius if inside else -(boundary + ball.radius)
    if abs(boundary - ball.radius) <= tol.degenerate_window:
        raise DegenerateGeometry(
            "ball touches the cone boundary within the window")
    return InclusionResult(inside and boundary > ball.radius, float(margin))


def in_causal_completion(x: FourVector, region: Hypercone,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether a forward-cone event belongs to the causal completion of the
    region a cone spans on the shell.

    The event's causal shadow on the shell is a metric ball; the event is in
    the completion exactly when that shadow fits inside the cone. Events on
    the light cone boundary (zero Minkowski square) are never inside.
    """
    if not isinstance(x, FourVector):
        x = FourVector.from_array(np.asarray(x, dtype=float))
    radial = float(np.linalg.norm(x.xs))
    if x.x0 < radial - tol.linear_identity or x.x0 <= 0.0:
        raise ValueError("event must lie in the closed forward cone")
    square = x.square()
    if square <= tol.linear_identity:
        return False
    sigma = math.sqrt(square)
    center = BallPoint(x.xs / x.x0)
    radius = shadow_radius(sigma, region.shell.tau, tol)
    if radius <= 1e-15 * region.shell.tau:
        return contains_point(region.cone, center, tol)
    ball = Hyperball(region.shell, center, radius)
    return bool(hyperball_in_cone(ball, region.cone, tol))


def map_cone(transform: LorentzTransform, cone: BallCone,
             tol: Tolerances = DEFAULT_TOLERANCES) -> BallCone:
    """Image of a cone under the ball action of a Lorentz transform."""
    return BallCone(lorentz_ball_action(transform, cone.apex),
                    cap_image(transform, cone.base, tol=tol))


def cone_hyperball_disjoint(cone: BallCone, ball: Hyperball | Ellipsoid,
                            tol: Tolerances = DEFAULT_TOLERANCES
                            ) -> DisjointResult:
    """Disjointness of a cone hull from a metric ball's Euclidean hull."""
    ell = ball.ellipsoid() if isinstance(ball, Hyperball) else ball
    result = gjk_distance(cone.support_body(), ell)
    if result.distance > tol.degenerate_window:
        w = result.point_b - result.point_a
        w /= np.linalg.norm(w)
        c = float(w @ (0.5 * (result.point_a + result.point_b)))
        return DisjointResult(True, result.distance, (-w, -c), None)
    seed = (result.common_point if result.common_point is not None
            else ell.center)
    depth = float(cone.interior_margins(seed[None, :])[0])
    center_depth = float(cone.interior_margins(ell.center[None, :])[0])
    if center_depth > depth:
        seed, depth = ell.center, center_depth
    if depth <= tol.degenerate_window:
        raise DegenerateGeometry(
            "cone and ball hull touch within the window")
    return DisjointResult(False, float(-depth), None, seed)
