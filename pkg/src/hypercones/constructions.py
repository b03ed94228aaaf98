"""Constructive geometry on cap-based cones.

Builders for funnels (decreasing cone sequences), interpolation paths with
common-subcone witnesses, complement cones, cross-shell enclosures,
contracting boost families, and translation-robust enclosures.  Every
builder certifies its output with the predicates from ``hypercones.cones``
— a code path independent of the construction itself — and raises
``ConstructionFailure`` instead of returning an unverified witness.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ball_model import (BallPoint, Cap, Hyperboloid, SphereDirection,
                         cap_image, lift_from_ball, shadow_radius)
from .cones import (BallCone, Hyperball, Hypercone, _covering_cap,
                    _normalizing_transform, cone_hyperball_disjoint,
                    cone_leq, disjoint, hyperball_in_cone,
                    in_causal_completion, map_cone, opposite)
from .config import Budgets, Tolerances, DEFAULT_BUDGETS, DEFAULT_TOLERANCES
from .convex import Ellipsoid, hyperball_ellipsoid
from .errors import ConstructionFailure, DegenerateGeometry
from .minkowski import FourVector, LorentzTransform
from .spherical import angle_between, orthonormal_frame, rotate_toward, slerp

__all__ = [
    "Funnel", "ConePath", "ContractingBoosts",
    "funnel_in", "funnel_from_exhaustion", "avoid_ball_inside",
    "wrap_ball_in_complement", "path_connect", "path_connect_in_complement",
    "shrink_for_connectivity", "common_complement_cone", "enclose_shadow",
    "shrink_across_shells", "contracting_boosts", "escape_ball",
    "robust_enclosure_lorentz", "translate_enclosure",
    "lightray_offset", "lightray_point", "interval_expansion",
]


# --------------------------------------------------------------------------
# result types


@dataclass(frozen=True)
class Funnel:
    """Decreasing sequence of cones; when built against a probe ball, the
    last member's hull is disjoint from the probe's hull."""
    cones: tuple[BallCone, ...]
    depth: int
    probe: Hyperball | None = None


@dataclass(frozen=True)
class ConePath:
    """Cone sequence where every adjacent pair contains a common subcone."""
    nodes: tuple[BallCone, ...]
    witnesses: tuple[BallCone, ...]


@dataclass(frozen=True)
class ContractingBoosts:
    """Open family of directions together with a boost factory; for every
    admissible direction l and rapidity chi > 0 the produced transform maps
    the source cone strictly into itself, monotonically in chi."""
    directions: tuple[SphereDirection, ...]
    half_angle: float
    boost_maker: Callable[[SphereDirection, float], LorentzTransform] = \
        field(repr=False)


# --------------------------------------------------------------------------
# shared helpers


_CLOUD_DIRS = None


def _cloud_directions() -> np.ndarray:
    """Fixed, well-spread direction set for support-point clouds."""
    global _CLOUD_DIRS
    if _CLOUD_DIRS is None:
        dirs = []
        for x in (-1.0, 0.0, 1.0):
            for y in (-1.0, 0.0, 1.0):
                for z in (-1.0, 0.0, 1.0):
                    if x == y == z == 0.0:
                        continue
                    v = np.array([x, y, z])
                    dirs.append(v / np.linalg.norm(v))
        _CLOUD_DIRS = np.array(dirs)
    return _CLOUD_DIRS


def _require(condition: bool, message: str,
             failing_index: int | None = None) -> None:
    if not condition:
        raise ConstructionFailure(message, failing_index=failing_index)


def _is_disjoint(a: BallCone, b: BallCone, tol: Tolerances) -> bool:
    """Disjointness as a boolean search primitive: contact inside the
    degenerate window counts as not-yet-separated."""
    try:
        return bool(disjoint(a, b, tol))
    except DegenerateGeometry:
        return False


def _ball_clear(cone: BallCone, ball: Hyperball | Ellipsoid,
                tol: Tolerances) -> bool:
    try:
        return bool(cone_hyperball_disjoint(cone, ball, tol))
    except DegenerateGeometry:
        return False


def _chord_levels(cone: BallCone, target: np.ndarray, count: int,
                  tol: Tolerances, *, psi_floor: float = 1e-7
                  ) -> list[BallCone]:
    """Nested cones marching along the chord from the apex to a point of the
    base circle, caps internally tangent at the target.

    Level n halves both the cap opening (floored) and the remaining chord;
    the sequence stops early when the apex would get too close to the cap
    plane to define a cone.
    """
    apex0, axis0 = cone.apex.v, cone.base.axis.v
    psi0 = cone.base.half_angle
    chord = target - apex0
    levels: list[BallCone] = []
    for n in range(1, count + 1):
        shrink = 0.5 ** n
        psi = max(psi0 * shrink, psi_floor)
        axis = rotate_toward(axis0, target, psi0 - psi)
        apex = target - shrink * chord
        validity = shrink * float(axis @ chord)
        if validity <= 10.0 * tol.pointedness:
            break
        levels.append(BallCone(BallPoint(apex),
                               Cap(SphereDirection.normalized(axis), psi)))
    return levels


def _steer_target(cone: BallCone, away_from: np.ndarray) -> np.ndarray:
    """Base-circle point farthest from a point to be avoided."""
    ring = cone.base.boundary_points(32)
    dist = np.linalg.norm(ring - away_from, axis=1)
    return ring[int(np.argmax(dist))]


def _thin_cone(direction: np.ndarray, half_angle: float,
               depth: float) -> BallCone | None:
    """Cone with near-sphere apex (1-depth)*direction and cap around the
    direction; None when the parameters cannot define a cone."""
    if depth <= 1.0 - math.cos(half_angle) + 1e-9 or depth >= 1.0:
        return None
    return BallCone(BallPoint((1.0 - depth) * direction),
                    Cap(SphereDirection.normalized(direction), half_angle))


def _membership_violations(cone: BallCone, pts: np.ndarray,
                           tol: Tolerances) -> int:
    inside = cone.contains_many(pts, slack=tol.containment_slack,
                                closed=True)
    return int(np.sum(~inside))


def _thickened_samples(points: np.ndarray, radius: float, tau: float,
                       rng: np.random.Generator) -> np.ndarray:
    """One random point inside the metric ball of the given radius around
    each input point (vectorized over rows)."""
    pts = np.atleast_2d(points)
    n = pts.shape[0]
    a = np.linalg.norm(pts, axis=1)
    r0 = math.tanh(radius / tau)
    safe_a = np.where(a < 1e-12, 1.0, a)
    axis = pts / safe_a[:, None]
    axis[a < 1e-12] = np.array([0.0, 0.0, 1.0])
    ch2 = 1.0 / (1.0 - a * a)
    sh2 = a * a * ch2
    d = 1.0 / (ch2 - sh2 * r0 * r0)
    e_center = np.sqrt(sh2 * ch2) * (1.0 - r0 * r0) * d
    a_par = r0 * d
    a_perp = r0 * np.sqrt(d)
    # random directions and radii inside the unit ball, then scale
    u = rng.normal(size=(n, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    rho = rng.random(n) ** (1.0 / 3.0)
    z = rho[:, None] * u
    z_par = np.sum(z * axis, axis=1)
    z_perp = z - z_par[:, None] * axis
    return (e_center[:, None] * axis + (a_par * z_par)[:, None] * axis
            + a_perp[:, None] * z_perp)


def _hull_boundary_samples(cone: BallCone, *, n_theta: int = 8,
                           s_depths: Sequence[float] = (0.02, 0.1, 0.3,
                                                        0.6, 0.85, 0.97)
                           ) -> np.ndarray:
    """Representative points of a cone hull: apex, lateral grid, and deep
    points along interior directions."""
    s = np.asarray(s_depths)
    lateral = cone.lateral_points(n_theta, s)
    axis_line = cone.apex.v + s[:, None] * (cone.base.axis.v - cone.apex.v)
    return np.vstack([cone.apex.v[None, :], lateral, axis_line])


def _support_cloud(center: np.ndarray, radius: float,
                   tau: float) -> np.ndarray:
    """Boundary points of the Euclidean spheroid realizing a metric ball."""
    ell = hyperball_ellipsoid(center, radius, tau)
    return ell.boundary_points(_cloud_directions())


# --------------------------------------------------------------------------
# funnels


def funnel_in(cone: BallCone, depth: int, probe: Hyperball,
              tol: Tolerances = DEFAULT_TOLERANCES,
              budgets: Budgets = DEFAULT_BUDGETS) -> Funnel:
    """Decreasing sequence of `depth` cones inside `cone` whose last member
    has a hull disjoint from the probe ball's hull.

    The sequence collapses toward a base-circle point steered away from the
    probe; since the probe is compactly inside the ball while the limit
    point lies on the sphere, separation is always reached at finite depth.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    target = _steer_target(cone, probe.center.v)
    levels = _chord_levels(cone, target, max(depth, budgets.search_rounds),
                           tol)
    _require(bool(levels), "no valid shrinking levels inside the cone")
    ell = probe.ellipsoid()
    cleared = next((i for i, lv in enumerate(levels)
                    if _ball_clear(lv, ell, tol)), None)
    _require(cleared is not None,
             "collapsing levels never separated from the probe ball")
    if cleared + 1 <= depth:
        chosen = levels[:depth]
        if len(chosen) < depth:  # validity stopped the march early
            chosen = chosen + [chosen[-1]] * (depth - len(chosen))
    else:
        chosen = levels[cleared - depth + 1: cleared + 1]
    _require(bool(cone_leq(chosen[0], cone, tol)),
             "first funnel member is not inside the source cone", 0)
    for i in range(len(chosen) - 1):
        _require(bool(cone_leq(chosen[i + 1], chosen[i], tol)),
                 "funnel members are not decreasing", i)
    _require(_ball_clear(chosen[-1], ell, tol),
             "last funnel member still meets the probe ball",
             len(chosen) - 1)
    rng = np.random.default_rng(0)
    pts = chosen[-1].sample_points(budgets.membership_samples, rng)
    bad = int(np.sum(ell.contains(pts, slack=-tol.containment_slack)))
    _require(bad == 0, f"{bad} sampled points of the last member lie in "
             "the probe ball")
    return Funnel(tuple(chosen), len(chosen), probe)


def funnel_from_exhaustion(cones: Sequence[BallCone],
                           tol: Tolerances = DEFAULT_TOLERANCES,
                           budgets: Budgets = DEFAULT_BUDGETS) -> Funnel:
    """Funnel formed by the opposite cones of an increasing sequence.

    Each opposite is disjoint from its own source cone, so as the sources
    exhaust the ball the opposites shrink away to nothing; the finite
    certificate checks the decrease and the per-member disjointness.
    """
    members = tuple(cones)
    if not members:
        raise ValueError("need at least one cone")
    for i in range(len(members) - 1):
        if not cone_leq(members[i], members[i + 1], tol):
            raise ValueError(f"input sequence is not increasing at index {i}")
    opposites = tuple(opposite(c, tol=tol) for c in members)
    for i in range(len(opposites) - 1):
        _require(bool(cone_leq(opposites[i + 1], opposites[i], tol)),
                 "opposite cones are not decreasing", i)
    for i, (vis, src) in enumerate(zip(opposites, members)):
        _require(_is_disjoint(vis, src, tol),
                 "opposite cone meets its source cone", i)
    return Funnel(opposites, len(opposites), None)


# --------------------------------------------------------------------------
# dodging and wrapping balls


def avoid_ball_inside(ball: Hyperball, cone: BallCone,
                      tol: Tolerances = DEFAULT_TOLERANCES,
                      budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Subcone of `cone` whose hull avoids the ball's hull.

    Marches the apex along a chord toward the base circle, steered away
    from the ball, until the hulls separate.
    """
    target = _steer_target(cone, ball.center.v)
    levels = _chord_levels(cone, target, budgets.search_rounds, tol)
    ell = ball.ellipsoid()
    for i, level in enumerate(levels):
        if _ball_clear(level, ell, tol):
            _require(bool(cone_leq(level, cone, tol)),
                     "separated level escaped the source cone", i)
            rng = np.random.default_rng(1)
            pts = level.sample_points(budgets.membership_samples, rng)
            bad = int(np.sum(ell.contains(pts,
                                          slack=-tol.containment_slack)))
            _require(bad == 0,
                     f"{bad} sampled points of the witness lie in the ball")
            return level
    raise ConstructionFailure(
        "no chord level separated from the ball before the apex march "
        "exhausted its validity range")


def _chord_exits(apex: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Sphere exit points of the rays from an interior apex through pts."""
    d = pts - apex
    dd = np.sum(d * d, axis=1)
    ad = pts @ apex - float(apex @ apex)  # (p-a)·a rowwise
    aa = float(apex @ apex)
    t = (-ad + np.sqrt(ad * ad + dd * (1.0 - aa))) / dd
    return apex + t[:, None] * d


def wrap_ball_in_complement(ball: Hyperball, cone: BallCone,
                            tol: Tolerances = DEFAULT_TOLERANCES,
                            budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone containing the ball while staying disjoint from `cone`.

    Requires the ball's hull disjoint from the cone's hull.  The apex is
    placed on the separating plane delivered by that disjointness and the
    cap is the padded cover of the ray exits through the ball.
    """
    sep = cone_hyperball_disjoint(cone, ball, tol)
    if not sep.disjoint:
        raise ValueError("ball must be disjoint from the cone")
    w, c = sep.plane  # cone on the positive side
    ell = ball.ellipsoid()
    proj = ell.center - (float(w @ ell.center) - c) * w
    candidates = [proj, 0.5 * (proj + c * w), c * w]
    cloud = ell.boundary_points(_cloud_directions())
    for apex, pad in itertools.product(candidates, (0.02, 0.05, 0.12, 0.25)):
        if np.linalg.norm(apex) >= 1.0 - 1e-9:
            continue
        exits = _chord_exits(apex, cloud)
        mean = exits.mean(axis=0)
        norm = np.linalg.norm(mean)
        if norm < 1e-12:
            continue
        axis = mean / norm
        half = float(np.max(np.arccos(np.clip(exits @ axis, -1.0, 1.0))))
        half += pad
        if half >= math.pi - tol.cap_limit:
            continue
        if float(axis @ apex) >= math.cos(half) - 10.0 * tol.pointedness:
            continue
        region = BallCone(BallPoint(apex),
                          Cap(SphereDirection.normalized(axis), half))
        try:
            inside = hyperball_in_cone(ball, region, tol)
            clear = disjoint(region, cone, tol)
        except DegenerateGeometry:
            continue
        if inside.holds and clear.disjoint:
            rng = np.random.default_rng(2)
            pts = region.sample_points(budgets.membership_samples, rng)
            bad = int(np.sum(cone.contains_many(pts, slack=tol.
                                                containment_slack)))
            _require(bad == 0, f"{bad} sampled witness points lie in the "
                     "forbidden cone")
            return region
    raise ConstructionFailure(
        "no cap-based cone over the ball stayed disjoint from the cone; "
        "the ball may be too eccentric from every admissible apex")


# --------------------------------------------------------------------------
# interpolation paths


def _common_subcone(a: BallCone, b: BallCone,
                    tol: Tolerances) -> BallCone | None:
    """Cone inside both inputs, or None when their caps barely overlap."""
    gamma = angle_between(a.base.axis.v, b.base.axis.v)
    psi_a, psi_b = a.base.half_angle, b.base.half_angle
    if gamma < 1e-12:
        m = a.base.axis.v
        mu = min(psi_a, psi_b)
    else:
        t = float(np.clip((psi_a - psi_b + gamma) / (2.0 * gamma), 0.0, 1.0))
        m = slerp(a.base.axis.v, b.base.axis.v, t)
        mu = min(psi_a - angle_between(m, a.base.axis.v),
                 psi_b - angle_between(m, b.base.axis.v))
    if mu <= 1e-6:
        return None
    psi_w = 0.6 * mu
    for depth in (0.05, 0.02, 0.01, 0.005, 0.002,
                  0.1, 0.2, 0.35, 0.5, 0.7):
        witness = _thin_cone(m, psi_w, depth)
        if witness is None:
            continue
        p = witness.apex.v[None, :]
        if (a.contains_many(p, slack=tol.containment_slack, closed=True)[0]
                and b.contains_many(p, slack=tol.containment_slack,
                                    closed=True)[0]):
            if cone_leq(witness, a, tol) and cone_leq(witness, b, tol):
                return witness
    return None


def _blend_cone(a: BallCone, b: BallCone, t: float) -> BallCone | None:
    axis = slerp(a.base.axis.v, b.base.axis.v, t)
    psi = (1.0 - t) * a.base.half_angle + t * b.base.half_angle
    apex = (1.0 - t) * a.apex.v + t * b.apex.v
    for _ in range(60):
        if float(axis @ apex) < math.cos(psi) - 1e-9:
            return BallCone(BallPoint(apex),
                            Cap(SphereDirection.normalized(axis), psi))
        apex = 0.8 * apex
        psi = max(0.8 * psi, 1e-6)
    return None


def _same_cone(a: BallCone, b: BallCone) -> bool:
    return (np.allclose(a.apex.v, b.apex.v, atol=1e-14)
            and np.allclose(a.base.axis.v, b.base.axis.v, atol=1e-14)
            and abs(a.base.half_angle - b.base.half_angle) <= 1e-14)


def _certify_path(path: ConePath, tol: Tolerances) -> None:
    for i, w in enumerate(path.witnesses):
        _require(bool(cone_leq(w, path.nodes[i], tol)),
                 "path witness escapes its left node", i)
        _require(bool(cone_leq(w, path.nodes[i + 1], tol)),
                 "path witness escapes its right node", i)


def path_connect(cone_a: BallCone, cone_b: BallCone,
                 tol: Tolerances = DEFAULT_TOLERANCES,
                 budgets: Budgets = DEFAULT_BUDGETS,
                 max_subdivisions: int = 10) -> ConePath:
    """Cone sequence from `cone_a` to `cone_b` where every adjacent pair
    shares a certified common subcone.

    Interpolates apex, axis, and opening jointly; the subdivision is halved
    until every adjacency admits a witness.
    """
    if _same_cone(cone_a, cone_b):
        return ConePath((cone_a,), ())
    for k in range(max_subdivisions + 1):
        n = 2 ** k
        inner = [_blend_cone(cone_a, cone_b, i / n) for i in range(1, n)]
        if any(c is None for c in inner):
            continue
        nodes = [cone_a, *inner, cone_b]
        witnesses = []
        for i in range(len(nodes) - 1):
            w = _common_subcone(nodes[i], nodes[i + 1], tol)
            if w is None:
                break
            witnesses.append(w)
        else:
            path = ConePath(tuple(nodes), tuple(witnesses))
            _certify_path(path, tol)
            return path
    raise ConstructionFailure(
        "no subdivision produced common subcones along the whole path")


def _azimuth(d: np.ndarray, pole: np.ndarray, e1: np.ndarray,
             e2: np.ndarray, fallback: float) -> float:
    x, y = float(d @ e1), float(d @ e2)
    if x * x + y * y < 1e-20:
        return fallback
    return math.atan2(y, x)


def path_connect_in_complement(forbidden: BallCone, cone_a: BallCone,
                               cone_b: BallCone,
                               tol: Tolerances = DEFAULT_TOLERANCES,
                               budgets: Budgets = DEFAULT_BUDGETS
                               ) -> ConePath:
    """Cone path from `cone_a` to `cone_b` all of whose nodes and witnesses
    stay disjoint from the forbidden cone.

    Routes thin near-sphere cones around the forbidden cap: out along the
    meridian, across at a safe polar angle, and back down.  Both endpoints
    must be disjoint from the forbidden cone.
    """
    for c, name in ((cone_a, "first"), (cone_b, "second")):
        if not disjoint(forbidden, c, tol).disjoint:
            raise ValueError(f"{name} endpoint is not disjoint from the "
                             "forbidden cone")
    if _same_cone(cone_a, cone_b):
        return ConePath((cone_a,), ())
    pole = forbidden.base.axis.v
    psi_f = forbidden.base.half_angle
    e1, e2 = orthonormal_frame(pole)
    ax_a, ax_b = cone_a.base.axis.v, cone_b.base.axis.v
    phi_a, phi_b = angle_between(ax_a, pole), angle_between(ax_b, pole)
    theta = min(max(phi_a, phi_b), math.pi - 0.02)
    az_b = _azimuth(ax_b, pole, e1, e2, 0.0)
    az_a = _azimuth(ax_a, pole, e1, e2, az_b)
    if abs(phi_b - math.pi) < 1e-9 and abs(phi_a - math.pi) >= 1e-9:
        az_b = az_a
    sweep = az_b - az_a
    if sweep > math.pi:
        sweep -= 2.0 * math.pi
    if sweep < -math.pi:
        sweep += 2.0 * math.pi

    def axis_at(phi: float, az: float) -> np.ndarray:
        return (math.cos(phi) * pole
                + math.sin(phi) * (math.cos(az) * e1 + math.sin(az) * e2))

    psi_t0 = min(cone_a.base.half_angle, cone_b.base.half_angle,
                 0.5 * (min(phi_a, phi_b) - psi_f), 0.15)
    depth0 = 0.05
    for round_ in range(6):
        psi_t = psi_t0 * (0.5 ** round_)
        depth = depth0 * (0.5 ** round_)
        if psi_t <= 1e-5:
            break
        step = 0.8 * psi_t
        axes: list[np.ndarray] = []
        n1 = max(1, int(math.ceil(abs(theta - phi_a) / step)))
        for i in range(n1 + 1):
            axes.append(axis_at(phi_a + (theta - phi_a) * i / n1, az_a))
        n2 = max(1, int(math.ceil(abs(sweep) * math.sin(theta) / step)))
        for i in range(1, n2 + 1):
            axes.append(axis_at(theta, az_a + sweep * i / n2))
        n3 = max(1, int(math.ceil(abs(theta - phi_b) / step)))
        for i in range(1, n3 + 1):
            axes.append(axis_at(theta + (phi_b - theta) * i / n3, az_b))
        thin = [_thin_cone(ax, psi_t, depth) for ax in axes]
        if any(t is None for t in thin):
            continue
        nodes = [cone_a, *thin, cone_b]
        if not all(_is_disjoint(node, forbidden, tol) for node in thin):
            continue
        witnesses = []
        for i in range(len(nodes) - 1):
            w = _common_subcone(nodes[i], nodes[i + 1], tol)
            if w is None or not _is_disjoint(w, forbidden, tol):
                break
            witnesses.append(w)
        else:
            path = ConePath(tuple(nodes), tuple(witnesses))
            _certify_path(path, tol)
            for i, node in enumerate(path.nodes[1:-1], start=1):
                _require(_is_disjoint(node, forbidden, tol),
                         "path node meets the forbidden cone", i)
            return path
    raise ConstructionFailure(
        "could not route a thin-cone path around the forbidden cone")


# --------------------------------------------------------------------------
# complement constructions


def shrink_for_connectivity(cone_a: BallCone, cone_b: BallCone,
                            tol: Tolerances = DEFAULT_TOLERANCES,
                            budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Subcone of `cone_a` whose complement meshes with that of `cone_b`.

    When the caps are separated the result is additionally disjoint from
    `cone_b`; when they overlap the result sits inside both cones, so the
    two complements share a common complement family.
    """
    gamma = angle_between(cone_a.base.axis.v, cone_b.base.axis.v)
    total = cone_a.base.half_angle + cone_b.base.half_angle
    if abs(gamma - total) <= tol.degenerate_window:
        raise DegenerateGeometry("cap boundaries are tangent; perturb inputs")
    if gamma > total:
        target = _steer_target(cone_a, cone_b.base.axis.v)
        for i, level in enumerate(_chord_levels(cone_a, target,
                                                budgets.search_rounds, tol)):
            if _is_disjoint(level, cone_b, tol):
                _require(bool(cone_leq(level, cone_a, tol)),
                         "shrunken cone escaped its source", i)
                return level
        raise ConstructionFailure(
            "apex march never separated the shrunken cone from the second "
            "cone")
    sub = _common_subcone(cone_a, cone_b, tol)
    _require(sub is not None,
             "cap overlap too thin to host a common subcone")
    return sub


def common_complement_cone(cone_a: BallCone, cone_b: BallCone,
                           tol: Tolerances = DEFAULT_TOLERANCES,
                           budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone disjoint from both inputs; the inputs must be disjoint.

    Aims a thin near-sphere cone at the direction with the largest angular
    clearance from both closed caps.
    """
    if not disjoint(cone_a, cone_b, tol).disjoint:
        raise ValueError("input cones must be disjoint")
    axes = np.array([cone_a.base.axis.v, cone_b.base.axis.v])
    halves = np.array([cone_a.base.half_angle, cone_b.base.half_angle])
    n = 512
    k = np.arange(n)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    zs = 1.0 - 2.0 * (k + 0.5) / n
    phis = 2.0 * math.pi * k / golden
    grid = np.column_stack([np.sqrt(1 - zs * zs) * np.cos(phis),
                            np.sqrt(1 - zs * zs) * np.sin(phis), zs])
    extra = [-axes[0], -axes[1],
             slerp(axes[0], axes[1], 0.5),
             -slerp(axes[0], axes[1], 0.5)]
    cand = np.vstack([grid, extra])
    ang = np.arccos(np.clip(cand @ axes.T, -1.0, 1.0))
    clearance = np.min(ang - halves[None, :], axis=1)
    best = int(np.argmax(clearance))
    m, clear = cand[best], float(clearance[best])
    _require(clear > 1e-6, "no direction clears both closed caps")
    psi = min(0.45 * clear, 0.2)
    for n_ in range(1, budgets.search_rounds + 1):
        witness = _thin_cone(m, psi, 0.5 ** n_)
        if witness is None:
            break
        if (_is_disjoint(witness, cone_a, tol)
                and _is_disjoint(witness, cone_b, tol)):
            rng = np.random.default_rng(3)
            pts = witness.sample_points(budgets.membership_samples, rng)
            bad_a = int(np.sum(cone_a.contains_many(
                pts, slack=tol.containment_slack)))
            bad_b = int(np.sum(cone_b.contains_many(
                pts, slack=tol.containment_slack)))
            _require(bad_a == 0 and bad_b == 0,
                     f"{bad_a + bad_b} sampled witness points lie inside "
                     "an input cone")
            return witness
    raise ConstructionFailure(
        "thin cone in the cleared direction never separated from both "
        "inputs")


# --------------------------------------------------------------------------
# cross-shell enclosures


def _grow_pad(cone: BallCone) -> BallCone:
    """Slightly enlarged copy: wider cap, apex pulled back along the axis
    so the source apex stays on the new cone's central ray."""
    psi = min(cone.base.half_angle + 0.01, math.pi - 2e-3)
    gap = 1.0 - 1e-6 - float(np.linalg.norm(cone.apex.v))
    delta = min(0.02, 0.5 * gap)
    apex = cone.apex.v - delta * cone.base.axis.v
    return BallCone(BallPoint(apex), Cap(cone.base.axis, psi))


def _quick_cloud_ok(samples: np.ndarray, radius: float, tau: float,
                    region: BallCone, tol: Tolerances) -> bool:
    clouds = [_support_cloud(p, radius, tau) for p in samples]
    pts = np.vstack(clouds)
    if np.any(np.linalg.norm(pts, axis=1) >= 1.0):
        return False
    return bool(np.all(region.contains_many(pts,
                                            slack=tol.containment_slack,
                                            closed=True)))


def _full_ball_checks(samples: np.ndarray, radius: float, shell: Hyperboloid,
                      region: BallCone, tol: Tolerances,
                      count: int = 6) -> bool:
    margins = region.interior_margins(samples)
    order = np.argsort(margins)
    picked = samples[order[:count]]
    try:
        return all(hyperball_in_cone(Hyperball(shell, BallPoint(p), radius),
                                     region, tol).holds for p in picked)
    except DegenerateGeometry:
        return False


def enclose_shadow(cone: BallCone, sigma: float, tau: float,
                   tol: Tolerances = DEFAULT_TOLERANCES,
                   budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone on shell `tau` containing the causal shadow of a cone region
    living on shell `sigma`.

    The shadow is the metric thickening of the region by the cross-shell
    shadow radius; near the sphere the thickening collapses, so a padded
    cap with a pulled-back apex always suffices.
    """
    radius = shadow_radius(sigma, tau, tol)
    shell = Hyperboloid(tau)
    if radius <= 1e-12 * tau:
        grown = _grow_pad(cone)
        _require(bool(cone_leq(cone, grown, tol)),
                 "padded copy failed to contain the source cone")
        return grown
    samples = _hull_boundary_samples(cone)
    axis = cone.base.axis.v
    for pad, rho in itertools.product((0.05, 0.12, 0.25, 0.45, 0.7,
                                       1.0, 1.35, 1.8, 2.2),
                                      (0.0, 0.3, 0.6, 0.85, 0.97,
                                       0.995, 0.9995)):
        psi = cone.base.half_angle + pad
        if psi >= math.pi - tol.cap_limit:
            continue
        if -rho >= math.cos(psi) - 10.0 * tol.pointedness:
            continue
        region = BallCone(BallPoint(-rho * axis),
                          Cap(cone.base.axis, psi))
        if not _quick_cloud_ok(samples, radius, tau, region, tol):
            continue
        if not cone_leq(cone, region, tol):
            continue
        if not _full_ball_checks(samples, radius, shell, region, tol):
            continue
        rng = np.random.default_rng(4)
        base_pts = cone.sample_points(budgets.membership_samples, rng)
        thick = _thickened_samples(base_pts, radius, tau, rng)
        thick = thick[np.linalg.norm(thick, axis=1) < 1.0]
        bad = _membership_violations(region, thick, tol)
        _require(bad == 0,
                 f"{bad} sampled shadow points escape the enclosure")
        return region
    raise ConstructionFailure(
        "no padded cap enclosed the cross-shell shadow of the cone")


def shrink_across_shells(cone: BallCone, sigma: float, tau: float,
                         tol: Tolerances = DEFAULT_TOLERANCES,
                         budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone on shell `tau` sitting so deep inside `cone` that even its
    cross-shell shadow stays inside `cone`.

    Realized by a thin cone along the source axis with a near-sphere apex;
    points deep along the axis are metrically far from the source boundary.
    """
    radius = shadow_radius(sigma, tau, tol)
    shell = Hyperboloid(tau)
    if radius <= 1e-12 * tau:
        psi = max(cone.base.half_angle - 0.01, 0.5 * cone.base.half_angle)
        inner = BallCone(cone.apex, Cap(cone.base.axis, psi))
        _require(bool(cone_leq(inner, cone, tol)),
                 "trimmed copy failed to stay inside the source cone")
        return inner
    axis = cone.base.axis.v
    psi0 = min(0.5 * cone.base.half_angle, 0.15)
    for j, n_ in itertools.product(range(4), range(1, 31)):
        psi = psi0 * (0.5 ** j)
        witness = _thin_cone(axis, psi, 0.5 ** n_)
        if witness is None:
            continue
        if not cone_leq(witness, cone, tol):
            continue
        samples = _hull_boundary_samples(witness, n_theta=6,
                                         s_depths=(0.05, 0.3, 0.7, 0.95))
        if not _quick_cloud_ok(samples, radius, tau, cone, tol):
            continue
        if not _full_ball_checks(samples, radius, shell, cone, tol,
                                 count=4):
            continue
        rng = np.random.default_rng(5)
        base_pts = witness.sample_points(budgets.membership_samples, rng)
        thick = _thickened_samples(base_pts, radius, tau, rng)
        thick = thick[np.linalg.norm(thick, axis=1) < 1.0]
        bad = _membership_violations(cone, thick, tol)
        _require(bad == 0,
                 f"{bad} thickened sample points escape the source cone")
        return witness
    raise ConstructionFailure(
        "no thin axial cone kept its cross-shell shadow inside the source "
        "cone")


# --------------------------------------------------------------------------
# boosts and robustness


def contracting_boosts(cone: BallCone,
                       tol: Tolerances = DEFAULT_TOLERANCES,
                       budgets: Budgets = DEFAULT_BUDGETS
                       ) -> ContractingBoosts:
    """Open direction family and boost factory contracting a cone into
    itself.

    After normalizing the apex to the center, every direction interior to
    the normalized cap works: boosts move all cap directions along great
    circles toward the boost direction, and a cap of opening below a right
    angle is geodesically convex.
    """
    frame = _normalizing_transform(cone.apex)
    frame_inv = frame.inverse()
    cap_n = cap_image(frame, cone.base, tol=tol)
    psi = cap_n.half_angle

    def maker(l: SphereDirection, chi: float) -> LorentzTransform:
        gap = angle_between(l.v, cap_n.axis.v)
        if gap >= psi * (1.0 - 1e-9):
            raise ValueError(
                "direction is not interior to the normalized cap")
        if chi < 0.0:
            raise ValueError("rapidity must be non-negative")
        return frame_inv @ LorentzTransform.boost(l.v, chi) @ frame

    ring = [rotate_toward(cap_n.axis.v, cap_n.boundary_point(th), 0.5 * psi)
            for th in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False)]
    directions = (SphereDirection(cap_n.axis.v),
                  *(SphereDirection.normalized(r) for r in ring))
    for d in directions[:3]:
        for chi in (0.5, 1.0, 2.0):
            mapped = map_cone(maker(d, chi), cone, tol)
            _require(bool(cone_leq(mapped, cone, tol)),
                     "boosted cone escaped the source cone")
    return ContractingBoosts(directions, psi, maker)


def escape_ball(cone: BallCone, ball: Hyperball, direction: SphereDirection,
                nmax: int,
                tol: Tolerances = DEFAULT_TOLERANCES,
                budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Smallest boost count n <= nmax whose contraction of the cone clears
    the ball; the direction must be admissible for `contracting_boosts`.
    """
    family = contracting_boosts(cone, tol, budgets)
    ell = ball.ellipsoid()
    for n in range(nmax + 1):
        mapped = cone if n == 0 else map_cone(
            family.boost_maker(direction, float(n)), cone, tol)
        if n > 0 and not cone_leq(mapped, cone, tol):
            raise ConstructionFailure(
                "boosted cone escaped the source cone", failing_index=n)
        if _ball_clear(mapped, ell, tol):
            return n
    raise ConstructionFailure(
        f"boosts up to {nmax} never cleared the ball")


def robust_enclosure_lorentz(cone: BallCone,
                             generators: Sequence[LorentzTransform],
                             tol: Tolerances = DEFAULT_TOLERANCES,
                             budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone containing every image of `cone` under the generators, their
    inverses, and all products of two such factors.

    A finite surrogate for robustness under a neighborhood of the identity:
    the enclosure covers the sampled orbit with an explicit margin.
    """
    gens = list(generators)
    ring: list[LorentzTransform] = [LorentzTransform.identity()]
    for g in gens:
        ring.extend([g, g.inverse()])
    words = list(ring)
    words.extend(a @ b for a, b in itertools.product(ring, ring))
    images = [map_cone(w, cone, tol) for w in words]
    caps = [img.base for img in images]
    cover = _covering_cap(caps, 0.0, tol)
    if cover is None:
        raise ConstructionFailure(
            "no covering cap enclosed the sampled Lorentz orbit of the cone")
    axis = cover.axis.v
    cap_need = max(angle_between(axis, c.axis.v) + c.half_angle for c in caps)
    apexes = np.array([img.apex.v for img in images])
    for rho, pad in itertools.product(
            (0.3, 0.6, 0.85, 0.97, 0.995, 1.0 - 1e-4),
            (0.02, 0.05, 0.12, 0.25)):
        # the cap must also cover where rays from the candidate apex
        # through every image apex leave the sphere
        e = -rho * axis
        d = apexes - e
        ad = d @ e
        dd = np.einsum("ij,ij->i", d, d)
        disc = np.sqrt(ad * ad + dd * (1.0 - rho * rho))
        t = np.where(ad > 0.0, (1.0 - rho * rho) / (ad + disc),
                     (disc - ad) / dd)
        exits = e + t[:, None] * d
        exits /= np.linalg.norm(exits, axis=1)[:, None]
        apex_need = float(np.max(np.arccos(np.clip(exits @ axis, -1.0,
                                                   1.0))))
        psi = max(cap_need, apex_need) + pad
        if psi >= math.pi - tol.cap_limit:
            continue
        if -rho >= math.cos(psi) - 10.0 * tol.pointedness:
            continue
        region = BallCone(BallPoint(e), Cap(cover.axis, psi))
        if all(cone_leq(img, region, tol) for img in images):
            rng = np.random.default_rng(6)
            per = max(1, budgets.membership_samples // len(images))
            pts = np.vstack([img.sample_points(per, rng)
                             for img in images])
            bad = _membership_violations(region, pts, tol)
            _require(bad == 0,
                     f"{bad} sampled orbit points escape the enclosure")
            return region
    raise ConstructionFailure(
        "no covering cap enclosed the sampled Lorentz orbit of the cone")


# --------------------------------------------------------------------------
# translations across the light cone


def lightray_offset(u: float, tau: float) -> float:
    """Spatial offset profile of the shell's asymptotic light rays: the
    point at parameter u of the ray sits at radial distance
    tau*(1-u^2)/(2u) from the axis origin."""
    if u <= 0.0:
        raise ValueError("ray parameter must be positive")
    return tau * (1.0 - u * u) / (2.0 * u)


def lightray_point(u: float, tau: float,
                   direction: np.ndarray) -> FourVector:
    """Point at parameter u on the shell's asymptotic light ray toward a
    unit direction: time u*tau + v(u), position v(u)*direction."""
    v = lightray_offset(u, tau)
    d = np.asarray(direction, dtype=float).reshape(3)
    return FourVector.from_parts(u * tau + v, v * d)


def interval_expansion(u: float, u_prime: float, t: float,
                       direction_dot: float, tau: float) -> float:
    """Minkowski square of (a(u) + t*e0 - a'(u')) for points on opposite
    light rays, expanded into its five closed-form terms."""
    v = lightray_offset(u, tau)
    vp = lightray_offset(u_prime, tau)
    return (t * t + 2.0 * tau * tau + 2.0 * t * (u * tau + v)
            - 2.0 * (t + u * tau + v) * (u_prime * tau + vp)
            + 2.0 * v * vp * direction_dot)


def translate_enclosure(cone: BallCone, tau: float,
                        translations: Sequence[FourVector],
                        tol: Tolerances = DEFAULT_TOLERANCES,
                        budgets: Budgets = DEFAULT_BUDGETS) -> BallCone:
    """Cone whose causal completion swallows the source completion shifted
    by every given future-directed translation.

    Normalizes the apex to the center, dominates the translations by one
    time translation, covers the shifted region's causal shadow on the
    shell with a padded cap, and transports the cover back.
    """
    shell = Hyperboloid(tau)
    trans = [t if isinstance(t, FourVector)
             else FourVector.from_array(np.asarray(t, dtype=float))
             for t in translations]
    for i, t in enumerate(trans):
        if t.x0 < float(np.linalg.norm(t.xs)) - tol.linear_identity:
            raise ValueError(
                f"translation {i} is not future-directed (closure of the "
                "forward cone)")
    frame = _normalizing_transform(cone.apex)
    frame_inv = frame.inverse()
    cone_n = map_cone(frame, cone, tol)
    shifted = [frame.apply(t) for t in trans]
    t_dom = max((s.x0 + float(np.linalg.norm(s.xs)) for s in shifted),
                default=0.0)
    if t_dom <= 1e-14 * tau:
        grown = _grow_pad(cone)
        _require(bool(cone_leq(cone, grown, tol)),
                 "padded copy failed to contain the source cone")
        return grown

    axis_n = cone_n.base.axis.v
    psi_n = cone_n.base.half_angle
    ring = cone_n.base.boundary_points(8)
    inner = [axis_n] + [slerp(axis_n, r, 0.5) for r in ring[:4]]
    dirs = np.vstack([ring, inner])
    s_grid = np.array([0.05, 0.15, 0.3, 0.5, 0.7, 0.85, 0.95, 0.99])
    shadows: list[tuple[np.ndarray, float]] = []
    for d in dirs:
        for s in s_grid:
            base = lift_from_ball(BallPoint(s * d), shell)
            x = FourVector.from_parts(base.x0 + t_dom, base.xs)
            sq = x.square()
            if sq <= tol.linear_identity:
                continue
            sig = math.sqrt(sq)
            center = x.xs / x.x0
            shadows.append((center, shadow_radius(sig, tau, tol)))
    clouds = np.vstack([_support_cloud(c, r, tau) for c, r in shadows])
    clouds = clouds[np.linalg.norm(clouds, axis=1) < 1.0 - 1e-12]

    for pad, rho in itertools.product(
            (0.05, 0.12, 0.25, 0.45, 0.7, 1.0, 1.35, 1.8, 2.2),
            (0.3, 0.6, 0.85, 0.97, 0.995, 0.9995)):
        psi = psi_n + pad
        if psi >= math.pi - tol.cap_limit:
            continue
        if -rho >= math.cos(psi) - 10.0 * tol.pointedness:
            continue
        region_n = BallCone(BallPoint(-rho * axis_n), Cap(cone_n.base.axis,
                                                          psi))
        if not np.all(region_n.contains_many(clouds,
                                             slack=tol.containment_slack,
                                             closed=True)):
            continue
        if not cone_leq(cone_n, region_n, tol):
            continue
        worst = sorted(shadows, key=lambda cr: float(
            region_n.interior_margins(cr[0][None, :])[0]))[:4]
        try:
            ok = all(hyperball_in_cone(
                Hyperball(shell, BallPoint(c), r), region_n, tol).holds
                for c, r in worst)
        except DegenerateGeometry:
            ok = False
        if not ok:
            continue
        region = map_cone(frame_inv, region_n, tol)
        rng = np.random.default_rng(7)
        n_checks = 12
        us = cone.sample_points(n_checks, rng)
        target = Hypercone(shell, region)
        good = True
        for u in us:
            base = lift_from_ball(BallPoint(u), shell)
            for t in trans:
                x = base + t
                if not in_causal_completion(x, target, tol):
                    good = False
                    break
            if not good:
                break
        if not good:
            continue
        rng2 = np.random.default_rng(8)
        base_pts = cone.sample_points(budgets.membership_samples, rng2)
        xs0 = tau / np.sqrt(1.0 - np.sum(base_pts * base_pts, axis=1))
        pick = rng2.integers(0, len(trans), size=base_pts.shape[0])
        t_arr = np.array([t.components for t in trans])[pick]
        ev_t = xs0 + t_arr[:, 0]
        ev_s = base_pts * xs0[:, None] + t_arr[:, 1:]
        shadow_centers = ev_s / ev_t[:, None]
        bad = _membership_violations(region, shadow_centers, tol)
        _require(bad == 0,
                 f"{bad} sampled shifted shadow centers escape the "
                 "enclosure")
        return region
    raise ConstructionFailure(
        "no padded cap enclosed the translated completion's shadow")
