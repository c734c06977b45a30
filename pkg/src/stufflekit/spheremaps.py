"""Degree and swept-volume quadrature for maps into the unit 3-sphere.

Everything is integrated in suspension coordinates: the chart
mu(lam, u) = (sin(lam/2), cos(lam/2) u) carries [-pi, pi] x S^2 onto S^3,
collapsing the ends to points.  The pullback of the volume form under any
smooth map is evaluated as a 3x3 determinant between the map's coordinate
derivatives and a positively oriented orthonormal frame at the image point;
S^2 carries a Gauss-Legendre x uniform-longitude product grid, and the
latitude interval carries Gauss-Legendre nodes.  All quadrature is
deterministic, so tolerances are reproducible run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

VOL_S3 = 2.0 * math.pi ** 2
BALL_NORMALIZATION = math.pi ** 2

# Sign making the (latitude, colatitude, longitude) coordinate frame agree
# with the orientation for which the identity map has degree +1.
_CHART_SIGN = -1.0


class CollarMismatchError(ValueError):
    """The two ball maps disagree on the overlap sphere."""


class DegenerateCapError(ValueError):
    """The requested latitude collapses the cap to a point."""


class NumericEvaluationError(ArithmeticError):
    """A map or derivative evaluated to a non-finite value."""


@dataclass
class SphereMap:
    """A smooth map into the unit sphere of R^4, given componentwise.

    ``domain`` selects the evaluator signature:
      - "s3":   fn(points (N,4)) -> (N,4); optional ``jacobian(points)`` is
                the ambient (N,4,4) derivative d f_a / d x_b.
      - "s2":   fn(points (N,3)) -> (N,4)  (boundary spheres; not integrated
                directly).
      - "ball": fn(lam (N,), u (N,3)) -> (N,4) in suspension coordinates on
                ``lam_range``; optional ``jacobian(lam, u, t1, t2)`` returns
                (N,3,4) rows (d/dlam, d/dt1, d/dt2).
    Evaluators must extend smoothly a little past their nominal domain so
    central differences at the boundary stay inside the formula's reach.
    """

    name: str
    fn: Callable
    domain: str = "s3"
    jacobian: Callable | None = None
    fd_step: float = 1e-5
    lam_range: tuple[float, float] = (-math.pi, math.pi)

    def __call__(self, *args) -> np.ndarray:
        out = np.asarray(self.fn(*args), dtype=float)
        if not np.all(np.isfinite(out)):
            raise NumericEvaluationError(f"map {self.name!r} produced non-finite values")
        norms = np.linalg.norm(out, axis=-1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise NumericEvaluationError(f"map {self.name!r} left the unit sphere")
        return out / norms[..., None]


@dataclass
class QuadratureGrid:
    """Product quadrature: Gauss-Legendre colatitude and latitude, uniform longitude."""

    order: int = 24

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("grid order must be >= 2")
        n_theta = self.order
        n_phi = 2 * self.order
        x, w = np.polynomial.legendre.leggauss(n_theta)  # x = cos(theta)
        phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
        ct = np.repeat(x, n_phi)
        st = np.sqrt(1.0 - ct ** 2)
        cp = np.tile(np.cos(phi), n_theta)
        sp = np.tile(np.sin(phi), n_theta)
        self.s2_nodes = np.column_stack([st * cp, st * sp, ct])
        # colatitude and longitude tangents; Gauss nodes never hit the poles
        self.s2_t1 = np.column_stack([ct * cp, ct * sp, -st])
        self.s2_t2 = np.column_stack([-sp, cp, np.zeros_like(sp)])
        self.s2_weights = np.repeat(w, n_phi) * (2.0 * math.pi / n_phi)

    def refined(self) -> "QuadratureGrid":
        """Grid with doubled nodes along every axis."""
        return QuadratureGrid(self.order * 2)

    def lambda_rule(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        x, w = np.polynomial.legendre.leggauss(self.order)
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        return mid + half * x, half * w


def suspension_point(lam: np.ndarray, u: np.ndarray) -> np.ndarray:
    """The chart mu(lam, u) = (sin(lam/2), cos(lam/2) u)."""
    lam = np.asarray(lam, dtype=float)
    half = 0.5 * lam
    return np.column_stack([np.sin(half), np.cos(half)[:, None] * u])


def _suspension_rows(lam, u, t1, t2) -> np.ndarray:
    half = 0.5 * np.asarray(lam, dtype=float)
    n = len(half)
    rows = np.zeros((n, 3, 4))
    rows[:, 0, 0] = 0.5 * np.cos(half)
    rows[:, 0, 1:] = -0.5 * np.sin(half)[:, None] * u
    rows[:, 1, 1:] = np.cos(half)[:, None] * t1
    rows[:, 2, 1:] = np.cos(half)[:, None] * t2
    return rows


def suspension_map() -> SphereMap:
    """The chart itself as a ball map (the identity in these coordinates)."""
    return SphereMap(
        "suspension",
        lambda lam, u: suspension_point(lam, u),
        domain="ball",
        jacobian=lambda lam, u, t1, t2: _suspension_rows(lam, u, t1, t2),
    )


def _oriented_frames(q: np.ndarray) -> np.ndarray:
    """Orthonormal tangent frames F (N,3,4) with (q, F) positively oriented.

    Gram-Schmidt against the ambient axes, dropping per point the axis most
    parallel to q so the completion never degenerates.
    """
    n = len(q)
    frames = np.zeros((n, 3, 4))
    drop = np.argmax(np.abs(q), axis=1)
    axes_for = {d: [a for a in range(4) if a != d] for d in range(4)}
    for d, axes in axes_for.items():
        mask = drop == d
        if not mask.any():
            continue
        qs = q[mask]
        prev = [qs]
        for j, axis in enumerate(axes):
            v = np.zeros((mask.sum(), 4))
            v[:, axis] = 1.0
            for p in prev:
                v -= (np.sum(v * p, axis=1))[:, None] * p
            norms = np.linalg.norm(v, axis=1)
            v /= norms[:, None]
            frames[mask, j, :] = v
            prev.append(v)
    stacked = np.concatenate([q[:, None, :], frames], axis=1)
    flip = np.linalg.det(stacked) < 0
    frames[flip, 1, :], frames[flip, 2, :] = (
        frames[flip, 2, :].copy(), frames[flip, 1, :].copy(),
    )
    return frames


def _cylinder_rows(m: SphereMap, lam, u, t1, t2) -> np.ndarray:
    """Coordinate derivative rows (N,3,4) of the map in suspension coordinates."""
    h = m.fd_step
    if m.domain == "ball":
        if m.jacobian is not None:
            rows = np.asarray(m.jacobian(lam, u, t1, t2), dtype=float)
        else:
            rows = np.empty((len(lam), 3, 4))
            rows[:, 0] = (m(lam + h, u) - m(lam - h, u)) / (2 * h)
            for j, t in ((1, t1), (2, t2)):
                up = math.cos(h) * u + math.sin(h) * t
                dn = math.cos(h) * u - math.sin(h) * t
                rows[:, j] = (m(lam, up) - m(lam, dn)) / (2 * h)
    elif m.domain == "s3":
        p = suspension_point(lam, u)
        chart = _suspension_rows(lam, u, t1, t2)
        if m.jacobian is not None:
            jac = np.asarray(m.jacobian(p), dtype=float)  # (N,4,4)
            rows = np.einsum("nab,nrb->nra", jac, chart)
        else:
            rows = np.empty((len(lam), 3, 4))
            for j in range(3):
                direction = chart[:, j, :]
                scale = np.linalg.norm(direction, axis=1)
                safe = np.where(scale > 1e-14, scale, 1.0)
                unit = direction / safe[:, None]
                plus = m(math.cos(h) * p + math.sin(h) * unit)
                minus = m(math.cos(h) * p - math.sin(h) * unit)
                rows[:, j, :] = (plus - minus) / (2 * h) * scale[:, None]
    else:
        raise ValueError(f"cannot integrate over domain {m.domain!r}")
    if not np.all(np.isfinite(rows)):
        raise NumericEvaluationError(f"derivative of {m.name!r} is not finite")
    return rows


def _image_points(m: SphereMap, lam, u) -> np.ndarray:
    if m.domain == "ball":
        return m(lam, u)
    return m(suspension_point(lam, u))


def pullback_volume(m: SphereMap, lo: float, hi: float, grid: QuadratureGrid) -> float:
    """Integral of the pulled-back volume form over [lo, hi] x S^2 (unnormalized)."""
    lam_nodes, lam_weights = grid.lambda_rule(lo, hi)
    contributions = []
    for lam_k, w_k in zip(lam_nodes, lam_weights):
        lam = np.full(len(grid.s2_nodes), lam_k)
        u, t1, t2 = grid.s2_nodes, grid.s2_t1, grid.s2_t2
        q = _image_points(m, lam, u)
        rows = _cylinder_rows(m, lam, u, t1, t2)
        frames = _oriented_frames(q)
        mats = np.einsum("nrk,nbk->nrb", rows, frames)
        dets = np.linalg.det(mats)
        contributions.append(w_k * float(np.sum(dets * grid.s2_weights)))
    # pairwise summation keeps the reduction order deterministic
    while len(contributions) > 1:
        paired = [sum(contributions[i:i + 2]) for i in range(0, len(contributions), 2)]
        contributions = paired
    total = contributions[0] if contributions else 0.0
    return _CHART_SIGN * total


def sphere_volume(grid: QuadratureGrid) -> float:
    """vol(S^3) by the same quadrature; reference value 2 pi^2."""
    return pullback_volume(suspension_map(), -math.pi, math.pi, grid)


def degree(m: SphereMap, grid: QuadratureGrid) -> float:
    """Mapping degree of a self-map of S^3 by pullback-volume quadrature."""
    if m.domain != "s3":
        raise ValueError("degree is defined for maps with domain S^3")
    return pullback_volume(m, -math.pi, math.pi, grid) / VOL_S3


def nambu_goto_alpha(phi_plus: SphereMap, phi_minus: SphereMap,
                     grid: QuadratureGrid, collar_tol: float = 1e-8) -> float:
    """Normalized swept volume of the plus-side ball extension, modulo one.

    ``phi_plus`` lives on [-pi, 0] x S^2 and ``phi_minus`` on [0, pi] x S^2;
    they must agree on the overlap sphere at latitude 0.  Exchanging either
    extension for another admissible one shifts the value by an integer, so
    the class modulo 1 is well defined.  The normalization is pi^2 (half the
    sphere volume), which makes the value of a latitude cap equal to its
    normalized volume.
    """
    for side, rng in ((phi_plus, (-math.pi, 0.0)), (phi_minus, (0.0, math.pi))):
        if side.domain != "ball":
            raise ValueError("ball extensions must have domain 'ball'")
        if not np.allclose(side.lam_range, rng, atol=1e-12):
            raise ValueError(f"{side.name!r} is not parametrized on {rng}")
    check = QuadratureGrid(max(6, grid.order // 4))
    lam0 = np.zeros(len(check.s2_nodes))
    gap = np.max(np.linalg.norm(
        phi_plus(lam0, check.s2_nodes) - phi_minus(lam0, check.s2_nodes), axis=1))
    if gap > collar_tol:
        raise CollarMismatchError(f"extensions differ by {gap:.3e} on the overlap sphere")
    raw = pullback_volume(phi_plus, -math.pi, 0.0, grid)
    return float(np.mod(raw / BALL_NORMALIZATION, 1.0))


def mercator(lam: float, grid: QuadratureGrid | None = None) -> tuple[float, SphereMap]:
    """Normalized volume of the latitude cap B_lam and its boundary sphere map.

    The cap is mu([-pi, lam] x S^2); the returned value is vol(B_lam)/pi^2,
    computed by quadrature (closed form 1 + (lam + sin lam)/pi).
    """
    if not -math.pi < lam < math.pi:
        raise DegenerateCapError("latitude must lie strictly inside (-pi, pi)")
    grid = grid or QuadratureGrid()
    vol = pullback_volume(suspension_map(), -math.pi, lam, grid)
    half = 0.5 * lam
    boundary = SphereMap(
        f"cap-boundary({lam:.6g})",
        lambda u, h=half: np.column_stack(
            [np.full(len(u), math.sin(h)), math.cos(h) * np.asarray(u, dtype=float)]
        ),
        domain="s2",
    )
    return vol / BALL_NORMALIZATION, boundary


def cap_extension(lam0: float, side: str) -> SphereMap:
    """Standard ball extension of the latitude-lam0 boundary sphere.

    The plus side reparametrizes [-pi, 0] onto [-pi, lam0], the minus side
    [0, pi] onto [lam0, pi]; both collapse their far end to a point.
    """
    if side == "plus":
        lo, hi, rng = -math.pi, lam0, (-math.pi, 0.0)

        def reparam(lam):
            return lo + (hi - lo) * (lam + math.pi) / math.pi
    elif side == "minus":
        lo, hi, rng = lam0, math.pi, (0.0, math.pi)

        def reparam(lam):
            return lo + (hi - lo) * lam / math.pi
    else:
        raise ValueError("side must be 'plus' or 'minus'")
    scale = (hi - lo) / math.pi

    def fn(lam, u):
        return suspension_point(reparam(np.asarray(lam, dtype=float)), u)

    def jac(lam, u, t1, t2):
        rows = _suspension_rows(reparam(np.asarray(lam, dtype=float)), u, t1, t2)
        rows = rows.copy()
        rows[:, 0, :] *= scale
        return rows

    return SphereMap(f"cap-{side}({lam0:.6g})", fn, domain="ball",
                     jacobian=jac, lam_range=rng)


# -- map catalog -------------------------------------------------------------

def quaternion_multiply(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    w1, v1 = p[:, 0], p[:, 1:]
    w2, v2 = q[:, 0], q[:, 1:]
    w = w1 * w2 - np.sum(v1 * v2, axis=1)
    v = w1[:, None] * v2 + w2[:, None] * v1 + np.cross(v1, v2)
    return np.column_stack([w, v])


def _qsquare_jacobian(p: np.ndarray) -> np.ndarray:
    # d(q*q) = h*q + q*h: left plus right multiplication matrices
    n = len(p)
    w, x, y, z = p[:, 0], p[:, 1], p[:, 2], p[:, 3]
    jac = np.zeros((n, 4, 4))
    jac[:, 0, 0], jac[:, 0, 1], jac[:, 0, 2], jac[:, 0, 3] = 2 * w, -2 * x, -2 * y, -2 * z
    jac[:, 1, 0], jac[:, 1, 1] = 2 * x, 2 * w
    jac[:, 2, 0], jac[:, 2, 2] = 2 * y, 2 * w
    jac[:, 3, 0], jac[:, 3, 3] = 2 * z, 2 * w
    return jac


def identity_map() -> SphereMap:
    return SphereMap("identity", lambda p: np.asarray(p, dtype=float),
                     jacobian=lambda p: np.broadcast_to(np.eye(4), (len(p), 4, 4)))


def antipodal_map() -> SphereMap:
    return SphereMap("antipodal", lambda p: -np.asarray(p, dtype=float),
                     jacobian=lambda p: np.broadcast_to(-np.eye(4), (len(p), 4, 4)))


def quaternion_square() -> SphereMap:
    return SphereMap("qsquare", lambda p: quaternion_multiply(p, p),
                     jacobian=_qsquare_jacobian)


def constant_ball_map(point=(1.0, 0.0, 0.0, 0.0), side: str = "plus") -> SphereMap:
    target = np.asarray(point, dtype=float)
    target = target / np.linalg.norm(target)
    rng = (-math.pi, 0.0) if side == "plus" else (0.0, math.pi)
    return SphereMap(
        "constant", lambda lam, u: np.broadcast_to(target, (len(lam), 4)).copy(),
        domain="ball",
        jacobian=lambda lam, u, t1, t2: np.zeros((len(lam), 3, 4)),
        lam_range=rng,
    )


MAP_CATALOG = {
    "identity": identity_map,
    "antipodal": antipodal_map,
    "qsquare": quaternion_square,
}
