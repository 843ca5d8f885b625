"""Prolate hyperspheroid (PHS) coordinate system.

A prolate hyperspheroid in R^n is an ellipsoid of revolution with one long
(transverse) axis and n-1 equal conjugate axes, defined by two foci at
(+-a, 0, ..., 0) and a transverse diameter d >= d_min = 2a.  The curvilinear
coordinates (mu, nu, psi_1, ..., psi_{n-2}) parameterize R^n as a 2D elliptic
system (mu, nu) rotated by spherical angles psi_i:

    x_1 = a cosh(mu) cos(nu)
    x_j = a sinh(mu) sin(nu) sin(psi_1) ... sin(psi_{j-2}) cos(psi_{j-1})
    x_n = a sinh(mu) sin(nu) sin(psi_1) ... sin(psi_{n-2})

Level sets of mu are confocal hyperspheroids; the one through a point has
transverse diameter d_min * cosh(mu).  The scale factors (norms of the
coordinate basis vectors) collapse to

    h_mu = h_nu = a sqrt(sinh^2 mu + sin^2 nu)
    h_psi_i = a sinh(mu) sin(nu) sin(psi_1) ... sin(psi_{i-1})

and their product is the volume Jacobian returned by :func:`volume_density`.

Ranges: mu >= 0, nu in [0, pi] (in [0, 2*pi) when n = 2),
psi_1..psi_{n-3} in [0, pi], psi_{n-2} in [0, 2*pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhsShape",
    "PhsCoords",
    "ScaleFactors",
    "RigidTransform",
    "phs_to_cartesian",
    "cartesian_to_phs",
    "scale_factors",
    "volume_density",
    "align_frame",
]

# Dimensions above this are outside the tested envelope (closed-form volume
# factors lose accuracy; quadrature oracles become intractable).
MAX_DIMENSION = 64

# Radial parts smaller than this (relative to a) are treated as on-axis and
# get the canonical psi = 0 assignment.
_AXIS_TOL = 1e-12


@dataclass(frozen=True)
class PhsShape:
    """A confocal prolate hyperspheroid: dimension, interfocal distance, diameter.

    ``d_min`` is both the minimum transverse diameter and the distance between
    the two foci, which sit at (+-d_min/2, 0, ..., 0) in the canonical frame.
    ``d == d_min`` is the degenerate shape (the focal segment, zero volume).
    """

    n: int
    d_min: float
    d: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)):
            raise ValueError(f"dimension n must be an integer, got {self.n!r}")
        if not 2 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension n must be in [2, {MAX_DIMENSION}], got {self.n}")
        if not (math.isfinite(self.d_min) and self.d_min > 0):
            raise ValueError(f"d_min must be finite and > 0, got {self.d_min}")
        if not (math.isfinite(self.d) and self.d >= self.d_min):
            raise ValueError(f"d must satisfy d >= d_min ({self.d_min}), got {self.d}")

    @property
    def a(self) -> float:
        """Focal half-distance d_min / 2."""
        return 0.5 * self.d_min

    @property
    def c(self) -> float:
        """Conjugate semi-axis sqrt(d^2 - d_min^2) / 2; zero iff degenerate."""
        return 0.5 * math.sqrt((self.d - self.d_min) * (self.d + self.d_min))

    @property
    def is_degenerate(self) -> bool:
        return self.d == self.d_min

    @property
    def focus_neg(self) -> np.ndarray:
        f = np.zeros(self.n)
        f[0] = -self.a
        return f

    @property
    def focus_pos(self) -> np.ndarray:
        f = np.zeros(self.n)
        f[0] = self.a
        return f


@dataclass(frozen=True)
class PhsCoords:
    """A point in PHS coordinates; the dimension is len(psis) + 2."""

    mu: float
    nu: float
    psis: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "psis", tuple(float(p) for p in self.psis))
        if not (math.isfinite(self.mu) and self.mu >= 0.0):
            raise ValueError(f"mu must be finite and >= 0, got {self.mu}")
        two_pi = 2.0 * math.pi
        nu_hi = two_pi if self.n == 2 else math.pi
        if not (0.0 <= self.nu <= nu_hi) or (self.n == 2 and self.nu == two_pi):
            raise ValueError(f"nu={self.nu} outside [0, {nu_hi}{')' if self.n == 2 else ']'} for n={self.n}")
        for i, psi in enumerate(self.psis):
            hi = two_pi if i == len(self.psis) - 1 else math.pi
            if not (0.0 <= psi <= hi) or (hi == two_pi and psi == two_pi):
                raise ValueError(f"psi_{i + 1}={psi} outside its range for n={self.n}")

    @property
    def n(self) -> int:
        return len(self.psis) + 2


@dataclass(frozen=True)
class ScaleFactors:
    """Norms of the curvilinear basis vectors; h_mu == h_nu always."""

    h_mu: float
    h_nu: float
    h_psis: tuple[float, ...] = ()


@dataclass(frozen=True)
class RigidTransform:
    """Proper rigid motion x -> rotation @ x + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply to a single point (n,) or a batch (m, n)."""
        return np.asarray(x, dtype=float) @ self.rotation.T + self.translation


def _check_coords(shape: PhsShape, p: PhsCoords) -> None:
    if p.n != shape.n:
        raise ValueError(f"coordinate dimension {p.n} does not match shape dimension {shape.n}")


def _check_point(shape: PhsShape, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (shape.n,):
        raise ValueError(f"point has shape {x.shape}, expected ({shape.n},)")
    return x


def _forward(a: float, n: int, mu: float, nu: float, psis) -> np.ndarray:
    # Unvalidated transform core; also probed at slightly out-of-range
    # coordinates by the finite-difference oracles.
    x = np.empty(n)
    x[0] = a * math.cosh(mu) * math.cos(nu)
    radial = a * math.sinh(mu) * math.sin(nu)
    for i in range(n - 2):
        x[i + 1] = radial * math.cos(psis[i])
        radial *= math.sin(psis[i])
    x[n - 1] = radial
    return x


def phs_to_cartesian(shape: PhsShape, p: PhsCoords) -> np.ndarray:
    """Map PHS coordinates to the canonical Cartesian frame of ``shape``.

    The returned point's distances to the two foci sum to d_min * cosh(mu).
    """
    _check_coords(shape, p)
    return _forward(shape.a, shape.n, p.mu, p.nu, p.psis)


def cartesian_to_phs(shape: PhsShape, x: np.ndarray) -> PhsCoords:
    """Inverse transform via the focal radii.

    mu = arcosh((r1 + r2) / d_min) and nu = arccos((r1 - r2) / d_min), where
    r1, r2 are the distances to the negative and positive focus.  Both
    arguments are clamped into their domains so points numerically on the
    focal axis or on a level surface do not raise.  When the radial part
    (x_2, ..., x_n) is numerically zero all psi_i are set to 0; for n = 2 the
    sign of x_2 places nu in [0, 2*pi).
    """
    x = _check_point(shape, x)
    n = shape.n
    r1 = float(np.linalg.norm(x - shape.focus_neg))
    r2 = float(np.linalg.norm(x - shape.focus_pos))
    mu = math.acosh(max((r1 + r2) / shape.d_min, 1.0))
    nu = math.acos(min(max((r1 - r2) / shape.d_min, -1.0), 1.0))

    two_pi = 2.0 * math.pi
    v = x[1:]
    radial = float(np.linalg.norm(v))
    if n == 2:
        if radial >= _AXIS_TOL * shape.a and x[1] < 0.0:
            nu = two_pi - nu
            if nu >= two_pi:  # 2*pi - tiny rounds back to 2*pi
                nu = 0.0
        return PhsCoords(mu=mu, nu=nu)

    psis = [0.0] * (n - 2)
    if radial >= _AXIS_TOL * shape.a:
        for i in range(n - 3):
            psis[i] = math.atan2(float(np.linalg.norm(v[i + 1:])), float(v[i]))
        last = math.atan2(float(v[-1]), float(v[-2]))
        if last < 0.0:
            last += two_pi
            if last >= two_pi:
                last = 0.0
        psis[n - 3] = last
    return PhsCoords(mu=mu, nu=nu, psis=tuple(psis))


def scale_factors(shape: PhsShape, p: PhsCoords) -> ScaleFactors:
    """Closed-form scale factors at ``p``.

    h_mu = h_nu = a sqrt(sinh^2 mu + sin^2 nu) and
    h_psi_i = a sinh(mu) sin(nu) prod_{j<i} sin(psi_j).
    """
    _check_coords(shape, p)
    a = shape.a
    sh = math.sinh(p.mu)
    sn = math.sin(p.nu)
    h = a * math.sqrt(sh * sh + sn * sn)
    h_psis = []
    base = a * sh * sn
    for psi in p.psis:
        h_psis.append(base)
        base *= math.sin(psi)
    return ScaleFactors(h_mu=h, h_nu=h, h_psis=tuple(h_psis))


def volume_density(shape: PhsShape, p: PhsCoords) -> float:
    """Volume Jacobian a^n (sinh^2 mu + sin^2 nu) sinh^{n-2}mu sin^{n-2}nu
    prod_{i=1}^{n-3} sin^{n-2-i}(psi_i).

    Equals the product of all scale factors; the last angle psi_{n-2} carries
    no weight (and for n = 2 the whole angular product is empty).
    """
    _check_coords(shape, p)
    n = shape.n
    sh = math.sinh(p.mu)
    sn = math.sin(p.nu)
    out = shape.a**n * (sh * sh + sn * sn) * sh ** (n - 2) * sn ** (n - 2)
    for i in range(n - 3):
        out *= math.sin(p.psis[i]) ** (n - 3 - i)
    return out


def align_frame(f1: np.ndarray, f2: np.ndarray) -> RigidTransform:
    """Rigid motion taking the canonical foci (-a, 0, ...), (+a, 0, ...) to
    ``f1``, ``f2``, with a = |f2 - f1| / 2.

    The rotation is a proper orthogonal completion of e_1 -> (f2 - f1)/|f2 - f1|
    built from a Householder reflection composed with a single axis flip to
    restore determinant +1, which works uniformly in any dimension.
    """
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    if f1.shape != f2.shape or f1.ndim != 1 or f1.size < 2:
        raise ValueError("foci must be two vectors of equal dimension >= 2")
    n = f1.size
    diff = f2 - f1
    dist = float(np.linalg.norm(diff))
    if dist == 0.0:
        raise ValueError("foci must not coincide")
    u = diff / dist

    w = u.copy()
    w[0] -= 1.0
    wn2 = float(w @ w)
    if wn2 < 1e-24:
        rot = np.eye(n)
    else:
        rot = np.eye(n) - (2.0 / wn2) * np.outer(w, w)
        rot[:, -1] = -rot[:, -1]  # reflection -> rotation, leaves e_1's image alone
    return RigidTransform(rotation=rot, translation=0.5 * (f1 + f2))
