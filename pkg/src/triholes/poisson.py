"""Seeded homogeneous Poisson point process sampling on the sphere and on caps.

Sampling is driven by the counter-based Philox generator keyed by an explicit
64-bit seed, so every draw is reproducible and independent trials can derive
disjoint streams as seed XOR trial-index regardless of worker layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Cap, SphericalPoint, cap_area

TWO_PI = 2.0 * math.pi

MASK64 = (1 << 64) - 1


def rng_for_seed(seed: int) -> np.random.Generator:
    """Philox generator for a 64-bit seed (counter-based, stream-safe)."""
    return np.random.Generator(np.random.Philox(key=seed & MASK64))


def derive_trial_seed(seed: int, trial: int) -> int:
    """Per-trial stream key: seed XOR trial index (both 64-bit)."""
    return (seed & MASK64) ^ (trial & MASK64)


@dataclass(frozen=True)
class NodeSet:
    """A sampled node deployment.

    thetas/phis hold the spherical coordinates of every node; region is the
    sampling window (a Cap, or None for the full sphere).
    """

    thetas: np.ndarray
    phis: np.ndarray
    region: Cap | None
    intensity: float
    seed: int

    def __len__(self) -> int:
        return int(self.thetas.shape[0])

    @property
    def points(self) -> list[SphericalPoint]:
        return [SphericalPoint(t, p) for t, p in zip(self.thetas, self.phis)]

    def unit_vectors(self) -> np.ndarray:
        st = np.sin(self.thetas)
        return np.column_stack(
            [st * np.cos(self.phis), st * np.sin(self.phis), np.cos(self.thetas)]
        )


def _rotation_to(center: SphericalPoint) -> np.ndarray:
    """Rotation taking the north pole to `center` (R_z(phi) @ R_y(theta))."""
    ct, st = math.cos(center.theta), math.sin(center.theta)
    cp, sp = math.cos(center.phi), math.sin(center.phi)
    ry = np.array([[ct, 0.0, st], [0.0, 1.0, 0.0], [-st, 0.0, ct]])
    rz = np.array([[cp, -sp, 0.0], [sp, cp, 0.0], [0.0, 0.0, 1.0]])
    return rz @ ry


def sample_cap_poisson(lam: float, cap: Cap, R: float, seed: int) -> NodeSet:
    """Sample a Poisson(lam * cap area) number of i.i.d. uniform points on a cap.

    About the cap axis the azimuth is uniform and the cosine of the angular
    distance from the center is uniform on [cos(psi), 1]; the local frame is
    then rotated so the pole maps onto the cap center. Deterministic given
    (seed, lam, cap, R).
    """
    if lam < 0.0:
        raise ValueError("intensity must be nonnegative")
    rng = rng_for_seed(seed)
    n = int(rng.poisson(lam * cap_area(cap.angular_radius, R)))
    if n == 0:
        return NodeSet(np.empty(0), np.empty(0), cap, lam, seed)
    cos_psi = math.cos(cap.angular_radius)
    u = rng.random(n)
    cos_t = 1.0 - (1.0 - cos_psi) * u
    phi_local = TWO_PI * rng.random(n)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - cos_t * cos_t))
    local = np.column_stack(
        [sin_t * np.cos(phi_local), sin_t * np.sin(phi_local), cos_t]
    )
    if cap.center.theta == 0.0:
        world = local
    else:
        world = local @ _rotation_to(cap.center).T
    thetas = np.arctan2(np.hypot(world[:, 0], world[:, 1]), world[:, 2])
    phis = np.mod(np.arctan2(world[:, 1], world[:, 0]), TWO_PI)
    return NodeSet(thetas, phis, cap, lam, seed)


def sample_sphere_poisson(lam: float, R: float, seed: int) -> NodeSet:
    """Sample a Poisson(lam * 4 pi R^2) number of uniform points on the sphere."""
    if lam < 0.0:
        raise ValueError("intensity must be nonnegative")
    rng = rng_for_seed(seed)
    n = int(rng.poisson(lam * 4.0 * math.pi * R * R))
    if n == 0:
        return NodeSet(np.empty(0), np.empty(0), None, lam, seed)
    cos_t = 2.0 * rng.random(n) - 1.0
    phis = TWO_PI * rng.random(n)
    thetas = np.arccos(np.clip(cos_t, -1.0, 1.0))
    return NodeSet(thetas, phis, None, lam, seed)
