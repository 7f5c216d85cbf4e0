"""Triangular-hole membership tests and Monte-Carlo estimators.

A query point sits in a triangular hole iff (1) its closest node is farther
than the sensing radius and (2) three nodes that are pairwise within the
communication radius span a spherical triangle containing it. Trials sample
the Poisson process on the communication cap around the query point; the
cheap condition (1) gates the cubic triangle search.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import SIDEDNESS_TIE, Cap, SphericalPoint, cap_area
from .poisson import NodeSet, derive_trial_seed, rng_for_seed

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Per-trial outcome codes.
MISS = 0
HIT_FIRST_CASE = 1  # closest node spans a containing triangle
HIT_SECOND_CASE = 2  # some triangle contains the point, none includes the closest node


@dataclass(frozen=True)
class NetworkConfig:
    """Sphere radius R, sensing radius R_s, communication radius R_c, intensity lam."""

    R: float
    R_s: float
    R_c: float
    lam: float

    def __post_init__(self):
        if self.R_s <= 0.0:
            raise ValueError("sensing radius must be positive")
        if not 0.0 < self.R_c <= self.R * math.pi / 4.0:
            raise ValueError("communication radius must be in (0, R*pi/4]")
        if self.lam < 0.0:
            raise ValueError("intensity must be nonnegative")
        if self.R < 5.0 * self.R_s:
            raise ValueError("operating envelope requires R >= 5*R_s")

    @property
    def psi_s(self) -> float:
        return self.R_s / self.R

    @property
    def psi_c(self) -> float:
        return self.R_c / self.R

    @property
    def gamma(self) -> float:
        return self.R_c / self.R_s


@dataclass(frozen=True)
class MCEstimate:
    trials: int
    hits: int
    p_hat: float
    stderr: float
    ci95: tuple[float, float]

    @staticmethod
    def from_counts(hits: int, trials: int) -> "MCEstimate":
        p = hits / trials
        se = math.sqrt(p * (1.0 - p) / trials)
        lo = max(0.0, p - 1.96 * se)
        hi = min(1.0, p + 1.96 * se)
        return MCEstimate(trials, hits, p, se, (lo, hi))


_TRIPLES_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
_TRIPLES_CACHE_MAX_N = 64


def _triple_indices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    cached = _TRIPLES_CACHE.get(n)
    if cached is not None:
        return cached
    idx = np.array(list(combinations(range(n), 3)), dtype=np.int32)
    out = (idx[:, 0], idx[:, 1], idx[:, 2])
    if n <= _TRIPLES_CACHE_MAX_N:
        _TRIPLES_CACHE[n] = out
    return out


def _classify_nodes(vecs: np.ndarray, nvec: np.ndarray, cos_c: float, tau0: int) -> int:
    """Triangle search among nodes already known to leave nvec uncovered.

    vecs: (n, 3) unit vectors of nodes within the communication cap.
    Returns MISS, HIT_FIRST_CASE or HIT_SECOND_CASE.
    """
    n = vecs.shape[0]
    if n < 3:
        return MISS
    adj = vecs @ vecs.T >= cos_c
    ii, jj, kk = _triple_indices(n)
    mask = adj[ii, jj] & adj[ii, kk] & adj[jj, kk]
    if not mask.any():
        return MISS
    ii, jj, kk = ii[mask], jj[mask], kk[mask]
    a, b, c = vecs[ii], vecs[jj], vecs[kk]
    ab, bc, ca = np.cross(a, b), np.cross(b, c), np.cross(c, a)
    orient = np.where(np.einsum("ij,ij->i", ab, c) >= 0.0, 1.0, -1.0)
    inside = (
        (orient * (ab @ nvec) >= -SIDEDNESS_TIE)
        & (orient * (bc @ nvec) >= -SIDEDNESS_TIE)
        & (orient * (ca @ nvec) >= -SIDEDNESS_TIE)
    )
    if not inside.any():
        return MISS
    with_tau0 = inside & ((ii == tau0) | (jj == tau0) | (kk == tau0))
    return HIT_FIRST_CASE if with_tau0.any() else HIT_SECOND_CASE


def in_triangular_hole(N: SphericalPoint, nodes: NodeSet, cfg: NetworkConfig) -> bool:
    """True iff N lies in a triangular hole of the given deployment.

    Accepts any node set (full sphere included); only nodes within R_c of N
    can matter, so the rest are filtered out first.
    """
    if len(nodes) == 0:
        return False
    nvec = N.unit_vector()
    vecs = nodes.unit_vectors()
    dots = vecs @ nvec
    cos_c = math.cos(cfg.psi_c)
    vecs = vecs[dots >= cos_c]
    if vecs.shape[0] == 0:
        return False
    dots = vecs @ nvec
    if float(dots.max()) >= math.cos(cfg.psi_s):
        return False  # some node covers N
    tau0 = int(np.argmax(dots))
    return _classify_nodes(vecs, nvec, cos_c, tau0) != MISS


def trial_flags(cfg: NetworkConfig, trials: int, seed: int) -> np.ndarray:
    """Per-trial outcome codes for the query point at the pole.

    Trial t uses the Philox stream keyed by seed XOR t, and draws exactly as
    sample_cap_poisson on the communication cap: the count, then the radial
    uniforms, then (only when the coverage gate passes) the azimuths. Results
    are therefore identical however trials are sharded.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    psi_c, psi_s = cfg.psi_c, cfg.psi_s
    mu = cfg.lam * cap_area(psi_c, cfg.R)
    cos_c = math.cos(psi_c)
    span = 1.0 - cos_c
    # Node covers the pole iff its radial uniform u satisfies
    # 1 - span*u >= cos(psi_s); distance exactly R_s counts as covered.
    u_limit = (1.0 - math.cos(psi_s)) / span
    nvec = np.array([0.0, 0.0, 1.0])
    flags = np.zeros(trials, dtype=np.uint8)
    gate_passes = 0
    for t in range(trials):
        rng = rng_for_seed(derive_trial_seed(seed, t))
        n = int(rng.poisson(mu))
        if n < 3:
            continue  # no triangle possible, whatever the draws
        u = rng.random(n)
        if float(u.min()) <= u_limit:
            continue
        gate_passes += 1
        phi = TWO_PI * rng.random(n)
        cos_t = 1.0 - span * u
        sin_t = np.sqrt(np.maximum(0.0, 1.0 - cos_t * cos_t))
        vecs = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), cos_t])
        tau0 = int(np.argmin(u))
        flags[t] = _classify_nodes(vecs, nvec, cos_c, tau0)
    log.debug(
        "trial gate pass rate %.4f (%d/%d)", gate_passes / trials, gate_passes, trials
    )
    return flags


def estimate_p(cfg: NetworkConfig, trials: int, seed: int) -> MCEstimate:
    """Monte-Carlo estimate of the triangular-hole area proportion p(lam).

    The query point is fixed at the pole; by rotational invariance of the
    Poisson process the estimate applies to any point.
    """
    flags = trial_flags(cfg, trials, seed)
    return MCEstimate.from_counts(int(np.count_nonzero(flags)), trials)


def estimate_second_case(cfg: NetworkConfig, trials: int, seed: int) -> MCEstimate:
    """Probability that a hole exists whose triangles all exclude the closest node."""
    flags = trial_flags(cfg, trials, seed)
    return MCEstimate.from_counts(int(np.count_nonzero(flags == HIT_SECOND_CASE)), trials)


def estimate_both(cfg: NetworkConfig, trials: int, seed: int) -> tuple[MCEstimate, MCEstimate]:
    """One pass yielding (hole estimate, second-case estimate) for shared trials."""
    flags = trial_flags(cfg, trials, seed)
    hole = MCEstimate.from_counts(int(np.count_nonzero(flags)), trials)
    second = MCEstimate.from_counts(int(np.count_nonzero(flags == HIT_SECOND_CASE)), trials)
    return hole, second


def communication_cap(cfg: NetworkConfig) -> Cap:
    """The cap around the pole query point that can influence hole membership."""
    return Cap(SphericalPoint(0.0, 0.0), cfg.psi_c)
