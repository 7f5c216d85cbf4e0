"""Closed-form lower/upper bounds on the triangular-hole proportion, by nested quadrature.

The bounds integrate, over the law of the closest node tau0 and the
lowest-azimuth partner tau1, the probability that a third node closes a
triangle around the query point. All radial geometry reduces to two cap
curves: the colatitude at which a communication cap centered on a given node
crosses a meridian, and the azimuth at which it crosses its center's
colatitude circle. Region areas enter only through exp(-lam * area), so the
quadrature geometry is precomputed per configuration shape and reused across
intensities.

Two integration situations occur. When the empty cap around the query point
crosses the boundary of the closest node's communication cap ("crossing",
always in Case 2 and for theta0 > psi_c/2 in Case 3), azimuth limits come
from those crossing points. When the empty cap is nested inside the
communication cap ("nested", theta0 <= psi_c/2, only in Case 3), the
crossing points do not exist and the anchor moves to the meridian opposite
the closest node.
"""

from __future__ import annotations

import logging
import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from .complexes import rips_threshold
from .montecarlo import NetworkConfig

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Simulated ceiling of the second-case probability for R_c <= 3*R_s, used
# when no matched Monte-Carlo estimate is supplied.
SECOND_CASE_CEILING = 0.0016

DEFAULT_QUAD_NODES = 64
DEFAULT_PANELS = 8
SUBDIVISION_THRESHOLD = 1e-5


@dataclass(frozen=True)
class CaseLabel:
    """Regime of (R_s, R_c, R) with its classifying thresholds (lengths)."""

    name: str  # "Case1" | "Case2" | "Case3"
    rips_threshold: float
    diameter_threshold: float  # 2*R_s

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class BoundResult:
    case: CaseLabel
    lower: float
    upper: float
    second_case_term: float
    quad_error: float


def classify(cfg: NetworkConfig) -> CaseLabel:
    """Case1: guaranteed no missed holes; Case3: every missed Rips triangle is
    a real hole; Case2: the no-guarantee band in between."""
    thr = rips_threshold(cfg.R_s, cfg.R)
    two_rs = 2.0 * cfg.R_s
    if cfg.R_c <= thr:
        name = "Case1"
    elif cfg.R_c <= two_rs:
        name = "Case2"
    else:
        name = "Case3"
    return CaseLabel(name, thr, two_rs)


def closest_node_density(theta0, cfg: NetworkConfig):
    """Density of the colatitude of the node closest to the query point.

    2*pi*lam*R^2*sin(theta0)*exp(-lam*2*pi*R^2*(1-cos(theta0))); integrates to
    1 - exp(-lam*2*pi*R^2) over (0, pi/2).
    """
    theta0 = np.asarray(theta0, dtype=float)
    a = cfg.lam * cfg.R * cfg.R
    return TWO_PI * a * np.sin(theta0) * np.exp(-a * TWO_PI * (1.0 - np.cos(theta0)))


# ---------------------------------------------------------------------------
# Quadrature rules


_LEGGAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(m: int) -> tuple[np.ndarray, np.ndarray]:
    got = _LEGGAUSS_CACHE.get(m)
    if got is None:
        got = np.polynomial.legendre.leggauss(m)
        _LEGGAUSS_CACHE[m] = got
    return got


def gauss_panels(a: float, b: float, n_nodes: int, n_panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule: n_panels equal panels, n_nodes total."""
    x, w = _unit_rule(n_nodes, n_panels)
    return a + (b - a) * x, (b - a) * w


_UNIT_RULE_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


def _unit_rule(n_nodes: int, n_panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite rule on [0, 1] with n_nodes total over n_panels panels."""
    key = (n_nodes, n_panels)
    got = _UNIT_RULE_CACHE.get(key)
    if got is not None:
        return got
    if n_nodes % n_panels != 0:
        raise ValueError("node count must be a multiple of the panel count")
    m = n_nodes // n_panels
    g, gw = _leggauss(m)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        xs.append(lo + half * (g + 1.0))
        ws.append(half * gw)
    out = (np.concatenate(xs), np.concatenate(ws))
    _UNIT_RULE_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Region geometry


def _cap_cross_colat(theta_c, dphi, psi):
    """Colatitude where the boundary of a cap (center colatitude theta_c,
    angular radius psi) crosses the meridian at azimuth offset dphi.

    Vectorized form of the larger law-of-cosines root; valid whenever the cap
    contains the pole (theta_c <= psi), which holds everywhere it is used.
    """
    st = np.sin(theta_c)
    amp = np.sqrt(1.0 - (st * np.sin(dphi)) ** 2)
    ratio = np.clip(np.cos(psi) / amp, -1.0, 1.0)
    return np.arccos(ratio) + np.arctan(np.cos(dphi) * np.tan(theta_c))


def _cos_cap_cross(sin_tc, tan_tc, sin_d, cos_d, cos_psi):
    """cos of _cap_cross_colat, computed without inverse trig.

    With r = cos(psi)/amp and q = cos(dphi)*tan(theta_c), the crossing is
    arccos(r) + arctan(q), whose cosine is (r - q*sqrt(1-r^2))/sqrt(1+q^2).
    Takes sin/cos of the azimuth offset so grids can share one trig pass.
    """
    amp = np.sqrt(1.0 - (sin_tc * sin_d) ** 2)
    r = np.clip(cos_psi / amp, -1.0, 1.0)
    q = cos_d * tan_tc
    return (r - q * np.sqrt(1.0 - r * r)) / np.sqrt(1.0 + q * q)


@dataclass(frozen=True)
class CaseGeometry:
    """Angular region limits for one configuration shape (psi_s, psi_c).

    theta_0u is the largest colatitude the closest node can have while an
    enclosing triangle with sides <= R_c remains possible. All methods accept
    numpy arrays and broadcast.
    """

    psi_s: float
    psi_c: float
    theta_0u: float

    @staticmethod
    def for_config(cfg: NetworkConfig) -> "CaseGeometry":
        psi_c = cfg.psi_c
        t0u = math.acos(math.sqrt((1.0 + 2.0 * math.cos(psi_c)) / 3.0))
        return CaseGeometry(cfg.psi_s, psi_c, t0u)

    def phi_m(self, theta0):
        """Azimuth of the crossing between the closest node's communication-cap
        boundary and the colatitude circle theta0 (crossing situation only)."""
        theta0 = np.asarray(theta0, dtype=float)
        arg = (math.cos(self.psi_c) - np.cos(theta0) ** 2) / np.sin(theta0) ** 2
        return np.arccos(np.clip(arg, -1.0, 1.0))

    def nested(self, theta0) -> np.ndarray:
        """True where the empty cap is nested inside the communication cap."""
        return np.asarray(theta0, dtype=float) < 0.5 * self.psi_c

    def theta_1u(self, theta0, phi1, nested: bool):
        """Upper colatitude limit for the lowest-azimuth partner at azimuth phi1."""
        theta0 = np.asarray(theta0, dtype=float)
        phi1 = np.asarray(phi1, dtype=float)
        anchor = math.pi if nested else self.phi_m(theta0)
        t1 = _cap_cross_colat(theta0, phi1, self.psi_c)
        t2 = _cap_cross_colat(theta0, phi1 - anchor, self.psi_c)
        return np.minimum(np.minimum(t1, t2), self.psi_c)

    def phi_2l(self, theta0, theta1, phi1):
        """Lower azimuth limit for the third node: where the partner's
        communication cap crosses the colatitude circle theta0."""
        theta0 = np.asarray(theta0, dtype=float)
        theta1 = np.asarray(theta1, dtype=float)
        arg = (math.cos(self.psi_c) - np.cos(theta0) * np.cos(theta1)) / (
            np.sin(theta0) * np.sin(theta1)
        )
        return phi1 - np.arccos(np.clip(arg, -1.0, 1.0))

    def theta_2u(self, theta0, theta1, phi1, phi2):
        """Upper colatitude limit for the third node at azimuth phi2."""
        t_a = _cap_cross_colat(theta0, phi2, self.psi_c)
        t_b = _cap_cross_colat(theta1, phi2 - phi1, self.psi_c)
        return np.minimum(np.minimum(t_a, t_b), self.psi_c)

    def phi1_interval(self, theta0: float, nested: bool) -> tuple[float, float]:
        if nested:
            return math.pi, TWO_PI
        pm = float(self.phi_m(theta0))
        return TWO_PI - pm, 2.0 * pm

    def s_plus_angular(self, theta0: float, phi1: float, nested: bool,
                       n_nodes: int = DEFAULT_QUAD_NODES,
                       n_panels: int = DEFAULT_PANELS) -> float:
        lo, hi = self.phi1_interval(theta0, nested)
        if not lo - 1e-12 <= phi1 <= hi + 1e-12:
            raise ValueError(f"phi1={phi1} outside contributing range [{lo}, {hi}]")
        if phi1 <= lo:
            return 0.0
        phi, w = gauss_panels(lo, phi1, n_nodes, n_panels)
        depth = np.maximum(0.0, math.cos(theta0) - np.cos(self.theta_1u(theta0, phi, nested)))
        return float(np.dot(w, depth))

    def s_minus_angular(self, theta0: float, theta1: float, phi1: float, nested: bool,
                        n_nodes: int = DEFAULT_QUAD_NODES,
                        n_panels: int = DEFAULT_PANELS) -> float:
        hi = math.pi if nested else float(self.phi_m(theta0))
        lo = float(self.phi_2l(theta0, theta1, phi1))
        if lo >= hi:
            return 0.0
        phi2, w = gauss_panels(lo, hi, n_nodes, n_panels)
        depth = np.maximum(
            0.0, math.cos(theta0) - np.cos(self.theta_2u(theta0, theta1, phi1, phi2))
        )
        return float(np.dot(w, depth))


def _situation_nested(cfg: NetworkConfig, theta0: float, situation: str) -> bool:
    if situation == "auto":
        return theta0 < 0.5 * cfg.psi_c
    if situation == "nested":
        return True
    if situation == "crossing":
        return False
    raise ValueError(f"unknown situation {situation!r}")


def area_S_plus(theta0: float, phi1: float, cfg: NetworkConfig,
                situation: str = "auto") -> float:
    """Area of the region that must be empty for the partner at azimuth phi1
    to have the lowest azimuth (absolute units, R^2 included)."""
    geom = CaseGeometry.for_config(cfg)
    nested = _situation_nested(cfg, theta0, situation)
    return cfg.R * cfg.R * geom.s_plus_angular(theta0, phi1, nested)


def area_S_minus(theta0: float, theta1: float, phi1: float, cfg: NetworkConfig,
                 situation: str = "auto") -> float:
    """Area of the region where a third node closes the triangle (absolute units).

    theta1 = theta0 gives the enlarged variant used by the upper bound.
    An empty region yields 0.0, not an error.
    """
    geom = CaseGeometry.for_config(cfg)
    nested = _situation_nested(cfg, theta0, situation)
    return cfg.R * cfg.R * geom.s_minus_angular(theta0, theta1, phi1, nested)


# ---------------------------------------------------------------------------
# Precomputed quadrature tensors


@dataclass
class _Segment:
    """Quadrature geometry for one theta0 segment (one situation)."""

    nested: bool
    th0: np.ndarray          # (n,)
    w0: np.ndarray           # (n,)
    om_cap: np.ndarray       # (n,)   angular area of the empty cap
    w1: np.ndarray           # (n, n) phi1 weights
    om_sp: np.ndarray        # (n, n) angular |S+|
    span1: np.ndarray        # (n, n) max(0, cos(th0) - cos(th1u(phi1)))
    w2sin: np.ndarray        # (n, n, n) theta1 weights * sin(theta1)
    om_sm: np.ndarray        # (n, n, n) angular |S-(th0, th1, phi1)|
    om_sm0: np.ndarray       # (n, n)   angular |S-(th0, th0, phi1)|


@dataclass
class _BoundGeometry:
    segments: list[_Segment]


def _build_segment(geom: CaseGeometry, lo: float, hi: float, nested: bool,
                   n: int, panels: int) -> _Segment:
    th0, w0 = gauss_panels(lo, hi, n, panels)
    om_cap = TWO_PI * (1.0 - np.cos(th0))
    x01, w01 = _unit_rule(n, panels)
    cos_psi = math.cos(geom.psi_c)

    if nested:
        p_lo = np.full(n, math.pi)
        p_hi = np.full(n, TWO_PI)
        anchor = np.full(n, math.pi)
    else:
        pm = geom.phi_m(th0)
        p_lo = TWO_PI - pm
        p_hi = 2.0 * pm
        anchor = pm

    span_phi = p_hi - p_lo
    ph1 = p_lo[:, None] + span_phi[:, None] * x01[None, :]            # (n, n)
    w1 = span_phi[:, None] * w01[None, :]

    cos_th0 = np.cos(th0)
    sin_th0 = np.sin(th0)
    tan_th0 = np.tan(th0)
    sin_anchor, cos_anchor = np.sin(anchor), np.cos(anchor)

    def cos_theta_1u(phi):
        """cos of the partner's colatitude limit; phi broadcast with th0 on axis 0."""
        shape = (-1,) + (1,) * (phi.ndim - 1)
        st, tt = sin_th0.reshape(shape), tan_th0.reshape(shape)
        sp, cp = np.sin(phi), np.cos(phi)
        c_a = _cos_cap_cross(st, tt, sp, cp, cos_psi)
        sa, ca = sin_anchor.reshape(shape), cos_anchor.reshape(shape)
        c_b = _cos_cap_cross(st, tt, sp * ca - cp * sa, cp * ca + sp * sa, cos_psi)
        return np.maximum(np.maximum(c_a, c_b), cos_psi)

    # |S+|(th0, phi1): integrate the radial depth from p_lo to phi1.
    phi_grid = p_lo[:, None, None] + (ph1 - p_lo[:, None])[:, :, None] * x01[None, None, :]
    depth = np.maximum(0.0, cos_th0[:, None, None] - cos_theta_1u(phi_grid))
    om_sp = np.einsum("ijk,k->ij", depth, w01) * (ph1 - p_lo[:, None])
    del phi_grid, depth

    cos_th1u = cos_theta_1u(ph1)                                       # (n, n)
    th1u = np.arccos(np.clip(cos_th1u, -1.0, 1.0))
    span1 = np.maximum(0.0, cos_th0[:, None] - cos_th1u)

    # theta1 quadrature grid on [th0, th1u(phi1)].
    th1_span = np.maximum(0.0, th1u - th0[:, None])
    th1 = th0[:, None, None] + th1_span[:, :, None] * x01[None, None, :]   # (n, n, n)
    w2sin = th1_span[:, :, None] * w01[None, None, :] * np.sin(th1)

    p2_hi = np.full(n, math.pi) if nested else anchor                  # (n,)

    om_sm = np.empty((n, n, n))
    om_sm0 = np.empty((n, n))
    sin_ph1, cos_ph1 = np.sin(ph1), np.cos(ph1)

    def sm_area(i, th1_i, sin_th1_i, tan_th1_i, cos_th1_i, ph1_cols):
        """Angular |S-| at theta0 node i for partner colatitudes th1_i.

        th1_i and the trig arrays broadcast against ph2 grids of shape
        ph1_cols + (n,); ph1_cols is (n, 1) per-theta1 or (n,) for the
        theta1 = theta0 variant.
        """
        arg = (cos_psi - cos_th0[i] * cos_th1_i) / (sin_th0[i] * sin_th1_i)
        p2l = ph1_cols - np.arccos(np.clip(arg, -1.0, 1.0))
        span2 = np.maximum(0.0, p2_hi[i] - p2l)
        ph2 = p2l[..., None] + span2[..., None] * x01
        sp, cp = np.sin(ph2), np.cos(ph2)
        c_a = _cos_cap_cross(sin_th0[i], tan_th0[i], sp, cp, cos_psi)
        s1 = sin_ph1[i].reshape(ph1_cols.shape + (1,))
        c1 = cos_ph1[i].reshape(ph1_cols.shape + (1,))
        c_b = _cos_cap_cross(
            sin_th1_i[..., None], tan_th1_i[..., None],
            sp * c1 - cp * s1, cp * c1 + sp * s1, cos_psi,
        )
        cos_t2u = np.maximum(np.maximum(c_a, c_b), cos_psi)
        depth2 = np.maximum(0.0, cos_th0[i] - cos_t2u)
        return (depth2 @ w01) * span2

    for i in range(n):
        t1 = th1[i]                                                    # (n, n)
        om_sm[i] = sm_area(i, t1, np.sin(t1), np.tan(t1), np.cos(t1),
                           ph1[i][:, None])
        om_sm0[i] = sm_area(
            i,
            np.full(n, th0[i]),
            np.full(n, sin_th0[i]),
            np.full(n, tan_th0[i]),
            np.full(n, cos_th0[i]),
            ph1[i],
        )

    return _Segment(nested, th0, w0, om_cap, w1, om_sp, span1, w2sin, om_sm, om_sm0)


def _build_geometry(psi_s: float, psi_c: float, case_name: str,
                    n: int, panels: int) -> _BoundGeometry:
    geom = CaseGeometry(psi_s, psi_c, math.acos(math.sqrt((1.0 + 2.0 * math.cos(psi_c)) / 3.0)))
    segments = []
    if case_name == "Case3":
        mid = 0.5 * psi_c
        segments.append(_build_segment(geom, psi_s, mid, True, n, panels))
        segments.append(_build_segment(geom, mid, geom.theta_0u, False, n, panels))
    else:
        segments.append(_build_segment(geom, psi_s, geom.theta_0u, False, n, panels))
    return _BoundGeometry(segments)


_GEOMETRY_CACHE: OrderedDict[tuple, _BoundGeometry] = OrderedDict()
_GEOMETRY_CACHE_MAX = 3


def _cached_geometry(psi_s: float, psi_c: float, case_name: str,
                     n: int, panels: int) -> _BoundGeometry:
    key = (round(psi_s, 14), round(psi_c, 14), case_name, n, panels)
    got = _GEOMETRY_CACHE.get(key)
    if got is not None:
        _GEOMETRY_CACHE.move_to_end(key)
        return got
    built = _build_geometry(psi_s, psi_c, case_name, n, panels)
    _GEOMETRY_CACHE[key] = built
    while len(_GEOMETRY_CACHE) > _GEOMETRY_CACHE_MAX:
        _GEOMETRY_CACHE.popitem(last=False)
    return built


def _quad_bounds(geometry: _BoundGeometry, a: float) -> tuple[float, float]:
    """(lower, upper-without-second-case) for scaled intensity a = lam*R^2."""
    lower = 0.0
    upper = 0.0
    for seg in geometry.segments:
        outer = seg.w0 * np.sin(seg.th0) * np.exp(-a * seg.om_cap)     # (n,)
        density = seg.w1 * np.exp(-a * seg.om_sp)                       # (n, n)
        inner_low = np.einsum("ijk,ijk->ij", seg.w2sin, 1.0 - np.exp(-a * seg.om_sm))
        lower += float(np.einsum("i,ij,ij->", outer, density, inner_low))
        inner_up = seg.span1 * (1.0 - np.exp(-a * seg.om_sm0))
        upper += float(np.einsum("i,ij,ij->", outer, density, inner_up))
    pref = TWO_PI * a * a
    return pref * lower, pref * upper


def _quad_levels(n: int, panels: int) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
    return (n, panels), (2 * n, 2 * panels), (4 * n, 4 * panels)


def evaluate_bounds(cfg: NetworkConfig, second_case: float | None = None,
                    quad_nodes: int = DEFAULT_QUAD_NODES,
                    panels: int = DEFAULT_PANELS,
                    estimate_error: bool = True) -> BoundResult:
    """Lower and upper bounds with a quadrature error estimate.

    The bounds are evaluated at quad_nodes per nesting level; one refinement
    at doubled resolution produces quad_error, and a further subdivision is
    triggered only when the two disagree by more than 1e-5. second_case is
    added to the upper bound: pass a matched Monte-Carlo estimate when
    available, otherwise the simulated ceiling for R_c <= 3*R_s is used.
    """
    case = classify(cfg)
    if second_case is not None and not 0.0 <= second_case <= 1.0:
        raise ValueError("second_case must be a probability")
    if case.name == "Case1":
        return BoundResult(case, 0.0, 0.0, 0.0, 0.0)
    if second_case is None:
        second_case = SECOND_CASE_CEILING
        if cfg.R_c > 3.0 * cfg.R_s:
            log.warning(
                "R_c > 3*R_s: the default second-case ceiling %.4f is unvalidated there",
                SECOND_CASE_CEILING,
            )
    a = cfg.lam * cfg.R * cfg.R
    base, refined, subdivided = _quad_levels(quad_nodes, panels)
    geo = _cached_geometry(cfg.psi_s, cfg.psi_c, case.name, *base)
    lo, up = _quad_bounds(geo, a)
    err = 0.0
    if estimate_error:
        geo_r = _cached_geometry(cfg.psi_s, cfg.psi_c, case.name, *refined)
        lo_r, up_r = _quad_bounds(geo_r, a)
        err = max(abs(lo - lo_r), abs(up - up_r))
        if err > SUBDIVISION_THRESHOLD:
            geo_s = _cached_geometry(cfg.psi_s, cfg.psi_c, case.name, *subdivided)
            lo_s, up_s = _quad_bounds(geo_s, a)
            err = max(abs(lo_r - lo_s), abs(up_r - up_s))
            lo, up = lo_r, up_r
    upper_total = up + second_case
    if not 0.0 <= lo <= upper_total <= 1.0:
        log.info("clipping bounds (%g, %g) to [0, 1]", lo, upper_total)
    lo = min(max(lo, 0.0), 1.0)
    upper_total = min(max(upper_total, lo), 1.0)
    return BoundResult(case, lo, upper_total, second_case, err)


def lower_bound(cfg: NetworkConfig, quad_nodes: int = DEFAULT_QUAD_NODES,
                panels: int = DEFAULT_PANELS) -> float:
    """Lower bound on the triangular-hole area proportion."""
    return evaluate_bounds(cfg, second_case=0.0, quad_nodes=quad_nodes,
                           panels=panels, estimate_error=False).lower


def upper_bound(cfg: NetworkConfig, second_case: float | None = None,
                quad_nodes: int = DEFAULT_QUAD_NODES,
                panels: int = DEFAULT_PANELS) -> float:
    """Upper bound on the triangular-hole area proportion."""
    return evaluate_bounds(cfg, second_case=second_case, quad_nodes=quad_nodes,
                           panels=panels, estimate_error=False).upper


def required_intensity(R_s: float, R_c: float, R: float, coverage_target: float,
                       second_case: float | None = None,
                       lam_hi: float = 0.03) -> tuple[float, float]:
    """Smallest intensity meeting a coverage target, from the upper bound.

    The upper bound is unimodal in the intensity: it rises to a peak and
    decays. If even the peak stays within the allowed hole proportion, any
    intensity works and 0 is returned. Otherwise the crossing on the
    decreasing branch is bisected, so the target holds for every larger
    intensity up to the searched range. Returns (lam_star, upper bound at
    lam_star); raises if the target is unreachable.
    """
    if not 0.0 < coverage_target < 1.0:
        raise ValueError("coverage target must be in (0, 1)")
    allowance = 1.0 - coverage_target
    probe = NetworkConfig(R, R_s, R_c, 0.0)
    case = classify(probe)
    if case.name == "Case1":
        return 0.0, 0.0

    def up(lam: float) -> float:
        return upper_bound(NetworkConfig(R, R_s, R_c, lam), second_case=second_case)

    lams = np.linspace(0.0005, lam_hi, 60)
    vals = np.array([up(l) for l in lams])
    peak = int(np.argmax(vals))
    if vals[peak] <= allowance:
        return 0.0, float(vals[peak])
    # Extend the grid until the decreasing branch drops below the allowance.
    hi_lam, hi_val = float(lams[-1]), float(vals[-1])
    while hi_val > allowance:
        if hi_lam >= 1.0:
            raise ValueError(
                f"coverage target {coverage_target} unreachable: best achievable "
                f"coverage on the searched range is {1.0 - hi_val:.6f}"
            )
        hi_lam *= 2.0
        hi_val = up(hi_lam)
    lo_lam = float(lams[peak])
    for _ in range(40):
        mid = 0.5 * (lo_lam + hi_lam)
        if up(mid) > allowance:
            lo_lam = mid
        else:
            hi_lam = mid
        if hi_lam - lo_lam < 1e-6:
            break
    return hi_lam, up(hi_lam)
