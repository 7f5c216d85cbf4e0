"""Parameter-sweep harness: Monte Carlo vs bounds over (lambda, gamma, R) grids.

Grid points are independent tasks; each task owns one (gamma, radius factor)
pair so the quadrature geometry is built once and reused across the whole
intensity list. Row seeds derive from the sweep seed and the row index, so
the CSV is byte-identical for any worker count.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import evaluate_bounds
from .montecarlo import NetworkConfig, estimate_both

CSV_HEADER = "lambda,gamma,r_factor,case,mc_p,mc_stderr,lower,upper,second_case,quad_err,trials,seed"

_SEED_STRIDE = 0x9E3779B97F4A7C15  # odd 64-bit golden-ratio stride
_MASK64 = (1 << 64) - 1

DEFAULT_GAMMAS = (2.0, 2.2, 2.4, 2.6, 2.8, 3.0)
DEFAULT_LAMBDAS = tuple(round(0.001 * k, 3) for k in range(1, 21))
DEFAULT_RADIUS_FACTORS = (5.0, 10.0, 100.0)


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition: sensing radius, gamma list, intensity list, radius factors."""

    R_s: float = 10.0
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    lams: tuple[float, ...] = DEFAULT_LAMBDAS
    radius_factors: tuple[float, ...] = DEFAULT_RADIUS_FACTORS
    trials: int = 100_000
    seed: int = 1

    def __post_init__(self):
        if not (self.gammas and self.lams and self.radius_factors):
            raise ValueError("gamma, lambda and radius-factor lists must be non-empty")
        if self.trials < 1000:
            raise ValueError("need at least 1000 trials per grid point")
        for gamma in self.gammas:
            for rf in self.radius_factors:
                NetworkConfig(rf * self.R_s, self.R_s, gamma * self.R_s, 0.0)

    def grid(self) -> list[tuple[float, float]]:
        """(gamma, r_factor) task keys in output order."""
        return [(g, rf) for g in self.gammas for rf in self.radius_factors]

    def n_rows(self) -> int:
        return len(self.gammas) * len(self.radius_factors) * len(self.lams)


@dataclass(frozen=True)
class ResultRow:
    lam: float
    gamma: float
    r_factor: float
    case: str
    mc_p: float
    mc_stderr: float
    lower: float
    upper: float
    second_case: float
    quad_err: float
    trials: int
    seed: int

    def to_csv(self) -> str:
        return ",".join(
            [
                _fmt(self.lam),
                _fmt(self.gamma),
                _fmt(self.r_factor),
                self.case,
                _fmt(self.mc_p),
                _fmt(self.mc_stderr),
                _fmt(self.lower),
                _fmt(self.upper),
                _fmt(self.second_case),
                _fmt(self.quad_err),
                str(self.trials),
                str(self.seed),
            ]
        )


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _row_seed(seed: int, index: int) -> int:
    return (seed + _SEED_STRIDE * (index + 1)) & _MASK64


def _run_task(args) -> list[ResultRow]:
    spec, gamma, r_factor, base_index = args
    R = r_factor * spec.R_s
    rows = []
    for k, lam in enumerate(spec.lams):
        cfg = NetworkConfig(R, spec.R_s, gamma * spec.R_s, lam)
        row_seed = _row_seed(spec.seed, base_index + k)
        hole, second = estimate_both(cfg, spec.trials, row_seed)
        res = evaluate_bounds(cfg, second_case=second.p_hat)
        rows.append(
            ResultRow(
                lam=lam,
                gamma=gamma,
                r_factor=r_factor,
                case=res.case.name,
                mc_p=hole.p_hat,
                mc_stderr=hole.stderr,
                lower=res.lower,
                upper=res.upper,
                second_case=res.second_case_term,
                quad_err=res.quad_error,
                trials=spec.trials,
                seed=row_seed,
            )
        )
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1, verbose: bool = False) -> list[ResultRow]:
    """Run the grid; rows come back in grid order regardless of worker count."""
    tasks = []
    base = 0
    for gamma, rf in spec.grid():
        tasks.append((spec, gamma, rf, base))
        base += len(spec.lams)
    total_trials = spec.n_rows() * spec.trials
    if verbose and total_trials >= 5_000_000:
        est_min = total_trials / 60_000.0 / 60.0
        print(
            f"sweep: {spec.n_rows()} grid points x {spec.trials} trials "
            f"(rough estimate {est_min:.0f} min)",
            file=sys.stderr,
        )
    if workers <= 1:
        blocks = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_task, tasks))
    return [row for block in blocks for row in block]


def summarize(rows: list[ResultRow]) -> dict[str, float]:
    """Sweep-level gap and radius-consistency figures."""
    max_mc_minus_lower = max((r.mc_p - r.lower for r in rows), default=0.0)
    max_upper_minus_mc = max((r.upper - r.mc_p for r in rows), default=0.0)
    by_point: dict[tuple[float, float], list[ResultRow]] = {}
    for r in rows:
        by_point.setdefault((r.gamma, r.lam), []).append(r)
    d_lower = 0.0
    d_upper = 0.0
    for group in by_point.values():
        if len(group) > 1:
            lows = [r.lower for r in group]
            ups = [r.upper for r in group]
            d_lower = max(d_lower, max(lows) - min(lows))
            d_upper = max(d_upper, max(ups) - min(ups))
    return {
        "max_mc_minus_lower": max_mc_minus_lower,
        "max_upper_minus_mc": max_upper_minus_mc,
        "max_cross_radius_lower_delta": d_lower,
        "max_cross_radius_upper_delta": d_upper,
    }


def write_csv(rows: list[ResultRow], path, summary: dict[str, float] | None = None) -> None:
    """Write rows (and a trailing comment summary block) deterministically."""
    if summary is None:
        summary = summarize(rows)
    with open(path, "w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.to_csv() + "\n")
        for key in sorted(summary):
            fh.write(f"# {key} = {_fmt(summary[key])}\n")


def read_csv(path) -> list[ResultRow]:
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {header!r}")
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            f = line.split(",")
            rows.append(
                ResultRow(
                    lam=float(f[0]), gamma=float(f[1]), r_factor=float(f[2]),
                    case=f[3], mc_p=float(f[4]), mc_stderr=float(f[5]),
                    lower=float(f[6]), upper=float(f[7]), second_case=float(f[8]),
                    quad_err=float(f[9]), trials=int(f[10]), seed=int(f[11]),
                )
            )
    return rows
