"""Damped least-squares solver and degeneracy diagnostics.

The Jacobian of the residual system has rank <= 3 at every point (the rows
satisfy row2 + row4 - row5 = 0 identically), so undamped Newton is undefined
and the "solution" of the four equations is a one-parameter family at best.
Levenberg-style damping on the normal equations keeps every step finite and
guarantees monotone residual norms. For fixed tau the residuals are linear
in (b, w, d), which gives two useful exact tools:

* the least-squares floor: with r5 = r2 + r4 - gap forced by the structural
  identity and (r2, r3, r4) freely reachable, the optimal residual vector is
  (gap/3, 0, gap/3, -gap/3) with norm |gap|/sqrt(3), at every tau;
* the solution manifold: zeroing (r2, r3, r4) exactly is a 3x3 linear solve
  in (b, w, d) whose determinant is k = tau*rho*sigma_x*sigma_r, leaving
  r5 = -gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import SingularSubsystemError, SolverError
from .model import (
    DEFAULT_OPTIONS,
    ModelOptions,
    ModelParams,
    Residuals,
    euler_gap,
    jacobian_array,
    residual_array,
)
from .moments import MomentSet, lognormality_gap

# Numerical rank: singular values <= RANK_RTOL * largest are treated as zero.
RANK_RTOL = 1e-10

_DAMPING_MAX = 1e14
_DAMPING_MIN = 1e-14

CANONICAL_INITIAL = ModelParams(beta=0.99, omega=1.0, delta=1.0, tau=2.0)


@dataclass(frozen=True)
class SolverConfig:
    initial: ModelParams = CANONICAL_INITIAL
    max_iterations: int = 500
    step_tolerance: float = 1e-12
    residual_tolerance: float = 1e-12
    damping_init: float = 1e-3
    options: ModelOptions = field(default_factory=ModelOptions)

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if min(self.step_tolerance, self.residual_tolerance, self.damping_init) <= 0:
            raise ValueError("tolerances and damping_init must be positive")


@dataclass(frozen=True)
class Solution:
    params: ModelParams
    residuals: Residuals
    iterations: int
    converged: str                       # "residual" | "step" | "max-iter"
    jacobian_singular_values: tuple[float, float, float, float]
    numerical_rank: int


@dataclass(frozen=True)
class ManifoldPoint:
    tau: float
    beta: float
    omega: float
    delta: float
    residuals: Residuals


@dataclass(frozen=True)
class RankReport:
    singular_values: tuple[float, float, float, float]
    numerical_rank: int
    gap: float
    residual_floor: float
    euler_gap: float


def _numerical_rank(singular_values: np.ndarray) -> int:
    largest = singular_values[0]
    if largest == 0.0:
        return 0
    return int(np.sum(singular_values > RANK_RTOL * largest))


def _try_residuals(m: MomentSet, x: np.ndarray, opts: ModelOptions) -> np.ndarray | None:
    """Residuals at x, or None when the evaluation leaves the finite range."""
    try:
        r = residual_array(m, x, opts)
    except OverflowError:
        return None
    return r if np.all(np.isfinite(r)) else None


def solve(m: MomentSet, cfg: SolverConfig | None = None) -> Solution:
    """Minimize the residual norm by Levenberg-damped least squares.

    Deterministic given (m, cfg): no randomness, fixed iteration order.
    Convergence reasons: "residual" (norm below tolerance), "step" (no
    accepted step above the step tolerance, including damping exhaustion),
    "max-iter".

    Raises:
        SolverError: if the residuals turn non-finite at the initial point;
            the exception carries the last parameter iterate.
    """
    cfg = cfg or SolverConfig()
    opts = cfg.options
    x = cfg.initial.log_vector()
    lam = cfg.damping_init
    eye = np.eye(4)

    r = _try_residuals(m, x, opts)
    if r is None:
        raise SolverError(
            "non-finite residuals at initial point", last_params=cfg.initial
        )
    norm = float(np.linalg.norm(r))

    converged = "max-iter"
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        if norm <= cfg.residual_tolerance:
            converged = "residual"
            iterations -= 1
            break

        jac = jacobian_array(m, x, opts)
        grad = jac.T @ r
        jtj = jac.T @ jac

        accepted = False
        while lam <= _DAMPING_MAX:
            try:
                step = np.linalg.solve(jtj + lam * eye, -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            x_new = x + step
            r_new = _try_residuals(m, x_new, opts)
            if r_new is not None:
                norm_new = float(np.linalg.norm(r_new))
                if norm_new <= norm:
                    accepted = True
                    break
            lam *= 10.0

        if not accepted:
            converged = "step"
            break

        x, r, norm = x_new, r_new, norm_new
        lam = max(lam * 0.3, _DAMPING_MIN)
        if float(np.linalg.norm(step)) <= cfg.step_tolerance * (1.0 + float(np.linalg.norm(x))):
            converged = "step"
            break

    params = ModelParams.from_log(*(float(v) for v in x))
    sv = np.linalg.svd(jacobian_array(m, x, opts), compute_uv=False)
    return Solution(
        params=params,
        residuals=Residuals.from_vector(r),
        iterations=iterations,
        converged=converged,
        jacobian_singular_values=tuple(float(s) for s in sv),
        numerical_rank=_numerical_rank(sv),
    )


def trace_manifold(m: MomentSet, tau_grid: Sequence[float] | Iterable[float],
                   options: ModelOptions = DEFAULT_OPTIONS) -> list[ManifoldPoint]:
    """Solve r2 = r3 = r4 = 0 exactly for (b, w, d) at each tau in the grid.

    The leftover residual is r5 = -gap by the structural identity. The 3x3
    subsystem has determinant k = tau*rho*sigma_x*sigma_r; k = 0 (tau = 0 or
    rho = 0) makes it singular.

    Raises:
        SingularSubsystemError: naming the grid point where k = 0.
    """
    sx = math.sqrt(m.sigma2_x)
    sr = math.sqrt(m.sigma2_r)
    f = math.log(m.mean_rf)
    rm = math.log(m.mean_re)

    points: list[ManifoldPoint] = []
    for tau in tau_grid:
        tau = float(tau)
        k = tau * m.rho * sx * sr
        if k == 0.0:
            raise SingularSubsystemError(
                f"subsystem in (b, w, d) is singular at tau = {tau} (k = 0)"
            )
        coef = np.array([
            [1.0, 1.0, 0.0],
            [k, 1.0 + k, -(1.0 - k)],
            [0.0, -1.0, 1.0],
        ])
        rhs = np.array([
            tau * m.mu_x - 0.5 * tau * tau * m.sigma2_x - f,
            rm - f * (1.0 - k) if options.eq3_variant == "printed" else rm - f * (1.0 + k),
            tau * m.sigma2_x - (rm - f),
        ])
        b, w, d = np.linalg.solve(coef, rhs)
        log_point = np.array([b, w, d, tau])
        residuals = Residuals.from_vector(residual_array(m, log_point, options))
        points.append(ManifoldPoint(
            tau=tau,
            beta=math.exp(b),
            omega=math.exp(w),
            delta=math.exp(d),
            residuals=residuals,
        ))
    return points


def residual_floor(m: MomentSet, options: ModelOptions = DEFAULT_OPTIONS) -> float:
    """Attainable least-squares floor |gap|/sqrt(3); zero in implied-lnEx mode."""
    if options.lnex_mode == "lognormal_implied":
        return 0.0
    return abs(lognormality_gap(m)) / math.sqrt(3.0)


def rank_diagnostics(m: MomentSet, p: ModelParams,
                     options: ModelOptions = DEFAULT_OPTIONS) -> RankReport:
    """Aggregate the degeneracy diagnostics at a parameter point (pure data)."""
    sv = np.linalg.svd(jacobian_array(m, p.log_vector(), options), compute_uv=False)
    return RankReport(
        singular_values=tuple(float(s) for s in sv),
        numerical_rank=_numerical_rank(sv),
        gap=lognormality_gap(m),
        residual_floor=residual_floor(m, options),
        euler_gap=euler_gap(m, p),
    )
