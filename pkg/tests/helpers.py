"""Shared generators and oracles used across the test modules."""

from __future__ import annotations

import math

import numpy as np

from sfm import ModelParams, MomentSet

# Reference calibration this toolkit aims to reproduce (published values).
REF_BETA = 0.9581
REF_OMEGA = 1.0657
REF_DELTA = 1.0013
REF_TAU = 1.0319
REF_CERTAIN_UTILITY = 7.14871804
REF_UNCERTAIN_EQUITY = 6.27558270
REF_UNCERTAIN_RISKFREE = 6.97944955

REF_PARAMS = ModelParams(beta=REF_BETA, omega=REF_OMEGA, delta=REF_DELTA, tau=REF_TAU)


def random_moments(rng: np.random.Generator, lognormal_consistent: bool = False) -> MomentSet:
    """A random but valid MomentSet; gap is nonzero unless asked otherwise."""
    sigma2_x = float(rng.uniform(1e-4, 0.05))
    sigma2_r = float(rng.uniform(1e-4, 0.2))
    mu_x = float(rng.uniform(-0.05, 0.08))
    mu_r = float(rng.uniform(-0.10, 0.15))
    rho = float(rng.uniform(-0.95, 0.95))
    mean_x = math.exp(mu_x + 0.5 * sigma2_x)
    if not lognormal_consistent:
        mean_x *= float(rng.uniform(0.98, 1.02))
    return MomentSet(
        mu_x=mu_x,
        sigma2_x=sigma2_x,
        mu_r=mu_r,
        sigma2_r=sigma2_r,
        rho=rho,
        mean_x=mean_x,
        mean_re=math.exp(mu_r + 0.5 * sigma2_r) * float(rng.uniform(0.98, 1.02)),
        mean_rf=float(rng.uniform(0.95, 1.10)),
        n_obs=int(rng.integers(10, 200)),
    )


def random_params(rng: np.random.Generator) -> ModelParams:
    beta, omega, delta = np.exp(rng.uniform(-0.5, 0.5, size=3))
    return ModelParams(
        beta=float(beta), omega=float(omega), delta=float(delta),
        tau=float(rng.uniform(-3.0, 6.0)),
    )


def exact_root_moments(p: ModelParams, mu_x: float = 0.018, sigma2_x: float = 0.0012,
                       sigma2_r: float = 0.024, rho: float = 0.4) -> MomentSet:
    """Moments for which p solves all four equations exactly (printed variant).

    Works backwards: pick mean_rf from the risk-free equation, mean_re from
    the premium equation, the log-correlation term from the equity equation,
    and force the lognormality gap to zero so the structural identity closes
    the remaining equation. The requested rho is replaced by the implied one,
    adjusting sigma2_r to keep k = tau*rho*sigma_x*sigma_r feasible.
    """
    b, w, d, tau = p.b, p.w, p.d, p.tau
    f = -b - w + tau * mu_x - 0.5 * tau**2 * sigma2_x
    rm = f + w - d + tau * sigma2_x
    if tau == 0.0:
        # k vanishes and the equity equation holds automatically.
        rho_needed = rho
    else:
        # Printed equity equation at the root: tau*sigma2_x = k*(b + w + d - f).
        denom = b + w + d - f
        if abs(denom) < 1e-9:
            raise ValueError("choose parameters with b + w + d != F")
        k = tau * sigma2_x / denom
        sigma_x = math.sqrt(sigma2_x)
        rho_needed = k / (tau * sigma_x * math.sqrt(sigma2_r))
        if abs(rho_needed) > 1:
            sigma2_r = (k / (tau * sigma_x * 0.9)) ** 2
            rho_needed = k / (tau * sigma_x * math.sqrt(sigma2_r))
    x_log = mu_x + 0.5 * sigma2_x  # gap = 0 by construction
    return MomentSet(
        mu_x=mu_x,
        sigma2_x=sigma2_x,
        mu_r=rm - 0.5 * sigma2_r,
        sigma2_r=sigma2_r,
        rho=rho_needed,
        mean_x=math.exp(x_log),
        mean_re=math.exp(rm),
        mean_rf=math.exp(f),
        n_obs=89,
    )
