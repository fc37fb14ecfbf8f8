"""Residual equations of the four-unknown system and the lognormal identities.

The unknowns are the time-discount factor beta, the sufficiency factors
omega (risk-free investors) and delta (equity investors), and the relative
risk aversion tau, optimized through the log views b = ln(beta),
w = ln(omega), d = ln(delta). With F = ln(mean_rf), Rm = ln(mean_re),
X = ln(mean_x) (or its lognormal-implied stand-in mu_x + sigma2_x/2) and
k = tau * rho * sigma_x * sigma_r, each residual is the left minus the right
side of its equation in log form:

    r2 = F + b + w - tau*mu_x + tau^2*sigma2_x/2
    r3 = F*(1-k) - Rm + b*k - d*(1-k) + w*(1+k)          (printed variant)
    r3 = F*(1+k) - Rm + b*k - d*(1-k) + w*(1+k)          (rederived variant)
    r4 = (Rm - F) - w + d - tau*sigma2_x
    r5 = Rm - X + b + d + (1-tau)*mu_x + (1-tau)^2*sigma2_x/2

The combination r2 + r4 - r5 = X - mu_x - sigma2_x/2 holds for every
parameter vector, so the Jacobian has rank <= 3 everywhere: the system
cannot pin four unknowns, only a one-parameter family. The two r3 variants
exist because expanding the intermediate covariance relation independently
yields a (1+k) coefficient on F where the printed equation has (1-k); the
printed form is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .moments import MomentSet

EQ3_VARIANTS = ("printed", "rederived")
LNEX_MODES = ("arithmetic", "lognormal_implied")


@dataclass(frozen=True)
class ModelParams:
    """The four unknowns; beta, omega, delta must be positive (logs exist)."""

    beta: float
    omega: float
    delta: float
    tau: float

    def __post_init__(self):
        if min(self.beta, self.omega, self.delta) <= 0:
            raise DomainError("beta, omega, delta must be strictly positive")

    @property
    def b(self) -> float:
        return math.log(self.beta)

    @property
    def w(self) -> float:
        return math.log(self.omega)

    @property
    def d(self) -> float:
        return math.log(self.delta)

    @classmethod
    def from_log(cls, b: float, w: float, d: float, tau: float) -> "ModelParams":
        return cls(beta=math.exp(b), omega=math.exp(w), delta=math.exp(d), tau=tau)

    def log_vector(self) -> np.ndarray:
        return np.array([self.b, self.w, self.d, self.tau])


@dataclass(frozen=True)
class ModelOptions:
    eq3_variant: str = "printed"
    lnex_mode: str = "arithmetic"

    def __post_init__(self):
        if self.eq3_variant not in EQ3_VARIANTS:
            raise ValueError(f"eq3_variant must be one of {EQ3_VARIANTS}")
        if self.lnex_mode not in LNEX_MODES:
            raise ValueError(f"lnex_mode must be one of {LNEX_MODES}")


DEFAULT_OPTIONS = ModelOptions()


@dataclass(frozen=True)
class Residuals:
    r2: float
    r3: float
    r4: float
    r5: float
    norm: float

    def vector(self) -> np.ndarray:
        return np.array([self.r2, self.r3, self.r4, self.r5])

    @classmethod
    def from_vector(cls, r: np.ndarray) -> "Residuals":
        return cls(
            r2=float(r[0]), r3=float(r[1]), r4=float(r[2]), r5=float(r[3]),
            norm=float(np.linalg.norm(r)),
        )


def _log_means(m: MomentSet, options: ModelOptions) -> tuple[float, float, float]:
    """(F, Rm, X) for the residual equations; raises if a log is undefined."""
    if min(m.mean_rf, m.mean_re, m.mean_x) <= 0:
        raise DomainError("mean_rf, mean_re, mean_x must be positive (logs undefined)")
    f = math.log(m.mean_rf)
    rm = math.log(m.mean_re)
    if options.lnex_mode == "arithmetic":
        x = math.log(m.mean_x)
    else:
        x = m.mu_x + 0.5 * m.sigma2_x
    return f, rm, x


def residual_array(m: MomentSet, log_params: np.ndarray,
                   options: ModelOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Residuals (r2, r3, r4, r5) at a log-space parameter vector (b, w, d, tau)."""
    b, w, d, tau = (float(v) for v in log_params)
    f, rm, x = _log_means(m, options)
    sx = math.sqrt(m.sigma2_x)
    sr = math.sqrt(m.sigma2_r)
    k = tau * m.rho * sx * sr

    r2 = f + b + w - tau * m.mu_x + 0.5 * tau * tau * m.sigma2_x
    if options.eq3_variant == "printed":
        r3 = f * (1.0 - k) - rm + b * k - d * (1.0 - k) + w * (1.0 + k)
    else:
        r3 = f * (1.0 + k) - rm + b * k - d * (1.0 - k) + w * (1.0 + k)
    r4 = (rm - f) - w + d - tau * m.sigma2_x
    r5 = rm - x + b + d + (1.0 - tau) * m.mu_x + 0.5 * (1.0 - tau) ** 2 * m.sigma2_x
    return np.array([r2, r3, r4, r5])


def residual_vector(m: MomentSet, p: ModelParams,
                    options: ModelOptions = DEFAULT_OPTIONS) -> Residuals:
    """Residuals of the four equations at a parameter point, with their norm."""
    return Residuals.from_vector(residual_array(m, p.log_vector(), options))


def jacobian_array(m: MomentSet, log_params: np.ndarray,
                   options: ModelOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Analytic 4x4 Jacobian d(r2, r3, r4, r5)/d(b, w, d, tau)."""
    b, w, d, tau = (float(v) for v in log_params)
    f, _rm, _x = _log_means(m, options)
    sx = math.sqrt(m.sigma2_x)
    sr = math.sqrt(m.sigma2_r)
    kappa = m.rho * sx * sr   # dk/dtau
    k = tau * kappa

    jac = np.zeros((4, 4))
    jac[0] = [1.0, 1.0, 0.0, -m.mu_x + tau * m.sigma2_x]
    # r3 rows share the (b, w, d) coefficients; only dr3/dk differs by 2F.
    if options.eq3_variant == "printed":
        dr3_dk = -f + b + d + w
    else:
        dr3_dk = f + b + d + w
    jac[1] = [k, 1.0 + k, -(1.0 - k), kappa * dr3_dk]
    jac[2] = [0.0, -1.0, 1.0, -m.sigma2_x]
    jac[3] = [1.0, 0.0, 1.0, -m.mu_x - (1.0 - tau) * m.sigma2_x]
    return jac


def jacobian(m: MomentSet, p: ModelParams,
             options: ModelOptions = DEFAULT_OPTIONS) -> np.ndarray:
    return jacobian_array(m, p.log_vector(), options)


def lognormal_power_cov(a: float, b: float, mu_x: float, sigma_x: float,
                        mu_y: float, sigma_y: float, rho: float) -> float:
    """cov(X^a, Y^b) for jointly lognormal (X, Y) with log-space parameters.

    Equals E(X^a) E(Y^b) (exp(a*b*rho*sigma_x*sigma_y) - 1) with
    E(X^a) = exp(a*mu_x + a^2*sigma_x^2/2) and likewise for Y.
    """
    ex_a = math.exp(a * mu_x + 0.5 * a * a * sigma_x * sigma_x)
    ey_b = math.exp(b * mu_y + 0.5 * b * b * sigma_y * sigma_y)
    return ex_a * ey_b * math.expm1(a * b * rho * sigma_x * sigma_y)


def mrs_return_cov(m: MomentSet, tau: float) -> float:
    """Covariance of the marginal rate of substitution x^(-tau) with R_e.

    Direct transcription of the closed form; cross-checked elsewhere against
    lognormal_power_cov(-tau, 1, ...), which it must equal.
    """
    sx = math.sqrt(m.sigma2_x)
    sr = math.sqrt(m.sigma2_r)
    mrs_mean = math.exp(-tau * m.mu_x + 0.5 * tau * tau * m.sigma2_x)
    re_mean = math.exp(m.mu_r + 0.5 * m.sigma2_r)
    return mrs_mean * re_mean * math.expm1(-tau * m.rho * sx * sr)


def euler_gap(m: MomentSet, p: ModelParams) -> float:
    """Exact (non-log-linearized) discrepancy of the two-asset Euler relation.

    omega*E(R_f) - delta*E(R_e) - omega*delta*beta*E(R_f)*cov(MRS, R_e);
    quantifies how far the log-form equity equation is from the exact one.
    """
    cov = mrs_return_cov(m, p.tau)
    return (
        p.omega * m.mean_rf
        - p.delta * m.mean_re
        - p.omega * p.delta * p.beta * m.mean_rf * cov
    )
