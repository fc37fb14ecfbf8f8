"""CRRA utilities and investor risk-attitude classification.

An investor's attitude family follows from the sufficiency factor alone
(above 1: extra positive utility on uncertain wealth, the risk-loving
family; below 1: risk-averse; exactly 1: neutral), while the qualifier
compares the realized uncertain utility with the certain one: "insufficient"
when uncertain falls short, "sufficient" when it exceeds. The qualifier uses
the raw utilities, not the factor-weighted ones; weighting would flip the
published risk-free row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import GrowthSeries, MarketSeries, growth_series
from .errors import DomainError

# Below this distance from tau = 1 the power utility switches to its ln limit.
TAU_ONE_EPS = 1e-8

INVESTOR_EQUITY = "equity"
INVESTOR_RISKFREE = "risk-free"


@dataclass(frozen=True)
class InvestorReport:
    """One output row: parameters, utilities, and the attitude label."""

    investor: str
    stdf: float
    sfom: float
    crra: float
    certain_utility: float
    uncertain_utility: float
    label: str
    year: int


def crra_utility(c: float, tau: float) -> float:
    """(c^(1-tau) - 1) / (1-tau), continuously extended to ln(c) at tau = 1."""
    if c <= 0:
        raise DomainError("consumption must be positive")
    one_m_tau = 1.0 - tau
    if abs(one_m_tau) < TAU_ONE_EPS:
        return math.log(c)
    # expm1 keeps the limit tau -> 1 accurate; the naive power form cancels.
    return math.expm1(one_m_tau * math.log(c)) / one_m_tau


def uncertain_utility(c_now: float, scenarios: Sequence[float] | np.ndarray,
                      beta: float, tau: float) -> float:
    """beta times the equal-weight mean of crra_utility(c_now * s) over scenarios."""
    scenarios = np.asarray(scenarios, dtype=np.float64)
    if scenarios.size == 0:
        raise DomainError("scenario set must be non-empty")
    if c_now <= 0:
        raise DomainError("consumption must be positive")
    if scenarios.min() <= 0:
        raise DomainError("scenarios must be positive gross factors")
    values = [crra_utility(c_now * float(s), tau) for s in scenarios]
    return beta * float(np.mean(values))


def classify_attitude(certain: float, uncertain: float, sfom: float) -> str:
    """Attitude label from the two utilities and the sufficiency factor."""
    if sfom <= 0:
        raise DomainError("sufficiency factor must be positive")
    if sfom > 1.0:
        family = "risk-loving"
    elif sfom < 1.0:
        family = "risk-averse"
    else:
        family = "neutral"
    if uncertain < certain:
        return f"insufficient {family}"
    if uncertain > certain:
        return f"sufficient {family}"
    return family


def growth_scenarios(growth: GrowthSeries) -> np.ndarray:
    """Scenario generator (a): the empirical consumption growth factors."""
    return growth.x.copy()


def return_scenarios(growth: GrowthSeries, investor: str) -> np.ndarray:
    """Scenario generator (b): the investor's own historical gross returns."""
    if investor == INVESTOR_EQUITY:
        return growth.r_e.copy()
    if investor == INVESTOR_RISKFREE:
        return growth.r_f.copy()
    raise ValueError(f"unknown investor type {investor!r}")


def build_reports(series: MarketSeries, year: int, beta: float, tau: float,
                  sfom_equity: float, sfom_riskfree: float) -> list[InvestorReport]:
    """The two report rows (equity first) for a given year and parameter set.

    Uncertain utility uses the asset-specific return scenarios, which is the
    only generator that distinguishes the two investor types.
    """
    c_now = series.consumption_of(year)
    growth = growth_series(series)
    certain = crra_utility(c_now, tau)

    reports = []
    for investor, sfom in (
        (INVESTOR_EQUITY, sfom_equity),
        (INVESTOR_RISKFREE, sfom_riskfree),
    ):
        uncertain = uncertain_utility(c_now, return_scenarios(growth, investor), beta, tau)
        reports.append(InvestorReport(
            investor=investor,
            stdf=beta,
            sfom=sfom,
            crra=tau,
            certain_utility=certain,
            uncertain_utility=uncertain,
            label=classify_attitude(certain, uncertain, sfom),
            year=year,
        ))
    return reports
