"""Verification suites: numerically check every conclusion the library
relies on, against independent oracles, for a given law.

Each suite returns a VerifyReport listing every check attempted -- name,
target, observed value, tolerance, pass flag -- with no silent skips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fixed_point, oracle, rates
from .laws import Orientation

SUITES = (
    "h-limits",
    "lambda-limits",
    "legendre",
    "oracle-equivalence",
    "tauberian",
    "ldp-trend",
    "mdp-constants",
)


@dataclass(frozen=True)
class Check:
    name: str
    target: float
    observed: float
    tolerance: float
    passed: bool
    provenance: str


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    checks: tuple

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)


def _check(name, target, observed, tol, provenance):
    return Check(name, target, observed, tol, abs(observed - target) <= tol, provenance)


def run_suite(law, suite):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    checks = _SUITE_FUNCS[suite](law)
    if not checks:
        raise RuntimeError(f"suite {suite!r} produced an empty check list")
    return VerifyReport(suite, tuple(checks))


def _suite_h_limits(law):
    report = fixed_point.h_limit_checks(law)
    return [
        Check(c.name, c.target, c.fine, c.tol, c.converged, "grid limit")
        for c in report.checks
    ]


def _suite_lambda_limits(law):
    boundary = -math.log(law.q + law.p0) if law.orientation is Orientation.RIGHT \
        else -math.log(1.0 - law.q)
    d20 = rates.cumulant_deriv(law, -20.0)
    d4 = rates.cumulant_deriv(law, -1e-4)
    d8 = rates.cumulant_deriv(law, -1e-8)
    gap = (-30.0 - rates.cumulant(law, -30.0)) - boundary
    return [
        _check("Lambda'(-20) -> 1", 1.0, d20, 1e-3, "series cumulant"),
        Check("Lambda' diverges at 0-: ratio(-1e-8/-1e-4) > 10", 10.0,
              d8 / d4, math.inf, d8 > 10.0 * d4, "slope blow-up at 0-"),
        _check("lambda - Lambda(lambda) at -30 vs boundary", 0.0, gap, 1e-6,
               "closed boundary value"),
    ]


def _suite_legendre(law):
    out = []
    lam_vals = -np.exp(np.linspace(math.log(1e-8), math.log(40.0), 20001))
    Lam = np.array([rates.cumulant(law, float(l)) for l in lam_vals])
    max_dev = 0.0
    for x in (1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0):
        direct = rates.legendre(law, x)
        grid_max = float(np.max(x * lam_vals - Lam))
        max_dev = max(max_dev, abs(direct - grid_max))
    out.append(_check("Legendre vs grid maximization (max dev)", 0.0, max_dev,
                      1e-6, "grid sup over 2e4 lambdas"))
    env_dev = 0.0
    for x in (1.5, 2.0, 5.0):
        dx = 1e-5 * x
        slope = (rates.legendre(law, x + dx) - rates.legendre(law, x - dx)) / (2 * dx)
        env_dev = max(env_dev, abs(slope - rates.invert_slope(law, x)))
    out.append(_check("envelope d/dx Lambda* = G(x)", 0.0, env_dev, 1e-4,
                      "central differences"))
    return out


def _suite_oracle_equivalence(law):
    out = []
    for n in (20, 40, 60):
        kernel = oracle.build_kernel(law, level_cap=n)
        dp = oracle.exact_An_distribution(kernel, n)
        rn = oracle.renewal_tail_table(law, n)
        dev = float(np.max(np.abs(dp.tail - rn.tail[: len(dp.tail)])))
        out.append(_check(f"DP vs renewal, n={n}", 0.0, dev, 1e-12,
                          "two exact representations"))
    return out


def _suite_tauberian(law):
    consts = rates.mdp_constants(law)
    alpha, c = consts.alpha, consts.c
    if law.orientation is Orientation.RIGHT:
        growth = 1.0 - alpha
        target = (1.0 - alpha) * c / (law.q * math.gamma(2.0 - alpha))
    else:
        growth = alpha
        target = 1.0 / ((1.0 - alpha) * c * math.gamma(1.0 + alpha))
    _, big = oracle.return_prob_partial_sums(law, 10000)
    r4 = big[10000] / 10000**growth
    r3 = big[1000] / 1000**growth
    monotone_or_bracket = (
        min(r3, r4) <= target <= max(r3, r4)
        or abs(r4 - target) <= abs(r3 - target)
    )
    return [
        _check("U_n / n^growth at n=1e4", target, r4, 0.10 * target,
               "series reciprocal partial sums"),
        Check("n=1e3 vs n=1e4 bracket or approach", target, r3,
              math.inf, monotone_or_bracket, "trend"),
    ]


def _suite_ldp_trend(law, x_rec=0.5):
    analytic = rates.ldp_rate(law, x_rec)
    ns = (100, 200, 400, 800)
    rs = []
    for n in ns:
        k = math.ceil(x_rec * n)
        tab = oracle.renewal_tail_table(law, n, kmax=k)
        rs.append(-math.log(tab.prob_at_least(k)) / n)
    diffs = np.diff(rs)
    toward = bool(np.all(diffs > 0) and rs[-1] < analytic) or bool(
        np.all(diffs < 0) and rs[-1] > analytic
    )
    # Ratio-estimated geometric extrapolation: finite-n corrections decay
    # like n^-rho with rho unknown (and < 1 for heavy-tailed laws), so the
    # decay ratio is estimated from the last three points.
    d1, d2 = rs[-2] - rs[-3], rs[-1] - rs[-2]
    ratio = d1 / d2 if d2 != 0.0 else math.inf
    if math.isfinite(ratio) and ratio > 1.0:
        extrap = rs[-1] + d2 / (ratio - 1.0)
    else:
        extrap = 2.0 * rs[-1] - rs[-2]
    return [
        Check("finite-n rates monotone toward analytic", analytic, rs[-1],
              math.inf, toward, "renewal oracle"),
        _check("geometric extrapolant vs analytic rate", analytic, extrap,
               0.10 * analytic, "last three horizons"),
    ]


def _suite_mdp_constants(law):
    closed = rates.mdp_constants(law)
    numeric = rates.mdp_constants(law, method="numeric")
    return [
        _check("numeric alpha vs closed form", closed.alpha, numeric.alpha,
               0.02 * closed.alpha, "log-log regression"),
        _check("numeric c vs closed form", closed.c, numeric.c,
               0.02 * closed.c, "log-log regression"),
    ]


_SUITE_FUNCS = {
    "h-limits": _suite_h_limits,
    "lambda-limits": _suite_lambda_limits,
    "legendre": _suite_legendre,
    "oracle-equivalence": _suite_oracle_equivalence,
    "tauberian": _suite_tauberian,
    "ldp-trend": _suite_ldp_trend,
    "mdp-constants": _suite_mdp_constants,
}
