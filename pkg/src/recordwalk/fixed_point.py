"""The minimal nonnegative fixed point h(s) of x = s*phi(x).

h(s) is the generating function of the descending first-passage time of the
reflected chain; everything downstream (return-time law, cumulants, rate
functions) is built from it.  Scalar evaluation uses a bracketed
bisection/Newton hybrid; the coefficient expansion uses series Newton with
precision doubling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .laws import expand_coefficients
from .series import (
    SeriesPoly,
    series_compose_val1,
    series_exp,
    series_log,
    series_mul,
    series_reciprocal,
)

RESIDUAL_TOL = 1e-13
# Near s = 1 the root is double-root-like; plain bisection with a tight
# absolute tolerance is the robust choice there.
BISECT_ONLY_ABOVE = 1.0 - 1e-6
NEAR_SINGULAR = 1e-12


class ConvergenceError(RuntimeError):
    pass


def solve_h(law, s):
    """Minimal root in [0, 1] of x = s*phi(x).

    For s < 1 the root in [0, 1) is unique under criticality: g(x) =
    s*phi(x) - x has g(0) = s*q > 0, g(1) = s - 1 <= 0 and phi is convex.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s = {s!r} outside [0, 1]")
    if s == 0.0:
        return 0.0
    if s == 1.0:
        return 1.0

    def g(x):
        return s * law.phi(x) - x

    lo, hi = 0.0, 1.0
    if s > BISECT_ONLY_ABOVE:
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            if g(mid) > 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15:
                break
        x = 0.5 * (lo + hi)
    else:
        # Coarse bisection to localize, then Newton with the analytic
        # derivative for machine-precision tail convergence.
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            if g(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        for _ in range(60):
            gx = g(x)
            if abs(gx) <= 1e-16:
                break
            gp = s * law.phi_prime(x) - 1.0
            x_new = x - gx / gp if gp != 0.0 else 0.5 * (lo + hi)
            if not lo < x_new < hi:
                x_new = 0.5 * (lo + hi)  # fall back inside the bracket
            if g(x_new) > 0.0:
                lo = x_new
            else:
                hi = x_new
            if hi - lo <= 1e-17 + 1e-16 * hi:
                x = x_new
                break
            x = x_new
        x = min((lo, hi, x), key=lambda v: abs(g(v)))
    if abs(g(x)) > RESIDUAL_TOL:
        raise ConvergenceError(
            f"fixed-point residual {g(x)!r} exceeds {RESIDUAL_TOL} at s={s!r}"
        )
    return x


def h_deriv(law, s):
    """h'(s) = phi(h)/(1 - s*phi'(h)) for s in (0, 1)."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s = {s!r} outside (0, 1)")
    h = solve_h(law, s)
    denom = 1.0 - s * law.phi_prime(h)
    if denom < NEAR_SINGULAR:
        warnings.warn(
            f"h'(s) near-singular at s={s!r}: 1 - s*phi'(h) = {denom!r}",
            RuntimeWarning,
        )
    return law.phi(h) / denom


def h_series(law, order):
    """Coefficients of h through s^order.

    Series Newton on F(H) = H - s*phi(H): each step doubles the matched
    order, so the result agrees with the true expansion through s^order.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if law.is_stable:
        return SeriesPoly(_h_series_stable(law, order))
    a = expand_coefficients(law, max(order, 1))
    ap = a[1:] * np.arange(1, len(a))  # coefficients of phi'
    h = np.array([0.0, law.q])  # h = q*s + O(s^2)
    m = 1
    while m < order:
        m = min(2 * m, order)
        h = np.concatenate([h, np.zeros(m + 1 - len(h))])[: m + 1]
        phi_h = series_compose_val1(a, h, m)
        phip_h = series_compose_val1(np.concatenate([ap, [0.0]]), h, m)
        # F = H - s*phi(H); F' = 1 - s*phi'(H)
        f = h - _shift(phi_h, m)
        fp = -_shift(phip_h, m)
        fp[0] += 1.0
        h = h - series_mul(f, series_reciprocal(fp, m), m)
    return SeriesPoly(h)


def _h_series_stable(law, order):
    """Series Newton for the stable family, with phi(H) and phi'(H) from
    their closed forms in 1 - H via series log/exp.

    Avoids composing with the coefficient expansion, whose dense outer
    series makes composition quadratic in both order and support.
    """
    g, b = law.gamma, law.beta
    h = np.array([0.0, law.q])
    m = 1
    while m < order:
        m = min(2 * m, order)
        h = np.concatenate([h, np.zeros(m + 1 - len(h))])[: m + 1]
        w = -h.copy()
        w[0] += 1.0  # w = 1 - H
        lw = series_log(w, m)
        # phi(H) = H + (g/(1+b)) * w^(1+b); phi'(H) = 1 - g * w^b
        phi_h = h + (g / (1.0 + b)) * series_exp((1.0 + b) * lw, m)
        phip_h = -g * series_exp(b * lw, m)
        phip_h[0] += 1.0
        f = h - _shift(phi_h, m)
        fp = -_shift(phip_h, m)
        fp[0] += 1.0
        h = h - series_mul(f, series_reciprocal(fp, m), m)
    return h


def _shift(c, order):
    """Multiply a coefficient array by s, truncating at the given order."""
    out = np.zeros(order + 1)
    out[1:] = c[:order]
    return out


def f0_series(law, order):
    """Coefficients of f0(s) = E[s^tau], tau the return time of the
    reflected chain to 0.

    Right orientation: f0 = 1 + q s - q s/h(s).  Left orientation uses the
    identity 1 - f0 = (1-s)/(1-h), a consequence of h = s*phi(h).
    """
    h = h_series(law, order + 1).coeffs
    from .laws import Orientation

    if law.orientation is Orientation.RIGHT:
        hs = h[1:]  # h/s, constant term q > 0
        r = series_reciprocal(hs, order)  # s/h
        f0 = -law.q * r
        f0[1] += law.q
        f0[0] = 0.0  # tau >= 1; cancels exactly in real arithmetic
    else:
        w = -h[: order + 1].copy()  # 1 - h
        w[0] += 1.0
        r = series_reciprocal(w, order)
        f0 = -r
        f0[1:] += r[:-1]
        f0[0] = 0.0
    return SeriesPoly(f0)


@dataclass(frozen=True)
class LimitCheck:
    name: str
    coarse: float
    fine: float
    extrapolant: float
    target: float
    tol: float
    converged: bool


@dataclass(frozen=True)
class HLimitReport:
    checks: tuple

    @property
    def all_converged(self):
        return all(c.converged for c in self.checks)


def h_limit_checks(law):
    """Evaluate the small-s and near-1 limits of h numerically.

    Each limit is reported at two consecutive geometric grid points together
    with their Richardson-style extrapolant; non-convergence is reported,
    not raised.
    """
    checks = []

    def richardson(v1, v2):
        return v2 + (v2 - v1) / 9.0

    # h(s)/s -> q as s -> 0+
    v1 = solve_h(law, 1e-5) / 1e-5
    v2 = solve_h(law, 1e-6) / 1e-6
    checks.append(
        LimitCheck(
            "h(s)/s -> q",
            v1,
            v2,
            richardson(v1, v2),
            law.q,
            1e-6,
            abs(v2 - law.q) <= 1e-6,
        )
    )

    # (h(s) - q s)/s^2 -> q*p_0 as s -> 0+
    target = law.q * law.p0
    v1 = (solve_h(law, 1e-3) - law.q * 1e-3) / 1e-6
    v2 = (solve_h(law, 1e-4) - law.q * 1e-4) / 1e-8
    checks.append(
        LimitCheck(
            "(h(s)-qs)/s^2 -> q*p0",
            v1,
            v2,
            richardson(v1, v2),
            target,
            1e-3,
            abs(v2 - target) <= 1e-3,
        )
    )

    # (1 - s*phi'(h))/(1-s)^alpha -> c near s = 1; alpha = 1/2 and
    # c = sqrt(2)*sigma in the finite-variance case.
    if law.sigma2 is not None:
        alpha = 0.5
        target = math.sqrt(2.0 * law.sigma2)
        name = "(1-s phi'(h))/sqrt(1-s) -> sqrt(2)*sigma"
    else:
        alpha = law.beta / (1.0 + law.beta)
        target = law.gamma ** (1.0 / (1.0 + law.beta)) * (1.0 + law.beta) ** (
            law.beta / (1.0 + law.beta)
        )
        name = "(1-s phi'(h))/(1-s)^alpha -> c"
    v1 = one_minus_s_phi_prime_h(law, 1.0 - 1e-7) / (1e-7**alpha)
    v2 = one_minus_s_phi_prime_h(law, 1.0 - 1e-8) / (1e-8**alpha)
    checks.append(
        LimitCheck(
            name,
            v1,
            v2,
            richardson(v1, v2),
            target,
            0.01 * target,
            abs(v2 - target) <= 0.01 * target,
        )
    )
    return HLimitReport(tuple(checks))


def one_minus_s_phi_prime_h(law, s):
    """1 - s*phi'(h(s)), evaluated without cancellation where possible."""
    h = solve_h(law, s)
    if law.is_stable:
        # phi'(x) = 1 - gamma*(1-x)^beta, so the quantity is
        # (1-s) + s*gamma*(1-h)^beta, a sum of positives.
        return (1.0 - s) + s * law.gamma * (1.0 - h) ** law.beta
    return 1.0 - s * law.phi_prime(h)
