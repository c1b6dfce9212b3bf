"""Power-family accuracy curves and least-squares fitting of learning trends.

The curve family is value(x) = c - a * x**(-b) with a > 0 and b > 0, which is
strictly increasing and concave on (0, inf) with horizontal asymptote y = c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    FewerThanThreeObservations,
    FitDiverged,
    NonMonotonePositions,
    NonPositivePosition,
)

#: Stop when the relative decrease of the squared-residual cost falls below this.
CONVERGENCE_TOL = 1e-10
#: Maximum damping iterations before the fit is declared diverged.
MAX_ITERATIONS = 200
#: Maximum consecutive damping increases inside one iteration.
MAX_DAMPING_STEPS = 60


@dataclass(frozen=True)
class Observation:
    """One (position in the training data, accuracy %) point on a learning curve."""

    position: int
    accuracy: float

    def __post_init__(self):
        if int(self.position) != self.position or self.position < 1:
            raise ValueError(f"position must be a positive integer, got {self.position}")
        if not 0.0 < self.accuracy <= 100.0:
            raise ValueError(f"accuracy must lie in (0, 100], got {self.accuracy}")


@dataclass(frozen=True)
class PowerFit:
    """Fitted parameters of one learning trend."""

    a: float
    b: float
    c: float
    residual_norm: float = 0.0

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be strictly positive")
        if self.residual_norm < 0:
            raise ValueError("residual_norm must be nonnegative")

    def value(self, x: float) -> float:
        """Predicted accuracy at position x > 0."""
        if x <= 0:
            raise NonPositivePosition(f"x must be positive, got {x}")
        return self.c - self.a * x ** (-self.b)

    def slope(self, x: float) -> float:
        """First derivative a*b*x**-(b+1), strictly positive for x > 0."""
        if x <= 0:
            raise NonPositivePosition(f"x must be positive, got {x}")
        return self.a * self.b * x ** (-(self.b + 1.0))

    def asymptote(self) -> float:
        """Limit of value(x) for x -> inf."""
        return self.c


def _validate(observations: Sequence[Observation]) -> tuple[np.ndarray, np.ndarray]:
    if len(observations) < 3:
        raise FewerThanThreeObservations(
            f"need at least 3 observations, got {len(observations)}"
        )
    x = np.array([o.position for o in observations], dtype=float)
    y = np.array([o.accuracy for o in observations], dtype=float)
    if not np.all(np.diff(x) > 0):
        raise NonMonotonePositions("positions must be strictly increasing")
    return x, y


def _residuals(p: np.ndarray, x: np.ndarray, y: np.ndarray,
               anchor: Optional[float]) -> np.ndarray:
    u, v, c = p
    r = (c - np.exp(u) * x ** (-np.exp(v))) - y
    if anchor is not None:
        # One extra residual (c - anchor): exactly an observation at the point
        # of infinity, where x**-b vanishes for every b > 0.
        r = np.append(r, c - anchor)
    return r


def _jacobian(p: np.ndarray, x: np.ndarray, anchor: Optional[float]) -> np.ndarray:
    u, v, c = p
    a, b = np.exp(u), np.exp(v)
    xb = x ** (-b)
    rows = x.size + (1 if anchor is not None else 0)
    jac = np.zeros((rows, 3))
    jac[: x.size, 0] = -a * xb
    jac[: x.size, 1] = a * b * np.log(x) * xb
    jac[: x.size, 2] = 1.0
    if anchor is not None:
        jac[-1, 2] = 1.0
    return jac


def _initial_guess(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # Closed-form start: pick c0 just above the data, then log-log regression
    # of (c0 - y) against x gives log(a) and -b.
    c0 = y.max() + 0.5
    gap = np.clip(c0 - y, 1e-12, None)
    design = np.vstack([np.ones_like(x), np.log(x)]).T
    coef, *_ = np.linalg.lstsq(design, np.log(gap), rcond=None)
    u0 = coef[0]
    v0 = np.log(max(-coef[1], 1e-6))
    return np.array([u0, v0, c0])


def fit(observations: Sequence[Observation],
        anchor: Optional[float] = None,
        start: Optional[PowerFit] = None) -> PowerFit:
    """Fit a power curve to the observations by damped least squares.

    Parameters a and b are optimized as exp(u), exp(v) so positivity needs no
    constraints; c is free. When `anchor` is given, one extra residual
    (c - anchor) is appended, equivalent to an observation at infinity. An
    optional `start` warm-starts the iteration; the result is deterministic
    for fixed inputs.
    """
    x, y = _validate(observations)
    if np.all(y == y[0]):
        raise FitDiverged("constant accuracies cannot be fitted by a strictly "
                          "increasing concave curve")
    if start is not None:
        p = np.array([np.log(start.a), np.log(start.b), start.c])
    else:
        p = _initial_guess(x, y)

    r = _residuals(p, x, y, anchor)
    cost = float(r @ r)
    lam = 1e-3
    converged = False
    for _ in range(MAX_ITERATIONS):
        jac = _jacobian(p, x, anchor)
        jtj = jac.T @ jac
        grad = jac.T @ r
        scale = np.diag(np.clip(np.diag(jtj), 1e-12, None))
        accepted = False
        for _ in range(MAX_DAMPING_STEPS):
            try:
                step = np.linalg.solve(jtj + lam * scale, -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            candidate = p + step
            # Reject parameter regions where exp(u), exp(v) or x**-b overflow.
            if (not np.all(np.isfinite(candidate))
                    or abs(candidate[0]) > 200.0 or abs(candidate[1]) > 50.0
                    or abs(candidate[2]) > 1e9):
                lam *= 10.0
                continue
            r_new = _residuals(candidate, x, y, anchor)
            cost_new = float(r_new @ r_new)
            if np.isfinite(cost_new) and cost_new <= cost:
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            # No downhill direction left. Either we sit in a local minimum
            # (gradient negligible) or the damping is genuinely exhausted.
            if float(np.linalg.norm(grad)) <= 1e-6 * max(1.0, cost):
                converged = True
                break
            raise FitDiverged("damping exhausted without meeting the tolerance")
        relative_drop = (cost - cost_new) / max(cost, 1e-300)
        p, r, cost = candidate, r_new, cost_new
        lam = max(lam * 0.3, 1e-14)
        if relative_drop < CONVERGENCE_TOL:
            converged = True
            break
    if not converged and cost > 0 and not np.isfinite(cost):
        raise FitDiverged("cost did not converge")
    return PowerFit(a=float(np.exp(p[0])), b=float(np.exp(p[1])), c=float(p[2]),
                    residual_norm=float(np.sqrt(cost)))
