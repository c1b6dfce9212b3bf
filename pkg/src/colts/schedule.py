"""Step-size computation: tangent/asymptote distance, PORT, and tuning.

For the power family the tangent through (x, value(x)) meets the asymptote
y = c at abscissa x + mu with mu = (c - value(x)) / slope(x) = x / b.
"""

from __future__ import annotations

import math

from .errors import NonPositivePosition, NonPositiveSlope, PortOutOfRange
from .pattern import PowerFit


def mu(fit: PowerFit, x: float) -> float:
    """Shortest step from x guaranteeing a relevant next observation."""
    if x <= 0:
        raise NonPositivePosition(f"x must be positive, got {x}")
    s = fit.slope(x)
    if s <= 0:
        raise NonPositiveSlope("slope must be positive for a valid fit")
    return (fit.asymptote() - fit.value(x)) / s


def colts_step(fit: PowerFit, x: float, port: float) -> int:
    """ceil(port * mu): smallest integer step whose PORT is >= port."""
    if not 0.0 < port <= 1.0:
        raise PortOutOfRange(f"port must lie in (0, 1], got {port}")
    return max(1, math.ceil(port * mu(fit, x)))


def port_of(step: int, mu_value: float) -> float:
    """Probability of relevant training for an integer step: min(step/mu, 1)."""
    if step < 1:
        raise ValueError("step must be >= 1")
    if mu_value <= 0:
        raise ValueError("mu must be positive")
    return 1.0 if step >= mu_value else step / mu_value


def tune_geometric(eta: int, plevel_position: int) -> float:
    """Common ratio making the first geometric step equal eta."""
    if eta < 1 or plevel_position < 1:
        raise ValueError("eta and plevel_position must be positive")
    return (eta + plevel_position) / plevel_position


def tune_port(psi: float, eta: int, step_at_plevel: int, remaining: int) -> float:
    """Adjust a trial PORT psi so the adaptive step at the prediction level is eta.

    The trial step is clamped to the remaining training data and the result
    is capped at 1.
    """
    if not 0.0 < psi <= 1.0:
        raise PortOutOfRange(f"psi must lie in (0, 1], got {psi}")
    if eta < 1 or step_at_plevel < 1 or remaining < 1:
        raise ValueError("eta, step_at_plevel and remaining must be positive")
    return min(eta / min(step_at_plevel, remaining), 1.0)
