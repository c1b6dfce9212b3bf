"""Working/prediction level detection, the layer of convergence, and halting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import ScopeBeforeX
from .pattern import PowerFit


@dataclass(frozen=True)
class ConvergenceParams:
    """Detection parameters.

    verticality (nu) in (0,1), slowdown (a positive integer), lookahead >= 0,
    threshold (tau) in accuracy points, and an optional scope end (word
    position) bounding the layer of convergence to the corpus at hand.
    """

    threshold: float
    verticality: float = 2e-5
    slowdown: int = 1
    lookahead: int = 5
    scope_end: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.verticality < 1.0:
            raise ValueError("verticality must lie in (0, 1)")
        if self.slowdown < 1:
            raise ValueError("slowdown must be a positive integer")
        if self.lookahead < 0:
            raise ValueError("lookahead must be nonnegative")
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")

    def verticality_ceiling(self) -> float:
        """nu**(1/slowdown) / (1 - nu), the admissible backbone slope."""
        return self.verticality ** (1.0 / self.slowdown) / (1.0 - self.verticality)


def wlevel(backbone: Sequence[float], positions: Sequence[int],
           params: ConvergenceParams, first_level: int = 3) -> Optional[int]:
    """Smallest level from which backbone slopes stay below the ceiling.

    `backbone[k]` is the trend asymptote at level first_level + k, with
    `positions` the matching word positions. The condition must hold over the
    whole lookahead window; None when no window fits in the available levels.
    """
    if len(backbone) != len(positions):
        raise ValueError("backbone and positions must have equal length")
    ceiling = params.verticality_ceiling()
    n = len(backbone)
    window = params.lookahead
    for start in range(n - window - 1):
        ok = True
        for i in range(start, start + window + 1):
            slope = abs(backbone[i + 1] - backbone[i]) / (positions[i + 1] - positions[i])
            if slope > ceiling:
                ok = False
                break
        if ok:
            return first_level + start
    return None


def plevel(backbone: Sequence[float], omega: int,
           first_level: int = 3) -> Optional[int]:
    """Smallest level >= omega whose asymptote does not exceed 100."""
    for k in range(omega - first_level, len(backbone)):
        if backbone[k] <= 100.0:
            return first_level + k
    return None


def layer(trend: PowerFit, x: float, scope_end: Optional[int] = None,
          align: Optional[Callable[[int], int]] = None) -> float:
    """Remaining accuracy gain of a trend at position x.

    Unscoped, this is |value(x) - c| = a * x**-b. With a scope end, the
    asymptote is replaced by the value at the (sentence-aligned) scope end.
    """
    if scope_end is None:
        return trend.a * x ** (-trend.b)
    end = align(scope_end) if align is not None else scope_end
    if end < x:
        raise ScopeBeforeX(f"scope end {end} precedes position {x}")
    return abs(trend.value(x) - trend.value(end))


def halted(chi: float, tau: float) -> bool:
    """Threshold crossing that defines the convergence level."""
    return chi <= tau
