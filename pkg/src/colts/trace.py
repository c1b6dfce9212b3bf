"""Learning traces: the sequence of fitted trends, backbone, and anchoring."""

from __future__ import annotations

from typing import Dict, Optional

from .errors import (
    FitDiverged,
    MissingTrend,
    NonMonotonePositions,
    WLevelUndefined,
)
from .pattern import Observation, PowerFit, fit

#: Slopes closer than this (accuracy per item) are considered equal.
RELEVANCE_TOLERANCE = 1e-9

FIRST_TREND_LEVEL = 3


class LearningTrace:
    """Growing sequence of observations with one fitted trend per level >= 3.

    Trends are cached per level and never refitted retroactively; each fit is
    warm-started from the previous level's parameters, falling back to the
    cold start if that diverges. Enabling anchoring at a working level omega
    adds, for every level > omega, a parallel trend fitted with one extra
    asymptotic observation (the canonical anchor).
    """

    def __init__(self, relevance_tolerance: float = RELEVANCE_TOLERANCE):
        self.observations: list[Observation] = []
        self.trends: Dict[int, PowerFit] = {}
        self.anchored_trends: Dict[int, PowerFit] = {}
        self.anchors: Dict[int, float] = {}
        self.omega: Optional[int] = None
        self.relevance_tolerance = relevance_tolerance

    @property
    def level(self) -> int:
        return len(self.observations)

    def position(self, level: int) -> int:
        return self.observations[level - 1].position

    def extend(self, observation: Observation) -> None:
        """Append one observation and fit the new level's trend(s)."""
        if self.observations and observation.position <= self.observations[-1].position:
            raise NonMonotonePositions(
                f"new position {observation.position} does not exceed "
                f"{self.observations[-1].position}"
            )
        self.observations.append(observation)
        lv = self.level
        if lv < FIRST_TREND_LEVEL:
            return
        self.trends[lv] = self._fit_level(lv, anchor=None)
        if self.omega is not None and lv > self.omega:
            self._fit_anchored(lv)

    def _fit_level(self, level: int, anchor: Optional[float]) -> PowerFit:
        obs = self.observations[:level]
        warm = self.anchored_trends.get(level - 1) if anchor is not None else None
        if warm is None:
            warm = self.trends.get(level - 1)
        try:
            return fit(obs, anchor=anchor, start=warm)
        except FitDiverged:
            if warm is None:
                raise
            return fit(obs, anchor=anchor)

    def _fit_anchored(self, level: int) -> None:
        if level == self.omega + 1:
            anchor = self.trends[self.omega].asymptote()
        else:
            anchor = self.anchored_trends[level - 1].asymptote()
        self.anchors[level] = anchor
        self.anchored_trends[level] = self._fit_level(level, anchor=anchor)

    def enable_anchoring(self, omega: int) -> None:
        """Activate canonical anchoring from working level omega onward.

        Levels already past omega get their anchored trends filled in, in
        level order, so later extends continue the recursion.
        """
        if omega < FIRST_TREND_LEVEL or omega not in self.trends:
            raise WLevelUndefined(f"no trend at working level {omega}")
        self.omega = omega
        for lv in range(omega + 1, self.level + 1):
            if lv in self.trends and lv not in self.anchored_trends:
                self._fit_anchored(lv)

    def trend_at(self, level: int, prefer_anchored: bool = True) -> PowerFit:
        if prefer_anchored and level in self.anchored_trends:
            return self.anchored_trends[level]
        if level not in self.trends:
            raise MissingTrend(f"no trend at level {level}")
        return self.trends[level]

    def backbone(self, anchored: bool = False) -> Dict[int, float]:
        """Per-level asymptotes: running estimates of peak attainable accuracy."""
        source = self.anchored_trends if anchored else self.trends
        return {lv: t.asymptote() for lv, t in sorted(source.items())}

    def is_relevant(self, level: int, tolerance: Optional[float] = None) -> bool:
        """Whether the observation at level+1 changed the learning speed.

        Compares the trend slope at level's position against the next trend's
        slope at the next position, with a numeric tolerance standing in for
        exact-arithmetic inequality.
        """
        if level not in self.trends or level + 1 not in self.trends:
            raise MissingTrend(f"need trends at levels {level} and {level + 1}")
        tol = self.relevance_tolerance if tolerance is None else tolerance
        s0 = self.trends[level].slope(self.position(level))
        s1 = self.trends[level + 1].slope(self.position(level + 1))
        return abs(s1 - s0) > tol


def canonical_anchor_sequence(trace: LearningTrace, omega: int) -> Dict[int, float]:
    """Anchor values for every level > omega: each one the previous asymptote.

    Recomputes the recursion from the trace's observations without touching
    its cached trends.
    """
    if omega < FIRST_TREND_LEVEL or omega not in trace.trends:
        raise WLevelUndefined(f"no trend at working level {omega}")
    anchors: Dict[int, float] = {}
    previous = trace.trends[omega].asymptote()
    for lv in range(omega + 1, trace.level + 1):
        anchors[lv] = previous
        anchored = fit(trace.observations[:lv], anchor=previous,
                       start=trace.trends.get(lv))
        previous = anchored.asymptote()
    return anchors
