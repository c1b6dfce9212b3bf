"""Shared fixtures: the frozen noiseless frames used across acceptance tests.

Each frame pairs a power curve (a, b, c) with a threshold tau placing the
convergence case well inside the training data (kernel 50000, eta 1000,
total 800000), so every schedule has room to act after the prediction level.
"""

import pytest

from colts import ConvergenceParams, SyntheticLearner, build_frame, inflate_frame

KERNEL = 50_000
ETA = 1_000
TOTAL = 800_000
PSIS = (0.2, 0.5, 0.8)

# (a, b, c, tau) — tau = a * x_c**-b for a target convergence position x_c
# between 2e5 and 6e5.
FRAME_SETS = (
    (20.0, 0.4, 97.0, 0.13),
    (50.0, 0.35, 92.0, 0.57),
    (30.0, 0.42, 96.0, 0.16),
    (12.0, 0.35, 90.0, 0.15),
    (22.0, 0.41, 95.0, 0.15),
)


def make_frame(a, b, c, tau):
    learner = SyntheticLearner(a=a, b=b, c=c)
    params = ConvergenceParams(threshold=tau)
    return build_frame(learner.accuracy_at, TOTAL, kernel=KERNEL, eta=ETA,
                       params=params, psis=PSIS)


@pytest.fixture(scope="session")
def acceptance_frames():
    return [((a, b, c, tau), make_frame(a, b, c, tau))
            for a, b, c, tau in FRAME_SETS]


@pytest.fixture(scope="session")
def inflated_frames(acceptance_frames):
    return [(key, frame, inflate_frame(frame, 1.0))
            for key, frame in acceptance_frames]
