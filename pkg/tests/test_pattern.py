"""Power-family curves and least-squares trend fitting."""

import numpy as np
import pytest

from colts import (
    FewerThanThreeObservations,
    FitDiverged,
    NonMonotonePositions,
    NonPositivePosition,
    Observation,
    PowerFit,
    fit,
)


def points(a, b, c, positions, noise=None):
    obs = []
    for i, x in enumerate(positions):
        y = c - a * x ** (-b)
        if noise is not None:
            y += noise[i]
        obs.append(Observation(position=x, accuracy=y))
    return obs


class TestObservation:
    def test_valid(self):
        o = Observation(position=5000, accuracy=92.5)
        assert o.position == 5000 and o.accuracy == 92.5

    @pytest.mark.parametrize("pos", [0, -1, 2.5])
    def test_bad_position(self, pos):
        with pytest.raises(ValueError):
            Observation(position=pos, accuracy=50.0)

    @pytest.mark.parametrize("acc", [0.0, -3.0, 100.0001])
    def test_bad_accuracy(self, acc):
        with pytest.raises(ValueError):
            Observation(position=1, accuracy=acc)


class TestPowerFit:
    def test_value_closed_form(self):
        f = PowerFit(a=100, b=1, c=99)
        assert f.value(100) == pytest.approx(98.0)

    def test_asymptote(self):
        f = PowerFit(a=542.5451, b=0.3838, c=99.2876)
        assert f.asymptote() == 99.2876
        # value approaches the asymptote from below
        assert f.value(1e20) == pytest.approx(99.2876, abs=1e-4)
        assert f.value(1e20) < 99.2876

    def test_strict_increase(self):
        f = PowerFit(a=50, b=0.35, c=92)
        xs = np.geomspace(10, 1e6, 60)
        vals = [f.value(x) for x in xs]
        assert all(v2 > v1 for v1, v2 in zip(vals, vals[1:]))

    def test_slope_closed_form(self):
        f = PowerFit(a=100, b=1, c=99)
        assert f.slope(10) == pytest.approx(1.0)

    def test_slope_finite_difference(self):
        f = PowerFit(a=542.5451, b=0.3838, c=99.2876)
        x, h = 1e4, 1e-2
        fd = (f.value(x + h) - f.value(x - h)) / (2 * h)
        assert f.slope(x) == pytest.approx(fd, rel=1e-6)

    def test_slope_decreasing(self):
        f = PowerFit(a=300, b=0.45, c=95)
        xs = np.geomspace(10, 1e6, 60)
        slopes = [f.slope(x) for x in xs]
        assert all(s2 < s1 for s1, s2 in zip(slopes, slopes[1:]))

    def test_nonpositive_x(self):
        f = PowerFit(a=1, b=1, c=1)
        with pytest.raises(NonPositivePosition):
            f.value(0)
        with pytest.raises(NonPositivePosition):
            f.slope(-5)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            PowerFit(a=0, b=1, c=1)
        with pytest.raises(ValueError):
            PowerFit(a=1, b=-0.5, c=1)


class TestFit:
    def test_three_exact_points(self):
        obs = points(100, 0.5, 99, [100, 1000, 10000])
        f = fit(obs)
        assert f.residual_norm < 1e-6
        assert f.a == pytest.approx(100, rel=1e-4)
        assert f.b == pytest.approx(0.5, rel=1e-4)
        assert f.c == pytest.approx(99, rel=1e-4)

    def test_too_few(self):
        with pytest.raises(FewerThanThreeObservations):
            fit(points(100, 0.5, 99, [100, 1000]))

    def test_non_monotone(self):
        obs = points(100, 0.5, 99, [100, 1000, 10000])
        with pytest.raises(NonMonotonePositions):
            fit([obs[0], obs[2], obs[1]])

    def test_constant_accuracies(self):
        obs = [Observation(position=x, accuracy=50.0) for x in (1, 2, 3)]
        with pytest.raises(FitDiverged):
            fit(obs)

    def test_anchored_pulls_c(self):
        obs = points(100, 0.5, 99, [100, 400, 1600, 6400])
        f = fit(obs, anchor=99.0)
        assert f.c == pytest.approx(99.0, abs=1e-3)

    def test_idempotence(self):
        f0 = fit(points(542.5451, 0.3838, 99.2876,
                        list(range(5000, 105000, 5000))))
        regenerated = points(f0.a, f0.b, f0.c, list(range(5000, 105000, 5000)))
        f1 = fit(regenerated)
        assert f1.a == pytest.approx(f0.a, rel=1e-6)
        assert f1.b == pytest.approx(f0.b, rel=1e-6)
        assert f1.c == pytest.approx(f0.c, rel=1e-6)

    def test_positivity_after_fit(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = rng.uniform(10, 500)
            b = rng.uniform(0.2, 0.8)
            c = rng.uniform(80, 100)
            noise = rng.uniform(-0.05, 0.05, 30)
            obs = points(a, b, c, list(range(5000, 155000, 5000)), noise)
            f = fit(obs)
            assert f.a > 0 and f.b > 0

    def test_noise_robustness(self):
        rng = np.random.default_rng(11)
        noise = rng.uniform(-0.1, 0.1, 120)
        obs = points(542.5451, 0.3838, 99.2876,
                     list(range(5000, 605000, 5000)), noise)
        f = fit(obs)
        assert abs(f.c - 99.2876) < 0.5

    def test_anchor_never_hurts_c_majority(self):
        """Anchoring at the true asymptote: |c - c*| not increased (majority)."""
        true_c = 97.0
        wins = 0
        trials = 50
        positions = list(range(5000, 255000, 5000))
        for seed in range(trials):
            rng = np.random.default_rng(seed)
            noise = rng.uniform(-0.1, 0.1, len(positions))
            obs = points(20, 0.4, true_c, positions, noise)
            plain = fit(obs)
            anchored = fit(obs, anchor=true_c)
            if abs(anchored.c - true_c) <= abs(plain.c - true_c) + 1e-12:
                wins += 1
        assert wins > trials // 2

    def test_determinism(self):
        obs = points(300, 0.45, 95, list(range(5000, 105000, 5000)))
        f1, f2 = fit(obs), fit(obs)
        assert (f1.a, f1.b, f1.c) == (f2.a, f2.b, f2.c)
