"""Learning traces, backbones, relevance, and canonical anchoring."""

import pytest

from colts import (
    LearningTrace,
    MissingTrend,
    NonMonotonePositions,
    Observation,
    SyntheticLearner,
    WLevelUndefined,
    canonical_anchor_sequence,
)


def synthetic_trace(a, b, c, positions, noise=0.0, seed=0):
    learner = SyntheticLearner(a=a, b=b, c=c, noise=noise, seed=seed)
    trace = LearningTrace()
    for pos in positions:
        trace.extend(Observation(position=pos, accuracy=learner.accuracy_at(pos)))
    return trace


class TestExtend:
    def test_no_trend_below_three(self):
        trace = synthetic_trace(100, 0.5, 99, [5000, 10000])
        assert trace.trends == {}
        assert trace.level == 2

    def test_backbone_from_exact_points(self):
        trace = synthetic_trace(100, 0.5, 99, [100, 1000, 10000])
        assert trace.backbone()[3] == pytest.approx(99.0, abs=1e-3)

    def test_non_monotone_rejected(self):
        trace = synthetic_trace(100, 0.5, 99, [5000, 10000])
        with pytest.raises(NonMonotonePositions):
            trace.extend(Observation(position=10000, accuracy=98.0))

    def test_backbone_totality(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        assert sorted(trace.backbone()) == list(range(3, trace.level + 1))

    def test_determinism(self):
        positions = list(range(5000, 70000, 5000))
        t1 = synthetic_trace(300, 0.45, 95, positions, noise=0.05, seed=4)
        t2 = synthetic_trace(300, 0.45, 95, positions, noise=0.05, seed=4)
        for lv in t1.trends:
            f1, f2 = t1.trends[lv], t2.trends[lv]
            assert (f1.a, f1.b, f1.c) == (f2.a, f2.b, f2.c)


class TestRelevance:
    def test_identical_flat_tail(self):
        # wide range then a one-item step: slopes indistinguishable at 1e-9
        trace = synthetic_trace(100, 0.5, 99,
                                [5000, 100000, 400000, 799999, 800000])
        assert not trace.is_relevant(4)

    def test_missing_trend(self):
        trace = synthetic_trace(100, 0.5, 99, [5000, 10000, 15000])
        with pytest.raises(MissingTrend):
            trace.is_relevant(3)


class TestAnchoring:
    def test_first_anchor_is_omega_asymptote(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        omega = 10
        trace.enable_anchoring(omega)
        assert trace.anchors[omega + 1] == trace.trends[omega].asymptote()

    def test_recursion_uses_previous_anchored(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        trace.enable_anchoring(10)
        for lv in range(12, trace.level + 1):
            assert trace.anchors[lv] == trace.anchored_trends[lv - 1].asymptote()

    def test_canonical_sequence_matches_incremental(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        trace.enable_anchoring(10)
        recomputed = canonical_anchor_sequence(trace, 10)
        for lv, anchor in recomputed.items():
            assert anchor == pytest.approx(trace.anchors[lv], rel=1e-9)

    def test_noiseless_backbones_agree(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        trace.enable_anchoring(10)
        plain, anchored = trace.backbone(), trace.backbone(anchored=True)
        for lv in anchored:
            assert anchored[lv] == pytest.approx(plain[lv], abs=1e-6)

    def test_extend_continues_anchoring(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        trace.enable_anchoring(10)
        learner = SyntheticLearner(a=20, b=0.4, c=97)
        trace.extend(Observation(position=80000,
                                 accuracy=learner.accuracy_at(80000)))
        assert trace.level in trace.anchored_trends

    def test_trend_at_prefers_anchored(self):
        trace = synthetic_trace(20, 0.4, 97, range(5000, 80000, 5000))
        trace.enable_anchoring(10)
        lv = trace.level
        assert trace.trend_at(lv) is trace.anchored_trends[lv]
        assert trace.trend_at(lv, prefer_anchored=False) is trace.trends[lv]

    def test_undefined_omega(self):
        trace = synthetic_trace(100, 0.5, 99, [5000, 10000, 15000])
        with pytest.raises(WLevelUndefined):
            trace.enable_anchoring(7)
        with pytest.raises(WLevelUndefined):
            canonical_anchor_sequence(trace, 7)
