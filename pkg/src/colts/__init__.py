"""Concavity-limit adaptive scheduling for adaptive sampling on learning curves."""

from .convergence import ConvergenceParams, halted, layer, plevel, wlevel
from .errors import (
    ColtsError,
    ExternalCommandFailed,
    FewerThanThreeObservations,
    FitDiverged,
    MissingTrend,
    NoCLevel,
    NonMonotonePositions,
    NonPositivePosition,
    NonPositiveSlope,
    NonViableInflation,
    PortOutOfRange,
    PositionBeyondCorpus,
    PositionBeyondFold,
    ScopeBeforeX,
    UnparsableExternalOutput,
    WLevelUndefined,
)
from .harness import (
    LevelRecord,
    LocalFrame,
    MetricsReport,
    Run,
    build_frame,
    dacsr,
    discrepancy,
    execute_run,
    icsr,
    inflate_frame,
    metrics,
)
from .learners import (
    AccuracyReport,
    ExternalLearner,
    MostFrequentTagger,
    SyntheticLearner,
    fold_partition,
    kfold_curve,
    measure,
)
from .pattern import Observation, PowerFit, fit
from .schedule import colts_step, mu, port_of, tune_geometric, tune_port
from .scheme import (
    ArithmeticStep,
    ColtsStep,
    GeometricStep,
    LearningScheme,
    SentenceCorpus,
)
from .trace import LearningTrace, canonical_anchor_sequence

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "ArithmeticStep",
    "ColtsError",
    "ColtsStep",
    "ConvergenceParams",
    "ExternalCommandFailed",
    "ExternalLearner",
    "FewerThanThreeObservations",
    "FitDiverged",
    "GeometricStep",
    "LearningScheme",
    "LearningTrace",
    "LevelRecord",
    "LocalFrame",
    "MetricsReport",
    "MissingTrend",
    "MostFrequentTagger",
    "NoCLevel",
    "NonMonotonePositions",
    "NonPositivePosition",
    "NonPositiveSlope",
    "NonViableInflation",
    "Observation",
    "PortOutOfRange",
    "PositionBeyondCorpus",
    "PositionBeyondFold",
    "PowerFit",
    "Run",
    "ScopeBeforeX",
    "SentenceCorpus",
    "SyntheticLearner",
    "UnparsableExternalOutput",
    "WLevelUndefined",
    "build_frame",
    "canonical_anchor_sequence",
    "colts_step",
    "dacsr",
    "discrepancy",
    "execute_run",
    "fit",
    "fold_partition",
    "halted",
    "icsr",
    "inflate_frame",
    "kfold_curve",
    "layer",
    "measure",
    "metrics",
    "mu",
    "plevel",
    "port_of",
    "tune_geometric",
    "tune_port",
    "wlevel",
]
