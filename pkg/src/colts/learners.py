"""Learner implementations and k-fold accuracy measurement.

Three learners share a `measure(train, heldout)` contract returning an
AccuracyReport: a closed-form synthetic curve, a most-frequent-tag baseline
tagger with suffix backoff, and an adapter running an external command.
"""

from __future__ import annotations

import math
import subprocess
import tempfile
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ExternalCommandFailed,
    PositionBeyondFold,
    UnparsableExternalOutput,
)
from .scheme import SentenceCorpus

MAX_SUFFIX = 5


@dataclass(frozen=True)
class AccuracyReport:
    """Token accuracy percentage over every token, punctuation included."""

    accuracy: float
    tokens_evaluated: int

    def __post_init__(self):
        if not 0.0 <= self.accuracy <= 100.0:
            raise ValueError("accuracy must lie in [0, 100]")


class SyntheticLearner:
    """Closed-form power-curve learner with optional seeded uniform noise.

    Accuracy at training size x is c - a*x**-b plus noise drawn per (seed,
    position), so evaluation order never matters.
    """

    def __init__(self, a: float, b: float, c: float,
                 noise: float = 0.0, seed: int = 0):
        if a <= 0 or b <= 0:
            raise ValueError("a and b must be positive")
        if not 0.0 < c <= 100.0:
            raise ValueError("c must lie in (0, 100]")
        if noise < 0:
            raise ValueError("noise must be nonnegative")
        self.a, self.b, self.c = a, b, c
        self.noise = noise
        self.seed = seed

    def accuracy_at(self, position: int) -> float:
        if position < 1:
            raise ValueError("position must be >= 1")
        acc = self.c - self.a * position ** (-self.b)
        if self.noise:
            rng = np.random.default_rng([self.seed, position])
            acc += rng.uniform(-self.noise, self.noise)
        return min(max(acc, 1e-9), 100.0)

    def measure(self, train: SentenceCorpus, heldout: SentenceCorpus) -> AccuracyReport:
        return AccuracyReport(self.accuracy_at(train.total_words),
                              heldout.total_words)


class MostFrequentTagger:
    """Per-word most-frequent tag with suffix-frequency backoff.

    Unknown words fall back to the longest seen suffix (up to 5 characters),
    then to the globally most frequent tag. Ties break deterministically on
    (count, lexicographic tag).
    """

    def __init__(self):
        self._word: dict[str, Counter] = defaultdict(Counter)
        self._suffix: dict[str, Counter] = defaultdict(Counter)
        self._global: Counter = Counter()

    @staticmethod
    def _best(counter: Counter) -> str:
        return min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]

    def train(self, corpus: SentenceCorpus) -> None:
        for sentence in corpus.sentences:
            for word, tag in sentence:
                self._word[word][tag] += 1
                self._global[tag] += 1
                for n in range(1, MAX_SUFFIX + 1):
                    if len(word) >= n:
                        self._suffix[word[-n:]][tag] += 1

    def tag(self, word: str) -> str:
        if word in self._word:
            return self._best(self._word[word])
        for n in range(MAX_SUFFIX, 0, -1):
            sfx = word[-n:]
            if len(word) >= n and sfx in self._suffix:
                return self._best(self._suffix[sfx])
        return self._best(self._global) if self._global else ""

    def evaluate(self, heldout: SentenceCorpus) -> AccuracyReport:
        total = correct = 0
        for sentence in heldout.sentences:
            for word, tag in sentence:
                total += 1
                if self.tag(word) == tag:
                    correct += 1
        return AccuracyReport(100.0 * correct / total, total)

    def measure(self, train: SentenceCorpus, heldout: SentenceCorpus) -> AccuracyReport:
        tagger = MostFrequentTagger()
        tagger.train(train)
        return tagger.evaluate(heldout)


class ExternalLearner:
    """Runs an external command with {train} and {test} file placeholders.

    The command must print a line `accuracy: <decimal>` on stdout; a nonzero
    exit status raises ExternalCommandFailed. Temporary corpus files are
    removed afterwards.
    """

    def __init__(self, command_template: str, timeout: Optional[float] = None):
        if "{train}" not in command_template or "{test}" not in command_template:
            raise ValueError("command template needs {train} and {test} placeholders")
        self.command_template = command_template
        self.timeout = timeout

    def measure(self, train: SentenceCorpus, heldout: SentenceCorpus) -> AccuracyReport:
        with tempfile.TemporaryDirectory(prefix="colts-") as tmp:
            train_path = Path(tmp) / "train.tsv"
            test_path = Path(tmp) / "test.tsv"
            train_path.write_text(train.to_text(), encoding="utf-8")
            test_path.write_text(heldout.to_text(), encoding="utf-8")
            cmd = self.command_template.format(train=train_path, test=test_path)
            proc = subprocess.run(cmd, shell=True, capture_output=True,
                                  text=True, timeout=self.timeout)
        if proc.returncode != 0:
            raise ExternalCommandFailed(
                f"command exited {proc.returncode}: {proc.stderr.strip()[:500]}"
            )
        for line in proc.stdout.splitlines():
            if line.lower().startswith("accuracy:"):
                try:
                    acc = float(line.split(":", 1)[1].strip())
                except ValueError:
                    break
                return AccuracyReport(acc, heldout.total_words)
        raise UnparsableExternalOutput("no `accuracy: <decimal>` line on stdout")


def measure(learner, train: SentenceCorpus, heldout: SentenceCorpus) -> AccuracyReport:
    """Deterministic accuracy of `learner` trained on `train`, scored on `heldout`."""
    if train.total_words == 0 or heldout.total_words == 0:
        raise ValueError("train and heldout must be nonempty")
    return learner.measure(train, heldout)


def fold_partition(corpus: SentenceCorpus, k: int, seed: int
                   ) -> list[tuple[SentenceCorpus, SentenceCorpus]]:
    """Sentence-aligned k-fold split: per fold, (train, heldout) corpora.

    Folds are disjoint and cover the corpus; sentences keep corpus order
    inside each part. Assignment is a seeded round-robin over a shuffled
    sentence order.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(corpus.sentences) < k:
        raise ValueError("fewer sentences than folds")
    rng = np.random.default_rng(seed)
    shuffled = rng.permutation(len(corpus.sentences))
    fold_of = {int(idx): j % k for j, idx in enumerate(shuffled)}
    splits = []
    for f in range(k):
        train = tuple(s for i, s in enumerate(corpus.sentences) if fold_of[i] != f)
        held = tuple(s for i, s in enumerate(corpus.sentences) if fold_of[i] == f)
        splits.append((SentenceCorpus(train), SentenceCorpus(held)))
    return splits


def kfold_curve(learner, corpus: SentenceCorpus, positions: Sequence[int],
                k: int = 10, seed: int = 0) -> list[float]:
    """Mean accuracy over k folds at each requested training-prefix size."""
    splits = fold_partition(corpus, k, seed)
    min_train = min(tr.total_words for tr, _ in splits)
    for pos in positions:
        if pos > min_train:
            raise PositionBeyondFold(
                f"position {pos} exceeds fold training size {min_train}"
            )
    means = []
    for pos in positions:
        accs = [measure(learner, train.prefix(pos), held).accuracy
                for train, held in splits]
        means.append(math.fsum(accs) / k)
    return means
