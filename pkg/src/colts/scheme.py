"""Learning schemes: kernel, step function, and the induced cover of the data.

Also holds the sentence corpus container used to align individuals to
sentence boundaries. Corpus files are plain UTF-8 text, one `word<TAB>tag`
token per line, with a blank line terminating each sentence.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import PositionBeyondCorpus


@dataclass(frozen=True)
class ArithmeticStep:
    """Uniform step with common difference eta."""

    eta: int

    def __post_init__(self):
        if int(self.eta) != self.eta or self.eta < 1:
            raise ValueError(f"eta must be a positive integer, got {self.eta}")


@dataclass(frozen=True)
class GeometricStep:
    """Geometric step with common ratio > 1, engaged after the guard level."""

    ratio: float

    def __post_init__(self):
        if not self.ratio > 1.0:
            raise ValueError(f"ratio must exceed 1, got {self.ratio}")


@dataclass(frozen=True)
class ColtsStep:
    """Adaptive step driven by a relevant-training probability in (0, 1]."""

    port: float

    def __post_init__(self):
        if not 0.0 < self.port <= 1.0:
            raise ValueError(f"port must lie in (0, 1], got {self.port}")


StepFunction = Union[ArithmeticStep, GeometricStep, ColtsStep]


@dataclass(frozen=True)
class LearningScheme:
    """Kernel size plus step function; induces nested individuals D1 < D2 < ...

    `plevel_guard` is the level before which every schedule steps uniformly
    by eta; geometric steps only engage after it.
    """

    kernel_size: int
    step: StepFunction
    eta: int
    plevel_guard: int | None = None

    def __post_init__(self):
        if self.kernel_size < 1:
            raise ValueError("kernel_size must be >= 1")
        if self.eta < 1:
            raise ValueError("eta must be >= 1")

    def position_of(self, level: int) -> int:
        """Word position of the individual at `level` (1-based).

        Defined in closed form for arithmetic and geometric schedules. An
        adaptive step depends on the fitted trends, so its positions can only
        be read off an executed trace.
        """
        if level < 1:
            raise ValueError("level must be >= 1")
        if isinstance(self.step, ArithmeticStep):
            return self.kernel_size + (level - 1) * self.step.eta
        if isinstance(self.step, GeometricStep):
            guard = self.plevel_guard
            if guard is None:
                raise ValueError("geometric scheme needs a plevel_guard")
            pos = self.kernel_size
            for lv in range(2, level + 1):
                if lv <= guard:
                    pos += self.eta
                else:
                    pos += math.ceil(pos * (self.step.ratio - 1.0))
            return pos
        raise ValueError("adaptive positions are data dependent; read them "
                         "from the executed trace")


@dataclass(frozen=True)
class SentenceCorpus:
    """An ordered list of sentences, each an ordered list of (word, tag) pairs."""

    sentences: tuple[tuple[tuple[str, str], ...], ...]
    _ends: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        for s in self.sentences:
            if not s:
                raise ValueError("empty sentence in corpus")
        ends, total = [], 0
        for s in self.sentences:
            total += len(s)
            ends.append(total)
        object.__setattr__(self, "_ends", tuple(ends))

    @property
    def total_words(self) -> int:
        return self._ends[-1] if self._ends else 0

    @classmethod
    def from_text(cls, text: str) -> "SentenceCorpus":
        sentences, current = [], []
        for raw in text.splitlines():
            line = raw.strip("\n")
            if not line.strip():
                if current:
                    sentences.append(tuple(current))
                    current = []
                continue
            word, sep, tag = line.partition("\t")
            if not sep:
                raise ValueError(f"malformed corpus line (no tab): {line!r}")
            current.append((word, tag))
        if current:
            sentences.append(tuple(current))
        return cls(tuple(sentences))

    @classmethod
    def from_file(cls, path: str | Path) -> "SentenceCorpus":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def to_text(self) -> str:
        blocks = ["\n".join(f"{w}\t{t}" for w, t in s) for s in self.sentences]
        return "\n\n".join(blocks) + "\n"

    def align_to_sentences(self, word_position: int) -> int:
        """Word position of the first sentence ending at or beyond `word_position`."""
        if word_position < 1 or word_position > self.total_words:
            raise PositionBeyondCorpus(
                f"position {word_position} outside corpus of {self.total_words} words"
            )
        idx = bisect.bisect_left(self._ends, word_position)
        return self._ends[idx]

    def prefix(self, word_position: int) -> "SentenceCorpus":
        """Minimal set of leading sentences covering `word_position` words."""
        end = self.align_to_sentences(word_position)
        idx = self._ends.index(end)
        return SentenceCorpus(self.sentences[: idx + 1])

    def scramble(self, seed: int) -> "SentenceCorpus":
        """Deterministic sentence-level permutation of the corpus."""
        rng = np.random.default_rng(seed)
        order = rng.permutation(len(self.sentences))
        return SentenceCorpus(tuple(self.sentences[i] for i in order))
