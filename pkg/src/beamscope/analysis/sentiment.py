"""Small lexicon-based sentiment scorer for branch highlighting."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import ConfigError

NEGATIVE_THRESHOLD = -0.15
POSITIVE_THRESHOLD = 0.15

_WORD_RE = re.compile(r"[\w']+")


@dataclass(frozen=True)
class SentimentScore:
    score: float
    label: str  # negative | neutral | positive


class SentimentLexicon:
    """Mapping of lowercase words to valences in [-1, 1]."""

    def __init__(self, valences: dict[str, float]):
        if not valences:
            raise ConfigError("sentiment lexicon is empty")
        self.valences = {}
        for word, v in valences.items():
            v = float(v)
            if not -1.0 <= v <= 1.0:
                raise ConfigError(f"valence {v} for {word!r} outside [-1, 1]")
            self.valences[word.strip().lower()] = v

    @classmethod
    def from_file(cls, path: str | Path) -> "SentimentLexicon":
        valences = {}
        for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ConfigError(f"lexicon line {i + 1}: expected word<TAB>valence")
            valences[parts[0]] = float(parts[1])
        return cls(valences)

    @classmethod
    def bundled(cls) -> "SentimentLexicon":
        ref = resources.files("beamscope.data") / "sentiment_lexicon.tsv"
        with resources.as_file(ref) as path:
            return cls.from_file(path)


def _label(score: float) -> str:
    if score < NEGATIVE_THRESHOLD:
        return "negative"
    if score > POSITIVE_THRESHOLD:
        return "positive"
    return "neutral"


def sentiment_score(text: str, lexicon: SentimentLexicon) -> SentimentScore:
    """Mean valence over lexicon words found in the text; neutral 0 if none."""
    values = [lexicon.valences[w] for w in
              (m.group(0).lower() for m in _WORD_RE.finditer(text))
              if w in lexicon.valences]
    score = sum(values) / len(values) if values else 0.0
    return SentimentScore(score=score, label=_label(score))
