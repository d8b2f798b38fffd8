"""Deterministic table-backed provider for hand-computable tests.

The distribution table maps an exact context suffix (word tuple) to an
explicit next-word distribution. Lookup tries the longest matching suffix
of the (optionally windowed) context, then the empty-context row, then the
configured default row.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from typing import Sequence

from ..errors import ConfigError, ModelError, VocabularyError
from .base import (
    Candidate,
    Provider,
    Token,
    decode_extra_id,
    encode_extra_id,
    piece_word,
    sort_candidates,
    split_pieces,
)

ROW_SUM_TOL = 1e-9


def _context_key(key) -> tuple[str, ...]:
    if isinstance(key, str):
        return tuple(key.split())
    return tuple(key)


class MockProvider(Provider):
    kind = "mock"

    def __init__(self, config: dict):
        self._config = config
        rows = config.get("rows")
        if not isinstance(rows, dict) or not rows:
            raise ConfigError("mock provider requires a non-empty 'rows' table")
        self._rows: dict[tuple[str, ...], dict[str, float]] = {}
        words: set[str] = set(config.get("vocab", ()))
        for key, dist in rows.items():
            ctx = _context_key(key)
            self._validate_row(key, dist)
            self._rows[ctx] = dict(dist)
            words.update(ctx)
            words.update(dist)
        self._default_row = config.get("default_row")
        if self._default_row is not None:
            self._validate_row("default_row", self._default_row)
            words.update(self._default_row)
        eos_word = config.get("eos")
        if eos_word is not None:
            words.add(eos_word)
        self._window = config.get("window")
        if self._window is not None and self._window < 0:
            raise ConfigError("window must be >= 0")
        self._delay_s = config.get("delay_ms", 0) / 1000.0

        self._word_to_id = {w: i for i, w in enumerate(sorted(words))}
        self._id_to_word = {i: w for w, i in self._word_to_id.items()}
        # Whitespace runs get deterministic ids above the vocabulary.
        self._extra_base = len(self._word_to_id)

        self.eos_token_id = config.get("eos_token_id")
        if eos_word is not None:
            self.eos_token_id = self._word_to_id[eos_word]

        embeddings = config.get("embeddings")
        self._embeddings: dict[int, list[float]] | None = None
        if embeddings:
            dims = {len(v) for v in embeddings.values()}
            if len(dims) != 1:
                raise ConfigError("embedding vectors must share one dimension")
            self._embeddings = {
                self._word_to_id[w]: [float(x) for x in v]
                for w, v in embeddings.items()
            }

    @staticmethod
    def _validate_row(key, dist) -> None:
        if not isinstance(dist, dict) or not dist:
            raise ConfigError(f"empty distribution row for context {key!r}")
        total = 0.0
        for word, p in dist.items():
            if not 0.0 < p <= 1.0:
                raise ConfigError(f"probability {p} for {word!r} outside (0, 1]")
            total += p
        if abs(total - 1.0) > ROW_SUM_TOL:
            raise ConfigError(f"row {key!r} sums to {total}, expected 1.0")

    # -- tokenization ----------------------------------------------------

    def tokenize(self, text: str) -> list[Token]:
        tokens = []
        for piece in split_pieces(text):
            word = piece_word(piece)
            leading = piece[:len(piece) - len(word)]
            if not word.strip():
                tokens.append(Token(encode_extra_id(self._extra_base, piece), piece))
            elif word not in self._word_to_id:
                raise VocabularyError(f"word {word!r} not in mock vocabulary")
            elif leading in ("", " "):
                tokens.append(Token(self._word_to_id[word], piece))
            else:
                # Non-canonical spacing is significant: the same word after a
                # double space is a different token.
                tokens.append(Token(encode_extra_id(self._extra_base, piece), piece))
        return tokens

    def _word_of(self, token_id: int) -> str:
        if token_id in self._id_to_word:
            return self._id_to_word[token_id]
        try:
            return piece_word(decode_extra_id(self._extra_base, token_id))
        except ValueError:
            raise VocabularyError(f"unknown token id {token_id}") from None

    # -- distributions ---------------------------------------------------

    def _row_for(self, context: Sequence[int]) -> dict[str, float]:
        words = [self._word_of(t) for t in context]
        if self._window is not None:
            words = words[len(words) - min(self._window, len(words)):]
        for length in range(len(words), -1, -1):
            key = tuple(words[len(words) - length:])
            if key in self._rows:
                return self._rows[key]
        if self._default_row is not None:
            return self._default_row
        raise ModelError(f"no distribution row for context {tuple(words)!r}")

    def top_k_next(self, context: Sequence[int], k: int) -> list[Candidate]:
        if k < 1:
            raise ConfigError("k must be >= 1")
        if self._delay_s:
            time.sleep(self._delay_s)
        row = self._row_for(context)
        candidates = []
        for word, p in row.items():
            piece = word if not word.strip() else " " + word
            candidates.append(
                Candidate(Token(self._word_to_id[word], piece), math.log(p))
            )
        return sort_candidates(candidates)[:k]

    @property
    def vocab_size(self) -> int:
        return len(self._word_to_id)

    # -- embeddings ------------------------------------------------------

    @property
    def supports_embeddings(self) -> bool:
        return self._embeddings is not None

    def token_embeddings(self, ids: Sequence[int]) -> list[list[float]]:
        if self._embeddings is None:
            return super().token_embeddings(ids)
        try:
            return [list(self._embeddings[i]) for i in ids]
        except KeyError as exc:
            raise ModelError(f"no embedding for token id {exc.args[0]}") from exc

    def fingerprint(self) -> str:
        normalized = {
            "rows": {" ".join(k): v for k, v in sorted(self._rows.items())},
            "default_row": self._default_row,
            "window": self._window,
            "eos_token_id": self.eos_token_id,
            "embeddings": sorted(self._embeddings) if self._embeddings else None,
        }
        digest = hashlib.sha256(
            json.dumps(normalized, sort_keys=True).encode()
        ).hexdigest()[:16]
        return f"mock:{digest}"
