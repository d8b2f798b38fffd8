"""Order-m n-gram provider with add-delta smoothing.

Training corpus: UTF-8 text, one sentence per line, whitespace tokenized.
Sentences are padded with m-1 start markers and one end-of-sentence marker;
the end marker doubles as the EOS token.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import ConfigError
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

START = "<s>"
EOS = "</s>"


class NGramProvider(Provider):
    kind = "ngram"

    def __init__(self, corpus: str | Path | None = None, order: int = 2,
                 delta: float = 1.0, corpus_text: str | None = None):
        if order < 1:
            raise ConfigError("ngram order must be >= 1")
        if delta <= 0:
            raise ConfigError("smoothing constant must be > 0")
        if corpus_text is None:
            if corpus is None:
                raise ConfigError("ngram provider requires a corpus")
            corpus_text = Path(corpus).read_text(encoding="utf-8")
        self.order = order
        self.delta = delta
        self._corpus_digest = hashlib.sha256(corpus_text.encode()).hexdigest()[:16]

        sentences = [line.split() for line in corpus_text.splitlines() if line.strip()]
        if not sentences:
            raise ConfigError("ngram corpus contains no sentences")
        words: set[str] = {EOS}
        for sent in sentences:
            words.update(sent)
        self._word_to_id = {w: i for i, w in enumerate(sorted(words))}
        self._id_to_word = {i: w for w, i in self._word_to_id.items()}
        self._extra_base = len(self._word_to_id)
        self.eos_token_id = self._word_to_id[EOS]

        self._ngrams: Counter = Counter()
        self._contexts: Counter = Counter()
        for sent in sentences:
            padded = [START] * (order - 1) + sent + [EOS]
            for i in range(order - 1, len(padded)):
                ctx = tuple(padded[i - order + 1:i])
                self._ngrams[ctx + (padded[i],)] += 1
                self._contexts[ctx] += 1

    @property
    def vocab_size(self) -> int:
        """Predictable vocabulary: corpus words plus the end marker."""
        return len(self._word_to_id)

    def tokenize(self, text: str) -> list[Token]:
        tokens = []
        for piece in split_pieces(text):
            word = piece_word(piece)
            if word in self._word_to_id:
                tokens.append(Token(self._word_to_id[word], piece))
            else:
                # OOV words and whitespace runs still tokenize; they simply
                # contribute unseen contexts to the smoothed model.
                tokens.append(Token(encode_extra_id(self._extra_base, word), piece))
        return tokens

    def _word_of(self, token_id: int) -> str:
        if token_id in self._id_to_word:
            return self._id_to_word[token_id]
        try:
            return decode_extra_id(self._extra_base, token_id)
        except ValueError:
            return "<unk>"

    def _context_words(self, context: Sequence[int]) -> tuple[str, ...]:
        words = [self._word_of(t) for t in context]
        need = self.order - 1
        padded = [START] * max(0, need - len(words)) + words[-need:] if need else []
        return tuple(padded)

    def top_k_next(self, context: Sequence[int], k: int) -> list[Candidate]:
        if k < 1:
            raise ConfigError("k must be >= 1")
        ctx = self._context_words(context)
        ctx_count = self._contexts.get(ctx, 0)
        denom = ctx_count + self.delta * self.vocab_size
        candidates = []
        for word, wid in self._word_to_id.items():
            count = self._ngrams.get(ctx + (word,), 0)
            p = (count + self.delta) / denom
            piece = " " + word
            candidates.append(Candidate(Token(wid, piece), math.log(p)))
        return sort_candidates(candidates)[:k]

    def fingerprint(self) -> str:
        return f"ngram:m{self.order}:d{self.delta}:{self._corpus_digest}"
