"""Provider interface: a uniform source of next-token distributions.

A provider owns its tokenization. Pieces are stored so that plain string
concatenation reconstructs text: within a tokenized string, every piece
carries its original leading whitespace, and candidates proposed by
``top_k_next`` carry a leading space where the surface form needs one.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

from ..errors import EmbeddingsUnsupported

# A word run optionally preceded by whitespace, or trailing whitespace.
_PIECE_RE = re.compile(r"\s*\S+|\s+$")


def split_pieces(text: str) -> list[str]:
    """Split text into pieces whose concatenation equals the input exactly.

    Each piece is a word with its preceding whitespace attached; a trailing
    whitespace run (no word after it) becomes a piece of its own.
    """
    return _PIECE_RE.findall(text)


def piece_word(piece: str) -> str:
    """Surface form of a piece: the word without leading whitespace, or the
    whitespace run itself for whitespace-only pieces."""
    stripped = piece.lstrip()
    return stripped if stripped else piece


@dataclass(frozen=True)
class Token:
    id: int
    piece: str


def encode_extra_id(base: int, text: str) -> int:
    """Deterministic id for a token outside the fixed vocabulary (whitespace
    runs, OOV words): base plus the big-endian integer of the UTF-8 bytes.
    Injective because UTF-8 has no zero leading byte for non-empty text."""
    return base + int.from_bytes(text.encode("utf-8"), "big")


def decode_extra_id(base: int, token_id: int) -> str:
    n = token_id - base
    if n <= 0:
        raise ValueError(f"id {token_id} is not an extra-token id")
    return n.to_bytes((n.bit_length() + 7) // 8, "big").decode("utf-8")


@dataclass(frozen=True)
class Candidate:
    token: Token
    logprob: float  # natural log of the conditional probability, <= 0


def sort_candidates(candidates: list[Candidate]) -> list[Candidate]:
    """Non-increasing logprob, ties by ascending token id."""
    return sorted(candidates, key=lambda c: (-c.logprob, c.token.id))


class Provider(ABC):
    """Immutable after construction; safe for concurrent queries."""

    kind: str
    eos_token_id: int | None = None

    @abstractmethod
    def tokenize(self, text: str) -> list[Token]: ...

    @abstractmethod
    def top_k_next(self, context: Sequence[int], k: int) -> list[Candidate]: ...

    def top_k_next_batch(
        self, contexts: Sequence[Sequence[int]], k: int
    ) -> list[list[Candidate]]:
        return [self.top_k_next(context, k) for context in contexts]

    def detokenize(self, tokens: Sequence[Token]) -> str:
        return "".join(t.piece for t in tokens)

    @property
    def supports_embeddings(self) -> bool:
        return False

    def token_embeddings(self, ids: Sequence[int]) -> list[list[float]]:
        raise EmbeddingsUnsupported(f"{self.kind} provider has no embeddings")

    @abstractmethod
    def fingerprint(self) -> str:
        """Stable identifier: kind plus a hash of the configuration."""
