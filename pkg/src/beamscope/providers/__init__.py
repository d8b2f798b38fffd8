from .base import Candidate, Provider, Token, piece_word, split_pieces
from .config import build_provider
from .mock import MockProvider
from .ngram import NGramProvider
from .remote import RemoteProvider

__all__ = [
    "Candidate",
    "MockProvider",
    "NGramProvider",
    "Provider",
    "RemoteProvider",
    "Token",
    "build_provider",
    "piece_word",
    "split_pieces",
]
