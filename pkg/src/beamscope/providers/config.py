"""Provider construction from plain configuration dictionaries."""

from __future__ import annotations

from ..errors import ConfigError
from .base import Provider
from .mock import MockProvider
from .ngram import NGramProvider
from .remote import RemoteProvider

KINDS = ("mock", "ngram", "remote")


def build_provider(config: dict) -> Provider:
    """Validate a ProviderConfig dictionary and build the provider."""
    if not isinstance(config, dict):
        raise ConfigError("provider config must be an object")
    kind = config.get("kind")
    if kind == "mock":
        return MockProvider(config)
    if kind == "ngram":
        return NGramProvider(
            corpus=config.get("corpus"),
            corpus_text=config.get("corpus_text"),
            order=config.get("order", 2),
            delta=config.get("delta", 1.0),
        )
    if kind == "remote":
        return RemoteProvider(
            base_url=config.get("base_url", ""),
            timeout=config.get("timeout", 30.0),
            max_batch_size=config.get("max_batch_size", 64),
            eos_token_id=config.get("eos_token_id"),
        )
    raise ConfigError(f"unknown provider kind {kind!r}; expected one of {KINDS}")
