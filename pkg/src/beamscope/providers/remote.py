"""HTTP client for the next-token distribution wire protocol.

Endpoints (JSON over HTTP):
  POST /v1/tokenize    {"text": str} -> {"tokens": [{"id", "piece"}]}
  POST /v1/topk        {"contexts": [[int]], "k": int}
                       -> {"results": [[{"id", "piece", "logprob"}]]}
  POST /v1/embeddings  {"ids": [int]} -> {"vectors": [[float]]}
                       (optional; 404 signals capability absence)
"""

from __future__ import annotations

import hashlib
from typing import Sequence

import httpx

from ..errors import ConfigError, ProviderProtocolError, ProviderTransportError
from .base import Candidate, Provider, Token


class RemoteProvider(Provider):
    kind = "remote"

    def __init__(self, base_url: str, timeout: float = 30.0,
                 max_batch_size: int = 64, eos_token_id: int | None = None,
                 client: httpx.Client | None = None):
        if not base_url:
            raise ConfigError("remote provider requires a base URL")
        if max_batch_size < 1:
            raise ConfigError("max_batch_size must be >= 1")
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.max_batch_size = max_batch_size
        self.eos_token_id = eos_token_id
        self._client = client or httpx.Client(timeout=timeout)
        self._embeddings_supported: bool | None = None

    def _post(self, path: str, payload: dict) -> httpx.Response:
        try:
            return self._client.post(self.base_url + path, json=payload,
                                     timeout=self.timeout)
        except httpx.HTTPError as exc:
            raise ProviderTransportError(f"POST {path} failed: {exc}") from exc

    def _json(self, response: httpx.Response, path: str) -> dict:
        if response.status_code != 200:
            raise ProviderProtocolError(
                f"POST {path} returned HTTP {response.status_code}")
        try:
            body = response.json()
        except ValueError as exc:
            raise ProviderProtocolError(f"POST {path}: invalid JSON") from exc
        if not isinstance(body, dict):
            raise ProviderProtocolError(f"POST {path}: expected JSON object")
        return body

    def healthy(self) -> bool:
        try:
            self.tokenize("")
            return True
        except (ProviderTransportError, ProviderProtocolError):
            return False

    def tokenize(self, text: str) -> list[Token]:
        body = self._json(self._post("/v1/tokenize", {"text": text}), "/v1/tokenize")
        try:
            return [Token(int(t["id"]), str(t["piece"])) for t in body["tokens"]]
        except (KeyError, TypeError) as exc:
            raise ProviderProtocolError(f"malformed tokenize response: {exc}") from exc

    def top_k_next(self, context: Sequence[int], k: int) -> list[Candidate]:
        return self.top_k_next_batch([context], k)[0]

    def top_k_next_batch(
        self, contexts: Sequence[Sequence[int]], k: int
    ) -> list[list[Candidate]]:
        if k < 1:
            raise ConfigError("k must be >= 1")
        results: list[list[Candidate]] = []
        for start in range(0, len(contexts), self.max_batch_size):
            chunk = [list(c) for c in contexts[start:start + self.max_batch_size]]
            body = self._json(
                self._post("/v1/topk", {"contexts": chunk, "k": k}), "/v1/topk")
            try:
                rows = body["results"]
                if len(rows) != len(chunk):
                    raise ProviderProtocolError(
                        f"expected {len(chunk)} result rows, got {len(rows)}")
                for row in rows:
                    candidates = [
                        Candidate(Token(int(c["id"]), str(c["piece"])),
                                  float(c["logprob"]))
                        for c in row
                    ]
                    if any(c.logprob > 0 for c in candidates):
                        raise ProviderProtocolError("positive logprob in response")
                    results.append(candidates)
            except (KeyError, TypeError) as exc:
                raise ProviderProtocolError(f"malformed topk response: {exc}") from exc
        return results

    @property
    def supports_embeddings(self) -> bool:
        if self._embeddings_supported is None:
            response = self._post("/v1/embeddings", {"ids": []})
            self._embeddings_supported = response.status_code != 404
        return self._embeddings_supported

    def token_embeddings(self, ids: Sequence[int]) -> list[list[float]]:
        response = self._post("/v1/embeddings", {"ids": list(ids)})
        if response.status_code == 404:
            self._embeddings_supported = False
            return super().token_embeddings(ids)
        self._embeddings_supported = True
        body = self._json(response, "/v1/embeddings")
        try:
            return [[float(x) for x in vec] for vec in body["vectors"]]
        except (KeyError, TypeError) as exc:
            raise ProviderProtocolError(
                f"malformed embeddings response: {exc}") from exc

    def fingerprint(self) -> str:
        digest = hashlib.sha256(self.base_url.encode()).hexdigest()[:16]
        return f"remote:{digest}"
