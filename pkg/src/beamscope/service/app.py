"""HTTP service exposing providers, trees, analysis, and comparison.

All responses use canonical JSON (sorted keys, compact separators) so
identical stored state always produces byte-identical bodies.
"""

from __future__ import annotations

import json
import typing

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis.collapse import collapse as collapse_tree
from ..analysis.coverage import coverage_report
from ..analysis.groups import semantic_groups
from ..analysis.ranking import annotate_ranks
from ..analysis.sentiment import SentimentLexicon, sentiment_score
from ..compare import ComparisonSet, PromptTemplate, coverage_comparison, generate_comparison
from ..errors import (
    BeamscopeError,
    ConfigError,
    ContractError,
    DocumentParseError,
    InvalidTargetError,
    ModelError,
    ProviderProtocolError,
    ProviderTransportError,
    SchemaVersionError,
    UnknownNodeError,
    VocabularyError,
)
from ..providers import RemoteProvider, build_provider
from ..serialize import deserialize, serialize, tree_from_dict, tree_to_dict
from ..tree import GenerationParams, expand_from_node, generate_tree
from .config import ServiceConfig
from .store import FileStore


class CanonicalJSONResponse(JSONResponse):
    def render(self, content: typing.Any) -> bytes:
        return json.dumps(content, sort_keys=True, ensure_ascii=False,
                          separators=(",", ":")).encode("utf-8")


class ApiError(Exception):
    def __init__(self, status_code: int, detail: str):
        self.status_code = status_code
        self.detail = detail


_ERROR_CODES: list[tuple[type, int]] = [
    (UnknownNodeError, 404),
    (InvalidTargetError, 422),
    (ConfigError, 422),
    (ContractError, 422),
    (VocabularyError, 422),
    (SchemaVersionError, 422),
    (DocumentParseError, 422),
    (ModelError, 422),
    (ProviderTransportError, 504),
    (ProviderProtocolError, 502),
]


def _params_from(body: dict) -> GenerationParams:
    try:
        return GenerationParams(
            beam_width=int(body["k"]),
            beam_length=int(body["n"]),
            expansion_factor=int(body["e"]) if body.get("e") is not None else None,
            record_pruned=bool(body.get("record_pruned", True)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ApiError(422, f"invalid generation parameters: {exc}")


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = FileStore(config.data_dir)
    lexicon = SentimentLexicon.bundled()
    app = FastAPI(title="beamscope", version=__version__,
                  default_response_class=CanonicalJSONResponse)
    app.state.store = store
    app.state.config = config

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return CanonicalJSONResponse({"detail": exc.detail},
                                     status_code=exc.status_code)

    @app.exception_handler(BeamscopeError)
    async def handle_beamscope_error(request: Request, exc: BeamscopeError):
        for cls, code in _ERROR_CODES:
            if isinstance(exc, cls):
                return CanonicalJSONResponse({"detail": str(exc)},
                                             status_code=code)
        return CanonicalJSONResponse({"detail": str(exc)}, status_code=500)

    # -- helpers ---------------------------------------------------------

    def provider_for(provider_id: str):
        cfg = store.get_provider(provider_id)
        if cfg is None:
            raise ApiError(404, f"unknown provider {provider_id!r}")
        return build_provider(cfg)

    def tree_or_404(tree_id: str):
        document = store.load_tree(tree_id)
        if document is None:
            raise ApiError(404, f"unknown tree {tree_id!r}")
        return deserialize(document)

    def wordlist_or_422(name: str):
        wordlist = store.load_wordlist(name)
        if wordlist is None:
            raise ApiError(422, f"unknown wordlist {name!r}")
        return wordlist

    def check_call_cap(params: GenerationParams, count: int = 1) -> None:
        calls = (params.beam_width * params.effective_expansion
                 * params.beam_length * count)
        if calls > config.call_cap:
            raise ApiError(422,
                           f"generation would issue up to {calls} candidate "
                           f"queries, exceeding the cap of {config.call_cap}")

    # -- providers -------------------------------------------------------

    @app.post("/api/providers", status_code=201)
    def register_provider(body: dict):
        provider = build_provider(body)  # 422 on invalid config
        if isinstance(provider, RemoteProvider) and not provider.healthy():
            raise ApiError(502, f"remote provider at {provider.base_url} "
                                "failed the health probe")
        provider_id = store.add_provider(body)
        return {"provider_id": provider_id, "config": body}

    @app.get("/api/providers")
    def list_providers():
        providers = store.list_providers()
        return {"providers": [{"id": pid, "config": providers[pid]}
                              for pid in sorted(providers)]}

    # -- trees -----------------------------------------------------------

    @app.post("/api/trees", status_code=201)
    def create_tree(body: dict):
        provider = provider_for(str(body.get("provider_id")))
        params = _params_from(body)
        check_call_cap(params)
        prompt = body.get("prompt", "")
        tree = generate_tree(provider, prompt, params)
        document = serialize(tree)
        tree_id = store.save_tree(document, body.get("provider_id"))
        return {"tree_id": tree_id, "tree": json.loads(document)}

    @app.post("/api/trees/{tree_id}/expand")
    def expand_tree(tree_id: str, body: dict):
        lock = store.tree_lock(tree_id)
        if not lock.acquire(blocking=False):
            raise ApiError(409, f"tree {tree_id!r} is being mutated")
        try:
            tree = tree_or_404(tree_id)
            provider_id = store.tree_provider_id(tree_id)
            if provider_id is None:
                raise ApiError(422, f"tree {tree_id!r} has no provider binding")
            provider = provider_for(provider_id)
            params = _params_from(body)
            check_call_cap(params)
            node_id = body.get("node_id")
            if not isinstance(node_id, int):
                raise ApiError(422, "node_id must be an integer")
            expand_from_node(provider, tree, node_id, params)
            document = serialize(tree)
            store.save_tree(document, provider_id, tree_id=tree_id)
            return {"tree_id": tree_id, "tree": json.loads(document)}
        finally:
            lock.release()

    @app.get("/api/trees")
    def list_trees():
        return {"trees": store.list_trees()}

    @app.get("/api/trees/{tree_id}")
    def get_tree(tree_id: str, wordlist: str | None = None,
                 collapse: bool = False, ranks: bool = False,
                 sentiment: bool = False, groups: bool = False,
                 include_stubs: bool = False):
        tree = tree_or_404(tree_id)
        response: dict = {"tree_id": tree_id}
        if ranks:
            annotate_ranks(tree)
        response["tree"] = tree_to_dict(tree)
        if sentiment:
            response["sentiment"] = {
                str(n.id): {"score": s.score, "label": s.label}
                for n in tree.generated_nodes()
                for s in [sentiment_score(
                    "".join(p.token.piece for p in tree.path_nodes(n.id)),
                    lexicon)]
            }
        if groups:
            provider = None
            provider_id = store.tree_provider_id(tree_id)
            if provider_id is not None:
                cfg = store.get_provider(provider_id)
                if cfg is not None:
                    provider = build_provider(cfg)
            result = semantic_groups(tree, provider)
            response["groups"] = {
                "method": result.method,
                "by_node": {str(nid): gid for nid, gid in result.groups.items()},
            }
        if collapse:
            if wordlist is None:
                raise ApiError(422, "collapse requires a wordlist")
            view = collapse_tree(tree, wordlist_or_422(wordlist),
                                 include_stubs=include_stubs)
            response["collapsed"] = view.to_dict(tree)
        return response

    @app.get("/api/trees/{tree_id}/coverage")
    def tree_coverage(tree_id: str, wordlist: str,
                      include_stubs: bool = False):
        tree = tree_or_404(tree_id)
        report = coverage_report(tree, wordlist_or_422(wordlist),
                                 include_stubs=include_stubs)
        return report.to_dict()

    # -- comparison ------------------------------------------------------

    @app.post("/api/compare", status_code=201)
    def create_comparison(body: dict):
        provider = provider_for(str(body.get("provider_id")))
        try:
            template = PromptTemplate(
                text=str(body["template"]),
                replacements=tuple(body["replacements"]),
            )
        except KeyError as exc:
            raise ApiError(422, f"missing field {exc}")
        params = _params_from(body)
        check_call_cap(params, count=len(template.replacements))
        comparison = generate_comparison(provider, template, params)
        for tree in comparison.trees:
            comparison.tree_ids.append(
                store.save_tree(serialize(tree), body.get("provider_id")))
        manifest = comparison.manifest()
        comparison_id = store.save_comparison(manifest)
        return {"comparison_id": comparison_id, "manifest": manifest}

    def load_comparison_set(comparison_id: str) -> ComparisonSet:
        manifest = store.load_comparison(comparison_id)
        if manifest is None:
            raise ApiError(404, f"unknown comparison {comparison_id!r}")
        trees = [tree_or_404(tid) for tid in manifest["tree_ids"]]
        return ComparisonSet(
            template=PromptTemplate(manifest["template"],
                                    tuple(manifest["replacements"])),
            resolved_prompts=manifest["resolved_prompts"],
            trees=trees,
            params=trees[0].params,
            provider_fingerprint=trees[0].provider_fingerprint,
            divergence_depth=manifest["divergence_depth"],
            tree_ids=list(manifest["tree_ids"]),
        )

    @app.get("/api/compare/{comparison_id}")
    def get_comparison(comparison_id: str):
        manifest = store.load_comparison(comparison_id)
        if manifest is None:
            raise ApiError(404, f"unknown comparison {comparison_id!r}")
        return {"comparison_id": comparison_id, "manifest": manifest}

    @app.get("/api/compare/{comparison_id}/coverage")
    def comparison_coverage(comparison_id: str, wordlist: str,
                            include_stubs: bool = False):
        comparison = load_comparison_set(comparison_id)
        result = coverage_comparison(comparison, wordlist_or_422(wordlist),
                                     include_stubs=include_stubs)
        payload = result.to_dict()
        payload["tree_ids"] = comparison.tree_ids
        return payload

    # -- wordlists -------------------------------------------------------

    @app.post("/api/wordlists", status_code=201)
    def upload_wordlist(body: dict):
        name = body.get("name")
        content = body.get("content", "")
        if not isinstance(name, str) or not name:
            raise ApiError(422, "wordlist name required")
        wordlist = store.save_wordlist(name, content)  # 422 if empty
        return {"name": name, "entries": sorted(wordlist.entries)}

    @app.get("/api/wordlists")
    def list_wordlists():
        return {"wordlists": store.list_wordlists()}

    return app
