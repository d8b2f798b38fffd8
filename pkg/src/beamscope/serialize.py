"""Canonical JSON tree documents.

Serialization is canonical: keys sorted, nodes ordered by id, so equal
trees produce byte-identical documents.
"""

from __future__ import annotations

import json

from .errors import DocumentParseError, SchemaVersionError
from .providers.base import Token
from .tree import SCHEMA_VERSION, BeamNode, BeamSearchTree, GenerationParams


def tree_to_dict(tree: BeamSearchTree) -> dict:
    nodes = []
    for nid in sorted(tree.nodes):
        n = tree.nodes[nid]
        node = {
            "id": n.id,
            "parent_id": n.parent_id,
            "token": None if n.token is None else
                     {"id": n.token.id, "piece": n.token.piece},
            "logprob": n.logprob,
            "cum_logprob": n.cum_logprob,
            "depth": n.depth,
            "selected": n.selected,
            "pruned_at_step": n.pruned_at_step,
            "completed": n.completed,
        }
        if n.rank is not None:
            node["rank"] = n.rank
        nodes.append(node)
    return {
        "schema_version": SCHEMA_VERSION,
        "meta": {
            "created": tree.created,
            "provider_fingerprint": tree.provider_fingerprint,
        },
        "params": {
            "beam_width": tree.params.beam_width,
            "beam_length": tree.params.beam_length,
            "expansion_factor": tree.params.expansion_factor,
            "record_pruned": tree.params.record_pruned,
        },
        "prompt": tree.prompt,
        "prompt_tokens": [{"id": t.id, "piece": t.piece}
                          for t in tree.prompt_tokens],
        "nodes": nodes,
    }


def serialize(tree: BeamSearchTree) -> str:
    return json.dumps(tree_to_dict(tree), sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))


def tree_from_dict(doc: dict) -> BeamSearchTree:
    if not isinstance(doc, dict):
        raise DocumentParseError("document root must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION}")
    try:
        params = GenerationParams(
            beam_width=doc["params"]["beam_width"],
            beam_length=doc["params"]["beam_length"],
            expansion_factor=doc["params"]["expansion_factor"],
            record_pruned=doc["params"]["record_pruned"],
        )
        prompt_tokens = [Token(t["id"], t["piece"])
                         for t in doc["prompt_tokens"]]
        tree = BeamSearchTree(
            prompt=doc["prompt"],
            prompt_tokens=prompt_tokens,
            provider_fingerprint=doc["meta"]["provider_fingerprint"],
            params=params,
            created=doc["meta"].get("created"),
        )
    except (KeyError, TypeError) as exc:
        raise DocumentParseError(f"malformed document header: {exc}") from exc

    tree.nodes.clear()
    tree._children.clear()
    for i, raw in enumerate(doc.get("nodes", [])):
        try:
            token = raw["token"]
            node = BeamNode(
                id=raw["id"],
                parent_id=raw["parent_id"],
                token=None if token is None else Token(token["id"], token["piece"]),
                logprob=raw["logprob"],
                cum_logprob=raw["cum_logprob"],
                depth=raw["depth"],
                selected=raw["selected"],
                pruned_at_step=raw["pruned_at_step"],
                completed=raw["completed"],
                rank=raw.get("rank"),
            )
        except (KeyError, TypeError) as exc:
            raise DocumentParseError(f"malformed node at index {i}: {exc}") from exc
        if node.id in tree.nodes:
            raise DocumentParseError(f"duplicate node id {node.id} at index {i}")
        tree.nodes[node.id] = node
        tree._children[node.id] = []
    roots = [n for n in tree.nodes.values() if n.parent_id is None]
    if len(roots) != 1:
        raise DocumentParseError(f"expected exactly one root, found {len(roots)}")
    tree._root_id = roots[0].id
    for node in tree.nodes.values():
        if node.parent_id is not None:
            if node.parent_id not in tree.nodes:
                raise DocumentParseError(
                    f"node {node.id} references missing parent {node.parent_id}")
            tree._children[node.parent_id].append(node.id)
    for children in tree._children.values():
        children.sort()
    return tree


def deserialize(document: str) -> BeamSearchTree:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"invalid JSON: {exc}") from exc
    return tree_from_dict(doc)
