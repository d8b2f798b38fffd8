"""Semantic grouping of tree nodes via token embeddings.

Single-linkage clustering over cosine similarity; when the provider has no
embedding capability, falls back to grouping by case-folded surface form
and flags the fallback in the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..providers.base import Provider
from ..tree import BeamSearchTree


@dataclass
class GroupResult:
    groups: dict[int, int]  # node id -> dense group id
    method: str  # "embeddings" | "piece"
    threshold: float


def _cosine(a: list[float], b: list[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(x * x for x in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def semantic_groups(tree: BeamSearchTree, provider: Provider | None,
                    threshold: float = 0.7) -> GroupResult:
    node_ids = [n.id for n in tree.generated_nodes()]
    if provider is not None and provider.supports_embeddings:
        vectors = provider.token_embeddings(
            [tree.nodes[nid].token.id for nid in node_ids])
        uf = _UnionFind(node_ids)
        for i, a in enumerate(node_ids):
            for b, vec_b in zip(node_ids[i + 1:], vectors[i + 1:]):
                if _cosine(vectors[i], vec_b) >= threshold:
                    uf.union(a, b)
        roots = {nid: uf.find(nid) for nid in node_ids}
        method = "embeddings"
    else:
        by_piece: dict[str, int] = {}
        roots = {}
        for nid in node_ids:
            key = tree.nodes[nid].token.piece.strip().casefold()
            roots[nid] = by_piece.setdefault(key, nid)
        method = "piece"

    # Dense group ids, ordered by first member's node id.
    group_ids: dict[int, int] = {}
    groups: dict[int, int] = {}
    for nid in node_ids:
        root = roots[nid]
        if root not in group_ids:
            group_ids[root] = len(group_ids)
        groups[nid] = group_ids[root]
    return GroupResult(groups=groups, method=method, threshold=threshold)
