"""Wordlist-driven tree abstraction.

The collapsed view keeps only the root and the end nodes of keyword
matches; chains of hidden nodes contract into a single edge annotated
with the hidden token count, the contracted probability, and the hidden
text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..tree import BeamSearchTree
from .coverage import WordList, match_keywords


@dataclass(frozen=True)
class CollapsedEdge:
    parent_id: int
    child_id: int
    hidden_count: int
    probability: float  # product of contracted conditional probabilities
    hidden_text: str


@dataclass
class CollapsedView:
    retained_ids: list[int]
    edges: list[CollapsedEdge]
    keywords_by_node: dict[int, list[str]] = field(default_factory=dict)

    def to_dict(self, tree: BeamSearchTree) -> dict:
        nodes = []
        for nid in self.retained_ids:
            node = tree.nodes[nid]
            nodes.append({
                "id": nid,
                "piece": None if node.token is None else node.token.piece,
                "depth": node.depth,
                "cum_logprob": node.cum_logprob,
                "selected": node.selected,
                "keywords": self.keywords_by_node.get(nid, []),
            })
        return {
            "nodes": nodes,
            "edges": [{
                "parent_id": e.parent_id,
                "child_id": e.child_id,
                "hidden_count": e.hidden_count,
                "probability": e.probability,
                "hidden_text": e.hidden_text,
            } for e in self.edges],
        }


def collapse(tree: BeamSearchTree, wordlists: WordList | list[WordList],
             include_stubs: bool = False) -> CollapsedView:
    if isinstance(wordlists, WordList):
        wordlists = [wordlists]
    keywords_by_node: dict[int, list[str]] = {}
    retained: set[int] = {tree.root.id}
    for wl in wordlists:
        for m in match_keywords(tree, wl, include_stubs=include_stubs):
            retained.add(m.end_node_id)
            keywords_by_node.setdefault(m.end_node_id, []).append(m.keyword)
    for kws in keywords_by_node.values():
        kws.sort()

    edges = []
    for nid in sorted(retained):
        if nid == tree.root.id:
            continue
        node = tree.nodes[nid]
        hidden = []
        ancestor = tree.nodes[node.parent_id]
        while ancestor.id not in retained:
            hidden.append(ancestor)
            ancestor = tree.nodes[ancestor.parent_id]
        hidden.reverse()
        edges.append(CollapsedEdge(
            parent_id=ancestor.id,
            child_id=nid,
            hidden_count=len(hidden),
            probability=math.exp(node.cum_logprob - ancestor.cum_logprob),
            hidden_text="".join(h.token.piece for h in hidden),
        ))
    return CollapsedView(retained_ids=sorted(retained), edges=edges,
                         keywords_by_node=keywords_by_node)
