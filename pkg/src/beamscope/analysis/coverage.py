"""Keyword matching over detokenized branches and per-rank coverage reports."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError, ContractError
from ..tree import BeamNode, BeamSearchTree
from .ranking import rank_tree


@dataclass(frozen=True)
class WordList:
    name: str
    entries: frozenset[str]
    source: str | None = None

    def __post_init__(self):
        if not self.entries:
            raise ConfigError(f"wordlist {self.name!r} is empty")

    @classmethod
    def from_entries(cls, name: str, entries, source: str | None = None) -> "WordList":
        cleaned = {e.strip().lower() for e in entries if e.strip()}
        return cls(name, frozenset(cleaned), source)

    @classmethod
    def from_file(cls, path: str | Path) -> "WordList":
        path = Path(path)
        entries = []
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                entries.append(line)
        return cls.from_entries(path.stem, entries, source=str(path))


@dataclass(frozen=True)
class KeywordMatch:
    keyword: str
    end_node_id: int
    span: tuple[int, ...]  # contiguous ancestor chain ending at end_node_id


def normalized_prob(cum_logprob: float, depth: int) -> float:
    """Depth-normalized probability: the d-th root of the cumulative
    probability, compensating for the exponential drop along a branch."""
    if depth < 1:
        raise ContractError("depth must be >= 1")
    return math.exp(cum_logprob / depth)


def _keyword_pattern(keyword: str) -> re.Pattern:
    parts = [re.escape(w) for w in keyword.split()]
    return re.compile(r"(?<!\w)" + r"\s+".join(parts) + r"(?!\w)", re.IGNORECASE)


def _effective_leaves(tree: BeamSearchTree, include_stubs: bool) -> list[BeamNode]:
    leaves = []
    for node in tree.nodes.values():
        if not include_stubs and not node.selected:
            continue
        children = tree.children(node.id)
        if not include_stubs:
            children = [c for c in children if c.selected]
        if not children:
            leaves.append(node)
    return leaves


def match_keywords(tree: BeamSearchTree, wordlist: WordList,
                   include_stubs: bool = False) -> list[KeywordMatch]:
    """Scan every root-to-leaf branch's generated text for wordlist entries.

    Matches are mapped back to the token span producing them and deduplicated
    on (keyword, end node), so occurrences on shared prefixes count once.
    """
    if not wordlist.entries:
        raise ContractError("empty wordlist")
    patterns = {kw: _keyword_pattern(kw) for kw in sorted(wordlist.entries)}
    seen: set[tuple[str, int]] = set()
    matches: list[KeywordMatch] = []
    for leaf in _effective_leaves(tree, include_stubs):
        path = tree.path_nodes(leaf.id)
        if not path:
            continue
        spans = []
        text_parts = []
        pos = 0
        for node in path:
            piece = node.token.piece
            spans.append((pos, pos + len(piece), node.id))
            text_parts.append(piece)
            pos += len(piece)
        text = "".join(text_parts)
        for keyword, pattern in patterns.items():
            for m in pattern.finditer(text):
                span_ids = tuple(nid for start, end, nid in spans
                                 if start < m.end() and end > m.start())
                end_node_id = span_ids[-1]
                key = (keyword, end_node_id)
                if key not in seen:
                    seen.add(key)
                    matches.append(KeywordMatch(keyword, end_node_id, span_ids))
    matches.sort(key=lambda m: (m.end_node_id, m.keyword))
    return matches


@dataclass
class CoverageReport:
    rows: list[tuple[int, int, float | None]]  # (rank, c, mean p_norm or None)
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "rows": [{"rank": r, "c": c, "p": p} for r, c, p in self.rows],
            "metadata": self.metadata,
        }

    def to_table(self) -> str:
        lines = [f"{'Rank':>4}  {'c':>4}  {'p':>7}"]
        for rank, c, p in self.rows:
            p_str = "N/A" if p is None else f"{p:.3f}"
            lines.append(f"{rank:>4}  {c:>4}  {p_str:>7}")
        return "\n".join(lines) + "\n"


def coverage_report(tree: BeamSearchTree, wordlist: WordList,
                    include_stubs: bool = False) -> CoverageReport:
    """Per-rank keyword counts c and averaged normalized probabilities p."""
    if all(n.rank is None for n in tree.nodes.values()):
        ranks = rank_tree(tree)
    else:
        ranks = {nid: (n.rank if n.rank is not None else 0)
                 for nid, n in tree.nodes.items()}
    matches = match_keywords(tree, wordlist, include_stubs=include_stubs)

    in_scope = [n for n in tree.nodes.values() if include_stubs or n.selected]
    max_rank = max((ranks[n.id] for n in in_scope), default=0)
    top = max(tree.params.beam_width - 1, max_rank)

    per_rank: dict[int, list[float]] = {}
    for m in matches:
        end = tree.nodes[m.end_node_id]
        per_rank.setdefault(ranks[m.end_node_id], []).append(
            normalized_prob(end.cum_logprob, end.depth))
    rows = []
    for rank in range(top + 1):
        values = per_rank.get(rank, [])
        p = sum(values) / len(values) if values else None
        rows.append((rank, len(values), p))
    return CoverageReport(rows=rows, metadata={
        "wordlist": wordlist.name,
        "beam_width": tree.params.beam_width,
        "beam_length": tree.params.beam_length,
        "provider_fingerprint": tree.provider_fingerprint,
        "include_stubs": include_stubs,
        "total_matches": len(matches),
    })
