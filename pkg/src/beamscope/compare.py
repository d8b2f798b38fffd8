"""Placeholder-template expansion and comparative tree generation.

A template contains exactly one "<PH>" marker; each replacement is inserted
verbatim (no trimming, so whitespace-only replacements stay visible) and
yields its own beam search tree for side-by-side analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis.coverage import CoverageReport, WordList, coverage_report, match_keywords
from .errors import ConfigError
from .providers.base import Provider
from .tree import BeamSearchTree, GenerationParams, generate_tree

MARKER = "<PH>"


@dataclass(frozen=True)
class PromptTemplate:
    text: str
    replacements: tuple[str, ...]

    def __post_init__(self):
        if self.text.count(MARKER) != 1:
            raise ConfigError(
                f"template must contain exactly one {MARKER} marker, "
                f"found {self.text.count(MARKER)}")
        deduped = tuple(dict.fromkeys(self.replacements))
        object.__setattr__(self, "replacements", deduped)
        if not self.replacements:
            raise ConfigError("template requires at least one replacement")


def expand_template(template: PromptTemplate) -> list[str]:
    return [template.text.replace(MARKER, r) for r in template.replacements]


@dataclass
class ComparisonSet:
    template: PromptTemplate
    resolved_prompts: list[str]
    trees: list[BeamSearchTree]
    params: GenerationParams
    provider_fingerprint: str
    divergence_depth: int
    tree_ids: list[str] = field(default_factory=list)

    def manifest(self) -> dict:
        return {
            "template": self.template.text,
            "replacements": list(self.template.replacements),
            "resolved_prompts": self.resolved_prompts,
            "tree_ids": self.tree_ids,
            "divergence_depth": self.divergence_depth,
        }


def _main_branch_ids(tree: BeamSearchTree) -> list[int]:
    """Token ids along the main branch (deepest, then most probable,
    selected leaf; ties by path token ids)."""
    leaves = [n for n in tree.nodes.values() if n.selected
              and not any(c.selected for c in tree.children(n.id))]
    best = max(leaves, key=lambda n: (n.depth, n.cum_logprob,
                                      [-t for t in tree.path_token_ids(n.id)]))
    return tree.path_token_ids(best.id)


def generate_comparison(provider: Provider, template: PromptTemplate,
                        params: GenerationParams) -> ComparisonSet:
    prompts = expand_template(template)
    trees = [generate_tree(provider, prompt, params) for prompt in prompts]
    branches = [_main_branch_ids(t) for t in trees]
    divergence = 0
    if branches:
        shortest = min(len(b) for b in branches)
        while (divergence < shortest
               and len({tuple(b[:divergence + 1]) for b in branches}) == 1):
            divergence += 1
    return ComparisonSet(
        template=template,
        resolved_prompts=prompts,
        trees=trees,
        params=params,
        provider_fingerprint=provider.fingerprint(),
        divergence_depth=divergence,
    )


@dataclass
class ComparisonCoverage:
    reports: list[CoverageReport]
    partial_keywords: dict[str, list[int]]  # keyword -> tree indices containing it

    def to_dict(self) -> dict:
        return {
            "reports": [r.to_dict() for r in self.reports],
            "partial_keywords": self.partial_keywords,
        }


def coverage_comparison(comparison: ComparisonSet, wordlist: WordList,
                        include_stubs: bool = False) -> ComparisonCoverage:
    """One aligned coverage report per tree, plus the keywords present in
    some but not all trees."""
    reports = [coverage_report(t, wordlist, include_stubs=include_stubs)
               for t in comparison.trees]
    present: dict[str, list[int]] = {}
    for i, t in enumerate(comparison.trees):
        for m in match_keywords(t, wordlist, include_stubs=include_stubs):
            indices = present.setdefault(m.keyword, [])
            if i not in indices:
                indices.append(i)
    total = len(comparison.trees)
    partial = {kw: idxs for kw, idxs in sorted(present.items())
               if len(idxs) < total}
    return ComparisonCoverage(reports=reports, partial_keywords=partial)
