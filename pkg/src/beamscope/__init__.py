"""Beam search tree exploration for generative language models."""

__version__ = "0.1.0"

from .compare import (
    ComparisonCoverage,
    ComparisonSet,
    PromptTemplate,
    coverage_comparison,
    expand_template,
    generate_comparison,
)
from .providers import (
    Candidate,
    MockProvider,
    NGramProvider,
    Provider,
    RemoteProvider,
    Token,
    build_provider,
)
from .render import render_dot, render_text
from .serialize import deserialize, serialize, tree_from_dict, tree_to_dict
from .tree import (
    BeamNode,
    BeamSearchTree,
    GenerationParams,
    expand_from_node,
    generate_tree,
)

__all__ = [
    "BeamNode",
    "BeamSearchTree",
    "Candidate",
    "ComparisonCoverage",
    "ComparisonSet",
    "GenerationParams",
    "MockProvider",
    "NGramProvider",
    "PromptTemplate",
    "Provider",
    "RemoteProvider",
    "Token",
    "build_provider",
    "coverage_comparison",
    "deserialize",
    "expand_from_node",
    "expand_template",
    "generate_comparison",
    "generate_tree",
    "render_dot",
    "render_text",
    "serialize",
    "tree_from_dict",
    "tree_to_dict",
]
