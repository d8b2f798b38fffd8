"""Plain-text and DOT renderers for beam search trees."""

from __future__ import annotations

import math

from .tree import BeamSearchTree


def _label(node) -> str:
    if node.token is None:
        return "<root>"
    return node.token.piece.strip() or repr(node.token.piece)


def render_text(tree: BeamSearchTree) -> str:
    """One line per node, indented by depth: piece, conditional probability
    to 3 decimals, and a stub/eos marker."""
    lines = []

    def visit(node):
        marker = ""
        if not node.selected:
            marker = " [stub]"
        elif node.completed:
            marker = " [eos]"
        prob = math.exp(node.logprob)
        lines.append(f"{'  ' * node.depth}{_label(node)} ({prob:.3f}){marker}")
        for child in tree.children(node.id):
            visit(child)

    visit(tree.root)
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(tree: BeamSearchTree) -> str:
    """Directed graph with edge labels carrying the conditional probability
    and pen width proportional to it."""
    lines = ["digraph beam_search_tree {", "  rankdir=LR;",
             "  node [shape=box];"]
    for nid in sorted(tree.nodes):
        node = tree.nodes[nid]
        attrs = [f"label={_quote(_label(node))}"]
        if not node.selected:
            attrs.append("style=dashed")
        lines.append(f"  n{nid} [{', '.join(attrs)}];")
    for nid in sorted(tree.nodes):
        node = tree.nodes[nid]
        if node.parent_id is None:
            continue
        prob = math.exp(node.logprob)
        width = 0.5 + 4.0 * prob
        lines.append(
            f"  n{node.parent_id} -> n{nid} "
            f"[label={_quote(f'{prob:.3f}')}, penwidth={width:.2f}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
