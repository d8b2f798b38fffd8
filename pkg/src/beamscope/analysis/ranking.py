"""Branch ranking by discard order.

Every node's rank reflects the order in which beam search discarded the
branch through it: the main branch keeps rank 0, and at each branching
point the child whose subtree survives longest (deepest best leaf, then
highest cumulative probability) inherits the parent's rank while siblings
get consecutively higher ranks.
"""

from __future__ import annotations

from ..tree import BeamSearchTree


def rank_tree(tree: BeamSearchTree) -> dict[int, int]:
    """Assign a rank to every node; returns node id -> rank."""
    # Best leaf per subtree: (depth, cum_logprob) lexicographic maximum,
    # computed bottom-up. A childless node is its own best leaf.
    best: dict[int, tuple[int, float]] = {}
    order = sorted(tree.nodes.values(), key=lambda n: n.depth, reverse=True)
    for node in order:
        children = tree.children(node.id)
        if not children:
            best[node.id] = (node.depth, node.cum_logprob)
        else:
            best[node.id] = max(best[c.id] for c in children)

    ranks: dict[int, int] = {tree.root.id: 0}
    stack = [tree.root.id]
    while stack:
        parent_id = stack.pop()
        children = sorted(
            tree.children(parent_id),
            key=lambda c: (-best[c.id][0], -best[c.id][1], c.token.id),
        )
        for i, child in enumerate(children):
            ranks[child.id] = ranks[parent_id] + i
            stack.append(child.id)
    return ranks


def annotate_ranks(tree: BeamSearchTree) -> dict[int, int]:
    """Compute ranks and store them on the nodes."""
    ranks = rank_tree(tree)
    for nid, rank in ranks.items():
        tree.nodes[nid].rank = rank
    return ranks
