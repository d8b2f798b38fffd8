"""Beam search tree construction and access.

The tree keeps every hypothesis that ever entered the beam, plus (by
default) never-selected candidate stubs, so discarded alternatives stay
inspectable. Everything is deterministic: the provider is deterministic,
pool ties break on (lexicographically earlier parent path, smaller token
id), and node ids are dense integers in creation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, InvalidTargetError, UnknownNodeError
from .providers.base import Provider, Token

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GenerationParams:
    beam_width: int
    beam_length: int
    expansion_factor: int | None = None  # defaults to beam_width
    record_pruned: bool = True

    def __post_init__(self):
        if self.beam_width < 1:
            raise ConfigError("beam_width must be >= 1")
        if self.beam_length < 1:
            raise ConfigError("beam_length must be >= 1")
        if self.expansion_factor is not None and self.expansion_factor < 1:
            raise ConfigError("expansion_factor must be >= 1")

    @property
    def effective_expansion(self) -> int:
        return self.expansion_factor or self.beam_width


@dataclass
class BeamNode:
    id: int
    parent_id: int | None
    token: Token | None  # None on the root
    logprob: float  # conditional log-probability; 0.0 on the root
    cum_logprob: float  # sum of logprobs root -> node
    depth: int  # tokens from root; root is 0
    selected: bool
    pruned_at_step: int | None = None
    completed: bool = False
    rank: int | None = None


class BeamSearchTree:
    def __init__(self, prompt: str, prompt_tokens: list[Token],
                 provider_fingerprint: str, params: GenerationParams,
                 created: str | None = None):
        self.prompt = prompt
        self.prompt_tokens = list(prompt_tokens)
        self.provider_fingerprint = provider_fingerprint
        self.params = params
        self.created = created
        self.nodes: dict[int, BeamNode] = {}
        self._children: dict[int, list[int]] = {}
        root = BeamNode(id=0, parent_id=None, token=None, logprob=0.0,
                        cum_logprob=0.0, depth=0, selected=True)
        self.nodes[0] = root
        self._children[0] = []
        self._root_id = 0

    @property
    def root(self) -> BeamNode:
        return self.nodes[self._root_id]

    def node(self, node_id: int) -> BeamNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNodeError(f"no node with id {node_id}") from None

    def children(self, node_id: int) -> list[BeamNode]:
        self.node(node_id)
        return [self.nodes[c] for c in self._children.get(node_id, ())]

    def add_node(self, parent_id: int, token: Token, logprob: float, *,
                 selected: bool, pruned_at_step: int | None = None,
                 completed: bool = False) -> BeamNode:
        parent = self.node(parent_id)
        node = BeamNode(
            id=max(self.nodes) + 1,
            parent_id=parent_id,
            token=token,
            logprob=logprob,
            cum_logprob=parent.cum_logprob + logprob,
            depth=parent.depth + 1,
            selected=selected,
            pruned_at_step=pruned_at_step,
            completed=completed,
        )
        self.nodes[node.id] = node
        self._children[node.id] = []
        self._children[parent_id].append(node.id)
        return node

    def path_nodes(self, node_id: int) -> list[BeamNode]:
        """Nodes from root to node_id inclusive (root excluded: it has no token)."""
        path = []
        node = self.node(node_id)
        while node.parent_id is not None:
            path.append(node)
            node = self.nodes[node.parent_id]
        path.reverse()
        return path

    def path_token_ids(self, node_id: int) -> list[int]:
        return [n.token.id for n in self.path_nodes(node_id)]

    def context_ids(self, node_id: int) -> list[int]:
        return [t.id for t in self.prompt_tokens] + self.path_token_ids(node_id)

    def path_text(self, node_id: int) -> str:
        generated = "".join(n.token.piece for n in self.path_nodes(node_id))
        return self.prompt + generated

    def leaves(self, include_stubs: bool = True):
        for node in self.nodes.values():
            if not self._children[node.id]:
                if include_stubs or node.selected:
                    yield node

    def generated_nodes(self) -> list[BeamNode]:
        """All non-root nodes, in id order."""
        return [self.nodes[i] for i in sorted(self.nodes) if i != self._root_id]

    def max_depth(self) -> int:
        return max(n.depth for n in self.nodes.values())


@dataclass(frozen=True)
class _PoolEntry:
    cum_logprob: float
    parent_path: tuple[int, ...]
    token: Token
    logprob: float
    parent_id: int

    @property
    def sort_key(self):
        return (-self.cum_logprob, self.parent_path, self.token.id)


def _beam_search(tree: BeamSearchTree, provider: Provider, start_id: int,
                 params: GenerationParams) -> None:
    """Grow the tree under start_id by up to beam_length steps."""
    k = params.beam_width
    e = params.effective_expansion
    frontier = [start_id]
    completed_slots = 0
    path_cache = {start_id: tuple(tree.path_token_ids(start_id))}

    for step in range(1, params.beam_length + 1):
        slots = k - completed_slots
        if not frontier or slots <= 0:
            break
        contexts = [tree.context_ids(nid) for nid in frontier]
        batches = provider.top_k_next_batch(contexts, e)
        pool: list[_PoolEntry] = []
        for nid, candidates in zip(frontier, batches):
            parent_path = path_cache[nid]
            for cand in candidates:
                pool.append(_PoolEntry(
                    cum_logprob=tree.nodes[nid].cum_logprob + cand.logprob,
                    parent_path=parent_path,
                    token=cand.token,
                    logprob=cand.logprob,
                    parent_id=nid,
                ))
        pool.sort(key=lambda entry: entry.sort_key)
        chosen, discarded = pool[:slots], pool[slots:]

        next_frontier = []
        for entry in chosen:
            is_eos = (provider.eos_token_id is not None
                      and entry.token.id == provider.eos_token_id)
            node = tree.add_node(entry.parent_id, entry.token, entry.logprob,
                                 selected=True, completed=is_eos)
            path_cache[node.id] = path_cache[entry.parent_id] + (entry.token.id,)
            if is_eos:
                completed_slots += 1
            else:
                next_frontier.append(node.id)
        if params.record_pruned:
            for entry in discarded:
                tree.add_node(entry.parent_id, entry.token, entry.logprob,
                              selected=False, pruned_at_step=step)
        chosen_parents = {entry.parent_id for entry in chosen}
        for nid in frontier:
            if nid not in chosen_parents:
                tree.nodes[nid].pruned_at_step = step
        frontier = next_frontier


def generate_tree(provider: Provider, prompt: str, params: GenerationParams,
                  created: str | None = None) -> BeamSearchTree:
    prompt_tokens = provider.tokenize(prompt)
    tree = BeamSearchTree(prompt, prompt_tokens, provider.fingerprint(),
                          params, created=created)
    _beam_search(tree, provider, 0, params)
    return tree


def expand_from_node(provider: Provider, tree: BeamSearchTree, node_id: int,
                     params: GenerationParams) -> BeamSearchTree:
    """Run beam search with the node's root-path as context, grafting the
    results under node_id. Returns the same (mutated) tree."""
    node = tree.node(node_id)
    if node.completed:
        raise InvalidTargetError(f"node {node_id} is EOS-completed")
    node.selected = True
    _beam_search(tree, provider, node_id, params)
    return tree
