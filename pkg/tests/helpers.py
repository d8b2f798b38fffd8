"""Shared test utilities: brute-force beam oracle, random mock models,
manual tree construction, and a minimal DOT grammar checker."""

from __future__ import annotations

import random
import re

from beamscope.providers.base import Provider, Token
from beamscope.tree import BeamSearchTree, GenerationParams


# -- brute-force beam search oracle --------------------------------------
#
# Replays beam selection globally per step over explicitly enumerated
# (path, candidate) pairs and reconstructs the tree as a plain dict, fully
# independent of the incremental builder in beamscope.tree.

def oracle_tree_doc(provider: Provider, prompt: str,
                    params: GenerationParams) -> dict:
    prompt_tokens = provider.tokenize(prompt)
    prompt_ids = [t.id for t in prompt_tokens]
    k = params.beam_width
    e = params.effective_expansion
    eos = provider.eos_token_id

    nodes = [{
        "id": 0, "parent_id": None, "token": None, "logprob": 0.0,
        "cum_logprob": 0.0, "depth": 0, "selected": True,
        "pruned_at_step": None, "completed": False,
    }]
    # beams: path (tuple of token ids) -> (node index, cum_logprob)
    live = {(): (0, 0.0)}
    completed = 0

    for step in range(1, params.beam_length + 1):
        slots = k - completed
        if not live or slots <= 0:
            break
        pool = []
        for path, (node_idx, cum) in live.items():
            for cand in provider.top_k_next(prompt_ids + list(path), e):
                pool.append((cum + cand.logprob, path, cand.token.id,
                             cand, node_idx))
        pool.sort(key=lambda item: (-item[0], item[1], item[2]))
        chosen, discarded = pool[:slots], pool[slots:]

        next_live = {}
        for cum, path, token_id, cand, parent_idx in chosen:
            is_eos = eos is not None and token_id == eos
            node = {
                "id": len(nodes), "parent_id": nodes[parent_idx]["id"],
                "token": {"id": cand.token.id, "piece": cand.token.piece},
                "logprob": cand.logprob, "cum_logprob": cum,
                "depth": nodes[parent_idx]["depth"] + 1, "selected": True,
                "pruned_at_step": None, "completed": is_eos,
            }
            nodes.append(node)
            if is_eos:
                completed += 1
            else:
                next_live[path + (token_id,)] = (node["id"], cum)
        if params.record_pruned:
            for cum, path, token_id, cand, parent_idx in discarded:
                nodes.append({
                    "id": len(nodes), "parent_id": nodes[parent_idx]["id"],
                    "token": {"id": cand.token.id, "piece": cand.token.piece},
                    "logprob": cand.logprob, "cum_logprob": cum,
                    "depth": nodes[parent_idx]["depth"] + 1, "selected": False,
                    "pruned_at_step": step, "completed": False,
                })
        surviving_parents = {parent_idx for _, _, _, _, parent_idx in chosen}
        for path, (node_idx, _) in live.items():
            if node_idx not in surviving_parents:
                nodes[node_idx]["pruned_at_step"] = step
        live = next_live

    return {
        "schema_version": 1,
        "meta": {"created": None,
                 "provider_fingerprint": provider.fingerprint()},
        "params": {
            "beam_width": params.beam_width,
            "beam_length": params.beam_length,
            "expansion_factor": params.expansion_factor,
            "record_pruned": params.record_pruned,
        },
        "prompt": prompt,
        "prompt_tokens": [{"id": t.id, "piece": t.piece}
                          for t in prompt_tokens],
        "nodes": nodes,
    }


# -- randomized mock models ----------------------------------------------

def random_mock_config(rng: random.Random, max_vocab: int = 10,
                       with_eos: bool = False) -> dict:
    vocab_size = rng.randint(2, max_vocab)
    vocab = [f"w{i}" for i in range(vocab_size)]
    if with_eos and rng.random() < 0.5:
        eos = "</s>"
        vocab.append(eos)
    else:
        eos = None

    def random_row():
        support = rng.sample(vocab, rng.randint(1, len(vocab)))
        weights = [rng.randint(1, 9) for _ in support]
        total = sum(weights)
        row = {}
        acc = 0
        # Exact rational probabilities that sum to 1.0 in floating point.
        for word, weight in zip(support[:-1], weights[:-1]):
            row[word] = weight / total
            acc += weight
        row[support[-1]] = (total - acc) / total
        if abs(sum(row.values()) - 1.0) > 1e-9:
            row = {support[0]: 1.0}
        return row

    rows = {"": random_row()}
    for _ in range(rng.randint(0, 12)):
        ctx_len = rng.randint(1, 3)
        ctx = " ".join(rng.choice(vocab) for _ in range(ctx_len))
        rows[ctx] = random_row()
    config: dict = {"rows": rows}
    if eos is not None:
        config["eos"] = eos
    if rng.random() < 0.3:
        config["window"] = rng.randint(1, 3)
    return config


def random_params(rng: random.Random, max_n: int = 6, max_k: int = 4,
                  max_e: int = 4) -> GenerationParams:
    return GenerationParams(
        beam_width=rng.randint(1, max_k),
        beam_length=rng.randint(1, max_n),
        expansion_factor=rng.randint(1, max_e),
        record_pruned=rng.random() < 0.8,
    )


# -- manual tree construction --------------------------------------------

def build_tree(prompt: str = "", params: GenerationParams | None = None,
               prompt_tokens: list[Token] | None = None) -> BeamSearchTree:
    return BeamSearchTree(
        prompt=prompt,
        prompt_tokens=prompt_tokens or [],
        provider_fingerprint="test:fixture",
        params=params or GenerationParams(beam_width=2, beam_length=4),
    )


def add_child(tree: BeamSearchTree, parent_id: int, word: str, prob: float,
              *, selected: bool = True, token_id: int | None = None,
              pruned_at_step: int | None = None):
    import math
    token = Token(id=token_id if token_id is not None else ord(word[0]),
                  piece=" " + word)
    return tree.add_node(parent_id, token, math.log(prob), selected=selected,
                         pruned_at_step=pruned_at_step)


# -- minimal DOT grammar check -------------------------------------------

_DOT_ID = r'(?:[A-Za-z_][A-Za-z0-9_]*|\d+(?:\.\d+)?|"(?:[^"\\]|\\.)*")'
_DOT_ATTR = re.compile(rf"^{_DOT_ID}\s*=\s*{_DOT_ID}$")


def assert_valid_dot(text: str) -> tuple[int, int]:
    """Check well-formedness of a DOT digraph; returns (nodes, edges)."""
    body = text.strip()
    m = re.match(r"^(strict\s+)?digraph(\s+" + _DOT_ID + r")?\s*\{(.*)\}$",
                 body, re.DOTALL)
    assert m, "not a digraph block"
    statements = [s.strip() for s in m.group(3).split(";") if s.strip()]
    nodes = edges = 0
    for stmt in statements:
        attrs = ""
        if stmt.endswith("]"):
            idx = stmt.index("[")
            stmt, attrs = stmt[:idx].strip(), stmt[idx + 1:-1]
            for part in _split_attrs(attrs):
                assert _DOT_ATTR.match(part.strip()), f"bad attribute {part!r}"
        if "->" in stmt:
            ends = [p.strip() for p in stmt.split("->")]
            assert all(re.fullmatch(_DOT_ID, p) for p in ends), f"bad edge {stmt!r}"
            edges += len(ends) - 1
        elif stmt in ("graph", "node", "edge"):
            continue  # default-attribute statement
        elif _DOT_ATTR.match(stmt):
            continue  # graph-level attribute assignment
        else:
            assert re.fullmatch(_DOT_ID, stmt), f"bad node statement {stmt!r}"
            nodes += 1
    return nodes, edges


def _split_attrs(attrs: str) -> list[str]:
    parts, depth_quote, current = [], False, []
    for ch in attrs:
        if ch == '"':
            depth_quote = not depth_quote
        if ch == "," and not depth_quote:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return parts
