import json
import random

import pytest

from beamscope import GenerationParams, MockProvider, generate_tree
from beamscope.errors import DocumentParseError, SchemaVersionError
from beamscope.serialize import deserialize, serialize, tree_to_dict

from helpers import random_mock_config, random_params


def test_prompt_only_tree_round_trips(chain_provider):
    # Smallest legal generation: one step, then compare the full document.
    tree = generate_tree(chain_provider, "p",
                         GenerationParams(beam_width=1, beam_length=1))
    restored = deserialize(serialize(tree))
    assert tree_to_dict(restored) == tree_to_dict(tree)
    assert restored.prompt == "p"


def test_fork_tree_double_serialize_byte_identical(fork_provider, fork_params):
    tree = generate_tree(fork_provider, "", fork_params)
    first = serialize(tree)
    second = serialize(deserialize(first))
    assert first == second


def test_ranks_survive_round_trip(fork_provider, fork_params):
    from beamscope.analysis import annotate_ranks
    tree = generate_tree(fork_provider, "", fork_params)
    annotate_ranks(tree)
    restored = deserialize(serialize(tree))
    assert {n.id: n.rank for n in restored.nodes.values()} == \
           {n.id: n.rank for n in tree.nodes.values()}


def test_future_schema_version_rejected(fork_provider, fork_params):
    tree = generate_tree(fork_provider, "", fork_params)
    doc = json.loads(serialize(tree))
    doc["schema_version"] = 99
    with pytest.raises(SchemaVersionError):
        deserialize(json.dumps(doc))


class TestMalformedDocuments:
    def test_invalid_json(self):
        with pytest.raises(DocumentParseError):
            deserialize("{not json")

    def test_non_object_root(self):
        with pytest.raises(DocumentParseError):
            deserialize("[1, 2]")

    def test_node_error_carries_location(self, fork_provider, fork_params):
        tree = generate_tree(fork_provider, "", fork_params)
        doc = json.loads(serialize(tree))
        del doc["nodes"][3]["logprob"]
        with pytest.raises(DocumentParseError, match="index 3"):
            deserialize(json.dumps(doc))

    def test_duplicate_node_id(self, fork_provider, fork_params):
        tree = generate_tree(fork_provider, "", fork_params)
        doc = json.loads(serialize(tree))
        doc["nodes"][2]["id"] = doc["nodes"][1]["id"]
        with pytest.raises(DocumentParseError, match="duplicate"):
            deserialize(json.dumps(doc))

    def test_missing_parent(self, fork_provider, fork_params):
        tree = generate_tree(fork_provider, "", fork_params)
        doc = json.loads(serialize(tree))
        doc["nodes"][1]["parent_id"] = 12345
        with pytest.raises(DocumentParseError, match="missing parent"):
            deserialize(json.dumps(doc))

    def test_two_roots(self, fork_provider, fork_params):
        tree = generate_tree(fork_provider, "", fork_params)
        doc = json.loads(serialize(tree))
        doc["nodes"][1]["parent_id"] = None
        with pytest.raises(DocumentParseError, match="root"):
            deserialize(json.dumps(doc))


@pytest.mark.parametrize("seed", range(40))
def test_randomized_round_trip(seed):
    rng = random.Random(1000 + seed)
    provider = MockProvider(random_mock_config(rng, with_eos=True))
    tree = generate_tree(provider, "", random_params(rng))
    document = serialize(tree)
    restored = deserialize(document)
    assert tree_to_dict(restored) == tree_to_dict(tree)
    assert serialize(restored) == document


def test_identical_runs_serialize_identically(fork_params):
    config = {"rows": {"": {"a": 0.6, "b": 0.4}, "a": {"c": 0.9, "d": 0.1},
                       "b": {"c": 0.5, "d": 0.5}}}
    first = serialize(generate_tree(MockProvider(config), "", fork_params))
    second = serialize(generate_tree(MockProvider(config), "", fork_params))
    assert first == second
