import json
import math

import pytest
from click.testing import CliRunner

from beamscope import GenerationParams, MockProvider, generate_tree
from beamscope.analysis import WordList, annotate_ranks, collapse, coverage_report
from beamscope.cli import main, parse_replacements
from beamscope.serialize import deserialize, serialize, tree_to_dict

from helpers import assert_valid_dot

PROVIDER_CONFIG = {
    "kind": "mock",
    "rows": {
        "": {"the": 0.6, "a": 0.4},
        "the": {"doctor": 0.7, "nurse": 0.3},
        "a": {"nurse": 0.8, "doctor": 0.2},
        "doctor": {"works": 1.0},
        "nurse": {"works": 1.0},
        "works": {"works": 1.0},
    },
    "window": 1,
}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def provider_path(tmp_path):
    path = tmp_path / "provider.json"
    path.write_text(json.dumps(PROVIDER_CONFIG))
    return str(path)


def library_tree(prompt="", k=2, n=2, e=2):
    return generate_tree(MockProvider(PROVIDER_CONFIG), prompt,
                         GenerationParams(beam_width=k, beam_length=n,
                                          expansion_factor=e))


def make_tree_file(tmp_path, **kwargs):
    path = tmp_path / "tree.json"
    path.write_text(serialize(library_tree(**kwargs)))
    return str(path)


class TestGenerate:
    def test_json_matches_library(self, runner, provider_path):
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "",
            "--k", "2", "--n", "2", "--e", "2"])
        assert result.exit_code == 0
        assert result.output.strip() == serialize(library_tree())

    def test_out_file_written_atomically(self, runner, provider_path,
                                         tmp_path):
        out = tmp_path / "sub" / "tree.json"
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "",
            "--k", "2", "--n", "2", "--out", str(out)])
        assert result.exit_code == 0
        assert deserialize(out.read_text()).prompt == ""
        assert not list(out.parent.glob(".tmp-*"))

    def test_text_format(self, runner, provider_path):
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "",
            "--k", "2", "--n", "2", "--format", "text"])
        assert result.exit_code == 0
        tree = library_tree()
        assert len(result.output.strip().split("\n")) == len(tree.nodes)

    def test_dot_format(self, runner, provider_path):
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "",
            "--k", "2", "--n", "2", "--format", "dot"])
        assert result.exit_code == 0
        nodes, edges = assert_valid_dot(result.output)
        assert nodes == len(library_tree().nodes)

    def test_missing_option_exit_2(self, runner, provider_path):
        result = runner.invoke(main, ["generate", "--provider", provider_path])
        assert result.exit_code == 2

    def test_bad_provider_config_exit_2(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"kind": "mock", "rows": {}}))
        result = runner.invoke(main, [
            "generate", "--provider", str(path), "--prompt", "",
            "--k", "1", "--n", "1"])
        assert result.exit_code == 2
        assert "error:" in result.output

    def test_invalid_params_exit_2(self, runner, provider_path):
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "",
            "--k", "0", "--n", "1"])
        assert result.exit_code == 2

    def test_provider_failure_exit_3(self, runner, tmp_path):
        # Remote provider with nothing listening: transport error.
        path = tmp_path / "remote.json"
        path.write_text(json.dumps({"kind": "remote",
                                    "base_url": "http://127.0.0.1:1",
                                    "timeout": 0.2}))
        result = runner.invoke(main, [
            "generate", "--provider", str(path), "--prompt", "",
            "--k", "1", "--n", "1"])
        assert result.exit_code == 3

    def test_oov_prompt_exit_3(self, runner, provider_path):
        result = runner.invoke(main, [
            "generate", "--provider", provider_path, "--prompt", "xyzzy",
            "--k", "1", "--n", "1"])
        assert result.exit_code == 3


class TestReplacementsFile:
    def test_space_escape(self):
        assert parse_replacements("All\n\\sSome\nA\\sfew\n") == \
               ["All", " Some", "A few"]

    def test_trailing_newline_not_a_replacement(self):
        assert parse_replacements("a\nb\n") == ["a", "b"]

    def test_empty_line_is_empty_replacement(self):
        assert parse_replacements("\n\\s\n\\s\\s\n") == ["", " ", "  "]


class TestCompare:
    def test_trees_and_manifest(self, runner, provider_path, tmp_path):
        replacements = tmp_path / "replacements.txt"
        replacements.write_text("the\na\n")
        out_dir = tmp_path / "out"
        result = runner.invoke(main, [
            "compare", "--provider", provider_path, "--template", "<PH>",
            "--replacements", str(replacements),
            "--k", "2", "--n", "2", "--out", str(out_dir)])
        assert result.exit_code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["resolved_prompts"] == ["the", "a"]
        assert manifest["tree_ids"] == ["tree-000", "tree-001"]
        for tree_id, prompt in zip(manifest["tree_ids"],
                                   manifest["resolved_prompts"]):
            document = (out_dir / f"{tree_id}.json").read_text()
            assert document == serialize(library_tree(prompt=prompt, e=None))

    def test_whitespace_escapes_reach_prompts(self, runner, tmp_path):
        config = tmp_path / "provider.json"
        config.write_text(json.dumps({
            "kind": "mock", "rows": {"": {"go": 1.0}},
            "default_row": {"go": 1.0}, "vocab": ["ab", "a", "b", "go"]}))
        replacements = tmp_path / "replacements.txt"
        replacements.write_text("\n\\s\n\\s\\s\n")
        out_dir = tmp_path / "out"
        result = runner.invoke(main, [
            "compare", "--provider", str(config), "--template", "a<PH>b",
            "--replacements", str(replacements),
            "--k", "1", "--n", "1", "--out", str(out_dir)])
        assert result.exit_code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["resolved_prompts"] == ["ab", "a b", "a  b"]
        contexts = set()
        for tree_id in manifest["tree_ids"]:
            doc = json.loads((out_dir / f"{tree_id}.json").read_text())
            contexts.add(tuple(t["id"] for t in doc["prompt_tokens"]))
        assert len(contexts) == 3

    def test_two_markers_exit_2(self, runner, provider_path, tmp_path):
        replacements = tmp_path / "replacements.txt"
        replacements.write_text("x\n")
        result = runner.invoke(main, [
            "compare", "--provider", provider_path,
            "--template", "<PH> and <PH>",
            "--replacements", str(replacements),
            "--k", "1", "--n", "1", "--out", str(tmp_path / "out")])
        assert result.exit_code == 2


class TestCoverage:
    def test_json_matches_library(self, runner, tmp_path):
        tree_path = make_tree_file(tmp_path)
        wordlist = tmp_path / "jobs.txt"
        wordlist.write_text("doctor\nnurse\n")
        result = runner.invoke(main, [
            "coverage", "--tree", tree_path, "--wordlist", str(wordlist),
            "--format", "json"])
        assert result.exit_code == 0
        expected = coverage_report(
            library_tree(), WordList.from_entries("jobs", ["doctor", "nurse"]))
        assert json.loads(result.output) == expected.to_dict()

    def test_table_output(self, runner, tmp_path):
        tree_path = make_tree_file(tmp_path)
        wordlist = tmp_path / "jobs.txt"
        wordlist.write_text("doctor\n")
        result = runner.invoke(main, [
            "coverage", "--tree", tree_path, "--wordlist", str(wordlist)])
        assert result.exit_code == 0
        assert "Rank" in result.output

    def test_corrupt_tree_exit_4(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        wordlist = tmp_path / "jobs.txt"
        wordlist.write_text("doctor\n")
        result = runner.invoke(main, [
            "coverage", "--tree", str(bad), "--wordlist", str(wordlist)])
        assert result.exit_code == 4

    def test_empty_wordlist_exit_2(self, runner, tmp_path):
        tree_path = make_tree_file(tmp_path)
        wordlist = tmp_path / "empty.txt"
        wordlist.write_text("# nothing\n")
        result = runner.invoke(main, [
            "coverage", "--tree", tree_path, "--wordlist", str(wordlist)])
        assert result.exit_code == 2


class TestRank:
    def test_matches_library(self, runner, tmp_path):
        tree_path = make_tree_file(tmp_path)
        result = runner.invoke(main, ["rank", "--tree", tree_path])
        assert result.exit_code == 0
        expected = library_tree()
        annotate_ranks(expected)
        assert tree_to_dict(deserialize(result.output)) == \
               tree_to_dict(expected)

    def test_missing_file_exit_4(self, runner, tmp_path):
        result = runner.invoke(main, [
            "rank", "--tree", str(tmp_path / "absent.json")])
        assert result.exit_code == 4


class TestCollapse:
    def test_matches_library_and_conserves_probability(self, runner, tmp_path):
        tree_path = make_tree_file(tmp_path)
        wordlist = tmp_path / "jobs.txt"
        wordlist.write_text("doctor\nnurse\n")
        result = runner.invoke(main, [
            "collapse", "--tree", tree_path, "--wordlist", str(wordlist)])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        tree = library_tree()
        expected = collapse(tree,
                            WordList.from_entries("jobs", ["doctor", "nurse"]))
        assert doc == expected.to_dict(tree)
        parents = {e["child_id"]: e for e in doc["edges"]}
        for node in doc["nodes"]:
            if node["id"] == 0:
                continue
            product, cur = 1.0, node["id"]
            while cur != 0:
                product *= parents[cur]["probability"]
                cur = parents[cur]["parent_id"]
            assert abs(product
                       - math.exp(tree.nodes[node["id"]].cum_logprob)) < 1e-9


def test_help_states_exit_codes(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for phrase in ("0 success", "2 usage", "3 provider", "4 data"):
        assert phrase in result.output
