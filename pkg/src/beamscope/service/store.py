"""File-backed document store with atomic writes.

One canonical JSON document per tree under the data directory; writes go
to a temp file in the same directory and are renamed into place, so a
crash never leaves a torn document.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from importlib import resources
from pathlib import Path

from ..analysis.coverage import WordList
from ..errors import ConfigError


def atomic_write_text(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class FileStore:
    """Providers, trees, comparison manifests, and wordlists on disk."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.trees_dir = self.data_dir / "trees"
        self.comparisons_dir = self.data_dir / "comparisons"
        self.wordlists_dir = self.data_dir / "wordlists"
        self.providers_path = self.data_dir / "providers.json"
        for d in (self.trees_dir, self.comparisons_dir, self.wordlists_dir):
            d.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._tree_locks: dict[str, threading.Lock] = {}
        self._tree_locks_guard = threading.Lock()

    # -- id allocation ---------------------------------------------------

    def _next_id(self, directory: Path, prefix: str) -> str:
        existing = [p.stem for p in directory.glob(f"{prefix}*.json")]
        numbers = [int(name[len(prefix):]) for name in existing
                   if name[len(prefix):].isdigit()]
        return f"{prefix}{(max(numbers, default=0) + 1):06d}"

    # -- providers -------------------------------------------------------

    def list_providers(self) -> dict[str, dict]:
        if not self.providers_path.exists():
            return {}
        return json.loads(self.providers_path.read_text(encoding="utf-8"))

    def add_provider(self, config: dict) -> str:
        with self._registry_lock:
            providers = self.list_providers()
            provider_id = f"p{len(providers) + 1:06d}"
            while provider_id in providers:
                provider_id = f"p{int(provider_id[1:]) + 1:06d}"
            providers[provider_id] = config
            atomic_write_text(
                self.providers_path,
                json.dumps(providers, sort_keys=True, ensure_ascii=False))
            return provider_id

    def get_provider(self, provider_id: str) -> dict | None:
        return self.list_providers().get(provider_id)

    # -- trees -----------------------------------------------------------

    def tree_lock(self, tree_id: str) -> threading.Lock:
        with self._tree_locks_guard:
            return self._tree_locks.setdefault(tree_id, threading.Lock())

    def save_tree(self, document: str, provider_id: str | None,
                  tree_id: str | None = None) -> str:
        with self._registry_lock:
            if tree_id is None:
                tree_id = self._next_id(self.trees_dir, "t")
        atomic_write_text(self.trees_dir / f"{tree_id}.json", document)
        meta = {"provider_id": provider_id}
        atomic_write_text(self.trees_dir / f"{tree_id}.meta",
                          json.dumps(meta, sort_keys=True))
        return tree_id

    def load_tree(self, tree_id: str) -> str | None:
        path = self.trees_dir / f"{tree_id}.json"
        if not path.exists():
            return None
        return path.read_text(encoding="utf-8")

    def tree_provider_id(self, tree_id: str) -> str | None:
        path = self.trees_dir / f"{tree_id}.meta"
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8")).get("provider_id")

    def list_trees(self) -> list[str]:
        return sorted(p.stem for p in self.trees_dir.glob("t*.json"))

    # -- comparisons -----------------------------------------------------

    def save_comparison(self, manifest: dict) -> str:
        with self._registry_lock:
            comparison_id = self._next_id(self.comparisons_dir, "c")
        atomic_write_text(
            self.comparisons_dir / f"{comparison_id}.json",
            json.dumps(manifest, sort_keys=True, ensure_ascii=False))
        return comparison_id

    def load_comparison(self, comparison_id: str) -> dict | None:
        path = self.comparisons_dir / f"{comparison_id}.json"
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    # -- wordlists -------------------------------------------------------

    BUNDLED_WORDLISTS = ("countries", "occupations")

    def save_wordlist(self, name: str, content: str) -> WordList:
        if not name or "/" in name or name.startswith("."):
            raise ConfigError(f"invalid wordlist name {name!r}")
        entries = [line.strip() for line in content.splitlines()
                   if line.strip() and not line.strip().startswith("#")]
        wordlist = WordList.from_entries(name, entries)  # raises if empty
        atomic_write_text(self.wordlists_dir / f"{name}.txt", content)
        return wordlist

    def list_wordlists(self) -> list[str]:
        names = {p.stem for p in self.wordlists_dir.glob("*.txt")}
        names.update(self.BUNDLED_WORDLISTS)
        return sorted(names)

    def load_wordlist(self, name: str) -> WordList | None:
        path = self.wordlists_dir / f"{name}.txt"
        if path.exists():
            return WordList.from_file(path)
        if name in self.BUNDLED_WORDLISTS:
            ref = resources.files("beamscope.data") / "wordlists" / f"{name}.txt"
            with resources.as_file(ref) as bundled:
                return WordList.from_file(bundled)
        return None
