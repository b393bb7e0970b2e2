"""Shipped fixtures: recipes, monodromy words, group presentations and JSON schemas.

GEO4_FIXTURES points at an alternative directory with the same layout.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from ..dsl import Node, parse_group, parse_recipe

SUBDIRS = ("recipes", "words", "groups", "schema")


def fixture_dir() -> Path:
    env = os.environ.get("GEO4_FIXTURES")
    return Path(env) if env else Path(__file__).parent


def _files(root: Path) -> list[Path]:
    out = []
    for sub in SUBDIRS:
        d = root / sub
        if d.is_dir():
            out += sorted(p for p in d.rglob("*") if p.is_file() and p.suffix != ".pyc")
    return out


def fixture_hash(root: Path | None = None) -> str:
    """sha256 over relative paths and contents, truncated to 16 hex digits."""
    root = root or fixture_dir()
    h = hashlib.sha256()
    for p in _files(root):
        h.update(p.relative_to(root).as_posix().encode())
        h.update(b"\0")
        h.update(p.read_bytes())
        h.update(b"\0")
    return h.hexdigest()[:16]


def recipe_paths(root: Path | None = None) -> list[Path]:
    return sorted((root or fixture_dir()).joinpath("recipes").glob("*.recipe"))


def load_recipes(root: Path | None = None) -> list[tuple[str, Node]]:
    return [(p.name, parse_recipe(p.read_text())) for p in recipe_paths(root)]


def load_words(root: Path | None = None) -> list[dict]:
    out = []
    for p in sorted((root or fixture_dir()).joinpath("words").glob("*.json")):
        out += json.loads(p.read_text())
    return out


def load_groups(root: Path | None = None) -> list[dict]:
    """Index entries with the parsed presentation under "group"."""
    d = (root or fixture_dir()).joinpath("groups")
    entries = json.loads((d / "index.json").read_text())
    for e in entries:
        e["group"] = parse_group((d / e["file"]).read_text())
    return entries


def schema(name: str, root: Path | None = None) -> dict:
    return json.loads((root or fixture_dir()).joinpath("schema", f"{name}.schema.json").read_text())
