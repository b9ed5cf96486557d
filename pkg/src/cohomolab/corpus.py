"""Group and action files, and the bundled corpus.

Group file (JSON)::

    {"name": "S3", "order": 6, "mul": [[...], ...], "labels": [...]}      # Cayley table
    {"name": "D4", "degree": 4, "generators": [[1, 2, 3, 0], [3, 2, 1, 0]]}

Action file (JSON)::

    {"group": "S3", "set_size": 6, "act": [[...], ...]}    # act[g][s] = g.s
    {"group": "S3", "kind": "conjugation"}                  # also "regular", "trivial"

The corpus directory holds ``index.json`` plus the files it names.  The
environment variable COHOMOLAB_CORPUS points at a replacement directory.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .groups import (
    GAction,
    Group,
    GroupError,
    build_group,
    conjugation_action,
    group_from_permutations,
    make_action,
    regular_action,
    trivial_action,
)

ENV_VAR = "COHOMOLAB_CORPUS"


class InputError(ValueError):
    """Malformed or invalid input file; the CLI maps this to exit code 1."""


def _read_json(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        ctx = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {ctx}\n    {' ' * (exc.colno - 1)}^") from None


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    val = data[key]
    if not isinstance(val, kind):
        raise InputError(f"{where}: field {key!r} must be {getattr(kind, '__name__', kind)}")
    return val


def group_from_data(data: dict, where: str = "<group>") -> Group:
    if not isinstance(data, dict):
        raise InputError(f"{where}: top level must be an object")
    name = data.get("name", "")
    try:
        if "mul" in data:
            mul = _require(data, "mul", list, where)
            order = data.get("order", len(mul))
            if order != len(mul):
                raise InputError(f"{where}: order {order} but the table has {len(mul)} rows")
            for i, row in enumerate(mul):
                if not isinstance(row, list) or not all(isinstance(v, int) for v in row):
                    raise InputError(f"{where}: mul row {i} must be a list of integers")
            return build_group(mul, name, data.get("labels"))
        if "generators" in data:
            gens = _require(data, "generators", list, where)
            deg = data.get("degree")
            if deg is not None and any(len(g) != deg for g in gens):
                raise InputError(f"{where}: every generator must have length degree={deg}")
            return group_from_permutations(gens, name)[0]
    except GroupError as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: need either 'mul' or 'generators'")


def load_group(path) -> Group:
    path = Path(path)
    return group_from_data(_read_json(path), str(path))


def action_from_data(data: dict, group: Group, where: str = "<action>") -> GAction:
    if not isinstance(data, dict):
        raise InputError(f"{where}: top level must be an object")
    ref = data.get("group")
    if ref is not None and group.name and ref != group.name:
        raise InputError(f"{where}: action is for group {ref!r}, not {group.name!r}")
    try:
        kind = data.get("kind")
        if kind is not None:
            if kind == "conjugation":
                return conjugation_action(group)
            if kind == "regular":
                return regular_action(group)
            if kind == "trivial":
                return trivial_action(group, int(data.get("set_size", 1)))
            raise InputError(f"{where}: unknown action kind {kind!r}")
        table = _require(data, "act", list, where)
        size = _require(data, "set_size", int, where)
        if len(table) != group.order:
            raise InputError(f"{where}: act has {len(table)} rows, group order is {group.order}")
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != size:
                raise InputError(f"{where}: act row {i} must list {size} points")
        return make_action(group, table, data.get("label", f"{group.name}-set{size}"), data.get("point_labels"))
    except GroupError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_action(path, group: Group) -> GAction:
    path = Path(path)
    return action_from_data(_read_json(path), group, str(path))


# corpus --------------------------------------------------------------------


def corpus_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("cohomolab") / "corpus"))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    group_file: Path
    actions: tuple[tuple[str, object], ...]  # (action name, file path or kind dict)
    cohomology: bool  # False: used for classification only (too large for the degree-3 scans)
    golden: dict

    def group(self) -> Group:
        return load_group(self.group_file)

    def load_actions(self, group: Group | None = None) -> list[GAction]:
        g = group or self.group()
        out = []
        for name, spec in self.actions:
            if isinstance(spec, Path):
                out.append(load_action(spec, g))
            else:
                out.append(action_from_data(dict(spec), g, f"{self.name}:{name}"))
        return out


def load_index(root: Path | None = None) -> dict[str, CorpusEntry]:
    root = Path(root) if root is not None else corpus_dir()
    idx = _read_json(root / "index.json")
    entries = {}
    for name, e in idx.get("groups", {}).items():
        acts = []
        for aname, spec in e.get("actions", {}).items():
            acts.append((aname, root / spec if isinstance(spec, str) else spec))
        entries[name] = CorpusEntry(name, root / e["file"], tuple(acts), e.get("cohomology", True),
                                    e.get("golden", {}))
    return entries


def resolve_group(ref: str) -> Group:
    """A path to a group file, or the name of a corpus group."""
    p = Path(ref)
    if p.exists():
        return load_group(p)
    entries = load_index()
    if ref in entries:
        return entries[ref].group()
    raise InputError(f"{ref}: no such file, and not a corpus group (known: {', '.join(sorted(entries))})")


def resolve_action(ref: str, group: Group) -> GAction:
    """A path to an action file, a kind (conjugation/regular/trivial), or a corpus action name."""
    p = Path(ref)
    if p.exists():
        return load_action(p, group)
    if ref in ("conjugation", "regular", "trivial"):
        return action_from_data({"kind": ref}, group)
    entries = load_index()
    for e in entries.values():
        for name, spec in e.actions:
            if name == ref:
                return load_action(spec, group) if isinstance(spec, Path) else action_from_data(dict(spec), group, ref)
    raise InputError(f"{ref}: no such file, kind or corpus action")


def digest(obj) -> str:
    """sha256 of the canonical JSON form; used for golden-report checksums."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
