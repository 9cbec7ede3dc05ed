"""Lenient parsers that turn on-disk ARA files into model values.

Schema violations never abort a parse: missing fields stay absent and
structural problems are reported as diagnostics, so the validator can
turn them into a report instead of the loader crashing on the first
malformed file.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Any

import yaml

from .model import (
    Artifact,
    AraError,
    Claim,
    Diagnostic,
    DiagnosticCategory,
    Experiment,
    ExplorationNode,
    GenericEntry,
    Heuristic,
    Manifest,
    NodeKind,
    NODE_PAYLOAD_KEYS,
    SessionEvent,
    SessionRecord,
    Severity,
)


class ParseError(AraError):
    pass


class MissingFrontmatter(ParseError):
    """The document has no frontmatter block delimited at the top."""


class MalformedFrontmatter(ParseError):
    """The frontmatter is not parseable as a key-value tree."""


class UnknownNodeType(ParseError):
    """An exploration node declares a kind outside the five-value enum."""


class MalformedTree(ParseError):
    """The exploration tree document is not parseable as a tree."""


class RootNotFound(AraError):
    pass


# Manifest frontmatter keys with dedicated model fields.
_MANIFEST_KEYS = frozenset(
    {"title", "authors", "venue", "status", "abstract", "ara_schema", "src_mode", "layers"}
)

# Canonical layer-relative locations, used when the manifest is absent or broken.
CANONICAL_LAYERS = {"logic": "logic", "src": "src", "trace": "trace", "evidence": "evidence"}

_HEADING_RE = re.compile(r"^##\s+(?P<text>.+?)\s*$")
_FIELD_RE = re.compile(
    r"^\s*[-*]?\s*\*\*(?P<label>[^*]+?)\*\*\s*:\s*(?P<value>.*)$|"
    r"^\s*[-*]\s+(?P<label2>[A-Za-z][A-Za-z0-9 _/-]{0,40}?)\s*:\s*(?P<value2>.*)$"
)
_ID_TOKEN_RE = re.compile(r"^[A-Z]{1,3}\d+$")
_STEP_PREFIX_RE = re.compile(r"^\s*(?:\d+[.)]\s+|[-*]\s+)")

# Id prefix per entry kind; kinds without a prefix take the heading as name.
ID_PREFIXES = {"claim": "C", "experiment": "E", "heuristic": "H"}

_FIELD_ALIASES = {
    "falsification criteria": "falsification",
    "expected outcome": "expected_outcome",
    "code ref": "code_ref",
    "code refs": "code_ref",
    "depends on": "dependencies",
    "results": "evidence",
    "evidence refs": "evidence",
}

def _canon_label(label: str) -> str:
    slug = re.sub(r"\s+", " ", label.strip().strip(":").lower())
    slug = _FIELD_ALIASES.get(slug, slug)
    return slug.replace(" ", "_")


def classify_token(token: str) -> tuple[str, str]:
    """Classify one reference token as ('id' | 'path' | 'text', value).

    A path never contains spaces; anything with whitespace is prose kept as
    annotation text rather than a resolvable reference.
    """
    token = token.strip().strip("\"'")
    if _ID_TOKEN_RE.fullmatch(token):
        return ("id", token)
    if " " not in token and ("/" in token or re.search(r"\.[A-Za-z0-9]+$", token)):
        return ("path", token)
    return ("text", token)


def split_reference_list(raw: str) -> list[str]:
    """Split a bracketed or bare list into items.

    Semicolons beat commas so annotated pointers like
    ``[a.md -> tables; b.md -> logs]`` keep their annotations intact.
    """
    text = raw.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    if not text:
        return []
    sep = ";" if ";" in text else ","
    return [item.strip() for item in text.split(sep) if item.strip()]


def reference_tokens(raw: str) -> list[str]:
    """Extract the reference token from each list item (the part before '->')."""
    tokens: list[str] = []
    for item in split_reference_list(raw):
        head = item.split("->", 1)[0].strip().strip("\"'")
        if head:
            tokens.append(head)
    return tokens


# ---------------------------------------------------------------------------
# PAPER.md


def parse_manifest(text: str) -> Manifest:
    """Parse a complete PAPER.md document into a Manifest.

    Unknown frontmatter keys are preserved verbatim in ``extensions``.
    """
    lines = text.split("\n")
    if not lines or lines[0].strip() != "---":
        raise MissingFrontmatter("no frontmatter block delimited at top of file")
    closing = None
    for i, line in enumerate(lines[1:], start=1):
        if line.strip() == "---":
            closing = i
            break
    if closing is None:
        raise MissingFrontmatter("frontmatter block is never closed")

    raw_fm = "\n".join(lines[1:closing])
    try:
        data = yaml.safe_load(raw_fm)
    except yaml.YAMLError as exc:
        raise MalformedFrontmatter(f"invalid YAML frontmatter: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedFrontmatter("frontmatter is not a key-value mapping")

    manifest = Manifest()
    for key, value in data.items():
        key_str = str(key)
        if key_str not in _MANIFEST_KEYS:
            manifest.extensions[key_str] = value
            continue
        if key_str == "title":
            manifest.title = str(value) if value is not None else ""
        elif key_str == "authors":
            if isinstance(value, list):
                manifest.authors = [str(v) for v in value]
            elif value is not None:
                manifest.authors = [str(value)]
        elif key_str == "venue":
            manifest.venue = None if value is None else str(value)
        elif key_str == "status":
            manifest.status = None if value is None else str(value)
        elif key_str == "abstract":
            manifest.abstract = str(value).strip() if value is not None else ""
        elif key_str == "ara_schema":
            manifest.ara_schema = None if value is None else str(value)
        elif key_str == "src_mode":
            manifest.src_mode = None if value is None else str(value)
        elif key_str == "layers":
            if isinstance(value, dict):
                manifest.layers = {str(k): str(v) for k, v in value.items()}

    manifest.layer_index = _parse_layer_index("\n".join(lines[closing + 1 :]))
    return manifest


_PATHISH_RE = re.compile(r"`(?P<path>[^`\s]+)`")


def _parse_layer_index(body: str) -> list[tuple[str, str]]:
    """Collect (path, description) rows from the Layer Index section.

    Accepts both Markdown table rows and bulleted lists with backticked
    paths; descriptions follow '--' or the table cell.
    """
    rows: list[tuple[str, str]] = []
    in_section = False
    for line in body.split("\n"):
        heading = re.match(r"^(#+)\s+(.*)$", line)
        if heading:
            in_section = heading.group(2).strip().lower() == "layer index"
            continue
        if not in_section:
            continue
        stripped = line.strip()
        if stripped.startswith("|"):
            cells = [c.strip() for c in stripped.strip("|").split("|")]
            if len(cells) >= 2 and not set(cells[0]) <= {"-", ":", " "}:
                path = cells[0].strip("`")
                if "/" in path or "." in path:
                    rows.append((path, cells[1]))
            continue
        match = _PATHISH_RE.search(stripped)
        if match and (stripped.startswith("-") or stripped.startswith("*")):
            path = match.group("path")
            if "/" not in path and "." not in path:
                continue
            rest = stripped[match.end() :]
            desc = re.sub(r"^[\s:)–—-]+", "", rest).strip()
            rows.append((path, desc))
    return rows


# ---------------------------------------------------------------------------
# Structured Markdown entries


def _split_entry_blocks(text: str) -> list[tuple[str, list[str]]]:
    """Split a document at second-level headings into (heading, body lines)."""
    blocks: list[tuple[str, list[str]]] = []
    heading: str | None = None
    body: list[str] = []
    for line in text.split("\n"):
        match = _HEADING_RE.match(line)
        if match:
            if heading is not None:
                blocks.append((heading, body))
            heading = match.group("text")
            body = []
        elif heading is not None:
            body.append(line)
    if heading is not None:
        blocks.append((heading, body))
    return blocks


def _split_heading(heading: str, kind: str, ordinal: int) -> tuple[str, str, bool]:
    """Extract (id, title, id_was_synthesized) from an entry heading."""
    if ":" in heading:
        candidate, _, rest = heading.partition(":")
        candidate = candidate.strip()
        if re.fullmatch(r"[A-Za-z]{1,3}\d+", candidate):
            return (candidate, rest.strip(), False)
    prefix = ID_PREFIXES.get(kind)
    if prefix is None:
        return (heading.strip(), heading.strip(), False)
    return (f"{prefix}_unlabeled_{ordinal}", heading.strip(), True)


def _collect_fields(body: list[str]) -> dict[str, str]:
    """Fold bold field labels and their continuation lines into one map."""
    fields: dict[str, str] = {}
    current: str | None = None
    for line in body:
        match = _FIELD_RE.match(line)
        if match:
            label = match.group("label") or match.group("label2") or ""
            value = match.group("value") if match.group("label") is not None else match.group("value2")
            current = _canon_label(label)
            if current in fields and fields[current]:
                fields[current] += "\n" + (value or "").strip()
            else:
                fields[current] = (value or "").strip()
        elif current is not None and line.strip():
            fields[current] = (fields[current] + "\n" + line.strip()).strip()
    return fields


def _line_items(raw: str) -> list[str]:
    """Split a multi-line field value into ordered step strings."""
    steps = []
    for line in raw.split("\n"):
        cleaned = _STEP_PREFIX_RE.sub("", line).strip()
        if cleaned:
            steps.append(cleaned)
    return steps


def _flat(raw: str) -> str:
    return re.sub(r"\s+", " ", raw).strip()


def parse_structured_entries(
    kind: str, text: str, file: str = ""
) -> tuple[list[Any], list[Diagnostic]]:
    """Parse claims/experiments/heuristics/concept-style entries from Markdown.

    One entry per second-level heading; absent mandatory fields stay absent
    for the validator to flag. Duplicate ids keep the first entry and emit
    a diagnostic.
    """
    if kind not in {"claim", "experiment", "heuristic", "concept", "observation", "related", "architecture"}:
        raise ValueError(f"unknown entry kind {kind!r}")

    entries: list[Any] = []
    diagnostics: list[Diagnostic] = []
    seen: set[str] = set()
    for ordinal, (heading, body) in enumerate(_split_entry_blocks(text), start=1):
        entry_id, title, synthesized = _split_heading(heading, kind, ordinal)
        if synthesized:
            diagnostics.append(
                Diagnostic(
                    check_id="parse/synthetic-id",
                    category=DiagnosticCategory.MISSING_FIELD,
                    severity=Severity.ADVISORY,
                    file=file,
                    entity=entry_id,
                    message=f"heading {heading!r} carries no id; assigned {entry_id}",
                )
            )
        else:
            prefix = ID_PREFIXES.get(kind)
            if prefix is not None and not re.fullmatch(rf"{prefix}\d+", entry_id):
                diagnostics.append(
                    Diagnostic(
                        check_id="parse/id-pattern",
                        category=DiagnosticCategory.TYPE_MISMATCH,
                        severity=Severity.ADVISORY,
                        file=file,
                        entity=entry_id,
                        message=f"id {entry_id} does not match the {prefix}<digits> convention",
                    )
                )
        if entry_id in seen:
            diagnostics.append(
                Diagnostic(
                    check_id="parse/duplicate-id",
                    category=DiagnosticCategory.TYPE_MISMATCH,
                    severity=Severity.ERROR,
                    file=file,
                    entity=entry_id,
                    message=f"duplicate entry id {entry_id}; keeping the first occurrence",
                )
            )
            continue
        seen.add(entry_id)
        fields = _collect_fields(body)
        entries.append(_build_entry(kind, entry_id, title, fields))
    return entries, diagnostics


def _pop(fields: dict[str, str], name: str) -> str | None:
    value = fields.pop(name, None)
    if value is None:
        return None
    value = _flat(value)
    return value if value else None


def _pop_list(fields: dict[str, str], name: str) -> list[str]:
    raw = fields.pop(name, None)
    if raw is None:
        return []
    return reference_tokens(raw)


def _build_entry(kind: str, entry_id: str, title: str, fields: dict[str, str]) -> Any:
    if kind == "claim":
        return Claim(
            id=entry_id,
            title=title,
            statement=_pop(fields, "statement"),
            status=_pop(fields, "status"),
            provenance=_pop(fields, "provenance"),
            falsification=_pop(fields, "falsification"),
            proof=_pop_list(fields, "proof"),
            dependencies=_pop_list(fields, "dependencies"),
            tags=_pop_list(fields, "tags"),
            extra_fields=dict(fields),
        )
    if kind == "experiment":
        procedure_raw = fields.pop("procedure", None)
        return Experiment(
            id=entry_id,
            title=title,
            verifies=_pop_list(fields, "verifies"),
            setup=_pop(fields, "setup"),
            procedure=_line_items(procedure_raw) if procedure_raw else [],
            metrics=_pop_list(fields, "metrics"),
            expected_outcome=_pop(fields, "expected_outcome"),
            evidence=_pop_list(fields, "evidence"),
            extra_fields=dict(fields),
        )
    if kind == "heuristic":
        return Heuristic(
            id=entry_id,
            title=title,
            rationale=_pop(fields, "rationale"),
            sensitivity=_pop(fields, "sensitivity"),
            bounds=_pop(fields, "bounds"),
            code_ref=_pop_list(fields, "code_ref"),
            source=_pop(fields, "source"),
            provenance=_pop(fields, "provenance"),
            extra_fields=dict(fields),
        )
    return GenericEntry(id=entry_id, title=title, fields={k: _flat(v) for k, v in fields.items()})


# ---------------------------------------------------------------------------
# trace/exploration_tree.yaml


def parse_exploration_tree(text: str) -> list[ExplorationNode]:
    """Parse the exploration tree document into root nodes.

    Nesting under ``children`` encodes parent-to-child edges; unknown
    payload keys land in each node's extras map.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise MalformedTree(f"invalid YAML: {exc}") from exc
    if data is None:
        return []
    if isinstance(data, dict):
        data = data.get("tree", [])
    if not isinstance(data, list):
        raise MalformedTree("document root must be a 'tree' list")
    return [_parse_node(item, index) for index, item in enumerate(data)]


def _parse_node(raw: Any, index: int) -> ExplorationNode:
    if not isinstance(raw, dict):
        raise MalformedTree(f"tree node #{index} is not a mapping")
    kind_raw = str(raw.get("type", raw.get("kind", "")))
    try:
        kind = NodeKind(kind_raw)
    except ValueError:
        raise UnknownNodeType(
            f"node {raw.get('id', f'#{index}')!r} has unknown type {kind_raw!r}"
        ) from None

    node = ExplorationNode(
        id=str(raw.get("id", f"N_unlabeled_{index}")),
        kind=kind,
        title=_flat(str(raw.get("title", ""))),
        provenance=None if raw.get("provenance") is None else str(raw["provenance"]),
        timestamp=None if raw.get("timestamp") is None else str(raw["timestamp"]),
    )
    known = NODE_PAYLOAD_KEYS[kind.value]
    for key, value in raw.items():
        if key in {"id", "type", "kind", "title", "provenance", "timestamp", "children", "also_depends_on"}:
            continue
        if key in known:
            node.payload[key] = value
        else:
            node.extras[key] = value

    also = raw.get("also_depends_on", [])
    if isinstance(also, list):
        node.also_depends_on = [str(v) for v in also]
    elif also:
        node.also_depends_on = [str(also)]

    children = raw.get("children", [])
    if not isinstance(children, list):
        raise MalformedTree(f"node {node.id}: children must be a list")
    node.children = [_parse_node(child, i) for i, child in enumerate(children)]
    return node


# ---------------------------------------------------------------------------
# trace/sessions/*.yaml


def parse_session(text: str, fallback_id: str = "") -> SessionRecord:
    """Best-effort parse of one session record."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid session YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("session document is not a mapping")

    meta = data.get("session") if isinstance(data.get("session"), dict) else data
    record = SessionRecord(
        id=str(meta.get("id", fallback_id)),
        timestamp=str(meta.get("timestamp", "")),
        summary=_flat(str(meta.get("summary", ""))),
    )
    events = data.get("events_logged", meta.get("events_logged", []))
    if isinstance(events, list):
        for event in events:
            if isinstance(event, dict):
                record.events_logged.append(
                    SessionEvent(
                        type=str(event.get("type", "")),
                        id=str(event.get("id", "")),
                        summary=_flat(str(event.get("summary", ""))),
                    )
                )
    actions = data.get("ai_actions", meta.get("ai_actions", []))
    if isinstance(actions, list):
        record.ai_actions = actions
    touched = data.get("claims_touched", meta.get("claims_touched", []))
    if isinstance(touched, list):
        record.claims_touched = [str(c) for c in touched]
    threads = data.get("open_threads", meta.get("open_threads", []))
    if isinstance(threads, list):
        record.open_threads = [_flat(str(t)) for t in threads]
    return record


# ---------------------------------------------------------------------------
# Whole-artifact loading


def _walk(root: Path) -> tuple[list[str], list[str]]:
    """All (files, dirs) under root as relative POSIX paths, OS enumeration order."""
    files: list[str] = []
    dirs: list[str] = []
    for path in root.rglob("*"):
        rel = path.relative_to(root).as_posix()
        if path.is_dir():
            dirs.append(rel)
        else:
            files.append(rel)
    return files, dirs


def _read(root: Path, rel: str) -> str:
    return (root / rel).read_text(encoding="utf-8")


def _diag(check_id: str, category: DiagnosticCategory, file: str, message: str) -> Diagnostic:
    return Diagnostic(
        check_id=check_id,
        category=category,
        severity=Severity.ERROR,
        file=file,
        entity=None,
        message=message,
    )


def load_artifact(root: str | Path) -> tuple[Artifact, list[Diagnostic]]:
    """Load every known ARA file under *root* into an Artifact.

    Parse failures become diagnostics rather than aborting; the result is
    independent of directory enumeration order.
    """
    root_path = Path(root)
    if not root_path.is_dir():
        raise RootNotFound(f"artifact root {root} does not exist")

    files, dirs = _walk(root_path)
    artifact = Artifact(
        root=str(root_path),
        file_inventory=frozenset(files),
        dir_inventory=frozenset(dirs),
    )
    diagnostics: list[Diagnostic] = []

    if "PAPER.md" not in artifact.file_inventory:
        diagnostics.append(
            _diag(
                "parse/frontmatter-missing",
                DiagnosticCategory.MISSING_FILE,
                "PAPER.md",
                "PAPER.md not found; manifest unavailable",
            )
        )
    else:
        try:
            artifact.manifest = parse_manifest(_read(root_path, "PAPER.md"))
        except (OSError, UnicodeDecodeError) as exc:
            diagnostics.append(
                _diag("parse/unreadable", DiagnosticCategory.EXECUTION_ERROR, "PAPER.md", str(exc))
            )
        except (MissingFrontmatter, MalformedFrontmatter) as exc:
            diagnostics.append(
                _diag(
                    "parse/frontmatter-missing"
                    if isinstance(exc, MissingFrontmatter)
                    else "parse/frontmatter-malformed",
                    DiagnosticCategory.TYPE_MISMATCH,
                    "PAPER.md",
                    str(exc),
                )
            )

    logic = artifact.layer_path("logic", CANONICAL_LAYERS["logic"])
    trace = artifact.layer_path("trace", CANONICAL_LAYERS["trace"])

    def parse_file(rel: str, kind: str, target: list) -> None:
        if rel not in artifact.file_inventory:
            return
        try:
            text = _read(root_path, rel)
        except (OSError, UnicodeDecodeError) as exc:
            diagnostics.append(
                _diag("parse/unreadable", DiagnosticCategory.EXECUTION_ERROR, rel, str(exc))
            )
            return
        entries, entry_diags = parse_structured_entries(kind, text, file=rel)
        target.extend(entries)
        diagnostics.extend(entry_diags)

    parse_file(f"{logic}/claims.md", "claim", artifact.claims)
    parse_file(f"{logic}/experiments.md", "experiment", artifact.experiments)
    parse_file(f"{logic}/solution/heuristics.md", "heuristic", artifact.heuristics)
    parse_file(f"{logic}/concepts.md", "concept", artifact.concepts)
    parse_file(f"{logic}/related_work.md", "related", artifact.related_work)
    parse_file(f"{logic}/solution/architecture.md", "architecture", artifact.architecture)

    tree_rel = f"{trace}/exploration_tree.yaml"
    if tree_rel in artifact.file_inventory:
        try:
            artifact.tree = parse_exploration_tree(_read(root_path, tree_rel))
        except (OSError, UnicodeDecodeError) as exc:
            diagnostics.append(
                _diag("parse/unreadable", DiagnosticCategory.EXECUTION_ERROR, tree_rel, str(exc))
            )
        except UnknownNodeType as exc:
            diagnostics.append(
                _diag("parse/tree-node-type", DiagnosticCategory.TYPE_MISMATCH, tree_rel, str(exc))
            )
        except MalformedTree as exc:
            diagnostics.append(
                _diag("parse/tree-malformed", DiagnosticCategory.TYPE_MISMATCH, tree_rel, str(exc))
            )

    seen_nodes: set[str] = set()
    for node in artifact.all_nodes():
        if node.id in seen_nodes:
            diagnostics.append(
                Diagnostic(
                    check_id="parse/duplicate-id",
                    category=DiagnosticCategory.TYPE_MISMATCH,
                    severity=Severity.ERROR,
                    file=tree_rel,
                    entity=node.id,
                    message=f"duplicate node id {node.id}",
                )
            )
        seen_nodes.add(node.id)

    session_files = sorted(
        rel
        for rel in artifact.file_inventory
        if rel.startswith(f"{trace}/sessions/")
        and rel.endswith((".yaml", ".yml"))
        and not rel.endswith("session_index.yaml")
    )
    for rel in session_files:
        try:
            artifact.sessions.append(
                parse_session(_read(root_path, rel), fallback_id=Path(rel).stem)
            )
        except (OSError, UnicodeDecodeError) as exc:
            diagnostics.append(
                _diag("parse/unreadable", DiagnosticCategory.EXECUTION_ERROR, rel, str(exc))
            )
        except ParseError as exc:
            diagnostics.append(
                _diag("parse/malformed", DiagnosticCategory.TYPE_MISMATCH, rel, str(exc))
            )

    diagnostics.sort(key=Diagnostic.sort_key)
    return artifact, diagnostics
