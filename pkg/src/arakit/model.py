"""Domain types for the ARA (Agent-Native Research Artifact) protocol.

Types parsed from artifact files (claims, experiments, heuristics, tree
nodes, sessions) are deliberately lenient: enum-like fields hold the raw
text found on disk and may be absent, so the validator can report schema
violations instead of the parser refusing to load them.  Types that are
constructed programmatically (diagnostics, certificates, findings,
injections) validate their enums on construction.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable


class AraError(Exception):
    """Base class for every error raised by this package."""


class ModelError(AraError):
    """A strictly-typed model value was constructed with an invalid field."""


class ClaimStatus(str, Enum):
    HYPOTHESIS = "hypothesis"
    TESTING = "testing"
    SUPPORTED = "supported"
    REFUTED = "refuted"


class Provenance(str, Enum):
    USER = "user"
    AI_SUGGESTED = "ai-suggested"
    AI_EXECUTED = "ai-executed"
    USER_REVISED = "user-revised"


class Sensitivity(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class NodeKind(str, Enum):
    QUESTION = "question"
    DECISION = "decision"
    EXPERIMENT = "experiment"
    DEAD_END = "dead_end"
    PIVOT = "pivot"


class EventType(str, Enum):
    DECISION = "decision"
    CLAIM = "claim"
    EXPERIMENT = "experiment"
    HEURISTIC = "heuristic"
    DEAD_END = "dead_end"
    OBSERVATION = "observation"
    PIVOT = "pivot"


class SrcMode(str, Enum):
    KERNEL = "kernel"
    REPO = "repo"


RELATED_WORK_TAGS = frozenset({"imports", "bounds", "baseline"})


class DiagnosticCategory(str, Enum):
    MISSING_FILE = "missing_file"
    MISSING_FIELD = "missing_field"
    DANGLING_REFERENCE = "dangling_reference"
    TYPE_MISMATCH = "type_mismatch"
    DEPENDENCY_RESOLUTION_FAILURE = "dependency_resolution_failure"
    EXECUTION_ERROR = "execution_error"
    NONDETERMINISM = "nondeterminism"


class Severity(str, Enum):
    ERROR = "error"
    ADVISORY = "advisory"


class FindingSeverity(str, Enum):
    CRITICAL = "critical"
    MAJOR = "major"
    MINOR = "minor"
    SUGGESTION = "suggestion"


class Dimension(str, Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"


class Difficulty(str, Enum):
    EASY = "easy"
    MEDIUM = "medium"
    HARD = "hard"


class ClaimOutcome(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    UNVERIFIED = "unverified"


class InjectionKind(str, Enum):
    FABRICATED_CLAIM = "fabricated_claim"
    MISSING_FALSIFICATION = "missing_falsification"
    ORPHAN_EXPERIMENT = "orphan_experiment"
    OVER_CLAIM = "over_claim"
    REBUTTED_BRANCH_LEAK = "rebutted_branch_leak"


class CertStatus(str, Enum):
    VALID = "valid"
    STALE = "stale"
    TAMPERED = "tampered"


class Grade(str, Enum):
    ACCEPT = "accept"
    REVISE = "revise"
    REJECT = "reject"


def _coerce(enum_type: type, value: object, where: str):
    """Coerce *value* into *enum_type*, rejecting out-of-set values."""
    if isinstance(value, enum_type):
        return value
    try:
        return enum_type(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_type)
        raise ModelError(f"{where}: {value!r} is not one of {{{allowed}}}") from None


def canonical_json(value: Any) -> str:
    """UTF-8 JSON with sorted keys and no insignificant whitespace."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Parsed artifact content (lenient).


@dataclass
class Manifest:
    """Frontmatter and layer index of PAPER.md."""

    title: str = ""
    authors: list[str] = field(default_factory=list)
    venue: str | None = None
    status: str | None = None
    abstract: str = ""
    ara_schema: str | None = None
    src_mode: str | None = None
    layers: dict[str, str] = field(default_factory=dict)
    extensions: dict[str, Any] = field(default_factory=dict)
    layer_index: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "authors": list(self.authors),
            "venue": self.venue,
            "status": self.status,
            "abstract": self.abstract,
            "ara_schema": self.ara_schema,
            "src_mode": self.src_mode,
            "layers": dict(self.layers),
            "extensions": dict(self.extensions),
            "layer_index": [list(row) for row in self.layer_index],
        }


@dataclass
class Claim:
    id: str
    title: str = ""
    statement: str | None = None
    status: str | None = None
    provenance: str | None = None
    falsification: str | None = None
    proof: list[str] = field(default_factory=list)
    dependencies: list[str] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)
    extra_fields: dict[str, str] = field(default_factory=dict)

    MANDATORY = ("statement", "status", "falsification", "proof")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "statement": self.statement,
            "status": self.status,
            "provenance": self.provenance,
            "falsification": self.falsification,
            "proof": list(self.proof),
            "dependencies": list(self.dependencies),
            "tags": list(self.tags),
            "extra_fields": dict(self.extra_fields),
        }


@dataclass
class Experiment:
    id: str
    title: str = ""
    verifies: list[str] = field(default_factory=list)
    setup: str | None = None
    procedure: list[str] = field(default_factory=list)
    metrics: list[str] = field(default_factory=list)
    expected_outcome: str | None = None
    evidence: list[str] = field(default_factory=list)
    extra_fields: dict[str, str] = field(default_factory=dict)

    MANDATORY = ("verifies", "setup", "procedure", "expected_outcome")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "verifies": list(self.verifies),
            "setup": self.setup,
            "procedure": list(self.procedure),
            "metrics": list(self.metrics),
            "expected_outcome": self.expected_outcome,
            "evidence": list(self.evidence),
            "extra_fields": dict(self.extra_fields),
        }


@dataclass
class Heuristic:
    id: str
    title: str = ""
    rationale: str | None = None
    sensitivity: str | None = None
    bounds: str | None = None
    code_ref: list[str] = field(default_factory=list)
    source: str | None = None
    provenance: str | None = None
    extra_fields: dict[str, str] = field(default_factory=dict)

    MANDATORY = ("rationale", "sensitivity", "bounds")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "rationale": self.rationale,
            "sensitivity": self.sensitivity,
            "bounds": self.bounds,
            "code_ref": list(self.code_ref),
            "source": self.source,
            "provenance": self.provenance,
            "extra_fields": dict(self.extra_fields),
        }


@dataclass
class GenericEntry:
    """A structured entry with no dedicated schema (concepts, related work,
    observations, architecture components)."""

    id: str
    title: str = ""
    fields: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "title": self.title, "fields": dict(self.fields)}


# Payload keys recognized per node kind; anything else lands in extras.
NODE_PAYLOAD_KEYS: dict[str, frozenset[str]] = {
    NodeKind.QUESTION.value: frozenset(),
    NodeKind.DECISION.value: frozenset({"choice", "alternatives", "evidence"}),
    NodeKind.EXPERIMENT.value: frozenset({"result", "evidence"}),
    NodeKind.DEAD_END.value: frozenset({"hypothesis", "failure_mode", "lesson"}),
    NodeKind.PIVOT.value: frozenset({"trigger", "rationale"}),
}

DEAD_END_PAYLOAD = ("hypothesis", "failure_mode", "lesson")


@dataclass
class ExplorationNode:
    id: str
    kind: NodeKind
    title: str = ""
    provenance: str | None = None
    timestamp: str | None = None
    payload: dict[str, Any] = field(default_factory=dict)
    extras: dict[str, Any] = field(default_factory=dict)
    children: list["ExplorationNode"] = field(default_factory=list)
    also_depends_on: list[str] = field(default_factory=list)

    def walk(self) -> Iterable["ExplorationNode"]:
        """Yield this node and all descendants in document order."""
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "title": self.title,
            "provenance": self.provenance,
            "timestamp": self.timestamp,
            "payload": dict(self.payload),
            "extras": dict(self.extras),
            "children": [child.to_dict() for child in self.children],
            "also_depends_on": list(self.also_depends_on),
        }


@dataclass
class SessionEvent:
    type: str
    id: str = ""
    summary: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.type, "id": self.id, "summary": self.summary}


@dataclass
class SessionRecord:
    id: str
    timestamp: str = ""
    summary: str = ""
    events_logged: list[SessionEvent] = field(default_factory=list)
    ai_actions: list[Any] = field(default_factory=list)
    claims_touched: list[str] = field(default_factory=list)
    open_threads: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "timestamp": self.timestamp,
            "summary": self.summary,
            "events_logged": [e.to_dict() for e in self.events_logged],
            "ai_actions": list(self.ai_actions),
            "claims_touched": list(self.claims_touched),
            "open_threads": list(self.open_threads),
        }


@dataclass
class Artifact:
    """In-memory model of one ARA directory."""

    root: str
    manifest: Manifest | None = None
    claims: list[Claim] = field(default_factory=list)
    experiments: list[Experiment] = field(default_factory=list)
    heuristics: list[Heuristic] = field(default_factory=list)
    concepts: list[GenericEntry] = field(default_factory=list)
    related_work: list[GenericEntry] = field(default_factory=list)
    architecture: list[GenericEntry] = field(default_factory=list)
    tree: list[ExplorationNode] = field(default_factory=list)
    sessions: list[SessionRecord] = field(default_factory=list)
    file_inventory: frozenset[str] = frozenset()
    dir_inventory: frozenset[str] = frozenset()

    def layer_path(self, name: str, default: str) -> str:
        """Layer directory declared in the manifest, normalized, or *default*."""
        raw = (self.manifest.layers.get(name) if self.manifest else None) or default
        return raw.strip("/")

    def all_nodes(self) -> list[ExplorationNode]:
        out: list[ExplorationNode] = []
        for root_node in self.tree:
            out.extend(root_node.walk())
        return out

    def claim_ids(self) -> set[str]:
        return {c.id for c in self.claims}

    def experiment_ids(self) -> set[str]:
        return {e.id for e in self.experiments}

    def node_ids(self) -> set[str]:
        return {n.id for n in self.all_nodes()}

    def to_dict(self) -> dict[str, Any]:
        return {
            "root": self.root,
            "manifest": self.manifest.to_dict() if self.manifest else None,
            "claims": [c.to_dict() for c in self.claims],
            "experiments": [e.to_dict() for e in self.experiments],
            "heuristics": [h.to_dict() for h in self.heuristics],
            "concepts": [c.to_dict() for c in self.concepts],
            "related_work": [r.to_dict() for r in self.related_work],
            "architecture": [a.to_dict() for a in self.architecture],
            "tree": [n.to_dict() for n in self.tree],
            "sessions": [s.to_dict() for s in self.sessions],
            "file_inventory": sorted(self.file_inventory),
            "dir_inventory": sorted(self.dir_inventory),
        }


# ---------------------------------------------------------------------------
# Verification outputs (strict).


@dataclass(frozen=True)
class Diagnostic:
    check_id: str
    category: DiagnosticCategory
    severity: Severity
    file: str
    message: str
    entity: str | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "category", _coerce(DiagnosticCategory, self.category, "Diagnostic.category")
        )
        object.__setattr__(
            self, "severity", _coerce(Severity, self.severity, "Diagnostic.severity")
        )

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.file, self.entity or "", self.check_id, self.message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "category": self.category.value,
            "severity": self.severity.value,
            "file": self.file,
            "entity": self.entity,
            "message": self.message,
        }


@dataclass(frozen=True)
class PerClaimOutcome:
    claim_id: str
    outcome: ClaimOutcome

    def __post_init__(self):
        object.__setattr__(
            self, "outcome", _coerce(ClaimOutcome, self.outcome, "PerClaimOutcome.outcome")
        )

    def to_dict(self) -> dict[str, Any]:
        return {"claim_id": self.claim_id, "outcome": self.outcome.value}


@dataclass
class SealCertificate:
    artifact_id: str
    level: int
    timestamp: str
    environment_hash: str
    content_hash: str
    per_claim_outcomes: list[PerClaimOutcome]
    tool_version: str
    self_digest: str = ""
    previous_digest: str | None = None

    def __post_init__(self):
        if self.level not in (1, 2, 3):
            raise ModelError(f"SealCertificate.level: {self.level!r} not in {{1, 2, 3}}")

    def body_dict(self) -> dict[str, Any]:
        """Certificate as a JSON-able dict with self_digest blanked."""
        return {
            "artifact_id": self.artifact_id,
            "level": self.level,
            "timestamp": self.timestamp,
            "environment_hash": self.environment_hash,
            "content_hash": self.content_hash,
            "per_claim_outcomes": [o.to_dict() for o in self.per_claim_outcomes],
            "tool_version": self.tool_version,
            "previous_digest": self.previous_digest,
            "self_digest": "",
        }

    def compute_self_digest(self) -> str:
        return sha256_text(canonical_json(self.body_dict()))

    def to_dict(self) -> dict[str, Any]:
        body = self.body_dict()
        body["self_digest"] = self.self_digest
        return body

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SealCertificate":
        try:
            return cls(
                artifact_id=str(data["artifact_id"]),
                level=int(data["level"]),
                timestamp=str(data["timestamp"]),
                environment_hash=str(data["environment_hash"]),
                content_hash=str(data["content_hash"]),
                per_claim_outcomes=[
                    PerClaimOutcome(str(o["claim_id"]), o["outcome"])
                    for o in data.get("per_claim_outcomes", [])
                ],
                tool_version=str(data["tool_version"]),
                self_digest=str(data.get("self_digest", "")),
                previous_digest=data.get("previous_digest"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed certificate: {exc}") from exc


# ---------------------------------------------------------------------------
# Mutation benchmark records (strict).


@dataclass(frozen=True)
class Injection:
    injection_id: str
    kind: InjectionKind
    target_entity: str
    unique_marker: str
    file: str
    description: str

    def __post_init__(self):
        object.__setattr__(self, "kind", _coerce(InjectionKind, self.kind, "Injection.kind"))

    def to_dict(self) -> dict[str, Any]:
        return {
            "injection_id": self.injection_id,
            "kind": self.kind.value,
            "target_entity": self.target_entity,
            "unique_marker": self.unique_marker,
            "file": self.file,
            "description": self.description,
        }


@dataclass
class InjectionManifest:
    source_content_hash: str
    mutated_content_hash: str
    injections: list[Injection]

    def __post_init__(self):
        seen: set[InjectionKind] = set()
        for inj in self.injections:
            if inj.kind in seen:
                raise ModelError(f"duplicate injection kind {inj.kind.value} in manifest")
            seen.add(inj.kind)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_content_hash": self.source_content_hash,
            "mutated_content_hash": self.mutated_content_hash,
            "injections": [i.to_dict() for i in self.injections],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "InjectionManifest":
        try:
            return cls(
                source_content_hash=str(data["source_content_hash"]),
                mutated_content_hash=str(data["mutated_content_hash"]),
                injections=[
                    Injection(
                        injection_id=str(i["injection_id"]),
                        kind=i["kind"],
                        target_entity=str(i["target_entity"]),
                        unique_marker=str(i["unique_marker"]),
                        file=str(i["file"]),
                        description=str(i.get("description", "")),
                    )
                    for i in data["injections"]
                ],
            )
        except (KeyError, TypeError) as exc:
            raise ModelError(f"malformed injection manifest: {exc}") from exc


@dataclass(frozen=True)
class Finding:
    finding_id: str
    severity: FindingSeverity
    dimension: Dimension
    observation: str
    target_entity: str | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "severity", _coerce(FindingSeverity, self.severity, "Finding.severity")
        )
        object.__setattr__(
            self, "dimension", _coerce(Dimension, self.dimension, "Finding.dimension")
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "finding_id": self.finding_id,
            "severity": self.severity.value,
            "dimension": self.dimension.value,
            "target_entity": self.target_entity,
            "observation": self.observation,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Finding":
        try:
            return cls(
                finding_id=str(data["finding_id"]),
                severity=data["severity"],
                dimension=data["dimension"],
                observation=str(data.get("observation", "")),
                target_entity=data.get("target_entity"),
            )
        except (KeyError, TypeError) as exc:
            raise ModelError(f"malformed finding: {exc}") from exc


@dataclass(frozen=True)
class SubtaskScore:
    difficulty: Difficulty
    score: float
    max_score: float

    def __post_init__(self):
        object.__setattr__(
            self, "difficulty", _coerce(Difficulty, self.difficulty, "SubtaskScore.difficulty")
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "difficulty": self.difficulty.value,
            "score": self.score,
            "max": self.max_score,
        }
