"""ARA Seal Level 1: the deterministic structural-integrity check suite.

Five gating checks (ontology, schemas, counts, references, evidence
separation) plus non-gating advisory diagnostics.  For fixed input bytes
and a fixed configuration the serialized report is byte-identical across
runs and across directory enumeration orders.
"""

from __future__ import annotations

import fnmatch
import re
from dataclasses import dataclass, field, replace
from typing import Any

from .model import (
    Artifact,
    ClaimStatus,
    DEAD_END_PAYLOAD,
    Diagnostic,
    DiagnosticCategory,
    EventType,
    NodeKind,
    Provenance,
    RELATED_WORK_TAGS,
    Sensitivity,
    Severity,
    SrcMode,
    canonical_json,
    sha256_text,
)
from .parse import classify_token, reference_tokens

DEFAULT_MANDATORY_DIRS = ("logic", "src", "trace", "evidence")
DEFAULT_MANDATORY_FILES = (
    "PAPER.md",
    "logic/problem.md",
    "logic/claims.md",
    "logic/experiments.md",
    "logic/solution/heuristics.md",
    "trace/exploration_tree.yaml",
)

MIN_CONCEPTS = 5
MIN_EXPERIMENTS = 3
MIN_TREE_NODES = 8
DEAD_END_FRACTION = 0.05


@dataclass(frozen=True)
class CheckOverride:
    enabled: bool = True
    severity: str | None = None
    threshold: float | None = None


@dataclass
class CheckConfig:
    """Tunable policy for the Level-1 suite.

    ``overrides`` maps check ids to per-check policy; the reserved
    ``mandatory_dirs``/``mandatory_files`` lists replace the ontology
    defaults outright (dropping ``src`` supports theory-style artifacts
    with no physical layer).
    """

    mandatory_dirs: tuple[str, ...] = DEFAULT_MANDATORY_DIRS
    mandatory_files: tuple[str, ...] = DEFAULT_MANDATORY_FILES
    min_concepts: int = MIN_CONCEPTS
    min_experiments: int = MIN_EXPERIMENTS
    min_tree_nodes: int = MIN_TREE_NODES
    dead_end_fraction: float = DEAD_END_FRACTION
    overrides: dict[str, CheckOverride] = field(default_factory=dict)

    def fingerprint(self) -> str:
        payload = {
            "mandatory_dirs": list(self.mandatory_dirs),
            "mandatory_files": list(self.mandatory_files),
            "min_concepts": self.min_concepts,
            "min_experiments": self.min_experiments,
            "min_tree_nodes": self.min_tree_nodes,
            "dead_end_fraction": self.dead_end_fraction,
            "overrides": {
                check: {
                    "enabled": ov.enabled,
                    "severity": ov.severity,
                    "threshold": ov.threshold,
                }
                for check, ov in sorted(self.overrides.items())
            },
        }
        return sha256_text(canonical_json(payload))

    def threshold(self, check_id: str, default: float) -> float:
        override = self.overrides.get(check_id)
        if override is not None and override.threshold is not None:
            return override.threshold
        return default

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "CheckConfig":
        """Build a config from the YAML config-file mapping."""
        config = cls()
        for key, value in data.items():
            if key == "mandatory_dirs":
                config.mandatory_dirs = tuple(str(v) for v in value)
            elif key == "mandatory_files":
                config.mandatory_files = tuple(str(v) for v in value)
            elif isinstance(value, dict):
                config.overrides[str(key)] = CheckOverride(
                    enabled=bool(value.get("enabled", True)),
                    severity=value.get("severity"),
                    threshold=value.get("threshold"),
                )
        config.min_concepts = int(config.threshold("counts/concepts", MIN_CONCEPTS))
        config.min_experiments = int(config.threshold("counts/experiments", MIN_EXPERIMENTS))
        config.min_tree_nodes = int(config.threshold("counts/tree-nodes", MIN_TREE_NODES))
        config.dead_end_fraction = config.threshold("advisory/sanitized-tree", DEAD_END_FRACTION)
        return config


@dataclass
class ValidationReport:
    passed: bool
    diagnostics: list[Diagnostic]
    counts: dict[str, int]
    config_fingerprint: str

    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is Severity.ERROR]

    def advisories(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is Severity.ADVISORY]

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
            "counts": dict(sorted(self.counts.items())),
            "config_fingerprint": self.config_fingerprint,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def to_jsonl(self) -> str:
        return "\n".join(canonical_json(d.to_dict()) for d in self.diagnostics)


def _mk(
    check_id: str,
    category: DiagnosticCategory,
    file: str,
    message: str,
    entity: str | None = None,
    severity: Severity = Severity.ERROR,
) -> Diagnostic:
    return Diagnostic(
        check_id=check_id,
        category=category,
        severity=severity,
        file=file,
        entity=entity,
        message=message,
    )


def _logic(artifact: Artifact) -> str:
    return artifact.layer_path("logic", "logic")


def _trace(artifact: Artifact) -> str:
    return artifact.layer_path("trace", "trace")


def _src(artifact: Artifact) -> str:
    return artifact.layer_path("src", "src")


def check_ontology(artifact: Artifact, config: CheckConfig | None = None) -> list[Diagnostic]:
    """One missing_file diagnostic per absent mandatory directory or file."""
    config = config or CheckConfig()
    out: list[Diagnostic] = []
    present_dirs = artifact.dir_inventory | {f.rsplit("/", 1)[0] for f in artifact.file_inventory if "/" in f}
    for directory in config.mandatory_dirs:
        name = directory.strip("/")
        if name not in present_dirs and not any(d.startswith(name + "/") for d in present_dirs):
            out.append(
                _mk(
                    "ontology/dir-missing",
                    DiagnosticCategory.MISSING_FILE,
                    name + "/",
                    f"mandatory directory {name}/ is absent",
                )
            )
    for rel in config.mandatory_files:
        if rel not in artifact.file_inventory:
            out.append(
                _mk(
                    "ontology/file-missing",
                    DiagnosticCategory.MISSING_FILE,
                    rel,
                    f"mandatory file {rel} is absent",
                )
            )
    return out


def _enum_values(enum_type) -> set[str]:
    return {member.value for member in enum_type}


def check_schemas(artifact: Artifact) -> list[Diagnostic]:
    """Missing mandatory fields and enum violations on every parsed entry."""
    out: list[Diagnostic] = []
    logic = _logic(artifact)
    trace = _trace(artifact)
    claims_file = f"{logic}/claims.md"
    experiments_file = f"{logic}/experiments.md"
    heuristics_file = f"{logic}/solution/heuristics.md"
    tree_file = f"{trace}/exploration_tree.yaml"

    if artifact.manifest is not None:
        manifest = artifact.manifest
        if not manifest.abstract.strip():
            out.append(
                _mk(
                    "schema/manifest-abstract",
                    DiagnosticCategory.MISSING_FIELD,
                    "PAPER.md",
                    "frontmatter abstract is empty",
                )
            )
        for layer in ("logic", "trace", "evidence"):
            if layer not in manifest.layers:
                out.append(
                    _mk(
                        "schema/manifest-layers",
                        DiagnosticCategory.MISSING_FIELD,
                        "PAPER.md",
                        f"frontmatter layers map lacks the {layer} key",
                    )
                )
        if manifest.src_mode is not None and manifest.src_mode not in _enum_values(SrcMode):
            out.append(
                _mk(
                    "schema/manifest-src-mode",
                    DiagnosticCategory.TYPE_MISMATCH,
                    "PAPER.md",
                    f"src_mode {manifest.src_mode!r} is not one of kernel|repo",
                )
            )

    def require(entity_obj, file: str, check_id: str) -> None:
        for name in entity_obj.MANDATORY:
            value = getattr(entity_obj, name)
            if value is None or (isinstance(value, (list, str)) and not value):
                out.append(
                    _mk(
                        check_id,
                        DiagnosticCategory.MISSING_FIELD,
                        file,
                        f"mandatory field {name} is absent",
                        entity=entity_obj.id,
                    )
                )

    def provenance_ok(value: str | None, file: str, entity: str) -> None:
        if value is not None and value not in _enum_values(Provenance):
            out.append(
                _mk(
                    "schema/provenance",
                    DiagnosticCategory.TYPE_MISMATCH,
                    file,
                    f"provenance {value!r} is not a recognized provenance tag",
                    entity=entity,
                )
            )

    for claim in artifact.claims:
        require(claim, claims_file, "schema/claim-field")
        if claim.status is not None and claim.status not in _enum_values(ClaimStatus):
            out.append(
                _mk(
                    "schema/claim-status",
                    DiagnosticCategory.TYPE_MISMATCH,
                    claims_file,
                    f"status {claim.status!r} is not one of hypothesis|testing|supported|refuted",
                    entity=claim.id,
                )
            )
        provenance_ok(claim.provenance, claims_file, claim.id)

    for experiment in artifact.experiments:
        require(experiment, experiments_file, "schema/experiment-field")

    for heuristic in artifact.heuristics:
        require(heuristic, heuristics_file, "schema/heuristic-field")
        if heuristic.sensitivity is not None and heuristic.sensitivity not in _enum_values(Sensitivity):
            out.append(
                _mk(
                    "schema/heuristic-sensitivity",
                    DiagnosticCategory.TYPE_MISMATCH,
                    heuristics_file,
                    f"sensitivity {heuristic.sensitivity!r} is not one of low|medium|high",
                    entity=heuristic.id,
                )
            )
        provenance_ok(heuristic.provenance, heuristics_file, heuristic.id)

    for node in artifact.all_nodes():
        provenance_ok(node.provenance, tree_file, node.id)
        if node.kind is NodeKind.DEAD_END:
            for key in DEAD_END_PAYLOAD:
                value = node.payload.get(key)
                if value is None or (isinstance(value, str) and not value.strip()):
                    out.append(
                        _mk(
                            "schema/dead-end-payload",
                            DiagnosticCategory.MISSING_FIELD,
                            tree_file,
                            f"dead_end payload lacks {key}",
                            entity=node.id,
                        )
                    )

    related_file = f"{logic}/related_work.md"
    for entry in artifact.related_work:
        tag = None
        for key in ("type", "dependency_type", "dependency", "relation", "tag"):
            if key in entry.fields:
                tag = entry.fields[key].strip().lower()
                break
        if tag is not None and tag not in RELATED_WORK_TAGS:
            out.append(
                _mk(
                    "schema/related-work-tag",
                    DiagnosticCategory.TYPE_MISMATCH,
                    related_file,
                    f"dependency tag {tag!r} is not one of imports|bounds|baseline",
                    entity=entry.id,
                )
            )

    for session in artifact.sessions:
        for event in session.events_logged:
            if event.type not in _enum_values(EventType):
                out.append(
                    _mk(
                        "schema/session-event-type",
                        DiagnosticCategory.TYPE_MISMATCH,
                        f"{trace}/sessions/",
                        f"event type {event.type!r} is outside the seven-value event enum",
                        entity=session.id,
                    )
                )
    return out


def check_counts(artifact: Artifact, config: CheckConfig | None = None) -> list[Diagnostic]:
    """Minimum-count gates for concepts, experiments, and tree structure."""
    config = config or CheckConfig()
    out: list[Diagnostic] = []
    logic = _logic(artifact)
    trace = _trace(artifact)
    nodes = artifact.all_nodes()

    if len(artifact.concepts) < config.min_concepts:
        out.append(
            _mk(
                "counts/concepts",
                DiagnosticCategory.MISSING_FIELD,
                f"{logic}/concepts.md",
                f"found {len(artifact.concepts)} concepts, need at least {config.min_concepts}",
            )
        )
    if len(artifact.experiments) < config.min_experiments:
        out.append(
            _mk(
                "counts/experiments",
                DiagnosticCategory.MISSING_FIELD,
                f"{logic}/experiments.md",
                f"found {len(artifact.experiments)} experiments, need at least {config.min_experiments}",
            )
        )
    tree_file = f"{trace}/exploration_tree.yaml"
    if len(nodes) < config.min_tree_nodes:
        out.append(
            _mk(
                "counts/tree-nodes",
                DiagnosticCategory.MISSING_FIELD,
                tree_file,
                f"found {len(nodes)} exploration nodes, need at least {config.min_tree_nodes}",
            )
        )
    if not any(n.kind is NodeKind.DEAD_END for n in nodes):
        out.append(
            _mk(
                "counts/dead-end",
                DiagnosticCategory.MISSING_FIELD,
                tree_file,
                "exploration tree contains no dead_end node",
            )
        )
    if not any(n.kind is NodeKind.DECISION for n in nodes):
        out.append(
            _mk(
                "counts/decision",
                DiagnosticCategory.MISSING_FIELD,
                tree_file,
                "exploration tree contains no decision node",
            )
        )
    return out


def check_references(artifact: Artifact) -> list[Diagnostic]:
    """Cross-layer reference resolution over the full reference graph."""
    out: list[Diagnostic] = []
    logic = _logic(artifact)
    src = _src(artifact)
    trace = _trace(artifact)
    claims_file = f"{logic}/claims.md"
    experiments_file = f"{logic}/experiments.md"
    heuristics_file = f"{logic}/solution/heuristics.md"
    tree_file = f"{trace}/exploration_tree.yaml"

    claim_ids = artifact.claim_ids()
    experiment_ids = artifact.experiment_ids()
    node_ids = artifact.node_ids()
    heuristic_ids = {h.id for h in artifact.heuristics}

    def resolve_id(token: str) -> bool:
        if token.startswith("C"):
            return token in claim_ids
        if token.startswith("E"):
            return token in experiment_ids
        if token.startswith("H"):
            return token in heuristic_ids
        if token.startswith("N"):
            return token in node_ids
        return False

    def path_exists(path: str, prefix: str | None = None) -> bool:
        candidates = [path]
        if prefix is not None and not path.startswith(prefix + "/"):
            candidates.append(f"{prefix}/{path}")
        for candidate in candidates:
            normalized = candidate.strip("/")
            if "*" in normalized or "?" in normalized:
                if any(fnmatch.fnmatch(f, normalized) for f in artifact.file_inventory):
                    return True
            elif normalized in artifact.file_inventory or normalized in artifact.dir_inventory:
                return True
        return False

    for claim in artifact.claims:
        for token in claim.proof:
            token_kind, value = classify_token(token)
            if token_kind == "id":
                if not resolve_id(value):
                    out.append(
                        _mk(
                            "refs/proof-experiment",
                            DiagnosticCategory.DANGLING_REFERENCE,
                            claims_file,
                            f"proof cites {value}, which does not exist",
                            entity=claim.id,
                        )
                    )
            elif token_kind == "path":
                if not path_exists(value):
                    out.append(
                        _mk(
                            "refs/proof-path",
                            DiagnosticCategory.DANGLING_REFERENCE,
                            claims_file,
                            f"proof cites path {value}, which is not in the artifact",
                            entity=claim.id,
                        )
                    )
                else:
                    out.append(
                        _mk(
                            "advisory/proof-indirection",
                            DiagnosticCategory.TYPE_MISMATCH,
                            claims_file,
                            f"proof cites path {value} directly; prefer an experiment id",
                            entity=claim.id,
                            severity=Severity.ADVISORY,
                        )
                    )
        for dep in claim.dependencies:
            if dep not in claim_ids:
                out.append(
                    _mk(
                        "refs/claim-dependency",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        claims_file,
                        f"dependency {dep} names no existing claim",
                        entity=claim.id,
                    )
                )

    for experiment in artifact.experiments:
        for target in experiment.verifies:
            if target not in claim_ids:
                out.append(
                    _mk(
                        "refs/verifies-claim",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        experiments_file,
                        f"verifies {target}, which names no existing claim",
                        entity=experiment.id,
                    )
                )
        for token in experiment.evidence:
            token_kind, value = classify_token(token)
            if token_kind == "id" and not resolve_id(value):
                out.append(
                    _mk(
                        "refs/experiment-evidence",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        experiments_file,
                        f"evidence reference {value} does not resolve",
                        entity=experiment.id,
                    )
                )
            elif token_kind == "path" and not path_exists(value):
                out.append(
                    _mk(
                        "refs/experiment-evidence",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        experiments_file,
                        f"evidence path {value} is not in the artifact",
                        entity=experiment.id,
                    )
                )

    for heuristic in artifact.heuristics:
        for ref in heuristic.code_ref:
            if not path_exists(ref, prefix=src):
                out.append(
                    _mk(
                        "refs/heuristic-code-ref",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        heuristics_file,
                        f"code_ref {ref} points to no file under the artifact",
                        entity=heuristic.id,
                    )
                )

    has_src_files = any(f.startswith(src + "/") for f in artifact.file_inventory)
    architecture_file = f"{logic}/solution/architecture.md"
    for component in artifact.architecture:
        refs: list[str] = []
        for key in ("code_ref", "stub", "file", "module", "implementation"):
            if key in component.fields:
                refs.extend(reference_paths(component.fields[key]))
        if refs:
            for ref in refs:
                if not path_exists(ref, prefix=src):
                    out.append(
                        _mk(
                            "refs/architecture-stub",
                            DiagnosticCategory.DANGLING_REFERENCE,
                            architecture_file,
                            f"component stub {ref} points to no file",
                            entity=component.id,
                        )
                    )
        elif not has_src_files:
            out.append(
                _mk(
                    "refs/architecture-stub",
                    DiagnosticCategory.DANGLING_REFERENCE,
                    architecture_file,
                    "component declares no stub and the artifact has no source files",
                    entity=component.id,
                )
            )

    for node in artifact.all_nodes():
        payload_refs = node.payload.get("evidence", [])
        if isinstance(payload_refs, str):
            payload_refs = reference_tokens(payload_refs)
        if isinstance(payload_refs, list):
            for ref in payload_refs:
                token_kind, value = classify_token(str(ref))
                if token_kind == "id" and not resolve_id(value):
                    out.append(
                        _mk(
                            "refs/tree-ref",
                            DiagnosticCategory.DANGLING_REFERENCE,
                            tree_file,
                            f"node references {value}, which does not resolve",
                            entity=node.id,
                        )
                    )
                elif token_kind == "path" and not path_exists(value):
                    out.append(
                        _mk(
                            "refs/tree-ref",
                            DiagnosticCategory.DANGLING_REFERENCE,
                            tree_file,
                            f"node references path {value}, which is not in the artifact",
                            entity=node.id,
                        )
                    )
        for dep in node.also_depends_on:
            if dep not in node_ids:
                out.append(
                    _mk(
                        "refs/also-depends-on",
                        DiagnosticCategory.DANGLING_REFERENCE,
                        tree_file,
                        f"also_depends_on {dep} names no existing node",
                        entity=node.id,
                    )
                )
    return out


def reference_paths(raw: str) -> list[str]:
    """Path-looking tokens inside a free-form field value."""
    out = []
    for token in reference_tokens(raw):
        kind, value = classify_token(token)
        if kind == "path":
            out.append(value)
    return out


_ACHIEVED_RESULT_RE = re.compile(
    r"(?i)\b(improv\w*|achiev\w*|reach\w*|attain\w*|increas\w*|decreas\w*|"
    r"drop\w*|rise\w*|rose|fell|fall\w*|exceed\w*|gain\w*|yield\w*|recover\w*)\b"
    r"[^.;\n]{0,60}?\d+(?:\.\d+)?\s*(%|percent\b|pp\b|percentage\s+points)"
)
_COMPARATOR_RESULT_RE = re.compile(r"[<>≤≥]\s*=?\s*\d+(?:\.\d+)?\s*(%|percent\b|pp\b)")


def check_evidence_separation(artifact: Artifact) -> list[Diagnostic]:
    """Advisory lint: expected outcomes must stay directional, not numeric.

    Pattern-based with known false positives (setup constants); therefore
    never gating.
    """
    out: list[Diagnostic] = []
    experiments_file = f"{_logic(artifact)}/experiments.md"
    for experiment in artifact.experiments:
        text = experiment.expected_outcome or ""
        if _ACHIEVED_RESULT_RE.search(text) or _COMPARATOR_RESULT_RE.search(text):
            out.append(
                _mk(
                    "evidence/exact-result",
                    DiagnosticCategory.TYPE_MISMATCH,
                    experiments_file,
                    "expected outcome states an exact numeric result; results belong in the evidence layer",
                    entity=experiment.id,
                    severity=Severity.ADVISORY,
                )
            )
    return out


def advisory_diagnostics(artifact: Artifact, config: CheckConfig | None = None) -> list[Diagnostic]:
    """Non-gating signals surfaced for human reviewers."""
    config = config or CheckConfig()
    out: list[Diagnostic] = []
    logic = _logic(artifact)
    trace = _trace(artifact)
    nodes = artifact.all_nodes()

    if nodes:
        dead_ends = sum(1 for n in nodes if n.kind is NodeKind.DEAD_END)
        if dead_ends / len(nodes) < config.dead_end_fraction:
            out.append(
                _mk(
                    "advisory/sanitized-tree",
                    DiagnosticCategory.MISSING_FIELD,
                    f"{trace}/exploration_tree.yaml",
                    f"only {dead_ends} of {len(nodes)} nodes are dead ends; "
                    "the tree reads as a sanitized linear chain",
                    severity=Severity.ADVISORY,
                )
            )

    covered = {target for e in artifact.experiments for target in e.verifies}
    for claim in artifact.claims:
        if claim.id not in covered:
            out.append(
                _mk(
                    "advisory/claim-coverage",
                    DiagnosticCategory.MISSING_FIELD,
                    f"{logic}/claims.md",
                    "no experiment verifies this claim",
                    entity=claim.id,
                    severity=Severity.ADVISORY,
                )
            )

    if artifact.related_work:
        tags = set()
        for entry in artifact.related_work:
            for key in ("type", "dependency_type", "dependency", "relation", "tag"):
                if key in entry.fields:
                    tags.add(entry.fields[key].strip().lower())
        if "baseline" not in tags:
            out.append(
                _mk(
                    "advisory/baseline-missing",
                    DiagnosticCategory.MISSING_FIELD,
                    f"{logic}/related_work.md",
                    "related work declares no baseline-tagged dependency",
                    severity=Severity.ADVISORY,
                )
            )
    return out


def _apply_overrides(diagnostics: list[Diagnostic], config: CheckConfig) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    for diag in diagnostics:
        override = config.overrides.get(diag.check_id)
        if override is None:
            out.append(diag)
            continue
        if not override.enabled:
            continue
        if override.severity is not None and override.severity != diag.severity.value:
            diag = replace(diag, severity=Severity(override.severity))
        out.append(diag)
    return out


def validate_level1(
    artifact: Artifact,
    config: CheckConfig | None = None,
    parse_diagnostics: list[Diagnostic] | None = None,
) -> ValidationReport:
    """Run the full Level-1 suite in fixed order and assemble the report.

    ``parse_diagnostics`` from the loader are merged in so a CLI run over a
    broken artifact fails for the parse defects too.
    """
    config = config or CheckConfig()
    diagnostics: list[Diagnostic] = []
    diagnostics.extend(parse_diagnostics or [])
    diagnostics.extend(check_ontology(artifact, config))
    diagnostics.extend(check_schemas(artifact))
    diagnostics.extend(check_counts(artifact, config))
    diagnostics.extend(check_references(artifact))
    diagnostics.extend(check_evidence_separation(artifact))
    diagnostics.extend(advisory_diagnostics(artifact, config))

    diagnostics = _apply_overrides(diagnostics, config)
    diagnostics.sort(key=Diagnostic.sort_key)

    counts: dict[str, int] = {}
    for diag in diagnostics:
        counts[diag.check_id] = counts.get(diag.check_id, 0) + 1

    passed = not any(d.severity is Severity.ERROR for d in diagnostics)
    return ValidationReport(
        passed=passed,
        diagnostics=diagnostics,
        counts=counts,
        config_fingerprint=config.fingerprint(),
    )


def apply_strict(report: ValidationReport) -> ValidationReport:
    """Escalate advisories to errors (for venues that gate on them)."""
    diagnostics = [
        replace(d, severity=Severity.ERROR) if d.severity is Severity.ADVISORY else d
        for d in report.diagnostics
    ]
    return ValidationReport(
        passed=not diagnostics,
        diagnostics=diagnostics,
        counts=dict(report.counts),
        config_fingerprint=report.config_fingerprint,
    )
