"""Tooling for Agent-Native Research Artifact (ARA) directories: parsing,
Seal Level-1 structural validation, certificate issuance, the five-kind
mutation benchmark, and the deterministic scoring formulas."""

from .graph import (
    CycleError,
    ProofPath,
    ReferenceGraph,
    UnknownEntity,
    build_reference_graph,
    check_acyclic,
    export_dot,
    find_cycle,
    list_dead_ends,
    proof_chain,
)
from .model import (
    AraError,
    Artifact,
    CertStatus,
    Claim,
    ClaimOutcome,
    ClaimStatus,
    Diagnostic,
    DiagnosticCategory,
    Difficulty,
    Dimension,
    EventType,
    Experiment,
    ExplorationNode,
    Finding,
    FindingSeverity,
    GenericEntry,
    Grade,
    Heuristic,
    Injection,
    InjectionKind,
    InjectionManifest,
    Manifest,
    ModelError,
    NodeKind,
    PerClaimOutcome,
    Provenance,
    SealCertificate,
    Sensitivity,
    SessionEvent,
    SessionRecord,
    Severity,
    SrcMode,
    SubtaskScore,
)
from .mutate import (
    DetectionReport,
    KindDetection,
    ManifestMismatch,
    MutationResult,
    PreconditionUnmet,
    SourceInvalid,
    aggregate_detection,
    inject_mutations,
    match_findings,
)
from .parse import (
    MalformedFrontmatter,
    MalformedTree,
    MissingFrontmatter,
    ParseError,
    RootNotFound,
    UnknownNodeType,
    load_artifact,
    parse_exploration_tree,
    parse_manifest,
    parse_session,
    parse_structured_entries,
)
from .seal import (
    CannotIssue,
    EmptyInput,
    GradeReport,
    InvalidLevel,
    InvalidScore,
    IoFailure,
    ScoreOutOfRange,
    WrongArity,
    content_hash,
    derive_grade,
    issue_certificate,
    verify_certificate,
    weighted_success_rate,
)
from .validate import (
    CheckConfig,
    CheckOverride,
    ValidationReport,
    advisory_diagnostics,
    apply_strict,
    check_counts,
    check_evidence_separation,
    check_ontology,
    check_references,
    check_schemas,
    validate_level1,
)

__version__ = "0.1.0"
