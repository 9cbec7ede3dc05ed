"""Content hashing, Seal certificate issuance/verification, and the
deterministic scoring formulas (difficulty-weighted success rate, grade
derivation from findings)."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

from .model import (
    AraError,
    Artifact,
    CertStatus,
    Difficulty,
    Dimension,
    Finding,
    FindingSeverity,
    Grade,
    PerClaimOutcome,
    SealCertificate,
    SubtaskScore,
    canonical_json,
    sha256_text,
)
from .validate import ValidationReport

TOOL_VERSION = "ara-kit 0.1.0"


class IoFailure(AraError):
    pass


class CannotIssue(AraError):
    pass


class InvalidLevel(AraError):
    pass


class EmptyInput(AraError):
    pass


class InvalidScore(AraError):
    pass


class WrongArity(AraError):
    pass


class ScoreOutOfRange(AraError):
    pass


def content_hash(root: str | Path) -> str:
    """SHA-256 over the canonical file stream of *root*.

    For each file in lexicographically sorted relative-path order the
    stream carries the path bytes, a zero byte, the file's SHA-256 digest,
    and a zero byte — independent of enumeration order and timestamps.
    """
    root_path = Path(root)
    stream = hashlib.sha256()
    files = sorted(
        p.relative_to(root_path).as_posix() for p in root_path.rglob("*") if p.is_file()
    )
    for rel in files:
        try:
            digest = hashlib.sha256((root_path / rel).read_bytes()).digest()
        except OSError as exc:
            raise IoFailure(f"cannot read {rel}: {exc}") from exc
        stream.update(rel.encode("utf-8"))
        stream.update(b"\0")
        stream.update(digest)
        stream.update(b"\0")
    return stream.hexdigest()


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def issue_certificate(
    artifact: Artifact,
    report: ValidationReport,
    level: int,
    per_claim_outcomes: Sequence[PerClaimOutcome] = (),
    env_descriptor: str = "",
    grade: "GradeReport | None" = None,
    previous_digest: str | None = None,
    timestamp: str | None = None,
) -> SealCertificate:
    """Issue a Seal certificate for a verification outcome.

    Level 1 requires a passing structural report; level 2 additionally
    requires the grade report, level 3 the per-claim outcome list.  The
    self digest is computed last, over the canonical serialization with
    the digest field blanked.
    """
    if level not in (1, 2, 3):
        raise InvalidLevel(f"level must be 1, 2, or 3, not {level!r}")
    if not report.passed:
        raise CannotIssue("structural validation failed; nothing to certify")
    if level == 2 and grade is None:
        raise CannotIssue("level 2 certification requires a grade report")
    if level == 3 and not per_claim_outcomes:
        raise CannotIssue("level 3 certification requires per-claim outcomes")

    artifact_id = ""
    if artifact.manifest is not None and artifact.manifest.title.strip():
        artifact_id = artifact.manifest.title.strip()
    if not artifact_id:
        artifact_id = Path(artifact.root).name

    cert = SealCertificate(
        artifact_id=artifact_id,
        level=level,
        timestamp=timestamp if timestamp is not None else _utc_now(),
        environment_hash=sha256_text(env_descriptor),
        content_hash=content_hash(artifact.root),
        per_claim_outcomes=list(per_claim_outcomes),
        tool_version=TOOL_VERSION,
        previous_digest=previous_digest,
    )
    cert.self_digest = cert.compute_self_digest()
    return cert


def verify_certificate(root: str | Path, cert: SealCertificate) -> CertStatus:
    """tampered when the self digest fails, stale when the content moved on."""
    if cert.self_digest != cert.compute_self_digest():
        return CertStatus.TAMPERED
    if content_hash(root) != cert.content_hash:
        return CertStatus.STALE
    return CertStatus.VALID


DIFFICULTY_WEIGHTS = {Difficulty.EASY: 1, Difficulty.MEDIUM: 2, Difficulty.HARD: 3}


def weighted_success_rate(subtasks: Sequence[SubtaskScore]) -> float:
    """Difficulty-weighted success rate: sum(s_i * w_i) / sum(m_i * w_i),
    with weights 1:2:3 over easy/medium/hard subtasks."""
    if not subtasks:
        raise EmptyInput("no subtask scores given")
    num = 0.0
    den = 0.0
    for task in subtasks:
        if task.max_score <= 0:
            raise InvalidScore(f"max must be positive, got {task.max_score}")
        if task.score < 0 or task.score > task.max_score:
            raise InvalidScore(f"score {task.score} outside [0, {task.max_score}]")
        weight = DIFFICULTY_WEIGHTS[task.difficulty]
        num += task.score * weight
        den += task.max_score * weight
    return num / den


# Worst-severity cap applied to a dimension's score; suggestions never cap.
SEVERITY_CAPS = {
    FindingSeverity.CRITICAL: 1.0,
    FindingSeverity.MAJOR: 2.0,
    FindingSeverity.MINOR: 4.0,
}

ACCEPT_THRESHOLD = 4.0
REVISE_THRESHOLD = 3.0

DIMENSIONS = tuple(Dimension)


@dataclass
class GradeReport:
    dimension_scores: dict[str, float]
    effective_scores: dict[str, float]
    floors_applied: list[tuple[str, str, float]]  # (dimension, severity, cap)
    mean_score: float
    grade: Grade
    critical_cap_applied: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "dimension_scores": dict(self.dimension_scores),
            "effective_scores": dict(self.effective_scores),
            "floors_applied": [list(f) for f in self.floors_applied],
            "mean_score": self.mean_score,
            "grade": self.grade.value,
            "critical_cap_applied": self.critical_cap_applied,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GradeReport":
        return cls(
            dimension_scores={str(k): float(v) for k, v in data["dimension_scores"].items()},
            effective_scores={str(k): float(v) for k, v in data["effective_scores"].items()},
            floors_applied=[(str(d), str(s), float(c)) for d, s, c in data["floors_applied"]],
            mean_score=float(data["mean_score"]),
            grade=Grade(data["grade"]),
            critical_cap_applied=bool(data["critical_cap_applied"]),
        )


def derive_grade(dimension_scores: Sequence[float], findings: Iterable[Finding]) -> GradeReport:
    """Deterministic grade from six dimension scores and a findings list.

    Each dimension's effective score is capped by its worst finding
    severity (critical -> 1, major -> 2, minor -> 4); the grade comes from
    the mean of effective scores (>= 4.0 accept, >= 3.0 revise, else
    reject), and any critical finding caps the grade at revise.
    """
    scores = list(dimension_scores)
    if len(scores) != len(DIMENSIONS):
        raise WrongArity(f"expected {len(DIMENSIONS)} dimension scores, got {len(scores)}")
    for value in scores:
        if not 1.0 <= float(value) <= 5.0:
            raise ScoreOutOfRange(f"dimension score {value} outside [1, 5]")

    findings = list(findings)
    worst_cap: dict[Dimension, tuple[float, FindingSeverity]] = {}
    for finding in findings:
        cap = SEVERITY_CAPS.get(finding.severity)
        if cap is None:
            continue
        current = worst_cap.get(finding.dimension)
        if current is None or cap < current[0]:
            worst_cap[finding.dimension] = (cap, finding.severity)

    reported = {dim.value: float(score) for dim, score in zip(DIMENSIONS, scores)}
    effective = dict(reported)
    floors: list[tuple[str, str, float]] = []
    for dim, (cap, severity) in sorted(worst_cap.items(), key=lambda kv: kv[0].value):
        if effective[dim.value] > cap:
            effective[dim.value] = cap
            floors.append((dim.value, severity.value, cap))

    mean_score = sum(effective.values()) / len(DIMENSIONS)
    if mean_score >= ACCEPT_THRESHOLD:
        grade = Grade.ACCEPT
    elif mean_score >= REVISE_THRESHOLD:
        grade = Grade.REVISE
    else:
        grade = Grade.REJECT

    critical_cap_applied = False
    if grade is Grade.ACCEPT and any(
        f.severity is FindingSeverity.CRITICAL for f in findings
    ):
        grade = Grade.REVISE
        critical_cap_applied = True

    return GradeReport(
        dimension_scores=reported,
        effective_scores=effective,
        floors_applied=floors,
        mean_score=mean_score,
        grade=grade,
        critical_cap_applied=critical_cap_applied,
    )
