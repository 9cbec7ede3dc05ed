"""Mutation benchmark: seed known defects into Level-1-valid artifacts,
record the ground truth, and score externally produced audit findings.

Mutations are textual surgery on copies of the source files, so every
untouched file stays byte-identical and the diff is confined to the files
named in the manifest.  The manifest itself must be written outside the
mutated artifact root to keep the benchmark blind.
"""

from __future__ import annotations

import re
import shutil
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .model import (
    AraError,
    Finding,
    Injection,
    InjectionKind,
    InjectionManifest,
    NodeKind,
)
from .parse import _FIELD_RE, _HEADING_RE, _canon_label, load_artifact
from .seal import content_hash
from .validate import CheckConfig, validate_level1


class PreconditionUnmet(AraError):
    def __init__(self, kind: InjectionKind, reason: str):
        super().__init__(f"{kind.value}: {reason}")
        self.kind = kind


class SourceInvalid(AraError):
    pass


class ManifestMismatch(AraError):
    pass


FRESH_ID_FLOOR = 90

# Words stripped from a statement before universal-scope rewriting.
_HEDGES = (
    "in most cases",
    "in our experiments",
    "under our settings",
    "on average",
    "appears to",
    "appear to",
    "seems to",
    "seem to",
    "tends to",
    "tend to",
    "approximately",
    "typically",
    "generally",
    "sometimes",
    "usually",
    "roughly",
    "likely",
    "often",
    "could",
    "might",
    "may",
    "can",
)


def _strip_hedges(text: str) -> str:
    out = text
    for hedge in _HEDGES:
        out = re.sub(rf"(?i)(?<![A-Za-z]){re.escape(hedge)}(?![A-Za-z])", " ", out)
    return re.sub(r"\s+", " ", out).strip()


class _IdAllocator:
    """Fresh ids per namespace: smallest unused integer starting at 90.

    Allocated ids are reserved even when they are never written to disk,
    so a marker id minted for one defect cannot be materialized by a
    later one.
    """

    def __init__(self, existing: Iterable[str]):
        self.taken = set(existing)

    def fresh(self, prefix: str) -> str:
        n = FRESH_ID_FLOOR
        while f"{prefix}{n}" in self.taken:
            n += 1
        new_id = f"{prefix}{n}"
        self.taken.add(new_id)
        return new_id


# --- text surgery on entry files -------------------------------------------


def _block_span(lines: list[str], entry_id: str) -> tuple[int, int]:
    start = None
    for i, line in enumerate(lines):
        match = _HEADING_RE.match(line)
        if not match:
            continue
        if start is not None:
            return start, i
        if match.group("text").split(":", 1)[0].strip() == entry_id:
            start = i
    if start is None:
        raise LookupError(f"entry {entry_id} not found")
    return start, len(lines)


def _field_label(line: str) -> str | None:
    match = _FIELD_RE.match(line)
    if not match:
        return None
    return _canon_label(match.group("label") or match.group("label2") or "")


def _remove_field(text: str, entry_id: str, field_name: str) -> str:
    lines = text.split("\n")
    start, end = _block_span(lines, entry_id)
    out = lines[:start + 1]
    skipping = False
    for line in lines[start + 1 : end]:
        label = _field_label(line)
        if label is not None:
            skipping = label == field_name
        if not skipping:
            out.append(line)
    out.extend(lines[end:])
    return "\n".join(out)


def _replace_field(text: str, entry_id: str, field_name: str, new_value: str) -> str:
    lines = text.split("\n")
    start, end = _block_span(lines, entry_id)
    out = lines[:start + 1]
    skipping = False
    for line in lines[start + 1 : end]:
        label = _field_label(line)
        if label is not None:
            if label == field_name:
                skipping = True
                out.append(f"- **{field_name.replace('_', ' ').capitalize()}**: {new_value}")
                continue
            skipping = False
        if not skipping:
            out.append(line)
    out.extend(lines[end:])
    return "\n".join(out)


def _append_block(text: str, block: str) -> str:
    if text and not text.endswith("\n"):
        text += "\n"
    return text + "\n" + block.rstrip("\n") + "\n"


def _fabricated_claim_block(claim_id: str, missing_exp: str) -> str:
    return (
        f"## {claim_id}: Cross-run stability of the reported advantage\n"
        f"- **Statement**: The reported advantage persists when the full pipeline "
        f"is re-run end to end with a fresh environment and held-out seeds.\n"
        f"- **Status**: supported\n"
        f"- **Falsification criteria**: A matched-budget re-run erases the advantage "
        f"on the primary metric.\n"
        f"- **Proof**: [{missing_exp}]\n"
        f"- **Tags**: robustness, replication\n"
    )


def _orphan_experiment_block(exp_id: str, missing_claim: str) -> str:
    return (
        f"## {exp_id}: Held-out replication sweep\n"
        f"- **Verifies**: [{missing_claim}]\n"
        f"- **Setup**: Same environment as the primary runs, with a held-out seed set.\n"
        f"- **Procedure**:\n"
        f"    1. Re-run the primary configuration on the held-out seeds.\n"
        f"    2. Compare the primary metric against the recorded baseline direction.\n"
        f"- **Metrics**: primary task metric\n"
        f"- **Expected outcome**: The primary metric moves in the same direction as "
        f"in the recorded runs.\n"
    )


def _rebutted_claim_block(claim_id: str, hypothesis: str, proof_exp: str, node_id: str) -> str:
    statement = re.sub(r"\s+", " ", hypothesis).strip().rstrip(".")
    return (
        f"## {claim_id}: Revisited direction\n"
        f"- **Statement**: {statement}.\n"
        f"- **Status**: supported\n"
        f"- **Falsification criteria**: The documented comparison fails to show the "
        f"stated effect when repeated.\n"
        f"- **Proof**: [{proof_exp}]\n"
        f"- **Tags**: follow-up, {node_id}\n"
    )


@dataclass
class MutationResult:
    out_root: Path
    manifest: InjectionManifest


def inject_mutations(
    root: str | Path,
    kinds: Sequence[InjectionKind | str],
    seed: int,
    out_root: str | Path,
    config: CheckConfig | None = None,
) -> MutationResult:
    """Seed exactly one defect per requested kind into a copy of *root*.

    The source must pass Level 1; target selection is uniform over the
    eligible entities under the seeded generator, and the same
    (root, kinds, seed) triple always produces byte-identical output.
    """
    import random

    requested = {InjectionKind(k) for k in kinds}
    artifact, parse_diags = load_artifact(root)
    report = validate_level1(artifact, config, parse_diagnostics=parse_diags)
    if not report.passed:
        raise SourceInvalid(
            f"source artifact fails Level 1 with {len(report.errors())} errors; "
            "mutations are only seeded into valid artifacts"
        )

    dead_ends = [n for n in artifact.all_nodes() if n.kind is NodeKind.DEAD_END]
    if InjectionKind.REBUTTED_BRANCH_LEAK in requested and not dead_ends:
        raise PreconditionUnmet(InjectionKind.REBUTTED_BRANCH_LEAK, "no dead_end node to leak")
    claims_with_fals = [c for c in artifact.claims if c.falsification]
    if InjectionKind.MISSING_FALSIFICATION in requested and not claims_with_fals:
        raise PreconditionUnmet(
            InjectionKind.MISSING_FALSIFICATION, "no claim carries a falsification field"
        )
    claims_with_statement = [c for c in artifact.claims if c.statement]
    if InjectionKind.OVER_CLAIM in requested and not claims_with_statement:
        raise PreconditionUnmet(InjectionKind.OVER_CLAIM, "no claim carries a statement")
    if InjectionKind.REBUTTED_BRANCH_LEAK in requested and not artifact.experiments:
        raise PreconditionUnmet(
            InjectionKind.REBUTTED_BRANCH_LEAK, "no experiment available for the proof pointer"
        )

    source_hash = content_hash(root)
    out_path = Path(out_root)
    shutil.copytree(root, out_path)

    logic = artifact.layer_path("logic", "logic")
    claims_rel = f"{logic}/claims.md"
    experiments_rel = f"{logic}/experiments.md"
    texts: dict[str, str] = {}

    def load_text(rel: str) -> str:
        if rel not in texts:
            texts[rel] = (out_path / rel).read_text(encoding="utf-8")
        return texts[rel]

    rng = random.Random(seed)
    allocator = _IdAllocator(
        artifact.claim_ids() | artifact.experiment_ids() | artifact.node_ids()
        | {h.id for h in artifact.heuristics}
    )
    used_claims: set[str] = set()
    injections: list[Injection] = []

    for kind in InjectionKind:  # canonical order keeps the rng stream stable
        if kind not in requested:
            continue
        if kind is InjectionKind.FABRICATED_CLAIM:
            new_claim = allocator.fresh("C")
            missing_exp = allocator.fresh("E")
            texts[claims_rel] = _append_block(
                load_text(claims_rel), _fabricated_claim_block(new_claim, missing_exp)
            )
            injections.append(
                Injection(
                    injection_id=f"inj-{kind.value}",
                    kind=kind,
                    target_entity=new_claim,
                    unique_marker=missing_exp,
                    file=claims_rel,
                    description=f"claim {new_claim} cites experiment {missing_exp}, which does not exist",
                )
            )
        elif kind is InjectionKind.MISSING_FALSIFICATION:
            eligible = [c for c in claims_with_fals if c.id not in used_claims]
            if not eligible:
                raise PreconditionUnmet(kind, "every eligible claim is already targeted")
            target = rng.choice(eligible)
            used_claims.add(target.id)
            texts[claims_rel] = _remove_field(load_text(claims_rel), target.id, "falsification")
            injections.append(
                Injection(
                    injection_id=f"inj-{kind.value}",
                    kind=kind,
                    target_entity=target.id,
                    unique_marker=target.id,
                    file=claims_rel,
                    description=f"claim {target.id} lost its falsification criteria",
                )
            )
        elif kind is InjectionKind.ORPHAN_EXPERIMENT:
            new_exp = allocator.fresh("E")
            missing_claim = allocator.fresh("C")
            texts[experiments_rel] = _append_block(
                load_text(experiments_rel), _orphan_experiment_block(new_exp, missing_claim)
            )
            injections.append(
                Injection(
                    injection_id=f"inj-{kind.value}",
                    kind=kind,
                    target_entity=new_exp,
                    unique_marker=missing_claim,
                    file=experiments_rel,
                    description=f"experiment {new_exp} verifies claim {missing_claim}, which does not exist",
                )
            )
        elif kind is InjectionKind.OVER_CLAIM:
            eligible = [c for c in claims_with_statement if c.id not in used_claims]
            if not eligible:
                raise PreconditionUnmet(kind, "every eligible claim is already targeted")
            target = rng.choice(eligible)
            used_claims.add(target.id)
            broadened = f"For all settings and all inputs, {_strip_hedges(target.statement or '')}"
            texts[claims_rel] = _replace_field(
                load_text(claims_rel), target.id, "statement", broadened
            )
            injections.append(
                Injection(
                    injection_id=f"inj-{kind.value}",
                    kind=kind,
                    target_entity=target.id,
                    unique_marker=target.id,
                    file=claims_rel,
                    description=f"claim {target.id} rewritten to universal scope",
                )
            )
        elif kind is InjectionKind.REBUTTED_BRANCH_LEAK:
            node = rng.choice(dead_ends)
            proof_exp = rng.choice([e.id for e in artifact.experiments])
            new_claim = allocator.fresh("C")
            hypothesis = str(node.payload.get("hypothesis", "")) or node.title
            texts[claims_rel] = _append_block(
                load_text(claims_rel),
                _rebutted_claim_block(new_claim, hypothesis, proof_exp, node.id),
            )
            injections.append(
                Injection(
                    injection_id=f"inj-{kind.value}",
                    kind=kind,
                    target_entity=new_claim,
                    unique_marker=node.id,
                    file=claims_rel,
                    description=(
                        f"claim {new_claim} advocates the approach the exploration tree "
                        f"marks dead_end at {node.id}"
                    ),
                )
            )

    for rel, text in texts.items():
        (out_path / rel).write_text(text, encoding="utf-8")

    manifest = InjectionManifest(
        source_content_hash=source_hash,
        mutated_content_hash=content_hash(out_path),
        injections=injections,
    )
    return MutationResult(out_root=out_path, manifest=manifest)


# --- finding/manifest matching ----------------------------------------------


def _contains_token(text: str, marker: str) -> bool:
    """Whole-token containment: the marker delimited by non-alphanumerics."""
    if not marker:
        return False
    return re.search(rf"(?<![A-Za-z0-9]){re.escape(marker)}(?![A-Za-z0-9])", text) is not None


@dataclass
class KindDetection:
    attempted: int = 0
    hit: int = 0

    @property
    def rate_percent(self) -> float:
        return round(100.0 * self.hit / self.attempted, 1) if self.attempted else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {"attempted": self.attempted, "hit": self.hit, "rate_percent": self.rate_percent}


@dataclass
class DetectionReport:
    per_kind: dict[str, KindDetection] = field(default_factory=dict)
    matches: dict[str, str] = field(default_factory=dict)  # injection_id -> finding_id

    @property
    def attempted(self) -> int:
        return sum(k.attempted for k in self.per_kind.values())

    @property
    def hits(self) -> int:
        return sum(k.hit for k in self.per_kind.values())

    @property
    def rate_percent(self) -> float:
        return round(100.0 * self.hits / self.attempted, 1) if self.attempted else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "per_kind": {k: v.to_dict() for k, v in sorted(self.per_kind.items())},
            "matches": dict(sorted(self.matches.items())),
            "attempted": self.attempted,
            "hits": self.hits,
            "rate_percent": self.rate_percent,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DetectionReport":
        report = cls(matches=dict(data.get("matches", {})))
        for kind, counts in data.get("per_kind", {}).items():
            report.per_kind[str(kind)] = KindDetection(
                attempted=int(counts["attempted"]), hit=int(counts["hit"])
            )
        return report


def match_findings(
    manifest: InjectionManifest,
    findings: Sequence[Finding],
    findings_content_hash: str | None = None,
) -> DetectionReport:
    """Score findings against the ground-truth manifest.

    An injection is hit when a finding names its target entity (rule a)
    or quotes its unique marker as a literal token (rule b); matching is
    greedy in finding order, one-to-one, rule (a) before rule (b), and
    severity/dimension are ignored for hit counting.
    """
    if (
        findings_content_hash is not None
        and findings_content_hash != manifest.mutated_content_hash
    ):
        raise ManifestMismatch(
            "findings were produced for a different artifact (content hash disagrees)"
        )

    unmatched = list(manifest.injections)
    matches: dict[str, str] = {}
    for finding in findings:
        hit = None
        if finding.target_entity:
            hit = next(
                (inj for inj in unmatched if inj.target_entity == finding.target_entity), None
            )
        if hit is None:
            hit = next(
                (inj for inj in unmatched if _contains_token(finding.observation, inj.unique_marker)),
                None,
            )
        if hit is not None:
            unmatched.remove(hit)
            matches[hit.injection_id] = finding.finding_id

    report = DetectionReport(matches=matches)
    hit_ids = set(matches)
    for injection in manifest.injections:
        entry = report.per_kind.setdefault(injection.kind.value, KindDetection())
        entry.attempted += 1
        if injection.injection_id in hit_ids:
            entry.hit += 1
    return report


def aggregate_detection(reports: Sequence[DetectionReport]) -> DetectionReport:
    """Per-kind sums across reports; overall rate to one decimal percent."""
    summary = DetectionReport()
    for report in reports:
        for kind, counts in report.per_kind.items():
            entry = summary.per_kind.setdefault(kind, KindDetection())
            entry.attempted += counts.attempted
            entry.hit += counts.hit
    return summary
