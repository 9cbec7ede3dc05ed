"""Terminal and CI entry point.

Exit codes: 0 success/pass, 1 check failed / verification not valid /
precondition unmet, 2 usage or I/O error.  In JSON mode exactly one JSON
document goes to stdout; all logging goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

import yaml

from .graph import CycleError, UnknownEntity, build_reference_graph, check_acyclic, list_dead_ends, proof_chain
from .model import (
    AraError,
    CertStatus,
    Finding,
    ModelError,
    InjectionManifest,
    PerClaimOutcome,
    SealCertificate,
    SubtaskScore,
)
from .mutate import (
    DetectionReport,
    ManifestMismatch,
    PreconditionUnmet,
    SourceInvalid,
    aggregate_detection,
    inject_mutations,
    match_findings,
)
from .parse import RootNotFound, load_artifact
from .seal import (
    CannotIssue,
    EmptyInput,
    GradeReport,
    InvalidLevel,
    InvalidScore,
    IoFailure,
    ScoreOutOfRange,
    WrongArity,
    derive_grade,
    issue_certificate,
    verify_certificate,
    weighted_success_rate,
)
from .validate import CheckConfig, apply_strict, validate_level1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_PRECONDITION_ERRORS = (
    CannotIssue,
    CycleError,
    EmptyInput,
    InvalidLevel,
    InvalidScore,
    ManifestMismatch,
    PreconditionUnmet,
    ScoreOutOfRange,
    SourceInvalid,
    UnknownEntity,
    WrongArity,
)


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _emit(args: argparse.Namespace, payload: Any, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _load_config(args: argparse.Namespace) -> CheckConfig:
    path = args.config or os.environ.get("ARA_CONFIG")
    if not path:
        return CheckConfig()
    with open(path, encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must contain a mapping")
    return CheckConfig.from_mapping(data)


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _parse_findings(raw: Any) -> tuple[list[Finding], str | None]:
    """Accept a bare findings list or a {content_hash, findings} wrapper."""
    content_hash = None
    if isinstance(raw, dict):
        content_hash = raw.get("content_hash")
        raw = raw.get("findings", [])
    if not isinstance(raw, list):
        raise ModelError("findings document must be a JSON list")
    return [Finding.from_dict(item) for item in raw], content_hash


# --- subcommand implementations ---------------------------------------------


def _cmd_validate(args: argparse.Namespace) -> int:
    config = _load_config(args)
    artifact, parse_diags = load_artifact(args.root)
    report = validate_level1(artifact, config, parse_diagnostics=parse_diags)
    if args.strict:
        report = apply_strict(report)
    errors = report.errors()
    advisories = report.advisories()
    lines = []
    if report.passed:
        lines.append(f"PASS ({len(errors)} errors, {len(advisories)} advisories)")
    else:
        lines.append(f"FAIL ({len(errors)} errors, {len(advisories)} advisories)")
    for diag in report.diagnostics:
        entity = f" {diag.entity}" if diag.entity else ""
        lines.append(
            f"{diag.severity.value:<8} {diag.check_id:<28} {diag.file}{entity}: {diag.message}"
        )
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_seal_issue(args: argparse.Namespace) -> int:
    config = _load_config(args)
    artifact, parse_diags = load_artifact(args.root)
    report = validate_level1(artifact, config, parse_diagnostics=parse_diags)
    if args.strict:
        report = apply_strict(report)
    outcomes = []
    if args.outcomes:
        outcomes = [
            PerClaimOutcome(str(item["claim_id"]), item["outcome"])
            for item in _read_json(args.outcomes)
        ]
    grade = GradeReport.from_dict(_read_json(args.grade)) if args.grade else None
    cert = issue_certificate(
        artifact,
        report,
        level=args.level,
        per_claim_outcomes=outcomes,
        env_descriptor=args.env,
        grade=grade,
    )
    out_path = Path(args.out) if args.out else Path(args.root).resolve().parent / "seal_certificate.json"
    out_path.write_text(cert.to_json() + "\n", encoding="utf-8")
    _log(f"certificate written to {out_path}")
    _emit(args, cert.to_dict(), [f"issued level-{cert.level} certificate {cert.self_digest[:16]}…"])
    return EXIT_OK


def _cmd_seal_verify(args: argparse.Namespace) -> int:
    cert = SealCertificate.from_dict(_read_json(args.cert))
    status = verify_certificate(args.root, cert)
    _emit(args, {"status": status.value}, [status.value])
    return EXIT_OK if status is CertStatus.VALID else EXIT_FAIL


def _cmd_mutate(args: argparse.Namespace) -> int:
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    mutated_root = out_dir / "artifact"
    if mutated_root.exists():
        _log(f"refusing to overwrite existing {mutated_root}")
        return EXIT_USAGE
    result = inject_mutations(args.root, kinds, seed=args.seed, out_root=mutated_root)
    manifest_path = out_dir / "injection_manifest.json"
    manifest_path.write_text(result.manifest.to_json() + "\n", encoding="utf-8")
    _log(f"mutated artifact at {mutated_root}, manifest at {manifest_path}")
    lines = [f"{inj.kind.value}: target {inj.target_entity} in {inj.file}" for inj in result.manifest.injections]
    _emit(args, result.manifest.to_dict(), lines)
    return EXIT_OK


def _cmd_match(args: argparse.Namespace) -> int:
    manifest = InjectionManifest.from_dict(_read_json(args.manifest))
    findings, content_hash = _parse_findings(_read_json(args.findings))
    report = match_findings(manifest, findings, findings_content_hash=content_hash)
    lines = [f"{report.hits}/{report.attempted} injections detected ({report.rate_percent}%)"]
    for kind, counts in sorted(report.per_kind.items()):
        lines.append(f"  {kind}: {counts.hit}/{counts.attempted}")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK


def _cmd_detect_summary(args: argparse.Namespace) -> int:
    reports = [DetectionReport.from_dict(_read_json(path)) for path in args.reports]
    summary = aggregate_detection(reports)
    lines = [f"overall: {summary.hits}/{summary.attempted} ({summary.rate_percent}%)"]
    for kind, counts in sorted(summary.per_kind.items()):
        lines.append(f"  {kind}: {counts.hit}/{counts.attempted} ({counts.rate_percent}%)")
    _emit(args, summary.to_dict(), lines)
    return EXIT_OK


def _cmd_graph_trace(args: argparse.Namespace) -> int:
    artifact, _ = load_artifact(args.root)
    graph = build_reference_graph(artifact)
    paths = proof_chain(graph, args.claim_id)
    payload = [{"nodes": list(p.nodes), "resolved": p.resolved} for p in paths]
    lines = []
    for path in paths:
        suffix = "" if path.resolved else "  [unresolved]"
        lines.append(" -> ".join(path.nodes) + suffix)
    if not lines:
        lines = [f"{args.claim_id} has no proof pointers"]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_graph_dead_ends(args: argparse.Namespace) -> int:
    artifact, _ = load_artifact(args.root)
    entries = list_dead_ends(artifact)
    payload = [
        {"id": node_id, "hypothesis": hyp, "failure_mode": mode, "lesson": lesson}
        for node_id, hyp, mode, lesson in entries
    ]
    lines = [f"{e['id']}: {e['hypothesis']}" for e in payload] or ["no dead ends recorded"]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_graph_check_dag(args: argparse.Namespace) -> int:
    artifact, _ = load_artifact(args.root)
    try:
        check_acyclic(artifact.tree)
    except CycleError as exc:
        _emit(args, {"acyclic": False, "cycle": exc.cycle}, [f"cycle: {' -> '.join(exc.cycle)}"])
        return EXIT_FAIL
    _emit(args, {"acyclic": True, "cycle": None}, ["ok"])
    return EXIT_OK


def _cmd_score_weighted(args: argparse.Namespace) -> int:
    raw = _read_json(args.scores)
    if not isinstance(raw, list):
        raise ModelError("scores document must be a JSON list")
    subtasks = [
        SubtaskScore(
            difficulty=item["difficulty"],
            score=float(item["score"]),
            max_score=float(item.get("max", item.get("max_score", 0))),
        )
        for item in raw
    ]
    rate = weighted_success_rate(subtasks)
    _emit(args, {"weighted_success_rate": rate}, [f"{rate:.4f}"])
    return EXIT_OK


def _cmd_grade(args: argparse.Namespace) -> int:
    raw_scores = _read_json(args.scores)
    if isinstance(raw_scores, dict):
        scores = [float(raw_scores[d]) for d in ("D1", "D2", "D3", "D4", "D5", "D6")]
    elif isinstance(raw_scores, list):
        scores = [float(v) for v in raw_scores]
    else:
        raise ModelError("scores document must be a list of six values or a D1..D6 map")
    findings, _ = _parse_findings(_read_json(args.findings))
    report = derive_grade(scores, findings)
    lines = [f"grade: {report.grade.value} (mean {report.mean_score:.2f})"]
    for dim, severity, cap in report.floors_applied:
        lines.append(f"  {dim} floored to {cap} by a {severity} finding")
    if report.critical_cap_applied:
        lines.append("  grade capped at revise by a critical finding")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK


# --- parser wiring -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format (default text)"
    )
    common.add_argument("--config", help="YAML check-policy file (or set ARA_CONFIG)")
    common.add_argument(
        "--strict", action="store_true", help="treat advisory diagnostics as errors"
    )

    parser = argparse.ArgumentParser(
        prog="ara", description="ARA artifact validation, sealing, and benchmark tooling"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="run the Level-1 structural suite")
    p.add_argument("root")
    p.set_defaults(func=_cmd_validate)

    seal = sub.add_parser("seal", help="issue or verify seal certificates")
    seal_sub = seal.add_subparsers(dest="seal_command", required=True)
    p = seal_sub.add_parser("issue", parents=[common])
    p.add_argument("root")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--env", default="", help="environment descriptor to hash into the certificate")
    p.add_argument("--out", help="certificate path (default: seal_certificate.json beside the root)")
    p.add_argument("--grade", help="grade-report JSON (required for level 2)")
    p.add_argument("--outcomes", help="per-claim outcome JSON list (required for level 3)")
    p.set_defaults(func=_cmd_seal_issue)
    p = seal_sub.add_parser("verify", parents=[common])
    p.add_argument("root")
    p.add_argument("cert")
    p.set_defaults(func=_cmd_seal_verify)

    p = sub.add_parser("mutate", parents=[common], help="seed benchmark defects into a valid artifact")
    p.add_argument("root")
    p.add_argument("--kinds", required=True, help="comma-separated injection kinds")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory (artifact/ plus manifest)")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("match", parents=[common], help="score findings against an injection manifest")
    p.add_argument("manifest")
    p.add_argument("findings")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("detect-summary", parents=[common], help="aggregate detection reports")
    p.add_argument("reports", nargs="+")
    p.set_defaults(func=_cmd_detect_summary)

    graph = sub.add_parser("graph", help="reference-graph queries")
    graph_sub = graph.add_subparsers(dest="graph_command", required=True)
    p = graph_sub.add_parser("trace", parents=[common])
    p.add_argument("root")
    p.add_argument("claim_id")
    p.set_defaults(func=_cmd_graph_trace)
    p = graph_sub.add_parser("dead-ends", parents=[common])
    p.add_argument("root")
    p.set_defaults(func=_cmd_graph_dead_ends)
    p = graph_sub.add_parser("check-dag", parents=[common])
    p.add_argument("root")
    p.set_defaults(func=_cmd_graph_check_dag)

    score = sub.add_parser("score", help="scoring formulas")
    score_sub = score.add_subparsers(dest="score_command", required=True)
    p = score_sub.add_parser("weighted", parents=[common])
    p.add_argument("scores")
    p.set_defaults(func=_cmd_score_weighted)

    p = sub.add_parser("grade", parents=[common], help="derive a grade from scores and findings")
    p.add_argument("scores")
    p.add_argument("findings")
    p.set_defaults(func=_cmd_grade)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PRECONDITION_ERRORS as exc:
        _log(f"error: {exc}")
        return EXIT_FAIL
    except (RootNotFound, IoFailure, ModelError, OSError, json.JSONDecodeError, yaml.YAMLError, ValueError, KeyError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except AraError as exc:
        _log(f"error: {exc}")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
