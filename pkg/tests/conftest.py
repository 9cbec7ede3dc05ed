"""Shared fixture builders: a hand-written golden artifact and a
deterministic generator for corpora of Level-1-valid artifacts."""

from __future__ import annotations

from pathlib import Path

import pytest

GOLDEN_PAPER_MD = """\
---
title: "Agent-Native Research Artifacts"
authors: ["R. Alvarez", "S. Okafor"]
venue: "Synthetic Venue 2026"
status: draft
ara_schema: "1.0"
date_created: "2026-03-12"
last_updated: "2026-04-27"
abstract: >
  A file-system protocol that packages a research contribution as four
  interlocking layers: structured reasoning, an executable kernel, the
  branching exploration record, and raw evidence, bound together by
  cross-layer references that make every claim traceable to its support.
layers:
  logic: logic/
  src: src/
  trace: trace/
  evidence: evidence/
  staging: staging/
---

# Layer Index

- **Cognitive** (`logic/`): structured reasoning
  - `problem.md` -- observations, gaps, key insight
  - `claims.md` -- falsifiable claims with status and proof pointers
  - `experiments.md` -- verification plan
  - `concepts.md` -- formal concept definitions
  - `related_work.md` -- typed citation dependencies
  - `solution/heuristics.md` -- design decisions with sensitivity
- **Physical** (`src/`): executable kernel
  - `kernel/compiler_notes.md` -- core algorithm notes
- **Exploration** (`trace/`): branching trajectory
  - `exploration_tree.yaml` -- decision DAG with dead ends
  - `sessions/` -- session logs
- **Evidence** (`evidence/`): raw empirical results
  - `README.md` -- index of all evaluation data
- **Staging** (`staging/`): unpromoted observations
  - `observations.yaml` -- preliminary observations
"""

GOLDEN_CLAIMS_MD = """\
# Claims

## C03: Layered structure is recoverable from legacy sources
- **Statement**: A compilation pass over a legacy source bundle recovers
    the four-layer structure with its cross-layer bindings intact.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: Compiled artifacts drop bindings that the
    source bundle states explicitly.
- **Proof**: [E01]
- **Tags**: compiler, structure

## C04: Universal Ingestor produces lossless transformations
- **Statement**: The compiler transforms source documents into artifact
    form without information loss, reaching near-parity on factual recall
    between the artifact and its source.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: Systematic recall drop on questions whose
    answers are present in the source document.
- **Proof**: [evidence/README.md -> understanding_eval; 450 Qs across Cat A/B/C]
- **Dependencies**: [C03]
- **Tags**: ingestor, fidelity

## C05: Structured artifacts outperform flat baselines on reproduction
- **Statement**: An agent reproducing experiments from the artifact
    completes more graded requirements than one reading the flat bundle.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: Paired reproduction runs show no advantage
    for the artifact condition.
- **Proof**: [E02]
- **Tags**: reproduction

## C06: Negative knowledge is the highest-value signal
- **Statement**: Dead-end documentation in the exploration graph produces
    the largest recall gap in the evaluation; agents with failure traces
    answer questions about failed approaches that flat formats make
    structurally unanswerable.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: Dead-end documentation produces no
    measurable improvement on failure-knowledge questions.
- **Proof**: [evidence/README.md -> understanding_eval Cat C; evidence/README.md -> extension_eval]
- **Dependencies**: [C05]
- **Tags**: exploration-graph, negative-knowledge

## C13: Failed exploration dominates recorded cost
- **Statement**: Failed runs account for the bulk of recorded spend in the
    audited run corpus.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: A re-audit attributes most spend to
    successful runs.
- **Proof**: [E03]
- **Tags**: exploration-cost

## C14: Dead ends are independently rediscovered
- **Statement**: Without shared failure records, successive runs re-derive
    the same dead ends at full cost.
- **Status**: supported
- **Provenance**: ai-executed
- **Falsification criteria**: Runs without failure records avoid
    previously recorded dead ends at better than chance rates.
- **Proof**: [E03]
- **Tags**: exploration-cost, negative-knowledge
"""

GOLDEN_EXPERIMENTS_MD = """\
# Experiments

## E01: Compilation fidelity probe
- **Verifies**: [C03, C04]
- **Setup**: Twenty legacy bundles with paired question banks.
- **Procedure**:
    1. Compile each bundle into artifact form.
    2. Answer the paired question bank from the artifact alone.
    3. Compare recall against answering from the original bundle.
- **Metrics**: factual recall, token cost
- **Expected outcome**: Artifact-based answering matches source-based
    answering on questions the source can answer.
- **Evidence**: [evidence/results/fidelity.md]

## E02: Reproduction comparison
- **Verifies**: [C05]
- **Setup**: Paired reproduction runs per target with a shared grading
    rubric and matched budgets.
- **Procedure**:
    1. Run the artifact condition and the flat-bundle condition.
    2. Grade both runs against the shared rubric.
- **Metrics**: graded requirement completion
- **Expected outcome**: The artifact condition completes more graded
    requirements than the flat-bundle condition.
- **Evidence**: [evidence/results/reproduction.md]

## E03: Exploration cost audit
- **Verifies**: [C06, C13, C14]
- **Setup**: The full recorded run corpus with per-run cost accounting.
- **Procedure**:
    1. Classify each run as successful or failed.
    2. Attribute tokens and spend per class.
    3. Trace repeated failure signatures across runs.
- **Metrics**: cost share by class, repeat-failure rate
- **Expected outcome**: Failed exploration carries the dominant cost share
    and repeats across runs without shared records.
- **Evidence**: [evidence/results/exploration.md]
"""

GOLDEN_HEURISTICS_MD = """\
# Heuristics

## H04: Directional verification over exact matching
- **Rationale**: Legacy sources routinely omit details needed for exact
    reproduction; verifying directional properties still confirms the
    core mechanism without requiring exact numerical matches.
- **Provenance**: user
- **Sensitivity**: medium
- **Bounds**: Applies to claims with a stated comparison direction; exact
    metric recovery additionally needs the pinned environment.
- **Code ref**: [paper/sections/protocol.tex]

## H12: Minimal kernel keeps algorithm notes with inline snippets
- **Rationale**: Full code dumps dilute agent context; algorithm notes
    with key snippets inline carry the contribution at a fraction of the
    tokens.
- **Provenance**: user-revised
- **Sensitivity**: high
- **Bounds**: Holds for kernel-mode artifacts; repository-mode artifacts
    keep the full implementation under an index.
- **Code ref**: [code/artifacts/rebench-*/src/kernel/official_solution_notes.md]
"""

GOLDEN_CONCEPTS_MD = """\
# Concepts

## Forensic Binding
- **Definition**: A cross-layer reference tying a claim to the experiments,
    evidence, and code that support it.

## Progressive Disclosure
- **Definition**: Agents load only the layers and files relevant to the
    current task instead of the whole artifact.

## Exploration Graph
- **Definition**: The branching record of questions, decisions,
    experiments, dead ends, and pivots produced during the work.

## Evidence Separation
- **Definition**: Verification plans state directions; exact values live
    only in the evidence layer.

## Kernel Mode
- **Definition**: The physical layer keeps only core modules with typed
    signatures, letting an agent regenerate scaffolding on demand.
"""

GOLDEN_RELATED_WORK_MD = """\
# Related Work

## R01: Metadata interchange principles
- **Type**: imports
- **Role**: Vocabulary imported for the manifest header fields.

## R02: Workflow execution engines
- **Type**: bounds
- **Role**: Constrain the execution model replication plans may assume.

## R03: Flat bundle distribution
- **Type**: baseline
- **Role**: The conventional artifact the evaluation compares against.
"""

GOLDEN_TREE_YAML = """\
tree:
  - id: N01
    type: question
    title: "Can a structured artifact replace the flat bundle for agent use?"
    children:
      - id: N04
        type: decision
        title: "Tripartite layer architecture"
        provenance: user
        timestamp: "2026-03-09"
        choice: >
          Three orthogonal layers plus evidence: cognitive, physical,
          exploration.
        alternatives:
          - "Two-layer (logic and code only)"
          - "Four-layer (separate evidence at top)"
          - "Flat structured document (single file)"
        evidence: >
          Layer separation preserves the dimensions a flat document
          conflates.
      - id: N05
        type: pivot
        title: "Shift evaluation from synthetic probes to expert rubrics"
        trigger: "Synthetic probes saturated early"
        rationale: "Expert rubrics carry reproduction-critical detail"
        also_depends_on: [N04]
      - id: N50
        type: dead_end
        title: "Trimming source alone does not recover failure-knowledge recall"
        provenance: ai-suggested
        timestamp: "2026-03-14"
        hypothesis: >
          Removing boilerplate from the physical layer would lift
          failure-knowledge recall back to target.
        failure_mode: >
          Recall stayed flat while artifact size dropped sharply; the
          remaining additions still dilute the trace content.
        lesson: >
          Failure-knowledge recall is more sensitive to context dilution
          than expected; even small structured additions can push it
          below the retrieval threshold.
  - id: N02
    type: question
    title: "Which sources close the configuration gap?"
    children:
      - id: N20
        type: decision
        title: "Adopt expert rubrics as a first-class source"
        choice: "Route rubric requirements into the verification plan."
        alternatives:
          - "Mine companion repositories only"
        evidence: "Rubrics encode requirements the source text omits."
      - id: N18
        type: experiment
        title: "Rubric coverage probe"
        result: >
          Rubric-sourced entries covered requirements the source text
          leaves implicit.
        evidence: [E01]
  - id: N17
    type: experiment
    title: "Large-scale exploration waste analysis"
    provenance: ai-executed
    timestamp: "2026-03-12"
    result: >
      Most recorded cost concentrates in failed exploration branches that
      published write-ups discard.
    evidence: [C13, C14, "code/eval/malt_analysis/exploration_tax_findings.json"]
"""

GOLDEN_SESSION_YAML = """\
session:
  id: "2026-03-19_001"
  timestamp: "2026-03-19T02:00"
  summary: "Reproduction pilot on the paired target"
events_logged:
  - type: experiment
    id: N65
    summary: "Paired reproduction maxed the subtask ladder on both arms"
  - type: observation
    id: O50
    summary: "Clearer configuration specs decided the hardest subtask"
ai_actions:
  - action: "Ran the paired reproduction"
    files_changed:
      - "code/eval/reproduction/results/"
claims_touched: [C05]
open_threads:
  - "Move buried hyperparameters into configs and rerun"
"""

GOLDEN_PROBLEM_MD = """\
# Problem

## Observations
### O1: Flat documents under-specify execution
- **Statement**: Reproduction-critical configuration is routinely absent
    from flat write-ups.
- **Implication**: Execution-grade consumers need a structured carrier.

## Gaps
### G1: Failure knowledge is discarded
- **Statement**: Dead ends and rejected designs rarely survive editing.

## Key Insight
- **Insight**: Keep reasoning, code, trajectory, and evidence as four
    separately queryable layers bound by explicit references.
"""

GOLDEN_EXTRA_FILES = {
    "src/kernel/compiler_notes.md": "# Kernel notes\n\nCore pass structure and invariants.\n",
    "src/configs/defaults.yaml": "budget: matched\nseeds: pinned\n",
    "paper/sections/protocol.tex": "% layered protocol section\n",
    "code/artifacts/rebench-triton/src/kernel/official_solution_notes.md": "# Notes\n",
    "code/eval/malt_analysis/exploration_tax_findings.json": "{\"classified_runs\": true}\n",
    "evidence/README.md": "# Evidence index\n\n- results/: metric tables per experiment\n",
    "evidence/results/fidelity.md": "| probe | recall |\n|---|---|\n| bank A | 0.956 |\n",
    "evidence/results/reproduction.md": "| arm | completion |\n|---|---|\n| artifact | 0.644 |\n",
    "evidence/results/exploration.md": "| class | cost share |\n|---|---|\n| failed | 0.902 |\n",
    "staging/observations.yaml": "observations: []\n",
}


def golden_files() -> dict[str, str]:
    files = {
        "PAPER.md": GOLDEN_PAPER_MD,
        "logic/problem.md": GOLDEN_PROBLEM_MD,
        "logic/claims.md": GOLDEN_CLAIMS_MD,
        "logic/experiments.md": GOLDEN_EXPERIMENTS_MD,
        "logic/concepts.md": GOLDEN_CONCEPTS_MD,
        "logic/related_work.md": GOLDEN_RELATED_WORK_MD,
        "logic/solution/heuristics.md": GOLDEN_HEURISTICS_MD,
        "trace/exploration_tree.yaml": GOLDEN_TREE_YAML,
        "trace/sessions/2026-03-19_001.yaml": GOLDEN_SESSION_YAML,
    }
    files.update(GOLDEN_EXTRA_FILES)
    return files


def write_files(root: Path, files: dict[str, str]) -> Path:
    for rel, content in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    return root


def write_golden_artifact(root: Path) -> Path:
    return write_files(root, golden_files())


# --- deterministic synthetic corpus -----------------------------------------

_STATUS_CYCLE = ("supported", "testing", "hypothesis")
_PROVENANCE_CYCLE = ("user", "ai-suggested", "ai-executed", "user-revised")
_SENSITIVITY_CYCLE = ("low", "medium", "high")
_CONCEPT_NAMES = (
    "Forensic Binding",
    "Progressive Disclosure",
    "Exploration Graph",
    "Evidence Separation",
    "Kernel Mode",
    "Layer Index",
    "Session Record",
)


def corpus_files(variant: int) -> dict[str, str]:
    """Files for one synthetic Level-1-valid artifact, a pure function of
    the variant number."""
    n_claims = 4 + variant % 4
    n_experiments = 3 + variant % 3
    n_concepts = 5 + variant % 3
    claim_ids = [f"C{i:02d}" for i in range(1, n_claims + 1)]
    exp_ids = [f"E{i:02d}" for i in range(1, n_experiments + 1)]

    claims = ["# Claims", ""]
    for i, cid in enumerate(claim_ids):
        status = _STATUS_CYCLE[(variant + i) % len(_STATUS_CYCLE)]
        provenance = _PROVENANCE_CYCLE[(variant + i) % len(_PROVENANCE_CYCLE)]
        proof_exp = exp_ids[i % n_experiments]
        claims += [
            f"## {cid}: Workload {i + 1} ranking quality",
            f"- **Statement**: Approach arm-{variant} typically improves ranking",
            f"    quality over the recorded baseline on workload W{i + 1}.",
            f"- **Status**: {status}",
            f"- **Provenance**: {provenance}",
            f"- **Falsification criteria**: Ranking quality fails to improve on",
            f"    workload W{i + 1} under the matched budget.",
            f"- **Proof**: [{proof_exp}]",
            f"- **Review note**: synthetic entry {variant}.{i}",
        ]
        if i > 0:
            claims.append(f"- **Dependencies**: [{claim_ids[i - 1]}]")
        claims += [f"- **Tags**: ranking, workload-{i + 1}", ""]

    experiments = ["# Experiments", ""]
    for j, eid in enumerate(exp_ids):
        verified = [cid for i, cid in enumerate(claim_ids) if i % n_experiments == j]
        if not verified:
            verified = [claim_ids[0]]
        experiments += [
            f"## {eid}: Paired comparison {j + 1}",
            f"- **Verifies**: [{', '.join(verified)}]",
            f"- **Setup**: Matched-budget paired runs on the workload slice.",
            f"- **Procedure**:",
            f"    1. Run the treated and baseline configurations.",
            f"    2. Rank outcomes under the shared metric.",
            f"- **Metrics**: ranking quality",
            f"- **Expected outcome**: The treated configuration ends ahead of the",
            f"    baseline direction on the primary metric.",
            f"- **Evidence**: [evidence/results/run_{j + 1}.md]",
            "",
        ]

    heuristics = ["# Heuristics", ""]
    for k in range(1, 4):
        sensitivity = _SENSITIVITY_CYCLE[(variant + k) % 3]
        heuristics += [
            f"## H{k:02d}: Schedule trick {k}",
            f"- **Rationale**: Keeps the optimization stable on workload slices.",
            f"- **Sensitivity**: {sensitivity}",
            f"- **Bounds**: Holds for budgets within the recorded sweep range.",
            f"- **Code ref**: [src/kernel/module_{k}.py]",
            "",
        ]

    concepts = ["# Concepts", ""]
    for k in range(n_concepts):
        name = _CONCEPT_NAMES[k % len(_CONCEPT_NAMES)]
        suffix = "" if k < len(_CONCEPT_NAMES) else f" {k}"
        concepts += [
            f"## {name}{suffix}",
            f"- **Definition**: Working definition {k + 1} for variant {variant}.",
            "",
        ]

    related = [
        "# Related Work",
        "",
        "## R01: Flat bundle distribution",
        "- **Type**: baseline",
        "- **Role**: Comparison condition.",
        "",
        "## R02: Metadata interchange principles",
        "- **Type**: imports",
        "- **Role**: Header vocabulary.",
        "",
        "## R03: Workflow engines",
        "- **Type**: bounds",
        "- **Role**: Execution model constraints.",
        "",
    ]

    n_extra_nodes = variant % 5
    tree = [
        "tree:",
        "  - id: N01",
        "    type: question",
        f"    title: \"Does arm-{variant} transfer across workloads?\"",
        "    children:",
        "      - id: N02",
        "        type: decision",
        "        title: \"Adopt the paired-run protocol\"",
        "        choice: \"Paired runs under matched budgets.\"",
        "        alternatives:",
        "          - \"Unpaired historical comparison\"",
        "        evidence: \"Paired runs remove drift between arms.\"",
        "      - id: N03",
        "        type: dead_end",
        "        title: \"Per-workload tuning\"",
        "        hypothesis: >",
        "          Tuning each workload separately would dominate the shared",
        "          configuration.",
        "        failure_mode: >",
        "          Per-workload tuning overfit the smallest slices and lost the",
        "          ranking on held-out workloads.",
        "        lesson: >",
        "          Shared configuration transfers better than per-slice tuning",
        "          at this budget.",
        "      - id: N04",
        "        type: experiment",
        "        title: \"Paired pilot\"",
        "        result: \"The pilot ranking favored the treated arm.\"",
        f"        evidence: [{claim_ids[0]}]",
        "      - id: N05",
        "        type: pivot",
        "        title: \"Move from synthetic to recorded workloads\"",
        "        trigger: \"Synthetic slices saturated\"",
        "        rationale: \"Recorded workloads carry realistic skew\"",
        "        also_depends_on: [N02]",
        "  - id: N06",
        "    type: question",
        "    title: \"Where does the advantage concentrate?\"",
        "    children:",
        "      - id: N07",
        "        type: experiment",
        "        title: \"Slice-level breakdown\"",
        "        result: \"Advantage concentrated on the skewed slices.\"",
        f"        evidence: [{exp_ids[0]}]",
        "      - id: N08",
        "        type: decision",
        "        title: \"Report slice-level results\"",
        "        choice: \"Keep per-slice tables in evidence.\"",
        "        alternatives:",
        "          - \"Aggregate only\"",
        "        evidence: \"Slice tables expose the skew dependence.\"",
    ]
    for extra in range(n_extra_nodes):
        tree += [
            f"  - id: N{9 + extra:02d}",
            "    type: question",
            f"    title: \"Open thread {extra + 1}\"",
        ]

    session = [
        "session:",
        f"  id: \"2026-05-{(variant % 27) + 1:02d}_001\"",
        f"  timestamp: \"2026-05-{(variant % 27) + 1:02d}T09:00\"",
        "  summary: \"Paired run review\"",
        "events_logged:",
        "  - type: experiment",
        "    id: N04",
        "    summary: \"Paired pilot graded\"",
        "  - type: decision",
        "    id: N02",
        "    summary: \"Kept the paired protocol\"",
        "claims_touched: [C01]",
        "open_threads:",
        "  - \"Extend the paired protocol to the remaining workloads\"",
    ]

    paper = [
        "---",
        f"title: \"Synthetic Artifact {variant:02d}\"",
        "authors: [\"Synthetic Author\"]",
        "status: draft",
        f"custom_badge: {variant}",
        "abstract: >",
        f"  Synthetic Level-1-valid artifact number {variant}, generated for",
        "  deterministic validation and mutation tests.",
        "layers:",
        "  logic: logic/",
        "  src: src/",
        "  trace: trace/",
        "  evidence: evidence/",
        "---",
        "",
        "# Layer Index",
        "",
        "- **Cognitive** (`logic/`): structured reasoning",
        "  - `claims.md` -- falsifiable claims",
        "  - `experiments.md` -- verification plan",
        "- **Exploration** (`trace/`): decision record",
        "  - `exploration_tree.yaml` -- decision DAG",
        "- **Evidence** (`evidence/`): raw results",
        "  - `README.md` -- index",
    ]

    files = {
        "PAPER.md": "\n".join(paper) + "\n",
        "logic/problem.md": "# Problem\n\n## Key Insight\n- **Insight**: Structured layers beat flat bundles for agent use.\n",
        "logic/claims.md": "\n".join(claims) + "\n",
        "logic/experiments.md": "\n".join(experiments) + "\n",
        "logic/concepts.md": "\n".join(concepts) + "\n",
        "logic/related_work.md": "\n".join(related) + "\n",
        "logic/solution/heuristics.md": "\n".join(heuristics) + "\n",
        "trace/exploration_tree.yaml": "\n".join(tree) + "\n",
        "trace/sessions/session_001.yaml": "\n".join(session) + "\n",
        "evidence/README.md": "# Evidence index\n",
    }
    for j in range(n_experiments):
        files[f"evidence/results/run_{j + 1}.md"] = f"| run | outcome |\n|---|---|\n| {j + 1} | ahead |\n"
    for k in range(1, 4):
        files[f"src/kernel/module_{k}.py"] = f"def pass_{k}():\n    return {k}\n"
    if variant % 3 == 0:
        files["logic/solution/architecture.md"] = (
            "# Architecture\n\n"
            "## Ranking Core\n"
            "- **Stub**: [src/kernel/module_1.py]\n"
            "- **Role**: Produces the shared metric ranking.\n\n"
            "## Budget Controller\n"
            "- **Stub**: [src/kernel/module_2.py]\n"
            "- **Role**: Enforces matched budgets across arms.\n"
        )
    return files


def write_corpus_artifact(root: Path, variant: int) -> Path:
    return write_files(root, corpus_files(variant))


@pytest.fixture
def golden_root(tmp_path: Path) -> Path:
    return write_golden_artifact(tmp_path / "golden")


@pytest.fixture
def corpus_root(tmp_path: Path) -> Path:
    return write_corpus_artifact(tmp_path / "corpus0", 0)
