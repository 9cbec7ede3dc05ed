"""Cross-layer reference graph and exploration-DAG queries.

Nodes are entity ids and file paths; every reference token in the
artifact contributes exactly one typed edge.  Unresolved targets stay in
the graph as marked sink nodes so lineage queries can surface them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Artifact, AraError, ExplorationNode, NodeKind
from .parse import classify_token

EDGE_KINDS = (
    "proof",
    "verifies",
    "depends_on",
    "code_ref",
    "tree_ref",
    "also_depends_on",
    "parent_child",
    "evidence",
)


class UnknownEntity(AraError):
    pass


class CycleError(AraError):
    def __init__(self, cycle: list[str]):
        super().__init__(f"cycle detected: {' -> '.join(cycle + cycle[:1])}")
        self.cycle = cycle


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    kind: str


@dataclass
class ReferenceGraph:
    nodes: dict[str, str] = field(default_factory=dict)  # name -> node kind
    edges: list[Edge] = field(default_factory=list)
    unresolved: set[str] = field(default_factory=set)

    def out_edges(self, name: str, kind: str | None = None) -> list[Edge]:
        return [e for e in self.edges if e.src == name and (kind is None or e.kind == kind)]


def build_reference_graph(artifact: Artifact) -> ReferenceGraph:
    """Collect every reference token in the artifact into a typed graph."""
    graph = ReferenceGraph()
    claim_ids = artifact.claim_ids()
    experiment_ids = artifact.experiment_ids()
    heuristic_ids = {h.id for h in artifact.heuristics}
    node_ids = artifact.node_ids()

    for cid in sorted(claim_ids):
        graph.nodes[cid] = "claim"
    for eid in sorted(experiment_ids):
        graph.nodes[eid] = "experiment"
    for hid in sorted(heuristic_ids):
        graph.nodes[hid] = "heuristic"
    for nid in sorted(node_ids):
        graph.nodes[nid] = "node"

    def resolve(target: str) -> bool:
        if target in graph.nodes and graph.nodes[target] != "file":
            return True
        kind, value = classify_token(target)
        if kind == "path":
            if value in artifact.file_inventory or value in artifact.dir_inventory:
                graph.nodes.setdefault(value, "file")
                return True
        return False

    def add_edge(src: str, token: str, kind: str) -> None:
        token_kind, value = classify_token(token)
        if token_kind == "text":
            return  # annotation, not a reference
        if not resolve(value):
            graph.nodes.setdefault(value, "unresolved")
            graph.unresolved.add(value)
        graph.edges.append(Edge(src=src, dst=value, kind=kind))

    for claim in artifact.claims:
        for token in claim.proof:
            add_edge(claim.id, token, "proof")
        for dep in claim.dependencies:
            add_edge(claim.id, dep, "depends_on")
    for experiment in artifact.experiments:
        for target in experiment.verifies:
            add_edge(experiment.id, target, "verifies")
        for token in experiment.evidence:
            add_edge(experiment.id, token, "evidence")
    for heuristic in artifact.heuristics:
        for ref in heuristic.code_ref:
            add_edge(heuristic.id, ref, "code_ref")
    for node in artifact.all_nodes():
        refs = node.payload.get("evidence", [])
        if isinstance(refs, str):
            refs = [refs]
        if isinstance(refs, list):
            for ref in refs:
                add_edge(node.id, str(ref), "tree_ref")
        for dep in node.also_depends_on:
            add_edge(node.id, dep, "also_depends_on")
        for child in node.children:
            graph.edges.append(Edge(src=node.id, dst=child.id, kind="parent_child"))
    return graph


@dataclass(frozen=True)
class ProofPath:
    nodes: tuple[str, ...]
    resolved: bool  # False when the path ends at an unresolved sink


def proof_chain(graph: ReferenceGraph, claim_id: str) -> list[ProofPath]:
    """All maximal claim -> experiment -> evidence paths for one claim."""
    if graph.nodes.get(claim_id) != "claim":
        raise UnknownEntity(f"{claim_id} is not a claim in this graph")

    paths: list[ProofPath] = []
    for proof_edge in graph.out_edges(claim_id, "proof"):
        target = proof_edge.dst
        if target in graph.unresolved:
            paths.append(ProofPath(nodes=(claim_id, target), resolved=False))
            continue
        if graph.nodes.get(target) == "experiment":
            evidence_edges = graph.out_edges(target, "evidence")
            if not evidence_edges:
                paths.append(ProofPath(nodes=(claim_id, target), resolved=True))
            for ev in evidence_edges:
                paths.append(
                    ProofPath(
                        nodes=(claim_id, target, ev.dst),
                        resolved=ev.dst not in graph.unresolved,
                    )
                )
        else:
            paths.append(ProofPath(nodes=(claim_id, target), resolved=True))
    return paths


def list_dead_ends(artifact: Artifact) -> list[tuple[str, str, str, str]]:
    """(node id, hypothesis, failure_mode, lesson) for every dead end, document order."""
    out = []
    for node in artifact.all_nodes():
        if node.kind is NodeKind.DEAD_END:
            payload = node.payload
            out.append(
                (
                    node.id,
                    str(payload.get("hypothesis", "")).strip(),
                    str(payload.get("failure_mode", "")).strip(),
                    str(payload.get("lesson", "")).strip(),
                )
            )
    return out


def _tree_adjacency(tree: list[ExplorationNode]) -> tuple[list[str], dict[str, list[str]]]:
    """Nodes in document order plus nesting and also_depends_on edges.

    also_depends_on edges pointing at nonexistent nodes are omitted; the
    reference checker already reports those as dangling.
    """
    order: list[str] = []
    adjacency: dict[str, list[str]] = {}

    def visit(node: ExplorationNode) -> None:
        order.append(node.id)
        adjacency.setdefault(node.id, [])
        for child in node.children:
            adjacency[node.id].append(child.id)
            visit(child)

    for root in tree:
        visit(root)
    known = set(order)
    for root in tree:
        for node in root.walk():
            for dep in node.also_depends_on:
                if dep in known:
                    adjacency[node.id].append(dep)
    return order, adjacency


def find_cycle(order: list[str], adjacency: dict[str, list[str]]) -> list[str] | None:
    """Iterative DFS; returns one witness cycle's node ids or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in order}
    parent: dict[str, str] = {}

    for start in order:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        color[start] = GRAY
        while stack:
            node, idx = stack[-1]
            neighbors = adjacency.get(node, [])
            if idx < len(neighbors):
                stack[-1] = (node, idx + 1)
                nxt = neighbors[idx]
                if color[nxt] == GRAY:
                    # Walk back from node to nxt along the DFS parents.
                    cycle = [node]
                    cursor = node
                    while cursor != nxt:
                        cursor = parent[cursor]
                        cycle.append(cursor)
                    cycle.reverse()
                    return cycle
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    parent[nxt] = node
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                stack.pop()
    return None


def check_acyclic(tree: list[ExplorationNode]) -> None:
    """Raise CycleError (with a witness) if nesting plus also_depends_on cycles."""
    order, adjacency = _tree_adjacency(tree)
    cycle = find_cycle(order, adjacency)
    if cycle is not None:
        raise CycleError(cycle)


def export_dot(graph: ReferenceGraph) -> str:
    """Render the reference graph as a dot document for visualization tools."""
    lines = ["digraph ara {"]
    for name in sorted(graph.nodes):
        kind = graph.nodes[name]
        shape = {"claim": "box", "experiment": "ellipse", "heuristic": "hexagon", "node": "diamond"}.get(
            kind, "note"
        )
        style = ' style="dashed"' if name in graph.unresolved else ""
        lines.append(f'  "{name}" [shape={shape}{style}];')
    for edge in graph.edges:
        lines.append(f'  "{edge.src}" -> "{edge.dst}" [label="{edge.kind}"];')
    lines.append("}")
    return "\n".join(lines)
