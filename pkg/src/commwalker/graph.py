"""Undirected simple graph: construction, file formats, connected components.

Nodes carry external string names; internally everything runs on dense
integer ids assigned in first-appearance order. Edges get dense ids in
input order, stored as (u, v) with u < v.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DanglingEdgeError,
    DuplicateEdgeError,
    EmptyGraphError,
    GmlParseError,
    MalformedLineError,
    SelfLoopError,
    UnknownNodeError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    adjacency[u] lists (neighbor, edge_id) pairs, one per incident edge.
    The structure is never mutated after construction, so it is safe to
    share across any number of concurrent readers.
    """

    nodes: list[str]
    edges: list[tuple[int, int]]
    adjacency: list[list[tuple[int, int]]]
    neighbors: list[list[int]]
    name_to_id: dict[str, int]

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    @classmethod
    def from_edges(cls, names: list[str], edge_pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from node names and id pairs, enforcing simplicity."""
        name_to_id = {name: i for i, name in enumerate(names)}
        if len(name_to_id) != len(names):
            raise MalformedLineError("node names are not unique")
        edges: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        adjacency: list[list[tuple[int, int]]] = [[] for _ in names]
        neighbors: list[list[int]] = [[] for _ in names]
        for u, v in edge_pairs:
            if u == v:
                raise SelfLoopError(f"self-loop on node '{names[u]}'")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise DuplicateEdgeError(f"duplicate edge '{names[u]}'-'{names[v]}'")
            seen.add((u, v))
            eid = len(edges)
            edges.append((u, v))
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
            neighbors[u].append(v)
            neighbors[v].append(u)
        return cls(
            nodes=list(names),
            edges=edges,
            adjacency=adjacency,
            neighbors=neighbors,
            name_to_id=name_to_id,
        )


@dataclass
class EdgeMask:
    """Per-edge removal flags for one graph; single-writer."""

    removed: list[bool]

    @classmethod
    def for_graph(cls, g: Graph) -> "EdgeMask":
        return cls(removed=[False] * g.edge_count)


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to exactly one dense community label."""

    community_of: list[int]
    community_count: int

    def __post_init__(self) -> None:
        used = set(self.community_of)
        if used != set(range(self.community_count)):
            raise ValueError("labels must be dense 0..k-1 with every label used")

    @classmethod
    def from_labels(cls, labels: Iterable[object]) -> "Partition":
        """Relabel arbitrary hashable labels densely, first appearance first."""
        dense: dict[object, int] = {}
        community_of = []
        for lab in labels:
            if lab not in dense:
                dense[lab] = len(dense)
            community_of.append(dense[lab])
        return cls(community_of=community_of, community_count=len(dense))

    def sizes(self) -> list[int]:
        counts = [0] * self.community_count
        for lab in self.community_of:
            counts[lab] += 1
        return counts

    def members(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.community_count)]
        for node, lab in enumerate(self.community_of):
            groups[lab].append(node)
        return groups


def load_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse a "name_u name_v" edge list.

    Lines starting with '#' and blank lines are skipped. The format is
    strict: self-loops and duplicate edges are rejected as user error.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    names: list[str] = []
    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    def intern(name: str) -> int:
        if name not in ids:
            ids[name] = len(names)
            names.append(name)
        return ids[name]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLineError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        u, v = intern(tokens[0]), intern(tokens[1])
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop on '{tokens[0]}'")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge '{tokens[0]}' '{tokens[1]}'")
        seen.add(key)
        pairs.append(key)
    if not pairs:
        raise EmptyGraphError("edge list contains no edges")
    return Graph.from_edges(names, pairs)


def to_edge_list(g: Graph) -> str:
    """Serialize a graph back to edge-list text (inverse of load_edge_list)."""
    return "".join(f"{g.nodes[u]} {g.nodes[v]}\n" for u, v in g.edges)


# --- GML subset -------------------------------------------------------------
#
# Only the structure needed for the benchmark datasets: a graph [ ... ]
# block with node [ id .. (label ..) (value ..) ] and
# edge [ source .. target .. ] entries. Anything else is skipped, including
# blocks nested inside node/edge entries (e.g. graphics [...]).

_LBR = ("bracket", "[")
_RBR = ("bracket", "]")


def _tokenize_gml(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j == -1:
                raise GmlParseError("unterminated string literal")
            tokens.append(("string", text[i + 1 : j]))
            i = j + 1
        elif c in "[]":
            tokens.append(("bracket", c))
            i += 1
        elif c == "#":
            j = text.find("\n", i)
            i = n if j == -1 else j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '[]"':
                j += 1
            tokens.append(("word", text[i:j]))
            i = j
    return tokens


def _skip_block(tokens: list[tuple[str, str]], i: int) -> int:
    """Advance past a balanced [ ... ] block; i points at the opening '['."""
    depth = 0
    while i < len(tokens):
        if tokens[i] == _LBR:
            depth += 1
        elif tokens[i] == _RBR:
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    raise GmlParseError("unbalanced brackets")


def _parse_entry(tokens: list[tuple[str, str]], i: int) -> tuple[dict[str, str], int]:
    """Parse one node/edge block into key -> raw value; nested blocks ignored."""
    if i >= len(tokens) or tokens[i] != _LBR:
        raise GmlParseError("expected '[' after node/edge")
    fields: dict[str, str] = {}
    i += 1
    while i < len(tokens):
        kind, value = tokens[i]
        if (kind, value) == _RBR:
            return fields, i + 1
        if kind != "word":
            raise GmlParseError(f"unexpected token {value!r} in node/edge block")
        key = value
        i += 1
        if i >= len(tokens):
            break
        if tokens[i] == _LBR:
            i = _skip_block(tokens, i)
        else:
            if key not in fields:  # first occurrence wins
                fields[key] = tokens[i][1]
            i += 1
    raise GmlParseError("unbalanced brackets in node/edge block")


def load_gml(text: str) -> tuple[Graph, Partition | None]:
    """Parse the GML subset; returns the graph and, when every node carries a
    `value` field, the ground-truth partition encoded by those values.

    Duplicate edges (and self-loops) in the file are collapsed with a
    warning, since the circulating benchmark datasets contain them while the
    algorithm itself runs on simple graphs.
    """
    tokens = _tokenize_gml(text)
    i = 0
    while i < len(tokens) and not (tokens[i] == ("word", "graph") and i + 1 < len(tokens) and tokens[i + 1] == _LBR):
        i += 1
    if i >= len(tokens):
        raise GmlParseError("no 'graph [' block found")
    i += 2

    raw_nodes: list[dict[str, str]] = []
    raw_edges: list[dict[str, str]] = []
    while True:
        if i >= len(tokens):
            raise GmlParseError("unbalanced brackets: graph block never closed")
        kind, value = tokens[i]
        if (kind, value) == _RBR:
            break
        if kind != "word":
            raise GmlParseError(f"unexpected token {value!r} in graph block")
        if value == "node":
            entry, i = _parse_entry(tokens, i + 1)
            raw_nodes.append(entry)
        elif value == "edge":
            entry, i = _parse_entry(tokens, i + 1)
            raw_edges.append(entry)
        else:
            i += 1
            if i < len(tokens) and tokens[i] == _LBR:
                i = _skip_block(tokens, i)
            else:
                i += 1  # scalar graph attribute, e.g. "directed 0"

    names: list[str] = []
    name_set: set[str] = set()
    gml_to_dense: dict[str, int] = {}
    values: list[str | None] = []
    for entry in raw_nodes:
        if "id" not in entry:
            raise GmlParseError("node block missing 'id'")
        gml_id = entry["id"]
        if gml_id in gml_to_dense:
            raise GmlParseError(f"duplicate node id {gml_id}")
        name = entry.get("label", gml_id)
        if name in name_set:
            raise GmlParseError(f"duplicate node name {name!r}")
        gml_to_dense[gml_id] = len(names)
        names.append(name)
        name_set.add(name)
        values.append(entry.get("value"))

    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    collapsed = 0
    for entry in raw_edges:
        if "source" not in entry or "target" not in entry:
            raise GmlParseError("edge block missing 'source' or 'target'")
        try:
            u = gml_to_dense[entry["source"]]
            v = gml_to_dense[entry["target"]]
        except KeyError as exc:
            raise DanglingEdgeError(f"edge references unknown node id {exc.args[0]}") from None
        if u == v:
            collapsed += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            collapsed += 1
            continue
        seen.add(key)
        pairs.append(key)
    if collapsed:
        logger.warning("collapsed %d duplicate/self-loop edge(s) in GML input", collapsed)

    g = Graph.from_edges(names, pairs)
    truth = None
    if names and all(v is not None for v in values):
        truth = Partition.from_labels(values)
    return g, truth


# --- label files ------------------------------------------------------------


def parse_label_lines(text: str | Iterable[str]) -> dict[str, str]:
    """Parse a "name label" file into a name -> label-token map."""
    lines = text.splitlines() if isinstance(text, str) else text
    labels: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLineError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        name, label = tokens
        if name in labels:
            raise MalformedLineError(f"line {lineno}: duplicate label for '{name}'")
        labels[name] = label
    return labels


def load_labels(text: str | Iterable[str], g: Graph) -> Partition:
    """Load a ground-truth partition for g from "name label" lines."""
    labels = parse_label_lines(text)
    for name in labels:
        if name not in g.name_to_id:
            raise UnknownNodeError(f"label file names unknown node '{name}'")
    raw = []
    for name in g.nodes:
        if name not in labels:
            raise UnknownNodeError(f"label file is missing node '{name}'")
        raw.append(labels[name])
    return Partition.from_labels(raw)


# --- connectivity -----------------------------------------------------------


def connected_components(g: Graph, mask: EdgeMask | None = None) -> Partition:
    """Flood-fill components over non-removed edges.

    Labels are assigned in order of each component's lowest node id, so the
    result is deterministic and independent of adjacency ordering.
    """
    removed = mask.removed if mask is not None else None
    labels = [-1] * g.node_count
    count = 0
    for start in range(g.node_count):
        if labels[start] != -1:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, eid in g.adjacency[u]:
                if removed is not None and removed[eid]:
                    continue
                if labels[v] == -1:
                    labels[v] = count
                    queue.append(v)
        count += 1
    return Partition(community_of=labels, community_count=count)


def is_connected(g: Graph) -> bool:
    return g.node_count > 0 and connected_components(g).community_count == 1


def induced_subgraph(g: Graph, node_ids: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by node_ids; returns (subgraph, sub-id -> original-id).

    Node names are preserved; edges keep their original relative order.
    """
    kept = sorted(set(node_ids))
    orig_to_sub = {orig: sub for sub, orig in enumerate(kept)}
    names = [g.nodes[orig] for orig in kept]
    pairs = [
        (orig_to_sub[u], orig_to_sub[v])
        for u, v in g.edges
        if u in orig_to_sub and v in orig_to_sub
    ]
    return Graph.from_edges(names, pairs), kept
