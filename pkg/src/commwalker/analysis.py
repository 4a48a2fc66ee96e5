"""Edge-removal sweep: cut edges in ascending weight order, score every
component split by modularity on the original graph, keep the best.

The sweep runs to exhaustion because modularity along the removal sequence
is not unimodal; stopping at the first decline could miss the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotConnectedError
from .exploration import WeightMatrix
from .graph import EdgeMask, Graph, Partition, connected_components, is_connected
from .modularity import modularity


@dataclass(frozen=True)
class CandidateRecord:
    """One candidate community structure met during the sweep."""

    removed_edge_count: int
    partition: Partition
    q: float


def edge_removal_order(g: Graph, w: WeightMatrix) -> list[int]:
    """Edge ids sorted by ascending pair weight; ties by ascending edge id."""
    return sorted(range(g.edge_count), key=lambda e: (w.get(*g.edges[e]), e))


def sweep(g: Graph, w: WeightMatrix) -> list[CandidateRecord]:
    """Remove edges one at a time in removal order, recording a candidate
    whenever the component count grows.

    Candidates are always scored against the original unmasked graph, so
    their modularities are comparable. The first record is the baseline
    single-community partition (Q = 0); the last is all singletons.
    """
    if not is_connected(g):
        raise NotConnectedError("sweep needs a connected graph")
    mask = EdgeMask.for_graph(g)
    baseline = connected_components(g, mask)
    records = [CandidateRecord(0, baseline, modularity(g, baseline))]
    component_count = baseline.community_count
    for removed, eid in enumerate(edge_removal_order(g, w), start=1):
        mask.removed[eid] = True
        parts = connected_components(g, mask)
        if parts.community_count > component_count:
            records.append(CandidateRecord(removed, parts, modularity(g, parts)))
            component_count = parts.community_count
    return records


def best_partition(candidates: list[CandidateRecord]) -> CandidateRecord:
    """The candidate with maximal Q; ties break toward fewer removed edges,
    then fewer communities."""
    best = candidates[0]
    for record in candidates[1:]:
        if record.q > best.q or (
            record.q == best.q
            and (
                record.removed_edge_count < best.removed_edge_count
                or (
                    record.removed_edge_count == best.removed_edge_count
                    and record.partition.community_count < best.partition.community_count
                )
            )
        ):
            best = record
    return best
