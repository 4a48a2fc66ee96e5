"""Planted-partition benchmark graphs with known block structure."""

from __future__ import annotations

import random

from .errors import ConfigInvalidError
from .graph import Graph, Partition


def planted_partition(
    block_count: int,
    block_size: int,
    p_in: float,
    p_out: float,
    seed: int,
) -> tuple[Graph, Partition]:
    """Sample a graph of block_count blocks of block_size nodes each, with
    independent edge probability p_in inside a block and p_out across blocks.

    Returns the graph and the planted block partition as ground truth. The
    sample may be disconnected or contain isolated nodes; callers that need
    connectivity should draw another seed.
    """
    if block_count < 1 or block_size < 1:
        raise ConfigInvalidError("block_count and block_size must be >= 1")
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise ConfigInvalidError(f"{name} must be in [0, 1], got {p}")
    rng = random.Random(seed)
    n = block_count * block_size
    block = [i // block_size for i in range(n)]
    names = [str(i) for i in range(n)]
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            p = p_in if block[u] == block[v] else p_out
            if rng.random() < p:
                pairs.append((u, v))
    return Graph.from_edges(names, pairs), Partition(community_of=block, community_count=block_count)
