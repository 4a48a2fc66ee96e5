"""Walker generations: biased tabu walks, co-visit counting, start placement.

One generation = a batch of walker agents reading a frozen weight snapshot,
each reporting its memory (the ordered list of visited nodes) to the
coordinator, which then applies all updates at once. Walks within a
generation are independent and could run concurrently; the implementation
is sequential in agent order, which is also the determinism contract.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass

from .errors import ConfigInvalidError, IsolatedNodeError, NotConnectedError
from .graph import Graph, is_connected

# Memories are plain ordered lists of node ids; hit counts are plain lists
# indexed by node id.
AgentMemory = list
HitCounts = list

_START_LANE = -1  # substream lane for start selection; agents use 0..A-1


class WeightMatrix:
    """Symmetric nonnegative co-visit counts keyed by unordered node pair.

    Semantically a full n-by-n symmetric integer matrix that starts at zero;
    stored sparsely because most pairs never co-occur. The diagonal is never
    written. Counts only grow.
    """

    __slots__ = ("counts",)

    def __init__(self) -> None:
        self.counts: dict[tuple[int, int], int] = {}

    def get(self, u: int, v: int) -> int:
        return self.counts.get((u, v) if u < v else (v, u), 0)

    def increment(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("diagonal entries are never written")
        key = (u, v) if u < v else (v, u)
        self.counts[key] = self.counts.get(key, 0) + 1

    def total_mass(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class ExplorationConfig:
    """Run parameters for the exploration phase.

    agent_count must be at least 2 (the stop threshold (agents - 1) * memory
    would otherwise be zero) and memory_size at least 2 (a pair update needs
    two nodes). max_generations is a safety cap: the visit-count stop rule
    can stall on pathological topologies.
    """

    agent_count: int
    memory_size: int
    hub_fraction: float = 0.75
    max_generations: int = 1000
    seed: int = 0

    def validate(self) -> None:
        if self.agent_count < 2:
            raise ConfigInvalidError(f"agent_count must be >= 2, got {self.agent_count}")
        if self.memory_size < 2:
            raise ConfigInvalidError(f"memory_size must be >= 2, got {self.memory_size}")
        if not 0.0 <= self.hub_fraction <= 1.0:
            raise ConfigInvalidError(f"hub_fraction must be in [0, 1], got {self.hub_fraction}")
        if self.max_generations < 1:
            raise ConfigInvalidError(f"max_generations must be >= 1, got {self.max_generations}")

    @classmethod
    def for_graph(
        cls,
        g: Graph,
        *,
        agent_count: int | None = None,
        memory_size: int | None = None,
        hub_fraction: float = 0.75,
        max_generations: int = 1000,
        seed: int = 0,
    ) -> "ExplorationConfig":
        """Fill unset parameters from graph shape.

        Agents scale with node count: the visit-count stop rule makes total
        walk mass grow with the agent count, and cross-community edge
        weights plateau while intra weights keep growing, so more agents
        directly sharpen the weight ranking (calibrated on the bundled and
        synthetic benchmarks). Memories stay short, near one neighborhood
        deep; longer windows blend adjacent communities.
        """
        if agent_count is None:
            agent_count = max(16, 8 * g.node_count)
        if memory_size is None:
            avg_degree = 2 * g.edge_count / g.node_count if g.node_count else 0.0
            memory_size = min(4, max(3, math.ceil(avg_degree)))
        cfg = cls(
            agent_count=agent_count,
            memory_size=memory_size,
            hub_fraction=hub_fraction,
            max_generations=max_generations,
            seed=seed,
        )
        cfg.validate()
        return cfg


@dataclass(frozen=True)
class ExplorationResult:
    weights: WeightMatrix
    hits: list[int]
    generations_run: int
    cap_hit: bool

    @property
    def total_hops(self) -> int:
        return sum(self.hits)


def _substream(seed: int, generation: int, lane: int) -> random.Random:
    """Independent, platform-stable RNG for one (generation, lane) cell."""
    digest = hashlib.blake2b(b"%d:%d:%d" % (seed, generation, lane), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


class _WalkStream:
    """Uniform stream from counter-mode BLAKE2b, keyed by (seed, generation, lane).

    Much cheaper to set up than random.Random (walks are short and there are
    hundreds of thousands of them), deterministic across platforms, and
    independent across lanes. Only .random() is provided; that is all a walk
    needs.
    """

    __slots__ = ("_key", "_counter", "_buf", "_pos")

    def __init__(self, seed: int, generation: int, lane: int) -> None:
        self._key = b"%d:%d:%d:" % (seed, generation, lane)
        self._counter = 0
        self._buf = b""
        self._pos = 64

    def random(self) -> float:
        pos = self._pos
        if pos >= 64:
            self._buf = hashlib.blake2b(
                self._key + b"%d" % self._counter, digest_size=64
            ).digest()
            self._counter += 1
            pos = 0
        chunk = self._buf[pos : pos + 8]
        self._pos = pos + 8
        # 53-bit mantissa, uniform in [0, 1)
        return (int.from_bytes(chunk, "big") >> 11) * 1.1102230246251565e-16


def move_probabilities(
    g: Graph, w: WeightMatrix, current: int, tabu: set[int]
) -> list[float]:
    """Move distribution over the neighbors of `current`, aligned with
    g.adjacency[current].

    Non-tabu neighbors get probability proportional to 1 + pair weight; tabu
    neighbors get 0. When every neighbor is tabu the tabu is dropped and all
    neighbors compete, so a walk can never deadlock.
    """
    neighbors = g.adjacency[current]
    if not neighbors:
        raise IsolatedNodeError(f"node {current} has no neighbors")
    allowed = [i for i, (v, _) in enumerate(neighbors) if v not in tabu]
    if not allowed:
        allowed = list(range(len(neighbors)))
    weights = [1 + w.get(current, neighbors[i][0]) for i in allowed]
    total = sum(weights)
    probs = [0.0] * len(neighbors)
    for i, wt in zip(allowed, weights):
        probs[i] = wt / total
    return probs


def run_walk(g: Graph, w: WeightMatrix, start: int, memory_size: int, rng) -> AgentMemory:
    """One agent walk of exactly memory_size nodes starting at `start`.

    Every node already in this walk's memory is tabu; the tabu is dropped
    for a step when it would block every neighbor. Sampling matches
    move_probabilities exactly, spending one uniform draw per sampled step.
    rng needs only a .random() method.
    """
    neighbor_lists = g.neighbors
    if not neighbor_lists[start]:
        raise IsolatedNodeError(f"node {start} has no neighbors")
    counts_get = w.counts.get
    uniform = rng.random
    memory = [start]
    append = memory.append
    visited = {start}
    add_visited = visited.add
    current = start
    for _ in range(memory_size - 1):
        neighbors = neighbor_lists[current]
        candidates = [v for v in neighbors if v not in visited]
        if not candidates:
            candidates = neighbors
        if len(candidates) == 1:
            nxt = candidates[0]
        else:
            weights = []
            total = 0
            for v in candidates:
                wt = 1 + counts_get((current, v) if current < v else (v, current), 0)
                weights.append(wt)
                total += wt
            r = uniform() * total
            nxt = candidates[-1]
            acc = 0
            for i, wt in enumerate(weights):
                acc += wt
                if r < acc:
                    nxt = candidates[i]
                    break
        append(nxt)
        add_visited(nxt)
        current = nxt
    return memory


def _fast_walk(adjacency, edge_weights, start, memory_size, rng) -> AgentMemory:
    """run_walk against a flat per-edge weight array.

    Used by explore(), where every pair weight a walk reads belongs to an
    edge; indexing a list by edge id beats hashing a node-pair key in the
    hot loop. Must stay step-for-step identical to run_walk (the manual
    composition test in the suite pins the equivalence).
    """
    uniform = rng.random
    memory = [start]
    append = memory.append
    visited = {start}
    add_visited = visited.add
    current = start
    for _ in range(memory_size - 1):
        neighbors = adjacency[current]
        candidates = [ve for ve in neighbors if ve[0] not in visited]
        if not candidates:
            candidates = neighbors
        if len(candidates) == 1:
            nxt = candidates[0][0]
        else:
            weights = []
            total = 0
            for _, eid in candidates:
                wt = 1 + edge_weights[eid]
                weights.append(wt)
                total += wt
            r = uniform() * total
            nxt = candidates[-1][0]
            acc = 0
            for i, wt in enumerate(weights):
                acc += wt
                if r < acc:
                    nxt = candidates[i][0]
                    break
        append(nxt)
        add_visited(nxt)
        current = nxt
    return memory


def apply_memory_update(w: WeightMatrix, memory: AgentMemory) -> None:
    """Increment the pair count of every unordered pair of distinct nodes in
    the memory: nodes reported in one message are counted as co-visited.

    Pairs are taken over the set of memory nodes, so revisits do not
    multiply increments.
    """
    nodes = sorted(set(memory))
    counts = w.counts
    get = counts.get
    for i in range(len(nodes) - 1):
        u = nodes[i]
        for v in nodes[i + 1 :]:
            key = (u, v)
            counts[key] = get(key, 0) + 1


def select_start_nodes(
    g: Graph,
    hits: HitCounts,
    cfg: ExplorationConfig,
    generation: int,
    rng: random.Random,
) -> list[int]:
    """Start nodes for one generation of agents.

    Generation 0 places agents on distinct uniformly random nodes. Later
    generations put ceil(hub_fraction * agents) on the most-hit nodes and
    the rest on the least-hit ones, so hubs are reinforced while neglected
    regions keep getting visits. Hit ties break by node id. Start nodes
    repeat only when there are more agents than nodes.
    """
    n = g.node_count
    a = cfg.agent_count
    if generation == 0:
        if a <= n:
            return rng.sample(range(n), a)
        starts = list(range(n))
        rng.shuffle(starts)
        starts.extend(rng.randrange(n) for _ in range(a - n))
        return starts
    hub_count = math.ceil(cfg.hub_fraction * a)
    by_most_hit = sorted(range(n), key=lambda u: (-hits[u], u))
    by_least_hit = sorted(range(n), key=lambda u: (hits[u], u))
    starts = [by_most_hit[i % n] for i in range(hub_count)]
    starts.extend(by_least_hit[i % n] for i in range(a - hub_count))
    return starts


def exploration_done(hits: HitCounts, cfg: ExplorationConfig) -> bool:
    """Stop rule: every node visited at least (agents - 1) * memory_size times."""
    return min(hits) >= (cfg.agent_count - 1) * cfg.memory_size


def explore(g: Graph, cfg: ExplorationConfig) -> ExplorationResult:
    """Run generations of walks until the stop rule fires or the cap hits.

    All walks of a generation read the weight matrix as it stood when the
    generation started; their memory updates and hit increments are applied
    together afterwards, in agent order. Agent k of generation t draws from
    a private substream derived from (seed, t, k), so results are
    reproducible regardless of how the walks would be scheduled.
    """
    cfg.validate()
    if g.node_count < 2 or not is_connected(g):
        raise NotConnectedError("exploration needs a connected graph with >= 2 nodes")
    weights = WeightMatrix()
    counts = weights.counts
    counts_get = counts.get
    hits = [0] * g.node_count
    generations_run = 0
    cap_hit = False
    seed = cfg.seed
    memory_size = cfg.memory_size
    adjacency = g.adjacency
    edge_weights = [0] * g.edge_count  # walk-side mirror of the edge entries
    edge_index = {pair: eid for eid, pair in enumerate(g.edges)}
    edge_index_get = edge_index.get
    for generation in range(cfg.max_generations):
        starts = select_start_nodes(
            g, hits, cfg, generation, _substream(seed, generation, _START_LANE)
        )
        memories = [
            _fast_walk(adjacency, edge_weights, start, memory_size, _WalkStream(seed, generation, k))
            for k, start in enumerate(starts)
        ]
        for memory in memories:
            # combined pair-count and hit update, in agent order
            nodes = sorted(set(memory))
            for i in range(len(nodes) - 1):
                u = nodes[i]
                for v in nodes[i + 1 :]:
                    key = (u, v)
                    counts[key] = counts_get(key, 0) + 1
                    eid = edge_index_get(key)
                    if eid is not None:
                        edge_weights[eid] += 1
            for node in memory:
                hits[node] += 1
        generations_run = generation + 1
        if exploration_done(hits, cfg):
            break
    else:
        cap_hit = True
    return ExplorationResult(
        weights=weights, hits=hits, generations_run=generations_run, cap_hit=cap_hit
    )
