import math
import random

import pytest

from commwalker import (
    ExplorationConfig,
    WeightMatrix,
    apply_memory_update,
    exploration_done,
    explore,
    move_probabilities,
    run_walk,
    select_start_nodes,
)
from commwalker.errors import ConfigInvalidError, IsolatedNodeError, NotConnectedError
from commwalker.exploration import _START_LANE, _WalkStream, _substream
from commwalker.graph import Graph

from _helpers import BARBELL_BRIDGE, barbell6, karate, pairs_graph, path_graph


def star_graph(k):
    return pairs_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def test_move_probabilities_uniform_on_zero_weights():
    g = star_graph(3)
    probs = move_probabilities(g, WeightMatrix(), 0, set())
    assert probs == pytest.approx([1 / 3, 1 / 3, 1 / 3])


def test_move_probabilities_weighted():
    # weights (0, 1, 3) -> smoothed masses (1, 2, 4) over a total of 7
    g = star_graph(3)
    w = WeightMatrix()
    w.counts[(0, 2)] = 1
    w.counts[(0, 3)] = 3
    probs = move_probabilities(g, w, 0, set())
    assert probs == pytest.approx([1 / 7, 2 / 7, 4 / 7])
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)


def test_move_probabilities_tabu_leaves_single_candidate():
    g = pairs_graph(3, [(0, 1), (0, 2)])
    probs = move_probabilities(g, WeightMatrix(), 0, {1})
    assert probs == [0.0, 1.0]


def test_move_probabilities_relaxes_when_all_tabu():
    g = pairs_graph(3, [(0, 1), (0, 2)])
    probs = move_probabilities(g, WeightMatrix(), 0, {1, 2})
    assert probs == pytest.approx([0.5, 0.5])
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)


def test_move_probabilities_isolated_node():
    g = Graph.from_edges(["a", "b", "c"], [(0, 1)])
    with pytest.raises(IsolatedNodeError):
        move_probabilities(g, WeightMatrix(), 2, set())


def test_run_walk_two_step_path_splits_evenly():
    g = path_graph(3)
    counts = {1: 0, 2: 0}  # memory from start=1 ends at 0 or 2
    for seed in range(2000):
        mem = run_walk(g, WeightMatrix(), 1, 2, random.Random(seed))
        assert mem[0] == 1
        counts[1 if mem[1] == 0 else 2] += 1
    assert abs(counts[1] - counts[2]) < 200


def test_run_walk_dead_end_relaxes_tabu():
    g = path_graph(2)
    mem = run_walk(g, WeightMatrix(), 0, 3, random.Random(0))
    assert mem == [0, 1, 0]


def test_run_walk_length_and_adjacency():
    g, _ = karate()
    neighbor_sets = [set(ns) for ns in g.neighbors]
    for seed in range(30):
        mem = run_walk(g, WeightMatrix(), seed % g.node_count, 6, random.Random(seed))
        assert len(mem) == 6
        for a, b in zip(mem, mem[1:]):
            assert b in neighbor_sets[a]


def test_run_walk_from_isolated_node():
    g = Graph.from_edges(["a", "b", "c"], [(0, 1)])
    with pytest.raises(IsolatedNodeError):
        run_walk(g, WeightMatrix(), 2, 3, random.Random(0))


def test_run_walk_barbell_stays_local_from_bridge_endpoint():
    # From the bridge endpoint c with zero weights and memory 4, exact
    # enumeration gives stay 2/3 vs cross 1/3. (From a non-endpoint triangle
    # node the full-memory tabu forces most walks across: see the ledger.)
    g = barbell6()
    start = 2
    triangle_nodes = {0, 1, 2}
    stayed = crossed = 0
    for seed in range(10_000):
        mem = run_walk(g, WeightMatrix(), start, 4, _WalkStream(seed, 0, 0))
        if set(mem) <= triangle_nodes:
            stayed += 1
        else:
            crossed += 1
    assert stayed > crossed
    assert stayed / 10_000 == pytest.approx(2 / 3, abs=0.02)


def test_apply_memory_update_all_pairs():
    w = WeightMatrix()
    apply_memory_update(w, [0, 1, 2])
    assert w.counts == {(0, 1): 1, (0, 2): 1, (1, 2): 1}


def test_apply_memory_update_set_semantics_on_revisit():
    w = WeightMatrix()
    apply_memory_update(w, [0, 1, 0])
    assert w.counts == {(0, 1): 1}


def test_apply_memory_update_accumulates():
    w = WeightMatrix()
    apply_memory_update(w, [0, 1, 2])
    apply_memory_update(w, [1, 2, 3])
    assert w.get(1, 2) == 2
    for u, v in [(0, 1), (0, 2), (1, 3), (2, 3)]:
        assert w.get(u, v) == 1
    assert w.get(0, 3) == 0


def test_weight_matrix_symmetry_and_diagonal():
    w = WeightMatrix()
    w.increment(3, 1)
    assert w.get(1, 3) == 1
    assert w.get(3, 1) == 1
    with pytest.raises(ValueError):
        w.increment(2, 2)


def test_select_start_nodes_generation_zero_distinct():
    g, _ = karate()
    cfg = ExplorationConfig(agent_count=3, memory_size=4)
    starts = select_start_nodes(g, [0] * 34, cfg, 0, random.Random(0))
    assert len(starts) == 3
    assert len(set(starts)) == 3
    assert all(0 <= s < 34 for s in starts)


def test_select_start_nodes_hub_and_least_split():
    g, _ = karate()
    hits = [10, 8, 8, 1] + [0] * 30
    cfg = ExplorationConfig(agent_count=4, memory_size=4, hub_fraction=0.75)
    starts = select_start_nodes(g, hits, cfg, 1, random.Random(0))
    assert starts == [0, 1, 2, 4]


def test_select_start_nodes_all_nodes_when_agents_equal_nodes():
    g = barbell6()
    cfg = ExplorationConfig(agent_count=6, memory_size=3, hub_fraction=1.0)
    starts = select_start_nodes(g, [5, 4, 3, 2, 1, 0], cfg, 1, random.Random(0))
    assert sorted(starts) == [0, 1, 2, 3, 4, 5]


def test_select_start_nodes_repeats_only_when_agents_exceed_nodes():
    g = path_graph(3)
    cfg = ExplorationConfig(agent_count=7, memory_size=3)
    starts = select_start_nodes(g, [0, 1, 2], cfg, 1, random.Random(0))
    assert len(starts) == 7
    assert set(starts) <= {0, 1, 2}


def test_exploration_done_threshold():
    cfg = ExplorationConfig(agent_count=2, memory_size=5)
    assert exploration_done([5, 6, 7], cfg)
    assert not exploration_done([5, 4, 7], cfg)


def test_config_validation():
    with pytest.raises(ConfigInvalidError):
        ExplorationConfig(agent_count=1, memory_size=4).validate()
    with pytest.raises(ConfigInvalidError):
        ExplorationConfig(agent_count=4, memory_size=1).validate()
    with pytest.raises(ConfigInvalidError):
        ExplorationConfig(agent_count=4, memory_size=4, hub_fraction=1.5).validate()
    with pytest.raises(ConfigInvalidError):
        ExplorationConfig(agent_count=4, memory_size=4, max_generations=0).validate()


def test_explore_two_node_graph_single_generation():
    g = path_graph(2)
    cfg = ExplorationConfig(agent_count=2, memory_size=2, seed=5)
    result = explore(g, cfg)
    assert result.generations_run == 1
    assert result.hits == [2, 2]
    assert not result.cap_hit


def test_explore_hit_identity():
    g = barbell6()
    for seed in (0, 1, 2):
        cfg = ExplorationConfig(agent_count=5, memory_size=3, seed=seed)
        result = explore(g, cfg)
        assert sum(result.hits) == result.generations_run * 5 * 3
        assert result.total_hops == sum(result.hits)


def test_explore_deterministic_for_fixed_seed():
    g = barbell6()
    cfg = ExplorationConfig(agent_count=6, memory_size=3, seed=42)
    a = explore(g, cfg)
    b = explore(g, cfg)
    assert a.weights.counts == b.weights.counts
    assert a.hits == b.hits
    assert a.generations_run == b.generations_run


def test_explore_memory_two_weights_only_on_edges():
    g, _ = karate()
    cfg = ExplorationConfig(agent_count=8, memory_size=2, seed=0, max_generations=50)
    result = explore(g, cfg)
    edge_set = set(g.edges)
    assert result.weights.counts
    assert set(result.weights.counts) <= edge_set


def test_explore_matches_manual_generation_loop():
    # explore() == the published ops composed in agent order, including the
    # per-generation mass bookkeeping.
    g = barbell6()
    cfg = ExplorationConfig(agent_count=4, memory_size=3, seed=9)
    expected = explore(g, cfg)

    w = WeightMatrix()
    hits = [0] * g.node_count
    generations = 0
    for generation in range(cfg.max_generations):
        starts = select_start_nodes(g, hits, cfg, generation, _substream(cfg.seed, generation, _START_LANE))
        memories = [
            run_walk(g, w, start, cfg.memory_size, _WalkStream(cfg.seed, generation, k))
            for k, start in enumerate(starts)
        ]
        mass_before = w.total_mass()
        pair_count = 0
        for memory in memories:
            apply_memory_update(w, memory)
            pair_count += math.comb(len(set(memory)), 2)
            for node in memory:
                hits[node] += 1
        assert w.total_mass() == mass_before + pair_count
        assert pair_count >= cfg.agent_count  # strict growth every generation
        generations += 1
        if exploration_done(hits, cfg):
            break
    assert w.counts == expected.weights.counts
    assert hits == expected.hits
    assert generations == expected.generations_run


def test_explore_rejects_disconnected_or_trivial():
    g = Graph.from_edges(["a", "b", "c", "d"], [(0, 1), (2, 3)])
    cfg = ExplorationConfig(agent_count=2, memory_size=2)
    with pytest.raises(NotConnectedError):
        explore(g, cfg)
    single = Graph.from_edges(["a"], [])
    with pytest.raises(NotConnectedError):
        explore(single, ExplorationConfig(agent_count=2, memory_size=2))


def test_explore_cap_hit_flag():
    g = barbell6()
    cfg = ExplorationConfig(agent_count=4, memory_size=3, seed=0, max_generations=1)
    result = explore(g, cfg)
    assert result.cap_hit
    assert result.generations_run == 1


def test_explore_barbell_bridge_below_median_intra():
    g = barbell6()
    bridge = BARBELL_BRIDGE
    wins = 0
    for seed in range(10):
        result = explore(g, ExplorationConfig.for_graph(g, seed=seed))
        w = result.weights
        intra = sorted(w.get(u, v) for (u, v) in g.edges if (u, v) != bridge)
        median = intra[len(intra) // 2]
        if w.get(*bridge) < median:
            wins += 1
    assert wins >= 9
