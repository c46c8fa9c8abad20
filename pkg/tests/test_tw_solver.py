import random

from pohp import tw_solver as tw
from pohp.instances import validate_solution
from pohp.oracle import oracle_solve

from helpers import build_instance, complete_graph, cycle_graph, path_graph, \
    random_instance_from_layout


def test_cycle_cn_unconstrained():
    for k in (5, 6, 8):
        names, edges = cycle_graph(k)
        inst = build_instance(names, edges, kind="cycle")
        sol = tw.solve_cycle_tw3(inst)
        assert sol is not None and validate_solution(inst, sol).valid


def test_cycle_crossing_constraints_infeasible():
    names, edges = cycle_graph(4)
    inst = build_instance(names, edges,
                          [("v1", "v0"), ("v1", "v2"), ("v3", "v0"), ("v3", "v2")],
                          kind="cycle")
    assert tw.solve_cycle_tw3(inst) is None


def test_k4_avoids_weighted_edge():
    names, edges = complete_graph(4)
    edges = [(u, v, 5 if (u, v) == ("v0", "v1") else 0) for u, v in edges]
    inst = build_instance(names, edges, kind="cycle")
    sol = tw.solve_cycle_tw3(inst)
    assert sol is not None and sol.weight == 0


def test_path_examples():
    names, edges = path_graph(4)
    inst = build_instance(names, edges, [("v3", "v0")], kind="path")
    sol = tw.solve_path_tw2(inst)
    assert sol is not None and sol.order == ("v3", "v2", "v1", "v0")

    star = build_instance(["c", "l1", "l2", "l3"],
                          [("c", "l1"), ("c", "l2"), ("c", "l3")], kind="path")
    assert tw.solve_path_tw2(star) is None


def random_tw_instance(n, width, density, rng, kind):
    """Random graph assembled along a random tree of width-size cliques,
    so treewidth <= width by construction."""
    from pohp.graphs import Graph
    from pohp.orders import close_order
    from pohp.instances import Instance
    from helpers import random_order_pairs

    g = Graph([f"v{i}" for i in range(n)])
    bags = [list(range(min(width + 1, n)))]
    edges = set()
    for v in range(len(bags[0]), n):
        host = rng.choice(bags)
        drop = rng.randrange(len(host))
        bag = host[:drop] + host[drop + 1:] + [v]
        bags.append(bag)
        for u in bag:
            if u != v and rng.random() < 0.8:
                edges.add((min(u, v), max(u, v)))
    for v in range(1, n):
        if not any((min(u, v), max(u, v)) in edges for u in range(v)):
            u = rng.randrange(v)
            edges.add((u, v))
    for u, v in sorted(edges):
        g.add_edge_idx(u, v, rng.randrange(10))
    order = close_order(n, random_order_pairs(n, density, rng))
    return Instance(g, order, kind)


def _agree(inst, sol):
    res = oracle_solve(inst)
    if res.status == "infeasible":
        assert sol is None
    else:
        assert sol is not None
        assert validate_solution(inst, sol).valid
        assert sol.weight == res.solution.weight


def test_oracle_equivalence_cycles():
    rng = random.Random(303)
    stats = {}
    for trial in range(60):
        n = rng.randint(5, 11)
        inst = random_tw_instance(n, 3, 0.25, rng, "cycle")
        sol = tw.solve_cycle_tw3(inst, stats=stats)
        _agree(inst, sol)
        if n >= 5:
            assert stats["distinct_mappings"] <= 5 * n * max(stats["nodes"], 1)


def test_oracle_equivalence_paths():
    rng = random.Random(404)
    for trial in range(60):
        n = rng.randint(4, 11)
        inst = random_tw_instance(n, 2, 0.25, rng, "path")
        sol = tw.solve_path_tw2(inst)
        _agree(inst, sol)
