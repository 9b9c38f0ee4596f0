import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_arrows
from ramsey_gadgets import (ARROWS, DOES_NOT_ARROW, MINIMAL, NOT_MINIMAL,
                            NO_BUDGET, UNKNOWN, ArrowInstance, Budget,
                            EdgeColoring, GraphError, arrows, complete_graph,
                            cycle_graph, extendable, from_edges,
                            is_minimal, min_degree_stats, minimalize,
                            path_graph, sq_lower_bound, star_graph,
                            to_dimacs, verify_witness)


def run(host, target, q=2, budget=NO_BUDGET, workers=1):
    return arrows(ArrowInstance.create(host, target, q, budget), workers)


# classic ground truth, frozen: R(3,3) = 6
def test_k6_arrows_k3():
    assert run(complete_graph(6), complete_graph(3)).verdict == ARROWS


def test_k5_does_not_arrow_k3_with_witness():
    res = run(complete_graph(5), complete_graph(3))
    assert res.verdict == DOES_NOT_ARROW
    inst = ArrowInstance.create(complete_graph(5), complete_graph(3), 2)
    assert verify_witness(inst, res.witness)


def test_witness_rejection():
    inst = ArrowInstance.create(complete_graph(6), complete_graph(3), 2)
    mono = EdgeColoring.from_map(2, {e: 1 for e in range(15)})
    assert not verify_witness(inst, mono)


@pytest.mark.parametrize("host,target,q", [
    (complete_graph(5), complete_graph(3), 2),
    (complete_graph(4), path_graph(3), 2),
    (cycle_graph(5), path_graph(3), 2),
    (star_graph(5), star_graph(3), 2),
    (star_graph(4), star_graph(3), 2),
    (complete_graph(4), path_graph(4), 2),
    (cycle_graph(6), path_graph(4), 3),
])
def test_engine_matches_naive_oracle(host, target, q):
    assert run(host, target, q).verdict == naive_arrows(host, target, q)


# K_{1,2m-1} -> K_{1,m} in 2 colors; one leaf fewer breaks it
def test_star_threshold():
    assert run(star_graph(5), star_graph(3)).verdict == ARROWS
    assert run(star_graph(4), star_graph(3)).verdict == DOES_NOT_ARROW


def test_monotone_under_supergraph():
    # adding edges can only help arrowing
    host = complete_graph(6)
    sub = host.delete_edge(0)
    if run(sub, complete_graph(3)).verdict == ARROWS:
        assert run(host, complete_graph(3)).verdict == ARROWS


def test_budget_exhaustion_is_first_class():
    res = run(complete_graph(6), complete_graph(3), budget=Budget(max_nodes=3))
    assert res.verdict == UNKNOWN
    assert res.witness is None


def test_parallel_agrees_with_serial():
    for workers in (1, 2):
        assert run(complete_graph(6), complete_graph(3),
                   workers=workers).verdict == ARROWS
        assert run(complete_graph(5), complete_graph(3),
                   workers=workers).verdict == DOES_NOT_ARROW


def test_extendable():
    host = complete_graph(5)
    target = complete_graph(3)
    free = extendable(host, EdgeColoring.from_map(2, {}), target, 2)
    assert free.extendable
    # forcing a monochromatic triangle directly
    tri = [host.edge_id(0, 1), host.edge_id(0, 2), host.edge_id(1, 2)]
    stuck = extendable(host, EdgeColoring.from_map(2, {e: 1 for e in tri}),
                       target, 2)
    assert not stuck.extendable
    assert stuck.certificate is not None
    assert set(stuck.certificate) == set(tri)


def test_extendable_respects_partial():
    res = extendable(complete_graph(5), EdgeColoring.from_map(2, {0: 2}),
                     complete_graph(3), 2)
    assert res.extendable
    assert res.witness.color_of(0) == 2
    assert verify_witness(
        ArrowInstance.create(complete_graph(5), complete_graph(3), 2),
        res.witness)


def test_is_minimal():
    # K_6 arrows K_3 and every edge is needed
    assert is_minimal(complete_graph(6), complete_graph(3), 2)
    # K_{1,5} is minimal for K_{1,3}, K_{1,6} is not
    assert is_minimal(star_graph(5), star_graph(3), 2).verdict == MINIMAL
    res = is_minimal(star_graph(6), star_graph(3), 2)
    assert res.verdict == NOT_MINIMAL
    assert res.removable_edge is not None
    # non-arrowing graphs are not minimal
    assert is_minimal(complete_graph(5), complete_graph(3), 2).verdict == NOT_MINIMAL


def test_minimalize_star():
    g, verdict = minimalize(star_graph(7), star_graph(3), 2)
    assert verdict == MINIMAL
    # the only minimal subgraph is the 5-leaf star (plus isolated leaves)
    assert sorted(d for d in g.degrees() if d > 0) == [1, 1, 1, 1, 1, 5]


def test_degree_stats_and_bound():
    stats = min_degree_stats(star_graph(5))
    assert stats.min_degree == 1 and stats.min_count == 5
    assert stats.max_degree == 5
    assert stats.histogram_dict() == {1: 5, 5: 1}
    assert sq_lower_bound(complete_graph(3), 2) == 3
    assert sq_lower_bound(path_graph(4), 2) == 1
    with pytest.raises(GraphError):
        sq_lower_bound(from_edges(2, []), 2)


def test_dimacs_export():
    inst = ArrowInstance.create(complete_graph(3), path_graph(3), 2)
    text = to_dimacs(inst)
    lines = text.strip().splitlines()
    header = next(l for l in lines if l.startswith("p")).split()
    assert header[:2] == ["p", "cnf"]
    nvars, nclauses = int(header[2]), int(header[3])
    assert nvars == 6                       # 3 edges x 2 colors
    assert len([l for l in lines if not l.startswith(("c", "p"))]) == nclauses
    for line in lines:
        if line.startswith(("c", "p")):
            continue
        assert line.split()[-1] == "0"


def test_dimacs_satisfiable_iff_not_arrowing():
    # brute-force the CNF for a tiny arrowing instance
    import itertools

    def sat(inst):
        text = to_dimacs(inst)
        clauses = [[int(x) for x in l.split()[:-1]]
                   for l in text.splitlines()
                   if l and not l.startswith(("c", "p"))]
        nvars = max(abs(x) for cl in clauses for x in cl)
        for bits in itertools.product((False, True), repeat=nvars):
            def val(lit):
                return bits[abs(lit) - 1] if lit > 0 else not bits[abs(lit) - 1]
            if all(any(val(x) for x in cl) for cl in clauses):
                return True
        return False

    yes = ArrowInstance.create(star_graph(4), star_graph(3), 2)   # colorable
    no = ArrowInstance.create(star_graph(5), star_graph(3), 2)    # arrows
    assert sat(yes)
    assert not sat(no)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_random_hosts_match_oracle(data):
    n = data.draw(st.integers(3, 5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = sorted(data.draw(st.sets(st.sampled_from(pairs), min_size=2)))
    host = from_edges(n, chosen)
    target = data.draw(st.sampled_from([path_graph(3), complete_graph(3)]))
    assert run(host, target, 2).verdict == naive_arrows(host, target, 2)
