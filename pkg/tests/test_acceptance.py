"""Exit criteria, one test per criterion (marker ``AC<n>``).

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import subprocess
import sys

import networkx as nx
import pytest

from powergraphs.algo import clique_number_exact, connected_components, diameter, is_connected, maximal_cliques
from powergraphs.claims import FAIL, sylow_shape_ok, verify
from powergraphs.divisors import divisors, enumerate_mcd_sets, euler_phi, is_mcd_chain, weight
from powergraphs.graph import Variant, build_linkage_graph, build_power_graph
from powergraphs.group import is_cyclic, is_generalized_quaternion, is_nilpotent, is_p_group


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_connected(g):
    return g.n <= 1 or nx.is_connected(nx_graph(g))


def formula(G):
    return max(weight(int(o)) for o in set(G.elem_order.tolist()))


@pytest.mark.AC1
def test_clique_formula_matches_exact_solver(corpus_groups, grp):
    checked = 0
    for G in corpus_groups:
        if G.order > 200:
            continue
        reduced = clique_number_exact(build_power_graph(G))
        full = clique_number_exact(build_power_graph(G, Variant.FULL))
        assert reduced == formula(G) == full - 1, G.name
        checked += 1
    assert checked > 100
    assert clique_number_exact(build_power_graph(grp("C12"))) == 8
    assert clique_number_exact(build_power_graph(grp("C6"))) == 4
    for p, k in [(2, 1), (2, 5), (3, 3), (5, 2), (7, 2)]:
        assert clique_number_exact(build_power_graph(grp(f"C{p**k}"))) == p**k - 1


@pytest.mark.AC2
def test_nilpotent_connectivity_trichotomy(corpus_groups):
    seen = 0
    for G in corpus_groups:
        if not is_nilpotent(G):
            continue
        seen += 1
        predicted = is_cyclic(G) or is_generalized_quaternion(G) or is_p_group(G) is None
        assert nx_connected(build_power_graph(G)) == predicted, G.name
    assert seen > 50


def predicted_nilpotent_diameter(G, n_vertices):
    if n_vertices <= 1:
        return 0
    if is_cyclic(G) and is_p_group(G) is not None:
        return 1
    if is_cyclic(G) or sylow_shape_ok(G):
        return 2
    return 4


@pytest.mark.AC3
def test_diameter_classification(corpus_groups, grp):
    for G in corpus_groups:
        if not is_nilpotent(G):
            continue
        g = build_power_graph(G)
        if not nx_connected(g):
            continue
        d = diameter(g).value
        if g.n > 1:
            assert d == nx.diameter(nx_graph(g)), G.name
        assert d in (0, 1, 2, 4), G.name
        assert d == predicted_nilpotent_diameter(G, g.n), G.name
        for claim in ("DIAM-1", "DIAM-2", "DIAM-4"):
            assert verify(claim, G).status != FAIL, (claim, G.name)
    named = {name: diameter(build_power_graph(grp(name))).value for name in ("C12", "Q8", "S3xZ6")}
    assert named == {"C12": 2, "Q8": 2, "S3xZ6": 4}


@pytest.mark.AC4
def test_dicyclic_odd_diameter_three(grp):
    for n in (3, 5, 7, 9):
        g = build_power_graph(grp(f"Dic{n}"))
        assert diameter(g).value == 3 == nx.diameter(nx_graph(g))


@pytest.mark.AC5
def test_disconnection_witnesses(grp):
    assert not nx_connected(build_power_graph(grp("S3xS3")))
    assert not is_connected(build_power_graph(grp("S3xS3")))
    assert nx_connected(build_power_graph(grp("S3xZ6")))
    assert is_connected(build_power_graph(grp("S3xZ6")))
    g = build_power_graph(grp("S3"))
    assert connected_components(g).count == 4 == nx.number_connected_components(nx_graph(g))


def p_group_family():
    out = []
    for p in (2, 3, 5):
        out += [f"C{p**k}" for k in range(1, 9) if p**k <= 256]
        out += [f"E{p}^2", f"E{p}^3"]
    out += [f"D{2**k}" for k in range(2, 8)]
    out += [f"Dic{2**k}" for k in range(1, 7)]
    return out


@pytest.mark.AC6
def test_p_group_components_equal_order_p_subgroups(grp):
    for text in p_group_family():
        G = grp(text)
        p = is_p_group(G)
        assert p is not None and G.order <= 256
        order_p = int((G.elem_order == p).sum()) // (p - 1)
        g = build_power_graph(G)
        assert connected_components(g).count == nx.number_connected_components(nx_graph(g)) == order_p, text
    assert connected_components(build_power_graph(grp("C2xC2"))).count == 3
    assert connected_components(build_power_graph(grp("C3xC3"))).count == 4


@pytest.mark.AC7
def test_linkage_equivalence(corpus_groups):
    for G in corpus_groups:
        assert nx_connected(build_power_graph(G)) == nx_connected(build_linkage_graph(G)), G.name


@pytest.mark.AC8
def test_neighborhood_and_completeness(corpus_groups):
    for G in corpus_groups:
        for claim in ("OBS-NBHD", "OBS-COMPLETE"):
            assert verify(claim, G).status != FAIL, (claim, G.name)
        # independent restatement of the completeness observation
        if G.order > 1:
            full = nx_graph(build_power_graph(G, Variant.FULL))
            complete = full.number_of_edges() == G.order * (G.order - 1) // 2
            assert complete == (is_cyclic(G) and is_p_group(G) is not None), G.name


@pytest.mark.AC9
def test_mcd_machinery_up_to_10000():
    for n in range(1, 10001):
        sets = enumerate_mcd_sets(n)
        best = max((s.weight for s in sets), default=0)
        assert weight(n) == best, n
        assert all(is_mcd_chain(n, s.chain) for s in sets), n
        divs = divisors(n)
        assert sum(euler_phi(d) for d in divs) == n
        assert all(weight(d) <= weight(n) for d in divs)


@pytest.mark.AC10
def test_maximal_clique_structure(small_corpus_groups, grp):
    for G in small_corpus_groups:
        g = build_power_graph(G)
        cl = maximal_cliques(g, limit=200_000)
        assert not cl.truncated, G.name
        for clique in cl:
            elems = [g.vertices[v] for v in clique]
            top = max(elems, key=lambda x: int(G.elem_order[x]))
            span = set(G.powers(top))
            assert set(elems) <= span
            # <top> is a maximal cyclic subgroup: no element has a strictly larger span
            assert not any(span < set(G.powers(z)) for z in range(G.order)), G.name
            orders = tuple(sorted({int(G.elem_order[x]) for x in elems}))
            assert is_mcd_chain(int(G.elem_order[top]), orders), (G.name, orders)
    C12 = grp("C12")
    g = build_power_graph(C12)
    sizes = {
        tuple(sorted({int(C12.elem_order[g.vertices[v]]) for v in c})): len(c) for c in maximal_cliques(g)
    }
    assert sizes[(2, 4, 12)] == 7


@pytest.mark.AC11
def test_verify_json_is_byte_identical():
    cmd = [sys.executable, "-m", "powergraphs", "verify", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["summary"]["fail"] == 0
