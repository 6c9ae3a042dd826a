import random
from itertools import permutations

import pytest

from looptrans.algebra import SignedPerm, compose
from looptrans.graph import (
    LoopSignedGraph,
    action_on_double_cover,
    canonical_form,
    components,
    disjoint_union,
    double_cover,
    is_bipartite_loopless,
    is_canonical,
    is_connected,
    is_isomorphic,
    is_treelike,
    loopless_version,
    permute,
    subgraph,
    validate,
)

from conftest import random_graph


def _loops_only(vertices, colors, sign="N"):
    return LoopSignedGraph.build(
        vertices, [([], {v: sign for v in range(1, vertices + 1)})] * colors
    )


def test_build_rejects_double_incidence():
    with pytest.raises(ValueError):
        LoopSignedGraph.build(3, [([(1, 2), (2, 3)], {})])
    with pytest.raises(ValueError):
        LoopSignedGraph.build(2, [([(1, 2)], {1: "D"})])
    with pytest.raises(ValueError):
        LoopSignedGraph.build(2, [([], {1: "D"})])  # vertex 2 uncovered


def test_validate_fixtures(gww, square_triangle, band15):
    for entry in (gww, square_triangle, band15):
        for g in entry.graphs:
            assert validate(g) is None


def test_validate_negative_offdiagonal():
    bad = LoopSignedGraph(2, (SignedPerm((2, 1), (-1, -1)),))
    assert "negative" in validate(bad)


def test_validate_not_symmetric():
    bad = LoopSignedGraph(3, (SignedPerm((2, 3, 1), (1, 1, 1)),))
    assert "symmetric" in validate(bad)


def test_components(gww):
    g = gww.graphs[0]
    assert components(g) == (tuple(range(1, 8)),)
    assert is_connected(g)
    loops = _loops_only(4, 2)
    assert components(loops) == ((1,), (2,), (3,), (4,))
    both = disjoint_union([g, gww.graphs[1]])
    assert len(components(both)) == 2


def test_loopless_counts(gww, band15):
    assert len(loopless_version(gww.graphs[0])) == 6
    assert len(loopless_version(_loops_only(3, 3))) == 0
    assert len(loopless_version(band15.graphs[0])) == 16


def test_treelike(gww, band15):
    assert is_treelike(gww.graphs[0])
    assert not is_treelike(band15.graphs[0])  # 16 edges on 15 vertices
    assert is_treelike(_loops_only(1, 3))


def test_double_edges_are_cycles():
    g = LoopSignedGraph.build(2, [([(1, 2)], {}), ([(1, 2)], {}), ([], {1: "N", 2: "N"})])
    assert validate(g) is None
    assert not is_treelike(g)
    assert is_bipartite_loopless(g)  # a 2-cycle is even


def test_bipartite(gww, band15):
    assert is_bipartite_loopless(gww.graphs[0])  # trees are bipartite
    assert is_bipartite_loopless(band15.graphs[0])
    assert not is_bipartite_loopless(band15.graphs[1])


def test_canonical_invariant_under_relabeling(gww):
    rng = random.Random(20)
    for g in [gww.graphs[0], random_graph(rng, 6, 3), random_graph(rng, 5, 2)]:
        base = canonical_form(g)
        for _ in range(25):
            relabel = list(range(1, g.vertices + 1))
            rng.shuffle(relabel)
            assert canonical_form(permute(g, tuple(relabel))).code == base.code


def test_canonical_relabeling_realizes_code(gww):
    rng = random.Random(21)
    for g in [gww.graphs[0], gww.graphs[1], random_graph(rng, 5, 3)]:
        form = canonical_form(g)
        relabeled = permute(g, form.relabeling)
        assert is_canonical(relabeled)
        assert canonical_form(relabeled).code == form.code


def test_gww_pair_not_isomorphic_exhaustive(gww):
    g1, g2 = gww.graphs
    assert canonical_form(g1).code != canonical_form(g2).code
    assert is_isomorphic(g1, g2) is None
    # independent oracle: no relabeling of the 7 vertices maps one to the other
    for relabel in permutations(range(1, 8)):
        assert permute(g1, relabel) != g2


def test_single_vertex_loop_order_matters():
    a = LoopSignedGraph.build(1, [([], {1: "D"}), ([], {1: "N"}), ([], {1: "N"})])
    b = LoopSignedGraph.build(1, [([], {1: "N"}), ([], {1: "D"}), ([], {1: "N"})])
    assert canonical_form(a).code != canonical_form(b).code


def test_is_isomorphic_returns_realizing_permutation(gww):
    rng = random.Random(22)
    g = gww.graphs[0]
    assert is_isomorphic(g, g) == tuple(range(1, 8))
    relabel = list(range(1, 8))
    rng.shuffle(relabel)
    shuffled = permute(g, tuple(relabel))
    found = is_isomorphic(g, shuffled)
    assert found is not None
    assert permute(g, found) == shuffled


def test_subgraph_extracts_components(gww):
    g = disjoint_union([gww.graphs[0], _loops_only(2, 3)])
    comps = components(g)
    assert subgraph(g, comps[0]) == gww.graphs[0]
    with pytest.raises(ValueError):
        subgraph(g, (1, 2, 3))  # not a union of components


def test_double_cover_no_dirichlet_gives_two_copies():
    g = _loops_only(3, 2, "N")
    cover = double_cover(g)
    assert cover.vertices == 6
    assert len(components(cover)) == 6  # loops-only graph: copies stay loops
    h = LoopSignedGraph.build(2, [([(1, 2)], {}), ([], {1: "N", 2: "N"})])
    cover_h = double_cover(h)
    comps = components(cover_h)
    assert len(comps) == 2
    assert subgraph(cover_h, comps[0]) == h


def test_double_cover_single_dirichlet_loop():
    g = LoopSignedGraph.build(1, [([], {1: "D"})])
    cover = double_cover(g)
    assert cover.vertices == 2
    assert cover.edges(1) == [(1, 2)]


def test_double_cover_gww_connected(gww):
    cover = double_cover(gww.graphs[0])
    assert cover.vertices == 14
    assert is_connected(cover)


def test_group_acts_faithfully_on_double_cover(gww):
    # products of adjacency matrices act as distinct vertex permutations
    g = gww.graphs[0]
    seen = {}
    rng = random.Random(23)
    for _ in range(200):
        word = [rng.randint(1, 3) for _ in range(rng.randint(0, 6))]
        acc = SignedPerm.identity(7)
        for c in word:
            acc = compose(acc, g.color(c))
        action = action_on_double_cover(acc)
        if action in seen:
            assert seen[action] == acc
        else:
            seen[action] = acc
