"""Structured meshes: entity tables, labels, selections, BFS ordering."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pfmax.mesh import (
    LABELS_2D,
    LABELS_3D,
    bfs_boundary_order,
    build_domain,
    build_fichera,
    build_lshape,
    build_unit_cube,
    build_unit_square,
    select_boundary,
)

from _reference import CUBE_COUNTS, SQUARE_COUNTS


@pytest.mark.parametrize("level", [1, 2, 3])
def test_square_entity_counts(level):
    m = build_unit_square(level)
    assert (m.num_cells, m.num_nodes, len(m.edges),
            len(m.boundary_facets)) == SQUARE_COUNTS[level]


@pytest.mark.parametrize("level", [1, 2])
def test_cube_entity_counts(level):
    m = build_unit_cube(level)
    assert (m.num_cells, m.num_nodes, len(m.edges), len(m.faces),
            len(m.boundary_facets)) == CUBE_COUNTS[level]


@pytest.mark.parametrize("domain,volume", [
    ("square", 1.0), ("lshape", 0.75), ("cube", 1.0), ("fichera", 0.875)])
def test_orientation_and_volume(domain, volume):
    m = build_domain(domain, 1)
    vols = m.cell_volumes()
    assert np.all(vols > 0)
    assert vols.sum() == pytest.approx(volume, rel=1e-12)


def test_truncated_domain_cell_counts():
    assert build_lshape(1).num_cells == 32 * 3 // 4
    assert build_fichera(1).num_cells == 384 * 7 // 8


def test_boundary_labels_square():
    m = build_unit_square(1)
    labels = list(m.facet_labels.values())
    assert m.boundary_labels() == set(LABELS_2D)
    for lab in LABELS_2D:
        assert labels.count(lab) == 4  # 2^(level+1) facets per side


def test_boundary_labels_cube():
    m = build_unit_cube(1)
    labels = list(m.facet_labels.values())
    assert m.boundary_labels() == set(LABELS_3D)
    for lab in LABELS_3D:
        assert labels.count(lab) == 32  # 2 * (2^(level+1))^2 per face


def test_boundary_label_geometry():
    # 'b' is the bottom: last coordinate == 0 on the facet
    for m, axis in [(build_unit_square(1), 1), (build_unit_cube(1), 2)]:
        for f, lab in m.facet_labels.items():
            coords = m.nodes[m.facets[f]]
            if lab == "b":
                assert np.allclose(coords[:, axis], 0.0)
            if lab == "t":
                assert np.allclose(coords[:, axis], 1.0)


def test_select_boundary_square():
    m = build_unit_square(1)
    sel = select_boundary(m, ("b",))
    assert len(sel.facets) == 4
    assert len(sel.constrained_nodes) == 5
    assert len(sel.constrained_edges) == 4
    empty = select_boundary(m, None)
    assert len(empty.facets) == 0 and len(empty.constrained_nodes) == 0


def test_select_boundary_cube_closure():
    m = build_unit_cube(1)
    sel = select_boundary(m, ("b",))
    assert len(sel.facets) == 32
    assert len(sel.constrained_nodes) == 25         # 5x5 grid of nodes
    # edges of the constrained faces only (the 2D level-1 edge count)
    assert len(sel.constrained_edges) == 56


def test_select_boundary_explicit_facets():
    m = build_unit_square(1)
    subset = m.boundary_facets[:3].tolist()
    sel = select_boundary(m, subset)
    assert sel.labels is None
    assert sorted(sel.facets.tolist()) == sorted(subset)
    with pytest.raises(ValueError):
        select_boundary(m, [int(np.setdiff1d(np.arange(len(m.edges)),
                                             m.boundary_facets)[0])])
    with pytest.raises(ValueError):
        select_boundary(m, ("nope",))


@pytest.mark.parametrize("domain,level", [("square", 1), ("lshape", 1),
                                          ("cube", 1), ("fichera", 1)])
def test_bfs_order_covers_boundary_connectedly(domain, level):
    m = build_domain(domain, level)
    seed = int(m.boundary_facets.min())
    order = bfs_boundary_order(m, seed)
    assert sorted(order.tolist()) == sorted(m.boundary_facets.tolist())
    assert order[0] == seed
    # each later facet shares a node with some earlier facet (connected front)
    seen_nodes = set(m.facets[order[0]].tolist())
    for f in order[1:]:
        fn = set(m.facets[f].tolist())
        assert fn & seen_nodes
        seen_nodes |= fn


def test_bfs_rejects_interior_seed():
    m = build_unit_square(1)
    interior = np.setdiff1d(np.arange(len(m.edges)), m.boundary_facets)
    with pytest.raises(ValueError):
        bfs_boundary_order(m, int(interior[0]))


def test_unknown_domain():
    with pytest.raises(ValueError):
        build_domain("torus", 1)


@given(st.sampled_from(["square", "cube"]),
       st.sets(st.sampled_from(LABELS_3D)))
def test_label_selection_is_union_of_sides(domain, labels):
    m = build_domain(domain, 1)
    valid = set(LABELS_2D if m.dim == 2 else LABELS_3D)
    labels = frozenset(labels) & valid
    sel = select_boundary(m, sorted(labels))
    per_side = [select_boundary(m, (lab,)).facets for lab in sorted(labels)]
    expect = np.unique(np.concatenate(per_side)) if per_side else []
    assert sel.facets.tolist() == list(expect)
    nodes = [select_boundary(m, (lab,)).constrained_nodes
             for lab in sorted(labels)]
    expect_nodes = np.unique(np.concatenate(nodes)) if nodes else []
    assert sel.constrained_nodes.tolist() == list(expect_nodes)
