"""Artifact writers: CSV roundtrip, VTK structure, MatrixMarket roundtrip."""

import numpy as np
import pytest
import scipy.io

from pfmax import io_utils
from pfmax.mesh import build_unit_cube, build_unit_square


def test_csv_roundtrip(tmp_path):
    header = ["level", "c", "note"]
    rows = [[1, 0.123456789, "x"], [2, None, "y"]]
    path = tmp_path / "t.csv"
    io_utils.write_csv(path, header, rows)
    got_header, got_rows = io_utils.read_csv(path)
    assert got_header == header
    assert got_rows[0][0] == 1.0
    assert got_rows[0][1] == pytest.approx(0.12345679, abs=1e-12)  # 8 decimals
    assert got_rows[0][2] == "x"
    assert got_rows[1][1] is None


def test_csv_string_matches_file(tmp_path):
    header, rows = ["a"], [[1.5]]
    path = tmp_path / "t.csv"
    io_utils.write_csv(path, header, rows)
    # read_bytes: read_text would translate the \r\n line terminators of csv
    assert io_utils.csv_string(header, rows) == path.read_bytes().decode()


def test_format_cell():
    assert io_utils.format_cell(None) == ""
    assert io_utils.format_cell(0.1) == "0.10000000"
    assert io_utils.format_cell("exact") == "exact"
    assert io_utils.format_cell(3) == "3"


@pytest.mark.parametrize("build,cell_type", [(build_unit_square, "5"),
                                             (build_unit_cube, "10")])
def test_vtk_structure(tmp_path, build, cell_type):
    mesh = build(1)
    path = tmp_path / "m.vtk"
    io_utils.write_vtk(path, mesh,
                       point_data={"u": np.arange(mesh.num_nodes)},
                       cell_data={"v": np.ones((mesh.num_cells, mesh.dim)),
                                  "w": np.ones(mesh.num_cells)})
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# vtk DataFile")
    assert f"POINTS {mesh.num_nodes} double" in lines
    assert f"CELLS {mesh.num_cells} {mesh.num_cells * (mesh.dim + 2)}" in lines
    ct = lines.index(f"CELL_TYPES {mesh.num_cells}")
    assert lines[ct + 1] == cell_type
    assert f"POINT_DATA {mesh.num_nodes}" in lines
    assert "VECTORS v double" in lines
    assert "SCALARS w double 1" in lines
    # vectors are zero-padded to 3 components
    vrow = lines[lines.index("VECTORS v double") + 1].split()
    assert len(vrow) == 3


def test_boundary_labels_file(tmp_path):
    mesh = build_unit_square(1)
    path = tmp_path / "labels.txt"
    io_utils.write_boundary_labels(path, mesh)
    body = [ln.split() for ln in path.read_text().splitlines()[1:]]
    assert len(body) == len(mesh.boundary_facets)
    for facet, label, *nodes in body:
        assert mesh.facet_labels[int(facet)] == label
        assert [int(n) for n in nodes] == mesh.facets[int(facet)].tolist()


def test_matrix_market_roundtrip(tmp_path):
    from pfmax.assembly import FeSpace, assemble_stiffness
    K = assemble_stiffness(FeSpace("P1", build_unit_square(1)))
    path = tmp_path / "K.mtx"
    io_utils.write_matrix_market(path, K)
    back = scipy.io.mmread(str(path))
    assert np.abs((back - K).toarray()).max() < 1e-15
