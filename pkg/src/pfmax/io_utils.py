"""Artifact writers: VTK legacy ASCII meshes/fields, MatrixMarket matrices,
and fixed-format CSV tables."""

from __future__ import annotations

import csv
import io

import numpy as np
import scipy.io
import scipy.sparse as sp

from .mesh import Mesh

_VTK_CELL_TYPE = {2: 5, 3: 10}  # VTK_TRIANGLE, VTK_TETRA

FLOAT_FMT = "{:.8f}"


def _pad3(arr: np.ndarray) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(arr, dtype=float))
    if arr.shape[1] == 3:
        return arr
    out = np.zeros((arr.shape[0], 3))
    out[:, :arr.shape[1]] = arr
    return out


def write_vtk(path, mesh: Mesh, point_data=None, cell_data=None,
              title="pfmax field"):
    """Legacy ASCII VTK unstructured grid.  point_data maps names to (N,)
    scalars; cell_data maps names to (C,) scalars or (C, dim) vectors."""
    lines = ["# vtk DataFile Version 3.0", title, "ASCII",
             "DATASET UNSTRUCTURED_GRID"]
    pts = _pad3(mesh.nodes)
    lines.append(f"POINTS {len(pts)} double")
    lines.extend(" ".join(f"{x:.16g}" for x in p) for p in pts)
    k = mesh.dim + 1
    lines.append(f"CELLS {mesh.num_cells} {mesh.num_cells * (k + 1)}")
    lines.extend(f"{k} " + " ".join(str(v) for v in c) for c in mesh.cells)
    lines.append(f"CELL_TYPES {mesh.num_cells}")
    lines.extend([str(_VTK_CELL_TYPE[mesh.dim])] * mesh.num_cells)

    if point_data:
        lines.append(f"POINT_DATA {mesh.num_nodes}")
        for name, values in point_data.items():
            lines.append(f"SCALARS {name} double 1")
            lines.append("LOOKUP_TABLE default")
            lines.extend(f"{v:.16g}" for v in np.asarray(values, dtype=float))
    if cell_data:
        lines.append(f"CELL_DATA {mesh.num_cells}")
        for name, values in cell_data.items():
            values = np.asarray(values, dtype=float)
            if values.ndim == 1:
                lines.append(f"SCALARS {name} double 1")
                lines.append("LOOKUP_TABLE default")
                lines.extend(f"{v:.16g}" for v in values)
            else:
                lines.append(f"VECTORS {name} double")
                lines.extend(" ".join(f"{x:.16g}" for x in v)
                             for v in _pad3(values))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_boundary_labels(path, mesh: Mesh):
    """Companion file mapping boundary facet index -> label and node tuple."""
    with open(path, "w") as fh:
        fh.write("# facet label nodes...\n")
        for f in mesh.boundary_facets:
            nodes = " ".join(str(v) for v in mesh.facets[int(f)])
            fh.write(f"{int(f)} {mesh.facet_labels[int(f)]} {nodes}\n")


def write_matrix_market(path, matrix):
    scipy.io.mmwrite(str(path), sp.coo_matrix(matrix), symmetry="symmetric")


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return FLOAT_FMT.format(value)
    return str(value)


def write_csv(path_or_file, header, rows):
    """One header row, floats at 8 decimals."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    finally:
        if own:
            fh.close()


def read_csv(path) -> tuple[list, list]:
    """Inverse of write_csv: header plus rows with numeric cells parsed back
    to float (empty cells to None)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = []
        for raw in reader:
            row = []
            for cell in raw:
                if cell == "":
                    row.append(None)
                    continue
                try:
                    row.append(float(cell))
                except ValueError:
                    row.append(cell)
            rows.append(row)
    return header, rows


def csv_string(header, rows) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()
