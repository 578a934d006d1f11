#!/usr/bin/env python3
"""Regenerates the triangle meshes under data/meshes with the gmsh Python API.

Usage: gen_meshes.py [output_dir]

Every mesh is a Frontal-Delaunay triangulation of an axis-aligned square
with all four sides in physical group 1.
"""

import pathlib
import sys

import gmsh

# name, (x0, x1), characteristic length, format versions
MESHES = [
    ("vortex_lc1.0", (-10.0, 10.0), 1.0, ["2.2"]),
    ("vortex_lc0.5", (-10.0, 10.0), 0.5, ["2.2"]),
    ("vortex_lc0.35", (-10.0, 10.0), 0.35, ["2.2"]),
    ("vortex_lc0.25", (-10.0, 10.0), 0.25, ["2.2"]),
    ("vortex_lc0.15", (-10.0, 10.0), 0.15, ["2.2"]),
    ("humps_lc2", (0.0, 40.0), 2.0, ["2.2"]),
    ("humps_lc1", (0.0, 40.0), 1.0, ["2.2"]),
    ("bump_lc0.1", (0.0, 2.0), 0.1, ["2.2", "4.1"]),
    ("dam_lc0.5", (0.0, 50.0), 0.5, ["2.2"]),
    ("lakes_lc0.0315", (-1.0, 1.0), 0.0315, ["2.2"]),
]


def square(x0, x1, lc, path, version):
    gmsh.initialize()
    gmsh.option.setNumber("General.Terminal", 0)
    gmsh.model.add("square")
    corners = [(x0, x0), (x1, x0), (x1, x1), (x0, x1)]
    pts = [gmsh.model.geo.addPoint(x, y, 0.0, lc) for x, y in corners]
    lines = [gmsh.model.geo.addLine(pts[i], pts[(i + 1) % 4]) for i in range(4)]
    loop = gmsh.model.geo.addCurveLoop(lines)
    surface = gmsh.model.geo.addPlaneSurface([loop])
    gmsh.model.geo.synchronize()
    gmsh.model.addPhysicalGroup(1, lines, 1)
    gmsh.model.addPhysicalGroup(2, [surface], 1)
    gmsh.option.setNumber("Mesh.Algorithm", 6)
    gmsh.model.mesh.generate(2)
    gmsh.option.setNumber("Mesh.MshFileVersion", float(version))
    gmsh.option.setNumber("Mesh.Binary", 0)
    gmsh.write(str(path))
    _, tags, _ = gmsh.model.mesh.getElements(2)
    count = len(tags[0])
    gmsh.finalize()
    return count


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "data" / "meshes"
    out.mkdir(parents=True, exist_ok=True)
    for name, (x0, x1), lc, versions in MESHES:
        for version in versions:
            suffix = "" if version == "2.2" else "_v41"
            path = out / f"{name}{suffix}.msh"
            print(f"{path.name}: {square(x0, x1, lc, path, version)} triangles")


if __name__ == "__main__":
    main()
