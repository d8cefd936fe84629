"""Regenerate the fixture meshes in crates/core/meshes from their .geo sources.

Requires the `gmsh` Python package (pip install gmsh).
"""

from pathlib import Path

import gmsh

MESH_DIR = Path(__file__).resolve().parent.parent / "crates" / "core" / "meshes"

# (output name, geo file, mesh size factor, msh version)
TARGETS = [
    ("disk_coarse.msh", "disk.geo", 2.0, 4.1),
    ("disk_coarse_v22.msh", "disk.geo", 2.0, 2.2),
    ("disk_mesh1.msh", "disk.geo", 1.0, 4.1),
    ("square_graded.msh", "square_graded.geo", 1.0, 4.1),
]


def main():
    gmsh.initialize()
    gmsh.option.setNumber("General.Terminal", 0)
    for out, geo, size_factor, version in TARGETS:
        gmsh.clear()
        gmsh.open(str(MESH_DIR / geo))
        gmsh.option.setNumber("Mesh.MeshSizeFactor", size_factor)
        gmsh.model.mesh.generate(2)
        gmsh.option.setNumber("Mesh.MshFileVersion", version)
        gmsh.option.setNumber("Mesh.Binary", 0)
        gmsh.write(str(MESH_DIR / out))
        nodes = gmsh.model.mesh.getNodes()[0]
        print(f"{out}: {len(nodes)} nodes")
    gmsh.finalize()


if __name__ == "__main__":
    main()
