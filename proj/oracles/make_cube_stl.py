"""Writes tests/data/unit_cube_{binary,ascii}.stl with trimesh (pip install trimesh)."""
import pathlib

import trimesh

out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
m = trimesh.creation.box(extents=(1, 1, 1))
m.apply_translation((0.5, 0.5, 0.5))
(out / "unit_cube_binary.stl").write_bytes(trimesh.exchange.stl.export_stl(m))
(out / "unit_cube_ascii.stl").write_text(trimesh.exchange.stl.export_stl_ascii(m))
