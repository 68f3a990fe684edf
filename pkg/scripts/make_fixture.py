"""Regenerate src/sumcoarray/data/ambiguous_scene.json.

Usage: python scripts/make_fixture.py
"""
from pathlib import Path

from sumcoarray.io import dump_json, scene_to_dict
from sumcoarray.repro import make_ambiguous_fixture

OUT = Path(__file__).resolve().parents[1] / "src" / "sumcoarray" / "data" / "ambiguous_scene.json"

if __name__ == "__main__":
    scene = make_ambiguous_fixture()
    dump_json(scene_to_dict(scene), OUT)
    print(f"wrote {OUT} (K={scene.K}, support={[i + 1 for i in scene.support]})")
