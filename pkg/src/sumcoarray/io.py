"""JSON file formats for geometries, waveforms and scenes, plus CSV writers.

Geometry: ``{"tx": [0, 1, 2], "rx": [0, 1, 3, 5]}``
Waveform: ``{"T": 2, "N_tx": 3, "entries": [[re, im], ...]}`` (row-major)
Scene:    ``{"V": 16, "support": [1, 5], "amplitudes": [[re, im], ...]}``
          with 1-based support indices.
"""
from __future__ import annotations

import csv
import io as _io
import json
from importlib import resources
from pathlib import Path

import numpy as np

from .geometry import NAMED_GEOMETRIES, ArrayGeometry
from .identifiability import Scene
from .sensing import WaveformMatrix, proof_waveform, random_waveform


class ParseError(ValueError):
    """Raised for malformed input documents or specifiers."""


def _pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex).ravel()]


def _from_pairs(pairs, what: str) -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: entries must be [re, im] pairs") from exc
    if arr.size == 0:
        return np.zeros(0, dtype=complex)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParseError(f"{what}: entries must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


# geometry


def geometry_to_json(geom: ArrayGeometry) -> str:
    return json.dumps(geom.to_dict())


def geometry_from_json(text: str) -> ArrayGeometry:
    try:
        return ArrayGeometry.from_dict(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ParseError(f"geometry: {exc}") from exc


def load_geometry(spec: str) -> ArrayGeometry:
    """Resolve ``paper:array-I``, ``paper:array-II`` or a JSON file path."""
    if spec in NAMED_GEOMETRIES:
        return NAMED_GEOMETRIES[spec]
    if spec.startswith("paper:"):
        raise ParseError(f"unknown built-in geometry {spec!r}; choose from {sorted(NAMED_GEOMETRIES)}")
    try:
        return ArrayGeometry.from_dict(_load_json(spec), name=Path(spec).stem)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{spec}: {exc}") from exc


# waveform


def waveform_to_dict(S: WaveformMatrix) -> dict:
    return {"T": S.T, "N_tx": S.n_tx, "entries": _pairs(S.entries)}


def waveform_from_dict(d: dict) -> WaveformMatrix:
    try:
        T, n_tx = int(d["T"]), int(d["N_tx"])
        vals = _from_pairs(d["entries"], "waveform")
    except (KeyError, TypeError) as exc:
        raise ParseError("waveform document needs 'T', 'N_tx' and 'entries'") from exc
    if vals.size != T * n_tx:
        raise ParseError(f"waveform: expected {T * n_tx} entries, got {vals.size}")
    return WaveformMatrix(vals.reshape(T, n_tx))


def load_waveform(spec: str, n_tx: int | None = None) -> WaveformMatrix:
    """Resolve ``proof``, ``random:NS:SEED`` or a JSON file path."""
    if spec == "proof":
        return proof_waveform()
    if spec.startswith("random:"):
        parts = spec.split(":")
        if len(parts) != 3 or n_tx is None:
            raise ParseError("random waveform spec is random:NS:SEED")
        try:
            n_s, seed = int(parts[1]), int(parts[2])
            return random_waveform(n_s, n_tx, seed=seed)
        except ValueError as exc:
            raise ParseError(f"{spec}: {exc}") from exc
    return waveform_from_dict(_load_json(spec))


# scene


def scene_to_dict(scene: Scene) -> dict:
    return {
        "V": scene.V,
        "support": [i + 1 for i in scene.support],
        "amplitudes": _pairs(scene.amplitudes),
    }


def scene_from_dict(d: dict) -> Scene:
    try:
        V = int(d["V"])
        support = [int(i) - 1 for i in d["support"]]
        amps = _from_pairs(d["amplitudes"], "scene")
        return Scene(V, tuple(support), amps)
    except (KeyError, TypeError) as exc:
        raise ParseError("scene document needs 'V', 'support' and 'amplitudes'") from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"scene: {exc}") from exc


FIXTURE_SCENE = "paper:scene-K4"


def fixture_scene() -> Scene:
    """Stored K=4 scene that Array I cannot identify but Array II can."""
    text = resources.files("sumcoarray").joinpath("data/ambiguous_scene.json").read_text()
    return scene_from_dict(json.loads(text))


def load_scene(spec: str) -> Scene:
    if spec == FIXTURE_SCENE:
        return fixture_scene()
    return scene_from_dict(_load_json(spec))


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def complex_matrix_csv(M) -> str:
    """Dense complex matrix as CSV with alternating re/im columns."""
    M = np.asarray(M, dtype=complex)
    header = [f"{p}{j}" for j in range(M.shape[1]) for p in ("re", "im")]
    rows = [[repr(float(x)) for v in row for x in (v.real, v.imag)] for row in M]
    return csv_text(header, rows)
