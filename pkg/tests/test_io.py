import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumcoarray import ARRAY_I, ARRAY_II, ArrayGeometry, Scene, WaveformMatrix, proof_waveform
from sumcoarray import io

finite = st.floats(-1e6, 1e6, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def test_named_geometries():
    assert io.load_geometry("paper:array-I") == ARRAY_I
    assert io.load_geometry("paper:array-II") == ARRAY_II
    with pytest.raises(io.ParseError):
        io.load_geometry("paper:array-III")


def test_geometry_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"tx":[0,1,2],"rx":[0,1,3,5]}')
    assert io.load_geometry(str(p)) == ARRAY_II
    p.write_text('{"tx":[1,2],"rx":[0]}')
    with pytest.raises(io.ParseError):
        io.load_geometry(str(p))
    p.write_text("{not json")
    with pytest.raises(io.ParseError):
        io.load_geometry(str(p))
    with pytest.raises(io.ParseError):
        io.load_geometry(str(tmp_path / "missing.json"))


@given(st.lists(st.integers(1, 30), max_size=4), st.lists(st.integers(1, 30), max_size=4))
def test_geometry_round_trip(tx, rx):
    g = ArrayGeometry([0, *tx], [0, *rx])
    assert io.geometry_from_json(io.geometry_to_json(g)) == g


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_waveform_round_trip(T, n_tx, data):
    vals = data.draw(st.lists(cplx, min_size=T * n_tx, max_size=T * n_tx))
    S = WaveformMatrix(np.array(vals).reshape(T, n_tx))
    text = json.dumps(io.waveform_to_dict(S))
    assert io.waveform_from_dict(json.loads(text)) == S


def test_waveform_specs(tmp_path):
    assert io.load_waveform("proof") == proof_waveform()
    S = io.load_waveform("random:2:5", n_tx=3)
    assert S.entries.shape == (2, 3)
    assert io.load_waveform("random:2:5", n_tx=3) == S
    for bad in ("random:2", "random:x:1", "random:4:0"):
        with pytest.raises(io.ParseError):
            io.load_waveform(bad, n_tx=3)
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"T": 2, "N_tx": 3, "entries": [[1, 0]] * 5}))
    with pytest.raises(io.ParseError):
        io.load_waveform(str(p))


@given(st.integers(1, 20), st.data())
def test_scene_round_trip(V, data):
    support = sorted(data.draw(st.sets(st.integers(0, V - 1), max_size=V)))
    amps = data.draw(st.lists(cplx.filter(lambda z: z != 0), min_size=len(support), max_size=len(support)))
    s = Scene(V, tuple(support), amps)
    d = json.loads(json.dumps(io.scene_to_dict(s)))
    assert d["support"] == [i + 1 for i in support]
    assert io.scene_from_dict(d) == s


def test_scene_parse_errors():
    with pytest.raises(io.ParseError):
        io.scene_from_dict({"V": 4, "support": [0], "amplitudes": [[1, 0]]})
    with pytest.raises(io.ParseError):
        io.scene_from_dict({"V": 4, "support": [1]})


def test_pattern_csv():
    text = io.load_geometry("paper:array-I")
    rows = [r.split(",") for r in __import__("sumcoarray").redundancy_pattern(text).to_csv().split()]
    assert len(rows) == 12 and all(len(r) == 8 for r in rows)
    assert rows[3] == ["0", "0", "0", "0", "0", "1", "0", "0"]


def test_complex_matrix_csv():
    text = io.complex_matrix_csv(np.array([[1 + 2j, 3 - 4j]]))
    header, row = text.strip().split("\n")
    assert header == "re0,im0,re1,im1"
    assert [float(v) for v in row.split(",")] == [1.0, 2.0, 3.0, -4.0]
