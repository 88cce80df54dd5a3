import math
import os
import stat

import numpy as np
import pytest

from retint import ParameterError, generate_lrc_gaussian
from retint.fileio import (
    load_series,
    read_json,
    read_table,
    save_series,
    sidecar,
    write_json,
    write_table,
)


@pytest.mark.parametrize("suffix", [".bin", ".csv"])
def test_series_roundtrip(tmp_path, suffix):
    ts = generate_lrc_gaussian(2**10, 0.4, 7)
    p = tmp_path / f"s{suffix}"
    save_series(ts, p)
    back = load_series(p)
    np.testing.assert_array_equal(back.values, ts.values)
    assert back.gamma_target == 0.4 and back.seed == 7 and back.kind == ts.kind
    assert read_json(sidecar(p))["n"] == 1024


def test_missing_series(tmp_path):
    with pytest.raises(ParameterError):
        load_series(tmp_path / "nope.bin")


def test_table_roundtrip_with_nan(tmp_path):
    p = tmp_path / "t.csv"
    write_table(p, {"a": [1.5, math.nan], "b": np.array([1, 2])})
    assert p.read_text().splitlines() == ["a,b", "1.5,1", ",2"]
    t = read_table(p)
    assert math.isnan(t["a"][1]) and t["b"].tolist() == [1.0, 2.0]


def test_json_is_strict(tmp_path):
    p = tmp_path / "x.json"
    write_json(p, {"b": np.float64(math.inf), "a": np.int64(3), "c": (1, 2)})
    assert p.read_text() == '{\n  "a": 3,\n  "b": null,\n  "c": [\n    1,\n    2\n  ]\n}\n'
    assert stat.S_IMODE(os.stat(p).st_mode) == 0o644
    assert not [f for f in os.listdir(tmp_path) if f.startswith(".")]
