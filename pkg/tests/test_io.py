import json

import numpy as np
from hypothesis import given, strategies as st

from conjugate_lab import io


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips_doubles(x):
    assert float(io.fmt(x)) == x


def test_fmt_special_values():
    assert io.fmt(float("inf")) == "inf"
    assert io.fmt(np.float64("nan")) == "nan"
    assert io.fmt(np.int64(3)) == "3"
    assert io.fmt(True) == "true"


def test_csv_uses_crlf_and_header():
    text = io.csv_text(["a", "b"], [(1.0, 2), (0.1, -3.5)])
    assert text == "a,b\r\n1,2\r\n0.10000000000000001,-3.5\r\n"


def test_json_sorted_and_finite():
    text = io.json_text({"b": np.float64(1.5), "a": [float("inf"), np.int32(2)]})
    assert list(json.loads(text)) == ["a", "b"]
    assert json.loads(text)["a"] == ["inf", 2]
    assert io.json_text({"x": 1}) == io.json_text({"x": 1})
