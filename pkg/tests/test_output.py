import math

import numpy as np
from hypothesis import given, strategies as st

from weingarten.classes import ConstantH
from weingarten.output import (PROFILE_COLUMNS, csv_text, fmt, json_text, profile_csv,
                               profile_svg)
from weingarten.solver import integrate_canonical
from weingarten.space import SpaceParams


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(fmt(x)) == x


def test_fmt_non_finite():
    assert (fmt(math.nan), fmt(math.inf), fmt(-math.inf)) == ("nan", "inf", "-inf")


def test_json_sorted_and_null():
    text = json_text({"b": 1.0, "a": [math.nan, np.float64(0.1)], "c": np.bool_(True)})
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "null" in text and "0.10000000000000001" in text and "true" in text


def test_csv_header_only():
    assert csv_text(("x", "y"), []) == "x,y\n"


def test_profile_csv_stride_keeps_last_row():
    ex = integrate_canonical(ConstantH(1.0), SpaceParams(0, 0))
    lines = profile_csv(ex, stride=7).splitlines()
    assert lines[0] == ",".join(PROFILE_COLUMNS)
    assert float(lines[-1].split(",")[0]) == ex.s[-1]
    assert profile_csv(ex) == profile_csv(ex)


def test_svg():
    svg = profile_svg([0, 1, 0], [0, 1, 2], "a < b")
    assert svg.startswith("<svg") and "a &lt; b" in svg and "<polyline" in svg


def test_fmt_signed_zero():
    assert fmt(-0.0) == "0"
