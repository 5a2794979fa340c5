import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lib.Utils import Utils


def test_slugify_weave_names():
    assert Utils.slugify("⟨100⟩ Trefoil Laves") == "100-trefoil-laves"
    assert Utils.slugify("⟨111⟩ Expanded Octahedral") == "111-expanded-octahedral"
    assert Utils.slugify("Strucwire®") == "strucwire"
    assert Utils.slugify("  Stacked  Hexagonal MF ") == "stacked-hexagonal-mf"


def test_flatten_json_to_string():
    nested_json = {
        "a": 1,
        "keyname": "value",
        "b": {
            "c": 2,
            "d": 3
        }
    }
    expected_flattened = "a: 1, keyname: value, b.c: 2, b.d: 3"

    flattened = Utils.flatten_json_to_string(nested_json)
    assert flattened == expected_flattened


def test_format17_keeps_float_marker():
    assert Utils.format17(1) == "1.0"
    assert Utils.format17(0.1) == "0.10000000000000001"
    with pytest.raises(ValueError):
        Utils.format17(float("nan"))


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format17_is_exact(value):
    assert float(Utils.format17(value)) == value


def test_dumps17_layout():
    doc = {"name": "w", "pass": True, "pair": [0, 1], "translation": np.array([0.0, 1.0, -0.5]), "none": None}
    text = Utils.dumps17(doc)
    assert text.splitlines()[0] == "{"
    assert '  "pair": [0, 1],' in text
    assert '  "translation": [0.0, 1.0, -0.5],' in text
    parsed = json.loads(text)
    assert parsed["pass"] is True
    assert parsed["none"] is None
    # parse and re-emit is byte-identical
    assert Utils.dumps17(parsed) == text
