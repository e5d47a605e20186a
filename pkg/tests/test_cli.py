from __future__ import annotations

import csv
import io
import json
import math

import pytest

from freekuo.cli import run
from freekuo.formulas import flashlight_formula
from freekuo.lattice import format_region
from freekuo.regions import free_trapezoid


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_count_json_roundtrip():
    code, text = call("count", "--region", "flashlight", "--x", "4", "--z", "3", "--k", "2", "--p", "1")
    assert code == 0
    doc = json.loads(text)
    assert int(doc["count"]) == flashlight_formula(4, 3, 2, 1) == 5280
    assert doc["region"] == {"kind": "flashlight", "x": 4, "z": 3, "k": 2, "p": 1}


def test_count_csv_and_engines():
    for engine in ("dp", "enum", "oracle"):
        code, text = call("count", "--region", "hexagon", "--a", "2", "--b", "2", "--c", "1", "--engine", engine, "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(text)))
        assert rows[0]["count"] == "6"


def test_count_region_file(tmp_path):
    f = tmp_path / "trap.txt"
    f.write_text(format_region(free_trapezoid(2, 2)))
    code, text = call("count", "--region-file", str(f))
    assert code == 0 and json.loads(text)["count"] == "10"
    assert call("count", "--region-file", str(tmp_path / "missing.txt"))[0] == 2


def test_formula():
    code, text = call("formula", "--name", "corner", "--k", "1", "--p", "0")
    assert code == 0 and json.loads(text)["value"] == "3/8"
    code, text = call("formula", "--name", "bulk", "--k", "2")
    doc = json.loads(text)
    assert doc["value"] == {"mantissa": "243/3584000", "pi_exp": -4}
    assert float(doc["decimal"]) == pytest.approx(243 / 3584000 / math.pi ** 4, rel=1e-12)
    code, text = call("formula", "--name", "macmahon", "--x", "3", "--y", "3", "--z", "3")
    assert json.loads(text)["value"] == "980"


def test_verify_condensation(capsys):
    code, text = call("verify", "condensation", "--identity", "four-even", "--trials", "5", "--seed", "7", "--budget", "14")
    assert code == 0
    doc = json.loads(text)
    assert doc["all_zero"] and len(doc["trials"]) == 5
    assert "seed=7" in capsys.readouterr().err
    code, again = call("verify", "condensation", "--identity", "four-even", "--trials", "5", "--seed", "7", "--budget", "14")
    assert again == text


def test_verify_recurrence():
    code, text = call("verify", "recurrence", "--x", "3", "--z", "2")
    assert code == 0 and json.loads(text)["all_hold"]


def test_correlate():
    code, text = call("correlate", "corner", "--k", "1", "--grid", "16,32,64", "--digits", "30")
    assert code == 0
    assert json.loads(text)["reports"][0]["verdict"] is True
    code, text = call("correlate", "log", "--grid", "1,2", "--digits", "30")
    assert code == 1
    code, text = call("correlate", "bulk", "--grid", "4,8", "--digits", "30", "--format", "csv")
    assert code == 0 and text.startswith("series,")


def test_render(tmp_path):
    code, text = call("render", "--region", "hexagon", "--a", "1", "--b", "1", "--c", "1", "--overlay")
    assert code == 0 and text.count('class="lozenge"') == 3
    target = tmp_path / "h.svg"
    assert call("render", "--region", "hexagon", "--a", "1", "--b", "1", "--c", "1", "--out", str(target))[0] == 0
    assert target.read_text().startswith("<?xml")


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["count"],
    ["count", "--region", "flashlight", "--x", "0", "--z", "0", "--k", "1", "--p", "1"],
    ["formula", "--name", "butterfly", "--x", "3", "--y", "1", "--k", "2"],
    ["correlate", "bulk", "--grid", "2,4"],
    ["correlate", "corner", "--grid", "a,b"],
    ["render", "--region", "hexagon", "--scale", "0"],
    ["verify", "condensation", "--identity", "eight", "--budget", "2"],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2
