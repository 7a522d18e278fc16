import json
import math
import pathlib

import pytest

import symdyn

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def brute_golden(n):
    words = [format(i, f"0{n}b") for i in range(2**n)] if n else [""]
    return [w for w in words if "11" not in w]


def test_golden_mean_counts_match_brute_force():
    gm = symdyn.load(str(FIXTURES / "golden_mean.yaml"))
    counts = gm.counts(12)
    assert counts == [len(brute_golden(n)) for n in range(13)]
    assert gm.words(4) == brute_golden(4)
    assert gm.contains("0101") == "in"
    assert gm.contains("0110") == "out"
    assert gm.exact_entropy() == pytest.approx(math.log((1 + 5**0.5) / 2))


def test_property_checks():
    one = symdyn.load(str(FIXTURES / "at_most_one_one.yaml"))
    assert one.check_las("const:1", 5, 5)["status"] == "Holds"
    spec = one.check_specification(2, 3, 3)
    assert spec["status"] == "FailsWith"
    assert spec["witness"] == ["1", "1"]


def test_parse_errors_are_python_exceptions():
    with pytest.raises(symdyn.Error):
        symdyn.parse("family: nope\n")
    gm = symdyn.parse("family: sft\nalphabet: ['0', '1']\nforbidden: ['11']\n")
    with pytest.raises(symdyn.InputError):
        gm.contains("012")


def test_cli_in_process():
    code, out, _ = symdyn.run_cli(["enumerate", "--spec", str(FIXTURES / "golden_mean.yaml"), "--n-max", "5"])
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "symdyn-report/1"
    code, _, _ = symdyn.run_cli(["mme", "--spec", str(FIXTURES / "reducible.yaml")])
    assert code == 3
