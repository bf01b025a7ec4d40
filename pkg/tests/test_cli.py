import io
import json

import pytest

from seqspaces import __version__
from seqspaces.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_text_examples():
    assert call("norm", "--space", "int_bv", "--seq", "finite:[1,1/2,1/3]")[:2] == (0, "2\n")
    assert call("transform", "--op", "gamma", "--seq", "powerlaw:1,-1", "--n", "4")[:2] == (0, "[1, 0, 0, 0]\n")
    code, out, _ = call("verify", "--suite", "isometry", "--trials", "200", "--probe", "64")
    assert code == 0 and "400/400" in out


def test_json_report_shape():
    code, out, _ = call("classify", "--matrix", "gamma", "--from", "l1", "--to", "l1", "--probe", "256", "--json")
    assert code == 1
    report = json.loads(out)
    assert report["version"] == __version__ and report["exact"] is True and report["probe"] == 256
    assert report["payload"]["status"] == "nonmember"
    assert report["certificate"]["conditions"]["sup_column_sum"]["witness"][0] == [2, "4"]


def test_rationals_round_trip_as_strings():
    # Gamma (1/3) = (1/3, -1/3)
    code, out, _ = call("norm", "--space", "int_bv", "--seq", "finite:[1/3]", "--json")
    assert code == 0
    assert json.loads(out)["payload"] == "2/3"


def test_probe_is_forwarded():
    code, out, _ = call("member", "--space", "int_bv", "--seq", "const:1", "--probe", "16", "--json")
    assert code == 1
    witness = json.loads(out)["certificate"]["witness"]
    assert [k for k, _ in witness] == [1, 2, 4, 8, 16]


@pytest.mark.parametrize("argv, code", [
    (["member", "--space", "c0s", "--seq", "powerlaw:1,-2"], 2),
    (["dual-check", "--space", "int_bv", "--kind", "beta", "--seq", "const:1"], 1),
    (["dual-check", "--space", "d_bv", "--kind", "gamma", "--seq", "family:1,-1,-1", "--path", "matrix"], 0),
    (["reduce", "--matrix", "identity", "--class", "int_bv:linf"], 0),
    (["reduce", "--matrix", "identity", "--class", "l1:linf"], 64),
    (["basis", "--space", "int_bv", "--n", "3"], 0),
    (["norm", "--space", "l1", "--seq", "const:1"], 65),
    (["norm", "--space", "nowhere", "--seq", "const:1"], 64),
    (["transform", "--op", "gamma", "--seq", "const:1", "--n", "0"], 64),
    ([], 64),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_usage_error_names_token_and_grammar():
    code, out, err = call("norm", "--space", "l1", "--seq", "geom:1,2")
    assert code == 64 and out == ""
    assert "'geom:1,2'" in err and "expected" in err


def test_deterministic_json():
    argv = ["dual-check", "--space", "int_bv", "--kind", "alpha", "--seq", "alt:1", "--json", "--seed", "9"]
    assert call(*argv) == call(*argv)
