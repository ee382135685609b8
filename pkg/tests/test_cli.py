import json

import pytest

from icx.checker import is_integrally_convex_function
from icx.cli import build_parser
from icx.instance_format import read_instance
from icx.instances import CORPUS_DIR


def corpus_file(name):
    return CORPUS_DIR / name


def test_parser_knows_every_command():
    parser = build_parser()

    for command in ["check", "subgrad", "conj", "biconj", "hull", "minimize", "corpus-verify"]:
        args = parser.parse_args([command] + ([] if command == "corpus-verify" else ["f.icx"]) + (
            ["--at", "0"] if command in ("subgrad", "biconj") else []
        ))
        assert args.command == command


def test_check_violation(cli_runner):
    code, out = cli_runner("check", corpus_file("exla1.icx"))

    assert code == 1
    assert "status: violation" in out
    assert "is_ic: false" in out
    assert "witness_point: (-1/2, 0, 1/2)" in out
    assert "reason: effective domain is not integrally convex" in out


def test_check_function_pair_violation(cli_runner):
    code, out = cli_runner("check", corpus_file("rmconjic_g.icx"))

    assert code == 1
    assert "witness_pair: (0, 0, 0, 0) (1, 1, 1, 2)" in out
    assert "extension_value: 5/4" in out
    assert "average: 1" in out


@pytest.mark.parametrize("name", ["rmconjic_set.icx", "unit-box.icx", "lnat2.icx"])
def test_check_ok(cli_runner, name):
    code, out = cli_runner("check", corpus_file(name))

    assert code == 0
    assert "is_ic: true" in out


def test_check_set_as_function(cli_runner):
    code, out = cli_runner("check", corpus_file("rmedgedir.icx"), "--kind", "fn")

    assert code == 1
    assert "kind: fn" in out


def test_subgrad_with_trace(cli_runner):
    code, out = cli_runner("subgrad", corpus_file("rmsubg.icx"), "--at", 0, 0, 0, "--trace")

    assert code == 0
    assert "p: (0, 1, 0)" in out
    assert "method: fourier-motzkin" in out
    assert "trace:" in out
    assert "| 1 | p1 | 2 | 1 | 0 | -inf | 0 | 0 |" in out


def test_subgrad_with_order(cli_runner):
    code, out = cli_runner("subgrad", corpus_file("rmsubg.icx"), "--at", 0, 0, 0, "--order", 3, 2, 1, "--trace")

    assert code == 0
    assert "elimination order: p3, p2, p1" in out


def test_subgrad_rejects_bad_order(cli_runner):
    code, out = cli_runner("subgrad", corpus_file("rmsubg.icx"), "--at", 0, 0, 0, "--order", 1, 1, 2)

    assert code == 2
    assert "permutation" in out


def test_subgrad_empty(cli_runner):
    code, out = cli_runner("subgrad", corpus_file("exla1.icx"), "--at", 0, 0, 0)

    assert code == 2
    assert "error: integral subdifferential is empty" in out
    assert "fourier_motzkin: failed" in out
    assert "proof:" in out
    assert "contains no integer" in out


def test_subgrad_falls_back(cli_runner):
    code, out = cli_runner("subgrad", corpus_file("exla1.icx"), "--at", 1, 1, 0)

    assert code == 0
    assert "method: integer-search" in out


def test_conj_at_point(cli_runner):
    code, out = cli_runner("conj", corpus_file("sq1.icx"), "--at", 3)

    assert code == 0
    assert "conjugate: 2" in out
    assert "maximizers: (1) (2)" in out


def test_conj_box_to_csv(cli_runner, tmp_path):
    csv_path = tmp_path / "conj.csv"

    code, out = cli_runner("conj", corpus_file("sq1.icx"), "--box", -4, 4, "--csv", csv_path)

    assert code == 0
    assert "points: 9" in out
    assert "max: 4" in out
    assert csv_path.read_text().splitlines()[0] == "x1,value"


def test_conj_needs_a_point_or_box(cli_runner):
    code, out = cli_runner("conj", corpus_file("sq1.icx"))

    assert code == 2
    assert "--at is required" in out


def test_biconj_gap(cli_runner):
    code, out = cli_runner("biconj", corpus_file("exla1.icx"), "--at", 0, 0, 0)

    assert code == 0
    assert "biconjugate: -1" in out
    assert "f: 0" in out
    assert "gap: true" in out
    assert "method: search" in out


def test_biconj_outside_hull(cli_runner):
    code, out = cli_runner("biconj", corpus_file("sq1.icx"), "--at", 3)

    assert code == 0
    assert "biconjugate: +inf" in out
    assert "separating_direction: (1)" in out


def test_dc(cli_runner):
    code, out = cli_runner("dc", "--g", corpus_file("twoabs1.icx"), "--h", corpus_file("abs1.icx"))

    assert code == 0
    assert "primal: 0" in out
    assert "dual: 0" in out
    assert "equal: true" in out


def test_dc_needs_ic_h(cli_runner):
    code, out = cli_runner("dc", "--g", corpus_file("exla1.icx"), "--h", corpus_file("exla1.icx"))

    assert code == 2
    assert "h must be integrally convex" in out


def test_hull(cli_runner):
    code, out = cli_runner("hull", corpus_file("rmedgedir.icx"))

    assert code == 0
    assert "vertices_integral: true" in out
    assert "directions_in_pm1: true" in out
    assert "edge_directions: (1, 0, 1) (1, 1, -1)" in out
    assert "is_ic: false" in out


def test_minimize(cli_runner):
    code, out = cli_runner("minimize", corpus_file("sq2.icx"), "--from", 2, 2)

    assert code == 0
    assert "minimizer: (0, 0)" in out
    assert "certified: true" in out


def test_gen(cli_runner, tmp_path):
    out_path = tmp_path / "gen.icx"

    code, out = cli_runner("gen", "lnat", "--dim", 2, "--width", 2, "--seed", 3, "--out", out_path)

    assert code == 0
    assert "points: 9" in out
    assert out_path.read_text().startswith("# lnat n=2 width=2 seed=3\n")
    assert is_integrally_convex_function(read_instance(out_path)).is_ic


def test_corpus_verify(cli_runner):
    code, out = cli_runner("corpus-verify")

    assert code == 0
    assert "EXla1: ok" in out


def test_json_output(cli_runner):
    code, out = cli_runner("check", corpus_file("exla1.icx"), "--json")

    data = json.loads(out)

    assert code == 1
    assert data["status"] == "violation"
    assert data["exit_code"] == 1
    assert data["witness"]["point"] == ["-1/2", "0", "1/2"]


def test_missing_file(cli_runner, tmp_path):
    code, out = cli_runner("check", tmp_path / "missing.icx")

    assert code == 2
    assert "status: error" in out


def test_parse_error_is_reported(cli_runner, write_instance_file):
    path = write_instance_file("dim 2\nfn\n0 0 : 1\n0 0 : 2\n")

    code, out = cli_runner("check", path)

    assert code == 2
    assert "line 4: duplicate point" in out


def test_point_dimension_is_checked(cli_runner):
    code, out = cli_runner("biconj", corpus_file("sq2.icx"), "--at", 0)

    assert code == 2
    assert "--at needs 2 integers" in out


def test_threads_option(cli_runner):
    code, _ = cli_runner("check", corpus_file("exla1.icx"), "--threads", 2)

    assert code == 1
