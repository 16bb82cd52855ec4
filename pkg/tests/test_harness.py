import json

import pytest
from hypothesis import given, strategies as st

from sawlab.cli import main, read_polygon
from sawlab.errors import EmptyDomain
from sawlab.harness import CHECKS, SuiteConfig, mvm_check, run_verification_suite
from sawlab.madras import RgjParams, build_rgj
from sawlab.surgery import class_members


def test_mvm_examples():
    r = mvm_check({"a"}, {"b1", "b2"}, [("a", "b1"), ("a", "b2")])
    assert (r.m, r.big_m, r.bound_ok) == (2, 1, True)
    r = mvm_check(range(5), range(5), [(i, i) for i in range(5)])
    assert (r.m, r.big_m, r.bound_ok) == (1, 1, True)
    with pytest.raises(EmptyDomain):
        mvm_check([], [1], [])


@given(st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1))
def test_mvm_bound_always_holds(arrows):
    a = {x for x, _ in arrows}
    b = {y for _, y in arrows}
    assert mvm_check(a, b, arrows).bound_ok


def test_mvm_on_rgj_map():
    params = RgjParams(4, 4, 1)
    build = build_rgj(params)
    pairs = [(t, s) for t in class_members("left", 4) for s in class_members("right", 4)]
    arrows = [((r.left, r.right), r.normalized_output) for r in build.records]
    r = mvm_check(pairs, build.outputs, arrows)
    assert r.bound_ok and r.m == 2 and r.big_m == 1


def test_closing_identity_suite_to_13():
    rep = run_verification_suite(SuiteConfig(max_n=13, suites=("closing_identity",)))
    assert rep.passed
    assert [c.status for c in rep.checks] == ["pass"]


def test_budget_is_skipped():
    rep = run_verification_suite(SuiteConfig(suites=("counts_oracle",), budget=10))
    assert rep.checks[0].status == "skipped"
    assert rep.checks[0].detail["reason"].startswith("BudgetExceeded")


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_verification_suite(SuiteConfig(suites=("nope",)))
    with pytest.raises(ValueError):
        SuiteConfig(suites=())


def test_report_deterministic():
    cfg = SuiteConfig(max_n=8, suites=("counts_oracle", "surgery_roundtrip", "q_agreement"))
    a = run_verification_suite(cfg).to_json(timing=False)
    b = run_verification_suite(cfg).to_json(timing=False)
    assert a == b


@pytest.mark.parametrize("name", [n for n in CHECKS if not n.startswith("rgj_")])
def test_default_checks_pass(name):
    rep = run_verification_suite(SuiteConfig(max_n=8, suites=(name,)))
    assert rep.checks[0].status == "pass", rep.checks[0].detail


def test_rgj_checks_pass_inside_guaranteed_window():
    # a window of floor(sqrt(k)/2) offsets stays where every join is global
    names = ("rgj_exactness", "rgj_prefix_law", "rgj_map_counts")
    rep = run_verification_suite(SuiteConfig(max_n=8, rho="1/2", suites=names))
    assert rep.passed
    sizes = [row["size"] for row in rep.checks[0].detail["pairs"]]
    assert sizes and all(sizes)


def test_cli_closing(capsys):
    assert main(["closing", "--n", "5"]) == 0
    row = json.loads(capsys.readouterr().out)
    assert row["probability"] == "6/71" and row["identity_holds"]


def test_cli_counts_and_export(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["counts", "--max-n", "6", "--csv", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,c_n,p_n")
    assert lines[4].startswith("4,100,1,")
    for what in ("exponents", "gj-histogram"):
        path = tmp_path / f"{what}.csv"
        assert main(["export", "--what", what, "--max-n", "8", "--csv", str(path)]) == 0
        assert len(path.read_text().splitlines()) > 1


def test_cli_enumerate_round_trip(tmp_path):
    out = tmp_path / "p.txt"
    assert main(["enumerate", "--class", "polygon", "--n", "8", "--full", "--out", str(out)]) == 0
    assert out.read_text().startswith("SAWLAB 1 polygon 8 7")
    assert main(["enumerate", "--class", "polygon", "--n", "7"]) == 2


def test_cli_join(tmp_path, capsys):
    left, right = tmp_path / "l", tmp_path / "r"
    left.write_text("WSEN\n")
    right.write_text("9,-1:WSEN\n")
    assert main(["join", "--left", str(left), "--right", str(right)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert len(rec["output"]) == 24
    right.write_text("3,-1:WSEN\n")
    assert main(["join", "--left", str(left), "--right", str(right)]) == 1
    assert main(["join", "--left", str(left), "--right", str(right), "--scan-shifts"]) == 0
    assert json.loads(capsys.readouterr().out.splitlines()[-1]) == {"shifts": [[6, 0]]}
    assert read_polygon(right).ne == (3, -1)


def test_cli_rgj_and_snake(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["rgj", "--k", "4", "--l", "4", "--rho", "1", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 2
    rep = tmp_path / "s.json"
    args = ["snake", "--n", "7", "--l", "3", "--alpha", "0.5", "--beta", "1", "--eta", "0"]
    assert main(args + ["--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["delta"] == "1/2"


def test_cli_verify_exit_codes(tmp_path):
    rep = tmp_path / "v.json"
    ok = ["verify", "--max-n", "8", "--suite", "closing_identity", "--report", str(rep)]
    assert main(ok) == 0
    assert json.loads(rep.read_text())["passed"] is True
    assert main(["verify", "--max-n", "8", "--suite", "rgj_prefix_law"]) == 1
