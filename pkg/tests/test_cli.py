import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rspsolve import GuardError, Instance, InstanceSyntaxError, generate_instance, parse_instance
from rspsolve.cli import run
from rspsolve.instances import render_instance
from rspsolve.report import CSV_COLUMNS, decimal, rational


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    a = tmp_path / "a.rsp"
    a.write_text("item 2 2\nitem 2 2\n")
    b = tmp_path / "b.rsp"
    b.write_text("# note\nitem 1 2\nitem 2 2\n")
    return a, b


def test_parse_examples():
    a = parse_instance("item 2 2\nitem 2 2\n")
    assert a == Instance.from_pairs([(2, 2), (2, 2)])
    assert (a.joint_cycle, a.total_demand) == (2, 2)
    b = parse_instance("# note\nitem 1 2\nitem 2 2\n")
    assert (b.joint_cycle, b.total_demand) == (2, 3)


@pytest.mark.parametrize("text,lineno", [
    ("item 0 5", 1),
    ("# c\n\nitem 2  3\n", 3),
    ("item 2 3\nitm 2 3\n", 2),
    ("item 2 -3\n", 1),
    ("item 2 1.5\n", 1),
    ("# nothing\n", None),
])
def test_parse_errors(text, lineno):
    with pytest.raises(InstanceSyntaxError) as err:
        parse_instance(text)
    assert err.value.lineno == lineno


def test_parse_guard():
    with pytest.raises(GuardError):
        parse_instance("item 7 1\nitem 11 1\n")


def test_generate():
    assert generate_instance(1, 1, 1, seed=123) == Instance.from_pairs([(1, 1)])
    inst = generate_instance(3, 6, 10, seed=42)
    assert all(c in (1, 2, 3, 6) for c in inst.cycles)
    assert all(1 <= s <= 10 for s in inst.sizes)
    assert 6 % inst.joint_cycle == 0
    assert generate_instance(3, 6, 10, seed=42) == inst


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20), st.sampled_from([1, 2, 4, 6, 12, 60]), st.integers(1, 10**6),
       st.integers(0, 2**64 - 1))
def test_render_parse_round_trip(n, k, smax, seed):
    inst = generate_instance(n, k, smax, seed)
    assert k % inst.joint_cycle == 0
    assert parse_instance(render_instance(inst, "x")) == inst


def test_format_helpers():
    assert rational(3) == "3/1"
    assert decimal(Fraction(1, 3)) == "0.333333"
    assert decimal(Fraction(-2, 3)) == "-0.666667"
    assert decimal(2) == "2.000000"


def test_solve(files, tmp_path):
    a, _ = files
    out_csv = tmp_path / "a.csv"
    code, out = invoke("solve", str(a), "--csv", str(out_csv))
    assert code == 0
    assert "peak: 3/1 (3.000000)" in out
    assert "times: 1,2" in out
    assert "z: 6" in out
    rows = list(csv.DictReader(out_csv.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[0]["peak_rational"] == "3/1" and rows[0]["engine"] == "exact"
    assert (tmp_path / "a_profile.png").stat().st_size > 0


def test_approx(files):
    _, b = files
    code, out = invoke("approx", str(b), "--eps", "1")
    assert code == 0
    assert "value: 4/1" in out
    ratio = [ln for ln in out.splitlines() if "ratio_bound" in ln][0]
    assert "4/3" in ratio


def test_approx_decimal_eps(files, tmp_path):
    a, _ = files
    code, _ = invoke("approx", str(a), "--eps", "0.1", "--csv", str(tmp_path / "x.csv"),
                     "--no-plots")
    assert code == 0
    row = next(csv.DictReader((tmp_path / "x.csv").open()))
    assert row["eps"] == "1/10"
    assert not (tmp_path / "x_profile.png").exists()


def test_check(files):
    a, _ = files
    code, out = invoke("check", str(a), "--times", "1,1", "--eps", "1")
    assert code == 0
    assert "valid: true" in out
    assert "cascading: false max_violation: 2/1" in out
    assert "identity k*V_k + z = C: true" in out
    assert "recurrence V_l = V_k - l*D + sum Q: true" in out
    assert "relaxed_feasible: true" in out


def test_check_invalid_times(files):
    a, _ = files
    assert invoke("check", str(a), "--times", "1,3")[0] == 2
    assert invoke("check", str(a), "--times", "1")[0] == 2
    assert invoke("check", str(a), "--times", "x,1")[0] == 2


def test_oracle_cmd(files):
    a, _ = files
    code, out = invoke("oracle", str(a))
    assert code == 0 and "peak: 3/1" in out and "assignments: 4" in out
    assert invoke("oracle", str(a), "--limit", "3")[0] == 3


def test_gen(tmp_path):
    target = tmp_path / "g.rsp"
    code, _ = invoke("gen", "--items", "4", "--cycle", "6", "--max-size", "9", "--seed", "7",
                     "-o", str(target))
    assert code == 0
    assert parse_instance(target.read_text()) == generate_instance(4, 6, 9, 7)
    code, out = invoke("gen", "--items", "2", "--cycle", "4", "--max-size", "3", "--seed", "1")
    assert code == 0 and out.count("item ") == 2


def test_exit_codes(files, tmp_path):
    a, _ = files
    assert invoke("frobnicate")[0] == 2
    assert invoke("solve")[0] == 2
    assert invoke("solve", str(tmp_path / "missing.rsp"))[0] == 2
    bad = tmp_path / "bad.rsp"
    bad.write_text("item 0 5\n")
    assert invoke("solve", str(bad))[0] == 2
    big = tmp_path / "big.rsp"
    big.write_text("item 7 1\nitem 11 1\n")
    assert invoke("solve", str(big))[0] == 3
    heavy = tmp_path / "heavy.rsp"
    heavy.write_text("item 6 5\n" * 6)
    assert invoke("solve", str(heavy), "--budget", "5")[0] == 3
    assert invoke("approx", str(a), "--eps", "0")[0] == 2
    assert invoke("approx", str(a), "--eps", "abc")[0] == 2
    assert invoke("gen", "--items", "0", "--cycle", "2", "--max-size", "3", "--seed", "1")[0] == 2


SMALL_SUITE = {"items": [2, 4], "cycles": [2, 6], "max_sizes": [10], "eps": ["1", "1/5"],
               "seeds": 2}


def test_bench_deterministic_and_sound(tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps(SMALL_SUITE))
    first, second = tmp_path / "one.csv", tmp_path / "two.csv"
    code, out = invoke("bench", "--suite", str(suite), "--csv", str(first))
    assert code == 0 and "guarantee violations: 0" in out
    assert invoke("bench", "--suite", str(suite), "--csv", str(second), "--no-plots")[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "one_ratio.png").exists() and (tmp_path / "one_states.png").exists()

    rows = list(csv.DictReader(first.open()))
    assert len({r["instance_id"] for r in rows}) == 8
    exact = {r["instance_id"]: Fraction(r["peak_rational"])
             for r in rows if r["engine"] == "exact"}
    for r in rows:
        if r["engine"] == "fptas":
            eps = Fraction(r["eps"])
            peak = Fraction(r["peak_rational"])
            assert peak <= (1 + eps) * exact[r["instance_id"]]
        if r["engine"] == "oracle":
            assert r["peak_rational"] == rational(exact[r["instance_id"]])


def test_bench_bad_suite(tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text('{"bogus": 1}')
    assert invoke("bench", "--suite", str(suite), "--csv", str(tmp_path / "o.csv"))[0] == 2
