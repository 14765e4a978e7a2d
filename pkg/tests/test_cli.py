import json
import subprocess
import sys
from pathlib import Path

import pytest

from pcvclosure.cli import main
from pcvclosure.seqfile import SequenceFileError, load_sequence, parse_spec

SEQ = Path(__file__).resolve().parent.parent / "sequences"
DEMO_E = str(SEQ / "demo_E.seq")
DEMO_E2 = str(SEQ / "demo_Eprime.seq")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def human_record(out: str) -> dict:
    rec = {}
    for line in out.splitlines():
        if line.startswith("  "):
            continue
        key, _, value = line.partition(": ")
        rec[key.rstrip(":")] = value
    return rec


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_demo_nontopological(capsys, rank):
    code, out, _ = run(capsys, "demo", "nontopological", "--rank", str(rank))
    assert code == 0
    assert "FAIL" not in out
    assert f"Fail(1) with v(H_1) = ({','.join(['0'] * (rank - 1) + ['-1'])})" in out
    assert "Outside(GaugeUndershoot(0))" in out and "Coset(0)" in out


def test_demo_json(capsys):
    code, out, _ = run(capsys, "--json", "demo", "nontopological")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows and all(r["ok"] for r in rows)


def test_demo_rejects_rank_one(capsys):
    code, _, err = run(capsys, "demo", "nontopological", "--rank", "1")
    assert code == 2 and "rank" in err


def test_classify_member(capsys):
    code, out, _ = run(capsys, "classify", DEMO_E, "--elem", "t2^5")
    assert code == 0
    rec = human_record(out)
    assert rec["verdict"] == "Coset(4)"
    assert rec["oracle"].startswith("passed=True")


def test_classify_outside(capsys):
    code, out, _ = run(capsys, "classify", DEMO_E2, "--elem", "t2 + t1")
    assert code == 1
    assert human_record(out)["verdict"] == "Outside(GaugeUndershoot(0))"
    code, out, _ = run(capsys, "--json", "classify", DEMO_E2, "--elem", "t2 + t1")
    rec = json.loads(out)
    assert code == 1
    assert rec["oracle"] == {"passed": False, "horizon": 30, "witness": 1, "valuation": [0, -1]}


def test_equal(capsys):
    code, out, _ = run(capsys, "equal", DEMO_E, DEMO_E2)
    assert code == 1
    assert human_record(out)["failure"] == "gauge mismatch at n=0: (0,1) != (0,2)"
    code, out, _ = run(capsys, "equal", DEMO_E, str(SEQ / "demo_E_perturbed.seq"))
    assert code == 0 and human_record(out)["equal"] == "True"


def test_validate(capsys):
    assert run(capsys, "validate", DEMO_E)[0] == 0
    code, out, err = run(capsys, "validate", str(SEQ / "not_pcv.seq"))
    assert code == 2
    assert "not pseudo-convergent" in err
    assert human_record(out)["verdict"] == "invalid"


def test_term_gauge_closure(capsys):
    code, out, _ = run(capsys, "term", DEMO_E, "3")
    assert code == 0 and human_record(out)["value"] == "t2^4"
    code, out, _ = run(capsys, "gauge", DEMO_E, "5")
    assert human_record(out)["gauge"] == "(0,6)"
    code, out, _ = run(capsys, "closure", DEMO_E)
    rec = human_record(out)
    assert rec["sigma"] == "0" and rec["tail_prime"] == "P_1" and rec["breadth"] == ">(0,0;1)"


def test_hn_and_expand(capsys):
    code, out, _ = run(capsys, "hn", DEMO_E, "1", "--eval", "t2 + t1")
    rec = human_record(out)
    assert code == 0 and rec["valuation"] == "(1,-1)" and rec["in_V"] == "True"
    code, out, _ = run(capsys, "--json", "expand", DEMO_E, "--poly", "X^2/t2")
    rec = json.loads(out)
    assert [c["n"] for c in rec["coefficients"]] == [0, 1, 2]
    assert rec["integer_valued"] is True  # s_n^2 / t2 = t2^(2n+1)
    code, out, _ = run(capsys, "--json", "expand", DEMO_E, "--poly", "X/t2^2")
    assert json.loads(out)["integer_valued"] is False


def test_max_degree(capsys):
    code, _, err = run(capsys, "expand", DEMO_E, "--poly", "X^5", "--max-degree", "4")
    assert code == 2 and "max-degree" in err
    code, _, err = run(capsys, "--max-degree", "2", "hn", DEMO_E, "3")
    assert code == 2


def test_global_flags_either_side(capsys):
    a = run(capsys, "--json", "term", DEMO_E, "2")
    b = run(capsys, "term", DEMO_E, "2", "--json")
    assert a == b and json.loads(a[1])["value"] == "t2^3"
    a = run(capsys, "--horizon", "5", "classify", DEMO_E2, "--elem", "t2+t1", "--json")
    assert json.loads(a[1])["oracle"]["horizon"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", DEMO_E],
        ["term", DEMO_E, "4"],
        ["gauge", DEMO_E, "2"],
        ["closure", str(SEQ / "demo_E_perturbed.seq")],
        ["classify", DEMO_E, "--elem", "t1/t2^3"],
        ["classify", DEMO_E, "--elem", "1"],
        ["equal", DEMO_E, DEMO_E2],
        ["hn", DEMO_E, "2", "--eval", "t2^4"],
        ["expand", DEMO_E, "--poly", "X^3 - t2"],
    ],
)
def test_json_and_human_agree(capsys, argv):
    code_h, out_h, _ = run(capsys, *argv)
    code_j, out_j, _ = run(capsys, "--json", *argv)
    assert code_h == code_j
    rec_j = json.loads(out_j)
    rec_h = human_record(out_h)
    assert set(rec_h) == set(rec_j)
    for key, value in rec_j.items():
        if isinstance(value, str):
            assert rec_h[key] == value
        elif isinstance(value, bool) or value is None or isinstance(value, int):
            assert rec_h[key] == str(value)
        elif isinstance(value, list) and value and all(isinstance(x, int) for x in value):
            assert rec_h[key] == "(" + ",".join(map(str, value)) + ")"


def test_print_spec_round_trip(capsys, tmp_path):
    for path in sorted(SEQ.glob("*.seq")):
        if path.name == "not_pcv.seq":
            continue
        code, out, _ = run(capsys, "print-spec", str(path))
        assert code == 0
        copy = tmp_path / path.name
        copy.write_text(out)
        a, b = load_sequence(path), load_sequence(copy)
        assert a.terms(6) == b.terms(6) and a.tail.b == b.tail.b
        assert run(capsys, "print-spec", str(copy))[1] == out


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "classify", DEMO_E, "--elem", "t2 +")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "classify", DEMO_E, "--elem", "t3")
    assert code == 2 and "out of rank" in err
    code, _, err = run(capsys, "term", str(tmp_path / "missing.seq"), "1")
    assert code == 2 and err
    bad = tmp_path / "bad.seq"
    bad.write_text("rank = 2\nprefix = [t2]\ntail.u = 1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "tail.b" in err
    code, _, _ = run(capsys, "term", DEMO_E, "-1")
    assert code == 2


def test_seqfile_parsing():
    spec = parse_spec("# comment\nrank = 2\nprefix = [t2, (t2 + t1)/2]\ntail.u = t2^3\ntail.b = (0, 1)\n")
    assert spec.n0 == 1 and spec.prefix == ["t2", "(t2 + t1)/2"] and spec.b == (0, 1)
    with pytest.raises(SequenceFileError):
        parse_spec("rank = 2\nrank = 3\n")
    with pytest.raises(SequenceFileError):
        parse_spec("rank = 2\nprefix = [t2]\ntail.u = 1\ntail.b = (0,1)\ntail.n0 = 3\n").build()


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "pcvclosure", "classify", DEMO_E, "--elem", "t2+t1"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and "Coset(0)" in res.stdout
