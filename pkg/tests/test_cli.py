import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from renyi_lab import cli, instances
from renyi_lab.measured_spaces import Distribution


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj if isinstance(obj, dict) else obj.to_dict()))
        return str(path)

    return {
        "u4": put("u4.json", Distribution.uniform(instances.alphabet(4))),
        "p": put("p.json", Distribution.from_masses(instances.alphabet(2), [0.75, 0.25])),
        "q": put("q.json", Distribution.uniform(instances.alphabet(2))),
        "diag": put("diag.json", instances.diagonal_joint(2)),
        "prod": put("prod.json", instances.product_joint([0.3, 0.7], [0.4, 0.6])),
        "bscj": put("bscj.json", instances.joint_from([0.5, 0.5], instances.bsc(0.1))),
        "rand": put("rand.json", instances.random_joint(np.random.default_rng(3), 3, 3)),
        "bsc": put("bsc.json", instances.bsc(0.25)),
        "id": put("id.json", instances.identity_channel(2)),
        "bad": put("bad.json", {"space": {"labels": ["a", "b"], "gamma": [1, 1]}, "density": [0.5, 0.6]}),
        "junk": put("junk.json", {"hello": 1}),
        "dir": str(tmp_path),
    }


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_entropy(capsys, files):
    assert run(capsys, "entropy", files["u4"], "--alpha", 2)[:2] == (0, "1.386294\n")
    assert run(capsys, "entropy", files["diag"], "--conditional", "--alpha", 2)[:2] == (0, "0.000000\n")
    code, out, _ = run(capsys, "entropy", files["u4"], "--alpha", 2, "--bits")
    assert out == "2.000000\n"
    code, out, _ = run(capsys, "entropy", files["diag"], "--alpha", 2)
    assert out == "0.693147\n"


def test_validation_errors(capsys, files):
    code, _, err = run(capsys, "entropy", files["bad"], "--alpha", 2)
    assert code == 2 and "normalized" in err
    assert run(capsys, "entropy", files["junk"], "--alpha", 2)[0] == 2
    assert run(capsys, "entropy", files["dir"] + "/missing.json", "--alpha", 2)[0] == 2
    assert run(capsys, "entropy", files["u4"], "--alpha", "-1")[0] == 2
    assert run(capsys, "entropy", files["u4"])[0] == 2
    assert run(capsys, "entropy", files["u4"], "--conditional", "--alpha", 2)[0] == 2
    assert run(capsys, "mi", files["u4"], "--alpha", 2)[0] == 2


def test_divergence(capsys, files):
    code, out, _ = run(capsys, "divergence", files["p"], files["q"], "--alpha", "2,inf")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["alpha", "value"]
    assert lines[1].split() == ["2.0", f"{math.log(1.25):.6f}"]
    assert lines[2].split() == ["inf", f"{math.log(1.5):.6f}"]


def test_mi(capsys, files):
    for f in cli.MI_FUNCTIONALS:
        code, out, _ = run(capsys, "mi", files["prod"], "--functional", f, "--alpha", 2)
        assert code == 0 and float(out) == pytest.approx(0.0, abs=1e-6)
    code, out, _ = run(capsys, "mi", files["diag"], "--functional", "sibson", "--alpha", 2, "--show-optimizer")
    assert out.splitlines()[0] == "0.693147"
    assert "mu=[0.500000, 0.500000]" in out
    code, out, _ = run(capsys, "mi", files["rand"], "--functional", "lp", "--alpha", 2,
                       "--restarts", 1, "--output", "json")
    one = json.loads(out)["results"][0]["value"]
    code, out, _ = run(capsys, "mi", files["rand"], "--functional", "lp", "--alpha", 2,
                       "--restarts", 8, "--output", "json")
    assert json.loads(out)["results"][0]["value"] <= one
    code, _, err = run(capsys, "mi", files["rand"], "--functional", "augustin", "--alpha", "inf")
    assert code == 3


def test_capacity(capsys, files):
    code, out, _ = run(capsys, "capacity", files["bsc"], "--functional", "radius", "--alpha", 2, "--output", "json")
    res = json.loads(out)["results"][0]
    assert code == 0 and res["value"] == pytest.approx(math.log(1.25), abs=1e-4)
    assert res["converged"] is True
    code, out, _ = run(capsys, "capacity", files["id"], "--functional", "all", "--alpha", 2, "--output", "json")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["status"] == "pass"
    for k in ("radius", "I_xy", "J", "K_xy"):
        assert rep["values"][k] == pytest.approx(math.log(2), abs=1e-4)
    code, _, err = run(capsys, "capacity", files["id"], "--functional", "all", "--alpha", 0.8)
    assert code == 3 and "order" in err
    code, out, _ = run(capsys, "capacity", files["bscj"], "--functional", "K", "--direction", "yx",
                       "--alpha", 2, "--show-optimizer")
    assert code == 0 and "input" in out.splitlines()[0]


def test_sweep(capsys, files):
    code, out, _ = run(capsys, "sweep", files["u4"], "--alpha", "0,0.5,1,2,inf")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["alpha", "value"]
    assert {r[1] for r in rows[1:]} == {"1.386294"}
    code, out, _ = run(capsys, "sweep", files["bscj"], "--quantity", "conditional",
                       "--alpha", "0,0.25,0.5,1,2,4,inf")
    vals = [float(r[1]) for r in list(csv.reader(io.StringIO(out)))[1:]]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    code, out, _ = run(capsys, "sweep", files["rand"], "--quantity", "tailbound", "--t", 0.2,
                       "--alpha", "0.1,0.3,0.5,0.7,0.9")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["alpha", "value", "bound"]
    assert all(float(r[1]) <= float(r[2]) for r in rows[1:])
    assert run(capsys, "sweep", files["rand"], "--quantity", "tailbound", "--alpha", 0.5)[0] == 2
    code, out, _ = run(capsys, "sweep", files["p"], "--quantity", "divergence", "--q", files["q"],
                       "--alpha", 2, "--output", "table")
    assert out.split()[-1] == f"{math.log(1.25):.6f}"


def test_sweep_is_byte_identical(capsys, files):
    args = ("sweep", files["rand"], "--quantity", "lp", "--alpha", "0.5,2,4")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first


def test_json_roundtrip_precision(capsys, files):
    code, out, _ = run(capsys, "sweep", files["rand"], "--quantity", "sibson", "--alpha", "0.5,2",
                       "--output", "json")
    data = json.loads(out)
    code, out, _ = run(capsys, "sweep", files["rand"], "--quantity", "sibson", "--alpha", "0.5,2")
    printed = [float(r[1]) for r in list(csv.reader(io.StringIO(out)))[1:]]
    for rec, p in zip(data["results"], printed):
        assert f"{rec['value']:.6f}" == f"{p:.6f}"
        assert float(f"{rec['value']:.12g}") == pytest.approx(rec["value"], rel=1e-12)


def test_verify(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "sandwich", "--suite", "divergence", "--trials", 5)
    assert code == 0 and "sandwich" in out
    code, out, _ = run(capsys, "verify", "--suite", "sandwich", "--trials", 2, "--output", "json")
    assert json.loads(out)["passed"] is True
    assert run(capsys, "verify", "--suite", "nope")[0] == 2

    from renyi_lab import divergence

    real = divergence.renyi_divergence
    monkeypatch.setattr(divergence, "renyi_divergence", lambda p, q, o: real(p, q, o) + 0.01)
    code, out, _ = run(capsys, "verify", "--suite", "anchors")
    assert code == 1
    assert "D_2 anchor" in out
    report = json.loads(out.splitlines()[-1])
    assert any(f["property"] == "D_2 anchor" for f in report["failures"])


def test_seed_environment(capsys, monkeypatch):
    monkeypatch.setenv("RENYI_LAB_SEED", "7")
    args = cli.build_parser(cli._default_seed()).parse_args(["verify"])
    assert args.seed == 7
    monkeypatch.setenv("RENYI_LAB_SEED", "x")
    assert run(capsys, "verify", "--suite", "anchors")[0] == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "renyi_lab", "entropy", files["u4"], "--alpha", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "1.386294\n"
