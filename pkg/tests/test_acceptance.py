"""Acceptance criteria, one test per criterion at full instance counts.

Each test asserts its own wall-clock budget.  Criterion 7's α→0 threshold is
checked literally; see the README for why it fails on some instances.
"""

import json
import math
import time

import numpy as np
import pytest

from renyi_lab import cli, entropy, instances, oracle, verify
from renyi_lab.measured_spaces import Order

MINUTE = 60.0


def _run(name, budget=MINUTE, **kw):
    start = time.perf_counter()
    res = verify.run_suite(name, seed=0, **kw)
    elapsed = time.perf_counter() - start
    assert res.passed, json.dumps(res.failures[:5], indent=1)
    assert res.inconclusive == 0
    assert elapsed < budget, f"{name} took {elapsed:.1f}s"
    return res


def test_criterion_01_closed_form_anchors():
    res = _run("anchors")
    assert res.checks >= 30


def test_criterion_02_sibson_identity():
    res = _run("sibson_identity")
    # 100 joints x 3 orders x 100 lambdas, two checks per lambda
    assert res.checks >= 100 * 3 * 100 * 2
    assert res.worst["Sibson identity residual"] >= 0


def test_criterion_03_sandwich():
    res = _run("sandwich")
    assert res.checks == 200 * 7 * 2


def test_criterion_04_capacity_equalities():
    res = _run("capacity_equalities", budget=10 * MINUTE)
    assert res.checks == 50 * 3 * 5


def test_criterion_05_lp_capacity_equals_radius():
    res = _run("lp_radius")
    assert res.checks == 20 * 3 * 3


@pytest.mark.parametrize(
    "suite", ["order_monotonicity", "conditioning", "three_variable", "concavity", "chain_rule", "sensitivity"]
)
def test_criterion_06_entropy_properties(suite):
    res = _run(suite)
    assert res.checks >= 200


def test_criterion_07_limits_at_one():
    res = _run("limits")
    for key in ("h(X|Y) -> Shannon from +", "h(X|Y) -> Shannon from -"):
        assert res.worst[key] >= 0


def test_criterion_07_limit_at_zero():
    rng = np.random.default_rng(0)
    over = []
    start = time.perf_counter()
    for t in range(200):
        joint = instances.random_joint(rng)
        r = oracle.limit_prober(lambda o, j=joint: entropy.conditional_renyi_entropy(j, o), "0")
        assert r.alphas[-1] == pytest.approx(1e-3)
        assert r.monotone and r.direction == "below"
        if r.terminal_gap > 1e-3:
            over.append((t, r.terminal_gap))
    assert time.perf_counter() - start < MINUTE
    assert not over, f"{len(over)} of 200 joints have terminal gap > 1e-3 at a=1e-3: {over[:5]}"


def test_criterion_08_oracle_equivalence():
    start = time.perf_counter()
    first = verify.run_all(["oracle", "anchors"], seed=0)
    second = verify.run_all(["oracle", "anchors"], seed=0)
    assert time.perf_counter() - start < MINUTE
    assert first["passed"], json.dumps(first["suites"][0]["failures"][:5], indent=1)
    assert len(verify.load_desk_oracle()["values"]) == 16
    assert json.dumps(first, sort_keys=True).encode() == json.dumps(second, sort_keys=True).encode()


def test_criterion_08_cli_reports_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code = cli.main(["verify", "--suite", "sandwich", "--suite", "tail_bound", "--trials", "5",
                         "--seed", "11", "--output", "json"])
        assert code == 0
        outs.append(capsys.readouterr().out.encode())
    assert outs[0] == outs[1]


def test_criterion_09_tail_bound():
    res = _run("tail_bound")
    assert res.checks == 50 * 10 * 5


def test_criterion_10_reductions():
    res = _run("reductions")
    assert res.checks == 100 * 6 * 3
