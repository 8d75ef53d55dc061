import math

import numpy as np
import pytest

from renyi_lab import divergence, entropy, instances, oracle
from renyi_lab.errors import SpaceMismatchError
from renyi_lab.measured_spaces import Distribution, JointDistribution, reference_measure

ORDERS = (0.0, 0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 4.0, math.inf)


def _d(masses, gamma=None):
    return Distribution.from_masses(instances.alphabet(len(masses), gamma), masses)


def test_hand_values():
    p, q = _d([0.75, 0.25]), _d([0.5, 0.5])
    assert divergence.renyi_divergence(p, q, 2) == pytest.approx(math.log(5 / 4), abs=1e-12)
    assert divergence.renyi_divergence(p, q, math.inf) == pytest.approx(math.log(3 / 2), abs=1e-12)
    kl = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    assert divergence.renyi_divergence(p, q, 1) == pytest.approx(kl)
    for a in ORDERS:
        assert divergence.renyi_divergence(p, p, a) == pytest.approx(0.0, abs=1e-12)


def test_disjoint_supports():
    p, q = _d([1.0, 0.0]), _d([0.0, 1.0])
    assert divergence.renyi_divergence(p, q, 2) == math.inf
    assert divergence.renyi_divergence(p, q, 1) == math.inf
    assert divergence.renyi_divergence(p, q, 0.5) == math.inf


def test_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        divergence.renyi_divergence(_d([0.5, 0.5]), _d([0.2, 0.3, 0.5]), 2)


def test_continuity_at_one(rng):
    for _ in range(20):
        p = _d(rng.dirichlet(np.ones(4)))
        q = _d(rng.dirichlet(np.ones(4)))
        d1 = divergence.renyi_divergence(p, q, 1)
        for a in (1 - 1e-6, 1 + 1e-6):
            assert divergence.renyi_divergence(p, q, a) == pytest.approx(d1, abs=1e-5)


def test_sibson_examples():
    f = _d([0.2, 0.8], [1.0, 2.0])
    g = _d([0.1, 0.3, 0.6], [0.5, 1.0, 2.0])
    prod = JointDistribution.product(f, g)
    for a in (0.5, 2.0, 4.0):
        dec = divergence.sibson_decomposition(prod, a)
        np.testing.assert_allclose(dec.q_star.masses, g.masses, atol=1e-12)
    joint = instances.joint_from([0.3, 0.7], instances.bsc(0.2))
    dec = divergence.sibson_decomposition(joint, 1)
    np.testing.assert_allclose(dec.q_star.masses, joint.marginal_y().masses)
    diag = instances.diagonal_joint(2)
    dec = divergence.sibson_decomposition(diag, 2)
    np.testing.assert_allclose(dec.q_star.masses, [0.5, 0.5])
    assert dec.h_cond == pytest.approx(0.0, abs=1e-15)


def test_sibson_identity(rng):
    for _ in range(10):
        joint = instances.random_joint(rng)
        ref = reference_measure(joint.space_x)
        for a in (0.5, 2.0, 4.0):
            dec = divergence.sibson_decomposition(joint, a)
            lam = Distribution.from_masses(joint.space_y, rng.dirichlet(np.ones(joint.shape[1])))
            lhs = divergence.joint_divergence(joint, ref, lam, a)
            rhs = -dec.h_cond + divergence.renyi_divergence(dec.q_star, lam, a)
            assert lhs == pytest.approx(rhs, abs=1e-10)


def test_variational_examples(rng):
    f = _d([0.2, 0.8], [1.0, 2.0])
    prod = JointDistribution.product(f, _d([0.4, 0.6]))
    assert divergence.variational_conditional_entropy(prod, 2) == pytest.approx(entropy.renyi_entropy(f, 2))
    assert divergence.variational_conditional_entropy(instances.diagonal_joint(2), 2) == pytest.approx(0.0, abs=1e-12)
    joint = instances.random_joint(rng, 3, 3, weighted=False)
    for a in (0.5, 2.0):
        v = divergence.variational_conditional_entropy(joint, a)
        assert v == pytest.approx(entropy.conditional_renyi_entropy(joint, a), abs=1e-10)
        # brute-force minimum of the divergence to γ ⊗ λ over a grid of λ
        ref = reference_measure(joint.space_x)
        grid = oracle.SimplexGrid(3, 1e-2).points()
        vals = [
            divergence.joint_divergence(joint, ref, Distribution.from_masses(joint.space_y, lam), a)
            for lam in grid
            if (lam > 0).all()
        ]
        assert -min(vals) == pytest.approx(v, abs=1e-3)
        assert -min(vals) <= v + 1e-12


def test_divergence_rows_matches_scalar(rng):
    W = rng.dirichlet(np.ones(3), size=4)
    q = rng.dirichlet(np.ones(3))
    for a in (0.5, 1.0, 2.0):
        rows = divergence.divergence_rows(W, q, a)
        for i in range(4):
            assert rows[i] == pytest.approx(divergence.renyi_divergence(_d(W[i]), _d(q), a))
