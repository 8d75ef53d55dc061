import math

import numpy as np
import pytest

from renyi_lab import instances
from renyi_lab.errors import (
    OutOfSupportError,
    SpaceMismatchError,
    ValidationError,
)
from renyi_lab.measured_spaces import (
    Channel,
    Distribution,
    JointDistribution,
    MeasuredAlphabet,
    Order,
    conditional_slice,
    load_object,
    make_joint_from_input_and_channel,
    swap,
)


def test_order_parsing_and_kinds():
    assert Order.parse("inf").is_inf
    assert Order.parse("0").is_zero
    assert Order.parse(1).is_one
    assert Order.parse(" 2.5 ").is_finite
    assert str(Order(math.inf)) == "inf"
    for bad in ("-1", "nan", "abc"):
        with pytest.raises(ValidationError):
            Order.parse(bad)


def test_alphabet_validation():
    with pytest.raises(ValidationError):
        MeasuredAlphabet(("a", "b"), [1.0, 0.0])
    with pytest.raises(ValidationError):
        MeasuredAlphabet(("a", "a"), [1.0, 1.0])
    sp = MeasuredAlphabet(("a", "b"), [2.0, 0.5])
    assert sp.total_mass == pytest.approx(2.5)
    assert MeasuredAlphabet.from_dict(sp.to_dict()) == sp


def test_distribution_normalization_is_checked():
    sp = instances.alphabet(2, [2.0, 2.0])
    with pytest.raises(ValidationError, match="normalized"):
        Distribution(sp, [0.5, 0.5])  # masses would sum to 2
    d = Distribution.from_masses(sp, [0.75, 0.25])
    np.testing.assert_allclose(d.density, [0.375, 0.125])
    np.testing.assert_allclose(d.masses, [0.75, 0.25])


def test_identity_channel_joint():
    u = Distribution.uniform(instances.alphabet(2, prefix="x"))
    joint = make_joint_from_input_and_channel(u, instances.identity_channel(2))
    np.testing.assert_allclose(joint.density, [[0.5, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(joint.marginal_y().masses, [0.5, 0.5])


def test_constant_channel_gives_product():
    ch = instances.constant_channel([0.2, 0.3, 0.5], n=3)
    px = Distribution.from_masses(ch.input_space, [0.1, 0.6, 0.3])
    joint = make_joint_from_input_and_channel(px, ch)
    np.testing.assert_allclose(joint.masses, np.outer(px.masses, [0.2, 0.3, 0.5]), atol=1e-15)


def test_bsc_joint(bsc_joint):
    np.testing.assert_allclose(bsc_joint.density, [[0.675, 0.075], [0.025, 0.225]], atol=1e-15)


def test_joint_needs_matching_input_space():
    ch = instances.bsc(0.1)
    other = Distribution.uniform(instances.alphabet(3))
    with pytest.raises(SpaceMismatchError):
        make_joint_from_input_and_channel(other, ch)


def test_conditional_slices(bsc_joint):
    s = conditional_slice(bsc_joint, 0)
    np.testing.assert_allclose(s.masses, np.array([0.675, 0.025]) / 0.7)
    diag = instances.diagonal_joint(2)
    np.testing.assert_allclose(conditional_slice(diag, 0).masses, [1.0, 0.0])
    prod = instances.product_joint([0.3, 0.7], [0.6, 0.4])
    np.testing.assert_allclose(conditional_slice(prod, 1).masses, [0.3, 0.7])
    null = instances.product_joint([0.3, 0.7], [1.0, 0.0])
    with pytest.raises(OutOfSupportError):
        conditional_slice(null, 1)


def test_swap(bsc_joint):
    diag = instances.diagonal_joint(2)
    np.testing.assert_array_equal(swap(diag).density, diag.density)
    s = swap(bsc_joint)
    np.testing.assert_array_equal(s.density, bsc_joint.density.T)
    np.testing.assert_allclose(s.marginal_x().masses, bsc_joint.marginal_y().masses)
    assert swap(swap(bsc_joint)) == bsc_joint


def test_roundtrip_input_and_channel(rng):
    for _ in range(20):
        ch = instances.random_channel(rng, 3, 4, weighted=True)
        masses = rng.dirichlet(np.ones(3))
        masses[0] = 0.0
        masses /= masses.sum()
        px = Distribution.from_masses(ch.input_space, masses)
        joint = make_joint_from_input_and_channel(px, ch)
        np.testing.assert_allclose(joint.marginal_x().masses, masses, atol=1e-12)
        rec = joint.channel()
        np.testing.assert_allclose(rec.masses[1:], ch.masses[1:], atol=1e-12)


def test_json_roundtrip(bsc_joint):
    for obj in (bsc_joint, bsc_joint.channel(), bsc_joint.marginal_x()):
        again = load_object(obj.to_dict())
        assert type(again) is type(obj)
        assert again == obj
    with pytest.raises(ValidationError):
        load_object({"nothing": 1})


def test_weighted_joint_marginals():
    sx = instances.alphabet(2, [2.0, 0.5])
    sy = instances.alphabet(3, [1.0, 3.0, 0.25])
    masses = np.array([[0.1, 0.2, 0.1], [0.3, 0.1, 0.2]])
    joint = JointDistribution.from_masses(sx, sy, masses)
    np.testing.assert_allclose(joint.marginal_x().masses, masses.sum(axis=1))
    np.testing.assert_allclose(joint.marginal_y().masses, masses.sum(axis=0))
    assert isinstance(joint.channel(), Channel)
