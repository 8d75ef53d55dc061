"""Named and random instances used by the tests, the verifier and the demos."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .measured_spaces import (
    Channel,
    Distribution,
    JointDistribution,
    MeasuredAlphabet,
    load_object,
)


def alphabet(n: int, gamma=None, prefix: str = "") -> MeasuredAlphabet:
    labels = [f"{prefix}{i}" for i in range(n)]
    if gamma is None:
        return MeasuredAlphabet.counting(labels)
    return MeasuredAlphabet(labels, gamma)


def random_gamma(rng: np.random.Generator, n: int) -> np.ndarray:
    """Positive weights whose total is generally not one."""
    return rng.uniform(0.2, 3.0, size=n)


def random_distribution(rng, n: int, gamma=None, concentration: float = 1.0) -> Distribution:
    space = alphabet(n, gamma)
    return Distribution.from_masses(space, rng.dirichlet(np.full(n, concentration)))


def random_joint(
    rng: np.random.Generator,
    n: int | None = None,
    m: int | None = None,
    max_size: int = 4,
    weighted: bool = True,
) -> JointDistribution:
    """Dirichlet(1) joint masses on an ``n x m`` grid (sizes drawn from 2..max_size).

    With ``weighted`` both alphabets get random reference weights.
    """
    n = int(rng.integers(2, max_size + 1)) if n is None else n
    m = int(rng.integers(2, max_size + 1)) if m is None else m
    gx = random_gamma(rng, n) if weighted else None
    gy = random_gamma(rng, m) if weighted else None
    masses = rng.dirichlet(np.ones(n * m)).reshape(n, m)
    return JointDistribution.from_masses(alphabet(n, gx, "x"), alphabet(m, gy, "y"), masses)


def random_channel(rng, n: int, m: int, weighted: bool = False) -> Channel:
    gx = random_gamma(rng, n) if weighted else None
    gy = random_gamma(rng, m) if weighted else None
    rows = rng.dirichlet(np.ones(m), size=n)
    return Channel.from_masses(alphabet(n, gx, "x"), alphabet(m, gy, "y"), rows)


def channel_from_rows(rows, gamma_in=None, gamma_out=None) -> Channel:
    rows = np.asarray(rows, dtype=float)
    n, m = rows.shape
    return Channel.from_masses(alphabet(n, gamma_in, "x"), alphabet(m, gamma_out, "y"), rows)


def bsc(p: float) -> Channel:
    return channel_from_rows([[1 - p, p], [p, 1 - p]])


def bec(e: float) -> Channel:
    """Binary erasure channel; outputs 0, erasure, 1."""
    return channel_from_rows([[1 - e, e, 0.0], [0.0, e, 1 - e]])


def z_channel(p: float) -> Channel:
    return channel_from_rows([[1.0, 0.0], [p, 1 - p]])


def identity_channel(n: int = 2) -> Channel:
    return channel_from_rows(np.eye(n))


def constant_channel(row, n: int = 2) -> Channel:
    return channel_from_rows(np.tile(np.asarray(row, dtype=float), (n, 1)))


def joint_from(input_masses, channel: Channel) -> JointDistribution:
    masses = np.asarray(input_masses, dtype=float)[:, None] * channel.masses
    return JointDistribution.from_masses(channel.input_space, channel.output_space, masses)


def diagonal_joint(n: int = 2, gamma_x=None, gamma_y=None) -> JointDistribution:
    return JointDistribution.from_masses(
        alphabet(n, gamma_x, "x"), alphabet(n, gamma_y, "y"), np.eye(n) / n
    )


def product_joint(px, py, gamma_x=None, gamma_y=None) -> JointDistribution:
    px, py = np.asarray(px, dtype=float), np.asarray(py, dtype=float)
    return JointDistribution.from_masses(
        alphabet(px.size, gamma_x, "x"), alphabet(py.size, gamma_y, "y"), np.outer(px, py)
    )


def markov_chain(rng, n: int, m: int, k: int, weighted: bool = True):
    """Joints of ``(X, Y)`` and ``(X, Z)`` for a chain ``X -> Y -> Z``."""
    px = rng.dirichlet(np.ones(n))
    w1 = rng.dirichlet(np.ones(m), size=n)
    w2 = rng.dirichlet(np.ones(k), size=m)
    gx = random_gamma(rng, n) if weighted else None
    gy = random_gamma(rng, m) if weighted else None
    gz = random_gamma(rng, k) if weighted else None
    sx = alphabet(n, gx, "x")
    xy = JointDistribution.from_masses(sx, alphabet(m, gy, "y"), px[:, None] * w1)
    xz = JointDistribution.from_masses(sx, alphabet(k, gz, "z"), px[:, None] * (w1 @ w2))
    return xy, xz


def three_variable_joint(rng, n: int, m: int, k: int, weighted: bool = True):
    """Joints of ``(X, (Y, Z))`` and ``(X, Z)`` from one random law of ``(X, Y, Z)``."""
    P = rng.dirichlet(np.ones(n * m * k)).reshape(n, m, k)
    gx = random_gamma(rng, n) if weighted else None
    gy = random_gamma(rng, m) if weighted else None
    gz = random_gamma(rng, k) if weighted else None
    sx, sy, sz = alphabet(n, gx, "x"), alphabet(m, gy, "y"), alphabet(k, gz, "z")
    x_yz = JointDistribution.from_masses(sx, sy.product(sz), P.reshape(n, m * k))
    x_z = JointDistribution.from_masses(sx, sz, P.sum(axis=1))
    return x_yz, x_z


def load_desk_instances() -> dict:
    """The frozen desk-scale instance set, keyed by name (insertion order kept)."""
    text = resources.files("renyi_lab").joinpath("data/desk_instances.json").read_text()
    raw = json.loads(text)
    return {name: load_object(obj) for name, obj in raw["instances"].items()}
