"""Finite measured alphabets and the probability objects that live on them.

Every object stores *densities* with respect to the reference weights of its
alphabet; probability masses are derived as ``density * gamma``.  All objects
are immutable after construction (their arrays are flagged read-only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import OutOfSupportError, SpaceMismatchError, ValidationError

NORMALIZATION_TOL = 1e-12


def _frozen(values, ndim, what):
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise ValidationError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if np.isnan(arr).any():
        raise ValidationError(f"{what} contains NaN")
    if np.isinf(arr).any():
        raise ValidationError(f"{what} contains an infinite entry")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Order:
    """Order parameter alpha in [0, inf].

    The special values 0, 1 and inf are the limit orders; every other
    positive finite value is a regular order.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if math.isnan(a) or a < 0:
            raise ValidationError(f"order must lie in [0, inf], got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def parse(cls, value) -> "Order":
        if isinstance(value, Order):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in {"inf", "infinity", "∞", "+inf"}:
                return cls(math.inf)
            try:
                return cls(float(text))
            except ValueError:
                raise ValidationError(f"cannot parse order {value!r}") from None
        return cls(float(value))

    @property
    def is_zero(self) -> bool:
        return self.alpha == 0.0

    @property
    def is_one(self) -> bool:
        return self.alpha == 1.0

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.alpha)

    @property
    def is_finite(self) -> bool:
        """True for the regular orders in (0, 1) and (1, inf)."""
        return not (self.is_zero or self.is_one or self.is_inf)

    @property
    def kind(self) -> str:
        if self.is_zero:
            return "zero"
        if self.is_one:
            return "one"
        if self.is_inf:
            return "inf"
        return "finite"

    def __float__(self):
        return self.alpha

    def __str__(self):
        return "inf" if self.is_inf else repr(self.alpha)


def as_order(value) -> Order:
    return Order.parse(value)


@dataclass(frozen=True, eq=False)
class MeasuredAlphabet:
    """A finite point set carrying strictly positive reference weights.

    The total mass of ``gamma`` is arbitrary; it does not have to be one.
    """

    labels: tuple
    gamma: np.ndarray

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        gamma = _frozen(self.gamma, 1, "gamma")
        if len(labels) == 0:
            raise ValidationError("alphabet must contain at least one point")
        if len(labels) != gamma.size:
            raise ValidationError(
                f"{len(labels)} labels but {gamma.size} reference weights"
            )
        if len(set(labels)) != len(labels):
            raise ValidationError("labels must be unique")
        if (gamma <= 0).any():
            raise ValidationError("reference weights must be strictly positive")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def counting(cls, labels: int | Iterable) -> "MeasuredAlphabet":
        if isinstance(labels, (int, np.integer)):
            labels = [str(i) for i in range(int(labels))]
        labels = list(labels)
        return cls(labels, np.ones(len(labels)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.size

    @property
    def total_mass(self) -> float:
        return float(self.gamma.sum())

    def mass_of(self, mask) -> float:
        return float(self.gamma[np.asarray(mask, dtype=bool)].sum())

    def with_gamma(self, gamma) -> "MeasuredAlphabet":
        return MeasuredAlphabet(self.labels, gamma)

    def restrict(self, indices: Sequence[int]) -> "MeasuredAlphabet":
        idx = list(indices)
        return MeasuredAlphabet([self.labels[i] for i in idx], self.gamma[idx])

    def product(self, other: "MeasuredAlphabet") -> "MeasuredAlphabet":
        """Product alphabet in row-major order, weights ``gamma ⊗ eta``."""
        labels = [f"({a},{b})" for a in self.labels for b in other.labels]
        return MeasuredAlphabet(labels, np.outer(self.gamma, other.gamma).ravel())

    def __eq__(self, other):
        if not isinstance(other, MeasuredAlphabet):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.gamma, other.gamma)

    def __hash__(self):
        return hash((self.labels, self.gamma.tobytes()))

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "gamma": self.gamma.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "MeasuredAlphabet":
        try:
            return cls(data["labels"], data["gamma"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed alphabet: {exc}") from None


@dataclass(frozen=True, eq=False)
class Measure:
    """A finite measure given by its density with respect to ``space.gamma``."""

    space: MeasuredAlphabet
    density: np.ndarray

    def __post_init__(self):
        density = _frozen(self.density, 1, "density")
        if density.size != self.space.size:
            raise ValidationError(
                f"density has {density.size} entries, alphabet has {self.space.size}"
            )
        if (density < 0).any():
            raise ValidationError("density must be nonnegative")
        object.__setattr__(self, "density", density)

    @property
    def masses(self) -> np.ndarray:
        return self.density * self.space.gamma

    @property
    def support(self) -> np.ndarray:
        return self.density > 0

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.space == other.space
            and np.array_equal(self.density, other.density)
        )

    __hash__ = None


class Distribution(Measure):
    """A probability measure on a measured alphabet."""

    def __post_init__(self):
        super().__post_init__()
        total = float(np.sum(self.density * self.space.gamma))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"distribution is not normalized: total mass {total!r} differs from 1"
            )
        if not self.support.any():
            raise ValidationError("distribution has empty support")

    @classmethod
    def from_masses(cls, space: MeasuredAlphabet, masses) -> "Distribution":
        masses = np.asarray(masses, dtype=float)
        return cls(space, masses / space.gamma)

    @classmethod
    def uniform(cls, space: MeasuredAlphabet) -> "Distribution":
        return cls.from_masses(space, np.full(space.size, 1.0 / space.size))

    def to_dict(self) -> dict:
        return {"space": self.space.to_dict(), "density": self.density.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Distribution":
        try:
            space = MeasuredAlphabet.from_dict(data["space"])
            return cls(space, data["density"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed distribution: {exc}") from None


def reference_measure(space: MeasuredAlphabet) -> Measure:
    """The reference measure itself, i.e. density one everywhere."""
    return Measure(space, np.ones(space.size))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """A probability measure on ``space_x × space_y`` stored as a density
    ``F[i, j]`` with respect to ``gamma_x ⊗ gamma_y``."""

    space_x: MeasuredAlphabet
    space_y: MeasuredAlphabet
    density: np.ndarray

    def __post_init__(self):
        F = _frozen(self.density, 2, "joint density")
        if F.shape != (self.space_x.size, self.space_y.size):
            raise ValidationError(
                f"joint density has shape {F.shape}, expected "
                f"({self.space_x.size}, {self.space_y.size})"
            )
        if (F < 0).any():
            raise ValidationError("joint density must be nonnegative")
        total = float(np.sum(F * np.outer(self.space_x.gamma, self.space_y.gamma)))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"joint distribution is not normalized: total mass {total!r} differs from 1"
            )
        object.__setattr__(self, "density", F)

    @classmethod
    def from_masses(cls, space_x, space_y, masses) -> "JointDistribution":
        masses = np.asarray(masses, dtype=float)
        return cls(space_x, space_y, masses / np.outer(space_x.gamma, space_y.gamma))

    @classmethod
    def product(cls, f: Distribution, g: Distribution) -> "JointDistribution":
        return cls(f.space, g.space, np.outer(f.density, g.density))

    @property
    def masses(self) -> np.ndarray:
        return self.density * np.outer(self.space_x.gamma, self.space_y.gamma)

    @property
    def shape(self):
        return self.density.shape

    def marginal_x(self) -> Distribution:
        return Distribution(self.space_x, self.density @ self.space_y.gamma)

    def marginal_y(self) -> Distribution:
        return Distribution(self.space_y, self.space_x.gamma @ self.density)

    def as_distribution(self) -> Distribution:
        """The same law viewed as a distribution on the product alphabet."""
        return Distribution(self.space_x.product(self.space_y), self.density.ravel())

    def with_references(self, gamma_x=None, gamma_y=None) -> "JointDistribution":
        """Re-express the same law against new reference weights."""
        sx = self.space_x if gamma_x is None else self.space_x.with_gamma(gamma_x)
        sy = self.space_y if gamma_y is None else self.space_y.with_gamma(gamma_y)
        # via masses: a ratio of weights overflows for tiny new weights
        return JointDistribution.from_masses(sx, sy, self.masses)

    def restrict_x(self, indices: Sequence[int]) -> "JointDistribution":
        idx = list(indices)
        return JointDistribution(self.space_x.restrict(idx), self.space_y, self.density[idx])

    def channel(self) -> "Channel":
        """The kernel of Y given X.

        Rows for input letters of zero probability are set to the Y-marginal;
        they never enter any quantity weighted by ``P_X``.
        """
        f = self.density @ self.space_y.gamma
        g = self.marginal_y().density
        rows = np.empty_like(self.density)
        for i in range(self.space_x.size):
            rows[i] = self.density[i] / f[i] if f[i] > 0 else g
        return Channel(self.space_x, self.space_y, rows)

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return (
            self.space_x == other.space_x
            and self.space_y == other.space_y
            and np.array_equal(self.density, other.density)
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "space_x": self.space_x.to_dict(),
            "space_y": self.space_y.to_dict(),
            "F": self.density.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JointDistribution":
        try:
            return cls(
                MeasuredAlphabet.from_dict(data["space_x"]),
                MeasuredAlphabet.from_dict(data["space_y"]),
                data["F"],
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed joint distribution: {exc}") from None


@dataclass(frozen=True, eq=False)
class Channel:
    """A probability kernel: one output distribution per input letter.

    ``rows[i]`` is the density of ``W(· | i)`` with respect to the output
    reference weights.
    """

    input_space: MeasuredAlphabet
    output_space: MeasuredAlphabet
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        rows = _frozen(self.rows, 2, "channel rows")
        if rows.shape != (self.input_space.size, self.output_space.size):
            raise ValidationError(
                f"channel has shape {rows.shape}, expected "
                f"({self.input_space.size}, {self.output_space.size})"
            )
        if (rows < 0).any():
            raise ValidationError("channel densities must be nonnegative")
        totals = rows @ self.output_space.gamma
        bad = np.flatnonzero(np.abs(totals - 1.0) > NORMALIZATION_TOL)
        if bad.size:
            raise ValidationError(
                f"channel row {self.input_space.labels[bad[0]]!r} is not normalized "
                f"(total mass {totals[bad[0]]!r})"
            )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_masses(cls, input_space, output_space, masses) -> "Channel":
        masses = np.asarray(masses, dtype=float)
        return cls(input_space, output_space, masses / output_space.gamma)

    @property
    def masses(self) -> np.ndarray:
        """Row-stochastic transition matrix ``W[i, j] = W({j} | i)``."""
        return self.rows * self.output_space.gamma

    @property
    def shape(self):
        return self.rows.shape

    def row(self, i: int) -> Distribution:
        return Distribution(self.output_space, self.rows[i])

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return (
            self.input_space == other.input_space
            and self.output_space == other.output_space
            and np.array_equal(self.rows, other.rows)
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "input_space": self.input_space.to_dict(),
            "output_space": self.output_space.to_dict(),
            "rows": self.rows.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Channel":
        try:
            return cls(
                MeasuredAlphabet.from_dict(data["input_space"]),
                MeasuredAlphabet.from_dict(data["output_space"]),
                data["rows"],
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed channel: {exc}") from None


def make_joint_from_input_and_channel(input: Distribution, channel: Channel) -> JointDistribution:
    """Compose an input law with a channel into the joint law of (X, Y)."""
    if input.space != channel.input_space:
        raise SpaceMismatchError("input distribution does not live on the channel input space")
    F = input.density[:, None] * channel.rows
    return JointDistribution(channel.input_space, channel.output_space, F)


def conditional_slice(joint: JointDistribution, y_index: int) -> Distribution:
    """Law of X given Y equal to the ``y_index``-th output letter."""
    g = joint.space_x.gamma @ joint.density
    if not 0 <= y_index < joint.space_y.size:
        raise IndexError(f"y_index {y_index} out of range")
    if g[y_index] <= 0:
        raise OutOfSupportError(
            f"Y={joint.space_y.labels[y_index]!r} has zero probability"
        )
    return Distribution(joint.space_x, joint.density[:, y_index] / g[y_index])


def swap(joint: JointDistribution) -> JointDistribution:
    """Exchange the roles of X and Y."""
    return JointDistribution(joint.space_y, joint.space_x, joint.density.T)


def load_object(data: dict):
    """Build whichever object the JSON keys describe."""
    if "F" in data:
        return JointDistribution.from_dict(data)
    if "rows" in data:
        return Channel.from_dict(data)
    if "density" in data:
        return Distribution.from_dict(data)
    raise ValidationError("unrecognized object: expected keys 'density', 'F' or 'rows'")
