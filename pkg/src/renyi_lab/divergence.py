"""Rényi divergence and the Sibson decomposition of joint divergences."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from . import entropy
from .errors import SpaceMismatchError, UnsupportedOrderError
from .measured_spaces import (
    Distribution,
    JointDistribution,
    Measure,
    as_order,
    reference_measure,
)


def renyi_divergence(p: Distribution, q: Measure, order) -> float:
    """Rényi divergence ``D_alpha(p || q)``.

    ``q`` may be any finite measure on the same alphabet (it need not be
    normalized).  The value is computed from the densities and reference
    weights exactly as written, so the independence from the reference
    weights is a property of the result, not of the code path.

    Returns ``inf`` when the order requires absolute continuity that fails.
    """
    if p.space != q.space:
        raise SpaceMismatchError("divergence arguments live on different alphabets")
    order = as_order(order)
    gamma = p.space.gamma
    f, g = p.density, q.density
    sp = f > 0
    if order.is_zero:
        mass = float(np.sum(gamma[sp] * g[sp]))
        return math.inf if mass <= 0 else -math.log(mass)
    if order.is_one:
        if (g[sp] <= 0).any():
            return math.inf
        return float(np.sum(gamma[sp] * f[sp] * (np.log(f[sp]) - np.log(g[sp]))))
    if order.is_inf:
        if (g[sp] <= 0).any():
            return math.inf
        return float(np.max(np.log(f[sp]) - np.log(g[sp])))
    a = order.alpha
    both = sp & (g > 0)
    if a > 1 and not np.array_equal(both, sp):
        return math.inf
    if not both.any():
        return math.inf
    log_sum = logsumexp(
        np.log(gamma[both]) + a * np.log(f[both]) + (1.0 - a) * np.log(g[both])
    )
    return float(log_sum / (a - 1.0))


def divergence_rows(P, q, alpha: float) -> np.ndarray:
    """Divergences ``D_alpha(P[i] || q)`` of each row of a mass matrix.

    Mass-level counterpart of :func:`renyi_divergence`, used by the solvers.
    ``alpha`` must be a positive finite number or ``inf``.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    q = np.asarray(q, dtype=float)
    sp = P > 0
    bad = (sp & (q <= 0)[None, :]).any(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        logP = np.where(sp, np.log(np.where(sp, P, 1.0)), -np.inf)
        logq = np.log(q)
        if alpha == 1.0:
            terms = np.where(sp, P * (logP - logq[None, :]), 0.0)
            out = terms.sum(axis=1)
        elif math.isinf(alpha):
            out = np.where(sp, logP - logq[None, :], -np.inf).max(axis=1)
        else:
            mask = sp & (q > 0)[None, :]
            terms = np.where(mask, alpha * logP + (1.0 - alpha) * logq[None, :], -np.inf)
            out = logsumexp(terms, axis=1) / (alpha - 1.0)
    if alpha >= 1.0:
        out = np.where(bad, np.inf, out)
    return out


@dataclass(frozen=True)
class SibsonDecomposition:
    """Optimizer of ``λ ↦ D_α(P_XY || γ ⊗ λ)`` and the conditional entropy it yields.

    Attributes
    ----------
    q_star : Distribution
        Normalized version of the measure with density
        ``φ(y) = (Σ_x γ(x) F(x,y)^α)^{1/α}`` w.r.t. the Y reference.
    mu_star_mass : float
        Total mass ``Σ_y η(y) φ(y)`` of that measure.
    h_cond : float
        ``-α/(α-1) log mu_star_mass``, the conditional entropy of X given Y.
    """

    q_star: Distribution
    mu_star_mass: float
    h_cond: float


def _regular_or_one(order, what):
    order = as_order(order)
    if order.is_zero or order.is_inf:
        raise UnsupportedOrderError(f"{what} is defined for orders in (0, inf), got {order}")
    return order


def sibson_decomposition(joint: JointDistribution, order) -> SibsonDecomposition:
    order = _regular_or_one(order, "the Sibson decomposition")
    if order.is_one:
        py = joint.marginal_y()
        h = entropy.conditional_renyi_entropy(joint, order)
        return SibsonDecomposition(py, 1.0, h)
    a = order.alpha
    gy = joint.space_y.gamma
    log_phi = entropy._slice_log_norms(joint, a)
    finite = np.isfinite(log_phi)
    log_mass = float(logsumexp(np.log(gy[finite]) + log_phi[finite]))
    density = np.where(finite, np.exp(log_phi - log_mass), 0.0)
    q_star = Distribution(joint.space_y, density)
    h = -a / (a - 1.0) * log_mass
    return SibsonDecomposition(q_star, math.exp(log_mass), h)


def product_measure(mu: Measure, nu: Measure) -> Measure:
    """``mu ⊗ nu`` on the product alphabet, density ``mu(x) nu(y)``."""
    return Measure(mu.space.product(nu.space), np.outer(mu.density, nu.density).ravel())


def joint_divergence(joint: JointDistribution, mu: Measure, nu: Measure, order) -> float:
    """``D_α(P_XY || mu ⊗ nu)`` evaluated on the product alphabet."""
    if mu.space != joint.space_x or nu.space != joint.space_y:
        raise SpaceMismatchError("product measure factors must live on the joint's alphabets")
    return renyi_divergence(joint.as_distribution(), product_measure(mu, nu), order)


def variational_conditional_entropy(joint: JointDistribution, order) -> float:
    """``-min_λ D_α(P_XY || γ ⊗ λ)``, evaluated at the explicit minimizer."""
    dec = sibson_decomposition(joint, order)
    return -joint_divergence(joint, reference_measure(joint.space_x), dec.q_star, order)
