"""Rényi entropy, Rényi probability and conditional Rényi entropies.

All values are in nats.  Every quantity depends on the reference weights of
the alphabet on which the density is written; that dependence is the point.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from .errors import PropertyViolation, ValidationError
from .measured_spaces import Distribution, JointDistribution, as_order


def log_power_sum(weights, density, alpha):
    """``log Σ weights * density**alpha`` over the support of ``density``.

    Evaluated in the log domain so that large orders do not overflow.
    """
    density = np.asarray(density, dtype=float)
    mask = density > 0
    if not mask.any():
        return -math.inf
    return float(
        logsumexp(np.log(np.asarray(weights)[mask]) + alpha * np.log(density[mask]))
    )


def _slice_log_norms(joint: JointDistribution, alpha: float) -> np.ndarray:
    """``log φ(y) = (1/α) log Σ_x γ(x) F(x, y)^α`` for each output letter."""
    F = joint.density
    log_gx = np.log(joint.space_x.gamma)[:, None]
    with np.errstate(divide="ignore"):
        logF = np.log(F)
    terms = np.where(F > 0, log_gx + alpha * logF, -np.inf)
    return logsumexp(terms, axis=0) / alpha


def renyi_entropy(dist: Distribution, order) -> float:
    """Rényi entropy of ``dist`` with respect to its alphabet's reference weights.

    Parameters
    ----------
    dist : Distribution
        Law of X, stored as a density ``f`` w.r.t. ``gamma``.
    order : Order or float
        Any order in [0, inf].

    Returns
    -------
    float
        ``alpha/(1-alpha) * log ||f||_alpha`` for regular orders,
        ``log gamma(supp f)`` at 0, the Shannon entropy ``-Σ γ f log f`` at 1
        and ``-log max f`` at infinity.
    """
    order = as_order(order)
    f = dist.density
    gamma = dist.space.gamma
    supp = f > 0
    if order.is_zero:
        return math.log(gamma[supp].sum())
    if order.is_one:
        return float(-np.sum(gamma[supp] * f[supp] * np.log(f[supp])))
    if order.is_inf:
        return -math.log(f.max())
    a = order.alpha
    return log_power_sum(gamma, f, a) / (1.0 - a)


def renyi_probability(dist: Distribution, order) -> float:
    """``exp(-h)``; at order 0 this is ``1 / gamma(supp f)``."""
    return math.exp(-renyi_entropy(dist, order))


def conditional_renyi_entropy(joint: JointDistribution, order) -> float:
    """Arimoto-type conditional Rényi entropy of X given Y.

    For regular orders this is ``-α/(α-1) log Σ_y η(y) (Σ_x γ(x) F(x,y)^α)^{1/α}``.
    Order 0 is the largest per-slice ``log γ(supp)`` over the support of Y,
    order 1 the Shannon conditional entropy, and order infinity the limit
    ``-log Σ_y η(y) max_x F(x, y)``.
    """
    order = as_order(order)
    F = joint.density
    gx, gy = joint.space_x.gamma, joint.space_y.gamma
    g = gx @ F
    ysupp = g > 0
    if order.is_zero:
        slice_masses = gx @ (F[:, ysupp] > 0)
        return math.log(slice_masses.max())
    if order.is_one:
        mask = F > 0
        ratio = np.where(mask, F / np.where(g > 0, g, 1.0)[None, :], 1.0)
        w = np.outer(gx, gy)
        return float(-np.sum(np.where(mask, w * F * np.log(ratio), 0.0)))
    if order.is_inf:
        return -math.log(float(gy @ F.max(axis=0)))
    a = order.alpha
    log_phi = _slice_log_norms(joint, a)
    log_mu_star = float(logsumexp(np.log(gy[ysupp]) + log_phi[ysupp]))
    return -a / (a - 1.0) * log_mu_star


def slice_entropies(joint: JointDistribution, order) -> tuple[np.ndarray, np.ndarray]:
    """Per-slice entropies ``h(X | Y=y)`` and the masses ``P_Y(y)`` they carry.

    Only letters of positive probability are returned.
    """
    order = as_order(order)
    F = joint.density
    gx, gy = joint.space_x.gamma, joint.space_y.gamma
    g = gx @ F
    idx = np.flatnonzero(g > 0)
    values = []
    for j in idx:
        col = F[:, j] / F[:, j].max()  # rescale first; subnormal columns lose precision
        values.append(renyi_entropy(Distribution(joint.space_x, col / (gx @ col)), order))
    values = np.array(values)
    return values, (g * gy)[idx]


def average_conditional_renyi_entropy(joint: JointDistribution, order) -> float:
    """``E_Y h(X | Y=y)``, the average of slice entropies."""
    values, weights = slice_entropies(joint, order)
    return float(weights @ values)


class SensitivityCheck(NamedTuple):
    lhs: float
    rhs: float
    bound: float


def reference_sensitivity_check(
    joint: JointDistribution, new_gamma, order, new_eta=None, tol: float = 1e-10
) -> SensitivityCheck:
    """Compare conditional entropies under two reference measures on S.

    With ``M = max gamma / new_gamma`` the conditional entropy under the new
    reference satisfies ``lhs >= rhs`` where ``lhs = h^{new}(X|Y)`` and
    ``rhs = h^{gamma}(X|Y) - log M``.

    When ``new_eta`` is omitted and both coordinates share one alphabet, the
    same reweighting is applied to the Y coordinate as well; otherwise the Y
    reference is left unchanged.  The conditional entropy of X given Y does
    not depend on the Y reference, so this choice never affects the values.

    Raises
    ------
    PropertyViolation
        If ``lhs < rhs - tol``.
    """
    order = as_order(order)
    new_gamma = np.asarray(new_gamma, dtype=float)
    if new_gamma.shape != joint.space_x.gamma.shape:
        raise ValidationError("new reference weights must match the X alphabet")
    if not np.all(np.isfinite(new_gamma)) or (new_gamma <= 0).any():
        raise ValidationError("new reference weights must be strictly positive and finite")
    if new_eta is None and joint.space_x == joint.space_y:
        new_eta = new_gamma
    rebased = joint.with_references(gamma_x=new_gamma, gamma_y=new_eta)
    M = float(np.max(joint.space_x.gamma / new_gamma))
    lhs = conditional_renyi_entropy(rebased, order)
    rhs = conditional_renyi_entropy(joint, order) - math.log(M)
    if lhs < rhs - tol:
        raise PropertyViolation(
            f"reference sensitivity bound violated: {lhs!r} < {rhs!r} (M={M!r})"
        )
    return SensitivityCheck(lhs, rhs, M)
