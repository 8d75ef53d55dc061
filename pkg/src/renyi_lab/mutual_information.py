"""Four notions of order-alpha mutual information.

* Arimoto: ``h(X) - h(X|Y)`` w.r.t. the reference weights on S.
* Sibson: ``min_mu D(P_XY || P_X ⊗ mu)``, closed form.
* Augustin-Csiszár: ``min_mu E_X D(P_{Y|X} || mu)``, fixed-point solver.
* Lapidoth-Pfister: ``min_{mu, nu} D(P_XY || mu ⊗ nu)``, alternating solver.

The last three do not depend on the reference weights; the solvers work on
probability masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import logsumexp

from . import divergence, entropy
from .errors import PropertyViolation, UnsupportedOrderError
from .measured_spaces import (
    Distribution,
    JointDistribution,
    as_order,
    reference_measure,
    swap,
)


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every iterative solver."""

    tol: float = 1e-10
    max_iter: int = 10_000
    restarts: int = 8
    seed: int = 0


@dataclass(frozen=True)
class MiResult:
    value: float
    optimizer_mu: Optional[Distribution] = None
    optimizer_nu: Optional[Distribution] = None
    iterations: int = 0
    converged: bool = True


def _oriented(joint: JointDistribution, direction: str) -> JointDistribution:
    if direction == "xy":
        return joint
    if direction == "yx":
        return swap(joint)
    raise ValueError(f"direction must be 'xy' or 'yx', got {direction!r}")


def _clip_zero(value):
    # rounding can leave a nonnegative minimum a few ulps below zero
    return 0.0 if -1e-12 < value <= 0 else value


def _positive_order(order, what, allow_inf=False):
    order = as_order(order)
    if order.is_zero or (order.is_inf and not allow_inf):
        raise UnsupportedOrderError(f"{what} requires an order in (0, inf), got {order}")
    return order


# ---------------------------------------------------------------------------
# mass-level kernels


def _split(P):
    """Input masses and row-stochastic kernel of a joint mass matrix."""
    px = P.sum(axis=1)
    keep = px > 0
    W = P[keep] / px[keep, None]
    return px[keep], W, keep


def sibson_value(px, W, alpha: float) -> float:
    """Sibson information of input masses ``px`` through the kernel ``W``."""
    px = np.asarray(px, dtype=float)
    keep = px > 0
    px, W = px[keep], np.asarray(W)[keep]
    if alpha == 1.0:
        py = px @ W
        return float(px @ divergence.divergence_rows(W, py, 1.0))
    if math.isinf(alpha):
        return math.log(W.max(axis=0).sum())
    A = px @ W**alpha
    return alpha / (alpha - 1.0) * math.log(np.sum(A ** (1.0 / alpha)))


class _AugustinState(NamedTuple):
    mu: np.ndarray
    value: float
    iterations: int
    converged: bool


def augustin_kernel(px, W, alpha, tol=1e-10, max_iter=10_000, mu0=None) -> _AugustinState:
    """Minimize ``mu ↦ Σ_x px(x) D_alpha(W[x] || mu)`` over the output simplex.

    Iterates the geometrically tempered map ``mu <- mu^{1-s} T(mu)^s``
    (normalized), where ``T(mu) = Σ_x px(x) W[x]^α mu^{1-α} / Z_x`` and
    ``s = min(1, 1/α)``; both maps share their fixed points and the tempered
    one does not oscillate for large orders.  A step that increases the
    objective is backtracked towards ``mu``.  Stops when the Frank-Wolfe gap
    ``max_y T(mu)(y)/mu(y) - 1``, an upper bound on the suboptimality of a
    convex objective, drops below ``tol``.
    """
    px = np.asarray(px, dtype=float)
    W = np.asarray(W, dtype=float)
    keep = px > 0
    px, W = px[keep], W[keep]
    m = W.shape[1]
    if alpha == 1.0:
        mu = px @ W
        value = float(px @ divergence.divergence_rows(W, mu, 1.0))
        return _AugustinState(mu, value, 0, True)

    cols = (W > 0).any(axis=0)
    with np.errstate(divide="ignore"):
        logWa = alpha * np.log(W[:, cols])
        if mu0 is None:
            logmu = np.log(px @ W[:, cols])
        else:
            logmu = np.log(np.maximum(np.asarray(mu0, dtype=float)[cols], 1e-300))
    logmu -= logsumexp(logmu)
    s = min(1.0, 1.0 / alpha)

    Wa = np.exp(logWa)

    def _lse(A, axis):
        top = A.max(axis=axis)
        return np.log(np.exp(A - np.expand_dims(top, axis)).sum(axis=axis)) + top

    def log_z(lm):
        # log Z_x with Z_x = Σ_y W^α mu^{1-α}; one shared shift is enough
        # unless a row underflows (tiny masses at large orders)
        e = (1.0 - alpha) * lm
        c = e.max()
        Z = Wa @ np.exp(e - c)
        if Z.min() > 1e-280:
            return np.log(Z) + c, e
        return _lse(logWa + e, 1), e

    def objective(lm):
        return float(px @ log_z(lm)[0]) / (alpha - 1.0)

    value = objective(logmu)
    slack = 1e-14 * max(1.0, abs(value))
    converged = False
    it = 0
    logpx = np.log(px)
    for it in range(1, max_iter + 1):
        logZ, e = log_z(logmu)
        a = logpx - logZ
        top = a.max()
        u = np.exp(a - top) @ Wa
        with np.errstate(divide="ignore"):
            if u.min() > 1e-280:
                logT = np.log(u) + top + e
            else:
                logT = _lse(a[:, None] + logWa, 0) + e
        gap = float(np.expm1(np.max(logT - logmu)))
        if gap <= tol:
            converged = True
            break
        step = s
        for _ in range(30):
            cand = (1.0 - step) * logmu + step * logT
            cand -= cand.max()
            cand -= math.log(np.exp(cand).sum())
            cval = objective(cand)
            if cval <= value + slack:
                break
            step *= 0.5
        else:
            break
        if np.array_equal(cand, logmu):
            break
        logmu, value = cand, min(cval, value)
    out = np.zeros(m)
    out[cols] = np.exp(logmu)
    return _AugustinState(out, objective(logmu), it, converged)


class _LPState(NamedTuple):
    mu: np.ndarray
    nu: np.ndarray
    value: float
    iterations: int
    converged: bool


def _lp_objective(logPa, mask, mu, nu, alpha):
    with np.errstate(divide="ignore"):
        e = (1.0 - alpha) * np.add.outer(np.log(mu), np.log(nu))
    return float(logsumexp((logPa + e)[mask])) / (alpha - 1.0)


def _rel_change(new, old):
    live = (new > 1e-12 * new.max()) & (old > 0)
    if not live.any():
        return math.inf
    return float(np.max(np.abs(new[live] / old[live] - 1.0)))


def lp_alternation(P, alpha, mu, nu, tol=1e-10, max_iter=10_000) -> _LPState:
    """Alternate the two closed-form partial minimizers of ``D(P || mu ⊗ nu)``.

    For fixed ``nu`` the optimal ``mu`` is proportional to
    ``(Σ_y P(x,y)^α nu(y)^{1-α})^{1/α}``, and symmetrically for ``nu``.
    Each sweep cannot increase the objective.  Pairs of sweeps are
    extrapolated in ``log nu`` (SQUAREM); the extrapolated point is kept
    only if it beats the plain second sweep, so monotonicity survives.
    Without it, drift of a coordinate toward zero (possible for
    ``alpha < 1``) can take millions of sweeps.

    Stops once a plain sweep changes no coordinate of ``nu`` by more than
    ``tol`` in relative terms, or once three consecutive cycles leave the
    objective unchanged to within rounding.  ``max_iter`` counts sweeps.
    """
    P = np.asarray(P, dtype=float)
    mask = P > 0
    Pa = np.where(mask, P, 0.0) ** alpha
    inv = 1.0 / alpha
    # minimizing log(S) / (alpha - 1) means maximizing S below order one
    sign = 1.0 if alpha > 1 else -1.0

    with np.errstate(divide="ignore"):
        logPa = np.where(mask, alpha * np.log(np.where(mask, P, 1.0)), -np.inf)

    def lse(A, axis):
        top = A.max(axis=axis)
        return np.log(np.exp(A - np.expand_dims(top, axis)).sum(axis=axis)) + top

    def log_sweep(nu):
        # same map in logs, for masses whose powers leave the float range
        lm = inv * lse(logPa + (1.0 - alpha) * np.log(nu), 1)
        lm -= lse(lm, 0)
        t = lse(logPa + (1.0 - alpha) * lm[:, None], 0)
        ln = inv * t
        ln -= lse(ln, 0)
        return np.exp(lm), np.exp(ln), float(np.exp(lse(t + (1.0 - alpha) * ln, 0)))

    def sweep(nu):
        m = (Pa @ nu ** (1.0 - alpha)) ** inv
        m /= m.sum()
        t = m ** (1.0 - alpha) @ Pa
        n = t**inv
        n /= n.sum()
        S = float(t @ n ** (1.0 - alpha))
        if math.isfinite(S) and S > 0 and np.isfinite(m).all() and np.isfinite(n).all():
            return m, n, S
        return log_sweep(nu)

    def log(v):
        return np.log(np.maximum(v, 1e-300))

    converged = False
    it = 0
    flat = 0
    S = math.nan
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        nu = np.asarray(nu, dtype=float)
        while it < max_iter:
            mu1, nu1, _ = sweep(nu)
            mu2, nu2, S2 = sweep(nu1)
            it += 2
            base, new, cand = nu1, nu2, (mu2, nu2, S2)
            r = log(nu1) - log(nu)
            v = log(nu2) - 2.0 * log(nu1) + log(nu)
            vn = float(np.linalg.norm(v))
            if vn > 0 and np.isfinite(vn):
                step = min(-float(np.linalg.norm(r)) / vn, -1.0)
                x = log(nu) - 2.0 * step * r + step * step * v
                x -= x.max()
                nu_x = np.exp(x)
                nu_x /= nu_x.sum()
                mu3, nu3, S3 = sweep(nu_x)
                it += 1
                if np.isfinite(S3) and sign * S3 <= sign * S2:
                    base, new, cand = nu_x, nu3, (mu3, nu3, S3)
            mu, nu, S_new = cand
            # relative change under one plain sweep; coordinates decaying to
            # the boundary are ignored once negligible
            resid = _rel_change(new, base)
            flat = flat + 1 if abs(S_new - S) <= 4 * np.finfo(float).eps * abs(S_new) else 0
            S = S_new
            if resid <= tol or flat >= 3:
                converged = True
                break
    value = _lp_objective(logPa, mask, mu, nu, alpha)
    return _LPState(mu, nu, value, it, converged)


def lp_kernel(P, alpha, cfg: SolverConfig, warm=None, marginal_start=True) -> _LPState:
    """Multi-start minimization of ``D_alpha(P || mu ⊗ nu)``.

    Starts from the marginals (unless ``marginal_start`` is false and a
    usable ``warm`` pair is given), from ``warm``, and from
    ``cfg.restarts`` Dirichlet(1, ..., 1) draws; keeps the best.
    """
    P = np.asarray(P, dtype=float)
    px, py = P.sum(axis=1), P.sum(axis=0)
    if alpha == 1.0:
        value = float(np.sum(divergence.divergence_rows(P.ravel(), np.outer(px, py).ravel(), 1.0)))
        return _LPState(px, py, value, 0, True)
    rows, cols = px > 0, py > 0
    Pr = P[np.ix_(rows, cols)]
    rng = np.random.default_rng(cfg.seed)
    starts = [(px[rows], py[cols])]
    if warm is not None:
        mu_w, nu_w = (np.asarray(w, dtype=float) for w in warm)
        mu_w, nu_w = mu_w[rows], nu_w[cols]
        if mu_w.sum() > 0 and nu_w.sum() > 0 and (nu_w > 0).all() and (mu_w > 0).all():
            starts.insert(0, (mu_w / mu_w.sum(), nu_w / nu_w.sum()))
            if not marginal_start:
                starts.pop()
    for _ in range(cfg.restarts):
        starts.append(
            (rng.dirichlet(np.ones(int(rows.sum()))), rng.dirichlet(np.ones(int(cols.sum()))))
        )
    best = None
    total_iter = 0
    for mu0, nu0 in starts:
        state = lp_alternation(Pr, alpha, mu0, nu0, cfg.tol, cfg.max_iter)
        total_iter += state.iterations
        if best is None or state.value < best.value:
            best = state
    mu = np.zeros(P.shape[0])
    nu = np.zeros(P.shape[1])
    mu[rows], nu[cols] = best.mu, best.nu
    return _LPState(mu, nu, best.value, total_iter, best.converged)


# ---------------------------------------------------------------------------
# public API


def arimoto_mi(joint: JointDistribution, order, direction: str = "xy") -> float:
    """``h(X) - h(X|Y)`` with entropies taken w.r.t. the reference weights on S."""
    j = _oriented(joint, direction)
    order = as_order(order)
    return entropy.renyi_entropy(j.marginal_x(), order) - entropy.conditional_renyi_entropy(
        j, order
    )


def sibson_reference_joint(joint: JointDistribution) -> JointDistribution:
    """Restrict S to the support of P_X and use P_X as the reference on S."""
    px = joint.marginal_x().masses
    idx = np.flatnonzero(px > 0)
    sub = joint.restrict_x(idx)
    # the new density is W(y|x) / gamma_y; forming it from the rows directly
    # avoids dividing by P_X ⊗ gamma_Y, which underflows for tiny P_X
    W = sub.masses / sub.masses.max(axis=1, keepdims=True)
    W /= W.sum(axis=1, keepdims=True)
    return JointDistribution(sub.space_x.with_gamma(px[idx]), sub.space_y, W / sub.space_y.gamma)


def sibson_mi(joint: JointDistribution, order, direction: str = "xy") -> MiResult:
    """Sibson's mutual information, computed as ``-h^{P_X}(X|Y)``.

    Accepts orders in (0, inf].  The optimizer is the output distribution
    ``q_star`` attaining ``min_mu D(P_XY || P_X ⊗ mu)``.
    """
    order = _positive_order(order, "Sibson's mutual information", allow_inf=True)
    j = sibson_reference_joint(_oriented(joint, direction))
    value = _clip_zero(-entropy.conditional_renyi_entropy(j, order))
    if order.is_inf:
        phi = j.density.max(axis=0)
        q = Distribution(j.space_y, phi / (phi @ j.space_y.gamma))
    else:
        q = divergence.sibson_decomposition(j, order).q_star
    return MiResult(value, optimizer_mu=q)


def augustin_csiszar_mi(
    joint: JointDistribution,
    order,
    cfg: SolverConfig | None = None,
    direction: str = "xy",
) -> MiResult:
    """Augustin-Csiszár mutual information ``min_mu E_X D(P_{Y|X} || mu)``.

    The optimizer ``mu`` is a distribution on the output alphabet of the
    chosen direction.  ``converged`` reports whether the Frank-Wolfe gap fell
    below ``cfg.tol``; the value is always the objective at ``optimizer_mu``.
    """
    cfg = cfg or SolverConfig()
    order = _positive_order(order, "Augustin-Csiszár mutual information")
    j = _oriented(joint, direction)
    px, W, _ = _split(j.masses)
    state = augustin_kernel(px, W, order.alpha, cfg.tol, cfg.max_iter)
    mu = Distribution.from_masses(j.space_y, state.mu / state.mu.sum())
    return MiResult(_clip_zero(state.value), optimizer_mu=mu,
                    iterations=state.iterations, converged=state.converged)


def lapidoth_pfister_mi(
    joint: JointDistribution, order, cfg: SolverConfig | None = None
) -> MiResult:
    """Lapidoth-Pfister mutual information ``min_{mu,nu} D(P_XY || mu ⊗ nu)``.

    Symmetric in X and Y.  ``optimizer_mu`` lives on S and ``optimizer_nu``
    on T.  The objective is not jointly convex for alpha > 1; the reported
    value is the best over all starts.
    """
    cfg = cfg or SolverConfig()
    order = _positive_order(order, "Lapidoth-Pfister mutual information")
    state = lp_kernel(joint.masses, order.alpha, cfg)
    mu = Distribution.from_masses(joint.space_x, state.mu / state.mu.sum())
    nu = Distribution.from_masses(joint.space_y, state.nu / state.nu.sum())
    return MiResult(_clip_zero(state.value), mu, nu, state.iterations, state.converged)


class TailBound(NamedTuple):
    empirical: float
    bound: float


def dependence_tail_bound(joint: JointDistribution, order, t: float, tol: float = 1e-12) -> TailBound:
    """Markov-inequality control of how conditionals cluster around P_X.

    Returns the exact probability, under P_Y, that
    ``D(P_{X|Y=y} || γ) - D(P_X || γ) < t`` together with the bound
    ``exp(β t - β I)`` where ``β = (1-α)/α`` and ``I`` is Arimoto's
    mutual information w.r.t. ``γ``.
    """
    order = as_order(order)
    if not (order.is_finite and order.alpha < 1):
        raise UnsupportedOrderError(f"tail bound needs an order in (0, 1), got {order}")
    if t <= 0:
        raise ValueError("t must be positive")
    a = order.alpha
    beta = (1.0 - a) / a
    ref = reference_measure(joint.space_x)
    base = divergence.renyi_divergence(joint.marginal_x(), ref, order)
    F, gx = joint.density, joint.space_x.gamma
    g = gx @ F
    py = g * joint.space_y.gamma
    prob = 0.0
    for j in np.flatnonzero(g > 0):
        col = F[:, j] / F[:, j].max()
        cond = Distribution(joint.space_x, col / (gx @ col))
        if divergence.renyi_divergence(cond, ref, order) - base < t:
            prob += py[j]
    bound = math.exp(beta * t - beta * arimoto_mi(joint, order))
    if prob > bound + tol:
        raise PropertyViolation(f"tail bound violated: {prob!r} > {bound!r}")
    return TailBound(prob, bound)


def tilted_input(dist: Distribution, order) -> Distribution:
    """Input law with density ``exp((1-α) D_α(P_X || γ)) f^α`` w.r.t. ``γ``.

    Feeding it through the channel of a joint turns Arimoto's information
    of that joint into a Sibson information.
    """
    order = as_order(order)
    if not (order.is_finite or order.is_one):
        raise UnsupportedOrderError(f"tilting needs an order in (0, inf), got {order}")
    a = order.alpha
    d = divergence.renyi_divergence(dist, reference_measure(dist.space), order)
    f = dist.density
    with np.errstate(divide="ignore"):
        density = np.where(f > 0, np.exp((1.0 - a) * d + a * np.log(np.where(f > 0, f, 1.0))), 0.0)
    return Distribution(dist.space, density)
