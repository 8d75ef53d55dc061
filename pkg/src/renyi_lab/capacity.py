"""Channel capacities of order alpha and the Rényi radius.

Every solver works on the mass matrix ``W[x, y]`` of the channel (rows sum
to one), so nothing here depends on the reference weights.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from . import divergence
from .errors import PropertyViolation, UnsupportedOrderError
from .measured_spaces import Channel, Distribution, as_order
from .mutual_information import SolverConfig, augustin_kernel, lp_kernel, sibson_value

FUNCTIONALS = ("I_xy", "I_yx", "K_xy", "K_yx", "J")
# concave in the input law, so any stationary point is a global maximum
CONCAVE = ("I_xy", "K_xy")

# Stationarity level at which an ascent or a radius certificate counts as converged.
CERT_TOL = 1e-7
EQUALITY_TOL = 1e-4


@dataclass(frozen=True)
class CapacityResult:
    """Outcome of a capacity or radius computation.

    ``value`` is the objective at ``argmax_input`` for capacities and the
    largest row divergence from ``center`` for the radius.  For the radius
    and for ``I_xy``, ``certificate_gap`` is an upper bound minus a lower
    bound on the true value.  For ``K_xy`` it is the Frank-Wolfe gap, which
    bounds the suboptimality of a concave objective.  For the remaining
    functionals it is the same stationarity measure without that guarantee.
    """

    value: float
    argmax_input: Distribution
    center: Optional[Distribution] = None
    certificate_gap: float = 0.0
    lower_bound: float = 0.0
    converged: bool = True
    iterations: int = 0


def _masses(channel: Channel) -> np.ndarray:
    return channel.masses


def _dist(space, masses) -> Distribution:
    masses = np.maximum(np.asarray(masses, dtype=float), 0.0)
    return Distribution.from_masses(space, masses / masses.sum())


# ---------------------------------------------------------------------------
# radius


def _q_star(px, W, alpha):
    """Output law attaining Sibson's minimum for input ``px``."""
    if alpha == 1.0:
        return px @ W
    A = px @ W**alpha
    q = A ** (1.0 / alpha)
    return q / q.sum()


def _sibson_dual(W, alpha, cfg: SolverConfig, p0=None):
    """Maximize Sibson's information over inputs by multiplicative weights.

    Returns ``(p, lower, upper, iterations)`` where ``lower = I(p)`` and
    ``upper`` is the largest row divergence from ``q_star(p)``.
    """
    n = W.shape[0]
    p = np.full(n, 1.0 / n) if p0 is None else np.asarray(p0, dtype=float)
    value = sibson_value(p, W, alpha)
    eta = 1.0
    it = 0
    upper = math.inf
    for it in range(1, cfg.max_iter + 1):
        D = divergence.divergence_rows(W, _q_star(p, W, alpha), alpha)
        upper = float(D.max())
        if upper - value <= cfg.tol:
            break
        if alpha == 1.0:
            g = D
        else:
            g = np.expm1((alpha - 1.0) * (D - value)) / (alpha - 1.0)
        improved = False
        while eta > 1e-16:
            cand = p * np.exp(eta * (g - g.max()))
            cand /= cand.sum()
            cval = sibson_value(cand, W, alpha)
            if cval > value:
                p, value, improved = cand, cval, True
                eta *= 1.5
                break
            eta *= 0.5
        if not improved:
            break
    return p, value, upper, it


def _smoothed_max(W, alpha, q, tau):
    D = divergence.divergence_rows(W, q, alpha)
    top = D.max()
    w = np.exp((D - top) / tau)
    s = w.sum()
    return top + tau * math.log(s), w / s, D


def _row_gradients(W, alpha, q):
    """Gradients in ``q`` of every row divergence ``D_alpha(W[x] || q)``."""
    if alpha == 1.0:
        return -W / q[None, :]
    Wa = W**alpha * q[None, :] ** (1.0 - alpha)
    return -(Wa / Wa.sum(axis=1, keepdims=True)) / q[None, :]


def _exponentiated_gradient(W, alpha, q, iters_per_temp=200):
    """Anneal a softmax-smoothed max of the row divergences, then polish.

    The smoothed objective is minimized by exponentiated gradient with
    backtracking at temperatures ``10**-k``; the polish takes subgradient
    steps on the true maximum.  Returns the best center seen.
    """
    best_q, best = q, float(divergence.divergence_rows(W, q, alpha).max())
    for k in range(2, 8):
        tau = 10.0**-k
        val, w, _ = _smoothed_max(W, alpha, q, tau)
        eta = 1.0
        for _ in range(iters_per_temp):
            grad = w @ _row_gradients(W, alpha, q)
            moved = False
            while eta > 1e-14:
                cand = q * np.exp(-eta * (grad - grad.min()))
                cand /= cand.sum()
                cval, cw, D = _smoothed_max(W, alpha, cand, tau)
                if cval < val:
                    q, val, w, moved = cand, cval, cw, True
                    eta *= 1.5
                    if D.max() < best:
                        best_q, best = q, float(D.max())
                    break
                eta *= 0.5
            if not moved:
                break
    q = best_q
    step = 1e-3
    for t in range(1, 200):
        D = divergence.divergence_rows(W, q, alpha)
        g = _row_gradients(W, alpha, q)[int(np.argmax(D))]
        q = q * np.exp(-(step / math.sqrt(t)) * (g - g.min()))
        q /= q.sum()
        val = float(divergence.divergence_rows(W, q, alpha).max())
        if val < best:
            best_q, best = q, val
    return best_q, best


def renyi_radius(channel: Channel, order, cfg: SolverConfig | None = None) -> CapacityResult:
    """``min_q max_x D_alpha(W(x) || q)`` with a two-sided certificate.

    The lower bound is Sibson's information of the best input found by
    multiplicative-weights ascent; the upper bound is the value at the
    better of that input's Sibson output law and an exponentiated-gradient
    refinement of it.  ``certificate_gap`` is their difference.
    """
    cfg = cfg or SolverConfig()
    order = as_order(order)
    if order.is_zero:
        raise UnsupportedOrderError("the Rényi radius needs an order in (0, inf]")
    W = _masses(channel)
    n, m = W.shape
    cols = W.max(axis=0) > 0
    if order.is_inf:
        peaks = W.max(axis=0)
        value = math.log(peaks.sum())
        return CapacityResult(
            value,
            _dist(channel.input_space, np.ones(n)),
            _dist(channel.output_space, peaks),
            0.0,
            value,
        )
    alpha = order.alpha
    Wc = W[:, cols]
    p, lower, upper, iters = _sibson_dual(Wc, alpha, cfg)
    q = _q_star(p, Wc, alpha)
    if upper - lower > cfg.tol:
        q_eg, upper_eg = _exponentiated_gradient(Wc, alpha, q)
        if upper_eg < upper:
            q, upper = q_eg, upper_eg
    upper = max(upper, lower)
    center = np.zeros(m)
    center[cols] = q
    gap = upper - lower
    return CapacityResult(
        max(upper, 0.0),
        _dist(channel.input_space, p),
        _dist(channel.output_space, center),
        gap,
        max(lower, 0.0),
        gap <= CERT_TOL,
        iters,
    )


# ---------------------------------------------------------------------------
# capacities


def _swap_parts(p, W):
    """Output masses and reverse kernel ``P(x | y)`` of the joint ``p W``."""
    joint = p[:, None] * W
    py = joint.sum(axis=0)
    keep = py > 0
    return py[keep], (joint[:, keep] / py[keep]).T


class _Objective:
    """Value and per-letter gradient of one functional at an input law.

    ``warm`` carries the inner optimizer between calls so that nearby
    inputs reuse it as a starting point.
    """

    def __init__(self, functional, W, alpha, cfg: SolverConfig):
        self.functional = functional
        self.W = W
        self.alpha = alpha
        self.cfg = cfg
        self.inner = replace(cfg, restarts=0)
        self.warm = None

    def value(self, p, final=False):
        f, W, a = self.functional, self.W, self.alpha
        if f == "I_xy":
            return sibson_value(p, W, a), True
        if f == "I_yx":
            py, R = _swap_parts(p, W)
            return sibson_value(py, R, a), True
        if f == "K_xy":
            st = augustin_kernel(p, W, a, self.cfg.tol, self.cfg.max_iter, self.warm)
            self.warm = st.mu
            return st.value, st.converged
        if f == "K_yx":
            py, R = _swap_parts(p, W)
            st = augustin_kernel(py, R, a, self.cfg.tol, self.cfg.max_iter, self.warm)
            self.warm = st.mu
            return st.value, st.converged
        cfg = self.cfg if final else self.inner
        # below order 1 the inner problem has spurious local minima, so a warm
        # start alone can track a stale one; keep the marginal start there
        st = lp_kernel(p[:, None] * W, a, cfg, warm=self.warm, marginal_start=final or a < 1)
        if (st.mu > 0).all() and (st.nu > 0).all():
            self.warm = (st.mu, st.nu)
        return st.value, st.converged

    def gradient(self, p, value):
        f, W, a = self.functional, self.W, self.alpha
        if f == "I_xy":
            D = divergence.divergence_rows(W, _q_star(p, W, a), a)
            if a == 1.0:
                return D
            return np.expm1((a - 1.0) * (D - value)) / (a - 1.0)
        if f == "K_xy":
            return divergence.divergence_rows(W, self.warm, a)
        if f == "J":
            nu = self.warm[1] if self.warm is not None else p @ W
            D = divergence.divergence_rows(W, nu, a)
            if a == 1.0:
                return D
            beta = a / (a - 1.0)
            z = D / beta
            if np.isposinf(z.max()):
                e = np.isposinf(z).astype(float)
            else:
                e = np.exp(z - z.max())
            return beta * e / max(p @ e, 1e-300)
        if f == "I_yx":
            return _sibson_yx_gradient(p, W, a)
        return _augustin_yx_envelope(p, W, a, self.warm)


def _sibson_yx_gradient(p, W, a):
    """Gradient of ``I^{Y⇝X}`` in the input masses."""
    py = p @ W
    keep = py > 0
    W, py = W[:, keep], py[keep]
    if a == 1.0:
        return divergence.divergence_rows(W, py, 1.0)
    Wa = W**a
    c = Wa @ py ** (1.0 - a)
    croot = c ** (1.0 / a)
    S = p @ croot
    inner = (p * c ** (1.0 / a - 1.0)) @ Wa
    return (a / (a - 1.0)) * croot / S - (W @ (py**-a * inner)) / S


def _augustin_yx_envelope(p, W, a, mu):
    """Gradient in ``p`` of ``Σ_y P_Y(y) D(P_{X|Y=y} || mu)`` at fixed ``mu``."""
    py = p @ W
    keep = py > 0
    W, py = W[:, keep], py[keep]
    R = (p[:, None] * W / py).T
    d = divergence.divergence_rows(R, mu, a)
    if a == 1.0:
        with np.errstate(divide="ignore"):
            logs = np.log(p[:, None] * W / (py[None, :] * mu[:, None]))
        return np.sum(np.where(W > 0, W * logs, 0.0), axis=1)
    Wa = W**a
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        B = (p**a * mu ** (1.0 - a)) @ Wa
        tilt = p ** (a - 1.0) * mu ** (1.0 - a) * (Wa @ (py / B))
    return W @ d + (a / (a - 1.0)) * (tilt - 1.0)


def _ascend(obj: _Objective, p, max_iter):
    """Multiplicative-weights ascent with an adaptive, backtracked step."""
    value, _ = obj.value(p)
    eta = 1.0
    gap = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        g = obj.gradient(p, value)
        gap = float(g.max() - p @ g)
        if gap <= CERT_TOL * 1e-2:
            break
        improved = False
        saved = obj.warm
        while eta > 1e-16:
            cand = p * np.exp(eta * (g - g.max()))
            cand /= cand.sum()
            cval, _ = obj.value(cand)
            if cval > value:
                p, value, improved = cand, cval, True
                eta *= 1.5
                break
            obj.warm = saved
            eta *= 0.5
        if not improved:
            obj.value(p)
            break
    return p, value, gap, it


def _check_functional(functional, order):
    if functional not in FUNCTIONALS:
        raise ValueError(f"functional must be one of {FUNCTIONALS}, got {functional!r}")
    if order.is_zero:
        raise UnsupportedOrderError("capacities need a positive order")
    if order.is_inf and functional != "I_xy":
        raise UnsupportedOrderError(f"order inf is only supported for I_xy, not {functional}")


def capacity(
    channel: Channel,
    functional: str,
    order,
    cfg: SolverConfig | None = None,
    extra_starts=(),
    max_outer: int = 2000,
) -> CapacityResult:
    """``sup_P`` of a mutual information of ``(P, W)``.

    ``functional`` is one of ``I_xy``, ``I_yx`` (Sibson), ``K_xy``, ``K_yx``
    (Augustin-Csiszár) or ``J`` (Lapidoth-Pfister).  Starts from the uniform
    input, the Sibson-optimal input, any ``extra_starts`` and, for the
    functionals that are not concave in the input, ``cfg.restarts``
    Dirichlet draws; keeps the best.  The reported
    value is the objective at the returned input, so it is a lower bound on
    the capacity up to the accuracy of the inner solver.
    """
    cfg = cfg or SolverConfig()
    order = as_order(order)
    _check_functional(functional, order)
    W = _masses(channel)
    n = W.shape[0]
    radius = renyi_radius(channel, order, cfg) if functional == "I_xy" else None
    if order.is_inf:
        return CapacityResult(radius.value, radius.argmax_input, radius.center, 0.0,
                              radius.value, True, 0)
    alpha = order.alpha
    rng = np.random.default_rng(cfg.seed)
    p_sib = _sibson_dual(W, alpha, cfg)[0]
    starts = [np.full(n, 1.0 / n), np.maximum(p_sib, 1e-12)]
    starts += [np.maximum(np.asarray(s, dtype=float), 1e-12) for s in extra_starts]
    if functional not in CONCAVE:
        starts += [rng.dirichlet(np.ones(n)) for _ in range(cfg.restarts)]
    best = None
    total = 0
    for p0 in starts:
        obj = _Objective(functional, W, alpha, cfg)
        p, value, gap, it = _ascend(obj, p0 / p0.sum(), max_outer)
        total += it
        if best is None or value > best[1]:
            best = (p, value, gap, obj)
    p, value, gap, obj = best
    obj.warm = None
    value, inner_ok = obj.value(p, final=True)
    center = None
    if functional == "I_xy":
        gap = max(radius.value - value, 0.0)
        center = radius.center
    elif functional == "K_xy":
        center = _dist(channel.output_space, obj.warm)
    return CapacityResult(
        max(value, 0.0),
        _dist(channel.input_space, p),
        center,
        max(gap, 0.0),
        max(value, 0.0),
        inner_ok and gap <= CERT_TOL,
        total,
    )


# ---------------------------------------------------------------------------
# reports


@dataclass
class CapacityReport:
    """Values, bounds and verdict of a capacity check."""

    order: float
    values: dict
    gaps: dict
    status: str
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _fail_or_return(report: CapacityReport, strict: bool):
    if strict and report.status == "fail":
        err = PropertyViolation("; ".join(report.violations))
        err.report = report
        raise err
    return report


def capacity_equalities_check(
    channel: Channel, order, cfg: SolverConfig | None = None, strict: bool = True
) -> CapacityReport:
    """Compute the radius and five capacities for an order ``alpha >= 1``.

    The middle four (radius, ``I_xy``, ``J``, ``K_xy``) must agree within
    ``1e-4``; ``K_yx`` may not exceed the radius and ``I_yx`` may not fall
    below it, each with ``1e-4`` slack.  The status is ``inconclusive``
    instead of ``fail`` when a solver did not converge.
    """
    cfg = cfg or SolverConfig()
    order = as_order(order)
    if order.is_inf or order.alpha < 1:
        raise UnsupportedOrderError(f"the capacity equalities need an order in [1, inf), got {order}")
    radius = renyi_radius(channel, order, cfg)
    results = {"radius": radius}
    results["I_xy"] = capacity(channel, "I_xy", order, cfg)
    results["J"] = capacity(channel, "J", order, cfg)
    results["K_xy"] = capacity(channel, "K_xy", order, cfg)
    results["K_yx"] = capacity(channel, "K_yx", order, cfg)
    seeds = [results["J"].argmax_input.masses]
    results["I_yx"] = capacity(channel, "I_yx", order, cfg, extra_starts=seeds)
    values = {k: r.value for k, r in results.items()}
    gaps = {k: r.certificate_gap for k, r in results.items()}
    S = values["radius"]
    violations = []
    for k in ("I_xy", "J", "K_xy"):
        if abs(values[k] - S) > EQUALITY_TOL:
            violations.append(f"|C_{k} - S| = {abs(values[k] - S):.3g} > {EQUALITY_TOL:g}")
    if values["K_yx"] > S + EQUALITY_TOL:
        violations.append(f"C_K_yx = {values['K_yx']!r} exceeds S = {S!r}")
    if S > values["I_yx"] + EQUALITY_TOL:
        violations.append(f"S = {S!r} exceeds C_I_yx = {values['I_yx']!r}")
    if not violations:
        status = "pass"
    elif all(r.converged for r in results.values()):
        status = "fail"
    else:
        status = "inconclusive"
    report = CapacityReport(float(order), values, gaps, status, violations)
    return _fail_or_return(report, strict)


def _inner_reduction_residual(W, alpha, rng, samples=20, grid_points=200):
    """Check ``sup_P f(P, mu) = max_x D(W(x) || mu)`` at random centers.

    ``f(P, mu) = beta log Σ_x P(x) exp(D(W(x)||mu) / beta)`` with
    ``beta = alpha / (alpha - 1)``.  Returns the largest excess of the
    sampled sup over the point-mass maximum and the largest shortfall of
    the point-mass values below it.
    """
    n = W.shape[0]
    beta = alpha / (alpha - 1.0)
    excess = 0.0
    shortfall = 0.0
    for _ in range(samples):
        mu = rng.dirichlet(np.ones(W.shape[1]))
        D = divergence.divergence_rows(W, mu, alpha)
        top = float(D.max())
        P = np.vstack([np.eye(n), rng.dirichlet(np.ones(n), size=grid_points)])
        f = beta * np.log(P @ np.exp((D - top) / beta)) + top
        excess = max(excess, float(f.max() - top))
        shortfall = max(shortfall, float(top - f[:n].max()))
    return excess, shortfall


def lp_capacity_radius_check(
    channel: Channel,
    order,
    cfg: SolverConfig | None = None,
    exploratory: bool = False,
    strict: bool = True,
) -> CapacityReport:
    """Compare ``sup_P J_alpha(P, W)`` with the radius for ``alpha in [1/2, 1)``.

    With ``exploratory=True`` orders in ``(0, 1/2)`` are accepted and the
    report carries status ``exploratory`` without asserting anything.
    """
    cfg = cfg or SolverConfig()
    order = as_order(order)
    if not order.is_finite or order.alpha >= 1:
        raise UnsupportedOrderError(f"this check needs an order in (0, 1), got {order}")
    if order.alpha < 0.5 and not exploratory:
        raise UnsupportedOrderError(
            f"order {order} is below 1/2; pass exploratory=True to run without assertions"
        )
    radius = renyi_radius(channel, order, cfg)
    cj = capacity(channel, "J", order, cfg)
    rng = np.random.default_rng(cfg.seed)
    excess, shortfall = _inner_reduction_residual(_masses(channel), order.alpha, rng)
    values = {"radius": radius.value, "J": cj.value}
    gaps = {"radius": radius.certificate_gap, "J": cj.certificate_gap}
    details = {"inner_excess": excess, "inner_shortfall": shortfall}
    violations = []
    diff = abs(cj.value - radius.value)
    if diff > EQUALITY_TOL:
        violations.append(f"|C_J - S| = {diff:.3g} > {EQUALITY_TOL:g}")
    if excess > 1e-10 or shortfall > 1e-10:
        violations.append(f"inner reduction residuals {excess:.3g}, {shortfall:.3g}")
    if order.alpha < 0.5:
        status = "exploratory"
    elif not violations:
        status = "pass"
    elif radius.converged and cj.converged:
        status = "fail"
    else:
        status = "inconclusive"
    report = CapacityReport(float(order), values, gaps, status, violations, details)
    return _fail_or_return(report, strict)

