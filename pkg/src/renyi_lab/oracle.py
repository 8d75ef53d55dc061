"""Brute-force certifiers for the optimizations in this package.

Everything here enumerates instead of iterating, so the results are
independent of the solvers they are used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import comb

from . import mutual_information as mi
from .capacity import FUNCTIONALS
from .errors import GridTooLargeError, UnsupportedOrderError
from .measured_spaces import (
    Channel,
    Distribution,
    JointDistribution,
    Order,
    as_order,
    make_joint_from_input_and_channel,
)

GRID_LIMIT = 10**8
OBJECTIVES = ("sibson", "augustin", "lp")


@dataclass(frozen=True)
class SimplexGrid:
    """All probability vectors of ``dimension`` entries with entries in ``step * Z``."""

    dimension: int
    step: float

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        n = round(1.0 / self.step)
        if n < 1 or abs(n * self.step - 1.0) > 1e-9:
            raise ValueError(f"1/step must be a positive integer, got step={self.step!r}")

    @property
    def resolution(self) -> int:
        return round(1.0 / self.step)

    @property
    def size(self) -> int:
        return int(comb(self.resolution + self.dimension - 1, self.dimension - 1, exact=True))

    def compositions(self) -> np.ndarray:
        """Integer compositions of the resolution, in lexicographic order."""
        return _compositions(self.resolution, self.dimension)

    def points(self) -> np.ndarray:
        return self.compositions() / self.resolution


def _compositions(n: int, d: int) -> np.ndarray:
    if d == 1:
        return np.array([[n]], dtype=np.int64)
    if d == 2:
        first = np.arange(n + 1, dtype=np.int64)
        return np.column_stack([first, n - first])
    blocks = []
    for first in range(n + 1):
        rest = _compositions(n - first, d - 1)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


def _guard(size):
    if size > GRID_LIMIT:
        raise GridTooLargeError(size, GRID_LIMIT)


def _power(G, e):
    with np.errstate(divide="ignore"):
        return G**e


def _finite_power(G, e):
    """``G**e`` with ``0**negative`` replaced by a huge finite number.

    Inside a matrix product this makes ``0 * 0**negative`` vanish, as the
    support conventions require, while a positive weight still drives the
    sum far above any competitor.
    """
    with np.errstate(divide="ignore"):
        return np.where(G > 0, G**e, 0.0 if e > 0 else 1e300)


def _regular(order, what):
    order = as_order(order)
    if order.is_zero or order.is_inf:
        raise UnsupportedOrderError(f"{what} needs an order in (0, inf), got {order}")
    return order.alpha


def grid_minimize_divergence(objective: str, joint: JointDistribution, order, step: float):
    """Exhaustive minimum of a mutual-information objective over a simplex grid.

    ``sibson`` minimizes ``D(P || P_X ⊗ mu)`` and ``augustin`` minimizes
    ``E_X D(P_{Y|X} || mu)`` over ``mu`` on the Y grid; ``lp`` minimizes
    ``D(P || mu ⊗ nu)`` over pairs of grid points.  Returns
    ``(value, argmin)`` where ties resolve to the lexicographically first
    grid point (``argmin`` is a pair for ``lp``).
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    a = _regular(order, "the grid oracle")
    P = joint.masses
    n, m = P.shape
    gy = SimplexGrid(m, step)
    px = P.sum(axis=1)
    if objective == "lp":
        gx = SimplexGrid(n, step)
        _guard(gx.size * gy.size)
        return _grid_lp(P, a, gx.points(), gy.points())
    _guard(gy.size)
    G = gy.points()
    keep = px > 0
    if objective == "sibson":
        if a == 1.0:
            py = P.sum(axis=0)
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = np.where(py > 0, -py * np.log(G), 0.0).sum(axis=1)
            const = float(np.sum(np.where(P > 0, P * np.log(np.where(P > 0, P, 1.0)), 0.0)))
            const -= float(px[keep] @ np.log(px[keep]))
            vals = vals + const
        else:
            Pk = P[keep]
            c = np.sum(Pk**a * px[keep, None] ** (1.0 - a), axis=0)
            vals = _log_over(_masked_matmul(_power(G, 1.0 - a), c, c > 0), a)
    else:
        W = P[keep] / px[keep, None]
        w = px[keep]
        if a == 1.0:
            logW = np.log(np.where(W > 0, W, 1.0))
            with np.errstate(divide="ignore", invalid="ignore"):
                logG = np.log(G)
                terms = W[None] * (logW[None] - logG[:, None, :])
            vals = np.where(W[None] > 0, terms, 0.0).sum(axis=2) @ w
        else:
            Gp = _power(G, 1.0 - a)
            rows = [_log_over(_masked_matmul(Gp, W[i] ** a, W[i] > 0), a) for i in range(len(w))]
            vals = np.column_stack(rows) @ w
    i = int(np.argmin(vals))
    return float(vals[i]), G[i]


def _masked_matmul(Gp, c, mask):
    """``Gp @ c`` over the coordinates in ``mask`` (``0 * inf`` counts as 0)."""
    return Gp[:, mask] @ c[mask]


def _log_over(S, a):
    with np.errstate(divide="ignore"):
        return np.log(S) / (a - 1.0)


def _grid_lp(P, a, Gx, Gy, chunk=4096):
    mask = P > 0
    if a == 1.0:
        px, py = P.sum(axis=1), P.sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.where(px > 0, -px * np.log(Gx), 0.0).sum(axis=1)
            v = np.where(py > 0, -py * np.log(Gy), 0.0).sum(axis=1)
        const = float(np.sum(np.where(mask, P * np.log(np.where(mask, P, 1.0)), 0.0)))
        i, j = int(np.argmin(u)), int(np.argmin(v))
        return float(u[i] + v[j] + const), (Gx[i], Gy[j])
    Pa = np.where(mask, P, 0.0) ** a
    Mx = _finite_power(Gx, 1.0 - a)
    My = _finite_power(Gy, 1.0 - a)
    rows_used = mask.any(axis=1)
    cols_used = mask.any(axis=0)
    # S(mu, nu) = Σ_{x,y} P^a mu^{1-a} nu^{1-a}; zero-mass coordinates drop out
    A = Mx[:, rows_used] @ Pa[np.ix_(rows_used, cols_used)]
    B = My[:, cols_used]
    sign = 1.0 if a > 1 else -1.0
    best, arg = math.inf, (0, 0)
    for start in range(0, A.shape[0], chunk):
        with np.errstate(over="ignore"):
            S = A[start:start + chunk] @ B.T
        key = sign * S
        k = int(np.argmin(key))
        if key.flat[k] < best:
            best = key.flat[k]
            arg = (start + k // S.shape[1], k % S.shape[1])
    value = math.log(sign * best) / (a - 1.0) if sign * best > 0 else math.inf
    return value, (Gx[arg[0]], Gy[arg[1]])


def _xy_objective(functional, a, D, P):
    """Objective at inputs ``P`` (rows) against every inner law (columns).

    ``D[k, x]`` is ``D_a(W[x] || nu_k)``.
    """
    # cap infinite divergences so that letters of zero input mass contribute 0
    if a == 1.0 or functional == "K_xy":
        return P @ np.minimum(D, 1e300).T
    e = a - 1.0 if functional == "I_xy" else (a - 1.0) / a
    with np.errstate(divide="ignore"):
        S = P @ np.exp(np.minimum(e * D, 690.0)).T
        return np.log(S) / e


def _yx_objective(functional, a, W, P, Gmu):
    """``I_yx`` or ``K_yx`` objective at inputs ``P`` against inner laws ``Gmu`` on S."""
    joint = P[:, :, None] * W[None, :, :]
    py = joint.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        R = joint / py[:, None, :]
        if functional == "I_yx":
            if a == 1.0:
                # KL(P_XY || mu ⊗ P_Y) = Σ P_XY log R - Σ_x P_X log mu
                logR = np.log(np.where(joint > 0, R, 1.0))
                const = np.sum(np.where(joint > 0, joint * logR, 0.0), axis=(1, 2))
                logmu = np.log(Gmu)
                cross = np.where(P[:, None, :] > 0, P[:, None, :] * logmu[None], 0.0).sum(axis=2)
                return const[:, None] - cross
            c = np.sum(np.where(joint > 0, joint**a * py[:, None, :] ** (1.0 - a), 0.0), axis=2)
            S = c @ _finite_power(Gmu, 1.0 - a).T
            return np.log(S) / (a - 1.0)
        # K_yx: Σ_y P_Y(y) D(R(.|y) || mu)
        out = np.zeros((P.shape[0], Gmu.shape[0]))
        for y in range(W.shape[1]):
            Ry = R[:, :, y]
            wy = py[:, y]
            live = wy > 0
            if a == 1.0:
                logRy = np.log(np.where(Ry > 0, Ry, 1.0))
                ent = np.sum(np.where(Ry > 0, Ry * logRy, 0.0), axis=1)
                cross = np.where(Ry[:, None, :] > 0, Ry[:, None, :] * np.log(Gmu)[None], 0.0).sum(axis=2)
                Dy = ent[:, None] - cross
            else:
                Dy = np.log(np.where(Ry > 0, Ry, 0.0) ** a @ _finite_power(Gmu, 1.0 - a).T) / (a - 1.0)
            out += np.where(live[:, None], wy[:, None] * Dy, 0.0)
        return out


def grid_maximize_capacity(
    channel: Channel, functional: str, order, step: float, inner_step: float | None = None,
    chunk: int = 256,
):
    """Max over an input grid of the min over an inner grid.

    For ``I_xy``, ``K_xy`` and ``J`` the inner variable is a law ``nu`` on
    the output alphabet and the objective at input ``P`` is a function of
    the row divergences ``D(W[x] || nu)``; ``J`` uses
    ``beta log Σ_x P(x) exp(D(W[x] || nu) / beta)`` with
    ``beta = alpha / (alpha - 1)``.  For ``I_yx`` and ``K_yx`` the inner
    variable is a law on the input alphabet; there its optimum tracks the
    input law, so ``inner_step`` should not be coarser than ``step`` or
    near-boundary inputs get overestimated.  Nothing calls an iterative
    solver.  Returns ``(value, argmax)``; ties resolve to the first grid
    input.
    """
    if functional not in FUNCTIONALS:
        raise ValueError(f"functional must be one of {FUNCTIONALS}, got {functional!r}")
    a = _regular(order, "the capacity grid oracle")
    inner_step = step if inner_step is None else inner_step
    W = channel.masses
    n, m = W.shape
    grid = SimplexGrid(n, step)
    inner = SimplexGrid(m if functional in ("I_xy", "K_xy", "J") else n, inner_step)
    _guard(grid.size * inner.size)
    Ps = grid.points()
    G = inner.points()
    if functional in ("I_xy", "K_xy", "J"):
        D = np.column_stack([_row_div(W[x], G, a) for x in range(n)])
    best, arg = -math.inf, None
    for start in range(0, len(Ps), chunk):
        P = Ps[start:start + chunk]
        if functional in ("I_xy", "K_xy", "J"):
            vals = _xy_objective(functional, a, D, P)
        else:
            vals = _yx_objective(functional, a, W, P, G)
        vals = np.where(np.isnan(vals), np.inf, vals)
        inner_min = vals.min(axis=1)
        k = int(np.argmax(inner_min))
        if inner_min[k] > best:
            best, arg = float(inner_min[k]), P[k]
    return best, arg


def _row_div(w, G, a):
    """``D_a(w || g)`` for every row ``g`` of ``G``."""
    mask = w > 0
    wm = w[mask]
    Gm = G[:, mask]
    with np.errstate(divide="ignore"):
        if a == 1.0:
            return (wm * np.log(wm)).sum() - np.log(Gm) @ wm
        return np.log(_power(Gm, 1.0 - a) @ wm**a) / (a - 1.0)


@dataclass(frozen=True)
class LimitReport:
    """Values of a function of the order along a grid approaching a limit order."""

    target: str
    alphas: tuple
    values: tuple
    limit_value: float
    gaps: tuple
    terminal_gap: float
    monotone: bool
    direction: str

    def to_dict(self):
        return {
            "target": self.target,
            "alphas": list(self.alphas),
            "values": list(self.values),
            "limit_value": self.limit_value,
            "gaps": list(self.gaps),
            "terminal_gap": self.terminal_gap,
            "monotone": self.monotone,
            "direction": self.direction,
        }


DEFAULT_PROBES = {
    "0": (1e-1, 1e-2, 1e-3),
    "1+": (1 + 1e-1, 1 + 1e-2, 1 + 1e-3, 1 + 1e-4),
    "1-": (1 - 1e-1, 1 - 1e-2, 1 - 1e-3, 1 - 1e-4),
    "inf": (1e1, 1e2, 1e3),
}


def limit_prober(
    fn: Callable[[Order], float], target, alphas: Sequence[float] | None = None
) -> LimitReport:
    """Evaluate ``fn`` along orders approaching ``target`` and compare with ``fn(target)``.

    ``target`` is ``"0"``, ``"1+"``, ``"1-"`` or ``"inf"`` (``1`` means
    ``"1+"``).  ``alphas`` defaults to a geometric grid ending at distance
    ``1e-3`` (0), ``1e-4`` (1) or at ``1e3`` (inf).  ``direction`` is
    ``below``/``above`` when every probe value sits on that side of the
    limit, otherwise ``mixed``; ``monotone`` means the values move towards
    the limit monotonically along the grid.
    """
    key = {0: "0", 1: "1+", math.inf: "inf"}.get(target, target)
    if isinstance(target, str) and target in ("1", "+1"):
        key = "1+"
    if key not in DEFAULT_PROBES:
        raise ValueError(f"unknown limit target {target!r}")
    alphas = tuple(DEFAULT_PROBES[key] if alphas is None else alphas)
    limit_order = {"0": 0.0, "1+": 1.0, "1-": 1.0, "inf": math.inf}[key]
    limit_value = float(fn(Order(limit_order)))
    values = tuple(float(fn(Order(a))) for a in alphas)
    diffs = [v - limit_value for v in values]
    gaps = tuple(abs(d) for d in diffs)
    if all(d <= 0 for d in diffs):
        direction = "below"
    elif all(d >= 0 for d in diffs):
        direction = "above"
    else:
        direction = "mixed"
    steps = np.diff(values)
    if direction == "below":
        monotone = bool(np.all(steps >= -1e-12))
    elif direction == "above":
        monotone = bool(np.all(steps <= 1e-12))
    else:
        monotone = False
    return LimitReport(key, alphas, values, limit_value, gaps, gaps[-1], monotone, direction)


def blahut_arimoto(W, tol: float = 1e-12, max_iter: int = 100_000):
    """Shannon capacity (nats) of a row-stochastic mass matrix.

    Classic alternating maximization; stops when the upper and lower
    bounds agree within ``tol``.  Returns ``(capacity, input)``.
    """
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    p = np.full(n, 1.0 / n)
    lower = 0.0
    for _ in range(max_iter):
        q = p @ W
        with np.errstate(divide="ignore", invalid="ignore"):
            D = np.where(W > 0, W * np.log(W / q[None, :]), 0.0).sum(axis=1)
        c = np.exp(D)
        lower = math.log(p @ c)
        upper = math.log(c.max())
        if upper - lower < tol:
            break
        p = p * c
        p /= p.sum()
    return lower, p
