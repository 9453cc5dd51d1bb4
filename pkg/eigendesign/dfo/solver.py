"""
Model-based descent with regression gradients and noisy evaluations.

Each iteration reuses the archived evaluations within r·δ of the incumbent, completes
them with new directions (spectral, coordinate or forward-difference), fits a linear
model and takes a backtracking step along the estimated gradient.
"""

from dataclasses import dataclass, field

import numpy as np

from eigendesign.dfo.estimation import (
    DESIGN_MODES,
    design_directions,
    ls_gradient,
    new_direction_count,
    optimal_radius,
    reuse_directions,
)
from eigendesign.linalg import eigh_ascending, gram
from eigendesign.utils.common import LazyRepr
from eigendesign.utils.errors import BadRange, BudgetTooSmall
from eigendesign.utils.logger import logger
from eigendesign.waterfill import zero_tolerance

EPS_FLOOR = 1e-10
MAX_HALVINGS = 20
MIN_RADIUS = 1e-14


@dataclass
class DfoConfig:
    """
    Parameters of :func:`dfo_minimize`.

    Parameters
    ----------
    eps_abs: :class:`float`, default=1e-2
        Bound on the error of a difference of two noisy evaluations.
    lip_grad: :class:`float`, default=1.0
        Lipschitz constant hint of the gradient. Also sets the initial step 1/L.
    reuse_radius: :class:`float`, default=100.0
        Archived points within ``reuse_radius·δ`` of the incumbent are reused.
    budget_multiplier: :class:`int`, default=50
        The run stops after ``budget_multiplier·(d + 1)`` oracle calls.
    design_mode: :class:`str`, default='spectral'
        One of ``'spectral'``, ``'coordinate'``, ``'forward-diff'``.
    max_halvings: :class:`int`, default=20
        Backtracking halvings before the sampling radius is halved instead.
    """

    eps_abs: float = 1e-2
    lip_grad: float = 1.0
    reuse_radius: float = 100.0
    budget_multiplier: int = 50
    design_mode: str = "spectral"
    max_halvings: int = MAX_HALVINGS

    def __post_init__(self):
        for name in ("eps_abs", "lip_grad", "reuse_radius"):
            if not getattr(self, name) > 0:
                raise BadRange(f"{name} must be positive, got {getattr(self, name)}.")
        if self.design_mode not in DESIGN_MODES:
            raise BadRange(f"Unknown design mode {self.design_mode!r}. Available: {', '.join(DESIGN_MODES)}.")

    @classmethod
    def for_noise(cls, sigma, lip_grad, **kwargs):
        """
        Configuration for uniform noise of width σ: differences of two evaluations are
        then off by at most σ.

        Examples
        --------

        >>> DfoConfig.for_noise(0.0, 2.0).eps_abs
        1e-10
        """
        return cls(eps_abs=max(float(sigma), EPS_FLOOR), lip_grad=lip_grad, **kwargs)


@dataclass(repr=False)
class DfoRun(LazyRepr):
    """
    Trace of a DFO run.

    Parameters
    ----------
    best_true_history: :class:`~numpy.ndarray`
        Best true value after each oracle call; nonincreasing.
    calls_used: :class:`int`
        Oracle calls spent.
    final_point: :class:`~numpy.ndarray`
        Last incumbent.
    start_value: :class:`float`
        True value at the starting point.
    method: :class:`str`
        Design mode.
    problem: :class:`str`
        Problem label.
    history: :class:`list`
        Per-iteration diagnostics (radius, q, k, step).
    """

    best_true_history: np.ndarray
    calls_used: int
    final_point: np.ndarray
    start_value: float = None
    method: str = ""
    problem: str = ""
    history: list = field(default_factory=list)

    @property
    def d(self):
        return len(self.final_point)

    @property
    def best(self):
        return float(self.best_true_history[-1]) if len(self.best_true_history) else self.start_value


def _rank(prior):
    t = eigh_ascending(prior).t
    return int(np.count_nonzero(t > zero_tolerance(t)))


def dfo_minimize(oracle, x0, cfg=None):
    """
    Minimize a noisy function with regression gradients.

    Parameters
    ----------
    oracle: :class:`~eigendesign.dfo.oracle.NoisyOracle`
        Noisy evaluator; its call counter is the budget clock.
    x0: array-like
        Starting point.
    cfg: :class:`~eigendesign.dfo.solver.DfoConfig`, optional
        Run parameters.

    Returns
    -------
    :class:`~eigendesign.dfo.solver.DfoRun`

    Examples
    --------

    >>> from eigendesign.dfo.oracle import NoisyOracle
    >>> oracle = NoisyOracle(lambda y: float(y @ y))
    >>> run = dfo_minimize(oracle, [1., 1.], DfoConfig.for_noise(0., 2., budget_multiplier=10))
    >>> run.calls_used <= 30, run.best < 1e-6
    (True, True)
    """
    cfg = DfoConfig() if cfg is None else cfg
    y = np.array(x0, dtype=float)
    d = len(y)
    budget = cfg.budget_multiplier * (d + 1)
    if budget <= d + 1:
        raise BudgetTooSmall(f"Budget of {budget} calls is too small for d={d}; at least {d + 2} are needed.")
    oracle.reset()
    fy = oracle(y)
    archive = [(y.copy(), fy)]
    scale = 1.0
    history = []

    while oracle.calls < budget:
        # Reuse ball sized with q = 0, then the radius adjusted to the points found.
        delta = optimal_radius(cfg, 0, d) * scale
        u, _ = reuse_directions(archive, y, delta, cfg.reuse_radius)
        k = d if cfg.design_mode == "forward-diff" else new_direction_count(d, _rank(gram(u)) if u.size else 0)
        q = 0 if cfg.design_mode == "forward-diff" else u.shape[1]
        delta = optimal_radius(cfg, q, k) * scale
        if delta < MIN_RADIUS:
            break
        if cfg.design_mode == "forward-diff":
            u, u_values = np.zeros((d, 0)), np.zeros(0)
        else:
            u, u_values = reuse_directions(archive, y, delta, cfg.reuse_radius)
            k = new_direction_count(d, _rank(gram(u)) if u.size else 0)
        if oracle.calls + k > budget:
            break
        x = design_directions(cfg.design_mode, gram(u) if u.size else np.zeros((d, d)), k, d)
        new_values = []
        for col in x.T:
            point = y + delta * col
            value = oracle(point)
            archive.append((point, value))
            new_values.append(value)
        estimate = ls_gradient(fy, np.hstack([u, x]), np.concatenate([u_values, new_values]), delta)
        grad = estimate.gradient

        step, accepted = 1.0 / cfg.lip_grad, False
        if np.linalg.norm(grad) > 0:
            for _ in range(cfg.max_halvings):
                if oracle.calls >= budget:
                    break
                candidate = y - step * grad
                value = oracle(candidate)
                archive.append((candidate, value))
                if value < fy:
                    y, fy, accepted = candidate, value, True
                    break
                step /= 2
        if not accepted:
            scale /= 2
        history.append({"delta": delta, "q": u.shape[1], "k": k, "step": step if accepted else 0.0})

    best = np.minimum.accumulate(np.array(oracle.true_values))
    logger.debug(f"DFO {cfg.design_mode} on {oracle.label}: {oracle.calls} calls, best true value {best[-1]:.6g}.")
    return DfoRun(
        best_true_history=best,
        calls_used=oracle.calls,
        final_point=y,
        start_value=oracle.true_values[0],
        method=cfg.design_mode,
        problem=oracle.label,
        history=history,
    )
