"""
Least-squares gradient estimation from reused and new sample directions.

Around the incumbent y, a point y + δu carries the information u·uᵀ; the gradient error of
the regression is controlled by the smallest eigenvalue of the information matrix of all
directions, which is where spectral designs come in.
"""

from dataclasses import dataclass

import numpy as np

from eigendesign.designer import optimal_design
from eigendesign.utils.common import LazyRepr
from eigendesign.utils.logger import logger

RANK_TOL = 1e-12
DESIGN_MODES = ("spectral", "coordinate", "forward-diff")


@dataclass(repr=False)
class GradientEstimate(LazyRepr):
    """
    Parameters
    ----------
    gradient: :class:`~numpy.ndarray`
        Estimated gradient.
    rank_deficient: :class:`bool`
        The directions do not span the space; the minimum-norm solution is returned.
    lambda_min: :class:`float`
        Smallest eigenvalue of Σ uuᵀ over all directions.
    """

    gradient: np.ndarray
    rank_deficient: bool
    lambda_min: float


def ls_gradient(center_value, dirs, values, delta):
    """
    Gradient of the linear model fitted to values sampled at y + δ·dir.

    Minimizes Σ (δ·dirᵀg − [value − center_value])² over g.

    Parameters
    ----------
    center_value: :class:`float`
        Value at the incumbent y.
    dirs: array-like
        d×m matrix of directions.
    values: array-like
        The m values at y + δ·dir.
    delta: :class:`float`
        Sampling radius.

    Returns
    -------
    :class:`~eigendesign.dfo.estimation.GradientEstimate`

    Examples
    --------

    >>> a = np.array([1., -2., 3.])
    >>> est = ls_gradient(0., np.eye(3), 0.1 * a, 0.1)
    >>> est.gradient.round(10), est.rank_deficient
    (array([ 1., -2.,  3.]), False)
    """
    dirs = np.array(dirs, dtype=float, ndmin=2)
    rhs = (np.asarray(values, dtype=float) - center_value) / delta
    info = dirs @ dirs.T
    eig = np.linalg.eigvalsh(info)
    lambda_min = float(eig[0])
    if lambda_min >= RANK_TOL * max(1.0, float(eig[-1])):
        return GradientEstimate(gradient=np.linalg.solve(info, dirs @ rhs), rank_deficient=False, lambda_min=lambda_min)
    logger.warning(f"Rank-deficient directions (λ_min={lambda_min:.3g}); using the minimum-norm gradient.")
    gradient = np.linalg.lstsq(dirs.T, rhs, rcond=None)[0]
    return GradientEstimate(gradient=gradient, rank_deficient=True, lambda_min=lambda_min)


def gradient_error_bound(lambda_min_inv, q, k, delta, eps_abs, lip_grad, r):
    """
    Upper bound on ‖ĝ − ∇g(y)‖ for the regression gradient.

    Parameters
    ----------
    lambda_min_inv: :class:`float`
        Largest eigenvalue of (A + XXᵀ)⁻¹.
    q: :class:`int`
        Number of reused points, inside the ball of radius r·δ.
    k: :class:`int`
        Number of new points, inside the ball of radius δ.
    delta: :class:`float`
        Sampling radius.
    eps_abs: :class:`float`
        Bound on the error of a difference of two evaluations.
    lip_grad: :class:`float`
        Lipschitz constant of ∇g.
    r: :class:`float`
        Reuse radius.

    Returns
    -------
    :class:`float`

    Examples
    --------

    >>> gradient_error_bound(1., 0, 1, 2., 2., 1., 1.)
    2.0
    """
    reused = (lip_grad * r**2 * delta / 2 + eps_abs / delta) ** 2
    new = (lip_grad * delta / 2 + eps_abs / delta) ** 2
    return float(np.sqrt(lambda_min_inv) * np.sqrt(q * reused + k * new))


def optimal_radius(cfg, q, k):
    """
    Radius δ minimizing :func:`gradient_error_bound`: √(2ε/L)·((q + k)/(q·r⁴ + k))^¼.

    Parameters
    ----------
    cfg: :class:`~eigendesign.dfo.solver.DfoConfig`
        Provides ``eps_abs``, ``lip_grad`` and ``reuse_radius``.
    q: :class:`int`
        Number of reused points.
    k: :class:`int`
        Number of new points.

    Returns
    -------
    :class:`float`

    Examples
    --------

    >>> from eigendesign.dfo.solver import DfoConfig
    >>> optimal_radius(DfoConfig(eps_abs=2., lip_grad=1.), 0, 3)
    2.0
    >>> round(optimal_radius(DfoConfig(eps_abs=1., lip_grad=2., reuse_radius=2.), 4, 2), 4)
    0.5491
    """
    base = np.sqrt(2 * cfg.eps_abs / cfg.lip_grad)
    return float(base * ((q + k) / (q * cfg.reuse_radius**4 + k)) ** 0.25)


def reuse_directions(history, y, delta, r):
    """
    Previous evaluations close enough to y to be reused, as normalized displacements.

    Parameters
    ----------
    history: :class:`list` of :class:`tuple`
        Pairs (point, value).
    y: array-like
        Incumbent.
    delta: :class:`float`
        Sampling radius.
    r: :class:`float`
        Reuse radius; points with 0 < ‖p − y‖ ≤ r·δ are kept.

    Returns
    -------
    U: :class:`~numpy.ndarray`
        d×q matrix of directions (p − y)/δ.
    values: :class:`~numpy.ndarray`
        Matching stored values.

    Examples
    --------

    >>> hist = [(np.array([0.5, 0.]), 1.), (np.array([0., 2.]), 2.), (np.array([200., 0.]), 3.)]
    >>> u, values = reuse_directions(hist, np.zeros(2), 1., 100.)
    >>> u
    array([[0.5, 0. ],
           [0. , 2. ]])
    >>> values
    array([1., 2.])
    """
    y = np.asarray(y, dtype=float)
    radius = r * delta * (1 + 1e-12)
    cols, vals = [], []
    for point, value in history:
        dist = np.linalg.norm(point - y)
        if 0 < dist <= radius:
            cols.append((point - y) / delta)
            vals.append(value)
    if not cols:
        return np.zeros((len(y), 0)), np.zeros(0)
    return np.array(cols).T, np.array(vals, dtype=float)


def new_direction_count(d, rank_u):
    """
    Number of new directions: max{1, ⌊d/2⌋, d − rank(U)}.

    Examples
    --------

    >>> new_direction_count(2, 0), new_direction_count(10, 10), new_direction_count(1, 1)
    (2, 5, 1)
    """
    return max(1, d // 2, d - rank_u)


def design_directions(mode, prior, k, d):
    """
    New sample directions for the regression.

    Parameters
    ----------
    mode: :class:`str`
        ``'spectral'``: E-optimal design given the prior; ``'coordinate'``: first k
        coordinate vectors; ``'forward-diff'``: all d coordinate vectors.
    prior: array-like
        d×d information matrix UUᵀ of the reused directions.
    k: :class:`int`
        Number of new directions (ignored by ``'forward-diff'``).
    d: :class:`int`
        Dimension.

    Returns
    -------
    :class:`~numpy.ndarray`
        d×k matrix with columns in the unit ball.

    Examples
    --------

    >>> design_directions("coordinate", np.zeros((3, 3)), 2, 3)
    array([[1., 0.],
           [0., 1.],
           [0., 0.]])
    """
    match mode:
        case "spectral":
            return optimal_design(prior, k, "e-opt").X_star
        case "coordinate":
            return np.eye(d)[:, :k]
        case "forward-diff":
            return np.eye(d)
        case _:
            raise ValueError(f"Unknown design mode {mode!r}. Available: {', '.join(DESIGN_MODES)}.")
