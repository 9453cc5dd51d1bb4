"""
From a target diagonal information matrix to unit-ball design vectors.

:func:`factor_diagonal` places the square roots of the target on distinct axes, then
:func:`equalize_column_norms` spreads the mass evenly over the k columns with plane
rotations acting on the right (Bendel–Mickey steps), which leave ZZᵀ unchanged.
Isotropic priors also have closed-form designs: axis designs and Fourier tight frames.
"""

from dataclasses import dataclass

import numpy as np

from eigendesign.linalg import rotate_columns
from eigendesign.utils.common import LazyRepr
from eigendesign.utils.errors import BadRange, RankBudgetExceeded, TraceBudgetExceeded
from eigendesign.utils.logger import logger

NORM_TOL = 1e-12


@dataclass(repr=False)
class DesignVectors(LazyRepr):
    """
    Design vectors, by column.

    Parameters
    ----------
    Z: :class:`~numpy.ndarray`
        d×k matrix.
    s: :class:`float`
        Total mass Σ‖zᵢ‖².
    rotations: :class:`int`
        Number of plane rotations used to build Z.
    """

    Z: np.ndarray
    s: float
    rotations: int = 0

    @property
    def column_norms2(self):
        """Squared Euclidean norm of each column."""
        return np.sum(self.Z**2, axis=0)

    @property
    def k(self):
        return self.Z.shape[1]


def _rotation_to_target(yi, yj, ni, nj, tau):
    """
    Cosine and sine that bring column i to squared norm ``tau``, assuming ni < tau < nj.

    With column i mapped to c·yi − s·yj, the condition reads a + b·x + e·x² = 0 for
    x = tan θ, a = ni − τ < 0, b = −2⟨yi, yj⟩, e = nj − τ > 0. The root of smaller
    magnitude is taken.
    """
    a = ni - tau
    e = nj - tau
    b = -2.0 * float(yi @ yj)
    disc = b * b - 4 * a * e
    q = -(b + np.copysign(np.sqrt(disc), b if b != 0 else 1.0)) / 2
    x = a / q
    c = 1 / np.sqrt(1 + x * x)
    return c, x * c


def _equalize(y, tol=NORM_TOL):
    y = np.array(y, dtype=float, ndmin=2)
    k = y.shape[1]
    norms = np.sum(y**2, axis=0)
    s = float(norms.sum())
    if k == 0 or s == 0:
        return y, 0
    tau = s / k
    eps = tol * max(1.0, s)
    open_cols = [i for i in range(k) if abs(norms[i] - tau) > eps]
    rotations = 0
    while len(open_cols) > 1:
        i = min(open_cols, key=lambda col: norms[col])
        j = max(open_cols, key=lambda col: norms[col])
        if norms[i] >= tau - eps or norms[j] <= tau + eps:
            break
        c, sn = _rotation_to_target(y[:, i], y[:, j], norms[i], norms[j], tau)
        rotate_columns(y, i, j, c, sn)
        rotations += 1
        norms[j] = norms[i] + norms[j] - tau
        norms[i] = tau
        open_cols.remove(i)
        if abs(norms[j] - tau) <= eps:
            open_cols.remove(j)
    logger.debug(f"Column equalization: {rotations} rotation(s) for k={k}.")
    return y, rotations


def equalize_column_norms(y):
    """
    Rotate the columns of Y so that they all have squared norm Σ‖yᵢ‖² / k.

    The smallest column is paired with the largest one and rotated in their plane until
    the smallest reaches the target; at most k − 1 rotations are needed. YYᵀ is invariant.

    Parameters
    ----------
    y: array-like
        d×k matrix.

    Returns
    -------
    :class:`~numpy.ndarray`
        Y·R for a product R of plane rotations.

    Examples
    --------

    >>> z = equalize_column_norms([[np.sqrt(2), 0.], [0., 0.]])
    >>> np.sum(z**2, axis=0).round(12)
    array([1., 1.])
    >>> (z @ z.T).round(12)
    array([[2., 0.],
           [0., 0.]])
    """
    return _equalize(y)[0]


def factor_diagonal(beta_prime, k):
    """
    k vectors in the unit ball whose information matrix is diag(β′).

    Parameters
    ----------
    beta_prime: array-like
        Nonnegative target, with at most k nonzero entries and a sum at most k.
    k: :class:`int`
        Number of design vectors.

    Returns
    -------
    :class:`~eigendesign.construct.DesignVectors`

    Examples
    --------

    >>> dv = factor_diagonal([1.05, 0.95, 0., 0., 0.], 2)
    >>> dv.column_norms2.round(12)
    array([1., 1.])
    >>> np.diag(dv.Z @ dv.Z.T).round(12)
    array([1.05, 0.95, 0.  , 0.  , 0.  ])
    >>> factor_diagonal([1., 1., 1.], 2)
    Traceback (most recent call last):
    ...
    eigendesign.utils.errors.RankBudgetExceeded: Target has 3 nonzero entries but only k=2 vectors.
    """
    beta_prime = np.asarray(beta_prime, dtype=float)
    k = int(k)
    support = np.flatnonzero(beta_prime > 0)
    if len(support) > k:
        raise RankBudgetExceeded(f"Target has {len(support)} nonzero entries but only k={k} vectors.")
    s = float(beta_prime.sum())
    if s > k * (1 + 1e-10):
        raise TraceBudgetExceeded(f"Target has trace {s:.12g} > k={k}.")
    y = np.zeros((len(beta_prime), k))
    y[support, np.arange(len(support))] = np.sqrt(beta_prime[support])
    z, rotations = _equalize(y)
    return DesignVectors(Z=z, s=s, rotations=rotations)


def _check_mass(s, k):
    if not 0 <= s <= k * (1 + 1e-12):
        raise BadRange(f"Mass s={s} must lie in [0, k={k}].")


def isotropic_axis_design(s, k, d):
    """
    Closed-form design x^i = √(s/k)·e_i, i = 1..k, for k ≤ d.

    Parameters
    ----------
    s: :class:`float`
        Total mass.
    k: :class:`int`
        Number of vectors.
    d: :class:`int`
        Dimension.

    Returns
    -------
    :class:`~eigendesign.construct.DesignVectors`

    Examples
    --------

    >>> isotropic_axis_design(1, 2, 3).Z.round(6)
    array([[0.707107, 0.      ],
           [0.      , 0.707107],
           [0.      , 0.      ]])
    """
    if k > d:
        raise BadRange(f"Axis designs need k <= d (k={k}, d={d}).")
    _check_mass(s, k)
    z = np.zeros((d, k))
    z[np.arange(k), np.arange(k)] = np.sqrt(s / k)
    return DesignVectors(Z=z, s=float(s))


def isotropic_fourier_design(s, k, d):
    """
    Closed-form tight frame for k ≥ d + 1: Σ x^i (x^i)ᵀ = (s/d)·I.

    With θ_i = 2π(i − 1)/k, the coordinates of x^i are sin(mθ_i), cos(mθ_i) for
    m = 1, …, ⌊d/2⌋, preceded by √2/2 when d is odd, all scaled by √(2s/(dk)).

    Parameters
    ----------
    s: :class:`float`
        Total mass.
    k: :class:`int`
        Number of vectors.
    d: :class:`int`
        Dimension.

    Returns
    -------
    :class:`~eigendesign.construct.DesignVectors`

    Examples
    --------

    >>> dv = isotropic_fourier_design(3, 3, 2)
    >>> (dv.Z @ dv.Z.T).round(12)
    array([[1.5, 0. ],
           [0. , 1.5]])
    >>> dv.column_norms2.round(12)
    array([1., 1., 1.])
    """
    if k <= d:
        raise BadRange(f"Fourier designs need k >= d + 1 (k={k}, d={d}).")
    _check_mass(s, k)
    theta = 2 * np.pi * np.arange(k) / k
    rows = [np.full(k, np.sqrt(2) / 2)] if d % 2 else []
    for m in range(1, d // 2 + 1):
        rows.append(np.sin(m * theta))
        rows.append(np.cos(m * theta))
    z = np.sqrt(2 * s / (d * k)) * np.array(rows)
    return DesignVectors(Z=z, s=float(s))


def closed_form_design(s, k, d):
    """
    Optimal design for an isotropic prior ℓ·I with mass s: axis design when k ≤ d,
    Fourier tight frame otherwise.

    Returns
    -------
    :class:`~eigendesign.construct.DesignVectors`
    """
    if k <= d:
        return isotropic_axis_design(s, k, d)
    return isotropic_fourier_design(s, k, d)
