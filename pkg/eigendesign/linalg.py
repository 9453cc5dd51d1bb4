"""
Small dense symmetric linear algebra: eigendecomposition, Gram products, plane rotations.

Symmetric matrices are plain :class:`numpy.ndarray` objects; :func:`sym_matrix` is the
constructor that checks the shape and symmetrizes.
"""

from dataclasses import dataclass

import numpy as np

from eigendesign.utils.common import LazyRepr
from eigendesign.utils.errors import DimensionMismatch, DimensionZero, NotPSD
from eigendesign.utils.logger import logger

CLAMP_TOL = 1e-8
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
NEGLIGIBLE = 1e-18


def max_norm(m):
    """
    Parameters
    ----------
    m: :class:`~numpy.ndarray`
        Any array.

    Returns
    -------
    :class:`float`
        Largest absolute entry (0 for an empty array).
    """
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m))) if m.size else 0.0


def sym_matrix(entries):
    """
    Build a symmetric matrix as (S + Sᵀ) / 2.

    Parameters
    ----------
    entries: array-like
        Square d×d array.

    Returns
    -------
    :class:`~numpy.ndarray`
        Exactly symmetric float array.

    Examples
    --------

    >>> sym_matrix([[1, 2], [0, 1]])
    array([[1., 1.],
           [1., 1.]])
    """
    s = np.array(entries, dtype=float, ndmin=2)
    if s.size == 0:
        raise DimensionZero("Matrix of dimension 0.")
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise DimensionMismatch(f"Square matrix expected, got shape {s.shape}.")
    return (s + s.T) / 2


@dataclass(repr=False)
class Spectrum(LazyRepr):
    """
    Ascending eigenvalues of a symmetric matrix with the matching orthonormal basis.

    Parameters
    ----------
    t: :class:`~numpy.ndarray`
        Eigenvalues, ascending.
    Q: :class:`~numpy.ndarray`
        Orthonormal matrix; column ``j`` is the eigenvector of ``t[j]``.
    """

    t: np.ndarray
    Q: np.ndarray

    @property
    def dim(self):
        return len(self.t)

    def reconstruct(self):
        """
        Returns
        -------
        :class:`~numpy.ndarray`
            Q·diag(t)·Qᵀ.
        """
        return (self.Q * self.t) @ self.Q.T


def jacobi_eigh(s, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """
    Cyclic Jacobi eigenvalue algorithm.

    Sweeps over all pairs (p, q), p < q, zeroing each off-diagonal entry with one plane
    rotation, until the off-diagonal Frobenius norm drops below ``tol·‖S‖_F``.

    Parameters
    ----------
    s: :class:`~numpy.ndarray`
        Symmetric matrix.
    tol: :class:`float`, default=1e-12
        Relative stopping threshold.
    max_sweeps: :class:`int`, default=100
        Hard cap on the number of sweeps.

    Returns
    -------
    eigenvalues: :class:`~numpy.ndarray`
        Unsorted eigenvalues (diagonal of the rotated matrix).
    vectors: :class:`~numpy.ndarray`
        Orthonormal eigenvectors, by column.

    Examples
    --------

    >>> w, v = jacobi_eigh(np.array([[2., 1.], [1., 2.]]))
    >>> np.sort(w).round(12)
    array([1., 3.])
    """
    a = np.array(s, dtype=float)
    d = a.shape[0]
    v = np.eye(d)
    threshold = tol * np.linalg.norm(a)
    if d == 1 or threshold == 0:
        return np.diag(a).copy(), v
    sweep = 0
    for sweep in range(1, max_sweeps + 1):
        off = np.sqrt(max(np.sum(a**2) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= max(NEGLIGIBLE * (abs(a[p, p]) + abs(a[q, q])), np.finfo(float).tiny):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                sn = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - sn * aq, sn * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - sn * aq, sn * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - sn * vq, sn * vp + c * vq
    else:
        logger.warning(f"Jacobi: no convergence after {max_sweeps} sweeps (d={d}).")
    logger.debug(f"Jacobi: {sweep} sweep(s) for d={d}.")
    return np.diag(a).copy(), v


def eigh_ascending(s, method="jacobi", clamp_tol=CLAMP_TOL):
    """
    Eigendecomposition of a positive semidefinite matrix, eigenvalues ascending.

    Eigenvalues that are negative within roundoff are clamped to 0.

    Parameters
    ----------
    s: array-like
        Symmetric (or nearly symmetric) matrix; symmetrized first.
    method: :class:`str`, default='jacobi'
        ``'jacobi'`` for :func:`jacobi_eigh`, ``'lapack'`` for :func:`numpy.linalg.eigh`.
    clamp_tol: :class:`float`, default=1e-8
        An eigenvalue below ``-clamp_tol·‖S‖_max`` raises :class:`NotPSD`.

    Returns
    -------
    :class:`~eigendesign.linalg.Spectrum`

    Examples
    --------

    >>> spec = eigh_ascending(np.diag([3., 1.]))
    >>> spec.t
    array([1., 3.])
    >>> np.abs(spec.Q)
    array([[0., 1.],
           [1., 0.]])
    >>> eigh_ascending([[0., 1.], [1., 0.]])
    Traceback (most recent call last):
    ...
    eigendesign.utils.errors.NotPSD: Matrix is not positive semidefinite: eigenvalue -1 < -1e-08.
    """
    s = sym_matrix(s)
    if method == "jacobi":
        w, v = jacobi_eigh(s)
    elif method == "lapack":
        w, v = np.linalg.eigh(s)
    else:
        raise ValueError(f"Unknown eigensolver {method!r}.")
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    floor = -clamp_tol * max_norm(s)
    if w.size and w[0] < floor:
        raise NotPSD(f"Matrix is not positive semidefinite: eigenvalue {w[0]:.6g} < {floor:.6g}.")
    return Spectrum(t=np.maximum(w, 0.0), Q=v)


def gram(x):
    """
    Parameters
    ----------
    x: array-like
        d×k matrix.

    Returns
    -------
    :class:`~numpy.ndarray`
        XXᵀ, exactly symmetric.

    Examples
    --------

    >>> gram([[1., 1.], [0., 0.]])
    array([[2., 0.],
           [0., 0.]])
    """
    x = np.array(x, dtype=float, ndmin=2)
    g = x @ x.T
    return (g + g.T) / 2


def rotate_columns(y, i, j, c, s):
    """
    Right-multiply ``y`` in place by the plane rotation acting on columns ``i`` and ``j``.

    Column i becomes ``c·yᵢ − s·yⱼ`` and column j becomes ``s·yᵢ + c·yⱼ``; YYᵀ is unchanged.

    Parameters
    ----------
    y: :class:`~numpy.ndarray`
        d×k matrix, modified in place.
    i: :class:`int`
        First column.
    j: :class:`int`
        Second column.
    c: :class:`float`
        Cosine of the angle.
    s: :class:`float`
        Sine of the angle.

    Returns
    -------
    :class:`~numpy.ndarray`
        ``y`` itself.
    """
    yi, yj = y[:, i].copy(), y[:, j].copy()
    y[:, i] = c * yi - s * yj
    y[:, j] = s * yi + c * yj
    return y


def random_orthonormal(d, rng):
    """
    Haar-distributed orthonormal matrix.

    Parameters
    ----------
    d: :class:`int`
        Dimension.
    rng: :class:`~numpy.random.Generator`
        Random source.

    Returns
    -------
    :class:`~numpy.ndarray`
    """
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def random_psd(d, rng, rank=None, scale=1.0):
    """
    Random positive semidefinite matrix ``scale·GGᵀ/rank`` with G of size d×rank.

    Parameters
    ----------
    d: :class:`int`
        Dimension.
    rng: :class:`~numpy.random.Generator`
        Random source.
    rank: :class:`int`, optional
        Rank of the result. Defaults to d.
    scale: :class:`float`, default=1.0
        Multiplier.

    Returns
    -------
    :class:`~numpy.ndarray`
    """
    rank = d if rank is None else rank
    if rank == 0:
        return np.zeros((d, d))
    g = rng.standard_normal((d, rank))
    return sym_matrix(scale * g @ g.T / rank)
