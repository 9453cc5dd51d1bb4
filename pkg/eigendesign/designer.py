"""
End-to-end optimal design with a prior and its optimality certificate.

:func:`optimal_design` diagonalizes the prior, solves the water-filling relaxation under
Weyl capacities, picks the budget, then builds unit-ball vectors that realize the
relaxed optimum exactly. :func:`verify_design` checks any design against the same bound.
"""

from dataclasses import dataclass, field

import numpy as np
from tqdm.auto import tqdm

from eigendesign.construct import closed_form_design, factor_diagonal
from eigendesign.criteria import grid_slope, lower_bound, optimize_budget, resolve
from eigendesign.linalg import eigh_ascending, gram, max_norm, sym_matrix
from eigendesign.utils.common import LazyRepr
from eigendesign.utils.errors import BadRange, DimensionMismatch, LengthMismatch
from eigendesign.utils.logger import logger
from eigendesign.utils.rng import default_seed
from eigendesign.waterfill import weyl_caps

BALL_TOL = 1e-10
WEYL_TOL = 1e-8
BETTER_TOL = 1e-9
CHUNK = 1000


@dataclass(repr=False)
class DesignResult(LazyRepr):
    """
    Optimal design and its certificate.

    Parameters
    ----------
    X_star: :class:`~numpy.ndarray`
        d×k design, one vector per column.
    objective: :class:`float`
        F(A + X*X*ᵀ).
    lower_bound: :class:`float`
        f(t + β(s*)), a lower bound over all feasible designs.
    s_star: :class:`float`
        Budget spent, Σ‖x^i‖².
    eigenvalues_before: :class:`~numpy.ndarray`
        Ascending spectrum t of the prior.
    eigenvalues_after: :class:`~numpy.ndarray`
        Ascending spectrum of A + X*X*ᵀ.
    budget_tol: :class:`float`
        Bracket width used by the budget search.
    criterion: :class:`str`
        Criterion label.
    diagnostics: :class:`dict`
        Intermediate quantities (water level, caps, rotations, iterations).
    """

    X_star: np.ndarray
    objective: float
    lower_bound: float
    s_star: float
    eigenvalues_before: np.ndarray
    eigenvalues_after: np.ndarray
    budget_tol: float
    criterion: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def d(self):
        return self.X_star.shape[0]

    @property
    def k(self):
        return self.X_star.shape[1]

    @property
    def gap(self):
        if self.objective == self.lower_bound:
            return 0.0
        return self.objective - self.lower_bound

    def to_document(self):
        """
        Returns
        -------
        :class:`~eigendesign.documents.DesignDocument`
            Serializable view of the result.
        """
        from eigendesign.documents import DesignDocument

        return DesignDocument.from_result(self)


@dataclass(repr=False)
class VerifyReport(LazyRepr):
    """
    Outcome of :func:`verify_design`.

    Parameters
    ----------
    weyl_ok: :class:`bool`
        t_j ≤ λ_j(A + XXᵀ) ≤ t_{j+k̂} for all j.
    unit_ball_ok: :class:`bool`
        Every column has norm at most 1.
    bound_gap: :class:`float`
        F(A + XXᵀ) minus the certified lower bound.
    sampled_better_designs: :class:`int`
        Random feasible designs that strictly beat the given one.
    samples: :class:`int`
        Number of random designs drawn.
    objective: :class:`float`
        F(A + XXᵀ).
    """

    weyl_ok: bool
    unit_ball_ok: bool
    bound_gap: float
    sampled_better_designs: int
    samples: int = 0
    objective: float = None

    def ok(self, gap_tol=1e-6):
        """
        Parameters
        ----------
        gap_tol: :class:`float`, default=1e-6
            Largest accepted gap to the lower bound.

        Returns
        -------
        :class:`bool`
            Whether the design passes every check.
        """
        return bool(
            self.weyl_ok and self.unit_ball_ok and self.bound_gap <= gap_tol and self.sampled_better_designs == 0
        )


def majorizes(x, y, tol=1e-10):
    """
    Majorization order: whether x is less spread out than y.

    Parameters
    ----------
    x: array-like
        First vector.
    y: array-like
        Second vector, same length.
    tol: :class:`float`, default=1e-10
        Relative tolerance on partial sums.

    Returns
    -------
    :class:`bool`
        True iff the descending partial sums of x never exceed those of y and both totals
        agree.

    Examples
    --------

    >>> majorizes([1, 1], [2, 0])
    True
    >>> majorizes([2, 0], [1, 1])
    False
    >>> majorizes([1, 1], [1, 2])
    False
    """
    x = np.sort(np.asarray(x, dtype=float).ravel())[::-1]
    y = np.sort(np.asarray(y, dtype=float).ravel())[::-1]
    if len(x) != len(y):
        raise LengthMismatch(f"Vectors of lengths {len(x)} and {len(y)} cannot be compared.")
    if not len(x):
        return True
    scale = tol * max(1.0, float(np.sum(np.abs(x))), float(np.sum(np.abs(y))))
    cx, cy = np.cumsum(x), np.cumsum(y)
    return bool(np.all(cx[:-1] <= cy[:-1] + scale) and abs(cx[-1] - cy[-1]) <= scale)


def schur_horn_feasible(diagonal, eigenvalues):
    """
    Whether a real symmetric matrix with this diagonal and these eigenvalues exists.

    Examples
    --------

    >>> schur_horn_feasible([1., 1.], [2., 0.])
    True
    """
    return majorizes(diagonal, eigenvalues)


def sample_unit_ball(d, k, rng, size=None):
    """
    Columns drawn uniformly in the unit ball of dimension d.

    Parameters
    ----------
    d: :class:`int`
        Dimension.
    k: :class:`int`
        Number of columns.
    rng: :class:`~numpy.random.Generator`
        Random source.
    size: :class:`int`, optional
        Draw a stack of ``size`` designs.

    Returns
    -------
    :class:`~numpy.ndarray`
        Shape (d, k), or (size, d, k).
    """
    shape = (d, k) if size is None else (size, d, k)
    g = rng.standard_normal(shape)
    norms = np.linalg.norm(g, axis=-2, keepdims=True)
    norms[norms == 0] = 1.0
    radius = rng.uniform(size=shape[:-2] + (1, k)) ** (1 / d)
    return g / norms * radius


def _is_isotropic(a):
    level = float(np.mean(np.diag(a)))
    return max_norm(a - level * np.eye(len(a))) <= 1e-12 * max(1.0, abs(level))


def optimal_design(a, k, criterion, tol=None, closed_form=False, method="jacobi"):
    """
    Compute an optimal design of k unit-ball vectors for prior A.

    Parameters
    ----------
    a: array-like
        d×d positive semidefinite prior information matrix.
    k: :class:`int`
        Number of design vectors, k ≥ 1.
    criterion: :class:`~eigendesign.criteria.Criterion` or :class:`str`
        Objective, or a name accepted by :func:`~eigendesign.criteria.resolve`.
    tol: :class:`float`, optional
        Accuracy on the objective for criteria that are not nonincreasing. It is turned
        into a bracket width on the budget using the Lipschitz constant of the criterion
        (its hint, or a grid estimate).
    closed_form: :class:`bool`, default=False
        For an isotropic prior ℓ·I, return the axis or Fourier design instead of the
        rotated one. Both are optimal.
    method: :class:`str`, default='jacobi'
        Eigensolver, see :func:`~eigendesign.linalg.eigh_ascending`.

    Returns
    -------
    :class:`~eigendesign.designer.DesignResult`

    Examples
    --------

    Spectrum after an optimal D-design on a diagonal prior:

    >>> res = optimal_design(np.diag([1.0, 1.1, 1.1, 1.3, 3.0]), 2, "d-opt")
    >>> res.eigenvalues_after.round(10)
    array([1.1 , 1.3 , 2.05, 2.05, 3.  ])
    >>> res.s_star
    2.0

    A single vector on a flat prior cannot lift both eigenvalues:

    >>> res = optimal_design(np.eye(2) / 2, 1, "e-opt")
    >>> round(res.objective, 12), res.lower_bound
    (2.0, 2.0)
    """
    criterion = resolve(criterion)
    k = int(k)
    if k < 1:
        raise BadRange(f"At least one design vector is needed (k={k}).")
    a = sym_matrix(a)
    spectrum = eigh_ascending(a, method=method)
    t, d = spectrum.t, spectrum.dim
    caps = weyl_caps(t, k)
    tol_s = None
    if tol is not None:
        slope = criterion.lipschitz_hint
        if slope is None:
            slope = grid_slope(criterion, t, caps, k)
        tol_s = tol / max(slope, 1.0)
    budget = optimize_budget(criterion, t, caps, k, tol_s=tol_s)
    alloc = budget.allocation
    if closed_form and not _is_isotropic(a):
        logger.warning("Closed-form designs need an isotropic prior; using the general construction.")
    if closed_form and _is_isotropic(a):
        vectors = closed_form_design(min(budget.s_star, k), k, d)
        x_star = vectors.Z
    else:
        vectors = factor_diagonal(alloc.beta_compact, k)
        x_star = spectrum.Q @ vectors.Z
    after = eigh_ascending(a + gram(x_star), method=method).t
    objective = criterion(after)
    logger.debug(
        f"Design for d={d}, k={k}, {criterion}: s*={budget.s_star:.6g}, "
        f"objective={objective:.6g}, lower bound={budget.value:.6g}."
    )
    return DesignResult(
        X_star=x_star,
        objective=objective,
        lower_bound=budget.value,
        s_star=budget.s_star,
        eigenvalues_before=t,
        eigenvalues_after=after,
        budget_tol=1e-9 * max(1.0, k) if tol_s is None else tol_s,
        criterion=getattr(criterion, "name", None) or repr(criterion),
        diagnostics={
            "water_level": alloc.c,
            "caps": caps,
            "beta": alloc.beta,
            "beta_compact": alloc.beta_compact,
            "iterations": budget.iterations,
            "rotations": vectors.rotations,
        },
    )


def weyl_sandwich(t, lam, k, tol=WEYL_TOL):
    """
    Whether λ_j lies in [t_j, t_{j+k̂}] for every j, k̂ = min(d, k).

    Parameters
    ----------
    t: array-like
        Ascending eigenvalues of the prior.
    lam: array-like
        Ascending eigenvalues after the update.
    k: :class:`int`
        Rank of the update.
    tol: :class:`float`, default=1e-8
        Relative slack.

    Returns
    -------
    :class:`bool`

    Examples
    --------

    >>> weyl_sandwich([0., 1.], [1., 1.], 1)
    True
    >>> weyl_sandwich([0., 1.], [1.5, 1.5], 1)
    False
    """
    t = np.asarray(t, dtype=float)
    lam = np.asarray(lam, dtype=float)
    d = len(t)
    dhat = min(d, int(k))
    slack = tol * max(1.0, max_norm(lam), max_norm(t))
    if np.any(lam < t - slack):
        return False
    return bool(np.all(lam[: d - dhat] <= t[dhat:] + slack))


def _beats(value, objective):
    """Whether a sampled criterion value is strictly better than the design's objective."""
    if not np.isfinite(objective):
        return objective > 0 and bool(np.isfinite(value))
    return value < objective - BETTER_TOL * max(1.0, abs(objective))


def verify_design(a, x, criterion, samples=10000, seed=None, progress=False):
    """
    Certify a design against the water-filling lower bound and random competitors.

    Parameters
    ----------
    a: array-like
        d×d prior information matrix.
    x: array-like
        d×k design.
    criterion: :class:`~eigendesign.criteria.Criterion` or :class:`str`
        Objective.
    samples: :class:`int`, default=10000
        Number of random feasible designs to compare with.
    seed: :class:`int`, optional
        Seed of the sampler, see :func:`~eigendesign.utils.rng.default_seed`.
    progress: :class:`bool`, default=False
        Display a progress bar over sample chunks.

    Returns
    -------
    :class:`~eigendesign.designer.VerifyReport`

    Examples
    --------

    >>> report = verify_design(np.eye(2), np.zeros((2, 1)), "a-opt", samples=10)
    >>> report.weyl_ok, report.unit_ball_ok, report.bound_gap > 0
    (True, True, True)
    """
    criterion = resolve(criterion)
    a = sym_matrix(a)
    x = np.array(x, dtype=float, ndmin=2)
    d = len(a)
    if x.ndim != 2 or x.shape[0] != d:
        raise DimensionMismatch(f"Design of shape {x.shape} does not match a prior of dimension {d}.")
    k = x.shape[1]
    t = eigh_ascending(a).t
    lam = eigh_ascending(a + gram(x)).t
    objective = criterion(lam)
    unit_ball_ok = bool(np.all(np.sum(x**2, axis=0) <= (1 + BALL_TOL) ** 2))
    bound = lower_bound(t, k, criterion).value
    gap = 0.0 if objective == bound else objective - bound

    rng = np.random.default_rng(default_seed(seed))
    better = 0
    chunks = [min(CHUNK, samples - start) for start in range(0, samples, CHUNK)]
    for size in tqdm(chunks, desc="Sampling designs", disable=not progress):
        ys = sample_unit_ball(d, k, rng, size=size)
        mats = a + ys @ np.swapaxes(ys, -1, -2)
        for eig in np.linalg.eigvalsh(mats):
            if _beats(criterion(eig), objective):
                better += 1
    report = VerifyReport(
        weyl_ok=weyl_sandwich(t, lam, k),
        unit_ball_ok=unit_ball_ok,
        bound_gap=float(gap),
        sampled_better_designs=better,
        samples=int(samples),
        objective=objective,
    )
    logger.debug(f"Verification: {report}")
    return report
