"""
Built-in smooth test problems for the DFO benchmark.

Each problem comes with a starting point and a Lipschitz constant for its gradient on a
neighborhood of the path from the start to the minimizer, which sets the radius of the
sampling region.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

DIMENSIONS = (2, 4, 8)
CONDITION = 1e4


@dataclass(repr=False)
class Problem:
    """
    Test problem.

    Parameters
    ----------
    family: :class:`str`
        Problem family, e.g. ``'sphere'``.
    d: :class:`int`
        Dimension.
    func: callable
        Objective.
    x0: :class:`~numpy.ndarray`
        Starting point.
    lip_grad: :class:`float`
        Lipschitz constant hint of the gradient.
    """

    family: str
    d: int
    func: Callable
    x0: np.ndarray
    lip_grad: float

    @property
    def name(self):
        return f"{self.family}-{self.d}"

    def __call__(self, y):
        return float(self.func(np.asarray(y, dtype=float)))

    def __repr__(self):
        return f"Problem('{self.name}')"


def sphere(d):
    """
    ‖y‖² from (1, …, 1).

    Examples
    --------

    >>> p = sphere(2)
    >>> p.name, p(p.x0)
    ('sphere-2', 2.0)
    """
    return Problem(family="sphere", d=d, func=lambda y: y @ y, x0=np.ones(d), lip_grad=2.0)


def rosenbrock(d):
    """Chained Rosenbrock function from (−1.2, 1, −1.2, 1, …)."""

    def func(y):
        return np.sum(100 * (y[1:] - y[:-1] ** 2) ** 2 + (1 - y[:-1]) ** 2)

    x0 = np.array([-1.2 if i % 2 == 0 else 1.0 for i in range(d)])
    return Problem(family="rosenbrock", d=d, func=func, x0=x0, lip_grad=1200.0)


def ill_conditioned(d, condition=CONDITION):
    """½ Σ cᵢ yᵢ², with cᵢ spread geometrically from 1 to ``condition``."""
    weights = np.logspace(0, np.log10(condition), d)
    return Problem(
        family="ill-conditioned",
        d=d,
        func=lambda y: 0.5 * np.sum(weights * y**2),
        x0=np.ones(d),
        lip_grad=float(condition),
    )


def trigonometric(d):
    """
    Sum of squares of fᵢ(y) = d − Σⱼ cos yⱼ + i(1 − cos yᵢ) − sin yᵢ, from (1/d, …, 1/d).
    """
    idx = np.arange(1, d + 1)

    def func(y):
        res = d - np.sum(np.cos(y)) + idx * (1 - np.cos(y)) - np.sin(y)
        return res @ res

    return Problem(family="trigonometric", d=d, func=func, x0=np.full(d, 1 / d), lip_grad=float(4 * d * d))


def cubic_regularized(d):
    """½ yᵀBy + bᵀy + ‖y‖³/3 with B = diag(1, …, 2) and b = (1, …, 1), from (1, …, 1)."""
    diag = np.linspace(1.0, 2.0, d)
    b = np.ones(d)

    def func(y):
        return 0.5 * np.sum(diag * y**2) + b @ y + np.linalg.norm(y) ** 3 / 3

    return Problem(family="cubic-regularized", d=d, func=func, x0=np.ones(d), lip_grad=2.0 + 2 * np.sqrt(d))


FAMILIES = {
    "sphere": sphere,
    "rosenbrock": rosenbrock,
    "ill-conditioned": ill_conditioned,
    "trigonometric": trigonometric,
    "cubic-regularized": cubic_regularized,
}


def problem_set(families=None, dims=DIMENSIONS):
    """
    Parameters
    ----------
    families: :class:`list` of :class:`str`, optional
        Families to include. Defaults to all of them.
    dims: :class:`tuple` of :class:`int`, default=(2, 4, 8)
        Dimensions.

    Returns
    -------
    :class:`list` of :class:`~eigendesign.dfo.problems.Problem`

    Examples
    --------

    >>> len(problem_set())
    15
    >>> [p.name for p in problem_set(["sphere"], dims=(2, 4))]
    ['sphere-2', 'sphere-4']
    """
    families = list(FAMILIES) if families is None else families
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise ValueError(f"Unknown problem families {unknown}. Available: {', '.join(FAMILIES)}.")
    return [FAMILIES[f](d) for f in families for d in dims]
