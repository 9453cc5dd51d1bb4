"""
Data profiles: fraction of instances solved as a function of the normalized budget.

An instance is a (problem, seed) pair. Method m solves it at accuracy τ after t calls when
its best true value h_m(t) ≤ τ·g(x₀) + (1 − τ)·g*, g* being the best final value of all
methods on that instance. Budgets are normalized by d + 1.
"""

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from eigendesign.utils.common import LazyRepr
from eigendesign.utils.errors import BadRange, GridMismatch

ALPHA_POINTS = 200


def solve_time(run, target):
    """
    Number of calls after which a run reaches ``target``.

    Parameters
    ----------
    run: :class:`~eigendesign.dfo.solver.DfoRun`
        Run to inspect.
    target: :class:`float`
        Value to reach.

    Returns
    -------
    :class:`int` or None
        0 if the starting value already meets the target, None if it is never met.

    Examples
    --------

    >>> from eigendesign.dfo.solver import DfoRun
    >>> run = DfoRun(np.array([5., 4., 1., 1.]), 4, np.zeros(2), start_value=5.)
    >>> solve_time(run, 1.5), solve_time(run, 5.), solve_time(run, 0.5)
    (3, 0, None)
    """
    if run.start_value is not None and run.start_value <= target:
        return 0
    hits = np.flatnonzero(np.asarray(run.best_true_history) <= target)
    return int(hits[0]) + 1 if hits.size else None


@dataclass(repr=False)
class DataProfile(LazyRepr):
    """
    Parameters
    ----------
    alphas: :class:`~numpy.ndarray`
        Normalized budgets.
    curves: :class:`dict`
        Method to fraction of instances solved at each alpha.
    tau: :class:`float`
        Accuracy.
    diagnostics: :class:`dict`
        Method to list of (normalized) solve times, None when unsolved.
    """

    alphas: np.ndarray
    curves: dict
    tau: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def methods(self):
        return list(self.curves)

    def at(self, method, alpha):
        """
        Exact fraction of instances that ``method`` solves within α·(d + 1) calls.
        """
        times = self.diagnostics[method]
        return sum(1 for t in times if t is not None and t <= alpha * (1 + 1e-12)) / len(times)

    def rows(self):
        """
        Yields
        ------
        :class:`tuple`
            (method, alpha, fraction_solved) for every point of every curve.
        """
        for method, curve in self.curves.items():
            for alpha, frac in zip(self.alphas, curve):
                yield method, float(alpha), float(frac)


def data_profile(runs, tau, alphas=None, alpha_max=None):
    """
    Build the data profile of a set of runs.

    Parameters
    ----------
    runs: :class:`dict`
        Maps (problem, seed, method) to a :class:`~eigendesign.dfo.solver.DfoRun`.
    tau: :class:`float`
        Accuracy, strictly between 0 and 1.
    alphas: array-like, optional
        Normalized budgets. Defaults to 200 points evenly spread on [0, alpha_max].
    alpha_max: :class:`float`, optional
        Largest normalized budget. Defaults to the largest one observed.

    Returns
    -------
    :class:`~eigendesign.dfo.profiles.DataProfile`

    Examples
    --------

    >>> from eigendesign.dfo.solver import DfoRun
    >>> runs = {("p", 0, "fast"): DfoRun(np.array([4., 0.]), 2, np.zeros(1), start_value=4.),
    ...         ("p", 0, "slow"): DfoRun(np.array([4., 4.]), 2, np.zeros(1), start_value=4.)}
    >>> profile = data_profile(runs, 0.1, alphas=[0., 1.])
    >>> profile.curves
    {'fast': array([0., 1.]), 'slow': array([0., 0.])}
    """
    if not 0 < tau < 1:
        raise BadRange(f"Accuracy tau must lie in (0, 1), got {tau}.")
    by_instance = defaultdict(dict)
    for (problem, seed, method), run in runs.items():
        by_instance[(problem, seed)][method] = run
    methods = sorted({method for (_, _, method) in runs})
    for instance, per_method in by_instance.items():
        if sorted(per_method) != methods:
            raise GridMismatch(f"Instance {instance} has methods {sorted(per_method)}, expected {methods}.")

    times = {method: [] for method in methods}
    largest = 0.0
    for per_method in by_instance.values():
        g_star = min(run.best for run in per_method.values())
        for method, run in per_method.items():
            start = run.start_value if run.start_value is not None else float(run.best_true_history[0])
            t = solve_time(run, tau * start + (1 - tau) * g_star)
            times[method].append(None if t is None else t / (run.d + 1))
            largest = max(largest, run.calls_used / (run.d + 1))

    if alphas is None:
        alphas = np.linspace(0.0, largest if alpha_max is None else alpha_max, ALPHA_POINTS)
    alphas = np.asarray(alphas, dtype=float)
    curves = {}
    for method in methods:
        solved = np.array([np.inf if t is None else t for t in times[method]])
        if not solved.size:
            curves[method] = np.zeros(len(alphas))
            continue
        curves[method] = np.mean(solved[None, :] <= alphas[:, None] * (1 + 1e-12), axis=1)
    return DataProfile(alphas=alphas, curves=curves, tau=tau, diagnostics=times)
