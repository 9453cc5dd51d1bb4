"""
Spectral criteria f and the one-dimensional search over the budget actually spent.

Criteria are registered by subclassing :class:`Criterion` with a ``name`` class
attribute; :func:`builtin` looks them up by that name.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import ClassVar

import numpy as np

from eigendesign.utils.common import LazyRepr, get_classes
from eigendesign.utils.errors import InfeasibleBudget, UnknownCriterion
from eigendesign.utils.logger import logger
from eigendesign.waterfill import allocate, feasibility, uncapped, weyl_caps

GOLDEN = (np.sqrt(5) - 1) / 2
MAX_ITER = 200
GRID_POINTS = 64


class Criterion:
    """
    Symmetric convex function of the eigenvalues of the information matrix.

    Subclasses implement :meth:`_eval` on eigenvalues sorted ascending; sorting first
    makes the evaluation exactly symmetric.

    Attributes
    ----------
    name: :class:`str`
        Registry key.
    monotone_nonincreasing: :class:`bool`
        More information never hurts; the full budget is then optimal.
    requires_positive: :class:`bool`
        The criterion is +∞ as soon as an eigenvalue is ≤ 0.
    lipschitz_hint: :class:`float`, optional
        Lipschitz constant of f on the region of interest, when known.
    """

    name: ClassVar[str] = None
    monotone_nonincreasing = True
    requires_positive = False
    lipschitz_hint = None

    def _eval(self, lam):
        raise NotImplementedError

    def __call__(self, lam):
        lam = np.sort(np.asarray(lam, dtype=float))
        if self.requires_positive and (lam.size == 0 or lam[0] <= 0):
            return np.inf
        return float(self._eval(lam))

    def __repr__(self):
        return f"{type(self).__name__}('{self.name}')"


class AOptimal(Criterion):
    """
    Average variance: f(λ) = Σ 1/λ_j.

    >>> AOptimal()([1., 1.])
    2.0
    """

    name = "a-opt"
    requires_positive = True

    def _eval(self, lam):
        return np.sum(1 / lam)


class DOptimal(Criterion):
    """
    Volume of the confidence ellipsoid: f(λ) = −Σ log λ_j.

    >>> round(DOptimal()([1., 3.]), 4)
    -1.0986
    """

    name = "d-opt"
    requires_positive = True

    def _eval(self, lam):
        return -np.sum(np.log(lam))


class EOptimal(Criterion):
    """
    Worst direction: f(λ) = 1 / min_j λ_j.

    >>> EOptimal()([0.5, 1.5])
    2.0
    >>> EOptimal()([0., 1.])
    inf
    """

    name = "e-opt"
    requires_positive = True

    def _eval(self, lam):
        return 1 / lam[0]


class NegSum(Criterion):
    """
    Linear criterion f(λ) = −Σ λ_j, finite everywhere.

    >>> NegSum()([1., 2.])
    -3.0
    """

    name = "neg-sum"

    def _eval(self, lam):
        return -np.sum(lam)


class PowerSum(Criterion):
    """
    Power criterion f(λ) = ±Σ λ_j^p, with the sign that makes it convex.

    * p < 0: f = Σ λ^p, nonincreasing, infinite at 0 (p = −1 is A-optimality).
    * 0 < p < 1: f = −Σ λ^p, nonincreasing, finite at 0.
    * p > 1: f = Σ λ^p, increasing: spending budget hurts.

    Parameters
    ----------
    exponent: :class:`float`
        The power p, different from 0 and 1.

    Examples
    --------

    >>> PowerSum(-1)([1., 2.])
    1.5
    >>> PowerSum(0.5)([4., 9.])
    -5.0
    >>> PowerSum(2).monotone_nonincreasing
    False
    """

    name = "custom-table"

    def __init__(self, exponent):
        p = float(exponent)
        if p in (0.0, 1.0):
            raise ValueError("Power-sum exponent must differ from 0 and 1.")
        self.exponent = p
        self.sign = -1.0 if 0 < p < 1 else 1.0
        self.monotone_nonincreasing = p < 1
        self.requires_positive = p < 0

    def _eval(self, lam):
        return self.sign * np.sum(lam**self.exponent)

    def __repr__(self):
        return f"PowerSum(exponent={self.exponent:g})"


class Deviation(Criterion):
    """
    Squared distance to a target spectrum level: f(λ) = Σ (λ_j − target)².

    Convex and symmetric but not monotone, so the budget search is not trivial.

    Parameters
    ----------
    target: :class:`float`, default=1.0
        Preferred eigenvalue.

    Examples
    --------

    >>> Deviation()([1., 3.])
    4.0
    """

    name = "deviation"
    monotone_nonincreasing = False

    def __init__(self, target=1.0):
        self.target = float(target)

    def _eval(self, lam):
        return np.sum((lam - self.target) ** 2)


class FunctionCriterion(Criterion):
    """
    Wrap a user function of the eigenvalue vector.

    The function must be symmetric and convex; only sampled checks are possible.

    Parameters
    ----------
    func: callable
        Map from a 1-D array to a real (``inf`` allowed).
    monotone_nonincreasing: :class:`bool`, default=False
        Declares f nonincreasing.
    requires_positive: :class:`bool`, default=False
        Declares f infinite off the positive orthant.
    lipschitz_hint: :class:`float`, optional
        Known Lipschitz constant.
    label: :class:`str`, default='function'
        Display name.
    """

    def __init__(self, func, monotone_nonincreasing=False, requires_positive=False, lipschitz_hint=None, label=None):
        self.func = func
        self.monotone_nonincreasing = monotone_nonincreasing
        self.requires_positive = requires_positive
        self.lipschitz_hint = lipschitz_hint
        self.label = label or "function"

    def _eval(self, lam):
        return self.func(lam)

    def __repr__(self):
        return f"FunctionCriterion('{self.label}')"


def criteria_dict():
    """
    Returns
    -------
    :class:`dict`
        Registered criteria classes by name.

    Examples
    --------

    >>> sorted(criteria_dict())
    ['a-opt', 'custom-table', 'd-opt', 'deviation', 'e-opt', 'neg-sum']
    """
    return get_classes(Criterion, key="name", recurse=True)


def builtin(name, **params):
    """
    Parameters
    ----------
    name: :class:`str`
        One of ``a-opt``, ``d-opt``, ``e-opt``, ``neg-sum``, ``deviation``, ``custom-table``.
    **params
        Constructor arguments, e.g. ``exponent`` for ``custom-table``.

    Returns
    -------
    :class:`~eigendesign.criteria.Criterion`

    Examples
    --------

    >>> builtin("d-opt")
    DOptimal('d-opt')
    >>> builtin("custom-table", exponent=-2)
    PowerSum(exponent=-2)
    >>> builtin("g-opt")  # doctest: +ELLIPSIS
    Traceback (most recent call last):
    ...
    eigendesign.utils.errors.UnknownCriterion: Unknown criterion 'g-opt'. Available: a-opt, ...
    """
    classes = criteria_dict()
    if name not in classes:
        raise UnknownCriterion(f"Unknown criterion {name!r}. Available: {', '.join(sorted(classes))}.")
    return classes[name](**params)


def from_descriptor(descriptor):
    """
    Build a criterion from a JSON descriptor.

    Only the ``power-sum`` kind is supported: ``{"name": ..., "kind": "power-sum", "exponent": p}``.

    Parameters
    ----------
    descriptor: :class:`dict` or :class:`str` or :class:`~pathlib.Path`
        The descriptor, or a path to a JSON file that holds it.

    Returns
    -------
    :class:`~eigendesign.criteria.PowerSum`

    Examples
    --------

    >>> from_descriptor({"name": "harmonic", "kind": "power-sum", "exponent": -1})
    PowerSum(exponent=-1)
    """
    if not isinstance(descriptor, dict):
        descriptor = json.loads(Path(descriptor).read_text(encoding="utf8"))
    kind = descriptor.get("kind")
    if kind != "power-sum":
        raise UnknownCriterion(f"Unsupported custom criterion kind {kind!r} (only 'power-sum').")
    if "exponent" not in descriptor:
        raise ValueError("A power-sum descriptor needs an 'exponent'.")
    return PowerSum(descriptor["exponent"])


def resolve(spec):
    """
    Turn a command-line criterion specification into a criterion.

    Parameters
    ----------
    spec: :class:`str` or :class:`~eigendesign.criteria.Criterion`
        A registered name, ``custom:<descriptor.json>``, or a criterion.

    Returns
    -------
    :class:`~eigendesign.criteria.Criterion`
    """
    if isinstance(spec, Criterion):
        return spec
    if spec.startswith("custom:"):
        return from_descriptor(spec[len("custom:") :])
    return builtin(spec)


@dataclass(repr=False)
class BudgetSearchResult(LazyRepr):
    """
    Outcome of :func:`optimize_budget`.

    Parameters
    ----------
    s_star: :class:`float`
        Selected budget.
    value: :class:`float`
        g(s_star) = f(t + β(s_star)).
    iterations: :class:`int`
        Golden-section iterations (0 for the monotone shortcut).
    allocation: :class:`~eigendesign.waterfill.Allocation`
        Water-filling solution at s_star.
    """

    s_star: float
    value: float
    iterations: int
    allocation: object = None


def budget_value(criterion, t, caps, s):
    """
    Parameters
    ----------
    criterion: :class:`~eigendesign.criteria.Criterion`
        The f to evaluate.
    t: array-like
        Ascending floors.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    s: :class:`float`
        Budget.

    Returns
    -------
    :class:`float`
        g(s) = f(t + β(s)).
    """
    return criterion(allocate(t, caps, s).levels)


def grid_slope(criterion, t, caps, k, n=GRID_POINTS):
    """
    Largest finite slope of g between consecutive points of a uniform grid on [0, k].

    Used as a stand-in for the Lipschitz constant of g when none is declared.

    Returns
    -------
    :class:`float`
    """
    grid = np.linspace(0.0, float(k), n + 1)
    values = np.array([budget_value(criterion, t, caps, s) for s in grid])
    finite = np.isfinite(values[1:]) & np.isfinite(values[:-1])
    if not finite.any():
        return 0.0
    return float(np.max(np.abs(np.diff(values)[finite])) / (grid[1] - grid[0]))


def _golden(g, lo, hi, tol, max_iter):
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    g1, g2 = g(x1), g(x2)
    it = 0
    while hi - lo > tol and it < max_iter:
        it += 1
        if g1 == np.inf and g2 == np.inf:
            # More mass helps positivity.
            lo, x1, g1 = x1, x2, g2
            x2 = lo + GOLDEN * (hi - lo)
            g2 = g(x2)
        elif g1 <= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - GOLDEN * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + GOLDEN * (hi - lo)
            g2 = g(x2)
    if it >= max_iter and hi - lo > tol:
        logger.warning(f"Golden-section search stopped after {max_iter} iterations (width {hi - lo:.3g}).")
    return (x1, g1, it) if g1 <= g2 else (x2, g2, it)


def optimize_budget(criterion, t, caps, k, tol_s=None, max_iter=MAX_ITER):
    """
    Find the budget s* in [0, k] that minimizes g(s) = f(t + β(s)).

    For a nonincreasing f the full budget is optimal and is returned at once. Otherwise
    g is convex and a golden-section search runs on [0, k], followed by a check on a
    uniform grid that restarts the search around any grid point that does better.

    Parameters
    ----------
    criterion: :class:`~eigendesign.criteria.Criterion`
        The f to minimize.
    t: array-like
        Ascending eigenvalues of the prior.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    k: :class:`int`
        Number of design vectors (upper bound on the budget).
    tol_s: :class:`float`, optional
        Final bracket width. Defaults to ``1e-9·max(1, k)``.
    max_iter: :class:`int`, default=200
        Cap on golden-section iterations.

    Returns
    -------
    :class:`~eigendesign.criteria.BudgetSearchResult`

    Examples
    --------

    >>> from eigendesign.waterfill import weyl_caps
    >>> t = [1.0, 1.1, 1.1, 1.3, 3.0]
    >>> res = optimize_budget(builtin("d-opt"), t, weyl_caps(t, 2), 2)
    >>> res.s_star, res.iterations
    (2.0, 0)
    >>> res = optimize_budget(Deviation(1.0), [1., 1.], weyl_caps([1., 1.], 4), 4)
    >>> res.s_star < 1e-8, res.value < 1e-15
    (True, True)
    """
    t = np.asarray(t, dtype=float)
    k = float(k)
    if criterion.requires_positive:
        check = feasibility(t, k, True)
        if not check:
            raise InfeasibleBudget(check.needed, int(k))
    if tol_s is None:
        tol_s = 1e-9 * max(1.0, k)

    def g(s):
        return budget_value(criterion, t, caps, s)

    if criterion.monotone_nonincreasing:
        alloc = allocate(t, caps, k)
        return BudgetSearchResult(s_star=k, value=criterion(alloc.levels), iterations=0, allocation=alloc)

    s_star, value, iterations = _golden(g, 0.0, k, tol_s, max_iter)
    for s_end in (0.0, k):
        v_end = g(s_end)
        if v_end < value:
            s_star, value = s_end, v_end
    grid = np.linspace(0.0, k, GRID_POINTS + 1)
    values = np.array([g(s) for s in grid])
    best = int(np.argmin(values))
    if values[best] < value - 1e-12 * max(1.0, abs(value)):
        lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, GRID_POINTS)]
        s_star, value, more = _golden(g, lo, hi, tol_s, max_iter)
        iterations += more
        if values[best] < value:
            s_star, value = float(grid[best]), float(values[best])
    logger.debug(f"Budget search: s*={s_star:.6g}, g(s*)={value:.6g} after {iterations} iterations.")
    alloc = allocate(t, caps, s_star)
    return BudgetSearchResult(
        s_star=float(s_star), value=criterion(alloc.levels), iterations=iterations, allocation=alloc
    )


def lower_bound(t, k, criterion, tol_s=None):
    """
    Certified lower bound on F(A + XXᵀ) over all feasible designs.

    Parameters
    ----------
    t: array-like
        Ascending eigenvalues of the prior.
    k: :class:`int`
        Number of design vectors.
    criterion: :class:`~eigendesign.criteria.Criterion`
        The f to minimize.
    tol_s: :class:`float`, optional
        Passed to :func:`optimize_budget`.

    Returns
    -------
    :class:`~eigendesign.criteria.BudgetSearchResult`

    Examples
    --------

    >>> lower_bound([0.5, 0.5], 1, builtin("e-opt")).value
    2.0
    """
    t = np.asarray(t, dtype=float)
    return optimize_budget(criterion, t, weyl_caps(t, k), k, tol_s=tol_s)


def relaxed_value(t, k, criterion, tol_s=None):
    """
    Value of the trace-only relaxation min{F(A + M) : M ⪰ 0, Tr(M) ≤ k}.

    It drops the rank constraint, so it can be strictly below the attainable optimum
    when k < d; for k ≥ d both coincide.

    Parameters
    ----------
    t: array-like
        Ascending eigenvalues of the prior.
    k: :class:`int`
        Trace budget.
    criterion: :class:`~eigendesign.criteria.Criterion`
        The f to minimize.
    tol_s: :class:`float`, optional
        Passed to :func:`optimize_budget`.

    Returns
    -------
    :class:`float`

    Examples
    --------

    >>> relaxed_value([0.5, 0.5], 1, builtin("e-opt"))
    1.0
    """
    t = np.asarray(t, dtype=float)
    return optimize_budget(criterion, t, uncapped(t, k), k, tol_s=tol_s).value
