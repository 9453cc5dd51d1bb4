"""
Water filling for the eigenvalue relaxation of the design problem.

After a rank-k̂ positive semidefinite update (k̂ = min(d, k)), the j-th smallest eigenvalue
can rise from t_j up to at most t_{j+k̂} (Weyl). The relaxation therefore pours a budget
of ``s`` units of "water" into d buckets with floors ``t`` and capacities ``u``; the
optimal allocation raises the lowest non-full buckets in lockstep.
"""

from dataclasses import dataclass

import numpy as np

from eigendesign.utils.common import LazyRepr


class Unbounded:
    """
    Tag for a bucket without capacity.

    A single instance, :data:`UNBOUNDED`, is used.

    Examples
    --------

    >>> UNBOUNDED
    Unbounded
    >>> Unbounded() is UNBOUNDED
    True
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"

    def __reduce__(self):
        return Unbounded, ()


UNBOUNDED = Unbounded()


@dataclass(repr=False)
class Caps(LazyRepr):
    """
    Bucket capacities.

    Parameters
    ----------
    u: :class:`tuple`
        One entry per bucket, either a :class:`float` or :data:`UNBOUNDED`. Finite
        entries come first.
    dhat: :class:`int`
        Rank of the update, min(d, k).
    k: :class:`int`
        Number of design vectors.
    """

    u: tuple
    dhat: int
    k: int

    @property
    def n_finite(self):
        """Number of capped buckets (they are the first ones)."""
        return sum(1 for cap in self.u if not isinstance(cap, Unbounded))

    @property
    def finite(self):
        """Finite capacities, as an array."""
        return np.array([cap for cap in self.u if not isinstance(cap, Unbounded)], dtype=float)

    def room(self, t):
        """
        Parameters
        ----------
        t: :class:`~numpy.ndarray`
            Floors.

        Returns
        -------
        :class:`list`
            ``u_j - t_j`` for capped buckets, ``None`` for the others.
        """
        res = []
        for tj, cap in zip(t, self.u):
            match cap:
                case Unbounded():
                    res.append(None)
                case _:
                    res.append(cap - tj)
        return res


@dataclass(repr=False)
class Allocation(LazyRepr):
    """
    Water-filling solution for a given budget.

    Parameters
    ----------
    s: :class:`float`
        Budget used.
    c: :class:`float`
        Water level.
    beta: :class:`~numpy.ndarray`
        Increments ``min{(c - t_j)_+, u_j - t_j}``.
    beta_compact: :class:`~numpy.ndarray`
        Rearranged increments with support at most min(d, k).
    t: :class:`~numpy.ndarray`
        Floors the allocation was computed for.
    """

    s: float
    c: float
    beta: np.ndarray
    beta_compact: np.ndarray
    t: np.ndarray

    @property
    def levels(self):
        """t + β."""
        return self.t + self.beta

    @property
    def compact_levels(self):
        """t + β′, a permutation of :attr:`levels`."""
        return self.t + self.beta_compact


@dataclass(repr=False)
class Feasibility(LazyRepr):
    """
    Outcome of :func:`feasibility`.

    Parameters
    ----------
    ok: :class:`bool`
        Whether the relaxation has a finite value.
    needed: :class:`int`
        Smallest admissible budget, d − ‖t‖₀ for criteria that need positive eigenvalues.
    message: :class:`str`
        Human-readable explanation.
    """

    ok: bool
    needed: int
    message: str

    def __bool__(self):
        return self.ok


def weyl_caps(t, k):
    """
    Capacities from Weyl's inequalities: u_j = t_{j+k̂} for j ≤ d − k̂, unbounded after.

    Parameters
    ----------
    t: array-like
        Ascending eigenvalues of the prior.
    k: :class:`int`
        Number of design vectors.

    Returns
    -------
    :class:`~eigendesign.waterfill.Caps`

    Examples
    --------

    >>> weyl_caps([1.0, 1.1, 1.1, 1.3, 3.0], 2).u
    (1.1, 1.3, 3.0, Unbounded, Unbounded)
    >>> weyl_caps([0., 2., 5.], 1).u
    (2.0, 5.0, Unbounded)
    >>> weyl_caps([0., 2., 5.], 3).u
    (Unbounded, Unbounded, Unbounded)
    """
    t = np.asarray(t, dtype=float)
    d = len(t)
    dhat = min(d, int(k))
    u = tuple(float(t[j + dhat]) for j in range(d - dhat)) + (UNBOUNDED,) * dhat
    return Caps(u=u, dhat=dhat, k=int(k))


def uncapped(t, k):
    """
    Capacities of the trace-only relaxation, where the rank of the update is free.

    Parameters
    ----------
    t: array-like
        Ascending eigenvalues of the prior.
    k: :class:`int`
        Trace budget.

    Returns
    -------
    :class:`~eigendesign.waterfill.Caps`
        All buckets unbounded.
    """
    d = len(t)
    return Caps(u=(UNBOUNDED,) * d, dhat=d, k=int(k))


def _split(t, caps):
    m = caps.n_finite
    return t[:m], caps.finite, t[m:]


def fill_amount(t, caps, c):
    """
    Water needed to raise every bucket to level ``c`` (or to its capacity).

    Parameters
    ----------
    t: array-like
        Ascending floors.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    c: :class:`float`
        Target level.

    Returns
    -------
    :class:`float`
        Φ(c) = Σ_j min{(c − t_j)_+, u_j − t_j}.

    Examples
    --------

    >>> t = [1.0, 1.1, 1.1, 1.3, 3.0]
    >>> caps = weyl_caps(t, 2)
    >>> round(fill_amount(t, caps, 1.1), 12)
    0.1
    >>> round(fill_amount(t, caps, 2.05), 12)
    2.0
    >>> fill_amount(t, caps, 1.0)
    0.0
    """
    t = np.asarray(t, dtype=float)
    t_capped, u, t_free = _split(t, caps)
    capped = np.minimum(np.maximum(c - t_capped, 0.0), u - t_capped)
    free = np.maximum(c - t_free, 0.0)
    return float(np.sum(capped) + np.sum(free))


def _breakpoints(t, caps):
    """Sorted levels with the change of slope of Φ at each of them."""
    events = {}
    for tj, cap in zip(t, caps.u):
        tj = float(tj)
        events[tj] = events.get(tj, 0) + 1
        match cap:
            case Unbounded():
                pass
            case _:
                events[float(cap)] = events.get(float(cap), 0) - 1
    return sorted(events.items())


def water_level(t, caps, s):
    """
    Level reached after pouring ``s`` units: c(s) = inf{c ≥ t_1 : Φ(c) ≥ s}.

    Exact sweep over the breakpoints of the piecewise linear Φ, then linear
    interpolation in the bracketing segment.

    Parameters
    ----------
    t: array-like
        Ascending floors.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    s: :class:`float`
        Budget, 0 ≤ s ≤ k.

    Returns
    -------
    :class:`float`

    Examples
    --------

    >>> t = [1.0, 1.1, 1.1, 1.3, 3.0]
    >>> caps = weyl_caps(t, 2)
    >>> round(water_level(t, caps, 2), 12)
    2.05
    >>> round(water_level(t, caps, 0.5), 12)
    1.3
    >>> water_level(t, caps, 0)
    1.0
    """
    t = np.asarray(t, dtype=float)
    points = _breakpoints(t, caps)
    cur, phi, slope = float(t[0]), 0.0, 0
    for level, delta in points:
        gain = slope * (level - cur)
        if slope > 0 and phi + gain >= s:
            return float(cur + (s - phi) / slope)
        phi += gain
        cur = float(level)
        slope += delta
    # The last k̂ buckets are uncapped, so slope > 0 here.
    return float(cur + (s - phi) / slope)


def compact_allocation(t, caps, c):
    """
    Increments with small support: β′_j = (c − t_j)_+ for j ≤ k̂, 0 after.

    The multiset of t + β′ equals that of t + β, so any symmetric criterion takes the
    same value on both.

    Parameters
    ----------
    t: array-like
        Ascending floors.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    c: :class:`float`
        Water level c(s).

    Returns
    -------
    :class:`~numpy.ndarray`

    Examples
    --------

    >>> t = [1.0, 1.1, 1.1, 1.3, 3.0]
    >>> compact_allocation(t, weyl_caps(t, 2), 2.05).round(12)
    array([1.05, 0.95, 0.  , 0.  , 0.  ])
    """
    t = np.asarray(t, dtype=float)
    res = np.zeros(len(t))
    res[: caps.dhat] = np.maximum(c - t[: caps.dhat], 0.0)
    return res


def allocate(t, caps, s):
    """
    Water-filling increments for budget ``s``.

    Parameters
    ----------
    t: array-like
        Ascending floors.
    caps: :class:`~eigendesign.waterfill.Caps`
        Capacities.
    s: :class:`float`
        Budget, 0 ≤ s ≤ k.

    Returns
    -------
    :class:`~eigendesign.waterfill.Allocation`

    Examples
    --------

    >>> t = [1.0, 1.1, 1.1, 1.3, 3.0]
    >>> alloc = allocate(t, weyl_caps(t, 2), 2)
    >>> alloc.beta.round(12)
    array([0.1 , 0.2 , 0.95, 0.75, 0.  ])
    >>> alloc.levels.round(12)
    array([1.1 , 1.3 , 2.05, 2.05, 3.  ])
    """
    t = np.asarray(t, dtype=float)
    s = float(s)
    c = water_level(t, caps, s)
    beta = np.maximum(c - t, 0.0)
    marginal = beta > 0
    for j, room in enumerate(caps.room(t)):
        if room is not None and beta[j] >= room:
            beta[j] = room
            marginal[j] = False
    if s == 0:
        beta[:] = 0.0
    elif marginal.any():
        beta[marginal] += (s - beta.sum()) / marginal.sum()
        beta = np.maximum(beta, 0.0)
    return Allocation(s=s, c=c, beta=beta, beta_compact=compact_allocation(t, caps, c), t=t)


def zero_tolerance(t):
    """Threshold under which an eigenvalue counts as zero."""
    return 1e-10 * max(1.0, float(np.max(t)) if len(t) else 1.0)


def feasibility(t, k, requires_positive):
    """
    Whether the relaxation has a finite optimal value.

    A criterion that is infinite off the positive orthant needs the update to cover the
    kernel of the prior: k ≥ d − ‖t‖₀.

    Parameters
    ----------
    t: array-like
        Ascending, nonnegative eigenvalues.
    k: :class:`int`
        Number of design vectors.
    requires_positive: :class:`bool`
        Criterion is +∞ when an eigenvalue is 0.

    Returns
    -------
    :class:`~eigendesign.waterfill.Feasibility`

    Examples
    --------

    >>> check = feasibility([0., 0., 1.], 1, True)
    >>> check.ok, check.needed
    (False, 2)
    >>> feasibility([0., 0., 1.], 2, True).ok
    True
    >>> feasibility([0., 0., 1.], 1, False).ok
    True
    """
    t = np.asarray(t, dtype=float)
    needed = int(len(t) - np.count_nonzero(t > zero_tolerance(t)))
    if not requires_positive:
        return Feasibility(ok=True, needed=0, message="Criterion is finite everywhere.")
    if k >= needed:
        return Feasibility(ok=True, needed=needed, message=f"k={k} >= d - ||t||_0 = {needed}.")
    return Feasibility(
        ok=False,
        needed=needed,
        message=(
            f"k={k} is too small: a criterion that requires positive eigenvalues needs k >= d - ||t||_0 = {needed}."
        ),
    )
