"""Exceptions raised by the solver, the DFO harness and the command line."""


class DesignError(ValueError):
    """Base class for every error raised by eigendesign."""


class NotPSD(DesignError):
    """A prior matrix has an eigenvalue below the clamp tolerance."""


class DimensionZero(DesignError):
    """A matrix or vector of dimension zero was supplied."""


class InfeasibleBudget(DesignError):
    """
    The criterion is infinite on every feasible design.

    Parameters
    ----------
    needed: :class:`int`
        Minimal budget, i.e. the dimension of the kernel of the prior.
    k: :class:`int`
        Budget that was asked for.
    """

    def __init__(self, needed, k):
        self.needed = needed
        self.k = k
        super().__init__(f"Infeasible budget: k={k} but k >= d - ||t||_0 = {needed} is required.")


class UnknownCriterion(DesignError, KeyError):
    """No criterion is registered under the requested name."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class RankBudgetExceeded(DesignError):
    """The target diagonal has more nonzero entries than design vectors."""


class TraceBudgetExceeded(DesignError):
    """The target diagonal has a trace larger than the number of design vectors."""


class BadRange(DesignError):
    """A closed-form design was requested outside of its (s, k, d) range."""


class DimensionMismatch(DesignError):
    """Two objects that must share a dimension do not."""


class LengthMismatch(DesignError):
    """Two vectors that must share a length do not."""


class BudgetTooSmall(DesignError):
    """The DFO evaluation budget cannot afford a single gradient estimate."""


class GridMismatch(DesignError):
    """Methods of a data profile were not run on the same (problem, seed) grid."""


class MatrixFormatError(DesignError):
    """
    A matrix file could not be parsed.

    Parameters
    ----------
    message: :class:`str`
        What went wrong.
    row: :class:`int`, optional
        1-based row of the offending cell.
    col: :class:`int`, optional
        1-based column of the offending cell.
    """

    def __init__(self, message, row=None, col=None):
        self.row = row
        self.col = col
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {col})" if col is not None else ")")
        super().__init__(f"{message}{where}")
