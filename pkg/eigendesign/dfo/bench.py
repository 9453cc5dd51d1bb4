"""
Benchmark of design modes on the built-in problem set.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from tqdm.auto import tqdm

from eigendesign.dfo.estimation import DESIGN_MODES
from eigendesign.dfo.oracle import NoisyOracle
from eigendesign.dfo.problems import DIMENSIONS, problem_set
from eigendesign.dfo.profiles import data_profile
from eigendesign.dfo.solver import DfoConfig, dfo_minimize
from eigendesign.utils.common import LazyRepr, fmt
from eigendesign.utils.errors import BadRange
from eigendesign.utils.logger import logger


@dataclass(repr=False)
class Benchmark(LazyRepr):
    """
    Outcome of :func:`run_benchmark`.

    Parameters
    ----------
    profile: :class:`~eigendesign.dfo.profiles.DataProfile`
        Data profiles of the modes.
    runs: :class:`dict`
        Maps (problem, seed, method) to its :class:`~eigendesign.dfo.solver.DfoRun`.
    """

    profile: object
    runs: dict = field(default_factory=dict)

    def records(self):
        """
        Yields
        ------
        :class:`tuple`
            (problem, seed, method, calls, best_true) per run.
        """
        for (problem, seed, method), run in sorted(self.runs.items()):
            yield problem, seed, method, run.calls_used, run.best

    def write_profiles(self, path):
        """Write the (method, alpha, fraction_solved) table as CSV."""
        with open(path, "w", encoding="utf8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["method", "alpha", "fraction_solved"])
            for method, alpha, frac in self.profile.rows():
                writer.writerow([method, fmt(alpha), fmt(frac)])

    def write_runs(self, path):
        """Write the (problem, seed, method, calls, best_true) table as CSV."""
        with open(path, "w", encoding="utf8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["problem", "seed", "method", "calls", "best_true"])
            for problem, seed, method, calls, best in self.records():
                writer.writerow([problem, seed, method, calls, repr(best)])


def _single_run(job):
    problem, seed, mode, sigma, budget_multiplier = job
    oracle = NoisyOracle(problem, sigma=sigma, rng_seed=seed, label=problem.name)
    cfg = DfoConfig.for_noise(sigma, problem.lip_grad, budget_multiplier=budget_multiplier, design_mode=mode)
    return (problem.name, seed, mode), dfo_minimize(oracle, problem.x0, cfg)


def run_benchmark(
    sigma,
    tau,
    seeds,
    budget_multiplier=50,
    modes=DESIGN_MODES,
    families=None,
    dims=DIMENSIONS,
    max_workers=None,
    progress=True,
    seed=0,
):
    """
    Run every problem × seed × mode and build the data profiles.

    Runs are independent and fanned out on a thread pool; each owns its oracle.

    Parameters
    ----------
    sigma: :class:`float`
        Noise width.
    tau: :class:`float`
        Accuracy of the profiles, in (0, 1).
    seeds: :class:`int`
        Number of seeds per problem.
    budget_multiplier: :class:`int`, default=50
        Budget per run, in units of d + 1 calls.
    modes: :class:`tuple` of :class:`str`
        Design modes to compare.
    families: :class:`list` of :class:`str`, optional
        Problem families. Defaults to all.
    dims: :class:`tuple` of :class:`int`, default=(2, 4, 8)
        Dimensions.
    max_workers: :class:`int`, optional
        Pool size.
    progress: :class:`bool`, default=True
        Display a progress bar.
    seed: :class:`int`, default=0
        First noise seed; runs use seeds ``seed, ..., seed + seeds - 1``.

    Returns
    -------
    :class:`~eigendesign.dfo.bench.Benchmark`

    Examples
    --------

    >>> bench = run_benchmark(0.0, 0.1, 1, budget_multiplier=10, families=["sphere"], dims=(2,), progress=False)
    >>> {m: float(c[-1]) for m, c in bench.profile.curves.items()}
    {'coordinate': 1.0, 'forward-diff': 1.0, 'spectral': 1.0}
    """
    if seeds < 1:
        raise BadRange(f"At least one seed is needed, got {seeds}.")
    if not 0 < tau < 1:
        raise BadRange(f"Accuracy tau must lie in (0, 1), got {tau}.")
    if sigma < 0:
        raise BadRange(f"Noise level must be nonnegative, got {sigma}.")
    jobs = [
        (problem, noise_seed, mode, sigma, budget_multiplier)
        for problem in problem_set(families, dims)
        for noise_seed in range(seed, seed + seeds)
        for mode in modes
    ]
    runs = {}
    with ThreadPoolExecutor(max_workers=max_workers) as ex:
        for key, run in tqdm(ex.map(_single_run, jobs), total=len(jobs), desc="DFO runs", disable=not progress):
            runs[key] = run
    profile = data_profile(runs, tau)
    logger.info(
        f"Benchmark: {len(runs)} runs; final fractions "
        + ", ".join(f"{m}={c[-1]:.3f}" for m, c in profile.curves.items())
    )
    return Benchmark(profile=profile, runs=runs)
