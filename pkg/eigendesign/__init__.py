"""Top-level package for EigenDesign."""

from importlib.metadata import metadata

from eigendesign.criteria import builtin as builtin
from eigendesign.designer import optimal_design as optimal_design
from eigendesign.designer import verify_design as verify_design
from eigendesign.linalg import eigh_ascending as eigh_ascending

infos = metadata(__name__)
__version__ = infos["Version"]
__author__ = """Fabien Mathieu"""
__email__ = "fabien.mathieu@normalesup.org"


def __getattr__(name):
    if name in {"dfo_minimize", "DfoConfig", "NoisyOracle"}:
        from eigendesign.dfo import oracle, solver

        return getattr(solver, name, None) or getattr(oracle, name)
    if name in {"data_profile", "run_benchmark"}:
        from eigendesign.dfo import bench, profiles

        return getattr(profiles, name, None) or getattr(bench, name)
    raise AttributeError(f"module 'eigendesign' has no attribute {name!r}")
