"""Hierarchical vehicle routing with a learned subproblem cost predictor."""

from hvrp.version import __version__

__all__ = ["__version__"]
