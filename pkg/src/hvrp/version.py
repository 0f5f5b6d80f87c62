"""Version information for hvrp."""

__version__ = "0.1.0"
