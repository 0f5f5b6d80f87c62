"""Console, logging and file helpers."""
