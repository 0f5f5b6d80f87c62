"""Allow running as python -m hvrp."""

from hvrp.cli import app

if __name__ == "__main__":
    app()
