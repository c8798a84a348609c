"""Simulated PUF-bound program binary authentication for soft-core FPGAs."""

from pufgate._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
