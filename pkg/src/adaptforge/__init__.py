"""Adaptive-VQE solver suite with an internal FCI oracle and resource accounting."""

__version__ = "0.1.0"
