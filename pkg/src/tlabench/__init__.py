"""Lower restricted Python to state-machine form and evaluate TLA+ specs against it."""

__version__ = "0.1.0"
