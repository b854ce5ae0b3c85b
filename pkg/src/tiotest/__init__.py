"""Test synthesis for timed systems with restarts."""

__version__ = "0.1.0"
