"""Epistemic-logic checks for verification and validation artifacts."""

__version__ = "0.1.0"
