"""Workbench for Ramsey size-linearity."""

__version__ = "0.1.0"
