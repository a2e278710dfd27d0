"""Exact verification lab for Almkvist-Zudilin supercongruences."""

__version__ = "0.1.0"
