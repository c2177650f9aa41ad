"""Simulator and verification laboratory for firing squad synchronization
on two-dimensional grid configuration families."""

__version__ = "0.1.0"
