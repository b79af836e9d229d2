"""Cycle-saturation game laboratory.

Referee, constructive strategies, structural auditors, exact small-n
solvers, and extremal bound oracles for forbidden-cycle saturation games.
"""

from satgame.graph import Graph

__all__ = ["Graph"]
