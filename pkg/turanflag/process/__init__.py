"""Turanflag Process Utilities - Solver subprocesses and worker pools"""

from .pool import parallel_map
from .solver import SolverRun, kill_tree, resolve_solver, run_solver

__all__ = ["parallel_map", "SolverRun", "kill_tree", "resolve_solver", "run_solver"]
