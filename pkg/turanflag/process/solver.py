"""
Turanflag Solver Runner - External SDP solver subprocess with timeout
"""

import logging
import os
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

try:
    import psutil
except ImportError:
    psutil = None

from ..errors import SolverError

logger = logging.getLogger(__name__)

SOLVER_ENV = "TURANFLAG_SOLVER"
DEFAULT_TIMEOUT = 3600.0
KINDS = ("auto", "csdp", "sdpa")

# csdp: 0 = solved, 3 = partial success (solution found to reduced accuracy)
_CSDP_ACCEPTED = (0, 3)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class SolverRun:
    """Outcome of one solver invocation"""

    kind: str
    command: Tuple[str, ...]
    returncode: int
    objective: Optional[float]
    solution_path: Path
    output: str

    @property
    def bound(self) -> Optional[float]:
        """The problem maximises -lambda, so the bound is the negated objective"""
        return None if self.objective is None else -self.objective


def resolve_solver(path: Optional[str] = None) -> Optional[str]:
    """
    Locate the solver binary.

    Order: explicit path, $TURANFLAG_SOLVER, then ``csdp`` and ``sdpa`` on
    PATH. Returns None when nothing is found.
    """
    for candidate in (path, os.environ.get(SOLVER_ENV)):
        if candidate:
            found = shutil.which(candidate)
            if found is None and not Path(candidate).exists():
                raise SolverError(f"solver {candidate!r} not found")
            return found or candidate
    for name in ("csdp", "sdpa"):
        found = shutil.which(name)
        if found:
            return found
    return None


def solver_kind(solver_path: str, kind: str = "auto") -> str:
    if kind not in KINDS:
        raise SolverError(f"unknown solver kind {kind!r}")
    if kind != "auto":
        return kind
    return "sdpa" if "sdpa" in Path(solver_path).name.lower() else "csdp"


def solver_command(solver_path: str, problem_path: PathLike, solution_path: PathLike,
                   kind: str) -> List[str]:
    if kind == "sdpa":
        return [solver_path, "-ds", str(problem_path), "-o", str(solution_path)]
    return [solver_path, str(problem_path), str(solution_path)]


def parse_objective(output: str) -> Optional[float]:
    """Last primal objective reported on the solver's console"""
    objective = None
    for line in output.splitlines():
        if "Primal objective value:" in line or "objValPrimal" in line:
            try:
                objective = float(line.split()[-1])
            except ValueError:
                logger.warning("unparseable objective line %r", line)
    return objective


def kill_tree(pid: int) -> List[int]:
    """
    Kill a process and all its descendants.

    Returns:
        PIDs that were signalled
    """
    if psutil is None:
        try:
            os.kill(pid, 9)
            return [pid]
        except (ProcessLookupError, PermissionError):
            return []

    killed = []
    try:
        parent = psutil.Process(pid)
        victims = parent.children(recursive=True) + [parent]
    except (psutil.NoSuchProcess, psutil.AccessDenied):
        return killed
    for proc in victims:
        try:
            proc.kill()
            killed.append(proc.pid)
        except (psutil.NoSuchProcess, psutil.AccessDenied):
            pass
    psutil.wait_procs(victims, timeout=5)
    return killed


def run_solver(problem_path: PathLike, solution_path: PathLike,
               solver_path: Optional[str] = None,
               timeout: float = DEFAULT_TIMEOUT,
               kind: str = "auto") -> SolverRun:
    """
    Run csdp or sdpa on a sparse SDP file.

    Args:
        problem_path: The emitted .dat-s file
        solution_path: Where the solver writes its solution
        solver_path: Binary (resolved via :func:`resolve_solver` when None)
        timeout: Seconds before the process tree is killed
        kind: "csdp", "sdpa" or "auto" (guessed from the binary name)

    Returns:
        SolverRun with the console objective

    Raises:
        SolverError: Missing binary, timeout or a failing exit status
    """
    binary = resolve_solver(solver_path)
    if binary is None:
        raise SolverError(f"no SDP solver found; pass --solver or set ${SOLVER_ENV}")
    kind = solver_kind(binary, kind)
    command = solver_command(binary, problem_path, solution_path, kind)
    logger.info("running %s", " ".join(command))

    try:
        proc = subprocess.Popen(command, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True)
    except OSError as e:
        raise SolverError(f"cannot start {binary}: {e}") from e
    try:
        output, _ = proc.communicate(timeout=timeout)
    except subprocess.TimeoutExpired:
        killed = kill_tree(proc.pid)
        proc.communicate()
        logger.debug("killed solver processes %s", killed)
        raise SolverError(f"{Path(binary).name} timed out after {timeout:g}s") from None

    objective = parse_objective(output)
    accepted = _CSDP_ACCEPTED if kind == "csdp" else (0,)
    if proc.returncode not in accepted:
        tail = "\n".join(output.splitlines()[-5:])
        raise SolverError(f"{Path(binary).name} exited with status {proc.returncode}\n{tail}")
    if proc.returncode != 0:
        logger.warning("%s reports partial success (status %d)", Path(binary).name, proc.returncode)
    if not Path(solution_path).exists():
        raise SolverError(f"{Path(binary).name} wrote no solution to {solution_path}")
    logger.info("solver finished, objective %s", objective)
    return SolverRun(kind, tuple(command), proc.returncode, objective, Path(solution_path), output)
