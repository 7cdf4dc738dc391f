"""Transition-graph origami: design, folding simulation and fabrication.

Projects and reports are plain dicts in the project JSON format.
"""

import json

from . import _core
from ._core import (
    OrigamiError,
    fitness_formula,
    initial_alpha,
    max_fold_angle,
    shape_angle,
    transition_delta,
)

__all__ = [
    "OrigamiError",
    "error_info",
    "template_project",
    "normalize_project",
    "evaluate",
    "fold",
    "check_routing",
    "synthesize",
    "optimize",
    "simulate",
    "run_cli",
    "fitness_formula",
    "initial_alpha",
    "max_fold_angle",
    "shape_angle",
    "transition_delta",
]


def _dump(project):
    return project if isinstance(project, str) else json.dumps(project)


def error_info(exc):
    """Structured {"type", "message", ...} details of an OrigamiError."""
    return json.loads(exc.args[1]) if len(exc.args) > 1 else {"type": "error", "message": str(exc)}


def template_project(name="empty"):
    return json.loads(_core.template_project(name))


def normalize_project(project):
    """Load and re-save, applying defaults and checking references."""
    return json.loads(_core.normalize_project(_dump(project)))


def evaluate(project):
    return json.loads(_core.evaluate(_dump(project)))


def fold(project, theta):
    return json.loads(_core.fold(_dump(project), theta))


def check_routing(project):
    return json.loads(_core.check_routing(_dump(project)))


def synthesize(project, unit_width, copies):
    """Returns (updated project, report)."""
    saved, report = _core.synthesize(_dump(project), unit_width, copies)
    return json.loads(saved), json.loads(report)


def optimize(project, runs=10, generations=300, seed=0):
    """Returns (project holding the best design, search report)."""
    saved, report = _core.optimize(_dump(project), runs, generations, seed)
    return json.loads(saved), json.loads(report)


def simulate(project, max_states=0):
    return json.loads(_core.simulate(_dump(project), max_states))


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
