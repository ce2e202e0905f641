"""Representations of direct sums of uniform q-matroids.

Thin wrapper over the native core: every call is a job (command name plus a
dict of inputs) whose result is plain JSON, the same schema the ``qmr`` command
line tool writes into certificates.
"""

import json

from . import _core
from ._core import BudgetExceeded, InvariantViolation, gaussian_binomial

__all__ = [
    "BudgetExceeded",
    "InvariantViolation",
    "certify",
    "gaussian_binomial",
    "reproduce",
    "reproduce_names",
    "run",
    "verify_certificate",
]


def run(command, workers=1, **inputs):
    """Run one job, e.g. ``run("search", q=2, m=4, n1=2, n2=2)``."""
    return json.loads(_core.run_job(command, json.dumps(inputs), workers))


def certify(command, workers=1, **inputs):
    """Run a job and wrap the result in a replayable certificate."""
    text = json.dumps(inputs)
    result = _core.run_job(command, text, workers)
    return json.loads(_core.make_certificate(command, text, result))


def verify_certificate(cert, workers=1):
    """Replay a certificate. Returns (passed, messages)."""
    return _core.verify_certificate(json.dumps(cert), workers)


def reproduce_names():
    return list(_core.reproduce_names())


def reproduce(name, **inputs):
    return run("reproduce", name=name, **inputs)
