"""
Small numerical and bookkeeping helpers shared by every app
"""
import hashlib
import json
import logging

import numpy as np
import scipy.linalg
from django.core.management.base import CommandError

from mfbvar.inherits.exceptions import BaseNumericalError

logger = logging.getLogger(__name__)

CHOLESKY_JITTER = 1e-10


def keyed_generator(seed: int, *keys: int) -> np.random.Generator:
    """
    Counter-based generator keyed by (seed, *keys).

    The same key always yields the same stream, whatever thread or process
    asks for it, so results never depend on scheduling.
    """
    entropy = [int(seed), *(int(key) for key in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def jittered_cholesky(matrix: np.ndarray, jitter: float = CHOLESKY_JITTER) -> np.ndarray:
    """
    Lower Cholesky factor; retries once with jitter * I added on failure.
    """
    try:
        return scipy.linalg.cholesky(matrix, lower=True)
    except np.linalg.LinAlgError:
        logger.warning("Cholesky failed, retrying with jitter %.1e", jitter)
        return scipy.linalg.cholesky(
            matrix + jitter * np.eye(matrix.shape[0]), lower=True,
        )


def config_hash(config: dict) -> str:
    payload = json.dumps(config, sort_keys=True, default=str).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def as_command_error(exc: Exception) -> CommandError:
    """
    Map an engine error onto the command-line exit codes: 2 for validation
    errors, 3 for numerical failures.
    """
    if isinstance(exc, BaseNumericalError):
        return CommandError(f"numerical failure: {exc}", returncode=3)
    return CommandError(f"invalid input: {exc}", returncode=2)
