"""
file: mfbvar/diagnostics/identification.py
A posteriori sign identification of factor loadings.
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)


def maximin_coordinates(loadings: np.ndarray) -> np.ndarray:
    """Per factor, the series whose smallest absolute loading over the chain is largest."""
    return np.argmax(np.min(np.abs(loadings), axis=0), axis=0)


def identify_sign_maximin(loadings, factors=None) -> tuple[np.ndarray, np.ndarray | None]:
    """
    Flip each draw's loading column, and the matching factor path, so that
    the maximin loading is positive in every draw.

    loadings: draws x n x r; factors: draws x T x r. Draws whose loading
    column is entirely zero are left as they are.
    """
    loadings = np.array(loadings, dtype=float)
    if loadings.ndim == 2:
        loadings = loadings[:, :, None]
    if loadings.shape[0] < 1:
        msg = "sign identification needs at least one draw"
        raise ValueError(msg)
    factors = None if factors is None else np.array(factors, dtype=float)

    coordinates = maximin_coordinates(loadings)
    pivots = np.take_along_axis(loadings, coordinates[None, None, :], axis=1)[:, 0, :]
    zero = ~np.any(loadings != 0, axis=1)
    if zero.any():
        logger.warning("%d draws have an all-zero loading vector; left unflipped", int(zero.sum()))
    signs = np.where(pivots < 0, -1.0, 1.0)
    loadings *= signs[:, None, :]
    if factors is not None:
        factors *= signs[:, None, :]
    logger.debug("maximin coordinates %s, %d flips", coordinates.tolist(), int(np.sum(signs < 0)))
    return loadings, factors
