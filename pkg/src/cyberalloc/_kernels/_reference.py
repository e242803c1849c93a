"""NumPy fallback for the objective kernels.

Formulas mirror the compiled extension: powers in log space with zero
guards, decision weights with exact endpoints. Given a spend grid ``c`` and
the matching attack probabilities ``pi``, each kernel returns the objective
value at every grid point.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def _weight_pair(p: np.ndarray, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Decision weights (w(p), w(1-p)); they share powers and normalizer."""
    p = np.asarray(p, dtype=float)
    inner = (p > 0.0) & (p < 1.0)
    safe = np.where(inner, p, 0.5)
    pb = np.exp(beta * np.log(safe))
    qb = np.exp(beta * np.log(1.0 - safe))
    denom = np.exp(np.log(pb + qb) / beta)
    w_p = np.where(inner, pb / denom, np.where(p <= 0.0, 0.0, 1.0))
    w_q = np.where(inner, qb / denom, np.where(p <= 0.0, 1.0, 0.0))
    return w_p, w_q


def _pow_or_zero(mag: np.ndarray, alpha: float) -> np.ndarray:
    positive = mag > 0.0
    safe = np.where(positive, mag, 1.0)
    return np.where(positive, np.exp(alpha * np.log(safe)), 0.0)


def pt_objective(
    c: np.ndarray,
    pi: np.ndarray,
    loss: float,
    q: float,
    ir: float,
    alpha: float,
    lam: float,
    beta: float,
) -> np.ndarray:
    """Overall prospect value of spending ``c`` on controls, per grid point."""
    c = np.asarray(c, dtype=float)
    pi = np.asarray(pi, dtype=float)
    premium = (1.0 + q) * ir * loss * pi
    mag_attack = (1.0 - ir) * loss + premium + c
    mag_quiet = premium + c
    w_attack, w_quiet = _weight_pair(pi, beta)
    return -lam * (w_attack * _pow_or_zero(mag_attack, alpha) + w_quiet * _pow_or_zero(mag_quiet, alpha))


def eut_objective(
    c: np.ndarray,
    pi: np.ndarray,
    wealth: float,
    loss: float,
    q: float,
    ir: float,
    r: float,
) -> np.ndarray:
    """Expected CRRA utility of spending ``c`` on controls, per grid point."""
    c = np.asarray(c, dtype=float)
    pi = np.asarray(pi, dtype=float)
    premium = (1.0 + q) * ir * loss * pi
    base_attack = wealth - (1.0 - ir) * loss - premium - c
    base_quiet = wealth - premium - c
    if base_attack.size and float(base_attack.min()) < 0.0:
        raise ValueError("outlays exceed wealth somewhere on the grid")
    return pi * base_attack**r + (1.0 - pi) * base_quiet**r
