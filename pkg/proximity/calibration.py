# proximity/calibration.py
"""Least-squares calibration of the ranging error model."""

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from core.errors import FitError

logger = logging.getLogger(__name__)

CUBIC_TERMS = 4


@dataclass(frozen=True)
class CubicFit:
    """σ(d) = c0 + c1·d + c2·d² + c3·d³ with fit diagnostics."""

    coefficients: Tuple[float, float, float, float]
    residual_rms: float
    standard_errors: Tuple[float, float, float, float]
    n_samples: int


def fit_stddev_cubic(samples: Sequence[Tuple[float, float]]) -> CubicFit:
    """Ordinary least-squares cubic through (distance, stddev) samples."""
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise FitError("samples must be (distance, stddev) pairs")
    if not np.isfinite(data).all():
        raise FitError("samples must be finite")
    d, s = data[:, 0], data[:, 1]
    n_distinct = len(np.unique(d))
    if len(d) < CUBIC_TERMS or n_distinct < CUBIC_TERMS:
        raise FitError(
            f"cubic fit needs at least {CUBIC_TERMS} distinct distances, got {n_distinct} "
            f"in {len(d)} samples"
        )

    X = P.polyvander(d, CUBIC_TERMS - 1)
    coef, _, rank, _ = np.linalg.lstsq(X, s, rcond=None)
    if rank < CUBIC_TERMS:
        raise FitError(f"design matrix is rank deficient (rank {rank})")

    residuals = s - X @ coef
    rms = float(np.sqrt(np.mean(residuals ** 2)))
    dof = len(d) - CUBIC_TERMS
    if dof > 0:
        sigma_sq = float(residuals @ residuals) / dof
        cov = sigma_sq * np.linalg.inv(X.T @ X)
        se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    else:
        se = np.zeros(CUBIC_TERMS)

    logger.info("fitted stddev cubic on %d samples, residual RMS %.3g m", len(d), rms)
    return CubicFit(
        coefficients=tuple(float(c) for c in coef),
        residual_rms=rms,
        standard_errors=tuple(float(e) for e in se),
        n_samples=len(d),
    )


def fit_bias_table(samples: Iterable[Tuple[float, float]]) -> Tuple[Tuple[float, float], ...]:
    """Average bias samples per distance into a strictly increasing table."""
    data = np.asarray(list(samples), dtype=float)
    if data.size == 0:
        raise FitError("bias table needs at least one sample")
    if data.ndim != 2 or data.shape[1] != 2:
        raise FitError("samples must be (distance, bias) pairs")
    if not np.isfinite(data).all():
        raise FitError("bias samples must be finite")
    distances, inverse = np.unique(data[:, 0], return_inverse=True)
    sums = np.bincount(inverse, weights=data[:, 1])
    counts = np.bincount(inverse)
    return tuple((float(dd), float(b)) for dd, b in zip(distances, sums / counts))
