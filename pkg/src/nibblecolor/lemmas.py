"""Averaging bounds behind the cleanup phase.

Removing a fraction ``alpha`` of a sample, all of whose removed points are at
least ``q`` times the mean, leaves a mean of at most ``mu (1 - q alpha) / (1 - alpha)``.
Padding with ``alpha * n`` points of value ``q * mu`` gives a mean of exactly
``mu (1 + q alpha) / (1 + alpha)``.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Sample:
    values: np.ndarray
    mean: float = field(init=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.size < 1:
            raise ValueError("sample must be non-empty")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("sample values must be finite and non-negative")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "mean", float(v.sum() / v.size))

    def count_at_least(self, threshold):
        return int(np.count_nonzero(self.values >= threshold))


class BoundWarning(UserWarning):
    pass


def trimmed_mean_bound(mu, alpha, q):
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    if q <= 1:
        raise ValueError("q must exceed 1")
    if alpha > 1 / q:
        warnings.warn(f"alpha={alpha} exceeds 1/q; the bound is negative", BoundWarning)
    return mu * (1 - q * alpha) / (1 - alpha)


def padded_mean(mu, alpha, q):
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if q <= 1:
        raise ValueError("q must exceed 1")
    return mu * (1 + q * alpha) / (1 + alpha)
