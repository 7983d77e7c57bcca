"""BPSK over AWGN and channel LLRs.

Noise uses Box-Muller on PCG64 uniforms, so a seed gives the same noise
on any numpy version that keeps PCG64 / ``Generator.random`` stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ParameterError


@dataclass(frozen=True)
class ChannelObservation:
    y: np.ndarray
    sigma: float


def compute_sigma(R: float, snr_db: float) -> float:
    if not R > 0 or R > 1:
        raise ParameterError(f"code rate must lie in (0, 1], got {R}")
    return 10.0 ** (-snr_db / 20.0) / math.sqrt(2.0 * R)


def bpsk_modulate(x) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(x, dtype=np.float64)


def standard_normal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Box-Muller: z = sqrt(-2 ln(1 - u1)) cos(2 pi u2), u1, u2 ~ U[0, 1)."""
    u = rng.random((2, size))
    return np.sqrt(-2.0 * np.log1p(-u[0])) * np.cos(2.0 * np.pi * u[1])


def add_awgn(s, sigma: float, rng: np.random.Generator, noiseless: bool = False) -> ChannelObservation:
    s = np.asarray(s, dtype=np.float64)
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if noiseless:
        return ChannelObservation(s.copy(), sigma)
    return ChannelObservation(s + sigma * standard_normal(rng, len(s)), sigma)


def channel_llr(obs: ChannelObservation) -> np.ndarray:
    """2 y / sigma^2; positive favours bit 0."""
    return 2.0 * np.asarray(obs.y, dtype=np.float64) / obs.sigma**2
