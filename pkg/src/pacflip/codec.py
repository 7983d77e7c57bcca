"""Polar transform, Reed-Muller rate profile and message <-> profiled vector maps."""
from __future__ import annotations

import numpy as np

from .config import ParameterError, is_power_of_two


def _bits(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.uint8)
    if arr.ndim != 1:
        raise ParameterError("expected a 1-D bit vector")
    return arr


def rm_profile(N: int, K: int) -> list[int]:
    """Reed-Muller rate profile: the K indices of largest binary weight.

    Within the boundary weight class larger indices win, so the result
    is nested in K.
    """
    if not is_power_of_two(N):
        raise ParameterError(f"N must be a power of two, got {N}")
    if not 1 <= K <= N:
        raise ParameterError(f"K must satisfy 1 <= K <= N, got K={K}")
    order = sorted(range(N), key=lambda i: (bin(i).count("1"), i), reverse=True)
    return sorted(order[:K])


def profile_map(d, A, N: int) -> np.ndarray:
    d = _bits(d)
    A = np.asarray(A, dtype=np.intp)
    if len(d) == 0 or len(d) != len(A):
        raise ParameterError(f"message length {len(d)} does not match |A| = {len(A)}")
    v = np.zeros(N, dtype=np.uint8)
    v[np.sort(A)] = d
    return v


def demapping(v_hat, A) -> np.ndarray:
    v_hat = _bits(v_hat)
    A = np.sort(np.asarray(A, dtype=np.intp))
    if len(A) and A[-1] >= len(v_hat):
        raise ParameterError("profiled vector shorter than the information set requires")
    return v_hat[A].copy()


def polar_transform(u) -> np.ndarray:
    """x = u F^{(x)n} over GF(2) with F = [[1, 0], [1, 1]], natural order.

    Works on the last axis, so a batch of rows can be encoded at once.
    """
    x = np.array(u, dtype=np.uint8)
    N = x.shape[-1]
    if not is_power_of_two(N) or N < 1:
        raise ParameterError(f"length must be a power of two, got {N}")
    lead = x.shape[:-1]
    h = 1
    while h < N:
        y = x.reshape(*lead, N // (2 * h), 2, h)
        y[..., 0, :] ^= y[..., 1, :]
        h *= 2
    return x


def pac_encode(d, cfg) -> np.ndarray:
    """Message bits -> PAC codeword (profile, precode, polar transform)."""
    from .precoder import conv

    return polar_transform(conv(profile_map(d, cfg.A, cfg.N), cfg.g))
