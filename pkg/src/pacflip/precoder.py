"""Rate-1 convolutional precoder (shift-register form and whole-vector form)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TAPS, LITERAL6_TAPS, ParameterError


@dataclass(frozen=True)
class ConvState:
    """Shift register contents, most recent input first."""

    register: tuple[int, ...]

    @classmethod
    def zero(cls, g) -> "ConvState":
        return cls((0,) * (len(g) - 1))


def subconv(v: int, state: ConvState, g) -> tuple[int, ConvState]:
    """Push one profiled bit through the register; returns (u, next_state)."""
    u = v & g[0]
    for j in range(1, len(g)):
        u ^= g[j] & state.register[j - 1]
    nxt = ConvState(((v,) + state.register[:-1]) if state.register else ())
    return u, nxt


def conv(v, g) -> np.ndarray:
    """u[i] = sum_j g[j] v[i-j] over GF(2), zero initial state, no tail."""
    v = np.asarray(v, dtype=np.uint8)
    if len(v) == 0:
        return v.copy()
    full = np.convolve(v.astype(np.int64), np.asarray(g, dtype=np.int64))
    return (full[: len(v)] & 1).astype(np.uint8)


def deconv(u, g) -> np.ndarray:
    """Inverse of :func:`conv` (needs g[0] = 1)."""
    u = np.asarray(u, dtype=np.uint8)
    g = tuple(int(b) for b in g)
    v = np.zeros(len(u), dtype=np.uint8)
    for i in range(len(u)):
        acc = int(u[i])
        for j in range(1, min(len(g), i + 1)):
            acc ^= g[j] & int(v[i - j])
        v[i] = acc
    return v


def parse_taps(text: str) -> tuple[int, ...]:
    """Octal literal ("133"), comma bit list ("1,0,1,1,0,1,1") or "literal6"."""
    text = text.strip()
    if text == "literal6":
        return LITERAL6_TAPS
    if text in ("", "default"):
        return DEFAULT_TAPS
    if "," in text:
        taps = tuple(int(b) for b in text.split(","))
    else:
        try:
            value = int(text, 8)
        except ValueError:
            raise ParameterError(f"cannot parse taps {text!r}") from None
        if value <= 0:
            raise ParameterError("taps must be nonzero")
        taps = tuple(int(b) for b in bin(value)[2:])
    if any(b not in (0, 1) for b in taps) or taps[0] != 1 or taps[-1] != 1:
        raise ParameterError(f"taps must be bits with g[0] = g[m] = 1, got {taps}")
    return taps
