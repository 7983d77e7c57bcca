"""Code and decoder parameters."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

# g = 1 + x^2 + x^3 + x^5 + x^6 as (g0, ..., g6), octal 133
DEFAULT_TAPS = (1, 0, 1, 1, 0, 1, 1)
# six-entry tap list as printed alongside the polynomial; selectable, never default
LITERAL6_TAPS = (1, 0, 1, 1, 0, 1)

LLR_MODES = ("min_sum", "exact")


class ParameterError(ValueError):
    """Raised for invalid code, decoder or channel parameters."""


def is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class CodeConfig:
    """Immutable PAC code + list decoder parameters.

    Use :meth:`build` to get the Reed-Muller information set filled in.
    """

    N: int
    K: int
    A: tuple[int, ...]
    g: tuple[int, ...] = DEFAULT_TAPS
    L: int = 1
    alpha: float = 1.25
    T: int = 5
    llr_mode: str = "min_sum"
    n: int = field(init=False)

    def __post_init__(self):
        if not is_power_of_two(self.N) or self.N < 2:
            raise ParameterError(f"N must be a power of two >= 2, got {self.N}")
        object.__setattr__(self, "n", self.N.bit_length() - 1)
        if not 1 <= self.K <= self.N:
            raise ParameterError(f"K must satisfy 1 <= K <= N, got K={self.K}")
        A = tuple(int(i) for i in self.A)
        if len(A) != self.K or len(set(A)) != self.K:
            raise ParameterError("information set must hold K distinct indices")
        if any(i < 0 or i >= self.N for i in A):
            raise ParameterError("information indices must lie in [0, N)")
        object.__setattr__(self, "A", tuple(sorted(A)))
        g = tuple(int(b) for b in self.g)
        if len(g) < 1 or any(b not in (0, 1) for b in g) or g[0] != 1 or g[-1] != 1:
            raise ParameterError(f"taps must be bits with g[0] = g[m] = 1, got {self.g}")
        object.__setattr__(self, "g", g)
        if not is_power_of_two(self.L):
            raise ParameterError(f"list size must be a power of two, got {self.L}")
        if not self.alpha >= 1.0:
            raise ParameterError(f"alpha must be >= 1, got {self.alpha}")
        if self.T < 0:
            raise ParameterError(f"T must be >= 0, got {self.T}")
        if self.llr_mode not in LLR_MODES:
            raise ParameterError(f"llr_mode must be one of {LLR_MODES}")

    @classmethod
    def build(cls, N: int, K: int, **kwargs) -> "CodeConfig":
        from .codec import rm_profile

        return cls(N=N, K=K, A=tuple(rm_profile(N, K)), **kwargs)

    @property
    def m(self) -> int:
        return len(self.g) - 1

    @property
    def rate(self) -> float:
        return self.K / self.N

    @cached_property
    def info_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=np.bool_)
        mask[list(self.A)] = True
        return mask

    @cached_property
    def taps(self) -> np.ndarray:
        return np.array(self.g, dtype=np.uint8)

    @property
    def n_unflippable(self) -> int:
        """Size of A_0: the leading information bits decoded before the list fills."""
        return min(self.K, self.L.bit_length() - 1)

    @cached_property
    def flippable(self) -> tuple[int, ...]:
        return self.A[self.n_unflippable:]
