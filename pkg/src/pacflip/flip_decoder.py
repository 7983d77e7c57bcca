"""Bit-flipping on top of PAC list decoding.

The first decode records, for every pruning step, the PMs of the kept
and discarded halves. Their log-probability ratio, with the discarded
side raised to ``alpha``, ranks the pruning decisions by confidence; the
least confident ones are then re-decoded one at a time with that
decision inverted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .config import CodeConfig, ParameterError
from .list_decoder import CompetitionRecord, run_list_kernel

SATURATION = 1e300

FailureOracle = Callable[[np.ndarray], bool]


@dataclass(frozen=True)
class FlipSet:
    indices: tuple[int, ...]
    source_confidences: tuple[float, ...]

    def __len__(self):
        return len(self.indices)


def confidence_rows(survivor_pms, removed_pms, alpha: float) -> np.ndarray:
    s = np.atleast_2d(np.asarray(survivor_pms, dtype=np.float64))
    r = np.atleast_2d(np.asarray(removed_pms, dtype=np.float64))
    if s.shape[1] == 0:
        return np.zeros(s.shape[0])
    e = logsumexp(-s, axis=1) - alpha * logsumexp(-r, axis=1)
    e = np.nan_to_num(e, nan=0.0, posinf=SATURATION, neginf=-SATURATION)
    return np.clip(e, -SATURATION, SATURATION)


def confidence(survivor_pms, removed_pms, alpha: float) -> float:
    """ln sum exp(-PM_kept) - alpha * ln sum exp(-PM_removed)."""
    if alpha < 1:
        raise ParameterError(f"alpha must be >= 1, got {alpha}")
    return float(confidence_rows(survivor_pms, removed_pms, alpha)[0])


def gen_flip(records: list[CompetitionRecord], T: int) -> FlipSet:
    """The T least confident indices, ascending by confidence then index."""
    ranked = sorted(records, key=lambda r: (r.confidence, r.index))[: max(T, 0)]
    return FlipSet(tuple(r.index for r in ranked), tuple(r.confidence for r in ranked))


def pac_sclf_attempt(llrs, cfg: CodeConfig, flip_index: int | None) -> np.ndarray:
    """One list decode with the pruning decision at ``flip_index`` inverted.

    ``None`` runs a plain decode.
    """
    if flip_index is None:
        return run_list_kernel(llrs, cfg).v_hat
    if flip_index not in cfg.flippable:
        raise ParameterError(f"index {flip_index} is frozen or among the first log2(L) information bits")
    return run_list_kernel(llrs, cfg, int(flip_index)).v_hat


def genie(truth) -> FailureOracle:
    """Failure detection by comparison with the transmitted profiled vector."""
    truth = np.asarray(truth, dtype=np.uint8)
    return lambda v_hat: not np.array_equal(v_hat, truth)


def pac_sclf_decode(llrs, cfg: CodeConfig, truth=None, failed: FailureOracle | None = None):
    """Returns (v_hat, attempts_used). Failures are judged by ``failed``
    (defaults to the genie built from ``truth``)."""
    if failed is None:
        if truth is None:
            raise ParameterError("need either truth or a failure oracle")
        failed = genie(truth)
    first = run_list_kernel(llrs, cfg)
    if not failed(first.v_hat) or cfg.T == 0:
        return first.v_hat, 0
    flips = gen_flip(first.records, cfg.T)
    v_hat = first.v_hat
    for m, idx in enumerate(flips.indices, start=1):
        v_hat = run_list_kernel(llrs, cfg, idx).v_hat
        if not failed(v_hat):
            return v_hat, m
    return v_hat, len(flips)
