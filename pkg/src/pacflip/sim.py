"""Monte Carlo FER/BER simulation over BPSK-AWGN.

Trial ``k`` of a run draws its message and noise from its own PCG64
stream, ``SeedSequence(master_seed, spawn_key=(k,))``. Trials are
grouped into fixed-size batches and the stop rule is checked only at
batch boundaries, so the rows are the same for any number of workers.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import add_awgn, bpsk_modulate, channel_llr, compute_sigma
from .codec import demapping, pac_encode, profile_map
from .config import CodeConfig, ParameterError
from .flip_decoder import pac_sclf_decode
from .list_decoder import calc_pm, pac_sc_decode, run_list_kernel, sc_walk
from .precoder import conv

DECODERS = ("sc", "scl", "sclf")
BATCH = 256


@dataclass(frozen=True)
class TrialResult:
    trial_index: int
    frame_error: bool
    bit_errors: int
    attempts_used: int = 0


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    trials: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    ci_lo: float
    ci_hi: float
    mean_attempts: float
    wall_seconds: float

    @property
    def wilson_ci_95(self) -> tuple[float, float]:
        return self.ci_lo, self.ci_hi


@dataclass(frozen=True)
class FixedTrials:
    trials: int


@dataclass(frozen=True)
class MinFrameErrors:
    min_frame_errors: int = 200
    max_trials: int = 10_000_000


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(master_seed, spawn_key=(trial_index,))))


def wilson_interval(errors: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = errors / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # clamp so that lo <= p <= hi survives round-off at p = 0 or 1
    return max(0.0, min(p, centre - half)), min(1.0, max(p, centre + half))


def ml_oracle_decode(llrs, cfg: CodeConfig) -> np.ndarray:
    """Exhaustive search over all 2^K messages for the smallest total path
    metric; ties go to the smallest message (d[0] most significant)."""
    if cfg.K > 16:
        raise ParameterError(f"exhaustive search needs K <= 16, got {cfg.K}")
    exact = cfg.llr_mode == "exact"
    best, best_pm = None, math.inf
    for d in itertools.product((0, 1), repeat=cfg.K):
        v = profile_map(d, cfg.A, cfg.N)
        u = conv(v, cfg.g)
        pm = [0.0]

        def forced(i, leaf, u=u, pm=pm):
            pm[0] = calc_pm(pm[0], leaf, int(u[i]))
            return int(u[i])

        sc_walk(llrs, forced, exact)
        if pm[0] < best_pm:
            best, best_pm = v, pm[0]
    return best


def decode(llrs, cfg: CodeConfig, decoder: str, truth=None) -> tuple[np.ndarray, int]:
    if decoder == "sc":
        return pac_sc_decode(llrs, cfg), 0
    if decoder == "scl":
        return run_list_kernel(llrs, cfg).v_hat, 0
    if decoder == "sclf":
        return pac_sclf_decode(llrs, cfg, truth)
    raise ParameterError(f"unknown decoder {decoder!r}; choose from {DECODERS}")


def run_trial(cfg: CodeConfig, snr_db: float, master_seed: int, trial_index: int,
              decoder: str = "scl", noiseless: bool = False) -> TrialResult:
    rng = trial_rng(master_seed, trial_index)
    d = rng.integers(0, 2, cfg.K, dtype=np.uint8)
    v = profile_map(d, cfg.A, cfg.N)
    x = pac_encode(d, cfg)
    sigma = compute_sigma(cfg.rate, snr_db)
    obs = add_awgn(bpsk_modulate(x), sigma, rng, noiseless=noiseless)
    v_hat, attempts = decode(channel_llr(obs), cfg, decoder, truth=v)
    bit_errors = int(np.count_nonzero(demapping(v_hat, cfg.A) != d))
    return TrialResult(trial_index, bit_errors > 0, bit_errors, attempts)


def _run_batch(args) -> tuple[int, int, int, int]:
    cfg, snr_db, seed, start, stop, decoder, noiseless = args
    fe = be = att = 0
    for k in range(start, stop):
        r = run_trial(cfg, snr_db, seed, k, decoder, noiseless)
        fe += r.frame_error
        be += r.bit_errors
        att += r.attempts_used
    return stop - start, fe, be, att


def _point(cfg, snr_db, stop_rule, seed, decoder, noiseless, pool, workers, batch):
    if isinstance(stop_rule, FixedTrials):
        limit, min_fe = stop_rule.trials, math.inf
    else:
        limit, min_fe = stop_rule.max_trials, stop_rule.min_frame_errors
    trials = fe = be = att = 0
    t0 = time.perf_counter()
    jobs = ((cfg, snr_db, seed, s, min(s + batch, limit), decoder, noiseless)
            for s in range(0, limit, batch))
    done = False
    while not done:
        # batches are consumed in index order, so the stop point does not depend on workers
        chunk = list(itertools.islice(jobs, workers))
        if not chunk:
            break
        for nt, f, b, a in (pool.map(_run_batch, chunk) if pool else map(_run_batch, chunk)):
            trials += nt
            fe += f
            be += b
            att += a
            if fe >= min_fe:
                done = True
                break
    lo, hi = wilson_interval(fe, trials)
    return SweepRow(
        snr_db=float(snr_db), trials=trials, frame_errors=fe, bit_errors=be,
        fer=fe / trials if trials else 0.0, ber=be / (trials * cfg.K) if trials else 0.0,
        ci_lo=lo, ci_hi=hi, mean_attempts=att / trials if trials else 0.0,
        wall_seconds=time.perf_counter() - t0,
    )


def run_sweep(cfg: CodeConfig, snr_list, stop_rule=MinFrameErrors(), master_seed: int = 0,
              decoder: str = "scl", workers: int = 1, noiseless: bool = False,
              batch: int = BATCH, progress=None) -> list[SweepRow]:
    """One SweepRow per SNR point, in input order."""
    snr_list = list(snr_list)
    if not snr_list:
        raise ParameterError("snr_list must be nonempty")
    if decoder not in DECODERS:
        raise ParameterError(f"unknown decoder {decoder!r}; choose from {DECODERS}")
    rows = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for snr in snr_list:
            row = _point(cfg, snr, stop_rule, master_seed, decoder, noiseless, pool, max(workers, 1), batch)
            if progress:
                progress(row)
            rows.append(row)
    finally:
        if pool:
            pool.shutdown()
    return rows


def fer_crossing(rows: list[SweepRow], target: float = 1e-2) -> float:
    """SNR where FER first drops through ``target``, interpolating log10(FER)
    linearly between the bracketing grid points."""
    for a, b in zip(rows, rows[1:]):
        if a.fer >= target > b.fer:
            if b.fer == 0:
                return b.snr_db
            la, lb, lt = math.log10(a.fer), math.log10(b.fer), math.log10(target)
            return a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db)
    raise ValueError(f"FER does not cross {target} on this grid")
