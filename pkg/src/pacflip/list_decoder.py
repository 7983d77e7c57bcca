"""SC and SCL decoding of PAC codes.

The list decoder runs in a numba kernel. Every path owns an LLR tree and
a partial-sum tree in a flat layout where stage ``s`` (node size 2**s)
lives at offset ``2**s - 1``; the channel LLRs act as stage ``n`` and are
shared. When a path is duplicated its trees are copied, so paths never
alias each other.

``pac_sc_decode`` is a separate recursive numpy implementation and
serves as a cross-check for the kernel at L = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .config import CodeConfig
from .precoder import ConvState, subconv

NO_FLIP = -1


def _sgn(x: float) -> int:
    return 1 if x >= 0 else -1


def llr_f(a: float, b: float, mode: str = "min_sum") -> float:
    out = _sgn(a) * _sgn(b) * min(abs(a), abs(b))
    if mode == "exact":
        out += np.log1p(np.exp(-abs(a + b))) - np.log1p(np.exp(-abs(a - b)))
    return float(out)


def llr_g(a: float, b: float, s: int) -> float:
    return b - a if s else b + a


def calc_pm(pm_prev: float, llr: float, u_hat: int) -> float:
    hard = 0 if llr >= 0 else 1
    return pm_prev if u_hat == hard else pm_prev + abs(llr)


@dataclass(frozen=True)
class DecoderPath:
    v_hat: np.ndarray
    u_hat: np.ndarray
    pm: float


@dataclass(frozen=True)
class CompetitionRecord:
    index: int
    survivor_pms: np.ndarray
    removed_pms: np.ndarray
    confidence: float


@njit(cache=True)
def _f(a, b, exact):
    m = min(abs(a), abs(b))
    if (a < 0) != (b < 0):
        m = -m
    if exact:
        m += np.log1p(np.exp(-abs(a + b))) - np.log1p(np.exp(-abs(a - b)))
    return m


@njit(cache=True)
def select_survivors(cand_pm, L, invert):
    """Stable rank of candidates by PM; returns (kept ids sorted, rank order).

    ``invert`` keeps the L candidates standard pruning would discard.
    """
    order = np.argsort(cand_pm, kind="mergesort")
    if invert:
        kept = np.sort(order[L:])
    else:
        kept = np.sort(order[:L])
    return kept, order


@njit(cache=True)
def _update_llrs(i, n, ch, llr, ps, l, exact):
    if i == 0:
        top = n - 1
    else:
        t = 0
        while (i >> t) & 1 == 0:
            t += 1
        # stage t becomes a right child: g-update against the left sibling sums
        h = 1 << t
        dst = h - 1
        src = 2 * h - 1
        for j in range(h):
            if t + 1 == n:
                a = ch[j]
                b = ch[h + j]
            else:
                a = llr[l, src + j]
                b = llr[l, src + h + j]
            if ps[l, dst + j]:
                llr[l, dst + j] = b - a
            else:
                llr[l, dst + j] = b + a
        top = t - 1
    for s in range(top, -1, -1):
        h = 1 << s
        dst = h - 1
        src = 2 * h - 1
        for j in range(h):
            if s + 1 == n:
                a = ch[j]
                b = ch[h + j]
            else:
                a = llr[l, src + j]
                b = llr[l, src + h + j]
            llr[l, dst + j] = _f(a, b, exact)
    return llr[l, 0]


@njit(cache=True)
def _update_sums(i, n, u, ps, l, buf):
    buf[0] = u
    s = 0
    while s < n and (i >> s) & 1 == 1:
        h = 1 << s
        off = h - 1
        for j in range(h):
            buf[h + j] = buf[j]
            buf[j] = ps[l, off + j] ^ buf[j]
        s += 1
    if s < n:
        h = 1 << s
        off = h - 1
        for j in range(h):
            ps[l, off + j] = buf[j]


@njit(cache=True)
def _scl_kernel(ch, info, g, L, flip_index, exact):
    N = ch.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    m = g.shape[0] - 1
    K = 0
    for i in range(N):
        if info[i]:
            K += 1

    llr = np.zeros((L, N))
    ps = np.zeros((L, N), dtype=np.uint8)
    st = np.zeros((L, max(m, 1)), dtype=np.uint8)
    v = np.zeros((L, N), dtype=np.uint8)
    u = np.zeros((L, N), dtype=np.uint8)
    pm = np.zeros(L)
    llr2 = np.zeros((L, N))
    ps2 = np.zeros((L, N), dtype=np.uint8)
    st2 = np.zeros((L, max(m, 1)), dtype=np.uint8)
    v2 = np.zeros((L, N), dtype=np.uint8)
    u2 = np.zeros((L, N), dtype=np.uint8)
    pm2 = np.zeros(L)
    buf = np.zeros(N, dtype=np.uint8)

    leaf = np.zeros(L)
    cand_pm = np.zeros(2 * L)
    cand_u = np.zeros(2 * L, dtype=np.uint8)

    rec_index = np.full(K, -1, dtype=np.int64)
    rec_surv = np.zeros((K, L))
    rec_rem = np.zeros((K, L))
    n_rec = 0

    pm_hist = np.full((N, L), np.nan)
    parent_hist = np.full((N, L), -1, dtype=np.int64)
    cand_hist = np.full((N, L), -1, dtype=np.int64)
    width_hist = np.zeros(N, dtype=np.int64)

    nact = 1
    for i in range(N):
        for l in range(nact):
            leaf[l] = _update_llrs(i, n, ch, llr, ps, l, exact)
        if not info[i]:
            for l in range(nact):
                ub = 0
                for j in range(1, m + 1):
                    ub ^= g[j] & st[l, j - 1]
                for j in range(m - 1, 0, -1):
                    st[l, j] = st[l, j - 1]
                if m > 0:
                    st[l, 0] = 0
                v[l, i] = 0
                u[l, i] = ub
                hard = 0 if leaf[l] >= 0 else 1
                if ub != hard:
                    pm[l] += abs(leaf[l])
                _update_sums(i, n, ub, ps, l, buf)
                pm_hist[i, l] = pm[l]
                parent_hist[i, l] = l
                cand_hist[i, l] = 2 * l
            width_hist[i] = nact
            continue

        ncand = 2 * nact
        for l in range(nact):
            base = 0
            for j in range(1, m + 1):
                base ^= g[j] & st[l, j - 1]
            hard = 0 if leaf[l] >= 0 else 1
            for b in range(2):
                ub = base ^ (b & g[0])
                c = 2 * l + b
                cand_u[c] = ub
                if ub != hard:
                    cand_pm[c] = pm[l] + abs(leaf[l])
                else:
                    cand_pm[c] = pm[l]
        if ncand <= L:
            kept = np.arange(ncand)
        else:
            kept, order = select_survivors(cand_pm[:ncand], L, i == flip_index)
            rec_index[n_rec] = i
            for k in range(L):
                rec_surv[n_rec, k] = cand_pm[order[k]]
                rec_rem[n_rec, k] = cand_pm[order[L + k]]
            n_rec += 1
        nnew = kept.shape[0]
        for k in range(nnew):
            c = kept[k]
            p = c // 2
            b = c % 2
            llr2[k, :] = llr[p, :]
            ps2[k, :] = ps[p, :]
            v2[k, :i] = v[p, :i]
            u2[k, :i] = u[p, :i]
            for j in range(m - 1, 0, -1):
                st2[k, j] = st[p, j - 1]
            if m > 0:
                st2[k, 0] = b
            v2[k, i] = b
            u2[k, i] = cand_u[c]
            pm2[k] = cand_pm[c]
            _update_sums(i, n, cand_u[c], ps2, k, buf)
            pm_hist[i, k] = pm2[k]
            parent_hist[i, k] = p
            cand_hist[i, k] = c
        llr, llr2 = llr2, llr
        ps, ps2 = ps2, ps
        st, st2 = st2, st
        v, v2 = v2, v
        u, u2 = u2, u
        pm, pm2 = pm2, pm
        nact = nnew
        width_hist[i] = nact

    return (v[:nact].copy(), u[:nact].copy(), pm[:nact].copy(),
            rec_index[:n_rec].copy(), rec_surv[:n_rec].copy(), rec_rem[:n_rec].copy(),
            pm_hist, parent_hist, cand_hist, width_hist)


@dataclass
class ListDecodeResult:
    """Output of one list decode, including per-bit trace arrays."""

    v_hat: np.ndarray
    paths_v: np.ndarray
    paths_u: np.ndarray
    pms: np.ndarray
    record_index: np.ndarray
    record_survivors: np.ndarray
    record_removed: np.ndarray
    pm_hist: np.ndarray
    parent_hist: np.ndarray
    cand_hist: np.ndarray
    width_hist: np.ndarray
    alpha: float

    @property
    def best(self) -> int:
        return int(np.argmin(self.pms))

    @property
    def final_paths(self) -> list[DecoderPath]:
        return [DecoderPath(self.paths_v[l], self.paths_u[l], float(self.pms[l]))
                for l in range(len(self.pms))]

    def confidences(self) -> np.ndarray:
        from .flip_decoder import confidence_rows

        return confidence_rows(self.record_survivors, self.record_removed, self.alpha)

    @property
    def records(self) -> list[CompetitionRecord]:
        conf = self.confidences()
        return [CompetitionRecord(int(i), self.record_survivors[k], self.record_removed[k], float(conf[k]))
                for k, i in enumerate(self.record_index)]

    def kept_candidates(self, i: int) -> set[int]:
        """Candidate ids (2 * parent + bit) that survived at bit ``i``."""
        w = self.width_hist[i]
        return {int(c) for c in self.cand_hist[i, :w]}

    def trace_lines(self, info_mask) -> list[str]:
        lines = []
        for i in range(len(self.width_hist)):
            w = self.width_hist[i]
            pms = ",".join(f"{x:.6g}" for x in self.pm_hist[i, :w])
            lines.append(f"{i} {'info' if info_mask[i] else 'frozen'} {pms}")
        return lines


def run_list_kernel(llrs, cfg: CodeConfig, flip_index: int = NO_FLIP) -> ListDecodeResult:
    ch = np.ascontiguousarray(llrs, dtype=np.float64)
    if ch.shape != (cfg.N,):
        raise ValueError(f"expected {cfg.N} LLRs, got shape {ch.shape}")
    out = _scl_kernel(ch, cfg.info_mask, cfg.taps, cfg.L, flip_index, cfg.llr_mode == "exact")
    v, u, pm, ri, rs, rr, ph, par, cand, width = out
    best = int(np.argmin(pm))
    return ListDecodeResult(v[best].copy(), v, u, pm, ri, rs, rr, ph, par, cand, width, cfg.alpha)


def pac_scl_decode(llrs, cfg: CodeConfig) -> ListDecodeResult:
    """PAC list decoding; ``.v_hat`` is the minimum-PM profiled vector."""
    return run_list_kernel(llrs, cfg, NO_FLIP)


def _f_vec(a, b, exact):
    m = np.minimum(np.abs(a), np.abs(b))
    m = np.where((a < 0) == (b < 0), m, -m)
    if exact:
        m = m + np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))
    return m


def sc_walk(llrs, decide, exact: bool = False) -> np.ndarray:
    """Recursive SC schedule; ``decide(i, leaf_llr) -> u_i`` is called in order."""

    def rec(llr, offset):
        if len(llr) == 1:
            return np.array([decide(offset, float(llr[0]))], dtype=np.uint8)
        h = len(llr) // 2
        left, right = llr[:h], llr[h:]
        a = rec(_f_vec(left, right, exact), offset)
        b = rec(np.where(a == 1, right - left, right + left), offset + h)
        return np.concatenate([a ^ b, b])

    return rec(np.asarray(llrs, dtype=np.float64), 0)


def pac_sc_decode(llrs, cfg: CodeConfig) -> np.ndarray:
    """Single-path PAC decode; returns the profiled vector v_hat."""
    info = cfg.info_mask
    v_hat = np.zeros(cfg.N, dtype=np.uint8)
    state = [ConvState.zero(cfg.g)]

    def decide(i, leaf):
        if not info[i]:
            ub, state[0] = subconv(0, state[0], cfg.g)
            return ub
        u0, s0 = subconv(0, state[0], cfg.g)
        u1, s1 = subconv(1, state[0], cfg.g)
        # v = 1 only when strictly cheaper, matching the list decoder's stable pruning
        if calc_pm(0.0, leaf, u1) < calc_pm(0.0, leaf, u0):
            v_hat[i] = 1
            state[0] = s1
            return u1
        state[0] = s0
        return u0

    sc_walk(llrs, decide, cfg.llr_mode == "exact")
    return v_hat
