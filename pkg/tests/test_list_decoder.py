import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pacflip import CodeConfig
from pacflip.codec import profile_map
from pacflip.list_decoder import (
    NO_FLIP, _f, calc_pm, llr_f, llr_g, pac_sc_decode, pac_scl_decode, run_list_kernel, sc_walk,
    select_survivors,
)
from pacflip.precoder import conv

from conftest import encode_random, noiseless_llrs


def path_metric(llrs, cfg, v):
    """Accumulated path metric of one fixed profiled vector (forced SC walk)."""
    u = conv(v, cfg.g)
    pm = [0.0]

    def forced(i, leaf):
        pm[0] = calc_pm(pm[0], leaf, int(u[i]))
        return int(u[i])

    sc_walk(llrs, forced)
    return pm[0]


def survivor_prefixes(res, i, info):
    out = set()
    for k in range(res.width_hist[i]):
        bits, slot = [], k
        for j in range(i, -1, -1):
            bits.append(int(res.cand_hist[j, slot] % 2) if info[j] else 0)
            slot = res.parent_hist[j, slot]
        out.add(tuple(reversed(bits)))
    return out


def test_llr_f_examples():
    assert llr_f(2, -3) == -2
    assert llr_f(7.5, 0) == 0
    assert llr_f(-7.5, 0) == 0
    assert llr_f(5, 5) == 5


@pytest.mark.parametrize("a,b", [(2, -3), (0.3, 0.7), (-4, -1.5), (10, 12), (-25, 30)])
def test_llr_f_exact_matches_tanh_rule(a, b):
    expected = 2 * math.atanh(math.tanh(a / 2) * math.tanh(b / 2)) if max(abs(a), abs(b)) < 15 else None
    got = llr_f(a, b, "exact")
    if expected is not None:
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)
    assert abs(got) <= min(abs(a), abs(b))
    assert _f(a, b, True) == pytest.approx(got, rel=1e-12)
    assert _f(a, b, False) == llr_f(a, b)


def test_llr_g_examples():
    assert llr_g(2, 3, 0) == 5
    assert llr_g(2, 3, 1) == 1
    assert llr_g(0, 3.5, 0) == 3.5


def test_calc_pm_examples():
    assert calc_pm(0, 2.0, 0) == 0.0
    assert calc_pm(0, 2.0, 1) == 2.0
    assert calc_pm(1.5, -3.0, 1) == 1.5
    assert calc_pm(1.5, -3.0, 0) == 4.5
    # sign(0) = +1: deciding 0 on a zero LLR is free, and so is deciding 1
    assert calc_pm(1.0, 0.0, 0) == 1.0
    assert calc_pm(1.0, 0.0, 1) == 1.0


@pytest.mark.parametrize("N,K", [(8, 4), (32, 16), (128, 64)])
def test_sc_noiseless_round_trip(N, K, rng):
    cfg = CodeConfig.build(N, K, L=1)
    for _ in range(50):
        _, v, x = encode_random(cfg, rng)
        np.testing.assert_array_equal(pac_sc_decode(noiseless_llrs(x), cfg), v)


def test_sc_all_zero_llrs():
    cfg = CodeConfig.build(32, 16, L=1)
    np.testing.assert_array_equal(pac_sc_decode(np.zeros(32), cfg), np.zeros(32))
    np.testing.assert_array_equal(pac_scl_decode(np.zeros(32), cfg).v_hat, np.zeros(32))


@pytest.mark.parametrize("mode", ["min_sum", "exact"])
def test_sc_equals_list_of_one(mode):
    cfg = CodeConfig.build(128, 64, L=1, llr_mode=mode)
    r = np.random.default_rng(3)
    for _ in range(1000 if mode == "min_sum" else 200):
        x = r.integers(0, 2, 128)
        llr = 2 * (1 - 2 * x + r.normal(0, 0.9, 128)) / 0.81
        np.testing.assert_array_equal(pac_sc_decode(llr, cfg), pac_scl_decode(llr, cfg).v_hat)


@pytest.mark.parametrize("N,K", [(8, 4), (32, 16), (128, 64)])
@pytest.mark.parametrize("L", [1, 4, 32])
def test_scl_noiseless_round_trip(N, K, L, rng):
    cfg = CodeConfig.build(N, K, L=L)
    for _ in range(30):
        _, v, x = encode_random(cfg, rng)
        np.testing.assert_array_equal(pac_scl_decode(noiseless_llrs(x), cfg).v_hat, v)


def test_full_list_matches_enumeration():
    cfg = CodeConfig.build(8, 4, L=16)
    r = np.random.default_rng(11)
    for _ in range(500):
        llr = r.normal(0.5, 1.5, 8) * 2
        res = pac_scl_decode(llr, cfg)
        metrics = {d: path_metric(llr, cfg, profile_map(d, cfg.A, 8))
                   for d in itertools.product((0, 1), repeat=4)}
        assert res.pms.min() == min(metrics.values())
        # every message survives, each with exactly its own metric
        got = {tuple(int(b) for b in v[list(cfg.A)]): pm for v, pm in zip(res.paths_v, res.pms)}
        assert got == metrics


def test_trace_invariants_at_128():
    cfg = CodeConfig.build(128, 64, L=8)
    r = np.random.default_rng(5)
    for _ in range(40):
        x = r.integers(0, 2, 128)
        llr = 2 * (1 - 2 * x + r.normal(0, 0.85, 128)) / 0.85**2
        res = pac_scl_decode(llr, cfg)
        # PM never decreases along the ancestry of any survivor
        for i in range(1, 128):
            for k in range(res.width_hist[i]):
                assert res.pm_hist[i, k] >= res.pm_hist[i - 1, res.parent_hist[i, k]]
        # pruning keeps the smaller half
        for k, i in enumerate(res.record_index):
            assert res.record_survivors[k].max() <= res.record_removed[k].min()
            assert res.pm_hist[i, : cfg.L].max() <= res.record_removed[k].min()
        # stored u is the precoding of stored v
        for v, u in zip(res.paths_v, res.paths_u):
            np.testing.assert_array_equal(conv(v, cfg.g), u)
        assert len(res.record_index) == cfg.K - 3
        assert set(res.record_index) == set(cfg.A[3:])
        assert res.width_hist.max() <= cfg.L


@pytest.mark.parametrize("L,expected", [(1, 64), (2, 63), (32, 59), (128, 57)])
def test_record_count(L, expected):
    cfg = CodeConfig.build(128, 64, L=L)
    res = pac_scl_decode(np.random.default_rng(0).normal(1, 1, 128), cfg)
    assert len(res.records) == expected == cfg.K - int(math.log2(L))


def test_no_pruning_keeps_every_prefix():
    cfg = CodeConfig.build(16, 8, L=16)
    res = pac_scl_decode(np.random.default_rng(9).normal(0, 2, 16), cfg)
    for i in range(16):
        k = int(cfg.info_mask[: i + 1].sum())
        if 2**k <= cfg.L:
            prefixes = survivor_prefixes(res, i, cfg.info_mask)
            assert len(prefixes) == 2**k
            assert {tuple(p[j] for j in cfg.A if j <= i) for p in prefixes} == set(
                itertools.product((0, 1), repeat=k))


def test_list_inclusion_does_not_hold_in_general():
    # A larger list may drop a prefix a smaller list keeps: the extra paths
    # it carries can spawn two children that both beat the smaller list's pick.
    found = None
    for seed in range(200):
        llr = np.random.default_rng(seed).normal(1, 1.3, 32) * 1.5
        a = CodeConfig.build(32, 16, L=1)
        b = CodeConfig.build(32, 16, L=2)
        ra, rb = pac_scl_decode(llr, a), pac_scl_decode(llr, b)
        for i in range(32):
            if not survivor_prefixes(ra, i, a.info_mask) <= survivor_prefixes(rb, i, b.info_mask):
                found = (seed, i)
                break
        if found:
            break
    assert found is not None


def test_select_survivors_partition():
    pms = np.array([3.0, 1.0, 1.0, 0.5, 4.0, 2.0, 0.0, 2.0])
    kept, order = select_survivors(pms, 4, False)
    flipped, _ = select_survivors(pms, 4, True)
    np.testing.assert_array_equal(kept, [1, 2, 3, 6])
    np.testing.assert_array_equal(flipped, [0, 4, 5, 7])
    np.testing.assert_array_equal(order, [6, 3, 1, 2, 5, 7, 0, 4])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 5).flatmap(
    lambda e: st.lists(st.floats(0, 50, allow_nan=False), min_size=2 ** (e + 1), max_size=2 ** (e + 1))))
def test_inverted_selection_is_complement_and_involution(pms):
    pms = np.array(pms)
    L = len(pms) // 2
    kept, _ = select_survivors(pms, L, False)
    flipped, _ = select_survivors(pms, L, True)
    assert set(kept).isdisjoint(flipped)
    assert set(kept) | set(flipped) == set(range(2 * L))
    # complementing the inverted selection gives back standard pruning
    assert set(range(2 * L)) - set(flipped) == set(kept)
    assert pms[kept].max() <= pms[flipped].min()


def test_trace_lines_format():
    cfg = CodeConfig.build(8, 4, L=2)
    res = pac_scl_decode(np.array([1.0, -2, 0.5, 3, -1, 2, 0.25, 1]), cfg)
    lines = res.trace_lines(cfg.info_mask)
    assert len(lines) == 8
    assert lines[0].startswith("0 frozen ")
    assert lines[3].split()[1] == "info"
    assert len(lines[-1].split()[2].split(",")) == 2


def test_wrong_llr_length():
    with pytest.raises(ValueError):
        run_list_kernel(np.zeros(7), CodeConfig.build(8, 4), NO_FLIP)
