import numpy as np
import pytest

from pacflip import CodeConfig
from pacflip.codec import pac_encode, profile_map
from pacflip.channel import bpsk_modulate


def noiseless_llrs(x, scale=4.0):
    return scale * bpsk_modulate(x)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture(scope="session")
def cfg_128():
    return CodeConfig.build(128, 64, L=32)


def encode_random(cfg, rng):
    d = rng.integers(0, 2, cfg.K, dtype=np.uint8)
    return d, profile_map(d, cfg.A, cfg.N), pac_encode(d, cfg)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
