"""PAC codes with list and bit-flipping list decoding."""
from .channel import add_awgn, bpsk_modulate, channel_llr, compute_sigma
from .codec import demapping, pac_encode, polar_transform, profile_map, rm_profile
from .config import CodeConfig, ParameterError
from .flip_decoder import FlipSet, confidence, gen_flip, pac_sclf_attempt, pac_sclf_decode
from .list_decoder import calc_pm, llr_f, llr_g, pac_sc_decode, pac_scl_decode
from .precoder import ConvState, conv, deconv, subconv
from .sim import ml_oracle_decode, run_sweep, run_trial

__version__ = "0.1.0"
