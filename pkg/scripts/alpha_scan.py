"""Sensitivity of PAC-SCLF (128, 64), L = 32 to the confidence exponent alpha."""
import argparse

from pacflip import CodeConfig
from pacflip.sim import MinFrameErrors, run_sweep

p = argparse.ArgumentParser()
p.add_argument("--alphas", default="1.0,1.125,1.25,1.375,1.5")
p.add_argument("--snr", type=float, default=2.0)
p.add_argument("--list", type=int, default=32)
p.add_argument("--min-errors", type=int, default=200)
p.add_argument("--seed", type=int, default=1)
args = p.parse_args()

for alpha in (float(a) for a in args.alphas.split(",")):
    cfg = CodeConfig.build(128, 64, L=args.list, T=5, alpha=alpha)
    (row,) = run_sweep(cfg, [args.snr], MinFrameErrors(args.min_errors), args.seed, "sclf")
    print(f"alpha={alpha:<6g} fer={row.fer:.4e} [{row.ci_lo:.3e}, {row.ci_hi:.3e}] "
          f"attempts={row.mean_attempts:.3f}", flush=True)
