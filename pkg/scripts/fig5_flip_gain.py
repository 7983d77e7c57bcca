"""PAC-SCL vs PAC-SCLF at L = 32 and PAC-SCL at L = 128, with FER = 1e-2 crossings."""
import argparse
from pathlib import Path

from pacflip import CodeConfig
from pacflip.cli import parse_snr, write_csv
from pacflip.sim import MinFrameErrors, fer_crossing, run_sweep

p = argparse.ArgumentParser()
p.add_argument("--snr", default="1.25:0.25:2.75")
p.add_argument("--flips", type=int, default=5)
p.add_argument("--alpha", type=float, default=1.25)
p.add_argument("--min-errors", type=int, default=200)
p.add_argument("--max-trials", type=int, default=2_000_000)
p.add_argument("--seed", type=int, default=1)
p.add_argument("--workers", type=int, default=1)
p.add_argument("--outdir", default="results/fig5")
args = p.parse_args()

outdir = Path(args.outdir)
outdir.mkdir(parents=True, exist_ok=True)
runs = [("scl", 32), ("sclf", 32), ("scl", 128)]
crossings = {}
for decoder, L in runs:
    cfg = CodeConfig.build(128, 64, L=L, T=args.flips, alpha=args.alpha)
    rows = run_sweep(cfg, parse_snr(args.snr), MinFrameErrors(args.min_errors, args.max_trials),
                     args.seed, decoder, args.workers,
                     progress=lambda r: print(f"{decoder} L={L} {r.snr_db:5.2f} dB fer={r.fer:.3e} "
                                              f"attempts={r.mean_attempts:.3f} ({r.trials})", flush=True))
    write_csv(rows, outdir / f"{decoder}_L{L}.csv")
    try:
        crossings[decoder, L] = fer_crossing(rows)
    except ValueError:
        crossings[decoder, L] = float("nan")

for key, x in crossings.items():
    print(f"{key[0]:>4s} L={key[1]:<4d} FER=1e-2 at {x:.3f} dB")
print(f"flip gain at L=32: {crossings['scl', 32] - crossings['sclf', 32]:.3f} dB")
print(f"SCLF L=32 vs SCL L=128: {crossings['sclf', 32] - crossings['scl', 128]:+.3f} dB")
