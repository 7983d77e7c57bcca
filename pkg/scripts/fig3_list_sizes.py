"""FER of PAC-SCL (128, 64) for several list sizes."""
import argparse
from pathlib import Path

from pacflip import CodeConfig
from pacflip.cli import parse_snr, write_csv
from pacflip.sim import MinFrameErrors, run_sweep

p = argparse.ArgumentParser()
p.add_argument("--lists", default="1,2,8,32,128")
p.add_argument("--snr", default="1.0:0.25:3.0")
p.add_argument("--min-errors", type=int, default=200)
p.add_argument("--max-trials", type=int, default=2_000_000)
p.add_argument("--seed", type=int, default=1)
p.add_argument("--workers", type=int, default=1)
p.add_argument("--outdir", default="results/fig3")
args = p.parse_args()

outdir = Path(args.outdir)
outdir.mkdir(parents=True, exist_ok=True)
for L in (int(x) for x in args.lists.split(",")):
    cfg = CodeConfig.build(128, 64, L=L)
    rows = run_sweep(cfg, parse_snr(args.snr), MinFrameErrors(args.min_errors, args.max_trials),
                     args.seed, "scl", args.workers,
                     progress=lambda r: print(f"L={L:<4d} {r.snr_db:5.2f} dB fer={r.fer:.3e} ({r.trials})", flush=True))
    write_csv(rows, outdir / f"scl_L{L}.csv")
