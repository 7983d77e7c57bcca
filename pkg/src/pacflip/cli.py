"""``pac-sim`` command line: FER/BER sweeps written as CSV + JSON manifest."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import platform
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .channel import add_awgn, bpsk_modulate, channel_llr, compute_sigma
from .codec import pac_encode, profile_map
from .config import CodeConfig, ParameterError
from .list_decoder import run_list_kernel
from .precoder import parse_taps
from .sim import DECODERS, FixedTrials, MinFrameErrors, run_sweep, trial_rng

log = logging.getLogger("pacflip")

CSV_COLUMNS = ("snr_db", "trials", "frame_errors", "bit_errors", "fer", "ber",
               "ci_lo", "ci_hi", "mean_attempts", "wall_seconds")


def parse_snr(text: str) -> list[float]:
    """``start:step:stop`` (inclusive) or a comma separated list."""
    if ":" in text:
        start, step, stop = (float(x) for x in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("SNR step must be positive")
        count = int(round((stop - start) / step)) + 1
        return [round(start + k * step, 10) for k in range(max(count, 0))]
    return [float(x) for x in text.split(",") if x.strip()]


def write_csv(rows, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in rows:
            d = asdict(r)
            w.writerow([d[c] for c in CSV_COLUMNS])


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(fh)]


GNUPLOT = """set terminal pngcairo size 800,600
set output '{png}'
set datafile separator ','
set logscale y
set grid
set xlabel 'SNR (dB)'
set ylabel 'FER'
set title '{title}'
plot '{csv}' skip 1 using 1:5:7:8 with yerrorlines title '{label}'
"""


def write_trace(cfg, args, snr_list, path: Path) -> None:
    with open(path, "w") as fh:
        fh.write("# snr_db trial index kind survivor_pms\n")
        for snr in snr_list:
            for k in range(args.trace_trials):
                rng = trial_rng(args.seed, k)
                d = rng.integers(0, 2, cfg.K, dtype=np.uint8)
                obs = add_awgn(bpsk_modulate(pac_encode(d, cfg)), compute_sigma(cfg.rate, snr), rng,
                               noiseless=args.noiseless)
                res = run_list_kernel(channel_llr(obs), cfg)
                for line in res.trace_lines(cfg.info_mask):
                    fh.write(f"{snr} {k} {line}\n")


def cmd_sweep(args) -> int:
    cfg = CodeConfig.build(args.n, args.k, g=parse_taps(args.g), L=args.list, alpha=args.alpha,
                           T=args.flips, llr_mode=args.llr_mode)
    snr_list = parse_snr(args.snr)
    stop = FixedTrials(args.trials) if args.trials else MinFrameErrors(args.min_errors, args.max_trials)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)

    def progress(row):
        log.info("snr=%.3f trials=%d errors=%d fer=%.4g (%.1fs)", row.snr_db, row.trials,
                 row.frame_errors, row.fer, row.wall_seconds)

    rows = run_sweep(cfg, snr_list, stop, args.seed, args.decoder, args.workers, args.noiseless,
                     progress=progress)
    write_csv(rows, out)
    manifest = {
        "version": __version__,
        "command": "sweep",
        "code": {"N": cfg.N, "K": cfg.K, "A": list(cfg.A), "profile": args.profile, "g": list(cfg.g)},
        "decoder": {"name": args.decoder, "L": cfg.L, "alpha": cfg.alpha, "T": cfg.T,
                    "llr_mode": cfg.llr_mode},
        "snr_db": snr_list,
        "stop_rule": asdict(stop) | {"kind": type(stop).__name__},
        "seed": args.seed,
        "workers": args.workers,
        "noiseless": args.noiseless,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "csv": out.name,
    }
    out.with_suffix(".json").write_text(json.dumps(manifest, indent=2) + "\n")
    if args.gnuplot:
        label = f"PAC-{args.decoder.upper()} L={cfg.L}" + (f" T={cfg.T}" if args.decoder == "sclf" else "")
        out.with_suffix(".gp").write_text(GNUPLOT.format(
            png=out.with_suffix(".png").name, csv=out.name, label=label,
            title=f"PAC ({cfg.N},{cfg.K})"))
    if args.trace:
        write_trace(cfg, args, snr_list, Path(args.trace))
    for r in rows:
        print(f"{r.snr_db:6.2f} dB  trials={r.trials:<9d} fe={r.frame_errors:<6d} fer={r.fer:.4e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pac-sim", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="Monte Carlo FER/BER sweep over SNR points")
    s.add_argument("--n", type=int, default=128, help="block length N")
    s.add_argument("--k", type=int, default=64, help="message length K")
    s.add_argument("--profile", choices=["rm"], default="rm")
    s.add_argument("--g", default="133", help="taps: octal (133), bit list (1,0,1,1,0,1,1) or literal6")
    s.add_argument("--list", type=int, default=32, help="list size L")
    s.add_argument("--decoder", choices=DECODERS, default="scl")
    s.add_argument("--flips", type=int, default=5, help="max bit-flip attempts T")
    s.add_argument("--alpha", type=float, default=1.25)
    s.add_argument("--llr-mode", choices=["min_sum", "exact"], default="min_sum")
    s.add_argument("--snr", default="1.0:0.25:3.0", help="start:step:stop or comma list, dB")
    s.add_argument("--min-errors", type=int, default=200)
    s.add_argument("--max-trials", type=int, default=10_000_000)
    s.add_argument("--trials", type=int, default=0, help="fixed trial count (overrides --min-errors)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--noiseless", action="store_true", help="skip the noise (debug)")
    s.add_argument("--out", default="results.csv")
    s.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script")
    s.add_argument("--trace", help="write per-bit list traces to this file")
    s.add_argument("--trace-trials", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"pac-sim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
