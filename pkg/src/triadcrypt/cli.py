"""Command-line entry point: ``triadcrypt <command> ...``."""

from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

from . import __version__, analysis
from .cipher import decrypt, encrypt_with_keys
from .errors import SumMismatchWarning, TriadCryptError
from .fileio import (
    csv_text,
    metrics_csv,
    read_keys,
    read_pgm,
    sbox_csv,
    triads_csv,
    write_keys,
    write_pgm,
    write_text,
)
from .sbox import build_sbox
from .triads import generate_triads


def cmd_encrypt(args) -> int:
    img = read_pgm(args.inp)
    cipher, keys = encrypt_with_keys(img, read_keys(args.keys))
    write_pgm(cipher, args.out)
    write_keys(keys, args.keys_out or f"{args.out}.keys")
    return 0


def cmd_decrypt(args) -> int:
    keys = read_keys(args.keys)
    if keys.S_P is None:
        print("KeyFileError: key file lacks S_P (use the file written by encrypt)", file=sys.stderr)
        return 53
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SumMismatchWarning)
        plain = decrypt(read_pgm(args.inp), keys)
    write_pgm(plain, args.out)
    for w in caught:
        print(f"SumMismatch: {w.message}", file=sys.stderr)
    return 0


def cmd_sbox(args) -> int:
    write_text(sbox_csv(build_sbox(args.p, args.t, args.s)), args.out)
    return 0


def cmd_triads(args) -> int:
    keys = read_keys(args.keys)
    write_text(triads_csv(generate_triads(keys.triad_config(args.count))), args.out)
    return 0


def _image_rows(path, pairs, seed):
    m = analysis.image_metrics(read_pgm(path), pairs=pairs, seed=seed)
    return [path, *(repr(v) for v in m.as_dict().values())]


def cmd_analyze_image(args) -> int:
    pairs = "all" if args.pairs == "all" else int(args.pairs)
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(lambda p: _image_rows(p, pairs, args.seed), args.inp))
    header = ["file", "entropy", "corr_h", "corr_d", "corr_v", "chi_square"]
    text = csv_text(rows, header)
    if args.histogram:
        hist = analysis.histogram(read_pgm(args.inp[0]))
        write_text(csv_text(enumerate(hist.tolist()), ("value", "count")), args.histogram)
    write_text(text, args.out)
    return 0


def cmd_analyze_sbox(args) -> int:
    if args.csv:
        import numpy as np

        table = np.loadtxt(args.csv, delimiter=",", dtype=np.int64)
        forward = table.T.ravel() if table.ndim == 2 else table
    else:
        forward = build_sbox(args.p, args.t, args.s).forward
    write_text(metrics_csv(analysis.sbox_metrics(forward).as_dict()), args.out)
    return 0


def cmd_compare(args) -> int:
    a, b = read_pgm(args.a), read_pgm(args.b)
    write_text(metrics_csv({"NPCR": analysis.npcr(a, b), "UACI": analysis.uaci(a, b)}), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triadcrypt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a P5 PGM image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--keys", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--keys-out", help="key file for the receiver (default: OUT.keys)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a P5 PGM cipher image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--keys", required=True, help="key file including S_P")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("sbox", help="emit the 16x16 S-box table as CSV")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sbox)

    p = sub.add_parser("triads", help="emit ordered triads as CSV")
    p.add_argument("--keys", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_triads)

    p = sub.add_parser("analyze-image", help="entropy, correlations and chi-square of images")
    p.add_argument("--in", dest="inp", nargs="+", required=True)
    p.add_argument("--pairs", default="all", help="number of sampled adjacent pairs, or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--histogram", help="also write the first image's histogram CSV here")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_analyze_image)

    p = sub.add_parser("analyze-sbox", help="NL, LAP, SAC, BIC and DAP of an S-box")
    p.add_argument("--p", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--csv", help="16x16 table as written by the sbox command")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_analyze_sbox)

    p = sub.add_parser("compare", help="NPCR and UACI between two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze-sbox" and not args.csv and None in (args.p, args.t, args.s):
        parser.error("analyze-sbox needs --csv or all of --p, --t, --s")
    try:
        return args.func(args)
    except TriadCryptError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
