"""Command-line entry point: ``bchchain {chain,encode,decode,bandwidth,simulate}``.

Exit codes: 0 success, 2 usage or validation error, 3 decode failure.
Human-readable output goes to stdout; CSV only to the ``-o`` path.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from .bandwidth import LinkBudget, ModulationScheme, bandwidth_table, format_table, table_to_csv
from .bch import construct_bch, encode_systematic
from .binpoly import format_bitstring, parse_bitstring
from .chain import NonEmbeddedSupport, derive_code, rate_table
from .codec import UnknownSyndrome, _decode_int, decoder_for, trace_decode_via_chain
from .interweave import ConfigError, format_metrics, load_config, metrics_to_json, run_simulation, write_event_log

EXIT_OK, EXIT_USAGE, EXIT_DECODE = 0, 2, 3


class UsageError(Exception):
    pass


def _parse_bch_spec(text: str) -> dict:
    aliases = {"s": "s", "c": "c", "d": "delta", "delta": "delta", "p": "prim_poly", "prim": "prim_poly"}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad --bch item {part!r}; expected key=value")
        k, v = (x.strip() for x in part.split("=", 1))
        if k not in aliases:
            raise UsageError(f"unknown --bch key {k!r}")
        out[aliases[k]] = v if aliases[k] == "prim_poly" else int(v)
    if "s" not in out:
        raise UsageError("--bch needs s=<field degree>")
    return out


def _seed(s, c, delta, prim_poly=None):
    try:
        return construct_bch(s, c, delta, prim_poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    Path(path).write_text(buf.getvalue())


def _add_seed_args(p):
    p.add_argument("-s", type=int, required=True, help="field degree; n = 2^s - 1")
    p.add_argument("-c", type=int, default=1, help="BCH offset (default 1, narrow sense)")
    p.add_argument("-d", "--delta", type=int, default=3, help="designed distance")
    p.add_argument("--prim-poly", help="primitive polynomial, e.g. 1+x+x^4")


def cmd_chain(args) -> int:
    seed = _seed(args.s, args.c, args.delta, args.prim_poly)
    codes = [seed] + [derive_code(seed, j) for j in range(1, args.jmax + 1)]
    rates = rate_table(seed, args.jmax)
    if args.rates:
        print("  ".join(f"R{j}={r}" for j, r in enumerate(rates)))
    else:
        print(f"seed BCH: s={seed.s} c={seed.c} delta={seed.delta} n={seed.n} r={seed.r}")
        rows = [
            (str(code.level), code.label, code.generator.format("x" if code.level == 0 else "y"), str(r))
            for code, r in zip(codes, rates)
        ]
        header = ("j", "(N,K)", "generator", "rate")
        widths = [max(len(x[i]) for x in [header, *rows]) for i in range(4)]
        for row in [header, *rows]:
            print("  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip())
    if args.output:
        _write_csv(
            args.output,
            ["level", "length", "dimension", "generator", "rate"],
            [[c.level, c.length, c.dimension, c.generator.format(), str(r)] for c, r in zip(codes, rates)],
        )
    return EXIT_OK


def _code_at(spec: dict, level: int):
    seed = _seed(spec["s"], spec.get("c", 1), spec.get("delta", 3), spec.get("prim_poly"))
    if level < 0:
        raise UsageError("level must be >= 0")
    return seed, (seed if level == 0 else derive_code(seed, level))


def _bits(text: str, length: int, what: str) -> int:
    try:
        v = parse_bitstring(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(text.strip()) != length:
        raise UsageError(f"{what} has length {len(text.strip())}, expected {length}")
    return v


def cmd_encode(args) -> int:
    seed, code = _code_at(_parse_bch_spec(args.bch), 0)
    msg = _bits(args.message, seed.k, "message")
    word = encode_systematic(seed, format_bitstring(msg, seed.k))
    print("".join(map(str, word.tolist())))
    return EXIT_OK


def cmd_decode(args) -> int:
    spec = _parse_bch_spec(args.bch)
    if args.via_chain is not None:
        seed, code = _code_at(spec, args.via_chain)
        if args.via_chain < 1:
            raise UsageError("--via-chain needs a level >= 1")
        received = _bits(args.received, seed.n, "received word")
        res = trace_decode_via_chain(format_bitstring(received, seed.n), code)
        fields = ["received", "lifted", "syndrome", "leader", "corrected", "projected"]
        values = [getattr(res, f) for f in fields]
    else:
        seed, code = _code_at(spec, args.level)
        received = _bits(args.received, code.length, "received word")
        H, table = decoder_for(code)
        corrected, s, e = _decode_int(received, H, table)
        fields = ["received", "syndrome", "leader", "corrected"]
        values = [
            format_bitstring(received, code.length),
            format_bitstring(s, H.redundancy),
            format_bitstring(e, code.length),
            format_bitstring(corrected, code.length),
        ]
    width = max(map(len, fields))
    for f, v in zip(fields, values):
        print(f"{f.ljust(width)}  {v}")
    if args.output:
        _write_csv(args.output, fields, [values])
    return EXIT_OK


def _parse_mods(text: str) -> list[ModulationScheme]:
    try:
        return [ModulationScheme(int(x)) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --m list {text!r}: {exc}") from None


def cmd_bandwidth(args) -> int:
    seed = _seed(args.s, args.c, args.delta, args.prim_poly)
    try:
        budget = LinkBudget(Fraction(args.ru), Fraction(args.w))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = bandwidth_table(seed, args.jmax, budget, _parse_mods(args.m))
    print(f"w={args.w} R_u={args.ru} kbps, seed {seed.label}")
    print(format_table(rows, printed=args.paper_values))
    if args.output:
        Path(args.output).write_text(table_to_csv(rows))
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        config = load_config(args.config, rng_seed=args.seed, slots=args.slots)
    except (ConfigError, OSError) as exc:
        raise UsageError(f"{args.config}: {exc}") from None
    metrics, events = run_simulation(config)
    print(metrics_to_json(metrics) if args.json else format_metrics(metrics), end="\n" if args.json else "")
    if args.output:
        Path(args.output).write_text(write_event_log(events))
    if args.metrics:
        Path(args.metrics).write_text(metrics_to_json(metrics) + "\n" if args.json else format_metrics(metrics))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bchchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chain", help="list the seed code and its derived chain codes")
    _add_seed_args(p)
    p.add_argument("-j", "--jmax", type=int, default=4)
    p.add_argument("--rates", action="store_true", help="print only the rate row")
    p.add_argument("-o", "--output", help="write CSV here")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("encode", help="systematically encode a message with the seed code")
    p.add_argument("--bch", required=True, help="seed parameters, e.g. s=2,c=1,d=3")
    p.add_argument("message")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="syndrome-decode a received word")
    p.add_argument("--bch", required=True, help="seed parameters, e.g. s=2,c=1,d=3")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--via-chain", type=int, metavar="J", help="lift a length-n word into C^J and decode there")
    mode.add_argument("--level", type=int, default=0, help="decode directly in C^LEVEL (0 = seed)")
    p.add_argument("received")
    p.add_argument("-o", "--output", help="write CSV here")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bandwidth", help="bandwidth table W = w R_u / (m R)")
    _add_seed_args(p)
    p.add_argument("-j", "--jmax", type=int, default=4)
    p.add_argument("--ru", default="64", help="source rate in kbps")
    p.add_argument("--w", default="1.2", help="bandwidth expansion factor")
    p.add_argument("--m", default="1,3", help="comma-separated bits per symbol")
    p.add_argument("--paper-values", action="store_true", help="annotate with the values printed in the source tables")
    p.add_argument("-o", "--output", help="write CSV here")
    p.set_defaults(func=cmd_bandwidth)

    p = sub.add_parser("simulate", help="run the interweave simulator")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, help="RNG seed (overrides rng_seed in the config)")
    p.add_argument("--slots", type=int, help="override the slot count")
    p.add_argument("--json", action="store_true", help="emit metrics as one JSON object")
    p.add_argument("-o", "--output", help="write the event log CSV here")
    p.add_argument("--metrics", help="write the metrics summary here")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonEmbeddedSupport, UnknownSyndrome) as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
