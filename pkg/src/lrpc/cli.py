"""Command-line interface: ``simulate``, ``bound``, ``keygen`` and ``decode``."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .bounds import union_bound
from .code import CodeParams, LrpcCode, keygen
from .decoder import decode
from .errors import ConstructionError, ParameterError
from .field import Field
from .simulate import SimConfig, keygen_rng, run_campaign, write_csv

EXIT_OK, EXIT_CONSTRUCTION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _modulus(text: str) -> tuple[int, ...] | int:
    # "1,1,0,1" (low-to-high coefficients) or an integer encoding such as 0b1011 / 11
    try:
        if "," in text:
            return tuple(int(c) for c in text.split(","))
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad modulus {text!r}") from None


def _field(args) -> Field:
    mod = args.modulus
    if isinstance(mod, int):
        mod = tuple((mod // args.q**i) % args.q for i in range(args.m + 1))
    return Field(args.q, args.m, mod)


def _params(args) -> CodeParams:
    return CodeParams(args.n, args.k, args.lam, _field(args), args.u)


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("code parameters")
    g.add_argument("--q", type=int, default=2, help="base field size (prime)")
    g.add_argument("--m", type=int, default=30, help="extension degree")
    g.add_argument("--modulus", type=_modulus, default=None,
                   help="defining polynomial, low-to-high coefficients 'c0,c1,...,cm' or integer encoding")
    g.add_argument("--lambda", dest="lam", type=int, default=2, help="rank of the parity-check support")
    g.add_argument("--n", type=int, default=32, help="component code length")
    g.add_argument("--k", type=int, default=16, help="component code dimension")
    g.add_argument("--u", type=int, default=1, help="interleaving order")


def _add_t_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-min", type=int, default=0)
    p.add_argument("--t-max", type=int, default=9)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_simulate(args) -> int:
    params = _params(args)
    code = None
    if args.code:
        with open(args.code) as fh:
            code = LrpcCode.loads(fh.read())
        params = code.params
    cfg = SimConfig(
        params=params,
        t_values=list(range(args.t_min, args.t_max + 1)),
        stop_failures=args.stop_failures,
        max_trials=args.max_trials,
        seed=args.seed,
        workers=args.workers,
    )
    out, close = _open_out(args.out)
    try:
        write_csv(run_campaign(cfg, code), out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_bound(args) -> int:
    params = _params(args)
    out, close = _open_out(args.out)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t", "term_product", "term_intersection", "term_syndrome", "union"])
        for t in range(args.t_min, args.t_max + 1):
            b = union_bound(params, t)
            w.writerow([t, repr(b.term_product), repr(b.term_intersection), repr(b.term_syndrome), repr(b.union)])
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_keygen(args) -> int:
    code = keygen(_params(args), keygen_rng(args.seed), max_attempts=args.max_attempts)
    out, close = _open_out(args.out)
    try:
        out.write(json.dumps(code.to_dict(), indent=1) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def _parse_word(code: LrpcCode, raw) -> list[int]:
    f = code.params.field
    word = []
    for x in raw:
        # integer encoding or low-to-high coefficient list
        if not isinstance(x, (int, list)) or isinstance(x, bool):
            raise ParameterError(f"cannot read field element {x!r}")
        word.append(f(x).value)
    return word


def cmd_decode(args) -> int:
    with open(args.code) as fh:
        code = LrpcCode.loads(fh.read())
    with open(args.received) as fh:
        raw = json.load(fh)
    if isinstance(raw, dict):
        raw = raw["received"]
    y = _parse_word(code, raw)
    res = decode(code, y)
    report = {
        "success": res.success,
        "reason": None if res.success else res.reason.value,
        "syndrome_space_dim": res.syndrome_space.dim,
        "support_dim": res.support.dim,
        "codeword": list(res.codeword) if res.success else None,
        "error": list(res.error) if res.success else None,
    }
    out, close = _open_out(args.out)
    try:
        out.write(json.dumps(report) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrpc-sim", description="Interleaved LRPC decoding toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte-Carlo decoding failure rate per error rank")
    _add_code_flags(p)
    _add_t_flags(p)
    p.add_argument("--stop-failures", type=int, default=100)
    p.add_argument("--max-trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--code", help="serialised code to use instead of drawing one from --seed")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bound", help="union bound on the decoding failure rate per error rank")
    _add_code_flags(p)
    _add_t_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("keygen", help="draw a code and write it as JSON")
    _add_code_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("decode", help="decode one received word with a serialised code")
    p.add_argument("--code", required=True)
    p.add_argument("--received", required=True,
                   help="JSON list of field elements (integer encodings or coefficient lists)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (ParameterError, UsageError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
