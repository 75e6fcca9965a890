"""Command-line front end.

Every subcommand is batch-only and deterministic: identical argv produces
byte-identical output (fixed basis orders, sorted JSON keys).  Exit codes:
0 success, 1 precondition violation, 2 internal invariant failure, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InternalInvariantError, PreconditionError
from .functor import (
    classification_manifest,
    classify_simples,
    f_of_simple,
    f_of_verma,
    segments_from_pair,
)
from .hecke_modules import (
    FinModule,
    central_character,
    composition_factors,
    parse_segments,
    induce_standard,
)
from .kl_engine import kl_polynomial
from .root_weyl import parse_permutation, parse_weight
from .verify import SUITES, run_suite

USAGE_EXIT = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we reserve 2
        raise _UsageError(message)


def _module_payload(mod: FinModule) -> dict:
    payload = json.loads(mod.to_json())
    payload["basis_labels"] = list(mod.basis_labels)
    return payload


def _emit(data: dict, fmt: str, text_lines) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True)
    return "\n".join(text_lines(data))


def _cmd_kl(args) -> str:
    x = parse_permutation(args.x, args.n)
    y = parse_permutation(args.y, args.n)
    p = kl_polynomial(x, y)
    data = {"x": list(x.images), "y": list(y.images), "coeffs": list(p.coeffs), "value": str(p)}
    return _emit(data, args.format, lambda d: [d["value"]])


def _cmd_standard(args) -> str:
    delta = parse_segments(args.segments)
    mod = induce_standard(delta)
    data = {"segments": str(delta), "module": _module_payload(mod)}
    return _emit(
        data,
        args.format,
        lambda d: [
            f"segments: {d['segments']}",
            f"dim: {d['module']['dim']}",
            "basis: " + " ".join(d["module"]["basis_labels"]),
        ],
    )


def _cmd_functor(args) -> str:
    lam = parse_weight(args.lam)
    if args.which == "verma":
        mu = parse_weight(args.mu)
        mod = f_of_verma(lam, mu, args.ell)
        delta = segments_from_pair(lam, mu, args.ell)
        data = {
            "lambda": str(lam),
            "mu": str(mu),
            "ell": args.ell,
            "segments": str(delta) if delta is not None else None,
            "module": _module_payload(mod),
        }
    else:
        w = parse_permutation(args.w, lam.rank)
        mod = f_of_simple(lam, w)
        data = {
            "lambda": str(lam),
            "w": list(w.images),
            "module": _module_payload(mod),
        }
    return _emit(data, args.format, lambda d: [f"dim: {d['module']['dim']}"])


def _cmd_classify(args) -> str:
    lam = parse_weight(args.lam)
    manifest = json.loads(classification_manifest(lam))
    if args.format == "json":
        return json.dumps(manifest, sort_keys=True)
    lines = [f"lambda: {lam}", f"classes: {manifest['count']}"]
    for entry in manifest["simples"]:
        word = " ".join(f"s{i}" for i in entry["word"]) or "e"
        lines.append(f"  w={entry['w']} ({word}) dim={entry['dim']}")
    return "\n".join(lines)


def _cmd_decompose(args) -> str:
    with open(args.module) as fh:
        mod = FinModule.from_json(fh.read())
    factors = composition_factors(mod)
    entries = [
        {
            "dim": f.dim,
            "multiplicity": m,
            "central_character": [str(c) for c in central_character(f)],
        }
        for f, m in sorted(factors, key=lambda fm: (fm[0].dim, fm[0].to_json()))
    ]
    data = {"dim": mod.dim, "factors": entries}
    return _emit(
        data,
        args.format,
        lambda d: [f"dim: {d['dim']}"]
        + [f"  factor dim={e['dim']} multiplicity={e['multiplicity']}" for e in d["factors"]],
    )


def _cmd_verify(args) -> str:
    results = run_suite(args.suite)
    data = {
        "suite": args.suite,
        "results": [
            {"number": r.number, "name": r.name, "ok": r.ok, "detail": r.detail}
            for r in results
        ],
        "ok": all(r.ok for r in results),
    }
    out = _emit(data, args.format, lambda d: [r.line() for r in results])
    if not data["ok"]:
        raise PreconditionError(f"verification suite {args.suite!r} failed\n{out}")
    return out


def build_parser() -> _Parser:
    parser = _Parser(prog="heckelie", description=__doc__)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    fmt_parent = argparse.ArgumentParser(add_help=False)
    fmt_parent.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[fmt_parent], **kwargs)

    p = add_parser("kl", help="Kazhdan-Lusztig polynomial P_{x,y}")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=_cmd_kl)

    p = add_parser("standard", help="standard module from a segment sequence")
    p.add_argument("--segments", required=True)
    p.set_defaults(run=_cmd_standard)

    p = add_parser("functor", help="functor images of Verma/simple modules")
    which = p.add_subparsers(dest="which", required=True, parser_class=_Parser)
    v = which.add_parser("verma", parents=[fmt_parent])
    v.add_argument("--lambda", dest="lam", required=True)
    v.add_argument("--mu", required=True)
    v.add_argument("--ell", type=int, required=True)
    v.set_defaults(run=_cmd_functor)
    s = which.add_parser("simple", parents=[fmt_parent])
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--w", required=True)
    s.set_defaults(run=_cmd_functor)

    p = add_parser("classify", help="simples with a fixed central character")
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(run=_cmd_classify)

    p = add_parser("decompose", help="composition factors of a module JSON file")
    p.add_argument("--module", required=True)
    p.set_defaults(run=_cmd_decompose)

    p = add_parser("verify", help="run acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.set_defaults(run=_cmd_verify)

    return parser


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        print(args.run(args))
        return 0
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
