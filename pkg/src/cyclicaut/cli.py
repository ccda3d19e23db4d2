"""Command line: classify, equiv, table2, brand.

Exit codes are the only success channel; stdout carries data, stderr diagnostics.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .arithmetic import PrimePowerLength
from .autgroup import classify_object, table2
from .brand import (
    DEFAULT_ENUMERATION_CAP,
    QGroupId,
    compose,
    enumerate_group,
    identity,
    invert,
    membership,
    polyperm,
)
from .codes import DEFAULT_BRUTE_FORCE_CAP, code_from_json
from .equivalence import equivalent
from .errors import CapExceeded, CyclicAutError, PreconditionError, UnsupportedLength
from .graphs import graph_from_json

log = logging.getLogger("cyclicaut")

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


@dataclass(frozen=True)
class Config:
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.enumeration_cap <= 0 or self.brute_force_cap <= 0:
            raise ValueError("caps must be positive")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")


def load_descriptor(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    data = json.loads(text)
    if not isinstance(data, dict) or "n" not in data:
        raise ValueError("descriptor must be a JSON object with an 'n' field")
    if "connection" in data or "edges" in data:
        return graph_from_json(data)
    if "q" in data:
        return code_from_json(data)
    raise ValueError("descriptor is neither a code ('q') nor a graph ('connection')")


def _emit(cfg: Config, text: str, payload: dict) -> None:
    print(json.dumps(payload) if cfg.fmt == "json" else text)


def cmd_classify(cfg: Config, args: argparse.Namespace) -> int:
    try:
        obj = load_descriptor(args.descriptor)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read descriptor: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cls = classify_object(obj, distance_cap=cfg.brute_force_cap)
    except UnsupportedLength as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(cfg, str(cls), cls.to_json())
    return EXIT_OK


def cmd_equiv(cfg: Config, args: argparse.Namespace) -> int:
    try:
        a = load_descriptor(args.first)
        b = load_descriptor(args.second)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read descriptor: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = equivalent(a, b, cap=cfg.enumeration_cap, jobs=cfg.jobs)
    except (UnsupportedLength, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(cfg, str(result), result.to_json())
    return EXIT_OK if result.equivalent else EXIT_NO


def cmd_table2(cfg: Config, args: argparse.Namespace) -> int:
    cells = table2()
    if cfg.fmt == "json":
        rows = [
            {
                "q": c.q,
                "p": c.p,
                "delta": c.delta,
                "b": c.b,
                "expected": {"name": c.expected[0], "order": c.expected[1]},
                "computed": {"name": c.computed[0], "order": c.computed[1]},
                "match": c.matches,
            }
            for c in cells
        ]
        print(json.dumps(rows))
    else:
        print(f"{'q':>3} {'p':>3} {'d':>2} {'b':>1}  {'computed':<16} {'expected':<16} status")
        for c in cells:
            status = "ok" if c.matches else f"MISMATCH (orders {c.computed[1]} vs {c.expected[1]})"
            print(f"{c.q:>3} {c.p:>3} {c.delta:>2} {c.b:>1}  {c.computed[0]:<16} {c.expected[0]:<16} {status}")
        bad = sum(not c.matches for c in cells)
        print(f"{len(cells) - bad}/{len(cells)} cells match", file=sys.stderr)
    return EXIT_OK if all(c.matches for c in cells) else EXIT_NO


def _brand_check(gid: QGroupId, samples: int, rng: random.Random) -> list[str]:
    choices = gid.coefficient_choices()
    sample = [polyperm(gid.length, [rng.choice(c) for c in choices]) for _ in range(samples)]
    failures = []
    e = identity(gid.length)
    for f in sample:
        g = rng.choice(sample)
        if not membership(compose(f, g), gid):
            failures.append(f"closure: {f} o {g}")
        inv = invert(f)
        if not membership(inv, gid) or compose(f, inv).image != e.image:
            failures.append(f"inverse: {f}")
        if compose(f, e).image != f.image:
            failures.append(f"identity: {f}")
    return failures


def cmd_brand(cfg: Config, args: argparse.Namespace) -> int:
    try:
        length = PrimePowerLength(args.p, args.m)
        full = QGroupId(length, args.n)
        restricted = QGroupId(length, args.n, restricted=True)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.action == "count":
            out = {}
            for gid in (full, restricted):
                counted = sum(1 for _ in enumerate_group(gid, cap=cfg.enumeration_cap))
                out[gid.name] = {"formula": gid.cardinality(), "enumerated": counted}
            text = "\n".join(f"|{k}| formula {v['formula']}, enumerated {v['enumerated']}" for k, v in out.items())
            _emit(cfg, text, out)
            ok = all(v["formula"] == v["enumerated"] for v in out.values())
            return EXIT_OK if ok else EXIT_NO
        if args.action == "list":
            gid = restricted if args.restricted else full
            for f in enumerate_group(gid, cap=cfg.enumeration_cap):
                print(json.dumps({"coeffs": list(f.coeffs)}) if cfg.fmt == "json" else str(f))
            return EXIT_OK
        gid = restricted if args.restricted else full
        failures = _brand_check(gid, args.samples, random.Random(cfg.seed))
        for msg in failures:
            print(f"failure: {msg}", file=sys.stderr)
        _emit(cfg, f"{gid}: {args.samples} samples, {len(failures)} failures", {"group": str(gid), "samples": args.samples, "failures": failures})
        return EXIT_OK if not failures else EXIT_NO
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="enumeration cap")
    common.add_argument("--brute-force-cap", type=int, default=argparse.SUPPRESS, help="codeword budget for distance checks")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker threads for searches")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="cyclicaut", parents=[common], description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="automorphism group of a code or circulant graph")
    p.add_argument("descriptor", help="JSON descriptor file, or - for stdin")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two cyclic objects")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("table2", parents=[common], help="recompute the BCH automorphism group table")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("brand", parents=[common], help="inspect the groups Q^n and Q_1^n on Z_{p^m}")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("action", choices=("count", "list", "check"))
    p.add_argument("--restricted", action="store_true", help="use Q_1^n for list/check")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_brand)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        cfg = Config(
            enumeration_cap=getattr(args, "cap", DEFAULT_ENUMERATION_CAP),
            brute_force_cap=getattr(args, "brute_force_cap", DEFAULT_BRUTE_FORCE_CAP),
            fmt=getattr(args, "fmt", "text"),
            seed=getattr(args, "seed", 0),
            jobs=getattr(args, "jobs", 1),
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(cfg, args)
    except CyclicAutError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
