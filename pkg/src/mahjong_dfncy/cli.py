"""Command-line entry point: ``mahjong-dfncy <subcommand> ...``.

Exit codes: 0 on success, 1 when ``fuzz`` finds an in-band disagreement,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .backends import ALGORITHMS, deficiency
from .bench import BenchConfig, fuzz_diff, pure_census, run_bench
from .block import kb_blocks
from .decision import discard_values
from .oracle import DEFAULT_CAP
from .tiles import INCOMPLETABLE, kb_from_hand, parse_hand, parse_kb


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _hand_and_kb(args: argparse.Namespace) -> tuple:
    text = args.hand
    if getattr(args, "melds_fixed", None) is not None:
        if ";" in text:
            raise ValueError("give fixed melds either with --melds-fixed or as ';k=N', not both")
        text += f";k={args.melds_fixed}"
    hand = parse_hand(text)
    kb = parse_kb(args.kb) if args.kb is not None else kb_from_hand(hand)
    if not kb.compatible_with(hand):
        raise ValueError("knowledge base and hand together exceed four copies of a tile")
    return hand, kb


def _add_hand_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hand", required=True, help="tiles such as B1B2B3C4..., optional ';k=N'")
    p.add_argument(
        "--kb",
        help="27 digits, optionally grouped by '|'; defaults to every tile not in the hand",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mahjong-dfncy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dfncy", help="print the deficiency, or 'incompletable'")
    _add_hand_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="block")
    p.add_argument("--melds-fixed", type=int, choices=range(5), default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle search depth")

    p = sub.add_parser("discard", help="print per-tile discard values and the chosen tile")
    _add_hand_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="block")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle search depth")

    p = sub.add_parser("blocks", help="print the knowledge-aware block partition")
    _add_hand_args(p)

    p = sub.add_parser("census", help="deficiency histogram of all pure 14-tiles")
    p.add_argument("--algo", choices=("block", "quadtree"), default="quadtree")

    p = sub.add_parser("bench", help="time quadtree and block, write CSV and a PNG chart")
    p.add_argument("--colours", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--hands", type=int, default=100)
    p.add_argument("--kbs", type=int, default=10, help="knowledge bases per hand")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True, help="CSV path; the PNG goes alongside")
    p.add_argument("--no-figure", action="store_true")

    p = sub.add_parser("fuzz", help="cross-check block, quadtree and oracle on random pairs")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _run(args: argparse.Namespace) -> List[str]:
    if args.command == "dfncy":
        hand, kb = _hand_and_kb(args)
        d = deficiency(hand, kb, args.algo, args.cap)
        return ["incompletable" if d >= INCOMPLETABLE else str(d)]
    if args.command == "discard":
        hand, kb = _hand_and_kb(args)
        return discard_values(hand, kb, args.algo, args.cap).lines()
    if args.command == "blocks":
        hand, kb = _hand_and_kb(args)
        return ["".join(str(b) for b in kb_blocks(hand, kb))]
    if args.command == "census":
        hist = pure_census(args.algo)
        return [f"{d} {n}" for d, n in hist.items()]
    if args.command == "bench":
        cfg = BenchConfig(colours=args.colours, hands=args.hands, kbs_per_hand=args.kbs, seed=args.seed)
        result = run_bench(cfg, args.out, figure=not args.no_figure)
        return result.to_csv().splitlines()
    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "fuzz":
            report = fuzz_diff(args.n, args.cap, args.seed)
            print("\n".join(report.lines()))
            return 1 if report.in_band_failures else 0
        lines = _run(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
