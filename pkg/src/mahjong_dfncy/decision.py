"""Discard choice by counting available tiles that lower the deficiency."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .backends import backend
from .oracle import DEFAULT_CAP
from .tiles import MAX_COPIES, NUM_KINDS, Hand, KnowledgeBase, Tile


@dataclass(frozen=True)
class DiscardReport:
    """``values`` maps each distinct hand tile to the number of improving draws."""

    dfncy: int
    values: Tuple[Tuple[Tile, int], ...]
    chosen: Optional[Tile]

    def value(self, tile: Tile) -> int:
        return dict(self.values)[tile]

    def per_tile(self, hand: Hand) -> List[int]:
        """Values listed in hand order, one entry per physical tile."""
        table = dict(self.values)
        return [table[t] for t in hand.tiles]

    def lines(self) -> List[str]:
        out = [f"dfncy {self.dfncy}"]
        out += [f"{t} {v}" for t, v in self.values]
        out.append(f"discard {self.chosen if self.chosen is not None else 'none'}")
        return out


def _swap(hand: Hand, out: int, in_: int) -> Hand:
    counts = list(hand.counts())
    counts[out] -= 1
    counts[in_] += 1
    return Hand.from_counts(counts, hand.melds_fixed)


def discard_values(
    hand: Hand, kb: KnowledgeBase, algo: str = "block", cap: int = DEFAULT_CAP
) -> DiscardReport:
    """Score each distinct tile ``t`` by the KB copies of tiles ``t'`` whose swap helps.

    A swap ``t -> t'`` helps when the hand with ``t'`` in place of ``t`` has a
    smaller deficiency under the knowledge base less one ``t'``.  The highest
    score is chosen, ties going to the smallest tile.  A complete hand gets no
    recommendation.  Hands of either size (13-3k or 14-3k) are accepted.
    """
    fn = backend(algo, cap)
    base = fn(hand, kb)
    h = hand.counts()
    kinds = sorted({t.index for t in hand.tiles})
    if base == 0:
        return DiscardReport(0, tuple((Tile.from_index(i), 0) for i in kinds), None)
    values: Dict[int, int] = {}
    for out in kinds:
        total = 0
        for in_ in range(NUM_KINDS):
            k = kb.counts[in_]
            if in_ == out or not k or h[in_] >= MAX_COPIES:
                continue
            kb2 = list(kb.counts)
            kb2[in_] -= 1
            if fn(_swap(hand, out, in_), KnowledgeBase(tuple(kb2))) < base:
                total += k
        values[out] = total
    best = max(values.values())
    chosen = min(i for i, v in values.items() if v == best)
    return DiscardReport(
        base, tuple((Tile.from_index(i), values[i]) for i in kinds), Tile.from_index(chosen)
    )
