"""Winning-hand test and decomposition enumeration.

A hand with ``k`` fixed melds is complete when its concealed tiles split into
``4 - k`` melds (pongs or chows) and one pair.  Seven pairs is not a win.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .tiles import Hand, Tile

Triple = Tuple[Tile, Tile, Tile]


@dataclass(frozen=True, order=True)
class Decomposition:
    melds: Tuple[Triple, ...]
    eye: Tuple[Tile, Tile]

    def __str__(self) -> str:
        parts = ["".join(map(str, m)) for m in self.melds]
        return "".join(f"({p})" for p in parts) + "(" + "".join(map(str, self.eye)) + ")"


@lru_cache(maxsize=None)
def suit_decomposable(vec: Tuple[int, ...], with_pair: bool) -> bool:
    """Can the 9 rank counts of one suit be split into melds, plus one pair if asked?"""
    total = sum(vec)
    if total % 3 != (2 if with_pair else 0):
        return False
    if total == 0:
        return True
    i = next(r for r, c in enumerate(vec) if c)
    v = list(vec)
    if with_pair and v[i] >= 2:
        v[i] -= 2
        if suit_decomposable(tuple(v), False):
            return True
        v[i] += 2
    if v[i] >= 3:
        v[i] -= 3
        if suit_decomposable(tuple(v), with_pair):
            return True
        v[i] += 3
    if i <= 6 and v[i + 1] and v[i + 2]:
        v[i] -= 1
        v[i + 1] -= 1
        v[i + 2] -= 1
        if suit_decomposable(tuple(v), with_pair):
            return True
    return False


def counts_complete(counts: Sequence[int]) -> bool:
    """Completeness test on a 27-entry count vector (3m+2 tiles for some m)."""
    pair_suit = -1
    for colour in range(3):
        s = sum(counts[9 * colour : 9 * colour + 9])
        r = s % 3
        if r == 1:
            return False
        if r == 2:
            if pair_suit >= 0:
                return False
            pair_suit = colour
    if pair_suit < 0:
        return False
    return all(
        suit_decomposable(tuple(counts[9 * c : 9 * c + 9]), c == pair_suit) for c in range(3)
    )


def _check_size(hand: Hand) -> None:
    expected = 14 - 3 * hand.melds_fixed
    if len(hand.tiles) != expected:
        raise ValueError(f"completeness needs {expected} concealed tiles, got {len(hand.tiles)}")


def is_complete(hand: Hand) -> bool:
    _check_size(hand)
    return counts_complete(hand.counts())


def decompositions(hand: Hand) -> List[Decomposition]:
    """All decompositions of a complete hand, melds sorted, duplicates removed."""
    _check_size(hand)
    counts = list(hand.counts())
    found = set()
    melds: List[Triple] = []

    def search(eye) -> None:
        i = next((k for k, c in enumerate(counts) if c), None)
        if i is None:
            if eye is not None:
                found.add(Decomposition(tuple(sorted(melds)), eye))
            return
        t = Tile.from_index(i)
        if eye is None and counts[i] >= 2:
            counts[i] -= 2
            search((t, t))
            counts[i] += 2
        if counts[i] >= 3:
            counts[i] -= 3
            melds.append((t, t, t))
            search(eye)
            melds.pop()
            counts[i] += 3
        if t.rank <= 7 and counts[i + 1] and counts[i + 2]:
            for k in (i, i + 1, i + 2):
                counts[k] -= 1
            melds.append((t, Tile.from_index(i + 1), Tile.from_index(i + 2)))
            search(eye)
            melds.pop()
            for k in (i, i + 1, i + 2):
                counts[k] += 1

    search(None)
    return sorted(found)
