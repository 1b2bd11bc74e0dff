"""Tiles, hands and knowledge bases.

A tile kind is identified by ``9 * colour + rank - 1``; the 27 kinds cover the
three suits Bamboo (B), Character (C) and Dot (D).  Hands and knowledge bases
are immutable; the search modules work on the 27-entry count vectors exposed
by :meth:`Hand.counts` and :attr:`KnowledgeBase.counts`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

COLOURS = "BCD"
NUM_KINDS = 27
MAX_COPIES = 4
TOTAL_TILES = NUM_KINDS * MAX_COPIES

# Sentinel cost for a hand that cannot be completed.
INCOMPLETABLE = 100

Counts = Tuple[int, ...]


class ParseError(ValueError):
    """Raised when a hand or knowledge-base string is invalid."""


class Tile(NamedTuple):
    colour: int
    rank: int

    @property
    def index(self) -> int:
        return 9 * self.colour + self.rank - 1

    @classmethod
    def from_index(cls, index: int) -> "Tile":
        if not 0 <= index < NUM_KINDS:
            raise ValueError(f"tile index out of range: {index}")
        return _TILES[index]

    @classmethod
    def parse(cls, token: str) -> "Tile":
        if len(token) != 2 or token[0] not in COLOURS or token[1] not in "123456789":
            raise ParseError(f"malformed tile token {token!r}")
        return cls(COLOURS.index(token[0]), int(token[1]))

    def __str__(self) -> str:
        return f"{COLOURS[self.colour]}{self.rank}"


_TILES = tuple(Tile(i // 9, i % 9 + 1) for i in range(NUM_KINDS))


def tile_succ(t: Tile, step: int = 1) -> Optional[Tile]:
    """Return the tile ``step`` ranks above ``t`` in the same suit, if any."""
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    if t.rank + step > 9:
        return None
    return Tile(t.colour, t.rank + step)


def valid_sizes(melds_fixed: int) -> Tuple[int, int]:
    return 13 - 3 * melds_fixed, 14 - 3 * melds_fixed


@dataclass(frozen=True)
class Hand:
    """A sorted multiset of concealed tiles plus ``melds_fixed`` exposed melds."""

    tiles: Tuple[Tile, ...]
    melds_fixed: int = 0

    def __post_init__(self) -> None:
        tiles = tuple(sorted(Tile(*t) for t in self.tiles))
        object.__setattr__(self, "tiles", tiles)
        if not 0 <= self.melds_fixed <= 4:
            raise ValueError(f"melds_fixed must be in 0..4, got {self.melds_fixed}")
        for t in tiles:
            if not (0 <= t.colour <= 2 and 1 <= t.rank <= 9):
                raise ValueError(f"invalid tile {t!r}")
        counts = self.counts()
        worst = max(counts)
        if worst > MAX_COPIES:
            raise ValueError(f"tile {Tile.from_index(counts.index(worst))} occurs {worst} times")
        if len(tiles) not in valid_sizes(self.melds_fixed):
            raise ValueError(
                f"hand has {len(tiles)} tiles; expected one of {valid_sizes(self.melds_fixed)}"
            )

    @classmethod
    def from_counts(cls, counts: Sequence[int], melds_fixed: int = 0) -> "Hand":
        tiles = [Tile.from_index(i) for i, c in enumerate(counts) for _ in range(c)]
        return cls(tuple(tiles), melds_fixed)

    def counts(self) -> Counts:
        out = [0] * NUM_KINDS
        for t in self.tiles:
            out[t.index] += 1
        return tuple(out)

    def count(self, t: Tile) -> int:
        return self.tiles.count(t)

    @property
    def is_full(self) -> bool:
        """True for a 14-3k hand, False for a 13-3k hand."""
        return len(self.tiles) == 14 - 3 * self.melds_fixed

    @property
    def colours(self) -> frozenset:
        return frozenset(t.colour for t in self.tiles)

    def __len__(self) -> int:
        return len(self.tiles)

    def __str__(self) -> str:
        return format_hand(self)


@dataclass(frozen=True)
class KnowledgeBase:
    """Counts of each tile kind the agent believes to be available."""

    counts: Counts

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != NUM_KINDS:
            raise ValueError(f"knowledge base needs {NUM_KINDS} counts, got {len(counts)}")
        if any(not 0 <= c <= MAX_COPIES for c in counts):
            raise ValueError("knowledge-base counts must lie in 0..4")

    @classmethod
    def empty(cls) -> "KnowledgeBase":
        return cls((0,) * NUM_KINDS)

    def __getitem__(self, t: Tile) -> int:
        return self.counts[t.index]

    def total(self) -> int:
        return sum(self.counts)

    def has_pair(self) -> bool:
        return any(c >= 2 for c in self.counts)

    def has_meld(self) -> bool:
        return has_meld(self.counts)

    def compatible_with(self, hand: Hand) -> bool:
        return all(k + h <= MAX_COPIES for k, h in zip(self.counts, hand.counts()))

    def __str__(self) -> str:
        return format_kb(self)


def has_meld(counts: Sequence[int]) -> bool:
    """True if the counts contain a pong or a chow."""
    if any(c >= 3 for c in counts):
        return True
    for colour in range(3):
        base = 9 * colour
        for r in range(7):
            if counts[base + r] and counts[base + r + 1] and counts[base + r + 2]:
                return True
    return False


_HAND_SUFFIX = re.compile(r";\s*k\s*=\s*(\S*)\s*$")


def parse_hand(text: str) -> Hand:
    """Parse ``B1B2 C3 | D4...`` with an optional ``;k=<0..4>`` suffix."""
    melds_fixed = 0
    m = _HAND_SUFFIX.search(text)
    if m:
        value = m.group(1)
        if value not in ("0", "1", "2", "3", "4"):
            raise ParseError(f"invalid melds-fixed suffix {m.group(0).strip()!r}")
        melds_fixed = int(value)
        text = text[: m.start()]
    body = re.sub(r"[\s|]", "", text)
    if len(body) % 2:
        raise ParseError(f"malformed hand {text.strip()!r}")
    tiles = [Tile.parse(body[i : i + 2]) for i in range(0, len(body), 2)]
    try:
        return Hand(tuple(tiles), melds_fixed)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_hand(hand: Hand) -> str:
    text = "".join(str(t) for t in hand.tiles)
    if hand.melds_fixed:
        text += f";k={hand.melds_fixed}"
    return text


def parse_kb(text: str) -> KnowledgeBase:
    """Parse 27 digits 0..4, optionally grouped as ``ddddddddd|ddddddddd|ddddddddd``."""
    body = text.strip()
    groups = body.split("|")
    if len(groups) > 1 and (len(groups) > 3 or any(len(g) != 9 for g in groups[:-1])):
        raise ParseError(f"'|' may only follow a group of nine digits: {text!r}")
    digits = "".join(groups)
    if len(digits) != NUM_KINDS or not digits.isdigit():
        raise ParseError(f"knowledge base needs exactly 27 digits, got {text!r}")
    counts = tuple(int(d) for d in digits)
    if max(counts) > MAX_COPIES:
        raise ParseError(f"knowledge-base digit above 4 in {text!r}")
    return KnowledgeBase(counts)


def format_kb(kb: KnowledgeBase) -> str:
    c = "".join(str(x) for x in kb.counts)
    return f"{c[:9]}|{c[9:18]}|{c[18:]}"


def kb_from_hand(hand: Hand) -> KnowledgeBase:
    """Knowledge base of a player who has seen only their own hand."""
    return KnowledgeBase(tuple(MAX_COPIES - c for c in hand.counts()))


def replace_tile(
    hand: Hand, out: Tile, in_: Tile, kb: KnowledgeBase
) -> Tuple[Hand, KnowledgeBase]:
    """Discard ``out`` and draw ``in_`` from the knowledge base.

    The discarded tile is not returned to the knowledge base.
    """
    if out == in_:
        raise ValueError(f"replacing {out} by itself is not a change")
    if out not in hand.tiles:
        raise ValueError(f"{out} is not in the hand")
    if kb[in_] <= 0:
        raise ValueError(f"{in_} is not available in the knowledge base")
    if hand.count(in_) >= MAX_COPIES:
        raise ValueError(f"drawing {in_} would exceed four copies")
    tiles = list(hand.tiles)
    tiles.remove(out)
    tiles.append(in_)
    counts = list(kb.counts)
    counts[in_.index] -= 1
    return Hand(tuple(tiles), hand.melds_fixed), KnowledgeBase(tuple(counts))


def permute_colours(
    hand: Hand, kb: KnowledgeBase, perm: Sequence[int]
) -> Tuple[Hand, KnowledgeBase]:
    """Relabel colour ``c`` as ``perm[c]`` in both hand and knowledge base."""
    tiles = tuple(Tile(perm[t.colour], t.rank) for t in hand.tiles)
    counts = [0] * NUM_KINDS
    for i, c in enumerate(kb.counts):
        counts[9 * perm[i // 9] + i % 9] = c
    return Hand(tiles, hand.melds_fixed), KnowledgeBase(tuple(counts))

