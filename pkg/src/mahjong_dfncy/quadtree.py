"""Exhaustive pre-decomposition search (the quadtree method, six actions).

A pre-decomposition (pDCMP) has four meld holders and one eye holder, each
partially filled with hand tiles.  Nodes are expanded at the smallest pending
tile ``t`` with up to six actions:

1. pass ``t`` to the remainder;
2. make a chow ``(t, t+1, t+2)`` from whatever of it is pending;
3. put the pair ``(t, t)`` in the eye holder;
4. make a pong ``(t, t, t)`` from whatever of it is pending (at least two);
5. make the pchow ``(t, t+1)`` alone, when the knowledge base can complete it;
6. make the pchow ``(t, t+2)`` alone, under the same condition.

Actions 5 and 6 make every knowledge-compatible partial chow reachable; with
the original four actions a pending ``t+2`` is always swallowed into the chow.

Each leaf is priced by :func:`completion_cost`: partial holders are completed
with tiles from the knowledge base, empty holders are built from one remainder
tile plus borrowed tiles or entirely from borrowed tiles.  Borrowed tiles are
drawn jointly, so two holders never consume the same last copy.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .tiles import INCOMPLETABLE, Hand, KnowledgeBase, Tile

Holder = Tuple[int, ...]


@dataclass(frozen=True)
class PDcmp:
    """Holders 0..3 are meld holders, holder 4 is the eye holder."""

    holders: Tuple[Tuple[Tile, ...], ...]
    remainder: Tuple[Tile, ...] = ()

    def __post_init__(self) -> None:
        if len(self.holders) != 5:
            raise ValueError("a pre-decomposition has exactly five holders")
        if len(self.holders[4]) > 2:
            raise ValueError("the eye holder holds at most two tiles")
        if any(len(h) > 3 for h in self.holders[:4]):
            raise ValueError("a meld holder holds at most three tiles")

    def __str__(self) -> str:
        return "".join("(" + "".join(map(str, h)) + ")" for h in self.holders)


def _rank(i: int) -> int:
    return i % 9


def _meld_options(tile: int) -> List[Tuple[int, ...]]:
    """Pairs of extra tiles that turn a single tile into a meld."""
    r = _rank(tile)
    opts = [(tile, tile)]
    if r >= 2:
        opts.append((tile - 2, tile - 1))
    if 1 <= r <= 7:
        opts.append((tile - 1, tile + 1))
    if r <= 6:
        opts.append((tile + 1, tile + 2))
    return opts


def _pmeld_options(a: int, b: int) -> List[Tuple[int, ...]]:
    """Tiles that complete a two-tile holder into a meld."""
    if a == b:
        return [(a,)]
    if b == a + 1:
        opts = []
        if _rank(a) >= 1:
            opts.append((a - 1,))
        if _rank(b) <= 7:
            opts.append((b + 1,))
        return opts
    if b == a + 2:
        return [(a + 1,)]
    raise ValueError("holder is not a partial meld")


def _kb_melds(kb: Sequence[int]) -> List[Tuple[int, ...]]:
    out = [(i, i, i) for i in range(27) if kb[i] >= 3]
    for i in range(27):
        if _rank(i) <= 6 and kb[i] and kb[i + 1] and kb[i + 2]:
            out.append((i, i + 1, i + 2))
    return out


def _take(kb: List[int], need: Tuple[int, ...]) -> bool:
    """Remove ``need`` from ``kb`` if every tile is available; report success."""
    for j, x in enumerate(need):
        if kb[x] <= 0:
            for y in need[:j]:
                kb[y] += 1
            return False
        kb[x] -= 1
    return True


def _give(kb: List[int], need: Tuple[int, ...]) -> None:
    for x in need:
        kb[x] += 1


def completion_cost(
    melds: Sequence[Holder], eye: Holder, remainder: Sequence[int], kb: Sequence[int], slots: int = 4
) -> int:
    """Fewest borrowed tiles completing the holders; ``INCOMPLETABLE`` if impossible.

    ``melds`` are the non-empty meld holders (tile indices), ``slots`` the number
    of meld holders to fill.  A partial holder (one or two tiles) is completed
    from the knowledge base.  An empty meld holder costs 2 when one remainder
    tile plus two borrowed tiles form a meld and 3 when the knowledge base holds
    a whole meld; an empty eye holder costs 1 (remainder tile plus a borrowed
    copy) or 2 (a borrowed pair).
    """
    kbl = list(kb)
    fixed: List[Tuple[int, List[Tuple[int, ...]]]] = []
    for h in melds:
        if len(h) == 3:
            continue
        if len(h) == 2:
            fixed.append((1, _pmeld_options(h[0], h[1])))
        elif len(h) == 1:
            fixed.append((2, _meld_options(h[0])))
        else:
            raise ValueError("empty holders are counted by slots")
    if len(eye) == 1:
        fixed.append((1, [(eye[0],)]))
    empties = slots - len(melds)
    eye_empty = len(eye) == 0
    if empties < 0:
        raise ValueError("more meld holders than slots")

    rem_counts: Dict[int, int] = {}
    for x in remainder:
        rem_counts[x] = rem_counts.get(x, 0) + 1
    rem_kinds = sorted(rem_counts)

    # Options for an empty meld holder: (cost, remainder tile or -1, borrowed tiles).
    meld_opts: List[Tuple[int, int, Tuple[int, ...]]] = []
    if empties:
        for u in rem_kinds:
            for need in _meld_options(u):
                meld_opts.append((2, u, need))
        for need in _kb_melds(kb):
            meld_opts.append((3, -1, need))
    eye_opts: List[Tuple[int, int, Tuple[int, ...]]] = []
    if eye_empty:
        eye_opts = [(1, u, (u,)) for u in rem_kinds]
        eye_opts += [(2, -1, (i, i)) for i in range(27) if kb[i] >= 2]

    best = [INCOMPLETABLE]
    floor = sum(c for c, _ in fixed) + 2 * empties + (1 if eye_empty else 0)

    def fill_empties(k: int, start: int, cost: int) -> None:
        if cost + 2 * k >= best[0]:
            return
        if k == 0:
            best[0] = cost
            return
        for idx in range(start, len(meld_opts)):
            c, u, need = meld_opts[idx]
            if cost + c + 2 * (k - 1) >= best[0]:
                break
            if u >= 0 and rem_counts[u] == 0:
                continue
            if not _take(kbl, need):
                continue
            if u >= 0:
                rem_counts[u] -= 1
            fill_empties(k - 1, idx, cost + c)
            if u >= 0:
                rem_counts[u] += 1
            _give(kbl, need)
            if best[0] == floor:
                return

    def fill_eye(cost: int) -> None:
        if not eye_empty:
            fill_empties(empties, 0, cost)
            return
        for c, u, need in eye_opts:
            if cost + c + 2 * empties >= best[0]:
                break
            if u >= 0 and rem_counts[u] == 0:
                continue
            if not _take(kbl, need):
                continue
            if u >= 0:
                rem_counts[u] -= 1
            fill_empties(empties, 0, cost + c)
            if u >= 0:
                rem_counts[u] += 1
            _give(kbl, need)
            if best[0] == floor:
                return

    def fill_fixed(i: int, cost: int) -> None:
        if i == len(fixed):
            fill_eye(cost)
            return
        c, opts = fixed[i]
        for need in opts:
            if _take(kbl, need):
                fill_fixed(i + 1, cost + c)
                _give(kbl, need)
                if best[0] == floor:
                    return

    fill_fixed(0, 0)
    return best[0]


def pdcmp_cost(pdcmp: PDcmp, kb: KnowledgeBase, hand: Optional[Hand] = None) -> int:
    """Knowledge-aware cost of a pre-decomposition of ``hand``."""
    slots = 4 - (hand.melds_fixed if hand is not None else 0)
    melds = [tuple(t.index for t in h) for h in pdcmp.holders[:4] if h]
    if len(melds) > slots:
        raise ValueError("too many meld holders for the fixed melds")
    eye = tuple(t.index for t in pdcmp.holders[4])
    remainder = [t.index for t in pdcmp.remainder]
    if hand is not None:
        used = [t for h in pdcmp.holders for t in h] + list(pdcmp.remainder)
        if sorted(used) != list(hand.tiles):
            raise ValueError("holders and remainder must partition the hand")
    return completion_cost(melds, eye, remainder, kb.counts, slots)


def _remove(seq: Tuple[int, ...], items: Sequence[int]) -> Tuple[int, ...]:
    out = list(seq)
    for x in items:
        out.remove(x)
    return tuple(out)


def quadtree_dfncy(hand: Hand, kb: KnowledgeBase, prune: bool = True, plain: bool = False) -> int:
    """Minimum knowledge-aware cost over all reachable pre-decompositions."""
    return quadtree_search(hand, kb, prune, plain)[0]


def quadtree_search(
    hand: Hand, kb: KnowledgeBase, prune: bool = True, plain: bool = False
) -> Tuple[int, int]:
    """Return ``(deficiency, expanded node count)``.

    With ``prune`` set, subtrees whose lower bound cannot beat the best leaf
    are skipped and the search stops at a complete hand.  Without it every
    pre-decomposition is generated and priced.

    By default nodes are explored depth first, identical nodes are merged and
    leaf costs are memoised.  ``plain`` instead walks the tree breadth first
    from a FIFO queue with none of that sharing, as in the original method;
    the answer is the same, only slower.
    """
    kbc = kb.counts
    slots = 4 - hand.melds_fixed
    tiles = tuple(t.index for t in hand.tiles)
    best = INCOMPLETABLE
    costs: Dict[Tuple, int] = {}
    start = ((), (), tiles, ())
    seen = {start}
    queue = deque([start])
    pop = queue.popleft if plain else queue.pop
    expanded = 0

    while queue:
        melds, eye, pending, rem = pop()
        free = slots - len(melds)
        eye_free = 0 if eye else 1
        placed = sum(3 - len(h) for h in melds) + (2 - len(eye) if eye else 0)
        short = 3 * free + 2 * eye_free - len(pending) - min(len(rem), free + eye_free)
        if prune and placed + max(0, short) >= best:
            continue
        if not pending or (free == 0 and not eye_free):
            key = (melds, eye, rem + pending if free or eye_free else ())
            c = None if plain else costs.get(key)
            if c is None:
                c = completion_cost(melds, eye, key[2], kbc, slots)
                if not plain:
                    costs[key] = c
            if c < best:
                best = c
                if prune and best == 0:
                    break
            continue
        expanded += 1
        t = pending[0]
        rest = pending[1:]
        r = _rank(t)
        children = [(melds, eye, rest, rem + (t,))]
        if free:
            has1 = r <= 7 and (t + 1) in rest
            has2 = r <= 6 and (t + 2) in rest
            if has1 and (r >= 1 and kbc[t - 1] or r <= 6 and kbc[t + 2]):
                children.append((_add(melds, (t, t + 1)), eye, _remove(rest, (t + 1,)), rem))
            if has2 and kbc[t + 1]:
                children.append((_add(melds, (t, t + 2)), eye, _remove(rest, (t + 2,)), rem))
        if not eye and rest and rest[0] == t:
            children.append((melds, (t, t), rest[1:], rem))
        if free:
            copies = 1 + sum(1 for x in rest[:2] if x == t)
            if copies >= 2:
                children.append((_add(melds, (t,) * copies), eye, rest[copies - 1 :], rem))
            if has1 or has2:
                part = (t,) + ((t + 1,) if has1 else ()) + ((t + 2,) if has2 else ())
                children.append((_add(melds, part), eye, _remove(rest, part[1:]), rem))
        for child in children:
            if plain:
                queue.append(child)
            elif child not in seen:
                seen.add(child)
                queue.append(child)
    return best, expanded


def _add(melds: Tuple[Holder, ...], holder: Holder) -> Tuple[Holder, ...]:
    return tuple(sorted(melds + (holder,)))
