"""Reference deficiency by breadth-first search over tile replacements.

States are ``(hand counts, kb counts)`` pairs.  Level ``l + 1`` holds every
state reachable from level ``l`` by discarding one hand tile and drawing one
available tile (the discard is not returned to the knowledge base).  The answer
is the first level containing a complete hand.

The last level is never materialised: a state one replacement away from a
complete hand is detected directly, one suit at a time.

:func:`nearest_completion` is a second, structurally different reference: the
minimum, over every complete hand ``W`` whose extra tiles the knowledge base can
supply, of the number of tiles ``W`` needs beyond the hand.  It is exact for
any deficiency and is used to cross-check the search modules on inputs where
the breadth-first search would be too slow.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator, List, Set, Tuple

from .completeness import counts_complete, suit_decomposable
from .tiles import INCOMPLETABLE, MAX_COPIES, NUM_KINDS, Counts, Hand, KnowledgeBase

State = Tuple[Counts, Counts]

DEFAULT_CAP = 6


def _successors(h: Counts, kb: Counts) -> Iterator[State]:
    outs = [i for i in range(NUM_KINDS) if h[i]]
    ins = [j for j in range(NUM_KINDS) if kb[j]]
    for i in outs:
        for j in ins:
            if j == i or h[j] >= MAX_COPIES:
                continue
            nh = list(h)
            nh[i] -= 1
            nh[j] += 1
            nk = list(kb)
            nk[j] -= 1
            yield tuple(nh), tuple(nk)


def _suit(h, colour: int) -> Tuple[int, ...]:
    return tuple(h[9 * colour : 9 * colour + 9])


def one_step_complete(h: Counts, kb: Counts) -> bool:
    """Is some single replacement of ``h`` under ``kb`` a complete hand?"""
    sums = [sum(h[9 * c : 9 * c + 9]) for c in range(3)]
    for a in range(3):
        if not sums[a]:
            continue
        for c in range(3):
            ns = list(sums)
            ns[a] -= 1
            ns[c] += 1
            mods = [s % 3 for s in ns]
            if 1 in mods or mods.count(2) != 1:
                continue
            pair = mods.index(2)
            if any(
                not suit_decomposable(_suit(h, x), x == pair)
                for x in range(3)
                if x != a and x != c
            ):
                continue
            for i in range(9 * a, 9 * a + 9):
                if not h[i]:
                    continue
                for j in range(9 * c, 9 * c + 9):
                    if j == i or not kb[j] or h[j] >= MAX_COPIES:
                        continue
                    nh = list(h)
                    nh[i] -= 1
                    nh[j] += 1
                    if suit_decomposable(_suit(nh, a), a == pair) and (
                        c == a or suit_decomposable(_suit(nh, c), c == pair)
                    ):
                        return True
    return False


def oracle_dfncy(hand: Hand, kb: KnowledgeBase, cap: int = DEFAULT_CAP) -> int:
    """Deficiency of a 14-3k hand, or ``INCOMPLETABLE`` beyond ``cap`` replacements."""
    if not hand.is_full:
        raise ValueError(f"expected a {14 - 3 * hand.melds_fixed}-tile hand, got {len(hand)}")
    if cap < 0:
        raise ValueError("cap must be non-negative")
    return _bfs(hand.counts(), kb.counts, cap)


def _bfs(h: Counts, kb: Counts, cap: int) -> int:
    if counts_complete(h):
        return 0
    frontier: Set[State] = {(h, kb)}
    seen: Set[State] = set(frontier)
    for level in range(1, cap + 1):
        if any(one_step_complete(fh, fk) for fh, fk in frontier):
            return level
        if level == cap:
            break
        nxt: Set[State] = set()
        for fh, fk in frontier:
            for state in _successors(fh, fk):
                if state not in seen:
                    seen.add(state)
                    nxt.add(state)
        if not nxt:
            break
        frontier = nxt
    return INCOMPLETABLE


def oracle_dfncy13(hand: Hand, kb: KnowledgeBase, cap: int = DEFAULT_CAP) -> int:
    """Deficiency of a 13-3k hand: one more than the best draw's deficiency."""
    if hand.is_full:
        raise ValueError(f"expected a {13 - 3 * hand.melds_fixed}-tile hand, got {len(hand)}")
    if cap < 1:
        raise ValueError("cap must be at least 1 for a 13-tile hand")
    h, k = hand.counts(), kb.counts
    best = INCOMPLETABLE
    for j in range(NUM_KINDS):
        if not k[j] or h[j] >= MAX_COPIES:
            continue
        nh = list(h)
        nh[j] += 1
        nk = list(k)
        nk[j] -= 1
        # Deeper levels cannot improve on an answer already found.
        d = _bfs(tuple(nh), tuple(nk), min(cap - 1, best - 2) if best < INCOMPLETABLE else cap - 1)
        if d != INCOMPLETABLE:
            best = min(best, d + 1)
    return best


def dfncy_any(hand: Hand, kb: KnowledgeBase, cap: int = DEFAULT_CAP) -> int:
    """Oracle deficiency for either a 14-3k or a 13-3k hand."""
    if hand.is_full:
        return oracle_dfncy(hand, kb, cap)
    return oracle_dfncy13(hand, kb, cap)


# ---------------------------------------------------------------------------
# Nearest complete hand


def _suit_melds() -> List[Tuple[int, ...]]:
    melds = []
    for r in range(9):
        v = [0] * 9
        v[r] = 3
        melds.append(tuple(v))
    for r in range(7):
        v = [0] * 9
        v[r] = v[r + 1] = v[r + 2] = 1
        melds.append(tuple(v))
    return melds


_MELDS = _suit_melds()


@lru_cache(maxsize=200_000)
def _suit_costs(h: Tuple[int, ...], kb: Tuple[int, ...]) -> Dict[Tuple[int, bool], int]:
    """Fewest borrowed tiles for this suit to hold ``m`` melds, with or without the pair."""
    limit = [a + b for a, b in zip(h, kb)]
    best: Dict[Tuple[int, bool], int] = {}

    def cost(w) -> int:
        return sum(x - y for x, y in zip(w, h) if x > y)

    def record(w, m: int) -> None:
        key = (m, False)
        c = cost(w)
        if c < best.get(key, INCOMPLETABLE):
            best[key] = c
        for r in range(9):
            if w[r] + 2 <= limit[r]:
                w2 = list(w)
                w2[r] += 2
                c2 = cost(w2)
                key2 = (m, True)
                if c2 < best.get(key2, INCOMPLETABLE):
                    best[key2] = c2

    def extend(w, m: int, start: int) -> None:
        record(w, m)
        if m == 4:
            return
        for idx in range(start, len(_MELDS)):
            meld = _MELDS[idx]
            w2 = [a + b for a, b in zip(w, meld)]
            if all(x <= y for x, y in zip(w2, limit)):
                extend(w2, m + 1, idx)

    extend([0] * 9, 0, 0)
    return best


def nearest_completion(hand: Hand, kb: KnowledgeBase) -> int:
    """Exact deficiency of a 13-3k or 14-3k hand via the nearest complete hand.

    For a 14-tile hand each borrowed tile replaces one hand tile; for a 13-tile
    hand the first borrowed tile is the draw, so the count is the same.
    """
    h, k = hand.counts(), kb.counts
    need = 4 - hand.melds_fixed
    tables = [_suit_costs(_suit(h, c), _suit(k, c)) for c in range(3)]
    best = INCOMPLETABLE
    for pair_suit in range(3):
        for m0 in range(need + 1):
            for m1 in range(need - m0 + 1):
                m2 = need - m0 - m1
                total = 0
                for c, m in enumerate((m0, m1, m2)):
                    v = tables[c].get((m, c == pair_suit))
                    if v is None:
                        total = INCOMPLETABLE
                        break
                    total += v
                best = min(best, total)
    return best
