"""The block deficiency algorithm.

The hand is split into knowledge-aware blocks: maximal groups of same-colour
tiles linked by chows that the hand or the knowledge base can complete.  Every
block is decomposed on its own into quasi-decompositions (qDCMPs), each of which
is compressed to a seven-attribute type ``(m, n, p, e, re, rm, em)``.  The type
sets of all blocks are joined and every global type is priced by
:func:`decide`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .tiles import INCOMPLETABLE, Hand, KnowledgeBase, Tile, has_meld

Vec = Tuple[int, ...]
Part = Tuple[int, ...]


class TypeTuple(NamedTuple):
    m: int
    n: int
    p: int
    e: int
    re: int
    rm: int
    em: int

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


ZERO_TYPE = TypeTuple(0, 0, 0, 0, 0, 0, 0)


@dataclass(frozen=True)
class Block:
    tiles: Tuple[Tile, ...]

    def __post_init__(self) -> None:
        if not self.tiles:
            raise ValueError("a block is never empty")
        object.__setattr__(self, "tiles", tuple(sorted(Tile(*t) for t in self.tiles)))
        if len({t.colour for t in self.tiles}) != 1:
            raise ValueError("all tiles of a block share one colour")

    @property
    def colour(self) -> int:
        return self.tiles[0].colour

    def ranks(self) -> Vec:
        v = [0] * 9
        for t in self.tiles:
            v[t.rank - 1] += 1
        return tuple(v)

    def __str__(self) -> str:
        return "(" + "".join(map(str, self.tiles)) + ")"


@dataclass(frozen=True)
class QDcmp:
    parts: Tuple[Tuple[Tile, ...], ...]
    remainder: Tuple[Tile, ...]

    def __str__(self) -> str:
        body = ",".join("(" + "".join(map(str, p)) + ")" for p in self.parts)
        rest = "".join(map(str, self.remainder))
        return f"[{body}] rest ({rest})"


def kb_flags(kb: KnowledgeBase) -> Tuple[int, int]:
    """``(ke, km)``: whether the knowledge base alone holds a pair / a meld."""
    return int(kb.has_pair()), int(has_meld(kb.counts))


# ---------------------------------------------------------------------------
# Blocks


def _connected(lo: int, hi: int, present: Sequence[int], kbs: Sequence[int]) -> bool:
    """Ranks ``lo < hi`` (0-based) of one suit lie in a chow the hand or KB can complete."""
    gap = hi - lo
    if gap == 1:
        return (lo >= 1 and (present[lo - 1] or kbs[lo - 1])) or (
            hi <= 7 and (present[hi + 1] or kbs[hi + 1])
        )
    if gap == 2:
        return bool(present[lo + 1] or kbs[lo + 1])
    return False


def suit_blocks(vec: Vec, kbs: Vec) -> List[Vec]:
    """Split one suit's rank counts into block rank-count vectors."""
    ranks = [r for r in range(9) if vec[r]]
    parent = {r: r for r in ranks}

    def find(r: int) -> int:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for a_i, a in enumerate(ranks):
        for b in ranks[a_i + 1 :]:
            if b - a > 2:
                break
            if _connected(a, b, vec, kbs):
                parent[find(b)] = find(a)
    groups: dict = {}
    for r in ranks:
        groups.setdefault(find(r), []).append(r)
    out = []
    for root in sorted(groups, key=lambda g: min(groups[g])):
        v = [0] * 9
        for r in groups[root]:
            v[r] = vec[r]
        out.append(tuple(v))
    return out


def kb_blocks(hand: Hand, kb: KnowledgeBase) -> List[Block]:
    h = hand.counts()
    blocks = []
    for colour in range(3):
        vec = h[9 * colour : 9 * colour + 9]
        kbs = kb.counts[9 * colour : 9 * colour + 9]
        for bv in suit_blocks(vec, kbs):
            tiles = tuple(Tile(colour, r + 1) for r in range(9) for _ in range(bv[r]))
            blocks.append(Block(tiles))
    return blocks


# ---------------------------------------------------------------------------
# Quasi-decompositions of one block


def _completers(part: Part, kbs: Sequence[int]) -> List[int]:
    """Ranks available in the KB that complete a two-tile part."""
    a, b = part
    if a == b:
        return [a] if kbs[a] else []
    if b == a + 2:
        return [a + 1] if kbs[a + 1] else []
    out = []
    if a >= 1 and kbs[a - 1]:
        out.append(a - 1)
    if b <= 7 and kbs[b + 1]:
        out.append(b + 1)
    return out


def _walk(vec: Vec, kbs: Sequence[int], prune_pchows: bool, visit) -> None:
    """Call ``visit(parts, rem)`` once for every qDCMP of a one-suit block.

    Branching happens at the smallest pending rank ``i``: start a pong, chow,
    pair or pchow there, or pass one copy of ``i`` to the remainder.  Actions at
    the same rank are taken in a fixed order and a pass ends the branching at
    that rank, so every qDCMP is produced exactly once.  ``parts`` and ``rem``
    are live buffers owned by the walk.
    """
    pending = list(vec)
    rem = [0] * 9
    parts: List[Part] = []

    def emit() -> None:
        pairs = 0
        dead = 0
        for q in parts:
            if len(q) == 2 and q[0] == q[1]:
                pairs += 1
                if not kbs[q[0]]:
                    dead += 1
        if dead > 1 or (len(parts) == 5 and not pairs):
            return
        if prune_pchows:
            for q in parts:
                if len(q) == 2 and q[0] != q[1]:
                    if all(rem[r] for r in _completers(q, kbs)):
                        return
        visit(parts, rem)

    def search(i: int, first: int) -> None:
        while i < 9 and not pending[i]:
            i += 1
            first = 0
        if i == 9:
            emit()
            return
        if first < 5 and len(parts) < 5:
            for idx in range(first, 5):
                if idx == 0:
                    ok = pending[i] >= 3
                    move = (i, i, i)
                elif idx == 1:
                    ok = i <= 6 and pending[i + 1] and pending[i + 2]
                    move = (i, i + 1, i + 2)
                elif idx == 2:
                    ok = pending[i] >= 2
                    move = (i, i)
                elif idx == 3:
                    ok = i <= 7 and pending[i + 1] and (
                        (i >= 1 and kbs[i - 1]) or (i <= 6 and kbs[i + 2])
                    )
                    move = (i, i + 1)
                else:
                    ok = i <= 6 and pending[i + 2] and kbs[i + 1]
                    move = (i, i + 2)
                if not ok:
                    continue
                for r in move:
                    pending[r] -= 1
                parts.append(move)
                search(i, idx)
                parts.pop()
                for r in move:
                    pending[r] += 1
        pending[i] -= 1
        rem[i] += 1
        search(i, 5)
        rem[i] -= 1
        pending[i] += 1

    search(0, 0)


@lru_cache(maxsize=100_000)
def suit_qdcmps(vec: Vec, kbs: Vec, prune_pchows: bool = True) -> Tuple[Tuple[Tuple[Part, ...], Vec], ...]:
    """All qDCMPs of a one-suit block as ``(sorted parts, remainder rank counts)``."""
    found: List[Tuple[Tuple[Part, ...], Vec]] = []
    _walk(vec, kbs, prune_pchows, lambda parts, rem: found.append((tuple(sorted(parts)), tuple(rem))))
    return tuple(sorted(found))


def enumerate_qdcmps(block: Block, kb: KnowledgeBase, prune_pchows: bool = True) -> List[QDcmp]:
    colour = block.colour
    kbs = kb.counts[9 * colour : 9 * colour + 9]
    out = []
    for parts, rem in suit_qdcmps(block.ranks(), kbs, prune_pchows):
        tparts = tuple(tuple(Tile(colour, r + 1) for r in q) for q in parts)
        trem = tuple(Tile(colour, r + 1) for r in range(9) for _ in range(rem[r]))
        out.append(QDcmp(tparts, trem))
    return out


def _meld_from(r: int, kbs: Sequence[int]) -> bool:
    """Can a remainder tile of rank ``r`` grow into a meld with two KB tiles?"""
    if kbs[r] >= 2:
        return True
    if r >= 2 and kbs[r - 2] and kbs[r - 1]:
        return True
    if 1 <= r <= 7 and kbs[r - 1] and kbs[r + 1]:
        return True
    return r <= 6 and kbs[r + 1] and kbs[r + 2]


def _leftovers(parts: Sequence[Part], kbs: Sequence[int]) -> Set[Vec]:
    """KB vectors left over by each way of completing every two-tile part at once."""
    out: Set[Vec] = set()
    k = list(kbs)

    def assign(i: int) -> None:
        if i == len(parts):
            out.add(tuple(k))
            return
        for r in _completers(parts[i], k):
            k[r] -= 1
            assign(i + 1)
            k[r] += 1

    assign(0)
    return out


def _eye_meld_conflict(rem: Vec, kbs: Sequence[int]) -> int:
    """1 unless one remainder tile makes the eye and another one makes a meld."""
    k = list(kbs)
    r = list(rem)
    for u in range(9):
        if not r[u] or not k[u]:
            continue
        k[u] -= 1
        r[u] -= 1
        ok = any(r[v] and _meld_from(v, k) for v in range(9))
        k[u] += 1
        r[u] += 1
        if ok:
            return 0
    return 1


def _without(two: List[Part], q: Part) -> List[Part]:
    rest = list(two)
    rest.remove(q)
    return rest


def _type(parts: Tuple[Part, ...], rem: Vec, kbs: Sequence[int]) -> TypeTuple:
    """Attributes of a qDCMP read straight off the KB, as in ``type_of``."""
    m = sum(1 for q in parts if len(q) == 3)
    n = len(parts) - m
    p = sum(1 for q in parts if len(q) == 2 and q[0] == q[1])
    e = sum(1 for q in parts if len(q) == 2 and q[0] == q[1] and not kbs[q[0]])
    re = int(any(rem[r] and kbs[r] for r in range(9)))
    rm = int(any(rem[r] and _meld_from(r, kbs) for r in range(9)))
    em = _eye_meld_conflict(rem, kbs) if (e == 0 and re and rm) else 0
    return TypeTuple(m, n, p, e, re, rm, em)


def plan_types(parts: Tuple[Part, ...], rem: Vec, kbs: Sequence[int]) -> List[TypeTuple]:
    """Types of a qDCMP with the eye plan made explicit, used by the block search.

    Two readings are produced.  With ``e=0`` every pmeld is completed and the
    eye comes from elsewhere; with ``e=1`` one pair of this qDCMP is the eye
    and the other pmelds are completed.  A pair with no copy left in the KB
    can only be read the second way.  In both, the flags are taken from the
    KB left after the completions, so an eye or new meld never borrows a copy
    that a pmeld needs, and a reading whose pmelds cannot all be completed
    together is dropped.
    """
    m = sum(1 for q in parts if len(q) == 3)
    n = len(parts) - m
    two = [q for q in parts if len(q) == 2]
    pairs = set(q for q in two if q[0] == q[1])
    p = sum(1 for q in two if q[0] == q[1])
    dead = [q for q in pairs if not kbs[q[0]]]
    if len(dead) > 1 or sum(1 for q in two if q in dead) > 1:
        return []
    out = []
    scratch = set() if dead else _leftovers(two, kbs)
    if scratch:
        re = int(any(rem[r] and k[r] for k in scratch for r in range(9)))
        rm = int(any(rem[r] and _meld_from(r, k) for k in scratch for r in range(9)))
        em = 0
        if re and rm:
            em = int(all(_eye_meld_conflict(rem, k) for k in scratch))
        out.append(TypeTuple(m, n, p, 0, re, rm, em))
    paired: Set[Vec] = set()
    for q in dead or pairs:
        paired |= _leftovers(_without(two, q), kbs)
    if paired:
        rm = int(any(rem[r] and _meld_from(r, k) for k in paired for r in range(9)))
        out.append(TypeTuple(m, n, p, 1, 0, rm, 0))
    return out


def type_of(qdcmp: QDcmp, block: Block, kb: KnowledgeBase) -> TypeTuple:
    colour = block.colour
    kbs = kb.counts[9 * colour : 9 * colour + 9]
    parts = tuple(tuple(t.rank - 1 for t in q) for q in qdcmp.parts)
    rem = [0] * 9
    for t in qdcmp.remainder:
        rem[t.rank - 1] += 1
    return _type(parts, tuple(rem), kbs)


def _window(vec: Vec, kbs: Sequence[int]) -> Vec:
    """KB counts the type computation can look at: ranks within two of the block."""
    lo = next(r for r in range(9) if vec[r])
    hi = next(r for r in range(8, -1, -1) if vec[r])
    return tuple(c if lo - 2 <= r <= hi + 2 else 0 for r, c in enumerate(kbs))


def suit_types(vec: Vec, kbs: Sequence[int], prune_pchows: bool = True) -> FrozenSet[TypeTuple]:
    """Distinct types of all qDCMPs of a one-suit block."""
    return _suit_types(vec, _window(vec, kbs), prune_pchows)


@lru_cache(maxsize=200_000)
def _suit_types(vec: Vec, kbs: Vec, prune_pchows: bool) -> FrozenSet[TypeTuple]:
    found: Set[TypeTuple] = set()

    def visit(parts: List[Part], rem: List[int]) -> None:
        found.update(plan_types(tuple(parts), rem, kbs))

    _walk(vec, kbs, prune_pchows, visit)
    return frozenset(found)


def clear_caches() -> None:
    """Forget memoised per-suit results, so the next call starts cold."""
    suit_qdcmps.cache_clear()
    _suit_types.cache_clear()


def block_types(block: Block, kb: KnowledgeBase, prune_pchows: bool = True) -> FrozenSet[TypeTuple]:
    colour = block.colour
    return suit_types(block.ranks(), kb.counts[9 * colour : 9 * colour + 9], prune_pchows)


# ---------------------------------------------------------------------------
# Joining and deciding


def join_types(a: Iterable[TypeTuple], b: Iterable[TypeTuple]) -> Set[TypeTuple]:
    b = list(b)
    out: Set[TypeTuple] = set()
    for x in a:
        for y in b:
            m = x.m + y.m
            n = x.n + y.n
            p = x.p + y.p
            e = x.e + y.e
            if e > 1 or m + n > 5 or (m + n == 5 and p == 0):
                continue
            em = int(
                (x.em == 1 and y.re == 0 and y.rm == 0) or (y.em == 1 and x.re == 0 and x.rm == 0)
            )
            out.add(TypeTuple(m, n, p, e, max(x.re, y.re), max(x.rm, y.rm), em))
    return out


def decide(t: TypeTuple, ke: int, km: int) -> int:
    """Cost of a global type under the knowledge-base flags (100 = incompletable)."""
    m, n, p, e, re, rm, em = t
    if p == 0 and re == 0 and ke == 0:
        return INCOMPLETABLE
    if m + n <= 4 and re == 0 and ke == 0 and rm == 0 and km == 0:
        return INCOMPLETABLE
    if m + n - e <= 3 and rm == 0 and km == 0:
        return INCOMPLETABLE
    if m + n <= 3 and p == 0 and ke == 0 and km == 0 and em == 1:
        return INCOMPLETABLE
    if m + n >= 4:
        if m + n > 4:
            return 4 - m
        if (e == 0 and re == 1) or (p > 0 and rm == 1):
            return 4 - m + 1
        return 4 - m + 2
    mcost = 2 * rm + 3 * (1 - rm)
    ecost = re + 2 * (1 - re)
    if e == 1:
        return (n - 1) + mcost * (4 - m - n + 1)
    if p == 0:
        return n + mcost * (4 - m - n) + ecost + em
    f1 = n + mcost * (4 - m - n) + ecost
    f2 = n - 1 + mcost * (4 - m - n + 1)
    return min(f1, f2)


def _dominated(x: TypeTuple, y: TypeTuple) -> bool:
    """``y`` is at least as good as ``x`` in every attribute (and differs)."""
    return (
        x != y
        and (y.n, y.p, y.e) == (x.n, x.p, x.e)
        and y.m >= x.m
        and y.re >= x.re
        and y.rm >= x.rm
        and y.em <= x.em
    )


def prune_dominated(types: Iterable[TypeTuple]) -> Set[TypeTuple]:
    ts = set(types)
    return {x for x in ts if not any(_dominated(x, y) for y in ts)}


def _shared_kb_groups(hand: Hand, kb: KnowledgeBase) -> List[Tuple[int, Vec]]:
    """``(colour, ranks)`` of block groups that are typed together.

    Same-suit blocks less than five ranks apart can want the same KB tile,
    one to complete a pmeld and the other to grow a remainder tile into a
    meld, so their qDCMPs are typed jointly.
    """
    h = hand.counts()
    out: List[Tuple[int, Vec]] = []
    for colour in range(3):
        kbs = kb.counts[9 * colour : 9 * colour + 9]
        merged: List[List[int]] = []
        last = -9
        for vec in suit_blocks(h[9 * colour : 9 * colour + 9], kbs):
            lo = next(r for r in range(9) if vec[r])
            if merged and lo - last <= 4:
                merged[-1] = [a + b for a, b in zip(merged[-1], vec)]
            else:
                merged.append(list(vec))
            last = max(r for r in range(9) if vec[r])
        out.extend((colour, tuple(v)) for v in merged)
    return out


def global_types(
    hand: Hand, kb: KnowledgeBase, prune_pchows: bool = True, dominance: bool = False
) -> Set[TypeTuple]:
    """Join of the local type sets, seeded with the hand's fixed melds."""
    seed = {ZERO_TYPE._replace(m=hand.melds_fixed)}
    sets = [
        suit_types(vec, kb.counts[9 * c : 9 * c + 9], prune_pchows)
        for c, vec in _shared_kb_groups(hand, kb)
    ]
    if dominance:
        sets = [prune_dominated(s) for s in sets]
    return reduce(join_types, sets, seed)


def block_dfncy(
    hand: Hand, kb: KnowledgeBase, prune_pchows: bool = True, dominance: bool = False
) -> int:
    ke, km = kb_flags(kb)
    best = INCOMPLETABLE
    for t in global_types(hand, kb, prune_pchows, dominance):
        best = min(best, decide(t, ke, km))
        if best == 0:
            break
    return best
