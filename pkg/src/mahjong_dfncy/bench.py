"""Random instances, differential fuzzing, the pure-hand census and timing tables.

Every instance ``i`` of a run with seed ``s`` draws its hand from the stream
``SeedSequence(s, spawn_key=(i, 0))`` and its ``j``-th knowledge base from
``SeedSequence(s, spawn_key=(i, 1, j))``, so any single pair can be replayed
from ``(s, i, j)`` without regenerating the others.
"""

from __future__ import annotations

import csv
import io
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .backends import backend
from .block import block_dfncy, clear_caches, kb_blocks, suit_qdcmps, suit_types
from .oracle import oracle_dfncy
from .quadtree import quadtree_dfncy
from .tiles import INCOMPLETABLE, MAX_COPIES, NUM_KINDS, Hand, KnowledgeBase, kb_from_hand

BUCKET_EDGES = {
    1: (0, 5, 10, 15, 22),
    2: (0, 10, 20, 30, 40, 50, 58),
    3: (0, 10, 20, 30, 40, 50, 60, 70, 80, 94),
}

CSV_HEADER = (
    "kb_bucket",
    "pairs",
    "quad_max_ms",
    "quad_mean_ms",
    "block_max_ms",
    "block_mean_ms",
    "ratio",
    "agree_rate_le4",
)


def hand_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, 0)))


def kb_rng(seed: int, index: int, j: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, 1, j)))


def gen_hand(colours: int, rng: np.random.Generator) -> Hand:
    """Deal 14 tiles from the physical tiles of a random set of ``colours`` suits.

    Deals that miss one of the chosen suits are redrawn, so the result has
    exactly ``colours`` colours.
    """
    if colours not in (1, 2, 3):
        raise ValueError("colours must be 1, 2 or 3")
    suits = sorted(rng.choice(3, size=colours, replace=False).tolist())
    wall = np.array([9 * c + r for c in suits for r in range(9) for _ in range(MAX_COPIES)])
    while True:
        drawn = rng.choice(wall, size=14, replace=False)
        if len({int(i) // 9 for i in drawn}) == colours:
            break
    counts = np.bincount(drawn, minlength=NUM_KINDS)
    return Hand.from_counts(counts.tolist())


def kb_capacity(hand: Hand) -> int:
    """Tiles left in the suits the hand uses (22 / 58 / 94 for 1 / 2 / 3 colours)."""
    return MAX_COPIES * 9 * len(hand.colours) - len(hand)


def gen_kb(hand: Hand, size: int, rng: np.random.Generator) -> KnowledgeBase:
    """Draw ``size`` tiles uniformly from the hand's complement within its suits."""
    cap = kb_capacity(hand)
    if not 0 <= size <= cap:
        raise ValueError(f"knowledge-base size must lie in 0..{cap}, got {size}")
    h = hand.counts()
    colours = hand.colours
    pool = np.array(
        [i for i in range(NUM_KINDS) if i // 9 in colours for _ in range(MAX_COPIES - h[i])]
    )
    drawn = rng.choice(pool, size=size, replace=False) if size else np.array([], dtype=int)
    return KnowledgeBase(tuple(np.bincount(drawn.astype(int), minlength=NUM_KINDS).tolist()))


def sample_kb_size(
    capacity: int,
    rng: np.random.Generator,
    mean: Optional[float] = None,
    std: Optional[float] = None,
) -> int:
    """Rounded normal draw clamped to ``0..capacity``.

    The mean defaults to ``capacity / 2`` and the std to ``capacity / 4``.
    """
    mu = capacity / 2 if mean is None else mean
    sigma = capacity / 4 if std is None else std
    x = rng.normal(mu, sigma)
    return int(min(capacity, max(0, round(x))))


def instances(
    colours: int,
    hands: int,
    kbs_per_hand: int,
    seed: int,
    mean: Optional[float] = None,
    std: Optional[float] = None,
) -> Iterator[Tuple[int, int, Hand, KnowledgeBase]]:
    for i in range(hands):
        hand = gen_hand(colours, hand_rng(seed, i))
        cap = kb_capacity(hand)
        for j in range(kbs_per_hand):
            rng = kb_rng(seed, i, j)
            yield i, j, hand, gen_kb(hand, sample_kb_size(cap, rng, mean, std), rng)


def bucketed_instances(
    colours: int, hands: int, kbs_per_bucket: int, seed: int
) -> Iterator[Tuple[int, int, Hand, KnowledgeBase]]:
    """Give every hand ``kbs_per_bucket`` KBs in each size bucket, sizes uniform within it.

    Each bucket then sees the same hands, so bucket-to-bucket differences are
    not masked by which hands happened to land where.
    """
    edges = BUCKET_EDGES[colours]
    for i in range(hands):
        hand = gen_hand(colours, hand_rng(seed, i))
        j = 0
        for lo, hi in zip(edges, edges[1:]):
            top = hi if hi == edges[-1] else hi - 1
            for _ in range(kbs_per_bucket):
                rng = kb_rng(seed, i, j)
                yield i, j, hand, gen_kb(hand, int(rng.integers(lo, top + 1)), rng)
                j += 1


# ---------------------------------------------------------------------------
# Timing tables


@dataclass
class BenchConfig:
    colours: int = 3
    hands: int = 100
    kbs_per_hand: int = 10
    seed: int = 0
    algorithms: Tuple[str, ...] = ("quadtree", "block")
    kb_size_mean: Optional[float] = None
    kb_size_std: Optional[float] = None
    # Time the exhaustive word tree (every pre-decomposition priced) unless unset.
    quadtree_plain: bool = True
    # Clear the block method's per-suit memo before each timed call.
    cold: bool = True
    # "normal": KB sizes drawn from the normal law; "per_bucket": every hand
    # gets kbs_per_hand KBs in every size bucket.
    kb_sampling: str = "normal"
    oracle_cap: int = 4

    def __post_init__(self) -> None:
        if self.colours not in (1, 2, 3):
            raise ValueError("colours must be 1, 2 or 3")
        if self.hands <= 0 or self.kbs_per_hand <= 0:
            raise ValueError("hands and kbs_per_hand must be positive")
        if self.kb_sampling not in ("normal", "per_bucket"):
            raise ValueError("kb_sampling must be 'normal' or 'per_bucket'")
        if self.kb_size_std is not None and self.kb_size_std < 0:
            raise ValueError("kb_size_std must be non-negative")
        unknown = set(self.algorithms) - {"oracle", "quadtree", "block"}
        if unknown:
            raise ValueError(f"unknown algorithms {sorted(unknown)}")


@dataclass
class Sample:
    hand: Hand
    kb: KnowledgeBase
    kb_size: int
    results: Dict[str, int]
    seconds: Dict[str, float]


@dataclass
class BenchRow:
    kb_bucket: str
    pairs: int
    quad_max_ms: Optional[float]
    quad_mean_ms: Optional[float]
    block_max_ms: Optional[float]
    block_mean_ms: Optional[float]
    ratio: Optional[float]
    agree_rate_le4: Optional[float]
    agree_rate: Optional[float] = None

    def csv_fields(self) -> List[str]:
        def fmt(x: Optional[float], digits: int = 3) -> str:
            return "" if x is None else f"{x:.{digits}f}"

        return [
            self.kb_bucket,
            str(self.pairs),
            fmt(self.quad_max_ms),
            fmt(self.quad_mean_ms),
            fmt(self.block_max_ms),
            fmt(self.block_mean_ms),
            fmt(self.ratio, 2),
            fmt(self.agree_rate_le4, 4),
        ]


@dataclass
class BenchResult:
    config: BenchConfig
    rows: List[BenchRow]
    samples: List[Sample] = field(repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows:
            w.writerow(row.csv_fields())
        return buf.getvalue()


def bucket_label(edges: Sequence[int], size: int) -> str:
    for lo, hi in zip(edges, edges[1:]):
        last = hi == edges[-1]
        if lo <= size < hi or (last and size == hi):
            return f"[{lo},{hi}]" if last else f"[{lo},{hi})"
    raise ValueError(f"size {size} outside buckets {edges}")


def timed(fn, hand: Hand, kb: KnowledgeBase) -> Tuple[int, float]:
    start = time.perf_counter()
    value = fn(hand, kb)
    return value, time.perf_counter() - start


def collect(cfg: BenchConfig) -> List[Sample]:
    fns = {a: backend(a, cfg.oracle_cap) for a in cfg.algorithms}
    if "quadtree" in fns:
        if cfg.quadtree_plain:
            fns["quadtree"] = lambda h, k: quadtree_dfncy(h, k, prune=False, plain=True)
    out = []
    if cfg.kb_sampling == "per_bucket":
        stream = bucketed_instances(cfg.colours, cfg.hands, cfg.kbs_per_hand, cfg.seed)
    else:
        stream = instances(
            cfg.colours, cfg.hands, cfg.kbs_per_hand, cfg.seed, cfg.kb_size_mean, cfg.kb_size_std
        )
    for _, _, hand, kb in stream:
        results, seconds = {}, {}
        for name, fn in fns.items():
            if name == "block" and cfg.cold:
                clear_caches()
            results[name], seconds[name] = timed(fn, hand, kb)
        out.append(Sample(hand, kb, kb.total(), results, seconds))
    return out


def summarise(samples: Sequence[Sample], label: str) -> BenchRow:
    def stats(name: str) -> Tuple[Optional[float], Optional[float]]:
        xs = [s.seconds[name] * 1000 for s in samples if name in s.seconds]
        if not xs:
            return None, None
        return max(xs), sum(xs) / len(xs)

    qmax, qmean = stats("quadtree")
    bmax, bmean = stats("block")
    ratio = qmean / bmean if qmean is not None and bmean else None
    both = [s for s in samples if "quadtree" in s.results and "block" in s.results]
    band = [s for s in both if s.results["quadtree"] <= 4]
    agree_band = (
        sum(s.results["block"] == s.results["quadtree"] for s in band) / len(band) if band else None
    )
    agree = (
        sum(s.results["block"] == s.results["quadtree"] for s in both) / len(both) if both else None
    )
    return BenchRow(label, len(samples), qmax, qmean, bmax, bmean, ratio, agree_band, agree)


def tabulate(samples: Sequence[Sample], colours: int) -> List[BenchRow]:
    edges = BUCKET_EDGES[colours]
    groups: Dict[str, List[Sample]] = defaultdict(list)
    for s in samples:
        groups[bucket_label(edges, s.kb_size)].append(s)
    rows = []
    for lo, hi in zip(edges, edges[1:]):
        label = bucket_label(edges, lo)
        if groups[label]:
            rows.append(summarise(groups[label], label))
    rows.append(summarise(samples, "total"))
    return rows


def run_bench(cfg: BenchConfig, out: Optional[Path] = None, figure: bool = True) -> BenchResult:
    """Time the configured algorithms and tabulate them by knowledge-base size.

    With ``out`` set, the CSV is written there and, unless ``figure`` is false,
    a PNG chart of the same rows is written next to it.
    """
    samples = collect(cfg)
    result = BenchResult(cfg, tabulate(samples, cfg.colours), samples)
    if out is not None:
        out = Path(out)
        out.write_text(result.to_csv())
        if figure:
            from .plots import plot_bench

            plot_bench(result.rows, out.with_suffix(".png"), title=f"{cfg.colours}-colour hands")
    return result


# ---------------------------------------------------------------------------
# Census


def pure_vectors(size: int = 14) -> Iterator[Tuple[int, ...]]:
    """Rank-count vectors of every pure ``size``-tile (at most four copies each)."""

    def rec(i: int, left: int, cur: List[int]) -> Iterator[Tuple[int, ...]]:
        if i == 9:
            if left == 0:
                yield tuple(cur)
            return
        for c in range(min(MAX_COPIES, left) + 1):
            cur.append(c)
            yield from rec(i + 1, left - c, cur)
            cur.pop()

    yield from rec(0, size, [])


def pure_census(algo: str = "quadtree") -> Dict[int, int]:
    """Deficiency histogram of all pure 14-tiles with the full-complement KB."""
    fn = backend(algo)
    hist: Counter = Counter()
    for vec in pure_vectors():
        hand = Hand.from_counts(vec + (0,) * 18)
        hist[fn(hand, kb_from_hand(hand))] += 1
    return dict(sorted(hist.items()))


# ---------------------------------------------------------------------------
# Differential fuzzing


@dataclass
class Disagreement:
    seed: int
    index: int
    colours: int
    hand: Hand
    kb: KnowledgeBase
    kind: str
    left: int
    right: int
    in_band: bool

    @property
    def delta(self) -> int:
        """Signed error: positive when the left algorithm overestimates."""
        return self.left - self.right

    def __str__(self) -> str:
        band = "in-band" if self.in_band else "out-of-band"
        return (
            f"{self.kind} {band} delta={self.delta:+d} ({self.left} vs {self.right}) "
            f"hand={self.hand} kb={self.kb} replay=seed:{self.seed},index:{self.index},colours:{self.colours}"
        )


@dataclass
class FuzzReport:
    n: int
    cap: int
    seed: int
    block_vs_quadtree: int = 0
    quadtree_vs_oracle: int = 0
    disagreements: List[Disagreement] = field(default_factory=list)

    @property
    def in_band_failures(self) -> List[Disagreement]:
        return [d for d in self.disagreements if d.in_band]

    def lines(self) -> List[str]:
        out = [
            f"pairs={self.n} cap={self.cap} seed={self.seed}",
            f"block-vs-quadtree comparisons={self.block_vs_quadtree}",
            f"quadtree-vs-oracle comparisons={self.quadtree_vs_oracle}",
            f"disagreements={len(self.disagreements)} in-band={len(self.in_band_failures)}",
        ]
        out.extend(str(d) for d in self.disagreements)
        return out


def fuzz_instance(seed: int, index: int, colours: int) -> Tuple[Hand, KnowledgeBase]:
    hand = gen_hand(colours, hand_rng(seed, index))
    rng = kb_rng(seed, index, 0)
    return hand, gen_kb(hand, sample_kb_size(kb_capacity(hand), rng), rng)


def fuzz_diff(n: int, cap: int = 3, seed: int = 0, colours: Sequence[int] = (1, 2, 3)) -> FuzzReport:
    """Compare block with quadtree on every pair and quadtree with the oracle when cheap.

    Instance ``i`` uses ``colours[i % len(colours)]`` suits.  A block/quadtree
    mismatch is in-band when the quadtree answer is at most 4; a mismatch with
    the oracle (run only when the quadtree answer is at most ``cap``) is always
    in-band.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if cap < 0:
        raise ValueError("cap must be non-negative")
    report = FuzzReport(n, cap, seed)
    for i in range(n):
        c = colours[i % len(colours)]
        hand, kb = fuzz_instance(seed, i, c)
        q = quadtree_dfncy(hand, kb)
        b = block_dfncy(hand, kb)
        report.block_vs_quadtree += 1
        if b != q:
            report.disagreements.append(
                Disagreement(seed, i, c, hand, kb, "block-vs-quadtree", b, q, q <= 4)
            )
        if q <= cap:
            o = oracle_dfncy(hand, kb, cap)
            report.quadtree_vs_oracle += 1
            if o != q:
                report.disagreements.append(
                    Disagreement(seed, i, c, hand, kb, "quadtree-vs-oracle", q, o, True)
                )
    return report


# ---------------------------------------------------------------------------
# qDCMP and type counts


@dataclass
class CountRow:
    block_size: int
    blocks: int
    mean_qdcmps: float
    mean_types: float


def count_stats(
    hands: Iterable[Hand], kbs: Optional[Iterable[Optional[KnowledgeBase]]] = None
) -> List[CountRow]:
    """Mean number of qDCMPs and of distinct types per block, by block size.

    A missing knowledge base means the full complement of the hand.
    """
    hands = list(hands)
    kb_list = list(kbs) if kbs is not None else [None] * len(hands)
    if len(kb_list) != len(hands):
        raise ValueError("need one knowledge base per hand")
    acc: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for hand, kb in zip(hands, kb_list):
        kb = kb if kb is not None else kb_from_hand(hand)
        for blk in kb_blocks(hand, kb):
            kbs_ = kb.counts[9 * blk.colour : 9 * blk.colour + 9]
            vec = blk.ranks()
            acc[len(blk.tiles)].append((len(suit_qdcmps(vec, kbs_)), len(suit_types(vec, kbs_))))
    rows = []
    for size in sorted(acc):
        xs = acc[size]
        rows.append(
            CountRow(
                size,
                len(xs),
                sum(q for q, _ in xs) / len(xs),
                sum(t for _, t in xs) / len(xs),
            )
        )
    return rows


def random_pure_hands(count: int, seed: int) -> List[Hand]:
    return [gen_hand(1, hand_rng(seed, i)) for i in range(count)]


__all__ = [
    "BenchConfig",
    "BenchResult",
    "BenchRow",
    "CountRow",
    "Disagreement",
    "FuzzReport",
    "INCOMPLETABLE",
    "count_stats",
    "fuzz_diff",
    "gen_hand",
    "gen_kb",
    "bucketed_instances",
    "instances",
    "pure_census",
    "random_pure_hands",
    "run_bench",
]
