"""Uniform entry point over the three deficiency implementations."""

from __future__ import annotations

from typing import Callable, Dict

from .block import block_dfncy
from .oracle import DEFAULT_CAP, dfncy_any
from .quadtree import quadtree_dfncy
from .tiles import Hand, KnowledgeBase

ALGORITHMS = ("block", "quadtree", "oracle")


def deficiency(hand: Hand, kb: KnowledgeBase, algo: str = "block", cap: int = DEFAULT_CAP) -> int:
    """Knowledge-aware deficiency of a 13-3k or 14-3k hand (100 = incompletable)."""
    if algo == "block":
        return block_dfncy(hand, kb)
    if algo == "quadtree":
        return quadtree_dfncy(hand, kb)
    if algo == "oracle":
        return dfncy_any(hand, kb, cap)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


def backend(algo: str, cap: int = DEFAULT_CAP) -> Callable[[Hand, KnowledgeBase], int]:
    table: Dict[str, Callable[[Hand, KnowledgeBase], int]] = {
        "block": block_dfncy,
        "quadtree": quadtree_dfncy,
        "oracle": lambda h, k: dfncy_any(h, k, cap),
    }
    if algo not in table:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    return table[algo]
