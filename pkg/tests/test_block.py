import itertools

import pytest

from mahjong_dfncy.bench import instances
from mahjong_dfncy.block import (
    ZERO_TYPE,
    Block,
    QDcmp,
    TypeTuple,
    block_dfncy,
    block_types,
    enumerate_qdcmps,
    global_types,
    join_types,
    kb_blocks,
    _shared_kb_groups,
    kb_flags,
    plan_types,
    type_of,
)
from mahjong_dfncy.quadtree import quadtree_dfncy
from mahjong_dfncy.tiles import INCOMPLETABLE, KnowledgeBase, Tile, kb_from_hand, parse_hand, parse_kb

from conftest import WINNING_HAND


def test_sample_hand_blocks(sample):
    h, kb = sample
    assert "".join(map(str, kb_blocks(h, kb))) == "(C1)(C4)(C6C7C8C9)(D1D2D3)(D6D6D7D8)"


def test_sample_hand_local_types(sample):
    h, kb = sample
    b1, b2, b3, b4, b5 = kb_blocks(h, kb)
    assert block_types(b1, kb) == {ZERO_TYPE}
    assert block_types(b2, kb) == {ZERO_TYPE}
    assert TypeTuple(1, 0, 0, 0, 0, 0, 0) in block_types(b3, kb)
    assert TypeTuple(1, 0, 0, 0, 0, 0, 0) in block_types(b4, kb)
    assert TypeTuple(1, 0, 0, 0, 1, 1, 1) in block_types(b5, kb)
    assert TypeTuple(3, 0, 0, 0, 1, 1, 1) in global_types(h, kb)
    assert kb_flags(kb) == (1, 1)
    assert block_dfncy(h, kb) == 4


def test_type_of_single_qdcmp(sample):
    h, kb = sample
    b5 = kb_blocks(h, kb)[4]
    D = lambda r: Tile(2, r)
    q = QDcmp(((D(6), D(7), D(8)),), (D(6),))
    assert q in enumerate_qdcmps(b5, kb)
    assert type_of(q, b5, kb) == TypeTuple(1, 0, 0, 0, 1, 1, 1)


def test_blocks_are_single_coloured():
    with pytest.raises(ValueError):
        Block((Tile(0, 1), Tile(1, 1)))
    with pytest.raises(ValueError):
        Block(())


def test_block_connectivity_uses_kb():
    h = parse_hand("B1B3B5B7B9C1C3C5C7C9D1D3D5D7")
    assert len(kb_blocks(h, KnowledgeBase.empty())) == 14
    assert len(kb_blocks(h, kb_from_hand(h))) == 3


def test_winning_and_three_away(three_away):
    h = parse_hand(WINNING_HAND)
    assert block_dfncy(h, kb_from_hand(h)) == 0
    assert block_dfncy(*three_away) == 3


def test_fixed_melds_counted_once():
    h = parse_hand("B1B2B3C4C5C6D7D7;k=2")
    assert block_dfncy(h, kb_from_hand(h)) == 0
    h = parse_hand("B1B2B4C4C5C6D7D7;k=2")
    assert block_dfncy(h, kb_from_hand(h)) == 1
    assert all(t.m >= 2 for t in global_types(h, kb_from_hand(h)))


def test_join_guards():
    a = {TypeTuple(2, 1, 1, 1, 0, 0, 0)}
    assert join_types(a, {TypeTuple(0, 1, 1, 1, 0, 0, 0)}) == set()
    assert join_types({TypeTuple(3, 1, 0, 0, 0, 0, 0)}, {TypeTuple(1, 0, 0, 0, 0, 0, 0)}) == set()
    assert join_types({TypeTuple(3, 1, 0, 0, 0, 0, 0)}, {TypeTuple(0, 1, 1, 0, 0, 0, 0)}) == {
        TypeTuple(3, 2, 1, 0, 0, 0, 0)
    }


def test_join_takes_max_of_remainder_flags():
    x = TypeTuple(1, 0, 0, 0, 1, 0, 0)
    y = TypeTuple(1, 0, 0, 0, 0, 1, 0)
    (z,) = join_types({x}, {y})
    assert (z.m, z.re, z.rm) == (2, 1, 1)


def test_pchow_prune_and_dominance_keep_the_minimum():
    for colours in (1, 2, 3):
        for _, _, h, kb in instances(colours, 20, 2, seed=23):
            d = block_dfncy(h, kb)
            assert block_dfncy(h, kb, prune_pchows=False) == d
            assert block_dfncy(h, kb, dominance=True) == d


def test_exact_in_band():
    for colours in (1, 2, 3):
        for _, _, h, kb in instances(colours, 30, 2, seed=3):
            q = quadtree_dfncy(h, kb)
            if q <= 4:
                assert block_dfncy(h, kb) == q


def test_empty_kb():
    h = parse_hand("B1B2B3B2B3B4B7B7B7D4D5D6C1C2")
    assert block_dfncy(h, KnowledgeBase.empty()) == INCOMPLETABLE


# Pairs where a pmeld completion and a remainder meld or the eye want the
# same last KB copy; the true value comes from the exhaustive search.
KB_SHARING = [
    ("B1B1B2B3B3B5B5D1D2D3D4D6D6D9", "000000101|000000000|011210001"),
    ("B3B3B4B4B5B7D1D3D4D4D4D5D7D9", "100011100|000000000|100020000"),
    ("B1B1B3B4B5B8B8B8B9C2C4C4C6C9", "011101000|001100000|000000000"),
    ("C2C5C5C6C6C7C8C9D1D6D7D7D7D8", "000000000|001100000|101001010"),
]


@pytest.mark.parametrize("hand,kb", KB_SHARING)
def test_kb_copies_are_not_shared(hand, kb):
    h, k = parse_hand(hand), parse_kb(kb)
    assert block_dfncy(h, k) == quadtree_dfncy(h, k) == 4


def test_pair_designated_as_eye_frees_its_copy():
    # (C4C4) as the eye lets C2 grow into C2C3C4; completing it would not.
    kbs = (0, 0, 1, 1, 0, 0, 0, 0, 0)
    types = set(plan_types(((3, 3),), (0, 1, 0, 0, 0, 0, 0, 0, 0), kbs))
    assert types == {TypeTuple(0, 1, 1, 0, 0, 0, 0), TypeTuple(0, 1, 1, 1, 0, 1, 0)}


def test_dead_pair_is_only_an_eye():
    kbs = (0,) * 9
    assert plan_types(((4, 4),), (0,) * 9, kbs) == [TypeTuple(0, 1, 1, 1, 0, 0, 0)]
    assert plan_types(((4, 4), (6, 6)), (0,) * 9, kbs) == []


def test_close_blocks_are_typed_together():
    h, k = parse_hand(KB_SHARING[3][0]), parse_kb(KB_SHARING[3][1])
    assert [str(b) for b in kb_blocks(h, k)] == ["(C2)", "(C5C5C6C6C7C8C9)", "(D1)", "(D6D7D7D7D8)"]
    # C2 and C5 are three ranks apart; D1 and D6 five.
    groups = _shared_kb_groups(h, k)
    assert [(c, sum(v)) for c, v in groups] == [(1, 8), (2, 1), (2, 5)]
