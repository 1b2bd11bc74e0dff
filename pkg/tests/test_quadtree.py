import pytest

from mahjong_dfncy.bench import instances
from mahjong_dfncy.oracle import nearest_completion
from mahjong_dfncy.quadtree import PDcmp, completion_cost, pdcmp_cost, quadtree_dfncy, quadtree_search
from mahjong_dfncy.tiles import INCOMPLETABLE, KnowledgeBase, Tile, kb_from_hand, parse_hand

from conftest import WINNING_HAND


def T(s):
    return Tile.parse(s)


def test_complete_hand():
    h = parse_hand(WINNING_HAND)
    assert quadtree_dfncy(h, kb_from_hand(h)) == 0
    assert quadtree_dfncy(h, KnowledgeBase.empty()) == 0


def test_sample_hand(sample):
    assert quadtree_dfncy(*sample) == 4


def test_three_away_needs_lone_pchow(three_away):
    assert quadtree_dfncy(*three_away) == 3


def test_search_modes_agree():
    for _, _, h, kb in instances(3, 6, 2, seed=11):
        fast = quadtree_dfncy(h, kb)
        assert quadtree_dfncy(h, kb, plain=True) == fast
        assert quadtree_dfncy(h, kb, prune=False) == fast


def test_matches_nearest_completion():
    for colours in (1, 2, 3):
        for _, _, h, kb in instances(colours, 15, 2, seed=5):
            assert quadtree_dfncy(h, kb) == nearest_completion(h, kb)


def test_expanded_count_reported():
    h = parse_hand("B1B4B7C1C4C7D1D4D7B2C5D8B9C9")
    d, expanded = quadtree_search(h, kb_from_hand(h))
    assert expanded > 0
    assert d == nearest_completion(h, kb_from_hand(h))


def test_completion_cost_shares_last_copy():
    # Two (B2B4) holders but a single B3 left.
    kb = [0] * 27
    kb[2] = 1
    kb[18] = 4
    assert completion_cost([(1, 3), (1, 3)], (), [], kb, slots=2) == INCOMPLETABLE
    kb[2] = 2
    assert completion_cost([(1, 3), (1, 3)], (), [], kb, slots=2) == 4


def test_pdcmp_cost_of_a_partial_decomposition():
    h = parse_hand("B1B2B3B2B3B4B7B7B7D4D5D6C1C2")
    p = PDcmp(
        ((T("B1"), T("B2"), T("B3")), (T("B2"), T("B3"), T("B4")), (T("B7"),) * 3, (T("D4"), T("D5"), T("D6")), (T("C1"),)),
        (T("C2"),),
    )
    assert pdcmp_cost(p, kb_from_hand(h), h) == 1
    assert pdcmp_cost(p, KnowledgeBase.empty(), h) == INCOMPLETABLE


def test_pdcmp_validation():
    with pytest.raises(ValueError):
        PDcmp(((),) * 4)
    with pytest.raises(ValueError):
        PDcmp(((),) * 4 + ((T("B1"),) * 3,))
    h = parse_hand(WINNING_HAND)
    with pytest.raises(ValueError):
        pdcmp_cost(PDcmp(((),) * 5, (T("B1"),)), kb_from_hand(h), h)
