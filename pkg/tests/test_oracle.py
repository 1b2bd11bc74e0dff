import pytest

from mahjong_dfncy.oracle import (
    dfncy_any,
    nearest_completion,
    one_step_complete,
    oracle_dfncy,
    oracle_dfncy13,
)
from mahjong_dfncy.tiles import INCOMPLETABLE, KnowledgeBase, kb_from_hand, parse_hand

from conftest import WINNING_HAND


def test_complete_hand_has_zero():
    h = parse_hand(WINNING_HAND)
    assert oracle_dfncy(h, kb_from_hand(h)) == 0
    assert oracle_dfncy(h, KnowledgeBase.empty(), cap=0) == 0


def test_one_away():
    h = parse_hand("B1B2B3B2B3B4B7B7B7D4D5D6C1C2")
    kb = kb_from_hand(h)
    assert one_step_complete(h.counts(), kb.counts)
    assert oracle_dfncy(h, kb) == 1
    assert nearest_completion(h, kb) == 1


def test_empty_kb_means_incompletable():
    h = parse_hand("B1B2B3B2B3B4B7B7B7D4D5D6C1C2")
    assert oracle_dfncy(h, KnowledgeBase.empty()) == INCOMPLETABLE
    assert nearest_completion(h, KnowledgeBase.empty()) == INCOMPLETABLE


def test_cap_truncates():
    # Needs D6 and C2.
    h = parse_hand("B1B2B3B2B3B4B7B7B7D4D5D9C1C3")
    kb = kb_from_hand(h)
    assert nearest_completion(h, kb) == 2
    assert oracle_dfncy(h, kb, cap=1) == INCOMPLETABLE
    assert oracle_dfncy(h, kb, cap=2) == 2


def test_sample_hand_thirteen_tiles(sample):
    h, kb = sample
    assert oracle_dfncy13(h, kb, cap=4) == 4
    assert nearest_completion(h, kb) == 4
    assert dfncy_any(h, kb, cap=4) == 4


def test_three_away(three_away):
    h, kb = three_away
    assert oracle_dfncy(h, kb, cap=3) == 3
    assert nearest_completion(h, kb) == 3


def test_argument_errors(sample):
    h, kb = sample
    with pytest.raises(ValueError):
        oracle_dfncy(h, kb)
    with pytest.raises(ValueError):
        oracle_dfncy13(h, kb, cap=0)
    full = parse_hand(WINNING_HAND)
    with pytest.raises(ValueError):
        oracle_dfncy(full, kb_from_hand(full), cap=-1)
    with pytest.raises(ValueError):
        oracle_dfncy13(full, kb_from_hand(full))
