import pytest

from mahjong_dfncy.tiles import parse_hand, parse_kb

SAMPLE_HAND = "C1C4C6C7C8C9D1D2D3D6D6D7D8"
SAMPLE_KB = "001100121|010000030|032242321"
WINNING_HAND = "B1B2B3B2B3B4B7B7B7D4D5D6C1C1"
THREE_AWAY_HAND = "B1B5B6B8B8B8B9D1D2D4D5D5D6D7"
THREE_AWAY_KB = "343423023|434434443|334220344"
DISCARD_HAND = "C1C1C1C5C6C8C9C9C9D3D3D4D5D5"
DISCARD_KB = "333411123|010433411|101121422"
DISCARD_VALUES = [9, 9, 9, 13, 9, 19, 9, 9, 14, 14, 11, 14, 14]


@pytest.fixture
def sample():
    return parse_hand(SAMPLE_HAND), parse_kb(SAMPLE_KB)


@pytest.fixture
def three_away():
    return parse_hand(THREE_AWAY_HAND), parse_kb(THREE_AWAY_KB)


@pytest.fixture
def discard_example():
    return parse_hand(DISCARD_HAND), parse_kb(DISCARD_KB)
