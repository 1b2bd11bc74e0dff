import pytest

from mahjong_dfncy.completeness import decompositions, is_complete
from mahjong_dfncy.tiles import parse_hand

from conftest import WINNING_HAND


def test_winning_hand_is_complete_with_known_decomposition():
    h = parse_hand(WINNING_HAND)
    assert is_complete(h)
    assert "(B1B2B3)(B2B3B4)(B7B7B7)(D4D5D6)(C1C1)" in [str(d) for d in decompositions(h)]


def test_triple_triplets_read_two_ways():
    h = parse_hand("B1B1B1B2B2B2B3B3B3C5C5D1D2D3")
    found = {str(d) for d in decompositions(h)}
    assert found == {
        "(B1B1B1)(B2B2B2)(B3B3B3)(D1D2D3)(C5C5)",
        "(B1B2B3)(B1B2B3)(B1B2B3)(D1D2D3)(C5C5)",
    }


def test_incomplete_hand():
    assert not is_complete(parse_hand("B1B2B4B5B7B8C1C3C5C7D1D3D5D7"))
    assert decompositions(parse_hand("B1B2B4B5B7B8C1C3C5C7D1D3D5D7")) == []


def test_fixed_melds_shrink_the_hand():
    assert is_complete(parse_hand("B1B2B3C4C5C6D7D7;k=2"))


def test_thirteen_tiles_rejected():
    with pytest.raises(ValueError):
        is_complete(parse_hand("B1B2B3C4C5C6D7D7D7D8D8D8C1"))
