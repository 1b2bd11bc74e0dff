import pytest
from hypothesis import given, strategies as st

from mahjong_dfncy.tiles import (
    Hand,
    KnowledgeBase,
    ParseError,
    Tile,
    format_hand,
    format_kb,
    kb_from_hand,
    parse_hand,
    parse_kb,
    permute_colours,
    replace_tile,
    tile_succ,
)


def test_tile_index_round_trip():
    for i in range(27):
        t = Tile.from_index(i)
        assert t.index == i
        assert Tile.parse(str(t)) == t
    assert Tile.parse("D9").index == 26


def test_tile_succ_stops_at_nine():
    assert tile_succ(Tile.parse("B7"), 2) == Tile.parse("B9")
    assert tile_succ(Tile.parse("B9")) is None
    with pytest.raises(ValueError):
        tile_succ(Tile.parse("B1"), 3)


def test_parse_hand_accepts_separators_and_suffix():
    h = parse_hand("B1B2B3 | C4C5C6 D7D8D9D9;k=1")
    assert len(h) == 10
    assert h.melds_fixed == 1
    assert format_hand(h) == "B1B2B3C4C5C6D7D8D9D9;k=1"


@pytest.mark.parametrize(
    "text",
    ["B1B2X", "B0" + "B1" * 12, "B1" * 5 + "B2" * 9, "B1B2B3", "B1B2B3B4B5B6B7B8B9C1C2C3C4C5;k=9"],
)
def test_parse_hand_rejects(text):
    with pytest.raises(ParseError):
        parse_hand(text)


def test_parse_kb_grammar():
    kb = parse_kb("001100121|010000030|032242321")
    assert kb.total() == 29
    assert parse_kb("001100121010000030032242321") == kb
    assert format_kb(kb) == "001100121|010000030|032242321"
    for bad in ["0011|00121010000030032242321", "5" * 27, "0" * 26, "0" * 9 + "|" + "0" * 9 + "|" + "0" * 8]:
        with pytest.raises(ParseError):
            parse_kb(bad)


def test_kb_from_hand_is_complement():
    h = parse_hand("B1B1B1B1B2B3B4B5B6B7B8B9C1C1")
    kb = kb_from_hand(h)
    assert kb[Tile.parse("B1")] == 0
    assert kb[Tile.parse("C1")] == 2
    assert kb.total() == 108 - 14
    assert kb.compatible_with(h)


def test_replace_tile_consumes_kb_and_keeps_discard_out():
    h = parse_hand("B1B1B1B2B3B4B5B6B7B8B9C1C1C2")
    kb = kb_from_hand(h)
    h2, kb2 = replace_tile(h, Tile.parse("C2"), Tile.parse("C1"), kb)
    assert h2.count(Tile.parse("C1")) == 3
    assert kb2[Tile.parse("C1")] == kb[Tile.parse("C1")] - 1
    assert kb2[Tile.parse("C2")] == kb[Tile.parse("C2")]


def test_replace_tile_errors():
    h = parse_hand("B1B1B1B1B2B3B4B5B6B7B8B9C1C2")
    kb = kb_from_hand(h)
    with pytest.raises(ValueError):
        replace_tile(h, Tile.parse("C1"), Tile.parse("C1"), kb)
    with pytest.raises(ValueError):
        replace_tile(h, Tile.parse("D1"), Tile.parse("C1"), kb)
    with pytest.raises(ValueError):
        replace_tile(h, Tile.parse("C1"), Tile.parse("B1"), kb)
    with pytest.raises(ValueError):
        replace_tile(h, Tile.parse("C1"), Tile.parse("D5"), KnowledgeBase.empty())


def test_hand_size_rules():
    with pytest.raises(ValueError):
        Hand(tuple(Tile.from_index(i) for i in range(12)))
    Hand(tuple(Tile.from_index(i) for i in range(11)), melds_fixed=1)


def hands():
    # Physical tiles 0..107, four per kind.
    physical = st.lists(st.integers(0, 107), min_size=13, max_size=14, unique=True)
    return physical.map(lambda xs: Hand(tuple(Tile.from_index(x // 4) for x in xs)))


@given(hands())
def test_hand_text_round_trip(h):
    assert parse_hand(format_hand(h)) == h


@given(hands(), st.permutations([0, 1, 2]))
def test_permute_colours_preserves_kb_total(h, perm):
    kb = kb_from_hand(h)
    h2, kb2 = permute_colours(h, kb, perm)
    assert kb2.total() == kb.total()
    assert kb2.compatible_with(h2)
    assert sorted(t.rank for t in h2.tiles) == sorted(t.rank for t in h.tiles)
