"""Knowledge-aware Mahjong deficiency (shanten) computation."""
