"""ASCII and binary PGM renderings of space-time blocks."""

from __future__ import annotations

import string

from .core import Alphabet, SpaceTimeBlock

_FALLBACK = string.digits + string.ascii_lowercase + string.ascii_uppercase


def palette(alphabet: Alphabet, chars: str = "") -> str:
    """One display character per symbol, in declared order."""
    if chars:
        if len(chars) != alphabet.size:
            raise ValueError("palette must have one character per symbol")
        return chars
    if alphabet.single_char:
        return "".join(alphabet.symbols)
    if alphabet.size > len(_FALLBACK):
        raise ValueError("alphabet too large for the default palette")
    return _FALLBACK[: alphabet.size]


def to_ascii(block: SpaceTimeBlock, alphabet: Alphabet, chars: str = "") -> str:
    pal = palette(alphabet, chars)
    return "\n".join("".join(pal[s] for s in row) for row in block.rows) + "\n"


def gray_levels(k: int) -> list:
    return [255 * i // (k - 1) for i in range(k)]


def to_pgm(block: SpaceTimeBlock, alphabet: Alphabet) -> bytes:
    """Binary P5 image, one byte per cell, rows are time steps."""
    levels = gray_levels(alphabet.size)
    header = f"P5\n{block.width} {len(block.rows)}\n255\n".encode("ascii")
    body = bytes(levels[s] for row in block.rows for s in row)
    return header + body


def read_pgm(data: bytes) -> list:
    """Parse the P5 layout written by :func:`to_pgm` back into rows of gray levels."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM")
    width, height = (int(v) for v in parts[1].split())
    pixels = parts[3]
    if len(pixels) != width * height:
        raise ValueError("truncated PGM")
    return [list(pixels[r * width : (r + 1) * width]) for r in range(height)]
