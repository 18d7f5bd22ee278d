"""Shared test helpers: ASCII-art rasters and random image builders."""

import random

import pytest

from subwordseg.raster import BinaryImage, GrayImage


def bimg(art):
    """Build a BinaryImage from ASCII art: 'X' or '1' = ink, anything else 0.

    Lines are split on newlines, stripped of common indentation via the
    caller passing clean strings; all rows must be equally long.
    """
    rows = [line for line in art.strip("\n").splitlines()]
    width = len(rows[0])
    assert all(len(r) == width for r in rows), "ragged art"
    bits = bytearray()
    for row in rows:
        bits.extend(1 if c in "X1" else 0 for c in row)
    return BinaryImage(width, len(rows), bytes(bits))


def art(img):
    """Inverse of bimg, for readable assertion failures."""
    lines = []
    for y in range(img.height):
        row = img.bits[y * img.width:(y + 1) * img.width]
        lines.append("".join("X" if b else "." for b in row))
    return "\n".join(lines)


def random_binary(rng, width, height, density=0.35):
    bits = bytes(1 if rng.random() < density else 0 for _ in range(width * height))
    return BinaryImage(width, height, bits)


def random_gray(rng, width, height):
    return GrayImage(width, height, rng.randbytes(width * height))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
