"""Raster data model, Netpbm I/O, histogramming, and Otsu binarization.

Coordinates are 0-based: x = column from left, y = row from top. Storage is
row-major, so pixel (x, y) lives at index y*width + x. In binary images 1 is
foreground ink and 0 is background, matching PBM's "1 = black".
"""

from collections import Counter
from dataclasses import dataclass


class ParseError(ValueError):
    """Malformed Netpbm input; ``offset`` is the byte position at fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster; ``data`` holds width*height intensities."""

    width: int
    height: int
    data: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if len(self.data) != self.width * self.height:
            raise ValueError(
                f"data length {len(self.data)} != "
                f"{self.width}x{self.height} = {self.width * self.height}"
            )


@dataclass(frozen=True)
class BinaryImage:
    """Bilevel raster; ``bits`` holds width*height values from {0, 1}."""

    width: int
    height: int
    bits: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if not isinstance(self.bits, bytes):
            object.__setattr__(self, "bits", bytes(self.bits))
        if len(self.bits) != self.width * self.height:
            raise ValueError(
                f"bits length {len(self.bits)} != "
                f"{self.width}x{self.height} = {self.width * self.height}"
            )
        if self.bits.translate(None, b"\x00\x01"):
            raise ValueError("bits must contain only 0 and 1")

    def foreground(self):
        """Number of 1-pixels."""
        return self.bits.count(1)


@dataclass(frozen=True)
class Histogram:
    """Intensity histogram: exactly 256 bins plus their sum."""

    bins: tuple
    total: int

    def __post_init__(self):
        if not isinstance(self.bins, tuple):
            object.__setattr__(self, "bins", tuple(self.bins))
        if len(self.bins) != 256:
            raise ValueError("histogram must have exactly 256 bins")
        if any(b < 0 for b in self.bins):
            raise ValueError("histogram bins must be non-negative")
        if self.total != sum(self.bins):
            raise ValueError("histogram total does not match bin sum")


class _Scanner:
    """Token reader for Netpbm headers; tracks byte offsets for errors."""

    def __init__(self, blob):
        self.blob = blob
        self.pos = 0

    def skip_space(self):
        blob = self.blob
        n = len(blob)
        while self.pos < n:
            c = blob[self.pos]
            if c in b" \t\r\n\x0b\x0c":
                self.pos += 1
            elif c == 0x23:  # '#' comment runs to end of line
                while self.pos < n and blob[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def token(self, what):
        self.skip_space()
        start = self.pos
        blob = self.blob
        n = len(blob)
        while self.pos < n and blob[self.pos] not in b" \t\r\n\x0b\x0c#":
            self.pos += 1
        if self.pos == start:
            raise ParseError(f"missing {what}", start)
        return blob[start:self.pos], start

    def number(self, what):
        tok, start = self.token(what)
        if not tok.isdigit():
            raise ParseError(f"{what} is not a number: {tok!r}", start)
        return int(tok), start

    def raster(self, size, what):
        # exactly one whitespace byte separates the header from binary data
        if self.pos >= len(self.blob) or self.blob[self.pos] not in b" \t\r\n":
            raise ParseError(f"missing whitespace before {what}", self.pos)
        self.pos += 1
        if len(self.blob) - self.pos < size:
            raise ParseError(
                f"truncated {what}: need {size} bytes, have "
                f"{len(self.blob) - self.pos}",
                len(self.blob),
            )
        out = self.blob[self.pos:self.pos + size]
        self.pos += size
        return out


def load_pgm(blob):
    """Parse a P2 (ASCII) or P5 (binary) PGM into a GrayImage."""
    sc = _Scanner(blob)
    magic, at = sc.token("magic")
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"not a PGM file: magic {magic!r}", at)
    width, at = sc.number("width")
    height, at = sc.number("height")
    if width < 1 or height < 1:
        raise ParseError(f"bad dimensions {width}x{height}", at)
    maxval, at = sc.number("maxval")
    if not 1 <= maxval <= 255:
        raise ParseError(f"maxval {maxval} out of range 1..255", at)
    n = width * height
    if magic == b"P5":
        data = sc.raster(n, "pixel data")
    else:
        samples = bytearray(n)
        for i in range(n):
            v, at = sc.number("pixel sample")
            if v > maxval:
                raise ParseError(f"sample {v} exceeds maxval {maxval}", at)
            samples[i] = v
        data = bytes(samples)
    return GrayImage(width, height, data)


def save_pgm(img):
    """Serialize a GrayImage as binary P5."""
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.data


def load_pbm(blob):
    """Parse a P1 (ASCII) or P4 (packed) PBM into a BinaryImage."""
    sc = _Scanner(blob)
    magic, at = sc.token("magic")
    if magic not in (b"P1", b"P4"):
        raise ParseError(f"not a PBM file: magic {magic!r}", at)
    width, at = sc.number("width")
    height, at = sc.number("height")
    if width < 1 or height < 1:
        raise ParseError(f"bad dimensions {width}x{height}", at)
    n = width * height
    bits = bytearray(n)
    if magic == b"P4":
        row_bytes = (width + 7) // 8
        payload = sc.raster(row_bytes * height, "bitmap data")
        i = 0
        for y in range(height):
            base = y * row_bytes
            for x in range(width):
                bits[i] = (payload[base + (x >> 3)] >> (7 - (x & 7))) & 1
                i += 1
    else:
        # P1 digits may appear with or without separating whitespace
        i = 0
        while i < n:
            sc.skip_space()
            if sc.pos >= len(blob):
                raise ParseError(
                    f"truncated bitmap: {i} of {n} bits present", sc.pos
                )
            c = blob[sc.pos]
            if c == 0x30:
                bits[i] = 0
            elif c == 0x31:
                bits[i] = 1
            else:
                raise ParseError(f"bad bitmap digit {chr(c)!r}", sc.pos)
            sc.pos += 1
            i += 1
    return BinaryImage(width, height, bytes(bits))


def save_pbm(img):
    """Serialize a BinaryImage as packed P4 (MSB-first, rows byte-padded)."""
    width, height, bits = img.width, img.height, img.bits
    row_bytes = (width + 7) // 8
    payload = bytearray(row_bytes * height)
    for y in range(height):
        row = y * width
        base = y * row_bytes
        for x in range(width):
            if bits[row + x]:
                payload[base + (x >> 3)] |= 0x80 >> (x & 7)
    return b"P4\n%d %d\n" % (width, height) + bytes(payload)


def save_ppm(width, height, rgb):
    """Serialize raw RGB triplets (3*width*height bytes) as binary P6."""
    if len(rgb) != 3 * width * height:
        raise ValueError("rgb payload length must be 3*width*height")
    return b"P6\n%d %d\n255\n" % (width, height) + bytes(rgb)


def histogram(img):
    """Intensity histogram of a GrayImage."""
    bins = [0] * 256
    for v, n in Counter(img.data).items():
        bins[v] = n
    return Histogram(tuple(bins), img.width * img.height)


def otsu_threshold(h):
    """Smallest threshold maximizing between-class variance.

    Class 0 holds intensities <= t. Comparisons use exact integer
    cross-multiplication, so results never depend on float rounding and are
    invariant under uniform scaling of the histogram. Degenerate rule: a
    histogram with a single populated bin returns that bin's intensity
    (the variance is identically zero, so no threshold is distinguished).
    """
    if h.total == 0:
        raise ValueError("empty histogram")
    populated = [v for v in range(256) if h.bins[v]]
    if len(populated) == 1:
        return populated[0]
    total = h.total
    total_sum = sum(v * h.bins[v] for v in range(256))
    best_t = 0
    best_num = 0  # (s0*w1 - s1*w0)^2 of the best threshold
    best_den = 1  # w0*w1 of the best threshold
    w0 = 0
    s0 = 0
    for t in range(256):
        w0 += h.bins[t]
        s0 += t * h.bins[t]
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        s1 = total_sum - s0
        num = (s0 * w1 - s1 * w0) ** 2
        den = w0 * w1
        # num/den > best_num/best_den, exactly
        if num * best_den > best_num * den:
            best_num, best_den, best_t = num, den, t
    return best_t


def binarize(img, t):
    """Threshold a GrayImage: ink is dark, so bit = 1 iff intensity <= t."""
    if not 0 <= t <= 255:
        raise ValueError(f"threshold {t} out of range 0..255")
    table = bytes(1 if v <= t else 0 for v in range(256))
    return BinaryImage(img.width, img.height, img.data.translate(table))
