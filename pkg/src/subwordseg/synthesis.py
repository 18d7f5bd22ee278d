"""Deterministic synthetic word images with ground truth.

Each word is a row of thick wiggly strokes (one per sub-word) drawn in
disjoint horizontal spans, optionally cut by vertical gap slices, plus small
square dots standing in for diacritics. Output is grayscale with per-pixel
noise so the real thresholding path is exercised: ink stays at most 64,
background at least 224.

Geometry is arranged so the default morphology behaves predictably:

- stroke spans are separated by ``separation`` columns (default 12, beyond
  the reach of the default gap connection, which advances a flat face by at
  most 5 columns: 4 from dilation plus 1 from bridging at corners);
- stroke centerlines are held flat for 6 columns on either side of a gap
  slice and at span ends, so facing fragment faces share rows;
- both fragments beside a gap keep at least 12 columns of stroke, which at
  the minimum thickness of 3 keeps every fragment's ink comfortably above
  the default diacritic filter;
- dots live in lanes far above or below the stroke band (15+ empty rows),
  so they never merge with strokes, and their areas (9, 16, or 25) always
  fall below the default filter threshold of 30.

The generator is a pure function of its parameters: the same SynthParams
always yields byte-identical image and truth.
"""

import hashlib
import random
from dataclasses import dataclass

from .components import Box
from .groundtruth import WordTruth
from .raster import GrayImage

# carve-outs of the geometry contract above
_MARGIN = 6          # blank frame around everything
_MIN_FRAGMENT = 12   # columns of stroke kept on each side of a gap
_FLAT = 6            # columns of frozen centerline beside gaps and span ends
_CENTER_JITTER = 3   # per-stroke centerline offset from the band center
_WALK_RANGE = 4      # centerline wander around the per-stroke center
_DOT_OFFSET = 26     # dot lane distance from the band center
_DOT_SIZES = (3, 4, 5)
_DOT_GAP = 6         # columns kept clear on each side of a dot in its cell


@dataclass(frozen=True)
class SynthParams:
    """Generator knobs for one word image.

    gap_widths is indexed by stroke: entry i is the width of the slice cut
    out of stroke i (0 = intact). separation is the blank distance between
    adjacent stroke spans; values below 8 guarantee the default morphology
    merges neighbours (useful for under-segmentation fixtures), the default
    12 guarantees it never does.
    """

    subword_count: int = 3
    stroke_thickness: int = 3
    gap_widths: tuple = ()
    dot_count: int = 2
    canvas: tuple = (256, 96)
    seed: int = 0
    separation: int = 12

    def __post_init__(self):
        if not isinstance(self.gap_widths, tuple):
            object.__setattr__(self, "gap_widths", tuple(self.gap_widths))
        if not isinstance(self.canvas, tuple):
            object.__setattr__(self, "canvas", tuple(self.canvas))
        if not 1 <= self.subword_count <= 8:
            raise ValueError("subword_count must be in 1..8")
        if not 3 <= self.stroke_thickness <= 7:
            raise ValueError("stroke_thickness must be in 3..7")
        if len(self.gap_widths) > self.subword_count:
            raise ValueError("more gap widths than strokes")
        if any(not 0 <= g <= 20 for g in self.gap_widths):
            raise ValueError("gap widths must be in 0..20")
        if not 0 <= self.dot_count <= 4:
            raise ValueError("dot_count must be in 0..4")
        if len(self.canvas) != 2 or self.canvas[0] < 1 or self.canvas[1] < 1:
            raise ValueError("canvas must be (width, height)")
        if self.separation < 1:
            raise ValueError("separation must be positive")


def word_seed(corpus_seed, index, purpose="word"):
    """Stable 64-bit per-word seed derived from a corpus seed and index."""
    key = f"{corpus_seed}/{purpose}/{index}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def _spans(p):
    """Disjoint horizontal span (x0, x1) per stroke, rightmost first."""
    width = p.canvas[0]
    usable = width - 2 * _MARGIN - (p.subword_count - 1) * p.separation
    slot = usable // p.subword_count
    if slot < 2 * _MIN_FRAGMENT:
        raise ValueError(
            f"canvas width {width} too small for {p.subword_count} sub-words"
        )
    spans = []
    x = _MARGIN
    for i in range(p.subword_count):
        spans.append((x, x + slot - 1))
        x += slot + p.separation
    spans.reverse()  # reading order is right to left
    return spans


def _gap_for(p, stroke_index):
    if stroke_index < len(p.gap_widths):
        return p.gap_widths[stroke_index]
    return 0


def _stroke_rows(p, rng, span, gap):
    """Centerline row per column of one stroke span.

    The walk is frozen near span ends and around the gap slice so that the
    faces produced by cutting or by span adjacency are flat and aligned.
    """
    x0, x1 = span
    w = x1 - x0 + 1
    if gap:
        if w < 2 * _MIN_FRAGMENT + gap:
            raise ValueError(
                f"span of {w} columns cannot hold a gap of {gap} "
                f"with {_MIN_FRAGMENT}-column fragments"
            )
        gap_start = rng.randint(x0 + _MIN_FRAGMENT, x1 - _MIN_FRAGMENT - gap + 1)
        gap_cols = range(gap_start, gap_start + gap)
        frozen = set(range(gap_start - _FLAT, gap_start + gap + _FLAT))
    else:
        gap_cols = range(0)
        frozen = set()
    frozen.update(range(x0, x0 + _FLAT))
    frozen.update(range(x1 - _FLAT + 1, x1 + 1))

    gc = p.canvas[1] // 2
    center = gc + rng.randint(-_CENTER_JITTER, _CENTER_JITTER)
    lo, hi = center - _WALK_RANGE, center + _WALK_RANGE
    rows = {}
    y = center
    for x in range(x0, x1 + 1):
        if x not in frozen:
            y = min(hi, max(lo, y + rng.choice((-1, 0, 1))))
        rows[x] = y
    return rows, gap_cols


def _place_dots(p, rng, spans):
    """Dot squares (x, y, size), round-robin across strokes and lanes."""
    if not p.dot_count:
        return []
    gc = p.canvas[1] // 2
    if gc - _DOT_OFFSET - max(_DOT_SIZES) < 1 or \
            gc + _DOT_OFFSET + max(_DOT_SIZES) >= p.canvas[1] - 1:
        raise ValueError("canvas height too small for dot lanes")
    k = p.subword_count
    # cell[(stroke, lane)] = how many dots share that lane of that span
    assignment = [(j % k, (j // k) % 2) for j in range(p.dot_count)]
    lane_total = {}
    for key in assignment:
        lane_total[key] = lane_total.get(key, 0) + 1
    lane_seen = {}
    dots = []
    for stroke, lane in assignment:
        x0, x1 = spans[stroke]
        total = lane_total[(stroke, lane)]
        nth = lane_seen.get((stroke, lane), 0)
        lane_seen[(stroke, lane)] = nth + 1
        cell_w = (x1 - x0 + 1) // total
        cx0 = x0 + nth * cell_w
        size = rng.choice(_DOT_SIZES)
        left = cx0 + _DOT_GAP
        right = cx0 + cell_w - 1 - _DOT_GAP - size + 1
        if right < left:
            raise ValueError("spans too narrow to place the requested dots")
        x = rng.randint(left, right)
        if lane == 0:
            y = gc - _DOT_OFFSET - size + 1
        else:
            y = gc + _DOT_OFFSET
        dots.append((x, y, size))
    return dots


def synth_word(p, image_id=None):
    """Generate one (GrayImage, WordTruth) pair from the parameters.

    Truth boxes are the pre-gap stroke extents, rightmost stroke first;
    dots are excluded from the truth.
    """
    if image_id is None:
        image_id = f"S{p.seed & 0xFFFFFFFFFFFFFFFF:016X}"
    rng = random.Random(p.seed)
    width, height = p.canvas
    n = width * height
    spans = _spans(p)
    half = (p.stroke_thickness - 1) // 2
    extra = p.stroke_thickness - 1 - half

    mask = bytearray(n)
    boxes = []
    erase = []
    for i, span in enumerate(spans):
        rows, gap_cols = _stroke_rows(p, rng, span, _gap_for(p, i))
        top = min(rows.values()) - half
        bottom = max(rows.values()) + extra
        boxes.append(Box(span[0], top, span[1], bottom))
        for x, y in rows.items():
            for yy in range(y - half, y + extra + 1):
                mask[yy * width + x] = 1
        for x in gap_cols:
            for yy in range(height):
                erase.append(yy * width + x)
    for i in erase:
        mask[i] = 0
    for x, y, size in _place_dots(p, rng, spans):
        for yy in range(y, y + size):
            row = yy * width
            for xx in range(x, x + size):
                mask[row + xx] = 1

    noise = rng.randbytes(n)
    bg_table = bytes(234 + (b % 13) for b in range(256))
    ink_table = bytes(34 + (b % 13) for b in range(256))
    data = bytearray(noise.translate(bg_table))
    ink = noise.translate(ink_table)
    for i, m in enumerate(mask):
        if m:
            data[i] = ink[i]

    image = GrayImage(width, height, bytes(data))
    truth = WordTruth(image_id, tuple(boxes))
    return image, truth
