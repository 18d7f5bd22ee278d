"""8-connected component labeling, bounding boxes, and small-area filtering."""

from dataclasses import dataclass

from . import kernels


@dataclass(frozen=True, order=True)
class Box:
    """Inclusive axis-aligned rectangle from (ax, ay) to (bx, by)."""

    ax: int
    ay: int
    bx: int
    by: int

    def __post_init__(self):
        if self.ax > self.bx or self.ay > self.by:
            raise ValueError(
                f"degenerate box ({self.ax},{self.ay})-({self.bx},{self.by})"
            )

    def area(self):
        return (self.bx - self.ax + 1) * (self.by - self.ay + 1)


@dataclass(frozen=True)
class Component:
    """One labeled region: positive label, pixel area, minimal bounding box."""

    label: int
    area: int
    box: Box

    def __post_init__(self):
        if self.label < 1:
            raise ValueError("labels start at 1")
        if self.area < 1:
            raise ValueError("components contain at least one pixel")


@dataclass(frozen=True)
class LabelMap:
    """Row-major label raster: 0 = background, regions numbered 1..count."""

    width: int
    height: int
    labels: object  # array('i'), length width*height
    count: int

    def at(self, x, y):
        return self.labels[y * self.width + x]


def label8(img):
    """Label maximal 8-connected foreground regions.

    Returns (LabelMap, components). Labels are dense, starting at 1, in
    raster first-encounter order; the component list is sorted by label.
    """
    labels, count = kernels.label8(img.bits, img.width, img.height)
    stats = kernels.region_stats(labels, count, img.width, img.height)
    comps = [
        Component(lab, area, Box(ax, ay, bx, by))
        for lab, (area, ax, ay, bx, by) in enumerate(stats, start=1)
    ]
    return LabelMap(img.width, img.height, labels, count), comps


def filter_small(comps, min_area):
    """Split components into (kept, removed) by area, preserving order.

    Components with area strictly below ``min_area`` are removed; the
    default pipeline threshold of 30 discards diacritic dots while keeping
    stroke bodies.
    """
    if min_area < 0:
        raise ValueError("min_area must be non-negative")
    kept = []
    removed = []
    for c in comps:
        (kept if c.area >= min_area else removed).append(c)
    return kept, removed


def masked_areas(label_map, mask_bits):
    """Per-label pixel counts restricted to positions set in ``mask_bits``.

    Used to measure each connected region by its original ink rather than
    its morphologically inflated extent. Returns a list indexed by label-1.
    """
    if len(mask_bits) != label_map.width * label_map.height:
        raise ValueError("mask size does not match label map")
    return kernels.masked_area(label_map.labels, label_map.count, mask_bits)
