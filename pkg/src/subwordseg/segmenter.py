"""End-to-end segmentation pipeline for one word image.

Stages: binarize (Otsu or explicit threshold), gap-connecting morphology,
optional thinning, component labeling, small-component filtering, then
bounding boxes ordered right-to-left (Arabic reading order).
"""

from dataclasses import dataclass, field

from .components import Box, filter_small, label8, masked_areas
from .morphology import CgsConfig, connect_gaps
from .raster import BinaryImage, binarize, histogram, otsu_threshold
from .skeleton import thin_zhang_suen

EXACT = "exact"
OVER = "over"
UNDER = "under"

SIZE_FROM_INK = "ink"
SIZE_FROM_COMPONENT = "component"


@dataclass(frozen=True)
class PipelineConfig:
    """Segmentation knobs.

    threshold: fixed binarization level, or None for Otsu.
    cgs: morphology configuration, or None to skip gap connection.
    min_area: components measuring below this are dropped as diacritics.
    apply_skeleton: thin strokes to 1-pixel paths before labeling.
    size_from: what "size" means for the diacritic filter. "ink" measures
        each labeled component by its pre-morphology ink pixels, so dilation
        cannot inflate a dot past the threshold; "component" measures the
        labeled pixels themselves (with skeletonization on, that is usually
        the more meaningful choice).
    """

    threshold: int | None = None
    cgs: CgsConfig | None = field(default_factory=CgsConfig)
    min_area: int = 30
    apply_skeleton: bool = False
    size_from: str = SIZE_FROM_INK

    def __post_init__(self):
        if self.min_area < 0:
            raise ValueError("min_area must be non-negative")
        if self.threshold is not None and not 0 <= self.threshold <= 255:
            raise ValueError("threshold must be in 0..255")
        if self.size_from not in (SIZE_FROM_INK, SIZE_FROM_COMPONENT):
            raise ValueError(f"unknown size_from {self.size_from!r}")


@dataclass(frozen=True)
class SegmentationResult:
    """Sub-word boxes for one word image plus filtered-component accounting.

    boxes are ordered right-to-left (descending ax, ties by ascending ay).
    stage_trace holds (stage name, foreground pixels, component count) per
    executed stage.
    """

    image_id: str
    boxes: tuple
    removed_count: int
    removed_boxes: tuple
    stage_trace: tuple


def _rtl(boxes):
    return tuple(sorted(boxes, key=lambda b: (-b.ax, b.ay)))


def _binarize_auto(img, threshold):
    if threshold is not None:
        return binarize(img, threshold)
    h = histogram(img)
    if sum(1 for b in h.bins if b) == 1:
        # uniform image: no contrast to threshold, treat as blank
        return BinaryImage(img.width, img.height, bytes(img.width * img.height))
    return binarize(img, otsu_threshold(h))


def segment_word(img, cfg=PipelineConfig(), image_id=""):
    """Segment a grayscale word image into sub-word bounding boxes."""
    binary = _binarize_auto(img, cfg.threshold)
    label_map, comps = label8(binary)
    trace = [("binarize", binary.foreground(), len(comps))]

    target = binary
    if cfg.cgs is not None:
        target = connect_gaps(binary, cfg.cgs)
        label_map, comps = label8(target)
        trace.append(("connect_gaps", target.foreground(), len(comps)))
    if cfg.apply_skeleton:
        target = thin_zhang_suen(target)
        label_map, comps = label8(target)
        trace.append(("thin", target.foreground(), len(comps)))

    if cfg.size_from == SIZE_FROM_INK:
        measures = masked_areas(label_map, binary.bits)
        kept, removed = [], []
        for comp, measure in zip(comps, measures):
            (kept if measure >= cfg.min_area else removed).append(comp)
    else:
        kept, removed = filter_small(comps, cfg.min_area)

    return SegmentationResult(
        image_id=image_id,
        boxes=_rtl(c.box for c in kept),
        removed_count=len(removed),
        removed_boxes=_rtl(c.box for c in removed),
        stage_trace=tuple(trace),
    )


def classify_count(pred_count, truth_count):
    """Compare predicted and true sub-word counts: exact, over, or under."""
    if pred_count < 0 or truth_count < 0:
        raise ValueError("counts must be non-negative")
    if pred_count < truth_count:
        return UNDER
    if pred_count > truth_count:
        return OVER
    return EXACT


def _box_record(box):
    return {"ax": box.ax, "ay": box.ay, "bx": box.bx, "by": box.by}


def _box_from_record(d):
    return Box(int(d["ax"]), int(d["ay"]), int(d["bx"]), int(d["by"]))


def result_record(result):
    """JSON-ready dict for one image: {id, boxes: […], removed: […]}."""
    return {
        "id": result.image_id,
        "boxes": [_box_record(b) for b in result.boxes],
        "removed": [_box_record(b) for b in result.removed_boxes],
    }


def result_from_record(d):
    """Rebuild a SegmentationResult from its serialized record."""
    removed = tuple(_box_from_record(b) for b in d.get("removed", []))
    return SegmentationResult(
        image_id=str(d["id"]),
        boxes=tuple(_box_from_record(b) for b in d["boxes"]),
        removed_count=len(removed),
        removed_boxes=removed,
        stage_trace=(),
    )
