"""Sub-word segmentation of handwritten word images.

Pipeline: Otsu binarization, gap-connecting morphology (dilate / bridge /
majority fill), 8-connected component labeling, diacritic filtering, and
right-to-left bounding boxes, plus a ground-truth evaluation harness and a
deterministic synthetic corpus generator.
"""

from .components import Box, Component, LabelMap, filter_small, label8
from .evaluation import (
    ConfusionCounts,
    EvalReport,
    MatchReport,
    Metrics,
    counts_from_match,
    evaluate_corpus,
    iou,
    match_boxes,
    metrics,
    overlap_ratio,
)
from .groundtruth import (
    DatasetStats,
    SchemaError,
    WordTruth,
    dataset_stats,
    parse_truth,
    write_truth,
)
from .kernels import BACKEND
from .morphology import CgsConfig, bridge, connect_gaps, dilate8, majority_fill
from .raster import (
    BinaryImage,
    GrayImage,
    Histogram,
    ParseError,
    binarize,
    histogram,
    load_pbm,
    load_pgm,
    otsu_threshold,
    save_pbm,
    save_pgm,
    save_ppm,
)
from .segmenter import (
    PipelineConfig,
    SegmentationResult,
    classify_count,
    segment_word,
)
from .skeleton import thin_zhang_suen
from .synthesis import SynthParams, synth_word, word_seed

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryImage",
    "Box",
    "CgsConfig",
    "Component",
    "ConfusionCounts",
    "DatasetStats",
    "EvalReport",
    "GrayImage",
    "Histogram",
    "LabelMap",
    "MatchReport",
    "Metrics",
    "ParseError",
    "PipelineConfig",
    "SchemaError",
    "SegmentationResult",
    "SynthParams",
    "WordTruth",
    "binarize",
    "bridge",
    "classify_count",
    "connect_gaps",
    "counts_from_match",
    "dataset_stats",
    "dilate8",
    "evaluate_corpus",
    "filter_small",
    "histogram",
    "iou",
    "label8",
    "load_pbm",
    "load_pgm",
    "majority_fill",
    "match_boxes",
    "metrics",
    "otsu_threshold",
    "overlap_ratio",
    "parse_truth",
    "save_pbm",
    "save_pgm",
    "save_ppm",
    "segment_word",
    "synth_word",
    "thin_zhang_suen",
    "word_seed",
    "write_truth",
]
