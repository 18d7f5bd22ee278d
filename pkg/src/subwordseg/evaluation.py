"""Box matching against ground truth, confusion counts, and metrics.

Boxes are matched on intersection area over truth box area:
predicted boxes are morphologically inflated while truth boxes are minimal,
so a prediction containing its truth scores 1.0. The symmetric IoU is
computed and reported alongside for reference, never used for matching.
"""

from dataclasses import dataclass

from .segmenter import EXACT, OVER, UNDER, classify_count

EXCELLENT = "excellent"
GOOD = "good"
POOR = "poor"

TN_DIACRITICS = "diacritics"  # filtered small components count as TN
TN_ZERO = "zero"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    def __add__(self, other):
        return ConfusionCounts(
            self.tp + other.tp,
            self.fp + other.fp,
            self.fn + other.fn,
            self.tn + other.tn,
        )


@dataclass(frozen=True)
class Metrics:
    """The five ratio metrics; None marks an undefined (0/0) value."""

    accuracy: float | None
    precision: float | None
    recall: float | None
    specificity: float | None
    f_score: float | None


@dataclass(frozen=True)
class MatchPair:
    pred: object  # Box
    truth: object  # Box
    overlap: float
    iou: float
    quality: str


@dataclass(frozen=True)
class MatchReport:
    """One-to-one box matching outcome for a single word."""

    pairs: tuple
    unmatched_pred: tuple
    unmatched_truth: tuple
    count_class: str


def _intersection(a, b):
    w = min(a.bx, b.bx) - max(a.ax, b.ax) + 1
    h = min(a.by, b.by) - max(a.ay, b.ay) + 1
    if w <= 0 or h <= 0:
        return 0
    return w * h


def overlap_ratio(pred, truth):
    """Intersection area divided by truth area; 1.0 when pred covers truth."""
    return _intersection(pred, truth) / truth.area()


def iou(pred, truth):
    """Intersection over union, the symmetric companion ratio."""
    inter = _intersection(pred, truth)
    return inter / (pred.area() + truth.area() - inter)


def _quality(ratio, excellent, good):
    if ratio >= excellent:
        return EXCELLENT
    if ratio >= good:
        return GOOD
    return POOR


def match_boxes(pred, truth, threshold=0.5, excellent=0.8, good=0.5):
    """Greedily match predictions to truth boxes, one-to-one.

    Candidate pairs with overlap_ratio >= threshold are taken in order of
    descending ratio, ties broken by (truth index, pred index). Matched
    pairs are graded excellent/good/poor against the quality cutoffs.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    candidates = []
    for ti, t in enumerate(truth):
        for pi, pr in enumerate(pred):
            r = overlap_ratio(pr, t)
            if r >= threshold:
                candidates.append((-r, ti, pi))
    candidates.sort()
    used_t = set()
    used_p = set()
    pairs = []
    for neg_r, ti, pi in candidates:
        if ti in used_t or pi in used_p:
            continue
        used_t.add(ti)
        used_p.add(pi)
        pr, t = pred[pi], truth[ti]
        pairs.append(
            MatchPair(pr, t, -neg_r, iou(pr, t), _quality(-neg_r, excellent, good))
        )
    return MatchReport(
        pairs=tuple(pairs),
        unmatched_pred=tuple(p for i, p in enumerate(pred) if i not in used_p),
        unmatched_truth=tuple(t for i, t in enumerate(truth) if i not in used_t),
        count_class=classify_count(len(pred), len(truth)),
    )


def counts_from_match(report, removed_small=0, policy=TN_DIACRITICS):
    """Confusion counts for one word's match report.

    True negatives have no natural box-level source; under the default
    policy the filtered small components stand in (they are regions the
    segmenter correctly declined to report), under "zero" TN stays 0.
    """
    if policy not in (TN_DIACRITICS, TN_ZERO):
        raise ValueError(f"unknown TN policy {policy!r}")
    return ConfusionCounts(
        tp=len(report.pairs),
        fp=len(report.unmatched_pred),
        fn=len(report.unmatched_truth),
        tn=removed_small if policy == TN_DIACRITICS else 0,
    )


def _ratio(num, den):
    return None if den == 0 else num / den


def metrics(c):
    """Accuracy, precision, recall, specificity, F-score from counts.

    Any 0/0 ratio is undefined and reported as None, never coerced to 0.
    """
    precision = _ratio(c.tp, c.tp + c.fp)
    recall = _ratio(c.tp, c.tp + c.fn)
    if precision is None or recall is None or precision + recall == 0:
        f_score = None
    else:
        f_score = 2 * precision * recall / (precision + recall)
    return Metrics(
        accuracy=_ratio(c.tp + c.tn, c.tp + c.fp + c.fn + c.tn),
        precision=precision,
        recall=recall,
        specificity=_ratio(c.tn, c.tn + c.fp),
        f_score=f_score,
    )


@dataclass(frozen=True)
class WordEval:
    id: str
    match: MatchReport


@dataclass(frozen=True)
class EvalReport:
    """Corpus-level evaluation: per-word matches plus aggregate numbers."""

    threshold: float
    words: tuple
    counts: ConfusionCounts
    metrics: Metrics
    miss_rate: float | None
    seg_classes: dict

    def record(self):
        """JSON-ready dict mirroring the on-disk report layout."""

        def box(b):
            return {"ax": b.ax, "ay": b.ay, "bx": b.bx, "by": b.by}

        return {
            "threshold": self.threshold,
            "words": [
                {
                    "id": w.id,
                    "pairs": [
                        {
                            "pred": box(p.pred),
                            "truth": box(p.truth),
                            "overlap": p.overlap,
                            "iou": p.iou,
                            "quality": p.quality,
                        }
                        for p in w.match.pairs
                    ],
                    "count_class": w.match.count_class,
                }
                for w in self.words
            ],
            "counts": {
                "tp": self.counts.tp,
                "fp": self.counts.fp,
                "fn": self.counts.fn,
                "tn": self.counts.tn,
            },
            "metrics": {
                "accuracy": self.metrics.accuracy,
                "precision": self.metrics.precision,
                "recall": self.metrics.recall,
                "specificity": self.metrics.specificity,
                "f_score": self.metrics.f_score,
            },
            "miss_rate": self.miss_rate,
            "seg_classes": dict(self.seg_classes),
        }


def evaluate_corpus(results, truths, threshold=0.5, tn_policy=TN_DIACRITICS):
    """Match every segmentation result against its ground truth by id."""
    by_id = {}
    for t in truths:
        if t.id in by_id:
            raise ValueError(f"duplicate truth id {t.id!r}")
        by_id[t.id] = t
    seen = set()
    for r in results:
        if r.image_id in seen:
            raise ValueError(f"duplicate result id {r.image_id!r}")
        seen.add(r.image_id)
    missing_truth = sorted(seen - by_id.keys())
    missing_result = sorted(by_id.keys() - seen)
    if missing_truth or missing_result:
        raise ValueError(
            "result/truth id mismatch: "
            f"results without truth {missing_truth}, "
            f"truths without result {missing_result}"
        )

    words = []
    total = ConfusionCounts()
    seg_classes = {EXACT: 0, OVER: 0, UNDER: 0}
    for r in sorted(results, key=lambda r: r.image_id):
        truth = by_id[r.image_id]
        report = match_boxes(list(r.boxes), list(truth.subwords), threshold)
        total = total + counts_from_match(report, r.removed_count, tn_policy)
        seg_classes[report.count_class] += 1
        words.append(WordEval(r.image_id, report))
    return EvalReport(
        threshold=threshold,
        words=tuple(words),
        counts=total,
        metrics=metrics(total),
        miss_rate=_ratio(total.fn, total.tp + total.fn),
        seg_classes=seg_classes,
    )
