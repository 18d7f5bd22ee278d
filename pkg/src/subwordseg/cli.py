"""Command-line interface: segment, evaluate, synth, stats.

Exit codes are a stable contract: 0 success, 1 partial failure (some files
failed but the batch ran), 2 usage or configuration error. Batch work can
fan out over processes with --jobs (or the SUBWORDSEG_JOBS env var);
aggregation is id-ordered, so outputs are byte-identical at any parallelism.
"""

import argparse
import dataclasses
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .evaluation import evaluate_corpus
from .groundtruth import dataset_stats, parse_truth, write_truth
from .morphology import EXACTLY_TWO, MATLAB_BRIDGE, CgsConfig
from .raster import GrayImage, load_pbm, load_pgm, save_pgm, save_ppm
from .segmenter import (
    PipelineConfig,
    result_from_record,
    result_record,
    segment_word,
)
from .synthesis import SynthParams, synth_word, word_seed

RED = (255, 0, 0)
GREEN = (0, 255, 0)


def _dump_json(obj):
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()


def _default_jobs():
    env = os.environ.get("SUBWORDSEG_JOBS", "").strip()
    if env.isdigit() and int(env) > 0:
        return int(env)
    return 1


def _pool_map(jobs, fn, tasks):
    tasks = list(tasks)
    if jobs < 1:
        jobs = os.cpu_count() or 1
    if jobs == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _load_image(path):
    blob = path.read_bytes()
    if path.suffix.lower() == ".pbm" or blob[:2] in (b"P1", b"P4"):
        binary = load_pbm(blob)
        # re-express as grayscale so the normal thresholding path applies
        table = bytes((0 if v == 1 else 255) for v in range(256))
        return GrayImage(binary.width, binary.height, binary.bits.translate(table))
    return load_pgm(blob)


def _draw_box(rgb, width, height, box, color):
    ax = max(0, min(box.ax, width - 1))
    bx = max(0, min(box.bx, width - 1))
    ay = max(0, min(box.ay, height - 1))
    by = max(0, min(box.by, height - 1))
    r, g, b = color
    for x in range(ax, bx + 1):
        for y in (ay, by):
            i = 3 * (y * width + x)
            rgb[i], rgb[i + 1], rgb[i + 2] = r, g, b
    for y in range(ay, by + 1):
        for x in (ax, bx):
            i = 3 * (y * width + x)
            rgb[i], rgb[i + 1], rgb[i + 2] = r, g, b


def _annotate(img, pred_boxes, truth_boxes):
    """Render the grayscale image as RGB with truth red, predictions green."""
    n = img.width * img.height
    rgb = bytearray(3 * n)
    rgb[0::3] = img.data
    rgb[1::3] = img.data
    rgb[2::3] = img.data
    for box in truth_boxes:
        _draw_box(rgb, img.width, img.height, box, RED)
    for box in pred_boxes:
        _draw_box(rgb, img.width, img.height, box, GREEN)
    return save_ppm(img.width, img.height, rgb)


def _collect_inputs(paths):
    """Expand files/directories into image paths; unreadable entries error."""
    files = []
    errors = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found = sorted(
                q for q in p.iterdir() if q.suffix.lower() in (".pgm", ".pbm")
            )
            if not found:
                errors.append(f"{p}: no .pgm/.pbm files in directory")
            files.extend(found)
        elif p.is_file():
            files.append(p)
        else:
            errors.append(f"{p}: no such file or directory")
    return files, errors


def _segment_one(task):
    path_str, out_dir, annotate_dir, truth_dir, cfg = task
    path = Path(path_str)
    image_id = path.stem
    try:
        img = _load_image(path)
        result = segment_word(img, cfg, image_id)
        out = Path(out_dir) if out_dir else path.parent
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{image_id}.boxes.json").write_bytes(
            _dump_json(result_record(result))
        )
        if annotate_dir is not None:
            truth_boxes = ()
            if truth_dir is not None:
                for suffix in (".xml", ".json"):
                    tpath = Path(truth_dir) / f"{image_id}{suffix}"
                    if tpath.is_file():
                        truth_boxes = parse_truth(tpath.read_bytes()).subwords
                        break
            adir = Path(annotate_dir)
            adir.mkdir(parents=True, exist_ok=True)
            (adir / f"{image_id}.ppm").write_bytes(
                _annotate(img, result.boxes, truth_boxes)
            )
        return image_id, None
    except (OSError, ValueError) as e:
        return image_id, f"{path}: {e}"


def cmd_segment(args):
    files, errors = _collect_inputs(args.inputs)
    cfg = PipelineConfig(
        threshold=args.threshold,
        cgs=None if args.no_cgs else CgsConfig(bridge_rule=args.bridge_rule),
        min_area=args.min_area,
        apply_skeleton=args.skeleton,
    )
    tasks = [
        (str(p), args.out, args.annotate, args.truth, cfg) for p in files
    ]
    for _, error in _pool_map(args.jobs, _segment_one, tasks):
        if error:
            errors.append(error)
    for line in errors:
        print(f"error: {line}", file=sys.stderr)
    return 1 if errors else 0


def _scan_truth_dir(path):
    """Map id -> truth file for .xml and .json files (not .boxes.json)."""
    out = {}
    for p in sorted(Path(path).iterdir()):
        if p.name.endswith(".boxes.json") or p.name == "manifest.json":
            continue
        if p.suffix.lower() in (".xml", ".json"):
            out[p.stem] = p
    return out


def cmd_evaluate(args):
    pred_dir = Path(args.pred)
    truth_dir = Path(args.truth)
    if not pred_dir.is_dir() or not truth_dir.is_dir():
        print("error: pred and truth must be directories", file=sys.stderr)
        return 2

    failures = []
    results = {}
    failed_pred = set()
    for p in sorted(pred_dir.glob("*.boxes.json")):
        image_id = p.name[: -len(".boxes.json")]
        try:
            results[image_id] = result_from_record(json.loads(p.read_bytes()))
        except (ValueError, KeyError) as e:
            failed_pred.add(image_id)
            failures.append(f"{p}: {e}")
    truths = {}
    failed_truth = set()
    for image_id, p in _scan_truth_dir(truth_dir).items():
        try:
            truths[image_id] = parse_truth(p.read_bytes())
        except ValueError as e:
            failed_truth.add(image_id)
            failures.append(f"{p}: {e}")

    # a record that failed to parse is a partial failure, not a missing id:
    # drop its counterpart so the mismatch check only sees absent files
    for bad in failed_truth:
        results.pop(bad, None)
    for bad in failed_pred:
        truths.pop(bad, None)

    missing_truth = sorted(results.keys() - truths.keys())
    missing_pred = sorted(truths.keys() - results.keys())
    if missing_truth or missing_pred:
        if missing_truth:
            print(
                f"error: no truth for ids: {', '.join(missing_truth)}",
                file=sys.stderr,
            )
        if missing_pred:
            print(
                f"error: no predictions for ids: {', '.join(missing_pred)}",
                file=sys.stderr,
            )
        return 2

    report = evaluate_corpus(
        list(results.values()), list(truths.values()), threshold=args.overlap
    )
    out = Path(args.out) if args.out else pred_dir / "report.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(_dump_json(report.record()))
    m = report.metrics
    print(
        f"words={len(report.words)} tp={report.counts.tp} "
        f"fp={report.counts.fp} fn={report.counts.fn} tn={report.counts.tn} "
        f"precision={_fmt(m.precision)} recall={_fmt(m.recall)} "
        f"f_score={_fmt(m.f_score)} -> {out}"
    )
    for line in failures:
        print(f"error: {line}", file=sys.stderr)
    return 1 if failures else 0


def _fmt(value):
    return "n/a" if value is None else f"{value:.4f}"


def _synth_one(task):
    index, out_dir, base = task
    chooser = random.Random(word_seed(base["seed"], index, "params"))
    k = chooser.randint(*base["subwords"])
    dots = chooser.randint(*base["dots"])
    gaps = ()
    if base["gap"]:
        widths = [0] * k
        widths[chooser.randrange(k)] = base["gap"]
        gaps = tuple(widths)
    params = SynthParams(
        subword_count=k,
        stroke_thickness=base["thickness"],
        gap_widths=gaps,
        dot_count=dots,
        canvas=base["canvas"],
        seed=word_seed(base["seed"], index),
        separation=base["separation"],
    )
    image_id = f"W{index:05d}"
    img, truth = synth_word(params, image_id)
    out = Path(out_dir)
    (out / f"{image_id}.pgm").write_bytes(save_pgm(img))
    (out / f"{image_id}.xml").write_bytes(write_truth(truth))
    return {"id": image_id, "params": dataclasses.asdict(params)}


def cmd_synth(args):
    if args.words < 0:
        print("error: --words must be non-negative", file=sys.stderr)
        return 2
    try:
        base = {
            "seed": args.seed,
            "subwords": _parse_range(args.subwords, 1, 8),
            "dots": _parse_range(args.dots, 0, 4),
            "gap": args.gap,
            "thickness": args.thickness,
            "canvas": _parse_canvas(args.canvas),
            "separation": args.separation,
        }
        # validate eagerly so bad params exit 2 before any file is written
        SynthParams(
            subword_count=base["subwords"][1],
            stroke_thickness=base["thickness"],
            gap_widths=(base["gap"],) if base["gap"] else (),
            dot_count=base["dots"][1],
            canvas=base["canvas"],
            separation=base["separation"],
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tasks = [(i, str(out), base) for i in range(args.words)]
    try:
        entries = _pool_map(args.jobs, _synth_one, tasks)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    manifest = {
        "seed": args.seed,
        "count": args.words,
        "words": sorted(entries, key=lambda e: e["id"]),
    }
    (out / "manifest.json").write_bytes(_dump_json(manifest))
    print(f"wrote {args.words} words to {out}")
    return 0


def cmd_stats(args):
    truth_dir = Path(args.truth_dir)
    if not truth_dir.is_dir():
        print(f"error: {truth_dir}: not a directory", file=sys.stderr)
        return 2
    failures = []
    truths = []
    for image_id, p in _scan_truth_dir(truth_dir).items():
        try:
            truths.append(parse_truth(p.read_bytes()))
        except ValueError as e:
            failures.append(f"{p}: {e}")
    payload = _dump_json(dataset_stats(truths).record())
    if args.out:
        Path(args.out).write_bytes(payload)
    sys.stdout.write(payload.decode())
    for line in failures:
        print(f"error: {line}", file=sys.stderr)
    return 1 if failures else 0


def _parse_range(text, lo, hi):
    """'a:b' or 'n' -> inclusive (a, b), validated against [lo, hi]."""
    parts = text.split(":")
    if len(parts) == 1:
        a = b = int(parts[0])
    elif len(parts) == 2:
        a, b = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"bad range {text!r}, expected N or A:B")
    if not (lo <= a <= b <= hi):
        raise ValueError(f"range {text!r} outside {lo}..{hi}")
    return a, b


def _parse_canvas(text):
    w, sep, h = text.partition("x")
    if not sep or not w.isdigit() or not h.isdigit():
        raise ValueError(f"bad canvas {text!r}, expected WIDTHxHEIGHT")
    return int(w), int(h)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="subwordseg",
        description="Sub-word segmentation of handwritten word images",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment word images into sub-word boxes")
    p.add_argument("inputs", nargs="+", help="PGM/PBM files or directories")
    p.add_argument("-o", "--out", help="output directory (default: beside input)")
    p.add_argument("--min-area", type=int, default=30,
                   help="drop components smaller than this many ink pixels")
    p.add_argument("--no-cgs", action="store_true",
                   help="skip the gap-connecting morphology")
    p.add_argument("--skeleton", action="store_true",
                   help="thin strokes before labeling")
    p.add_argument("--threshold", type=int, default=None,
                   help="fixed binarization level instead of Otsu")
    p.add_argument("--bridge-rule", choices=(EXACTLY_TWO, MATLAB_BRIDGE),
                   default=EXACTLY_TWO)
    p.add_argument("--annotate", metavar="DIR",
                   help="write annotated PPM copies into DIR")
    p.add_argument("--truth", metavar="DIR",
                   help="ground-truth directory for annotation overlays")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(run=cmd_segment)

    p = sub.add_parser("evaluate", help="compare predictions with ground truth")
    p.add_argument("--pred", required=True, help="directory of *.boxes.json")
    p.add_argument("--truth", required=True, help="directory of truth files")
    p.add_argument("--overlap", type=float, default=0.5,
                   help="overlap-ratio match threshold")
    p.add_argument("-o", "--out", help="report path (default: PRED/report.json)")
    p.set_defaults(run=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--words", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--subwords", default="1:5", help="sub-word count or range")
    p.add_argument("--dots", default="0:3", help="dot count or range")
    p.add_argument("--gap", type=int, default=0,
                   help="cut a gap of this width into one stroke per word")
    p.add_argument("--thickness", type=int, default=3)
    p.add_argument("--canvas", default="256x96")
    p.add_argument("--separation", type=int, default=12)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("stats", help="sub-word histogram of a truth directory")
    p.add_argument("truth_dir")
    p.add_argument("-o", "--out", help="also write the JSON here")
    p.set_defaults(run=cmd_stats)

    return parser


def entry(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        code = e.code
        return code if isinstance(code, int) else 2
    try:
        return args.run(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(entry())


if __name__ == "__main__":
    main()
