"""Compare the compiled and pure-Python kernel backends.

Times each kernel on a realistic synthetic word raster plus a noise image,
then the full gap-connection pipeline, and prints per-op timings with the
speedup factor. Run directly:

    python3 benchmarks/bench_kernels.py [--canvas 512x192] [--repeat 20]
"""

import argparse
import random
import time

from subwordseg import _kernels_py
from subwordseg.raster import binarize
from subwordseg.synthesis import SynthParams, synth_word

try:
    from subwordseg import _kernels_c
except ImportError:
    _kernels_c = None


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(width, height):
    params = SynthParams(
        subword_count=4,
        dot_count=3,
        gap_widths=(5, 0, 7, 0),
        canvas=(width, height),
        seed=1234,
    )
    gray, _ = synth_word(params)
    word = binarize(gray, 128).bits
    rng = random.Random(99)
    noise = bytes(1 if rng.random() < 0.4 else 0 for _ in range(width * height))
    return {"word": word, "noise": noise}


def bench_backend(mod, bits, w, h, repeat):
    labels, count = mod.label8(bits, w, h)
    cases = {
        "dilate8": lambda: mod.dilate8(bits, w, h),
        "bridge": lambda: mod.bridge(bits, w, h, False),
        "majority": lambda: mod.majority(bits, w, h),
        "thin_pass": lambda: mod.thin_pass(bits, w, h, 1),
        "label8": lambda: mod.label8(bits, w, h),
        "region_stats": lambda: mod.region_stats(labels, count, w, h),
        "masked_area": lambda: mod.masked_area(labels, count, bits),
    }
    return {name: timed(fn, repeat) for name, fn in cases.items()}


def bench_pipeline(mod, bits, w, h, repeat):
    def run():
        out = bits
        for _ in range(4):
            out = mod.dilate8(out, w, h)
        for _ in range(2):
            out = mod.bridge(out, w, h, False)
        for _ in range(2):
            out = mod.majority(out, w, h)
        mod.label8(out, w, h)

    return timed(run, repeat)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--canvas", default="512x192",
                    help="benchmark raster size, WxH")
    ap.add_argument("--repeat", type=int, default=20,
                    help="repetitions per measurement (best-of)")
    args = ap.parse_args()
    w, h = (int(v) for v in args.canvas.lower().split("x"))

    print(f"raster {w}x{h}, best of {args.repeat} runs, times in ms")
    if _kernels_c is None:
        print("compiled backend not built; timing pure Python only")

    for label, bits in workloads(w, h).items():
        print(f"\n== {label} image ==")
        py = bench_backend(_kernels_py, bits, w, h, args.repeat)
        cc = bench_backend(_kernels_c, bits, w, h, args.repeat) \
            if _kernels_c else {}
        header = f"{'kernel':<14}{'python':>10}" + (
            f"{'compiled':>10}{'speedup':>9}" if cc else "")
        print(header)
        for name, t_py in py.items():
            row = f"{name:<14}{t_py * 1e3:>10.3f}"
            if cc:
                t_c = cc[name]
                row += f"{t_c * 1e3:>10.3f}{t_py / t_c:>8.1f}x"
            print(row)
        t_py = bench_pipeline(_kernels_py, bits, w, h, max(1, args.repeat // 4))
        row = f"{'full pipeline':<14}{t_py * 1e3:>10.3f}"
        if _kernels_c:
            t_c = bench_pipeline(_kernels_c, bits, w, h, args.repeat)
            row += f"{t_c * 1e3:>10.3f}{t_py / t_c:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
