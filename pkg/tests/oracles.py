"""Independent reference implementations used to cross-check the library.

Everything here is written for clarity over speed and shares no code with
the package internals: flood fill instead of union-find, Fraction arithmetic
instead of integer cross-multiplication, direct neighbour-rule evaluation
(in both scan orders) instead of the kernel loops.
"""

from fractions import Fraction

NEIGHBORS8 = ((0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1))


def flood_components(bits, width, height):
    """8-connected components as a frozenset of frozensets of indices."""
    seen = bytearray(width * height)
    out = []
    for start in range(width * height):
        if not bits[start] or seen[start]:
            continue
        stack = [start]
        seen[start] = 1
        region = []
        while stack:
            i = stack.pop()
            region.append(i)
            x, y = i % width, i // width
            for dx, dy in NEIGHBORS8:
                nx, ny = x + dx, y + dy
                if 0 <= nx < width and 0 <= ny < height:
                    j = ny * width + nx
                    if bits[j] and not seen[j]:
                        seen[j] = 1
                        stack.append(j)
        out.append(frozenset(region))
    return frozenset(out)


def count_components(bits, width, height):
    return len(flood_components(bits, width, height))


def neighbor_values(bits, width, height, x, y):
    vals = []
    for dx, dy in NEIGHBORS8:
        nx, ny = x + dx, y + dy
        if 0 <= nx < width and 0 <= ny < height:
            vals.append(bits[ny * width + nx])
        else:
            vals.append(0)
    return vals


def naive_dilate(bits, width, height, reverse=False):
    """3x3 dilation evaluated pixel by pixel from the input only."""
    out = bytearray(width * height)
    order = range(width * height)
    if reverse:
        order = reversed(order)
    for i in order:
        x, y = i % width, i // width
        if bits[i] or any(neighbor_values(bits, width, height, x, y)):
            out[i] = 1
    return bytes(out)


def naive_bridge(bits, width, height, reverse=False):
    """Exactly-two-neighbours rule, direct evaluation."""
    out = bytearray(bits)
    order = range(width * height)
    if reverse:
        order = reversed(order)
    for i in order:
        if bits[i]:
            continue
        x, y = i % width, i // width
        if sum(neighbor_values(bits, width, height, x, y)) == 2:
            out[i] = 1
    return bytes(out)


def naive_majority(bits, width, height, reverse=False):
    """At-least-five-neighbours rule, direct evaluation."""
    out = bytearray(bits)
    order = range(width * height)
    if reverse:
        order = reversed(order)
    for i in order:
        if bits[i]:
            continue
        x, y = i % width, i // width
        if sum(neighbor_values(bits, width, height, x, y)) >= 5:
            out[i] = 1
    return bytes(out)


def otsu_exhaustive(bins):
    """Smallest t maximizing between-class variance, in exact Fractions."""
    total = sum(bins)
    if total == 0:
        raise ValueError("empty histogram")
    populated = [v for v in range(256) if bins[v]]
    if len(populated) == 1:
        return populated[0]
    grand = sum(v * bins[v] for v in range(256))
    best_t, best_sigma = 0, Fraction(-1)
    for t in range(256):
        w0 = sum(bins[: t + 1])
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            sigma = Fraction(0)
        else:
            s0 = sum(v * bins[v] for v in range(t + 1))
            mu0 = Fraction(s0, w0)
            mu1 = Fraction(grand - s0, w1)
            sigma = Fraction(w0) * Fraction(w1) * (mu0 - mu1) ** 2
        if sigma > best_sigma:
            best_sigma, best_t = sigma, t
    return best_t


def metrics_fractions(tp, fp, fn, tn):
    """The five metrics as exact Fractions, None where 0/0."""

    def ratio(num, den):
        return None if den == 0 else Fraction(num, den)

    precision = ratio(tp, tp + fp)
    recall = ratio(tp, tp + fn)
    if precision is None or recall is None or precision + recall == 0:
        f_score = None
    else:
        f_score = 2 * precision * recall / (precision + recall)
    return {
        "accuracy": ratio(tp + tn, tp + fp + fn + tn),
        "precision": precision,
        "recall": recall,
        "specificity": ratio(tn, tn + fp),
        "f_score": f_score,
    }


def component_pixel_sets(img):
    """Partition of a BinaryImage's foreground, for oracle comparisons."""
    return flood_components(img.bits, img.width, img.height)
