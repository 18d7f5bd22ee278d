"""Pure-Python pixel kernels.

Drop-in twin of the compiled module ``_kernels_c``: same functions, same
argument order, bit-identical results (the test suite enforces this). Binary
rasters are row-major ``bytes`` of 0/1 values; label maps are ``array('i')``.

All neighbourhood operators are synchronous: every output pixel is computed
from the input raster only. Out-of-bounds neighbours count as 0.
"""

from array import array

# 8-neighbour offsets, clockwise from north (p2..p9 in thinning terms).
_DX = (0, 1, 1, 1, 0, -1, -1, -1)
_DY = (-1, -1, 0, 1, 1, 1, 0, -1)

# _TOUCH[i][j] is true when neighbourhood slots i and j are themselves
# 8-adjacent; used by the conservative bridge rule.
_TOUCH = tuple(
    tuple(
        i != j and abs(_DX[i] - _DX[j]) <= 1 and abs(_DY[i] - _DY[j]) <= 1
        for j in range(8)
    )
    for i in range(8)
)


def dilate8(bits, width, height):
    """3x3 dilation: a pixel is set when it or any 8-neighbour is set."""
    out = bytearray(bits)
    for y in range(height):
        row = y * width
        y0 = 0 if y == 0 else y - 1
        y1 = height - 1 if y == height - 1 else y + 1
        for x in range(width):
            if bits[row + x]:
                continue
            x0 = 0 if x == 0 else x - 1
            x1 = width - 1 if x == width - 1 else x + 1
            for ny in range(y0, y1 + 1):
                base = ny * width
                for nx in range(x0, x1 + 1):
                    if bits[base + nx]:
                        out[row + x] = 1
                        break
                else:
                    continue
                break
    return bytes(out)


def bridge(bits, width, height, conservative):
    """Set 0-pixels whose 8-neighbourhood holds exactly two 1-pixels.

    With ``conservative`` the two 1-neighbours must additionally not touch
    each other, so pairs that are already connected are left alone.
    """
    out = bytearray(bits)
    for y in range(height):
        row = y * width
        for x in range(width):
            if bits[row + x]:
                continue
            n = 0
            first = second = -1
            for k in range(8):
                nx = x + _DX[k]
                ny = y + _DY[k]
                if 0 <= nx < width and 0 <= ny < height and bits[ny * width + nx]:
                    n += 1
                    if n == 1:
                        first = k
                    elif n == 2:
                        second = k
                    else:
                        break
            if n == 2 and not (conservative and _TOUCH[first][second]):
                out[row + x] = 1
    return bytes(out)


def majority(bits, width, height):
    """Set 0-pixels with five or more 1-valued 8-neighbours; never clear."""
    out = bytearray(bits)
    for y in range(height):
        row = y * width
        for x in range(width):
            if bits[row + x]:
                continue
            n = 0
            for k in range(8):
                nx = x + _DX[k]
                ny = y + _DY[k]
                if 0 <= nx < width and 0 <= ny < height and bits[ny * width + nx]:
                    n += 1
            if n >= 5:
                out[row + x] = 1
    return bytes(out)


def thin_pass(bits, width, height, phase):
    """One Zhang-Suen sub-pass (phase 1 or 2); returns (bits, deleted).

    A 1-pixel is deleted when its neighbour count B is in [2, 6], the number
    of 0->1 transitions A around the clockwise neighbour ring is exactly 1,
    and the phase-specific products vanish (phase 1: p2*p4*p6 and p4*p6*p8,
    phase 2: p2*p4*p8 and p2*p6*p8; p2=N, p4=E, p6=S, p8=W).
    """
    out = bytearray(bits)
    deleted = 0
    p = [0] * 8
    for y in range(height):
        row = y * width
        for x in range(width):
            if not bits[row + x]:
                continue
            b = 0
            for k in range(8):
                nx = x + _DX[k]
                ny = y + _DY[k]
                v = bits[ny * width + nx] if 0 <= nx < width and 0 <= ny < height else 0
                p[k] = v
                b += v
            if b < 2 or b > 6:
                continue
            a = 0
            for k in range(8):
                if p[k] == 0 and p[(k + 1) % 8] == 1:
                    a += 1
            if a != 1:
                continue
            if phase == 1:
                if p[0] * p[2] * p[4] != 0 or p[2] * p[4] * p[6] != 0:
                    continue
            else:
                if p[0] * p[2] * p[6] != 0 or p[0] * p[4] * p[6] != 0:
                    continue
            out[row + x] = 0
            deleted += 1
    return bytes(out), deleted


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def label8(bits, width, height):
    """Two-pass union-find labelling over 8-connectivity.

    Returns (labels, count): a row-major ``array('i')`` with 0 background and
    components numbered 1..count in raster first-encounter order.
    """
    n = width * height
    labels = array("i", bytes(4 * n))
    parent = array("i", bytes(4 * (n // 2 + 2)))
    nxt = 1
    for y in range(height):
        row = y * width
        up = row - width
        for x in range(width):
            if not bits[row + x]:
                continue
            best = 0
            # already-scanned neighbours: W, NW, N, NE
            if x > 0 and labels[row + x - 1]:
                best = _find(parent, labels[row + x - 1])
            if y > 0:
                if x > 0 and labels[up + x - 1]:
                    r = _find(parent, labels[up + x - 1])
                    if best == 0 or r < best:
                        if best:
                            parent[best] = r
                        best = r
                    elif r > best:
                        parent[r] = best
                if labels[up + x]:
                    r = _find(parent, labels[up + x])
                    if best == 0 or r < best:
                        if best:
                            parent[best] = r
                        best = r
                    elif r > best:
                        parent[r] = best
                if x + 1 < width and labels[up + x + 1]:
                    r = _find(parent, labels[up + x + 1])
                    if best == 0 or r < best:
                        if best:
                            parent[best] = r
                        best = r
                    elif r > best:
                        parent[r] = best
            if best == 0:
                best = nxt
                parent[nxt] = nxt
                nxt += 1
            labels[row + x] = best
    remap = array("i", bytes(4 * nxt))
    count = 0
    for i in range(n):
        lab = labels[i]
        if lab:
            r = _find(parent, lab)
            if remap[r] == 0:
                count += 1
                remap[r] = count
            labels[i] = remap[r]
    return labels, count


def region_stats(labels, count, width, height):
    """Per-label (area, ax, ay, bx, by) tuples for labels 1..count."""
    area = [0] * (count + 1)
    minx = [width] * (count + 1)
    miny = [height] * (count + 1)
    maxx = [-1] * (count + 1)
    maxy = [-1] * (count + 1)
    i = 0
    for y in range(height):
        for x in range(width):
            lab = labels[i]
            i += 1
            if lab:
                area[lab] += 1
                if x < minx[lab]:
                    minx[lab] = x
                if x > maxx[lab]:
                    maxx[lab] = x
                if y < miny[lab]:
                    miny[lab] = y
                if y > maxy[lab]:
                    maxy[lab] = y
    return [
        (area[lab], minx[lab], miny[lab], maxx[lab], maxy[lab])
        for lab in range(1, count + 1)
    ]


def masked_area(labels, count, mask):
    """Per-label count of positions where ``mask`` is set, labels 1..count."""
    out = [0] * (count + 1)
    for i, lab in enumerate(labels):
        if lab and mask[i]:
            out[lab] += 1
    return out[1:]
