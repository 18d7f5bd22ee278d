# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pixel kernels.

Twin of ``_kernels_py``: same functions, same argument order, bit-identical
results. Kept deliberately close to the pure-Python source so the two stay
easy to diff.
"""

from array import array

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

cdef int[8] _DX = [0, 1, 1, 1, 0, -1, -1, -1]
cdef int[8] _DY = [-1, -1, 0, 1, 1, 1, 0, -1]

# touch[i*8+j]: neighbourhood slots i and j are themselves 8-adjacent
cdef int[64] _TOUCH
cdef int _i, _j
for _i in range(8):
    for _j in range(8):
        _TOUCH[_i * 8 + _j] = (
            _i != _j
            and abs(_DX[_i] - _DX[_j]) <= 1
            and abs(_DY[_i] - _DY[_j]) <= 1
        )


def dilate8(const unsigned char[::1] bits, int width, int height):
    """3x3 dilation: a pixel is set when it or any 8-neighbour is set."""
    cdef bytes result = PyBytes_FromStringAndSize(NULL, width * height)
    cdef unsigned char* out = <unsigned char*><char*>result
    memcpy(out, &bits[0], width * height)
    cdef int x, y, nx, ny, row, base, x0, x1, y0, y1
    cdef bint hit
    for y in range(height):
        row = y * width
        y0 = 0 if y == 0 else y - 1
        y1 = height - 1 if y == height - 1 else y + 1
        for x in range(width):
            if bits[row + x]:
                continue
            x0 = 0 if x == 0 else x - 1
            x1 = width - 1 if x == width - 1 else x + 1
            hit = False
            for ny in range(y0, y1 + 1):
                base = ny * width
                for nx in range(x0, x1 + 1):
                    if bits[base + nx]:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                out[row + x] = 1
    return result


def bridge(const unsigned char[::1] bits, int width, int height, bint conservative):
    """Set 0-pixels whose 8-neighbourhood holds exactly two 1-pixels.

    With ``conservative`` the two 1-neighbours must additionally not touch
    each other, so pairs that are already connected are left alone.
    """
    cdef bytes result = PyBytes_FromStringAndSize(NULL, width * height)
    cdef unsigned char* out = <unsigned char*><char*>result
    memcpy(out, &bits[0], width * height)
    cdef int x, y, nx, ny, row, k, n, first, second
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
            if n == 2 and not (conservative and _TOUCH[first * 8 + second]):
                out[row + x] = 1
    return result


def majority(const unsigned char[::1] bits, int width, int height):
    """Set 0-pixels with five or more 1-valued 8-neighbours; never clear."""
    cdef bytes result = PyBytes_FromStringAndSize(NULL, width * height)
    cdef unsigned char* out = <unsigned char*><char*>result
    memcpy(out, &bits[0], width * height)
    cdef int x, y, nx, ny, row, k, n
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
    return result


def thin_pass(const unsigned char[::1] bits, int width, int height, int phase):
    """One Zhang-Suen sub-pass (phase 1 or 2); returns (bits, deleted).

    A 1-pixel is deleted when its neighbour count B is in [2, 6], the number
    of 0->1 transitions A around the clockwise neighbour ring is exactly 1,
    and the phase-specific products vanish (phase 1: p2*p4*p6 and p4*p6*p8,
    phase 2: p2*p4*p8 and p2*p6*p8; p2=N, p4=E, p6=S, p8=W).
    """
    cdef bytes result = PyBytes_FromStringAndSize(NULL, width * height)
    cdef unsigned char* out = <unsigned char*><char*>result
    memcpy(out, &bits[0], width * height)
    cdef int x, y, nx, ny, row, k, b, a, deleted
    cdef int[8] p
    deleted = 0
    for y in range(height):
        row = y * width
        for x in range(width):
            if not bits[row + x]:
                continue
            b = 0
            for k in range(8):
                nx = x + _DX[k]
                ny = y + _DY[k]
                if 0 <= nx < width and 0 <= ny < height:
                    p[k] = bits[ny * width + nx]
                else:
                    p[k] = 0
                b += p[k]
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
    return result, deleted


cdef int _find(int* parent, int i) noexcept nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def label8(const unsigned char[::1] bits, int width, int height):
    """Two-pass union-find labelling over 8-connectivity.

    Returns (labels, count): a row-major ``array('i')`` with 0 background and
    components numbered 1..count in raster first-encounter order.
    """
    cdef int n = width * height
    labels_arr = array("i", bytes(4 * n))
    cdef int[::1] labels = labels_arr
    cdef int* parent = <int*>calloc(n // 2 + 2, sizeof(int))
    cdef int* remap = NULL
    if parent == NULL:
        raise MemoryError()
    cdef int x, y, row, up, nxt, best, r, i, lab, count
    nxt = 1
    try:
        for y in range(height):
            row = y * width
            up = row - width
            for x in range(width):
                if not bits[row + x]:
                    continue
                best = 0
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
        remap = <int*>calloc(nxt, sizeof(int))
        if remap == NULL:
            raise MemoryError()
        count = 0
        for i in range(n):
            lab = labels[i]
            if lab:
                r = _find(parent, lab)
                if remap[r] == 0:
                    count += 1
                    remap[r] = count
                labels[i] = remap[r]
    finally:
        free(parent)
        free(remap)
    return labels_arr, count


def region_stats(const int[::1] labels, int count, int width, int height):
    """Per-label (area, ax, ay, bx, by) tuples for labels 1..count."""
    cdef int* area = <int*>calloc(5 * (count + 1), sizeof(int))
    if area == NULL:
        raise MemoryError()
    cdef int* minx = area + (count + 1)
    cdef int* miny = minx + (count + 1)
    cdef int* maxx = miny + (count + 1)
    cdef int* maxy = maxx + (count + 1)
    cdef int x, y, i, lab
    cdef list out = []
    try:
        for lab in range(count + 1):
            minx[lab] = width
            miny[lab] = height
            maxx[lab] = -1
            maxy[lab] = -1
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
        for lab in range(1, count + 1):
            out.append((area[lab], minx[lab], miny[lab], maxx[lab], maxy[lab]))
    finally:
        free(area)
    return out


def masked_area(const int[::1] labels, int count, const unsigned char[::1] mask):
    """Per-label count of positions where ``mask`` is set, labels 1..count."""
    cdef int* acc = <int*>calloc(count + 1, sizeof(int))
    if acc == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef int lab
    try:
        for i in range(labels.shape[0]):
            lab = labels[i]
            if lab and mask[i]:
                acc[lab] += 1
        return [acc[lab] for lab in range(1, count + 1)]
    finally:
        free(acc)
