"""Zhang-Suen thinning: reduce strokes to 1-pixel-wide paths.

Alternates the two deletion sub-passes until a full iteration removes
nothing. Deletion never adds pixels and preserves the 8-connectivity of each
component. A safety cap of width+height iterations guards pathological
inputs; reaching it would indicate a bug, not a hard input.
"""

from . import kernels
from .raster import BinaryImage


def thin_zhang_suen(img):
    bits = img.bits
    w, h = img.width, img.height
    for _ in range(w + h):
        bits, d1 = kernels.thin_pass(bits, w, h, 1)
        bits, d2 = kernels.thin_pass(bits, w, h, 2)
        if d1 == 0 and d2 == 0:
            break
    return BinaryImage(w, h, bits)
