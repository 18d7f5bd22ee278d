import pytest
from conftest import art, bimg, random_binary
from oracles import (
    count_components,
    naive_bridge,
    naive_dilate,
    naive_majority,
)

from subwordseg.morphology import (
    EXACTLY_TWO,
    MATLAB_BRIDGE,
    CgsConfig,
    bridge,
    connect_gaps,
    dilate8,
    majority_fill,
)
from subwordseg.raster import BinaryImage


class TestDilate:
    def test_single_center_pixel_becomes_3x3(self):
        out = dilate8(bimg("""
.....
.....
..X..
.....
.....
"""))
        assert art(out) == ".....\n.XXX.\n.XXX.\n.XXX.\n....."

    def test_all_zero_stays_zero(self):
        img = BinaryImage(4, 3, bytes(12))
        assert dilate8(img) == img

    def test_corner_pixel_fills_2x2(self):
        out = dilate8(bimg("X.\n.."))
        assert out.bits == b"\x01\x01\x01\x01"

    def test_matches_naive_oracle(self, rng):
        for _ in range(60):
            img = random_binary(rng, rng.randint(1, 24), rng.randint(1, 24))
            assert dilate8(img).bits == naive_dilate(img.bits, img.width, img.height)

    def test_distributes_over_union(self, rng):
        for _ in range(60):
            w, h = rng.randint(1, 20), rng.randint(1, 20)
            a = random_binary(rng, w, h, 0.2)
            b = random_binary(rng, w, h, 0.2)
            union = BinaryImage(w, h, bytes(x | y for x, y in zip(a.bits, b.bits)))
            da, db = dilate8(a), dilate8(b)
            merged = bytes(x | y for x, y in zip(da.bits, db.bits))
            assert dilate8(union).bits == merged


class TestBridge:
    def test_two_diagonal_neighbors_fill_center(self):
        out = bridge(bimg("X..\n...\n..X"))
        assert out.bits[4] == 1

    def test_three_neighbors_leave_center(self):
        out = bridge(bimg("XXX\n...\n..."))
        assert out.bits[4] == 0

    def test_all_zero_unchanged(self):
        img = BinaryImage(3, 3, bytes(9))
        assert bridge(img) == img

    def test_matches_naive_oracle(self, rng):
        for _ in range(60):
            img = random_binary(rng, rng.randint(1, 24), rng.randint(1, 24))
            assert bridge(img).bits == naive_bridge(img.bits, img.width, img.height)

    def test_matlab_rule_skips_touching_pairs(self):
        # the two 1-neighbours are 8-adjacent to each other: the pixel below
        # them is bridged by the exact rule but not by the conservative one
        img = bimg("XX.\n...\n...")
        assert bridge(img, EXACTLY_TWO).bits[3] == 1
        assert bridge(img, MATLAB_BRIDGE).bits[3] == 0

    def test_matlab_rule_still_bridges_separated_pairs(self):
        img = bimg("X.X\n...\n...")
        assert bridge(img, MATLAB_BRIDGE).bits[1] == 1

    def test_unknown_rule_rejected(self):
        with pytest.raises(ValueError):
            bridge(bimg("X"), "other")


class TestMajority:
    def test_five_neighbors_fill(self):
        out = majority_fill(bimg("XXX\nX.X\n..."))
        assert out.bits[4] == 1

    def test_four_neighbors_do_not_fill(self):
        out = majority_fill(bimg("XXX\nX..\n..."))
        assert out.bits[4] == 0

    def test_isolated_pixel_survives(self):
        img = bimg("...\n.X.\n...")
        assert majority_fill(img) == img

    def test_matches_naive_oracle(self, rng):
        for _ in range(60):
            img = random_binary(rng, rng.randint(1, 24), rng.randint(1, 24), 0.5)
            assert majority_fill(img).bits == naive_majority(
                img.bits, img.width, img.height
            )


class TestSynchronousSemantics:
    def test_scan_order_is_irrelevant(self, rng):
        # each operator's output must depend on the input image only, so an
        # oracle evaluating pixels in reverse order has to agree exactly
        for _ in range(40):
            img = random_binary(rng, rng.randint(2, 20), rng.randint(2, 20))
            w, h = img.width, img.height
            assert dilate8(img).bits == naive_dilate(img.bits, w, h, reverse=True)
            assert bridge(img).bits == naive_bridge(img.bits, w, h, reverse=True)
            assert majority_fill(img).bits == naive_majority(
                img.bits, w, h, reverse=True
            )


class TestCgsConfig:
    def test_defaults(self):
        cfg = CgsConfig()
        assert (cfg.dilate_iters, cfg.bridge_iters, cfg.majority_iters) == (4, 2, 2)
        assert cfg.bridge_rule == EXACTLY_TWO

    def test_negative_iterations_rejected(self):
        with pytest.raises(ValueError):
            CgsConfig(dilate_iters=-1)

    def test_bad_rule_rejected(self):
        with pytest.raises(ValueError):
            CgsConfig(bridge_rule="sometimes")


def two_bars_with_gap(gap):
    """Two 20x4 solid bars in the same rows separated by ``gap`` columns."""
    width = 40 + gap + 8
    height = 12
    bits = bytearray(width * height)
    for y in range(4, 8):
        for x in range(4, 24):
            bits[y * width + x] = 1
        for x in range(24 + gap, 44 + gap):
            bits[y * width + x] = 1
    return BinaryImage(width, height, bytes(bits))


class TestConnectGaps:
    def test_8px_gap_becomes_one_component(self):
        img = two_bars_with_gap(8)
        assert count_components(img.bits, img.width, img.height) == 2
        out = connect_gaps(img)
        assert count_components(out.bits, out.width, out.height) == 1

    def test_single_component_stays_single(self, rng):
        img = dilate8(dilate8(random_binary(rng, 16, 16, 0.02)))
        before = count_components(img.bits, img.width, img.height)
        out = connect_gaps(img)
        if before == 1:
            assert count_components(out.bits, out.width, out.height) == 1

    def test_all_zero_stays_zero(self):
        img = BinaryImage(10, 10, bytes(100))
        assert connect_gaps(img) == img

    def test_never_increases_component_count(self, rng):
        for _ in range(40):
            img = random_binary(rng, rng.randint(4, 28), rng.randint(4, 28), 0.15)
            out = connect_gaps(img)
            assert count_components(out.bits, out.width, out.height) <= \
                count_components(img.bits, img.width, img.height)

    def test_zero_iteration_config_is_identity(self, rng):
        img = random_binary(rng, 10, 10)
        cfg = CgsConfig(dilate_iters=0, bridge_iters=0, majority_iters=0)
        assert connect_gaps(img, cfg) == img

    def test_composite_equals_manual_stacking(self, rng):
        img = random_binary(rng, 18, 14, 0.1)
        manual = img
        for _ in range(4):
            manual = dilate8(manual)
        for _ in range(2):
            manual = bridge(manual)
        for _ in range(2):
            manual = majority_fill(manual)
        assert connect_gaps(img) == manual


class TestMonotoneGrowth:
    def test_all_operators_only_add(self, rng):
        for _ in range(50):
            img = random_binary(rng, rng.randint(1, 24), rng.randint(1, 24))
            for op in (dilate8, bridge, majority_fill, connect_gaps):
                out = op(img)
                assert all(
                    o >= i for i, o in zip(img.bits, out.bits)
                ), f"{op.__name__} cleared a pixel"
