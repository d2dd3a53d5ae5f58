import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIG2_POINTS, random_front
from qhv.core import volume
from qhv.geometry import (
    Frame,
    Front,
    box_volume,
    canonicalize,
    dominates,
    filter_nondominated,
    nondominated_mask,
)
from qhv.oracles import ie_volume

UNIT2 = Frame.unit(2)

coords = st.floats(0.0, 1.0, allow_nan=False)


def points(d):
    return st.lists(coords, min_size=d, max_size=d)


class TestDominates:
    def test_incomparable_points(self):
        assert not dominates((0.5, 0.4), (0.6, 0.2), UNIT2)

    def test_equal_points_do_not_dominate(self):
        assert not dominates((0.3, 0.6), (0.3, 0.6), UNIT2)

    def test_weak_dominance_with_one_strict(self):
        assert dominates((0.5, 0.4), (0.5, 0.2), UNIT2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dominates((0.5, 0.4), (0.5, 0.2, 0.1))
        with pytest.raises(ValueError):
            dominates((0.5, 0.4), (0.5, 0.2), Frame.unit(3))

    @given(points(3), points(3))
    def test_antisymmetric(self, p, q):
        assert not (dominates(p, q) and dominates(q, p))

    @given(points(4))
    def test_irreflexive(self, p):
        assert not dominates(p, p)

    def test_transitive_on_random_triples(self, rng):
        chains = 0
        for _ in range(1000):
            c = rng.random(3)
            # half the triples are built as chains so the implication is exercised
            if rng.random() < 0.5:
                b = c + rng.random(3) * (rng.random(3) < 0.7)
                a = b + rng.random(3) * (rng.random(3) < 0.7)
            else:
                a, b = rng.random(3), rng.random(3)
            if dominates(a, b) and dominates(b, c):
                chains += 1
                assert dominates(a, c)
        assert chains > 100


class TestBoxVolume:
    def test_product_of_coordinates(self):
        assert box_volume((0.3, 0.6), UNIT2) == pytest.approx(0.18, abs=1e-15)

    def test_full_frame(self):
        assert box_volume((1.0, 1.0), UNIT2) == 1.0

    def test_degenerate_box(self):
        assert box_volume((0.0, 0.0), UNIT2) == 0.0

    def test_nonzero_reference_corner(self):
        frame = Frame((1.0, 2.0), (3.0, 5.0))
        assert box_volume((2.0, 4.0), frame) == 2.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            box_volume((0.1, 0.2, 0.3), UNIT2)

    @given(points(3), points(3))
    def test_monotone_under_dominance(self, p, q):
        frame = Frame.unit(3)
        if dominates(p, q):
            assert box_volume(p, frame) >= box_volume(q, frame)
            # products of subnormal coordinates underflow to 0
            if all(x > 1e-6 for x in q):
                assert box_volume(p, frame) > box_volume(q, frame)


class TestFrameAndFront:
    def test_empty_frame_rejected(self):
        with pytest.raises(ValueError):
            Frame((0.0, 1.0), (1.0, 1.0))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Front([(np.nan, 0.5)], UNIT2)

    def test_points_clamped_into_frame(self):
        f = Front([(1.5, -0.2)], UNIT2)
        assert f.points.tolist() == [[1.0, 0.0]]

    def test_immutable(self):
        f = Front(FIG2_POINTS, UNIT2)
        with pytest.raises(ValueError):
            f.points[0, 0] = 0.9

    def test_empty_front_shape(self):
        assert Front([], UNIT2).points.shape == (0, 2)


class TestFilterNondominated:
    def test_incomparable_points_kept(self):
        f = Front(FIG2_POINTS, UNIT2)
        assert filter_nondominated(f).points.tolist() == [list(p) for p in FIG2_POINTS]

    def test_dominated_point_removed(self):
        f = Front([(0.3, 0.6), (0.2, 0.5)], UNIT2)
        assert filter_nondominated(f).points.tolist() == [[0.3, 0.6]]

    def test_duplicates_collapse(self):
        f = Front([(0.5, 0.4), (0.5, 0.4)], UNIT2)
        assert filter_nondominated(f).points.tolist() == [[0.5, 0.4]]

    def test_order_preserved(self):
        pts = [(0.6, 0.2), (0.1, 0.1), (0.3, 0.6), (0.6, 0.2), (0.5, 0.4)]
        f = Front(pts, UNIT2)
        assert filter_nondominated(f).points.tolist() == [[0.6, 0.2], [0.3, 0.6], [0.5, 0.4]]

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_matches_pairwise_definition(self, rng, d):
        for _ in range(50):
            n = int(rng.integers(1, 40))
            # coarse grid forces ties and duplicates
            pts = rng.integers(1, 5, size=(n, d)) / 4.0
            expected = []
            for i, p in enumerate(pts):
                beaten = any(dominates(q, p) for q in pts)
                dup = any(np.array_equal(q, p) for q in pts[:i])
                expected.append(not (beaten or dup))
            assert nondominated_mask(pts).tolist() == expected

    def test_idempotent(self, rng):
        for _ in range(100):
            f = random_front(rng, int(rng.integers(1, 30)), int(rng.integers(2, 6)), "cloud")
            once = filter_nondominated(f)
            assert filter_nondominated(once) == once

    def test_volume_preserved(self, rng):
        for _ in range(200):
            f = random_front(rng, int(rng.integers(1, 13)), int(rng.integers(2, 6)), "cloud")
            assert ie_volume(filter_nondominated(f)) == pytest.approx(ie_volume(f), rel=1e-12, abs=1e-15)


class TestCanonicalize:
    def test_maximize_is_identity(self):
        f = canonicalize([(0.3, 0.6)], (0.0, 0.0))
        assert f.frame.z.tolist() == [0.0, 0.0]
        assert f.points.tolist() == [[0.3, 0.6]]

    def test_minimize_reflects(self):
        f = canonicalize([(0.7, 0.4)], (1.0, 1.0), "minimize")
        np.testing.assert_allclose(f.points, [[0.3, 0.6]], atol=1e-15)
        assert f.frame.z.tolist() == [0.0, 0.0]

    def test_zero_volume_point_dropped(self):
        f = canonicalize([(0.0, 0.6)], (0.0, 0.0))
        assert f.n == 0
        assert f.dropped == 1

    def test_minimize_points_worse_than_reference_dropped(self):
        f = canonicalize([(1.2, 1.5), (0.5, 0.5), (0.5, 1.0)], (1.0, 1.0), "minimize")
        assert f.n == 1
        assert f.dropped == 2

    def test_default_upper_corner(self):
        f = canonicalize([(0.3, 0.6), (0.5, 0.4)], (0.0, 0.0))
        assert f.frame.o.tolist() == [0.5, 0.6]

    def test_upper_corner_extended_when_empty(self):
        f = canonicalize(np.empty((0, 3)), (0.0, 0.0, 0.0))
        assert f.frame.o.tolist() == [1.0, 1.0, 1.0]

    def test_explicit_upper(self):
        f = canonicalize([(0.3, 0.6)], (0.0, 0.0), upper=(1.0, 1.0))
        assert f.frame == Frame.unit(2)

    def test_minimize_upper_transformed(self):
        f = canonicalize([(0.7, 0.4)], (1.0, 1.0), "minimize", upper=(0.0, 0.0))
        assert f.frame == Frame.unit(2)

    def test_bad_orientation(self):
        with pytest.raises(ValueError):
            canonicalize([(0.3, 0.6)], (0.0, 0.0), "sideways")

    def test_non_finite(self):
        with pytest.raises(ValueError):
            canonicalize([(np.inf, 0.6)], (0.0, 0.0))

    def test_minimize_round_trip_volume(self, rng):
        for _ in range(200):
            d = int(rng.integers(2, 6))
            ref = rng.random(d) + 1.0
            raw = rng.random((int(rng.integers(1, 25)), d)) * ref
            fmin = canonicalize(raw, ref, "minimize")
            fmax = canonicalize(ref - raw, np.zeros(d))
            assert volume(fmin) == volume(fmax)
