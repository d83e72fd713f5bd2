import math
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from tests.helpers import label_components, vertical_step
from utils.exceptions import HysteresisThresholdError
from utils.imaging.edges import (
    canny,
    gradient,
    hysteresis,
    non_max_suppression,
    quantize_direction,
    sobel_horizontal,
    sobel_vertical,
)
from utils.models.data_models import GradientField
from utils.models.settings_model import BorderPolicy, CannyParams

u8_rasters = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


def horizontal_step(height: int = 5, width: int = 5, at: int = 2) -> np.ndarray:
    return vertical_step(width, height, at).T.copy()


@pytest.mark.parametrize('operator', [sobel_vertical, sobel_horizontal])
def test_sobel_vanishes_on_constant_images(operator):
    assert not operator(np.full((6, 6), 93, dtype=np.uint8)).any()


def test_sobel_vertical_hand_oracle():
    out = sobel_vertical(vertical_step(), BorderPolicy.REPLICATE)
    np.testing.assert_array_equal(out[1:4, 2], 1020.0)
    np.testing.assert_array_equal(out[:, 0], 0.0)
    np.testing.assert_array_equal(out[:, 3:], 0.0)


def test_sobel_vertical_is_blind_to_horizontal_steps():
    assert not sobel_vertical(horizontal_step()).any()


def test_sobel_horizontal_hand_oracle():
    out = sobel_horizontal(horizontal_step(), BorderPolicy.REPLICATE)
    np.testing.assert_array_equal(out[2, 1:4], 1020.0)
    np.testing.assert_array_equal(out[3:, :], 0.0)


@settings(max_examples=50)
@given(u8_rasters, st.sampled_from(list(BorderPolicy)))
def test_sobel_transpose_duality_is_bit_exact(r, border):
    np.testing.assert_array_equal(sobel_horizontal(r, border), sobel_vertical(r.T.copy(), border).T)


@given(u8_rasters, st.sampled_from(list(BorderPolicy)))
def test_sobel_response_bound(r, border):
    assert np.abs(sobel_vertical(r, border)).max() <= 4 * 255
    assert np.abs(sobel_horizontal(r, border)).max() <= 4 * 255


def test_gradient_of_constant_image():
    g = gradient(np.full((5, 5), 40, dtype=np.uint8))
    assert not g.magnitude.any()


def test_gradient_of_vertical_step():
    g = gradient(vertical_step())
    np.testing.assert_array_equal(g.magnitude[:, 2], 1020.0)
    np.testing.assert_array_equal(g.direction[:, 2], 0.0)
    falling = gradient(255 - vertical_step())
    np.testing.assert_allclose(np.abs(falling.direction[:, 2]), math.pi)


def test_gradient_direction_on_diagonal_step():
    yy, xx = np.mgrid[0:5, 0:5]
    r = np.where(xx + yy >= 4, 255, 0).astype(np.uint8)
    g = gradient(r)
    interior = np.zeros(r.shape, dtype=bool)
    interior[1:4, 1:4] = True
    edge = interior & (g.magnitude > 0)
    assert edge.any()
    np.testing.assert_allclose(np.abs(g.direction[edge]), math.pi / 4, atol=1e-6)


def test_direction_quantization_bins():
    degrees = np.array([0, 20, 30, 60, 90, 100, 135, 170, 180, -45, -90, -135])
    bins = quantize_direction(np.radians(degrees))
    np.testing.assert_array_equal(bins, [0, 0, 1, 1, 2, 2, 3, 0, 0, 3, 2, 1])


def test_nms_of_zero_field():
    field = GradientField(magnitude=np.zeros((4, 4)), direction=np.zeros((4, 4)))
    assert not non_max_suppression(field).any()


def test_nms_keeps_isolated_peak():
    magnitude = np.zeros((5, 5))
    magnitude[2, 2] = 10.0
    for angle in (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4):
        out = non_max_suppression(GradientField(magnitude=magnitude, direction=np.full((5, 5), angle)))
        np.testing.assert_array_equal(out, magnitude)


def test_nms_thins_vertical_step_to_one_pixel():
    r = vertical_step(7, 7, 3)
    g = gradient(r)
    out = non_max_suppression(g)
    for row in out:
        assert np.count_nonzero(row) == 1
        # exhaustive oracle: the survivor is a maximum among its horizontal neighbours
        x = int(np.flatnonzero(row)[0])
        left = g.magnitude[0, x - 1] if x > 0 else 0.0
        right = g.magnitude[0, x + 1] if x + 1 < r.shape[1] else 0.0
        assert row[x] >= left and row[x] >= right


@settings(max_examples=50)
@given(arrays(np.float64, (8, 8), elements=st.floats(0, 500)),
       arrays(np.float64, (8, 8), elements=st.floats(-math.pi, math.pi)))
def test_nms_never_increases_and_only_keeps_nonzero(magnitude, direction):
    out = non_max_suppression(GradientField(magnitude=magnitude, direction=direction))
    assert np.all(out <= magnitude)
    assert not np.any((out != 0) & (magnitude == 0))


def test_hysteresis_extremes():
    field = np.full((4, 4), 5.0)
    assert not hysteresis(field, 10, 20).any()
    assert hysteresis(np.full((4, 4), 30.0), 10, 20).all()


def test_hysteresis_follows_weak_chain_from_strong_seed():
    field = np.zeros((5, 5))
    field[2, 2] = 100.0
    field[2, 3] = 15.0
    field[2, 4] = 15.0
    field[0, 0] = 15.0
    edges = hysteresis(field, 10, 50)
    expected = np.zeros((5, 5), dtype=bool)
    expected[2, 2:5] = True
    np.testing.assert_array_equal(edges, expected)


def test_hysteresis_connects_diagonally():
    field = np.zeros((4, 4))
    field[0, 0] = 100.0
    field[1, 1] = 15.0
    field[2, 2] = 15.0
    assert hysteresis(field, 10, 50)[2, 2]


@pytest.mark.parametrize('low, high', [(50, 50), (60, 50), (0, 10), (-1, 10)])
def test_hysteresis_rejects_bad_thresholds(low, high):
    with pytest.raises(HysteresisThresholdError):
        hysteresis(np.zeros((3, 3)), low, high)


@settings(max_examples=100)
@given(arrays(np.float64, (10, 10), elements=st.sampled_from([0.0, 5.0, 15.0, 25.0, 40.0, 60.0, 90.0])),
       st.floats(1, 30), st.floats(31, 80), st.floats(0, 1), st.floats(0, 1))
def test_hysteresis_is_monotone_in_thresholds(field, low, high, low_cut, high_cut):
    lower_low = max(0.5, low * low_cut)
    lower_high = max(lower_low + 0.5, high * high_cut)
    lower_high = min(lower_high, high)
    baseline = hysteresis(field, low, high)
    relaxed = hysteresis(field, min(lower_low, low), lower_high)
    assert np.all(relaxed | ~baseline)


def test_hysteresis_matches_flood_fill_oracle():
    rng = np.random.default_rng(11)
    field = rng.choice([0.0, 15.0, 60.0], size=(12, 12), p=[0.5, 0.4, 0.1])
    edges = hysteresis(field, 10, 50)
    expected = np.zeros(field.shape, dtype=bool)
    for component in label_components(field >= 10):
        if any(field[y, x] >= 50 for y, x in component):
            for y, x in component:
                expected[y, x] = True
    np.testing.assert_array_equal(edges, expected)


def test_canny_on_constant_image_is_empty():
    assert not canny(np.full((16, 16), 128, dtype=np.uint8)).any()


def test_canny_on_vertical_step_is_one_pixel_thick():
    r = vertical_step(16, 16, 8)
    edges = canny(r, CannyParams())
    for row in edges[1:-1]:
        assert np.count_nonzero(row) == 1
    assert len(label_components(edges)) == 1


def test_canny_is_deterministic(lip):
    first = canny(lip.image)
    np.testing.assert_array_equal(first, canny(lip.image))


def test_canny_params_validation():
    with pytest.raises(ValueError):
        CannyParams(low=50, high=20)
    with pytest.raises(ValueError):
        CannyParams(kernel_size=4)
