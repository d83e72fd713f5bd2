import time
import numpy as np
import pytest
from tests.helpers import label_components
from tests.synthetic import make_lip_fixture
from utils.exceptions import StageError
from utils.groove_pipeline import STAGE_LETTERS, GroovePipeline, extract_grooves
from utils.imaging.edges import sobel_horizontal, sobel_vertical
from utils.imaging.filters import gaussian_kernel, smooth
from utils.imaging.raster import complement, rescale_to_u8
from utils.imaging.thresholding import blacken_background, iterative_threshold, segment
from utils.models.settings_model import CannyParams, FinalDetector, PipelineConfig, RescaleMode

DUMPING = PipelineConfig(dump_stages=True)


def components_crossing_row(edges: np.ndarray, row: int):
    return [c for c in label_components(edges) if any(y == row for y, _ in c)]


def components_crossing_col(edges: np.ndarray, col: int):
    return [c for c in label_components(edges) if any(x == col for _, x in c)]


def changed_fraction(clean: np.ndarray, noisy: np.ndarray) -> float:
    """Pixels that differ between the maps, relative to the clean edge count."""
    return int((clean ^ noisy).sum()) / int(clean.sum())


@pytest.fixture(scope='module')
def lip_result(lip):
    return extract_grooves(lip.image, DUMPING)


def test_all_white_image_has_no_grooves():
    result = extract_grooves(np.full((32, 32), 255, dtype=np.uint8))
    assert not result.horizontal.any()
    assert not result.vertical.any()
    assert not result.mask.any()


def test_dimensions_are_preserved(lip, lip_result):
    shape = lip.image.shape
    assert lip_result.horizontal.shape == lip_result.vertical.shape == lip_result.mask.shape == shape
    assert set(lip_result.stages) == set(STAGE_LETTERS)
    for raster in lip_result.stages.values():
        assert raster.shape == shape
        assert raster.dtype == np.uint8


def test_vertical_grooves_cross_horizontal_midline(lip, lip_result):
    row = lip.image.shape[0] // 2
    assert len(components_crossing_row(lip_result.vertical, row)) >= 3
    hits = np.flatnonzero(lip_result.vertical[row])
    for col in lip.vertical_grooves:
        assert np.any(np.abs(hits - col) <= 12), f"no vertical groove edge near column {col}"


def test_horizontal_grooves_cross_vertical_midline(lip, lip_result):
    col = lip.image.shape[1] // 2
    assert len(components_crossing_col(lip_result.horizontal, col)) >= 2
    hits = np.flatnonzero(lip_result.horizontal[:, col])
    for row in lip.horizontal_grooves:
        assert np.any(np.abs(hits - row) <= 12), f"no horizontal groove edge near row {row}"


def test_runs_are_bit_identical(lip, lip_result):
    again = extract_grooves(lip.image, DUMPING)
    np.testing.assert_array_equal(again.horizontal, lip_result.horizontal)
    np.testing.assert_array_equal(again.vertical, lip_result.vertical)
    for letter in STAGE_LETTERS:
        np.testing.assert_array_equal(again.stages[letter], lip_result.stages[letter])


def test_parallel_tracks_match_sequential(lip, lip_result):
    parallel = extract_grooves(lip.image, PipelineConfig(dump_stages=True, parallel_tracks=True))
    np.testing.assert_array_equal(parallel.horizontal, lip_result.horizontal)
    np.testing.assert_array_equal(parallel.vertical, lip_result.vertical)


def test_color_input_is_converted(lip, lip_result):
    color = np.stack([lip.image] * 3, axis=-1)
    result = extract_grooves(color)
    np.testing.assert_array_equal(result.vertical, lip_result.vertical)


def test_shared_stages_add_no_hidden_processing(lip, lip_result):
    cfg = DUMPING
    trace = iterative_threshold(lip.image, cfg.epsilon)
    mask = segment(lip.image, trace.final)
    kernel = gaussian_kernel(cfg.smooth_kernel.size, cfg.smooth_kernel.sigma)
    expected_d = smooth(blacken_background(lip.image, mask), kernel, cfg.pre_passes, cfg.border)
    np.testing.assert_array_equal(lip_result.stages['d'], expected_d)
    np.testing.assert_array_equal(lip_result.mask, mask)
    assert lip_result.trace == trace


def test_track_stages_follow_the_chain(lip_result):
    s = lip_result.stages
    np.testing.assert_array_equal(s['e'], rescale_to_u8(sobel_horizontal(s['d'])))
    np.testing.assert_array_equal(s['f'], rescale_to_u8(sobel_vertical(s['d'])))
    np.testing.assert_array_equal(s['i'], rescale_to_u8(sobel_horizontal(s['g']), RescaleMode.CLAMP_ABS))
    np.testing.assert_array_equal(s['j'], rescale_to_u8(sobel_vertical(s['h']), RescaleMode.CLAMP_ABS))
    np.testing.assert_array_equal(s['k'], complement(s['i']))
    np.testing.assert_array_equal(s['l'], complement(s['j']))
    np.testing.assert_array_equal(s['m'] == 255, lip_result.horizontal)
    np.testing.assert_array_equal(s['n'] == 255, lip_result.vertical)


def test_zero_mid_passes_skips_resmoothing(lip):
    result = extract_grooves(lip.image, PipelineConfig(dump_stages=True, mid_passes=0))
    np.testing.assert_array_equal(result.stages['g'], result.stages['e'])
    np.testing.assert_array_equal(result.stages['h'], result.stages['f'])


def test_swapped_sobel_naming_exchanges_tracks(lip, lip_result):
    swapped = extract_grooves(lip.image, PipelineConfig(swap_sobel_naming=True))
    np.testing.assert_array_equal(swapped.horizontal, lip_result.vertical)
    np.testing.assert_array_equal(swapped.vertical, lip_result.horizontal)


def test_sobel_final_detector(lip):
    cfg = PipelineConfig(dump_stages=True, final_detector=FinalDetector.SOBEL)
    result = extract_grooves(lip.image, cfg)
    expected = rescale_to_u8(sobel_vertical(result.stages['l'])) >= cfg.sobel_threshold
    np.testing.assert_array_equal(result.vertical, expected)
    assert result.vertical.any()


def test_stages_are_omitted_unless_requested(lip):
    assert extract_grooves(lip.image).stages is None


def test_noise_perturbs_few_edge_pixels(lip_result):
    assert lip_result.vertical.any() and lip_result.horizontal.any()
    noisy = extract_grooves(make_lip_fixture(noise=8).image, DUMPING)
    assert changed_fraction(lip_result.vertical, noisy.vertical) < 0.2
    assert changed_fraction(lip_result.horizontal, noisy.horizontal) < 0.2


def test_runtime_at_fixture_scale(lip):
    start = time.perf_counter()
    extract_grooves(lip.image)
    assert time.perf_counter() - start < 10.0


def test_invalid_input_reports_stage_label():
    with pytest.raises(StageError) as info:
        GroovePipeline().extract(np.zeros((4, 4), dtype=np.int32))
    assert info.value.label == 'a'


def test_config_rejects_min_max_rescale():
    with pytest.raises(ValueError):
        PipelineConfig(sobel_rescale='min_max')
    with pytest.raises(ValueError):
        PipelineConfig(second_sobel_rescale='min_max')
    with pytest.raises(ValueError):
        PipelineConfig(pre_passes=0)


def test_default_canny_thresholds_find_grooves(lip, lip_result):
    assert PipelineConfig().canny == CannyParams(low=20.0, high=50.0)
    # both tracks carry the lip contour plus every groove, each a few pixels thick
    assert lip_result.vertical.sum() > 1000
    assert lip_result.horizontal.sum() > 1000
    assert lip_result.stages['n'].max() == 255 and lip_result.stages['m'].max() == 255


def test_second_sobel_keeps_contrast(lip_result):
    s = lip_result.stages
    # a quarter-scaled second Sobel peaks below 20 on this fixture
    assert int(s['j'].max()) >= 64
    assert int(s['l'].min()) <= 255 - 64


def test_quarter_scaled_second_sobel_loses_the_grooves(lip):
    cfg = PipelineConfig(second_sobel_rescale=RescaleMode.CLAMP_ABS_QUARTER)
    result = extract_grooves(lip.image, cfg)
    assert not result.vertical.any() and not result.horizontal.any()


def test_grooveless_lip_has_fewer_edges(lip_result):
    plain = extract_grooves(make_lip_fixture(grooves=False).image)
    np.testing.assert_array_equal(plain.mask, lip_result.mask)
    assert plain.vertical.sum() < 0.6 * lip_result.vertical.sum()
    assert plain.horizontal.sum() < 0.6 * lip_result.horizontal.sum()
