"""Lip geometry ratios, template construction and two-stage matching.

Matching first gates on the statistical ratios, then scores groove overlap with
the Jaccard index of the normalized edge maps.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple
import numpy as np
from utils.exceptions import DegenerateLipError, NoObjectError
from utils.logging import logger
from utils.models.data_models import (
    TEMPLATE_HEIGHT,
    TEMPLATE_WIDTH,
    BoundingBox,
    GrooveResult,
    LipRatios,
    MatchReport,
    Template,
)
from utils.models.settings_model import MatchConfig

_logger = logger.bind(module='LipFeatures')


def bounding_box(m: np.ndarray) -> BoundingBox:
    rows = np.flatnonzero(m.any(axis=1))
    cols = np.flatnonzero(m.any(axis=0))
    if rows.size == 0:
        raise NoObjectError("segmentation mask has no object pixels")
    return BoundingBox(top=int(rows[0]), left=int(cols[0]), bottom=int(rows[-1]), right=int(cols[-1]))


def split_lips(m: np.ndarray, bb: BoundingBox) -> Tuple[int, int, int]:
    """Locate the mouth line and return ``(mouth_row, upper_h, lower_h)``.

    The mouth row is the row of the central half of the box with the fewest
    object pixels, topmost on ties.
    """
    h = bb.height
    if h < 3:
        raise DegenerateLipError(f"lip box is only {h} rows tall")
    first = bb.top + h // 4
    last = min(bb.top + (3 * h) // 4, bb.bottom)
    counts = m[first:last + 1, bb.left:bb.right + 1].sum(axis=1)
    mouth_row = first + int(np.argmin(counts))
    return mouth_row, mouth_row - bb.top, bb.bottom - mouth_row


def compute_ratios(m: np.ndarray) -> LipRatios:
    bb = bounding_box(m)
    _, upper_h, lower_h = split_lips(m, bb)
    if upper_h == 0 or lower_h == 0:
        raise DegenerateLipError(f"upper height {upper_h} and lower height {lower_h} must both be positive")
    return LipRatios(
        upper_lower_height_ratio=upper_h / lower_h,
        upper_height_width_ratio=upper_h / bb.width,
    )


def _resample_nearest(edges: np.ndarray, bb: BoundingBox) -> np.ndarray:
    crop = edges[bb.top:bb.bottom + 1, bb.left:bb.right + 1]
    src_h, src_w = crop.shape
    # centre of target pixel t maps to source index floor((t + 0.5) * src / dst)
    rows = ((2 * np.arange(TEMPLATE_HEIGHT) + 1) * src_h) // (2 * TEMPLATE_HEIGHT)
    cols = ((2 * np.arange(TEMPLATE_WIDTH) + 1) * src_w) // (2 * TEMPLATE_WIDTH)
    return crop[np.ix_(rows, cols)]


def build_template(template_id: str, g: GrooveResult) -> Template:
    bb = bounding_box(g.mask)
    ratios = compute_ratios(g.mask)
    height, width = g.mask.shape
    return Template(
        id=template_id,
        ratios=ratios,
        h_map=_resample_nearest(g.horizontal, bb),
        v_map=_resample_nearest(g.vertical, bb),
        source_dims=(width, height),
    )


def jaccard(a: np.ndarray, b: np.ndarray) -> float:
    union = int(np.count_nonzero(a | b))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(a & b)) / union


def match_score(a: Template, b: Template, cfg: MatchConfig = MatchConfig()) -> MatchReport:
    ratio_distance = max(
        abs(a.ratios.upper_lower_height_ratio - b.ratios.upper_lower_height_ratio),
        abs(a.ratios.upper_height_width_ratio - b.ratios.upper_height_width_ratio),
    )
    gate = ratio_distance <= cfg.ratio_tol
    groove_score = (jaccard(a.h_map, b.h_map) + jaccard(a.v_map, b.v_map)) / 2
    return MatchReport(
        ratio_gate_passed=gate,
        ratio_distance=ratio_distance,
        groove_score=groove_score,
        accepted=gate and groove_score >= cfg.accept,
        ratio_tol=cfg.ratio_tol,
        accept=cfg.accept,
    )


def identify(query: Template, gallery: Sequence[Template], cfg: MatchConfig = MatchConfig(),
             workers: int = 1) -> Optional[Tuple[str, MatchReport]]:
    """Best accepted gallery entry by groove score; ties go to the smallest id."""
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda t: match_score(query, t, cfg), gallery))
    else:
        reports = [match_score(query, t, cfg) for t in gallery]

    accepted: List[Tuple[str, MatchReport]] = [
        (entry.id, report) for entry, report in zip(gallery, reports) if report.accepted
    ]
    _logger.debug(f"🔎 {len(accepted)} of {len(gallery)} gallery entries accepted for '{query.id}'")
    if not accepted:
        return None
    return min(accepted, key=lambda item: (-item[1].groove_score, item[0]))
