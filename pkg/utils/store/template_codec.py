"""Line-oriented ``.lipt`` template format.

::

    LIPT 1
    id <id>
    ratios <upper/lower> <upper/width>
    dims 128 64
    64 lines of 128 '0'/'1' characters (h_map, top row first)
    64 lines of 128 '0'/'1' characters (v_map)

Lines end with a single LF, including the last one.
"""
from typing import List
import numpy as np
from pydantic import ValidationError
from utils.exceptions import (
    MalformedHeaderLineError,
    MalformedMapError,
    TemplateDimsError,
    TemplateFormatError,
    TemplateMagicError,
    UnsupportedVersionError,
)
from utils.models.data_models import TEMPLATE_HEIGHT, TEMPLATE_WIDTH, LipRatios, Template

FORMAT_VERSION = 1
_HEADER_LINES = 4
_MAP_CHARS = np.frombuffer(b'01', dtype=np.uint8)


def _format_ratio(value: float) -> str:
    # nine significant digits, positional notation, no locale
    return np.format_float_positional(value, precision=9, unique=False, fractional=False, trim='-')


def _map_lines(m: np.ndarray) -> List[str]:
    chars = _MAP_CHARS[m.astype(np.uint8)]
    return [row.tobytes().decode('ascii') for row in chars]


def serialize_template(t: Template) -> bytes:
    lines = [
        f'LIPT {FORMAT_VERSION}',
        f'id {t.id}',
        f'ratios {_format_ratio(t.ratios.upper_lower_height_ratio)} '
        f'{_format_ratio(t.ratios.upper_height_width_ratio)}',
        f'dims {TEMPLATE_WIDTH} {TEMPLATE_HEIGHT}',
        *_map_lines(t.h_map),
        *_map_lines(t.v_map),
    ]
    return ('\n'.join(lines) + '\n').encode('utf-8')


def _parse_map(lines: List[str], first_line_number: int) -> np.ndarray:
    rows = []
    for offset, line in enumerate(lines):
        line_number = first_line_number + offset
        if len(line) != TEMPLATE_WIDTH:
            raise MalformedMapError(line_number, f"expected {TEMPLATE_WIDTH} characters, found {len(line)}")
        if line.strip('01'):
            raise MalformedMapError(line_number, "map lines may only contain '0' and '1'")
        rows.append([ch == '1' for ch in line])
    return np.array(rows, dtype=bool)


def parse_template(data: bytes) -> Template:
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise TemplateFormatError(f"template is not valid UTF-8: {e}") from e

    lines = text.split('\n')
    if not lines[0].startswith('LIPT'):
        raise TemplateMagicError(f"bad magic line {lines[0][:16]!r}")
    if lines[0] != f'LIPT {FORMAT_VERSION}':
        raise UnsupportedVersionError(f"unsupported template version line {lines[0]!r}")

    expected_lines = _HEADER_LINES + 2 * TEMPLATE_HEIGHT
    if len(lines) < _HEADER_LINES:
        raise MalformedHeaderLineError("template header is incomplete")

    if not lines[1].startswith('id ') or len(lines[1]) == 3:
        raise MalformedHeaderLineError(f"line 2: expected 'id <id>', found {lines[1]!r}")
    template_id = lines[1][3:]

    ratio_fields = lines[2].split(' ')
    if len(ratio_fields) != 3 or ratio_fields[0] != 'ratios':
        raise MalformedHeaderLineError(f"line 3: expected 'ratios <r1> <r2>', found {lines[2]!r}")
    try:
        r1, r2 = float(ratio_fields[1]), float(ratio_fields[2])
    except ValueError:
        raise MalformedHeaderLineError(f"line 3: ratios are not decimal numbers: {lines[2]!r}") from None

    if lines[3] != f'dims {TEMPLATE_WIDTH} {TEMPLATE_HEIGHT}':
        raise TemplateDimsError(f"line 4: expected 'dims {TEMPLATE_WIDTH} {TEMPLATE_HEIGHT}', found {lines[3]!r}")

    # a well-formed file ends with LF, leaving one empty trailing element
    body = lines[_HEADER_LINES:]
    if body and body[-1] == '':
        body = body[:-1]
    else:
        raise MalformedMapError(len(lines), "template must end with a newline")
    if len(body) != 2 * TEMPLATE_HEIGHT:
        raise MalformedMapError(
            min(len(lines), expected_lines),
            f"expected {2 * TEMPLATE_HEIGHT} map lines, found {len(body)}",
        )

    first_map_line = _HEADER_LINES + 1
    h_map = _parse_map(body[:TEMPLATE_HEIGHT], first_map_line)
    v_map = _parse_map(body[TEMPLATE_HEIGHT:], first_map_line + TEMPLATE_HEIGHT)

    try:
        return Template(
            id=template_id,
            ratios=LipRatios(upper_lower_height_ratio=r1, upper_height_width_ratio=r2),
            h_map=h_map,
            v_map=v_map,
        )
    except ValidationError as e:
        raise TemplateFormatError(f"template fields are invalid: {e}") from e
