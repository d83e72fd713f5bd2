# lipgroove command line
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
from pydantic import ValidationError
from config.loader import get_core_config, get_hook_config
from utils.exceptions import (
    ConfigError,
    DegenerateLipError,
    DuplicateIdError,
    LipGrooveError,
    NoObjectError,
    StageError,
)
from utils.groove_pipeline import GroovePipeline
from utils.hooks.manager import HookManager
from utils.imaging.pnm import read_pnm_file
from utils.lip_features import build_template, compute_ratios, identify, match_score
from utils.logging import logger, configure_console_logging, configure_file_logging
from utils.models.data_models import GrooveResult, MatchReport, Template
from utils.models.settings_model import MatchConfig, PipelineConfig, Settings
from utils.store.store_keys import template_filename
from utils.store.template_store import TemplateStore

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_ENVIRONMENT = 2
EXIT_DEGENERATE = 3
EXIT_DUPLICATE = 4

_logger = logger.bind(module='Cli')


def emit(key: str, value: Any) -> None:
    """Write one machine-readable ``key=value`` record to stdout."""
    if isinstance(value, bool):
        value = 'true' if value else 'false'
    elif isinstance(value, float):
        value = repr(value)
    print(f'{key}={value}')


def _tuning_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group('pipeline tuning (defaults come from config/settings.json)')
    group.add_argument('--epsilon', type=float, help='threshold convergence tolerance')
    group.add_argument('--sigma', type=float, help='sigma of the smoothing Gaussian')
    group.add_argument('--kernel-size', type=int, help='size of the smoothing Gaussian')
    group.add_argument('--pre-passes', type=int, help='smoothing passes before the first Sobel')
    group.add_argument('--mid-passes', type=int, help='smoothing passes between the Sobel stages')
    group.add_argument('--border', choices=['replicate', 'zero'], help='convolution border policy')
    group.add_argument('--canny-low', type=float, help='Canny hysteresis low threshold')
    group.add_argument('--canny-high', type=float, help='Canny hysteresis high threshold')
    group.add_argument('--canny-sigma', type=float, help='sigma of the Canny pre-smoothing')
    group.add_argument('--final-detector', choices=['canny', 'sobel'], help='detector producing the final maps')
    group.add_argument('--swap-sobel-naming', action='store_true', default=None,
                       help='exchange the operators used for horizontal and vertical grooves')
    group.add_argument('--ratio-tol', type=float, help='maximum ratio distance passing the gate')
    group.add_argument('--accept', type=float, help='minimum groove score for a match')
    group.add_argument('--db', help='template store directory (default: $LIPGROOVE_DB)')
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='lipgroove', description='Lip-print groove extraction and matching')
    commands = parser.add_subparsers(dest='command', required=True)
    tuning = _tuning_flags()

    extract = commands.add_parser('extract', parents=[tuning], help='extract groove maps from an image')
    extract.add_argument('input', type=Path)
    extract.add_argument('--out-dir', type=Path, default=Path('.'))
    extract.add_argument('--dump-stages', action='store_true', help='also write every stage_<letter>.pgm')

    enroll = commands.add_parser('enroll', parents=[tuning], help='enroll an image under an id')
    enroll.add_argument('input', type=Path)
    enroll.add_argument('id')
    enroll.add_argument('--overwrite', action='store_true')

    match = commands.add_parser('match', parents=[tuning], help='compare two images')
    match.add_argument('path_a', type=Path)
    match.add_argument('path_b', type=Path)

    ident = commands.add_parser('identify', parents=[tuning], help='search the store for an image')
    ident.add_argument('query', type=Path)
    return parser


def resolve_configs(args: argparse.Namespace, settings: Settings) -> Tuple[PipelineConfig, MatchConfig, Optional[str]]:
    """Overlay command-line flags on the loaded settings and re-validate."""
    pipeline: Dict[str, Any] = settings.pipeline.model_dump()
    overrides = {
        'epsilon': args.epsilon,
        'pre_passes': args.pre_passes,
        'mid_passes': args.mid_passes,
        'border': args.border,
        'final_detector': args.final_detector,
        'swap_sobel_naming': args.swap_sobel_naming,
        'dump_stages': getattr(args, 'dump_stages', None) or None,
    }
    pipeline.update({k: v for k, v in overrides.items() if v is not None})
    kernel = {'size': args.kernel_size, 'sigma': args.sigma}
    pipeline['smooth_kernel'].update({k: v for k, v in kernel.items() if v is not None})
    canny = {'low': args.canny_low, 'high': args.canny_high, 'sigma': args.canny_sigma}
    pipeline['canny'].update({k: v for k, v in canny.items() if v is not None})

    matching = settings.matching.model_dump()
    matching.update({k: v for k, v in {'ratio_tol': args.ratio_tol, 'accept': args.accept}.items() if v is not None})

    store_path = args.db if args.db is not None else settings.store.path
    return PipelineConfig.model_validate(pipeline), MatchConfig.model_validate(matching), store_path


def _extract(path: Path, cfg: PipelineConfig) -> GrooveResult:
    return GroovePipeline(cfg).extract(read_pnm_file(path))


def _template(template_id: str, path: Path, cfg: PipelineConfig) -> Template:
    return build_template(template_id, _extract(path, cfg))


def _store(store_path: Optional[str]) -> TemplateStore:
    if not store_path:
        raise ConfigError("no template store configured; pass --db or set LIPGROOVE_DB")
    return TemplateStore(store_path)


def _emit_report(report: MatchReport) -> None:
    emit('ratio_gate_passed', report.ratio_gate_passed)
    emit('ratio_distance', f'{report.ratio_distance:.6f}')
    emit('groove_score', f'{report.groove_score:.6f}')
    emit('accepted', report.accepted)


def cmd_extract(args: argparse.Namespace, settings: Settings) -> int:
    cfg, _, _ = resolve_configs(args, settings)
    result = _extract(args.input, cfg)
    HookManager.run_hooks(HookManager.load_hooks(get_hook_config()), result, args.out_dir)

    trace = result.trace
    emit('threshold_initial', trace.iterations[0])
    emit('threshold_final', trace.final)
    emit('threshold_steps', len(trace.iterations) - 1)
    emit('threshold_trace', ','.join(repr(t) for t in trace.iterations))
    emit('object_pixels', int(result.mask.sum()))
    emit('horizontal_edge_pixels', int(result.horizontal.sum()))
    emit('vertical_edge_pixels', int(result.vertical.sum()))

    ratios = compute_ratios(result.mask)
    emit('upper_lower_height_ratio', ratios.upper_lower_height_ratio)
    emit('upper_height_width_ratio', ratios.upper_height_width_ratio)
    return EXIT_OK


def cmd_enroll(args: argparse.Namespace, settings: Settings) -> int:
    cfg, _, store_path = resolve_configs(args, settings)
    template_filename(args.id)
    store = _store(store_path)
    target = store.enroll(_template(args.id, args.input, cfg), overwrite=args.overwrite)
    emit('enrolled', args.id)
    emit('path', target)
    return EXIT_OK


def cmd_match(args: argparse.Namespace, settings: Settings) -> int:
    cfg, match_cfg, _ = resolve_configs(args, settings)
    a = _template(args.path_a.stem or 'a', args.path_a, cfg)
    b = _template(args.path_b.stem or 'b', args.path_b, cfg)
    report = match_score(a, b, match_cfg)
    _emit_report(report)
    return EXIT_OK if report.accepted else EXIT_NO_MATCH


def cmd_identify(args: argparse.Namespace, settings: Settings) -> int:
    cfg, match_cfg, store_path = resolve_configs(args, settings)
    store = _store(store_path)
    query = _template('query', args.query, cfg)
    best = identify(query, store.load_all(), match_cfg)
    if best is None:
        emit('match_id', 'NONE')
        return EXIT_NO_MATCH
    match_id, report = best
    emit('match_id', match_id)
    _emit_report(report)
    return EXIT_OK


COMMANDS = {
    'extract': cmd_extract,
    'enroll': cmd_enroll,
    'match': cmd_match,
    'identify': cmd_identify,
}


def _fail(code: int, message: str) -> int:
    print(f'error: {message}', file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_core_config()
        configure_console_logging('DEBUG' if settings.logs.debug_mode else settings.logs.level)
        configure_file_logging(write_to_files=settings.logs.write_to_files)
        _logger.info(f"🚀 Running '{args.command}'")
        return COMMANDS[args.command](args, settings)
    except DuplicateIdError as e:
        return _fail(EXIT_DUPLICATE, str(e))
    except (NoObjectError, DegenerateLipError) as e:
        return _fail(EXIT_DEGENERATE, f"degenerate lip: {e}")
    except StageError as e:
        if isinstance(e.cause, (NoObjectError, DegenerateLipError)):
            return _fail(EXIT_DEGENERATE, f"degenerate lip: {e}")
        return _fail(EXIT_ENVIRONMENT, str(e))
    except (LipGrooveError, OSError, ValidationError) as e:
        return _fail(EXIT_ENVIRONMENT, str(e))


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("🛑 Interrupted by user.")
        sys.exit(130)
