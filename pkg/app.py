import argparse
import io
import json
import logging
import sys
import numpy as np
from pathlib import Path
from typing import Dict, Optional

from src.errors import NumericalError
from src.dynamics import linear_response, solve_steady_state
from src.analysis import (
    blockade_residual,
    l1_coherence,
    rel_entropy_sync,
    sync_max,
    z_matrix,
)
from src.symmetry import analyze
from src.experiments import (
    CHECKS,
    locate_blockade,
    run_all_checks,
    run_sweep,
    write_sweep_csv,
)
from src.data import (
    MODEL_FIXTURES,
    SWEEP_FIXTURES,
    get_fixture_path,
    load_model_config,
    load_sweep_data,
    parse_sweep_spec,
)
from src.visualization import qfunc_grid

from config.settings import EXIT_CODES, SWEEP, VERSION, configure_logging

logger = logging.getLogger("app")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(payload, encoding='utf-8')
        logger.info("✓ Wrote %s", out)
    else:
        sys.stdout.write(payload)


def _emit_json(data: Dict, out: Optional[str]) -> None:
    _emit(json.dumps(_jsonable(data), indent=2) + '\n', out)


def _solve(config, use_linear_response: bool):
    return linear_response(config.model) if use_linear_response else solve_steady_state(config.model)


def _family_and_quad(config, args):
    family = config.coherent_family()
    if family is None:
        raise ValueError(f"Config {config.source} names no coherent family")
    quad = config.quadrature_for(args.quad_theta, args.phase_grid)
    return family, quad


def cmd_symmetry(args) -> int:
    config = load_model_config(args.config)
    report = analyze(config.model, config.coherent_family(), include_drives=args.include_drives)
    _emit_json(report.to_dict(), args.out)
    return EXIT_CODES['ok']


def cmd_steady(args) -> int:
    config = load_model_config(args.config)
    rho = _solve(config, args.linear_response)
    _emit_json({**rho.to_dict(), 'diagnostics': dict(rho.diagnostics)}, args.out)
    return EXIT_CODES['ok']


def cmd_sync(args) -> int:
    config = load_model_config(args.config)
    family, quad = _family_and_quad(config, args)
    rho = _solve(config, args.linear_response)
    z = z_matrix(family, quad)
    result = sync_max(family, z, rho, quad.phase_grid)
    entropy, _ = rel_entropy_sync(rho)
    _emit_json({
        'S_max': result.max_abs,
        'argmax': list(result.argmax),
        'sync': result.to_dict(),
        'l1': l1_coherence(rho),
        'rel_entropy': entropy,
        'residuals': blockade_residual(family, rho, z),
        'order': rho.order,
        'quadrature': quad.describe(),
    }, args.out)
    return EXIT_CODES['ok']


def cmd_qfunc(args) -> int:
    config = load_model_config(args.config)
    family = config.coherent_family()
    if family is None:
        raise ValueError(f"Config {config.source} names no coherent family")
    rho = _solve(config, args.linear_response)
    n_theta, n_phi = args.resolution
    frame = qfunc_grid(family, rho, n_theta, n_phi)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=SWEEP['float_format'])
    _emit(buffer.getvalue(), args.out)
    return EXIT_CODES['ok']


def cmd_sweep(args) -> int:
    data = load_sweep_data(args.config)
    if args.workers:
        data['workers'] = args.workers
    if args.threshold is not None:
        data['threshold'] = args.threshold
    if args.linear_response:
        data['solver'] = 'linear_response'
    for key, value in (('theta_nodes', args.quad_theta), ('phase_grid', args.phase_grid)):
        if value:
            data[key] = value
    spec = parse_sweep_spec(data)

    if args.locus:
        frame = locate_blockade(spec, group=data.get('locus_group'))
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format=SWEEP['float_format'])
        _emit(buffer.getvalue(), args.out)
        return EXIT_CODES['ok']

    table = run_sweep(spec)
    if args.out:
        write_sweep_csv(table, args.out)
    else:
        buffer = io.StringIO()
        buffer.write('# ' + json.dumps(table.metadata, sort_keys=True) + '\n')
        table.frame.to_csv(buffer, index=False, float_format=SWEEP['float_format'])
        sys.stdout.write(buffer.getvalue())
    return EXIT_CODES['ok']


def cmd_verify(args) -> int:
    results = run_all_checks()
    failed = [name for name, r in results.items() if r['status'] != 'pass']
    _emit_json({'version': VERSION, 'passed': not failed, 'failed': failed,
                'checks': {name: {**CHECKS[name], **r} for name, r in results.items()}}, args.out)
    return EXIT_CODES['verify_failed'] if failed else EXIT_CODES['ok']


def cmd_fixtures(args) -> int:
    listing = {
        'models': {name: {**info, 'path': str(get_fixture_path(name, 'model'))} for name, info in MODEL_FIXTURES.items()},
        'sweeps': {name: {**info, 'path': str(get_fixture_path(name, 'sweep'))} for name, info in SWEEP_FIXTURES.items()},
    }
    _emit_json(listing, args.out)
    return EXIT_CODES['ok']


COMMANDS = {
    'symmetry': cmd_symmetry,
    'steady': cmd_steady,
    'sync': cmd_sync,
    'qfunc': cmd_qfunc,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
    'fixtures': cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Write output to this file instead of standard output")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on standard error")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--config", required=True, help="Model or sweep JSON file")
    model.add_argument("--quad-theta", type=int, help="Gauss-Legendre nodes per population angle")
    model.add_argument("--phase-grid", type=int, help="Uniform grid points per free phase")
    model.add_argument("--linear-response", action="store_true",
                       help="Use the first-order steady state in the drive terms")

    parser = argparse.ArgumentParser(
        prog="syncblockade",
        description="Synchronization blockade toolkit: symmetry analysis, steady states, measures and sweeps",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    symmetry = sub.add_parser("symmetry", parents=[common, model], help="Lie-algebra and phase-counting report")
    symmetry.add_argument("--include-drives", action="store_true", help="Count drive terms as generators")

    sub.add_parser("steady", parents=[common, model], help="Steady state with diagnostics")
    sub.add_parser("sync", parents=[common, model], help="Synchronization measures of the steady state")

    qfunc = sub.add_parser("qfunc", parents=[common, model], help="Husimi function grid as CSV")
    qfunc.add_argument("--resolution", type=int, nargs=2, default=[60, 120], metavar=("NTHETA", "NPHI"))

    sweep = sub.add_parser("sweep", parents=[common, model], help="Parameter sweep as CSV")
    sweep.add_argument("--workers", type=int, help="Worker processes")
    sweep.add_argument("--threshold", type=float, help="S_max threshold for the blockade flag")
    sweep.add_argument("--locus", action="store_true", help="Locate the blockade locus instead of tabulating")

    sub.add_parser("verify", parents=[common], help="Run the self-verification checks")
    sub.add_parser("fixtures", parents=[common], help="List shipped fixture configs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging('DEBUG' if args.verbose else None)

    try:
        return COMMANDS[args.command](args)
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_CODES['numerical']
    except (ValueError, OSError) as e:
        logger.error("Input error: %s", e)
        return EXIT_CODES['input']


if __name__ == "__main__":
    sys.exit(main())
