import argparse
import logging
import math
import sys

import pandas as pd

from casimir.analyzers.abelplana import (
    bose_integral,
    bose_integral_closed_form,
    find_repulsive_window,
    ir_truncated_pressure,
    shifted_distance_factor,
)
from casimir.config.cutoff_config import CUTOFF_CHOICES
from casimir.config.defaults_config import METHOD_NAMES, DefaultsConfig
from casimir.config.numerics_config import IDEAL_PRESSURE
from casimir.exceptions import NumericalError, ParameterError
from casimir.models.params import ReducedParams
from casimir.models.results import IRConvention, SweepGrid, SweepScale, SweepVariable
from casimir.repositories.output_repository import OutputRepository
from casimir.services.config_service import ConfigService
from casimir.services.pressure_service import PressureService
from casimir.services.sweep_service import SweepService
from casimir.services.verify_service import SUITES, VerifyService
from casimir.utils.colors import Colors, colorize
from casimir.utils.logging_setup import setup_logging
from casimir.utils.svg_chart import render_line_chart

logger = logging.getLogger(__name__)

FIG2_XLABEL = "Parameter α"
FIG2_YLABEL = "Casimir pressure in units of d⁻⁴"


class IRCutoffAction(argparse.Action):
    """--alpha 與 --kappa 皆設定 kappa (α = πκ)，以最後給定者為準"""

    def __call__(self, parser, namespace, values, option_string=None):
        kappa = values / math.pi if option_string == '--alpha' else values
        previous = getattr(namespace, 'ir_option', None)
        if previous is not None and previous != option_string:
            namespace.ir_conflict = (previous, option_string)
        namespace.ir_option = option_string
        setattr(namespace, self.dest, kappa)


def _add_params(sub, defaults):
    """pressure 與 sweep 共用的問題參數"""
    sub.add_argument('--cutoff', choices=list(CUTOFF_CHOICES), default=defaults.cutoff, help='UV cutoff family')
    sub.add_argument('--x', type=float, default=defaults.x, help='reduced UV scale x = dΛ')
    sub.add_argument('--kappa', dest='kappa', type=float, action=IRCutoffAction, default=defaults.kappa,
                     help='reduced IR truncation κ = d·k_c/π')
    sub.add_argument('--alpha', dest='kappa', type=float, action=IRCutoffAction,
                     help='IR truncation α = k_c·d (= πκ)')
    sub.add_argument('--nu', type=float, default=defaults.nu, help='tanh smoothing width ν = dμ')
    sub.add_argument('--method', choices=list(METHOD_NAMES), help='evaluation method')
    sub.add_argument('--convention', choices=[c.value for c in IRConvention], default='continuum',
                     help='IR-truncated sum starts at κ (continuum) or ceil(κ) (integer)')
    sub.set_defaults(ir_option=None, ir_conflict=None)


def build_parser(defaults):
    parser = argparse.ArgumentParser(prog='casimir', description="Casimir pressure under IR and UV mode cutoffs",
                                     add_help=False)
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')

    # 建立子命令
    subparsers = parser.add_subparsers(dest='command', help='available commands')

    subparsers.add_parser('help', help='show help')

    # pressure - 單一參數點
    pressure_parser = subparsers.add_parser('pressure', help='reduced pressure of one parameter point')
    _add_params(pressure_parser, defaults)
    pressure_parser.add_argument('--format', choices=['text', 'csv'], default='text', help='output format')

    # fig2 - 紅外截斷壓力曲線
    fig2_parser = subparsers.add_parser('fig2', help='IR-truncated pressure against α as CSV/SVG')
    fig2_parser.add_argument('--alpha-max', type=float, default=1.58, help='upper end of the α grid')
    fig2_parser.add_argument('--points', type=int, default=100, help='number of α samples')
    fig2_parser.add_argument('--out', default='fig2.csv', help='CSV output path')
    fig2_parser.add_argument('--svg', help='optional SVG output path')

    # sweep - 網格上的壓力
    sweep_parser = subparsers.add_parser('sweep', help='pressure over a grid of x, α or ν')
    sweep_parser.add_argument('--variable', choices=[v.value for v in SweepVariable], required=True)
    sweep_parser.add_argument('--start', type=float, required=True)
    sweep_parser.add_argument('--stop', type=float, required=True)
    sweep_parser.add_argument('--points', type=int, default=20)
    sweep_parser.add_argument('--scale', choices=[s.value for s in SweepScale], default='linear')
    sweep_parser.add_argument('--threads', type=int, default=defaults.threads, help='parallel sweep points')
    sweep_parser.add_argument('--out', required=True, help='CSV output path')
    _add_params(sweep_parser, defaults)

    # verify - 驗收測試組
    verify_parser = subparsers.add_parser('verify', help='run verification suites')
    verify_parser.add_argument('suite', nargs='?', choices=list(SUITES) + ['all'], default='all')

    bose_parser = subparsers.add_parser('bose', help='Bose integral ∫ yⁿ/(e^(2πy) - 1) dy')
    bose_parser.add_argument('n', type=int, help='power n (1..9)')

    window_parser = subparsers.add_parser('window', help='α interval where the IR-truncated force is repulsive')
    window_parser.add_argument('--tol', type=float, default=1e-6, help='bisection tolerance')

    shift_parser = subparsers.add_parser('shift', help='pressure factor for a shifted plate distance')
    shift_parser.add_argument('--alpha', type=float, required=True, help='shift α in units of 1/Λ')
    shift_parser.add_argument('--x', type=float, default=defaults.x, help='reduced UV scale x = dΛ')
    shift_parser.add_argument('--sign', choices=['+', '-'], default='+', help='d(1 + α/x) or d(1 - α/x)')
    shift_parser.add_argument('--order', type=int, default=3, help='series order (0..3)')

    # config - 已儲存的預設值
    config_parser = subparsers.add_parser('config', help='show or change stored defaults')
    config_parser.add_argument('--cutoff', choices=list(CUTOFF_CHOICES))
    config_parser.add_argument('--x', type=float)
    config_parser.add_argument('--kappa', type=float)
    config_parser.add_argument('--nu', type=float)
    config_parser.add_argument('--method', choices=list(METHOD_NAMES))
    config_parser.add_argument('--threads', type=int)
    config_parser.add_argument('--show', action='store_true', help='show stored defaults')
    config_parser.add_argument('--clear', action='store_true', help='reset all defaults')
    return parser


def _print_record(record):
    for key, value in record.items():
        if isinstance(value, float):
            value = f"{value:.10g}"
        print(f"  {key}: {value}")


def cmd_pressure(args, defaults):
    service = PressureService()
    params = ReducedParams(x=args.x, kappa=args.kappa, nu=args.nu)
    method = service.resolve_method(args.cutoff, args.method, defaults.stored_method, params)
    result = service.compute(args.cutoff, params, method, IRConvention(args.convention))
    record = service.describe(args.cutoff, params, method, result)

    if args.format == 'csv':
        frame = pd.DataFrame([record])
        print(frame.to_csv(index=False, float_format="%.9g", lineterminator="\n"), end="")
    else:
        _print_record(record)
    return 0


def cmd_fig2(args, defaults):
    frame = SweepService.fig2_frame(args.alpha_max, args.points)
    repository = OutputRepository()
    repository.save_csv(frame, args.out, float_format="%.6f")
    print(f"✓ {len(frame)} rows written to {args.out}")
    if args.svg:
        svg = render_line_chart(frame['alpha'], frame['reduced_pressure'], xlabel=FIG2_XLABEL, ylabel=FIG2_YLABEL)
        repository.save_svg(svg, args.svg)
        print(f"✓ chart written to {args.svg}")
    return 0


def cmd_sweep(args, defaults):
    grid = SweepGrid(SweepVariable(args.variable), args.start, args.stop, args.points, SweepScale(args.scale))
    base = ReducedParams(x=args.x, kappa=args.kappa, nu=args.nu)
    service = SweepService(threads=args.threads)
    frame = service.run(grid, args.cutoff, base, args.method, IRConvention(args.convention),
                        fallback=defaults.stored_method)
    OutputRepository().save_csv(frame, args.out)

    failed = service.failures(frame)
    print(f"✓ {len(frame)} rows written to {args.out}")
    if failed:
        print(colorize(f"✗ {failed} of {len(frame)} points failed", Colors.RED, sys.stderr), file=sys.stderr)
        return 1
    return 0


def cmd_verify(args, defaults):
    service = VerifyService()
    checks = service.run(args.suite)
    for c in checks:
        if c.informational:
            status = colorize("INFO", Colors.YELLOW)
        elif c.passed:
            status = colorize("PASS", Colors.GREEN)
        else:
            status = colorize("FAIL", Colors.RED)
        print(f"{status}  [{c.suite}] {c.name}: measured {c.measured:.10g}, "
              f"expected {c.expected:.10g}, tol {c.tolerance:.3g}")

    passed = service.all_passed(checks)
    failed = sum(1 for c in checks if not c.passed and not c.informational)
    print(f"\n{len(checks) - failed} of {len(checks)} checks passed")
    return 0 if passed else 1


def cmd_bose(args, defaults):
    value = bose_integral(args.n)
    closed = bose_integral_closed_form(args.n)
    _print_record({
        'n': args.n,
        'quadrature': value,
        'closed form n!·ζ(n+1)/(2π)^(n+1)': closed,
        'relative difference': abs(value - closed) / closed,
    })
    return 0


def cmd_window(args, defaults):
    window = find_repulsive_window(args.tol)
    _print_record({
        'alpha_low': window.alpha_low,
        'alpha_high': window.alpha_high,
        'midpoint': window.midpoint,
        'P(midpoint)': ir_truncated_pressure(window.midpoint).reduced_pressure,
        'bracket_tol': window.bracket_tol,
    })
    return 0


def cmd_shift(args, defaults):
    sign = 1 if args.sign == '+' else -1
    factor = shifted_distance_factor(args.alpha, args.x, sign, args.order)
    _print_record({
        'exact factor': factor.exact,
        'series factor': factor.series,
        'pressure (exact)': IDEAL_PRESSURE * factor.exact,
        'pressure (series)': IDEAL_PRESSURE * factor.series,
    })
    return 0


def cmd_config(args, defaults):
    config_service = ConfigService(defaults)

    if args.clear:
        print(f"✓ {config_service.clear_defaults()}")
        return 0

    updates = dict(cutoff=args.cutoff, x=args.x, kappa=args.kappa, nu=args.nu, method=args.method,
                   threads=args.threads)
    if any(v is not None for v in updates.values()):
        message = config_service.update_defaults(**updates)
        _print_record(config_service.show_defaults())
        print(f"✓ {message}")
        return 0

    _print_record(config_service.show_defaults())
    return 0


COMMANDS = {
    'pressure': cmd_pressure,
    'fig2': cmd_fig2,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
    'bose': cmd_bose,
    'window': cmd_window,
    'shift': cmd_shift,
    'config': cmd_config,
}


def main(argv=None):
    defaults = DefaultsConfig()
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    conflict = getattr(args, 'ir_conflict', None)
    if conflict:
        logger.warning("both %s and %s given; using %s", conflict[0], conflict[1], args.ir_option)

    if args.command == 'help' or args.command is None:
        show_help()
        return 0

    try:
        return COMMANDS[args.command](args, defaults)
    except ParameterError as e:
        parser.error(str(e))
    except NumericalError as e:
        print(colorize(f"✗ {e}", Colors.RED, sys.stderr), file=sys.stderr)
        return 1
    except OSError as e:
        print(colorize(f"✗ cannot write output: {e}", Colors.RED, sys.stderr), file=sys.stderr)
        return 1


def show_help():
    help_text = f"""
{colorize('Casimir Pressure Laboratory', Colors.BOLD + Colors.CYAN)}

{colorize('Basic Usage:', Colors.BOLD + Colors.YELLOW)}
  {colorize('casimir', Colors.GREEN)} {colorize('[-v]', Colors.MAGENTA)} {colorize('[command]', Colors.BLUE)} {colorize('[options]', Colors.MAGENTA)}

{colorize('Subcommands:', Colors.BOLD + Colors.YELLOW)}
  {colorize('casimir pressure', Colors.GREEN)}                     Reduced pressure p·d⁴ of one parameter point
  {colorize('casimir fig2', Colors.GREEN)}                         IR-truncated pressure against α (CSV, optional SVG)
  {colorize('casimir sweep', Colors.GREEN)}                        Pressure over a grid of x, α or ν (CSV)
  {colorize('casimir verify', Colors.GREEN)} {colorize('[suite]', Colors.BLUE)}               Verification suites: coefficients, roots, suppression, cross-method, all
  {colorize('casimir bose', Colors.GREEN)} {colorize('<n>', Colors.BLUE)}                     Bose integral ∫ yⁿ/(e^(2πy) - 1) dy
  {colorize('casimir window', Colors.GREEN)}                       α interval where the IR-truncated force is repulsive
  {colorize('casimir shift', Colors.GREEN)} {colorize('--alpha', Colors.MAGENTA)} {colorize('<a>', Colors.BLUE)}           Pressure factor for the distance d(1 ± α/x)
  {colorize('casimir config', Colors.GREEN)}                       Show or change stored defaults

{colorize('Parameters:', Colors.BOLD + Colors.YELLOW)}
  {colorize('--cutoff', Colors.MAGENTA)} {colorize('<name>', Colors.BLUE)}       exp, exp4, tanh or none
  {colorize('--x', Colors.MAGENTA)} {colorize('<value>', Colors.BLUE)}           Reduced UV scale x = dΛ (default 50)
  {colorize('--kappa', Colors.MAGENTA)} {colorize('<value>', Colors.BLUE)}       Reduced IR truncation κ = d·k_c/π (default 0)
  {colorize('--alpha', Colors.MAGENTA)} {colorize('<value>', Colors.BLUE)}       IR truncation α = k_c·d = πκ (last of --alpha/--kappa wins)
  {colorize('--nu', Colors.MAGENTA)} {colorize('<value>', Colors.BLUE)}          Tanh smoothing width ν = dμ (default 1)
  {colorize('--method', Colors.MAGENTA)} {colorize('<name>', Colors.BLUE)}       direct, em, abel-plana or closed
  {colorize('--convention', Colors.MAGENTA)} {colorize('<name>', Colors.BLUE)}   continuum (sum from κ) or integer (sum from ceil κ)

{colorize('Methods:', Colors.BOLD + Colors.YELLOW)}
  {colorize('direct', Colors.MAGENTA)}        Compensated mode sum minus integral (exp, exp4, tanh)
  {colorize('em', Colors.MAGENTA)}            Euler-Maclaurin series at κ = 0 (exp, exp4)
  {colorize('abel-plana', Colors.MAGENTA)}    Abel-Plana quadrature (exp, tanh at κ = 0, none)
  {colorize('closed', Colors.MAGENTA)}        Closed forms (exp, none)

{colorize('Exit Codes:', Colors.BOLD + Colors.YELLOW)}
  0 success, 1 numerical failure or unwritable output, 2 invalid arguments

{colorize('Usage Examples:', Colors.BOLD + Colors.YELLOW)}
  {colorize('# Exponential cutoff, ideal-limit regime', Colors.GRAY)}
  {colorize('casimir pressure --cutoff exp --x 50 --method direct', Colors.GREEN)}

  {colorize('# IR-truncated pressure without a UV cutoff', Colors.GRAY)}
  {colorize('casimir pressure --cutoff none --alpha 1 --method closed', Colors.GREEN)}

  {colorize('# Figure data and chart', Colors.GRAY)}
  {colorize('casimir fig2 --out fig2.csv --svg fig2.svg', Colors.GREEN)}

  {colorize('# Approach to the ideal value', Colors.GRAY)}
  {colorize('casimir sweep --variable x --start 5 --stop 200 --scale log --cutoff exp --out sweep.csv', Colors.GREEN)}

  {colorize('# Run every verification suite', Colors.GRAY)}
  {colorize('casimir verify all', Colors.GREEN)}
"""
    print(help_text)
