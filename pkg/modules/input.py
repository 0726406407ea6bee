import argparse
import pathlib
from collections.abc import Sequence
from typing import Any

import modules.constants as const
from modules.utils import Font, SmartFormatter

CONSTRUCTIONS: dict[str, tuple[str, ...]] = {
    'constant': ('v', 'b', 'p'),
    'james-null': ('v', 'b', 'p'),
    'prime-power': ('a', 'beta', 'p'),
    'pointed': ('a', 'b', 'p'),
    'james-canonical': ('a', 'b', 'p'),
}


def _common_options() -> argparse.ArgumentParser:
    """Flags every subcommand accepts."""
    common: argparse.ArgumentParser = argparse.ArgumentParser(add_help=False)
    options: Any = common.add_argument_group('flags that can be used with any command')

    options.add_argument(
        '-h', '--help', '-?', action='help', default=argparse.SUPPRESS, help=argparse.SUPPRESS
    )

    options.add_argument(
        '--json',
        action='store_true',
        help='R|Write results as a JSON document instead of text.\n\n',
    )

    options.add_argument(
        '--out',
        metavar='"<FILE>"',
        type=pathlib.Path,
        help='R|Write the design file here instead of to STDOUT.\n\n',
    )

    options.add_argument(
        '--sparse',
        action='store_true',
        help=f'R|Write design files with one {Font.b}e1,...,eb=value{Font.be} line per'
        '\nnon-zero block, instead of the dense value list.'
        '\n\n',
    )

    options.add_argument(
        '--force',
        action='store_true',
        help=f'R|Run jobs with more than {Font.b}{const.MAX_BLOCKS:,}{Font.be} blocks.\n\n',
    )

    options.add_argument(
        '-q',
        '--quiet',
        action='store_true',
        help='R|Don\'t print progress messages to STDERR.\n\n',
    )

    return common


def user_input(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """
    Gets user input.

    Args:
        argv (Sequence[str], optional): The arguments to parse. When `None`, they're
          read from `sys.argv`. Defaults to `None`.

    Returns:
        argparse.Namespace: The arguments a user has provided.
    """
    common: argparse.ArgumentParser = _common_options()

    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog='pdesigns',
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        add_help=False,
    )

    parser.add_argument(
        '-h', '--help', '-?', action='help', default=argparse.SUPPRESS, help=argparse.SUPPRESS
    )

    parser.add_argument('--version', action='version', version=f'pdesigns {const.__version__}')

    commands: Any = parser.add_subparsers(dest='command', metavar='<COMMAND>', required=True)

    classify_parser: argparse.ArgumentParser = commands.add_parser(
        'classify',
        parents=[common],
        add_help=False,
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        help='Classify the partition (a, b) at the prime p.',
    )
    classify_parser.add_argument('a', type=int)
    classify_parser.add_argument('b', type=int)
    classify_parser.add_argument('p', type=int)

    construct_parser: argparse.ArgumentParser = commands.add_parser(
        'construct',
        parents=[common],
        add_help=False,
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        help='Build a design with one of the explicit constructions.',
    )
    construct_parser.add_argument('kind', choices=sorted(CONSTRUCTIONS))
    construct_parser.add_argument(
        'params',
        metavar='<PARAM>',
        type=int,
        nargs='*',
        help='R|The construction\'s numeric parameters, in order:'
        + ''.join(f'\n{kind}: {" ".join(names)}' for kind, names in CONSTRUCTIONS.items())
        + '\n\nEach can also be given with its flag below.'
        '\n\n',
    )

    construct_options: Any = construct_parser.add_argument_group('construction parameters')

    for name in ('a', 'b', 'v', 'p', 'beta'):
        construct_options.add_argument(f'--{name}', metavar=f'<{name.upper()}>', type=int)

    construct_options.add_argument(
        '--k',
        metavar='<K>',
        type=int,
        default=1,
        help=f'R|The value of a constant design. Defaults to {Font.b}1{Font.be}.\n\n',
    )

    construct_options.add_argument(
        '--x',
        metavar='"<SUBSET>"',
        type=str,
        help=f'R|The set {Font.b}X{Font.be} of a james-null design, for example {Font.b}1,2{Font.be}.'
        f'\nDefaults to {Font.b}1,...,b{Font.be}.'
        '\n\n',
    )

    construct_options.add_argument(
        '--y',
        metavar='"<SUBSET>"',
        type=str,
        help=f'R|The set {Font.b}Y{Font.be} of a james-null design. Defaults to'
        f'\n{Font.b}b+1,...,2b{Font.be}.'
        '\n\n',
    )

    construct_options.add_argument(
        '--map',
        metavar='"<PAIRS>"',
        type=str,
        help=f'R|The bijection from {Font.b}X{Font.be} to {Font.b}Y{Font.be} of a james-null design, for'
        f'\nexample {Font.b}1:3,2:4{Font.be}. Defaults to pairing the elements in order.'
        '\n\n',
    )

    verify_parser: argparse.ArgumentParser = commands.add_parser(
        'verify',
        parents=[common],
        add_help=False,
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        help='Check a design file for universality.',
    )
    verify_parser.add_argument('file', metavar='"<FILE>"', type=pathlib.Path)
    verify_parser.add_argument(
        '--level',
        metavar='<J>',
        type=int,
        help='R|Only check level j.\n\n',
    )

    solve_parser: argparse.ArgumentParser = commands.add_parser(
        'solve',
        parents=[common],
        add_help=False,
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        help='Find a design with the given spectrum.',
    )
    solve_parser.add_argument('v', type=int)
    solve_parser.add_argument('b', type=int)
    solve_parser.add_argument('p', type=int)
    solve_parser.add_argument('mu', metavar='<MU>', type=int, nargs='*')

    space_parser: argparse.ArgumentParser = commands.add_parser(
        'space',
        parents=[common],
        add_help=False,
        allow_abbrev=False,
        formatter_class=SmartFormatter,
        help='List a basis of the spectra of universal designs for (a, b).',
    )
    space_parser.add_argument('a', type=int)
    space_parser.add_argument('b', type=int)
    space_parser.add_argument('p', type=int)

    args: argparse.Namespace = parser.parse_args(argv)

    # Handle incompatible arguments
    if args.command == 'construct':
        names: tuple[str, ...] = CONSTRUCTIONS[args.kind]

        if args.params and len(args.params) != len(names):
            construct_parser.error(
                f'{args.kind} takes {len(names)} parameters ({" ".join(names)}), '
                f'got {len(args.params)}'
            )

        for name, value in zip(names, args.params, strict=False):
            flagged: int | None = getattr(args, name)

            if flagged is not None and flagged != value:
                construct_parser.error(f'--{name} {flagged} conflicts with the parameter {value}')

            setattr(args, name, value)

        missing: list[str] = [f'--{name}' for name in names if getattr(args, name) is None]

        if missing:
            construct_parser.error(f'{args.kind} needs {", ".join(missing)}')

    if args.command == 'solve' and len(args.mu) != args.b:
        solve_parser.error(
            f'Expected {args.b} coefficients mu_0 ... mu_{args.b - 1}, got {len(args.mu)}'
        )

    return args
