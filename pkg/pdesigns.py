#!/usr/bin/env python

"""
pdesigns constructs, verifies, solves for and classifies universal p-ary designs of
constant block size, with exact linear algebra over the prime field.
"""
import argparse
import json
import sys
from collections.abc import Sequence
from math import comb
from typing import Any

import modules.constants as const
from modules.classify import ClassifyReport, classify_report, coefficient_space
from modules.construct import (
    constant_design,
    james_canonical_spectrum,
    james_null,
    pointed_design,
    prime_power_design,
    solve_design,
)
from modules.design import Design, Spectrum, level_coefficient, spectrum
from modules.design_io import format_design, read_design, read_header, write_design
from modules.exceptions import ConstructionError, DesignError, ParseError
from modules.input import user_input
from modules.padic import check_prime
from modules.partition import TwoPartPartition
from modules.subsets import Subset, parse_subset
from modules.utils import Config, Font, eprint, progress

# Require at least Python 3.10.
try:
    assert sys.version_info >= (3, 10)
except Exception:
    eprint(
        f'You need Python 3.10 or higher to run pdesigns. You are running Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}',
        level='error',
    )
    sys.exit(2)


def check_size(config: Config, v: int, b: int) -> None:
    """
    Refuses jobs with more blocks than the config allows, unless forced.

    Args:
        config (Config): The pdesigns config object.
        v (int): The size of the ground set.
        b (int): The block size.
    """
    if not 0 <= b <= v:
        raise DesignError(f'Block size {b} doesn\'t fit a ground set of size {v}')

    if comb(v, b) > config.max_blocks:
        if not config.force:
            raise DesignError(
                f'{comb(v, b):,} blocks is more than {config.max_blocks:,}. Use '
                f'{Font.b}--force{Font.be} to run it anyway.'
            )

        eprint(
            f'Running with {comb(v, b):,} blocks, more than {config.max_blocks:,}. This can take '
            'a long time.',
            level='warning',
        )


def emit(config: Config, lines: list[str], document: dict[str, Any]) -> None:
    """Prints a result to STDOUT, as text or as a JSON document."""
    if config.json_output:
        print(json.dumps(document, indent=2, ensure_ascii=False))  # noqa: T201
    else:
        for line in lines:
            print(line)  # noqa: T201


def spectrum_list(mu: Spectrum) -> list[int | None]:
    return list(mu.coeffs)


def output_design(config: Config, u: Design, document: dict[str, Any]) -> None:
    """
    Writes a design to the `--out` file or STDOUT, along with its spectrum.

    Without `--out` the design file takes STDOUT, so the spectrum goes to STDERR.
    """
    mu: Spectrum = spectrum(u)
    text: str = format_design(u, config.sparse)

    document |= {
        'v': u.v,
        'b': u.b,
        'p': u.p,
        'spectrum': spectrum_list(mu),
        'universal': mu.defined,
        'out': None if config.out is None else str(config.out),
    }

    if config.out is not None:
        write_design(u, config.out, config.sparse)
        progress(config, f'• Wrote {config.out}')

        document['design'] = None
        emit(config, [f'spectrum: {mu}'], document)
    elif config.json_output:
        document['design'] = text
        emit(config, [], document)
    else:
        print(text, end='')  # noqa: T201
        eprint(f'spectrum: {mu}', wrap=False)


def run_classify(config: Config) -> int:
    args: argparse.Namespace = config.args
    report: ClassifyReport = classify_report(args.a, args.b, args.p)

    emit(config, report.lines(), report.to_dict())

    return 0


def _read_map(text: str) -> dict[int, int]:
    pairs: dict[int, int] = {}

    for pair in text.split(','):
        source, colon, target = pair.partition(':')

        try:
            pairs[int(source)] = int(target)
        except ValueError:
            raise ParseError(f'Can\'t read "{pair}" as a pair x:y in --map') from None

        if not colon:
            raise ParseError(f'Can\'t read "{pair}" as a pair x:y in --map')

    if len(pairs) != len(text.split(',')):
        raise ParseError(f'--map "{text}" lists an element of X twice')

    return pairs


def run_construct(config: Config) -> int:
    args: argparse.Namespace = config.args
    kind: str = args.kind
    u: Design

    if kind == 'constant':
        check_size(config, args.v, args.b)
        u = constant_design(args.v, args.b, args.p, args.k)

    elif kind == 'james-null':
        check_size(config, args.v, args.b)
        x: Subset = (
            parse_subset(args.x, args.v)
            if args.x
            else Subset(tuple(range(1, args.b + 1)), args.v)
        )
        y: Subset = (
            parse_subset(args.y, args.v)
            if args.y
            else Subset(tuple(range(args.b + 1, 2 * args.b + 1)), args.v)
        )
        f: dict[int, int] = (
            _read_map(args.map) if args.map else dict(zip(x, y, strict=False))
        )
        u = james_null(args.v, args.b, x, y, f, args.p)

    elif kind == 'prime-power':
        check_prime(args.p)

        if args.beta < 1:
            raise DesignError(f'The exponent must be at least 1, got {args.beta}')

        check_size(config, args.a + args.p**args.beta, args.p**args.beta)
        u = prime_power_design(args.a, args.beta, args.p)

    elif kind == 'pointed':
        check_size(config, args.a + args.b, args.b)
        progress(config, f'• Building the pointed design for ({args.a}, {args.b})...')
        u = pointed_design(args.a, args.b, args.p)
        progress(config, f'• Building the pointed design for ({args.a}, {args.b})...', done=True)

    else:
        check_size(config, args.a + args.b, args.b)
        target: Spectrum = james_canonical_spectrum(args.a, args.b, args.p)
        realized: Design | None = solve_design(args.a + args.b, args.b, args.p, target)

        if realized is None:
            raise ConstructionError(f'No design has the canonical spectrum {target}')

        u = realized

    output_design(config, u, {'kind': kind})

    return 0


def run_verify(config: Config) -> int:
    args: argparse.Namespace = config.args
    v, b, _ = read_header(args.file)
    check_size(config, v, b)

    u: Design = read_design(args.file)

    if args.level is not None:
        mu_j: int | None = level_coefficient(u, args.level)
        shown: str = 'non-constant' if mu_j is None else str(mu_j)

        emit(
            config,
            [f'level {args.level}: {shown}'],
            {'v': u.v, 'b': u.b, 'p': u.p, 'level': args.level, 'coefficient': mu_j},
        )

        return 0 if mu_j is not None else 1

    mu: Spectrum = spectrum(u)
    failing: list[int] = [j for j, coefficient in enumerate(mu.coeffs) if coefficient is None]

    emit(
        config,
        [f'spectrum: {mu}', 'universal' if mu.defined else 'not universal'],
        {
            'v': u.v,
            'b': u.b,
            'p': u.p,
            'spectrum': spectrum_list(mu),
            'universal': mu.defined,
            'null': mu.null,
            'non_constant_levels': failing,
        },
    )

    if failing:
        eprint(
            f'The design isn\'t universal: level {", ".join(str(j) for j in failing)} '
            'isn\'t constant.',
            level='error',
            wrap=False,
        )
        return 1

    return 0


def run_solve(config: Config) -> int:
    args: argparse.Namespace = config.args
    check_prime(args.p)
    check_size(config, args.v, args.b)

    target: Spectrum = Spectrum(tuple(mu % args.p for mu in args.mu), args.p)
    rows: int = sum(comb(args.v, j) for j in range(args.b))
    message: str = f'• Solving {rows} x {comb(args.v, args.b)} system over F_{args.p}...'

    progress(config, message)
    u: Design | None = solve_design(args.v, args.b, args.p, target)
    progress(config, message, done=True)

    if u is None:
        emit(
            config,
            ['infeasible'],
            {
                'v': args.v,
                'b': args.b,
                'p': args.p,
                'target': list(target.coeffs),
                'feasible': False,
            },
        )
        return 1

    output_design(config, u, {'target': list(target.coeffs), 'feasible': True})

    return 0


def run_space(config: Config) -> int:
    args: argparse.Namespace = config.args
    TwoPartPartition(args.a, args.b)
    check_size(config, args.a + args.b, args.b)

    v: int = args.a + args.b
    rows: int = sum(comb(v, j) for j in range(args.b))
    message: str = f'• Solving {rows} x {comb(v, args.b) + args.b} system over F_{args.p}...'

    progress(config, message)
    basis: tuple[Spectrum, ...] = coefficient_space(v, args.b, args.p)
    progress(config, message, done=True)

    emit(
        config,
        [f'dim={len(basis)}', *(str(mu) for mu in basis)],
        {
            'a': args.a,
            'b': args.b,
            'p': args.p,
            'dim': len(basis),
            'basis': [spectrum_list(mu) for mu in basis],
        },
    )

    return 0


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs a pdesigns command.

    Args:
        argv (Sequence[str], optional): The command line, without the program name.
          When `None`, it's read from `sys.argv`. Defaults to `None`.

    Returns:
        int: `0` on success, `1` for a negative result such as a non-universal design or
        an infeasible spectrum, `2` for bad arguments or input files.
    """
    try:
        args: argparse.Namespace = user_input(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    config: Config = Config(
        args=args,
        json_output=args.json,
        sparse=args.sparse,
        force=args.force,
        quiet=args.quiet,
        max_blocks=const.MAX_BLOCKS,
        out=args.out,
    )

    commands = {
        'classify': run_classify,
        'construct': run_construct,
        'verify': run_verify,
        'solve': run_solve,
        'space': run_space,
    }

    try:
        return commands[args.command](config)
    except DesignError as e:
        eprint(str(e), level='error', wrap=False)
        return 2


if __name__ == '__main__':
    sys.exit(main())
