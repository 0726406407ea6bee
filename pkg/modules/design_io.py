from __future__ import annotations

import pathlib
import re
from math import comb

import numpy as np

from modules.design import Design
from modules.exceptions import DesignError, ParseError
from modules.subsets import Subset, colex_rank, parse_subset

HEADER: re.Pattern[str] = re.compile(r'design v=([0-9]+) b=([0-9]+) p=([0-9]+)')
VALUE: re.Pattern[str] = re.compile(r'[0-9]+')


def format_design(u: Design, sparse: bool = False) -> str:
    """
    Serializes a design to the design file format.

    Args:
        u (Design): The design to write.
        sparse (bool, optional): Write one `e1,...,eb=value` line per non-zero block
            instead of the dense value list. Defaults to `False`.

    Returns:
        str: The file contents, ending in a newline.
    """
    lines: list[str] = [f'design v={u.v} b={u.b} p={u.p}']

    if sparse:
        lines.append('sparse')
        lines.extend(f'{block}={value}' for block, value in u.support())
    else:
        lines.append(' '.join(['dense', *(str(int(x)) for x in u.values)]))

    return '\n'.join(lines) + '\n'


def _read_value(text: str, p: int, where: str) -> int:
    if not VALUE.fullmatch(text):
        raise ParseError(f'{where}: "{text}" isn\'t an integer')

    value: int = int(text)

    if not 0 <= value < p:
        raise ParseError(f'{where}: value {value} is outside [0, {p})')

    return value


def _parse_header(line: str) -> tuple[int, int, int]:
    header: re.Match[str] | None = HEADER.fullmatch(line.strip())

    if not header:
        raise ParseError(f'Line 1: expected "design v=<v> b=<b> p=<p>", got "{line}"')

    v, b, p = (int(x) for x in header.groups())

    if b > v:
        raise ParseError(f'Line 1: block size {b} is larger than the ground set size {v}')

    return v, b, p


def _allocate(v: int, b: int) -> np.ndarray:
    try:
        return np.zeros(comb(v, b), dtype=np.int64)
    except (ValueError, OverflowError, MemoryError):
        raise ParseError(f'Line 1: {comb(v, b):,} blocks don\'t fit in memory') from None


def parse_design(text: str) -> Design:
    """
    Reads a design from the design file format.

    The first line is the header. After it, lines starting with `#` and blank lines
    are skipped. The next line starts with `dense` or `sparse`: dense values may run
    across any number of lines, sparse entries come one per line.

    Args:
        text (str): The file contents.

    Raises:
        ParseError: If the text doesn't follow the format.

    Returns:
        Design: The parsed design.
    """
    if not text.endswith('\n'):
        raise ParseError('Design files must end with a newline')

    lines: list[str] = text[:-1].split('\n')
    v, b, p = _parse_header(lines[0])

    body: list[tuple[int, str]] = [
        (number, line.strip())
        for number, line in enumerate(lines[1:], start=2)
        if line.strip() and not line.lstrip().startswith('#')
    ]

    if not body:
        raise ParseError('Missing "dense" or "sparse" after the header')

    number, first = body[0]
    mode, _, rest = first.partition(' ')
    values: np.ndarray

    if mode == 'dense':
        tokens: list[str] = rest.split()
        for _, line in body[1:]:
            tokens.extend(line.split())

        if len(tokens) != comb(v, b):
            raise ParseError(f'Expected {comb(v, b)} dense values, got {len(tokens)}')

        values = _allocate(v, b)

        for i, token in enumerate(tokens):
            values[i] = _read_value(token, p, f'Dense value {i + 1}')

    elif mode == 'sparse':
        if rest.strip():
            raise ParseError(f'Line {number}: unexpected text after "sparse"')

        values = _allocate(v, b)
        seen: set[int] = set()

        for number, line in body[1:]:
            block_text, equals, value_text = line.partition('=')

            if not equals:
                raise ParseError(f'Line {number}: expected "e1,...,eb=value", got "{line}"')

            try:
                block: Subset = parse_subset(block_text, v)
            except DesignError as e:
                raise ParseError(f'Line {number}: {e}') from None

            if len(block) != b:
                raise ParseError(f'Line {number}: {block} doesn\'t have {b} elements')

            r: int = colex_rank(block)

            if r in seen:
                raise ParseError(f'Line {number}: duplicate entry for {block}')

            seen.add(r)
            values[r] = _read_value(value_text.strip(), p, f'Line {number}')

    else:
        raise ParseError(f'Line {number}: expected "dense" or "sparse", got "{mode}"')

    try:
        return Design(v, b, p, values)
    except DesignError as e:
        raise ParseError(str(e)) from None


def read_header(path: pathlib.Path) -> tuple[int, int, int]:
    """
    Reads only the header line of a design file.

    Lets callers check the design's size before any values are read.

    Args:
        path (pathlib.Path): The design file.

    Raises:
        ParseError: If the file can't be read, isn't UTF-8, or has a malformed header.

    Returns:
        tuple[int, int, int]: `v`, `b` and `p`.
    """
    try:
        with path.open('rb') as handle:
            first: str = handle.readline().decode('utf-8')
    except OSError as e:
        raise ParseError(f'Can\'t read {path}: {e.strerror}') from None
    except UnicodeDecodeError as e:
        raise ParseError(f'{path} isn\'t UTF-8 text: {e.reason} at byte {e.start}') from None

    return _parse_header(first.rstrip('\n'))


def read_design(path: pathlib.Path) -> Design:
    """Reads a design file, see `parse_design`."""
    try:
        text: str = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(f'Can\'t read {path}: {e.strerror}') from None
    except UnicodeDecodeError as e:
        raise ParseError(f'{path} isn\'t UTF-8 text: {e.reason} at byte {e.start}') from None

    return parse_design(text)


def write_design(u: Design, path: pathlib.Path, sparse: bool = False) -> None:
    try:
        path.write_text(format_design(u, sparse), encoding='utf-8')
    except OSError as e:
        raise DesignError(f'Can\'t write {path}: {e.strerror}') from None
