import pathlib

import pytest

from modules.construct import james_null, prime_power_design
from modules.design import Design, zero_design
from modules.design_io import format_design, parse_design, read_design, read_header, write_design
from modules.exceptions import DesignError, ParseError
from modules.subsets import Subset


def sample_null() -> Design:
    return james_null(4, 2, Subset((1, 2), 4), Subset((3, 4), 4), {1: 3, 2: 4}, 3)


def test_dense_format() -> None:
    assert format_design(sample_null()) == 'design v=4 b=2 p=3\ndense 1 0 2 2 0 1\n'


def test_sparse_format() -> None:
    assert format_design(sample_null(), sparse=True) == (
        'design v=4 b=2 p=3\nsparse\n1,2=1\n2,3=2\n1,4=2\n3,4=1\n'
    )


@pytest.mark.parametrize('sparse', [False, True])
@pytest.mark.parametrize(
    'u', [sample_null(), prime_power_design(5, 2, 2), zero_design(5, 0, 2), zero_design(6, 3, 5)]
)
def test_format_then_parse(u: Design, sparse: bool) -> None:
    assert parse_design(format_design(u, sparse)) == u


def test_comments_blank_lines_and_wrapped_values() -> None:
    text = 'design v=4 b=2 p=3\n# a comment\n\ndense 1 0 2\n  # another\n2 0 1\n'

    assert parse_design(text) == sample_null()


def test_sparse_entries_in_any_order() -> None:
    text = 'design v=4 b=2 p=3\nsparse\n3,4=1\n1,4=2\n# skipped\n2,3=2\n1,2=1\n'

    assert parse_design(text) == sample_null()


@pytest.mark.parametrize(
    'text',
    [
        'design v=4 b=2 p=3\ndense 1 0 1 0 2 1',
        'design v=4 b=2\ndense 1 0 1 0 2 1\n',
        '# comment first\ndesign v=4 b=2 p=3\ndense 1 0 1 0 2 1\n',
        'design v=4 b=2 p=3\n',
        'design v=4 b=2 p=3\ndense 1 0 1 0 2\n',
        'design v=4 b=2 p=3\ndense 1 0 1 0 2 3\n',
        'design v=4 b=2 p=3\ndense 1 0 1 0 x 1\n',
        'design v=4 b=2 p=3\nlist 1 0 1 0 2 1\n',
        'design v=4 b=2 p=3\nsparse\n1,2=1\n2,1=1\n',
        'design v=4 b=2 p=3\nsparse\n1,2=1\n1,2=2\n',
        'design v=4 b=2 p=3\nsparse\n1,2,3=1\n',
        'design v=4 b=2 p=3\nsparse\n1,5=1\n',
        'design v=4 b=2 p=3\nsparse\n1,2\n',
        'design v=4 b=2 p=4\ndense 1 0 1 0 2 1\n',
        'design v=2 b=4 p=3\ndense\n',
        'design v=4 b=2 p=3\ndense 1 0 +1 0 2 1\n',
        'design v=4 b=2 p=3\ndense 1 0 1_0 0 2 1\n',
        'design v=4 b=2 p=3\ndense 1 0 \u0661 0 2 1\n',
        'design v=\u0664 b=2 p=3\ndense 1 0 1 0 2 1\n',
        'design v=4 b=2 p=3\nsparse\n1,2=+1\n',
        'design v=200 b=100 p=2\nsparse\n',
    ],
)
def test_parse_rejects(text: str) -> None:
    with pytest.raises(ParseError):
        parse_design(text)


def test_write_then_read(tmp_path: pathlib.Path) -> None:
    path = tmp_path / 'null.design'
    write_design(sample_null(), path, sparse=True)

    assert read_design(path) == sample_null()


def test_read_missing_file(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ParseError):
        read_design(tmp_path / 'missing.design')


def test_write_to_missing_folder(tmp_path: pathlib.Path) -> None:
    with pytest.raises(DesignError):
        write_design(sample_null(), tmp_path / 'missing' / 'null.design')


def test_read_header_leaves_the_values_unread(tmp_path: pathlib.Path) -> None:
    path = tmp_path / 'huge.design'
    path.write_text('design v=200 b=100 p=2\nsparse\n1,2=1\n', encoding='utf-8')

    assert read_header(path) == (200, 100, 2)

    with pytest.raises(ParseError):
        read_design(path)


@pytest.mark.parametrize(
    'text', ['', 'design v=4 b=2\n', 'design v=2 b=4 p=3\nsparse\n', 'design v=\u0664 b=2 p=3\n']
)
def test_read_header_rejects(tmp_path: pathlib.Path, text: str) -> None:
    path = tmp_path / 'bad.design'
    path.write_text(text, encoding='utf-8')

    with pytest.raises(ParseError):
        read_header(path)


def test_non_utf8_file(tmp_path: pathlib.Path) -> None:
    path = tmp_path / 'latin1.design'
    path.write_bytes(b'design v=4 b=2 p=3\n# caf\xe9\ndense 1 0 2 2 0 1\n')

    assert read_header(path) == (4, 2, 3)

    with pytest.raises(ParseError, match='UTF-8'):
        read_design(path)

    path.write_bytes(b'design v=4 b=2 p=\xe9\n')

    with pytest.raises(ParseError, match='UTF-8'):
        read_header(path)

    with pytest.raises(ParseError):
        read_header(tmp_path / 'missing.design')
