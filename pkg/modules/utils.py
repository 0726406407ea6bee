import argparse
import pathlib
import sys
import textwrap
from typing import Any


class Config:
    def __init__(
        self,
        args: argparse.Namespace,
        json_output: bool,
        sparse: bool,
        force: bool,
        quiet: bool,
        max_blocks: int,
        out: pathlib.Path | None = None,
    ) -> None:
        """
        Creates an object that contains internal config data.

        Args:
            args (argparse.Namespace): The arguments passed in by the user.
            json_output (bool): Whether results are written as JSON documents instead of
              text.
            sparse (bool): Whether design files are written in the sparse format.
            force (bool): Whether to run jobs with more blocks than `max_blocks`.
            quiet (bool): Whether to suppress progress messages on STDERR.
            max_blocks (int): The largest number of blocks a job can have without
              `force`.
            out (pathlib.Path, optional): The design file to write. When `None`, the
              design is written to STDOUT. Defaults to `None`.
        """
        self.args = args
        self.json_output = json_output
        self.sparse = sparse
        self.force = force
        self.quiet = quiet
        self.max_blocks = max_blocks
        self.out = out


def eprint(
    text: str = '',
    wrap: bool = True,
    level: str = '',
    indent: int = 2,
    overwrite: bool = False,
    **kwargs: Any,
) -> None:
    """
    Prints to STDERR.

    Args:
        text (str, optional): The content to print. Defaults to `''`.
        wrap (bool, optional): Whether to wrap text. Defaults to `True`.
        level (str, optional): How the text is formatted. Valid values are `warning` and
          `error`. Defaults to `''`.
        indent (int, optional): After the first line, how many spaces to indent whenever
          a text wraps to a new line. Defaults to `2`.
        overwrite (bool, optional): Delete the previous line and replace it with this one.
          Defaults to `False`.
        **kwargs: Any other keyword arguments to pass to the `print` function.
    """
    indent_str: str = ''
    new_line: str = ''
    overwrite_str: str = ''

    if text:
        indent_str = ' '

    if overwrite:
        overwrite_str = Font.overwrite

    if level == 'warning':
        color = Font.warning
    elif level == 'error':
        color = Font.error
        new_line = '\n'
    else:
        color = Font.end

    message: str = f'{overwrite_str}{color}{text}{Font.end}'

    if wrap:
        print(  # noqa: T201
            f'{new_line}{textwrap.TextWrapper(width=95, subsequent_indent=indent_str*indent, replace_whitespace=False, break_long_words=False, break_on_hyphens=False).fill(message)}',
            file=sys.stderr,
            **kwargs,
        )
    else:
        print(message, file=sys.stderr, **kwargs)  # noqa: T201


def progress(config: Config, text: str, done: bool = False) -> None:
    """
    Prints a progress line to STDERR, unless the user asked for quiet output.

    Args:
        config (Config): The pdesigns config object.
        text (str): The message, for example `• Solving 562 x 467 system over F_2...`.
        done (bool, optional): Replace the previous progress line with `text` and
          ` done.`. Defaults to `False`.
    """
    if config.quiet:
        return

    if done:
        eprint(f'{text} done.', overwrite=True, wrap=False)
    else:
        eprint(text, wrap=False)


class Font:
    """Console text formatting."""

    warning: str = '\033[0m\033[93m'
    error: str = '\033[0m\033[91m'
    bold: str = '\033[1m'
    bold_end: str = '\033[22m'
    end: str = '\033[0m'

    b: str = bold
    be: str = bold_end
    overwrite: str = '\033M\033[2K'


class SmartFormatter(argparse.HelpFormatter):
    """
    Text formatter for argparse that respects new lines.

    From https://stackoverflow.com/questions/3853722/how-to-insert-newlines-on-argparse-help-text
    """

    def _split_lines(self, text: str, width: int) -> list[Any]:
        if text.startswith('R|'):
            return text[2:].splitlines()
        return argparse.HelpFormatter._split_lines(self, text, width)
