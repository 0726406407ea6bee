from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from math import comb

import numpy as np

from modules.exceptions import DesignError, ParseError
from modules.padic import check_prime


@dataclass(frozen=True)
class Subset:
    """A subset of `[v] = {1, ..., v}`, kept as its ascending elements."""

    elements: tuple[int, ...]
    v: int

    def __post_init__(self) -> None:
        if any(x >= y for x, y in itertools.pairwise(self.elements)):
            raise DesignError(f'Subset elements must be strictly increasing, got {self.elements}')

        if self.elements and not 1 <= self.elements[0] <= self.elements[-1] <= self.v:
            raise DesignError(f'Subset {self.elements} doesn\'t lie inside [{self.v}]')

    @classmethod
    def of(cls, elements: Iterable[int], v: int) -> Subset:
        """Builds a subset from elements in any order, rejecting repeats."""
        items: list[int] = list(elements)

        if len(set(items)) != len(items):
            raise DesignError(f'Subset elements must be distinct, got {items}')

        return cls(tuple(sorted(items)), v)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __str__(self) -> str:
        return ','.join(str(x) for x in self.elements)


@dataclass(frozen=True)
class InclusionMatrix:
    """
    The 0/1 matrix `A_i^b(v)`: rows are the `i`-subsets of `[v]`, columns the
    `b`-subsets, both in colex order, with a 1 where the row subset is contained in the
    column subset.
    """

    i: int
    b: int
    v: int
    p: int
    entries: np.ndarray


def parse_subset(text: str, v: int) -> Subset:
    """
    Reads the textual form of a subset, for example `1,3,4`.

    Args:
        text (str): Comma separated integers. An empty string is the empty set.
        v (int): The size of the ground set.

    Returns:
        Subset: The parsed subset.
    """
    text = text.strip()

    if not text:
        return Subset((), v)

    parts: list[str] = [x.strip() for x in text.split(',')]

    if not all(x.isascii() and x.isdigit() for x in parts):
        raise ParseError(f'Can\'t read "{text}" as a comma separated list of integers')

    elements: list[int] = [int(x) for x in parts]

    if any(x >= y for x, y in itertools.pairwise(elements)):
        raise ParseError(f'Subset elements must be ascending and distinct, got "{text}"')

    return Subset(tuple(elements), v)


def colex_rank(s: Subset) -> int:
    """
    The position of `s` among the subsets of its size in colex order.

    Args:
        s (Subset): The subset `{s_1 < ... < s_k}`.

    Returns:
        int: `C(s_1 - 1, 1) + ... + C(s_k - 1, k)`.
    """
    return sum(comb(x - 1, i) for i, x in enumerate(s.elements, start=1))


def colex_unrank(r: int, k: int, v: int) -> Subset:
    """
    The `k`-subset of `[v]` at position `r` in colex order.

    Args:
        r (int): The rank, in `[0, C(v, k))`.
        k (int): The subset size.
        v (int): The size of the ground set.

    Returns:
        Subset: The subset with `colex_rank(subset) == r`.
    """
    if not 0 <= k <= v:
        raise DesignError(f'There are no {k}-subsets of [{v}]')

    if not 0 <= r < comb(v, k):
        raise DesignError(f'Rank {r} is out of range for {k}-subsets of [{v}]')

    elements: list[int] = []

    for i in range(k, 0, -1):
        # Largest c with C(c, i) <= r
        c: int = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        elements.append(c + 1)
        r -= comb(c, i)

    return Subset(tuple(reversed(elements)), v)


@functools.lru_cache(maxsize=None)
def blocks(v: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All `k`-subsets of `[v]` as tuples, in colex order."""
    if not 0 <= k <= v:
        raise DesignError(f'There are no {k}-subsets of [{v}]')

    return tuple(sorted(itertools.combinations(range(1, v + 1), k), key=lambda s: s[::-1]))


@functools.lru_cache(maxsize=None)
def block_array(v: int, k: int) -> np.ndarray:
    """The rows of `blocks(v, k)` as a read-only `(C(v, k), k)` array."""
    array: np.ndarray = np.array(blocks(v, k), dtype=np.int64).reshape(comb(v, k), k)
    array.flags.writeable = False

    return array


@functools.lru_cache(maxsize=None)
def _binomial_table(n: int) -> np.ndarray:
    return np.array([[comb(i, j) for j in range(n + 2)] for i in range(n + 1)], dtype=np.int64)


def ranks(rows: np.ndarray, v: int) -> np.ndarray:
    """
    Colex ranks of many subsets at once.

    Args:
        rows (np.ndarray): A `(n, k)` array, each row an ascending subset of `[v]`.
        v (int): The size of the ground set.

    Returns:
        np.ndarray: The `n` ranks.
    """
    table: np.ndarray = _binomial_table(v)
    result: np.ndarray = np.zeros(rows.shape[0], dtype=np.int64)

    for i in range(rows.shape[1]):
        result += table[rows[:, i] - 1, i + 1]

    return result


@functools.lru_cache(maxsize=None)
def subset_index_table(v: int, b: int, j: int) -> np.ndarray:
    """
    For each `b`-subset of `[v]`, the colex ranks of its `j`-subsets.

    Returns:
        np.ndarray: A `(C(v, b), C(b, j))` array.
    """
    block_rows: np.ndarray = block_array(v, b)
    columns: list[np.ndarray] = [
        ranks(block_rows[:, list(positions)], v)
        for positions in itertools.combinations(range(b), j)
    ]
    table: np.ndarray = np.stack(columns, axis=1)
    table.flags.writeable = False

    return table


@functools.lru_cache(maxsize=None)
def superset_index_table(v: int, b: int, j: int) -> np.ndarray:
    """
    For each `j`-subset of `[v]`, the colex ranks of the `b`-subsets containing it.

    Returns:
        np.ndarray: A `(C(v, j), C(v - j, b - j))` array.
    """
    sub: np.ndarray = subset_index_table(v, b, j)
    owners: np.ndarray = np.repeat(np.arange(sub.shape[0], dtype=np.int64), sub.shape[1])

    # Every j-subset has exactly C(v - j, b - j) supersets, so the sorted owners reshape
    order: np.ndarray = np.argsort(sub.ravel(), kind='stable')
    table: np.ndarray = owners[order].reshape(comb(v, j), comb(v - j, b - j))
    table.flags.writeable = False

    return table


def _check_levels(i: int, b: int, v: int) -> None:
    if not 0 <= i <= b <= v:
        raise DesignError(f'Inclusion levels need 0 <= i <= b <= v, got i={i}, b={b}, v={v}')


def inclusion_matrix(i: int, b: int, v: int, p: int) -> InclusionMatrix:
    """
    Materializes `A_i^b(v)`.

    Args:
        i (int): The row level.
        b (int): The column level.
        v (int): The size of the ground set.
        p (int): The prime the matrix is read over.

    Returns:
        InclusionMatrix: The matrix, rows and columns in colex order.
    """
    check_prime(p)
    _check_levels(i, b, v)

    sub: np.ndarray = subset_index_table(v, b, i)
    entries: np.ndarray = np.zeros((comb(v, i), comb(v, b)), dtype=np.int64)
    entries[sub, np.arange(sub.shape[0])[:, None]] = 1

    return InclusionMatrix(i, b, v, p, entries)


def inclusion_apply(values: np.ndarray, j: int, v: int, p: int, *, b: int) -> np.ndarray:
    """
    Computes `A_j^b(v) @ values` over `F_p` without building the matrix.

    Args:
        values (np.ndarray): A vector indexed by the `b`-subsets of `[v]` in colex order.
        j (int): The level to induce to.
        v (int): The size of the ground set.
        p (int): The prime.
        b (int): The level of `values`.

    Returns:
        np.ndarray: The vector `Z -> sum of values[Y] over Y containing Z`, indexed by
        the `j`-subsets of `[v]`.
    """
    check_prime(p)
    _check_levels(j, b, v)

    values = np.asarray(values, dtype=np.int64)

    if values.shape != (comb(v, b),):
        raise DesignError(
            f'Expected {comb(v, b)} values for {b}-subsets of [{v}], got shape {values.shape}'
        )

    # Sum over supersets when each row is short, otherwise scatter each block's value
    # into its subsets. Both give the same vector.
    if comb(v - j, b - j) <= comb(b, j):
        result: np.ndarray = values[superset_index_table(v, b, j)].sum(axis=1)
    else:
        sub: np.ndarray = subset_index_table(v, b, j)
        result = np.zeros(comb(v, j), dtype=np.int64)
        np.add.at(result, sub, np.broadcast_to(values[:, None], sub.shape))

    return result % p
