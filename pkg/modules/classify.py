from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Any

import numpy as np

from modules.construct import constant_design, james_canonical_spectrum
from modules.design import Design, Spectrum, spectrum, subtract
from modules.exceptions import DesignError
from modules.fplinalg import FpMatrix, nullspace, rref
from modules.padic import binom_mod, check_prime, digit, p_length
from modules.partition import (
    PartitionClass,
    TwoPartPartition,
    classify,
    decompose,
)
from modules.subsets import inclusion_matrix


@dataclass(frozen=True)
class SupportPoset:
    """
    The levels a universal design of a partition can be non-null at, ordered by
    `i >= j` when `i > j` and `C(b-j, i-j) != 0 mod p`.
    """

    elements: tuple[int, ...]
    relation: frozenset[tuple[int, int]]
    components: tuple[tuple[int, ...], ...]


def _components(
    elements: tuple[int, ...], relation: frozenset[tuple[int, int]]
) -> tuple[tuple[int, ...], ...]:
    neighbors: dict[int, set[int]] = {x: set() for x in elements}

    for i, j in relation:
        neighbors[i].add(j)
        neighbors[j].add(i)

    seen: set[int] = set()
    found: list[tuple[int, ...]] = []

    for start in elements:
        if start in seen:
            continue

        component: set[int] = {start}
        stack: list[int] = [start]

        while stack:
            for other in neighbors[stack.pop()] - component:
                component.add(other)
                stack.append(other)

        seen |= component
        found.append(tuple(sorted(component)))

    return tuple(found)


def support_poset(a: int, b: int, p: int) -> SupportPoset:
    """
    Builds the support poset of `(a, b)` at `p`.

    Level `j` belongs when `(b-j)_m + a_m < p` for every digit position `m < l_p(b)`.

    Args:
        a (int): The larger part.
        b (int): The smaller part.
        p (int): The prime.

    Returns:
        SupportPoset: The levels, their comparabilities and the connected components of
        the comparability graph.
    """
    TwoPartPartition(a, b)
    check_prime(p)

    length: int = p_length(b, p)
    elements: tuple[int, ...] = tuple(
        j
        for j in range(b)
        if all(digit(b - j, m, p) + digit(a, m, p) < p for m in range(length))
    )
    relation: frozenset[tuple[int, int]] = frozenset(
        (i, j) for i in elements for j in elements if i > j and binom_mod(b - j, i - j, p)
    )

    return SupportPoset(elements, relation, _components(elements, relation))


def predicted_component_count(a: int, b: int, p: int) -> int:
    """Two components for a pointed partition, one otherwise."""
    return 2 if classify(TwoPartPartition(a, b), p).is_pointed else 1


def coefficient_space(v: int, b: int, p: int) -> tuple[Spectrum, ...]:
    """
    A basis of the spectra achieved by universal designs on `b`-subsets of `[v]`.

    The unknowns are the design values followed by one coefficient per level. Each
    level `j` adds the rows `[A_j^b | -e_j]`, so the nullspace holds exactly the
    universal designs paired with their spectra. Its projection onto the coefficients
    is reduced to row echelon form.

    Args:
        v (int): The size of the ground set, with `v - b >= b`.
        b (int): The block size.
        p (int): The prime.

    Returns:
        tuple[Spectrum, ...]: The non-zero rows of the reduced projection.
    """
    TwoPartPartition(v - b, b)
    check_prime(p)

    blocks_count: int = comb(v, b)
    level_rows: list[np.ndarray] = []

    for j in range(b):
        coefficient: np.ndarray = np.zeros((comb(v, j), b), dtype=np.int64)
        coefficient[:, j] = p - 1
        level_rows.append(np.hstack([inclusion_matrix(j, b, v, p).entries, coefficient]))

    kernel: tuple[np.ndarray, ...] = nullspace(FpMatrix(np.vstack(level_rows), p))

    if not kernel:
        return ()

    projected: FpMatrix = FpMatrix(np.stack([x[blocks_count:] for x in kernel]), p)
    reduced, dimension, _ = rref(projected)

    return tuple(
        Spectrum(tuple(int(mu) for mu in reduced.entries[r]), p) for r in range(dimension)
    )


@dataclass(frozen=True)
class ClassifyReport:
    partition: TwoPartPartition
    p: int
    partition_class: PartitionClass
    poset: SupportPoset
    dimension: int
    canonical: Spectrum | None = None

    def lines(self) -> list[str]:
        """The report as text, one summary line plus the canonical spectrum for James."""
        elements: str = ','.join(str(j) for j in self.poset.elements)
        lines: list[str] = [
            f'{self.partition_class}; X={{{elements}}}; '
            f'components={len(self.poset.components)}; dim={self.dimension}'
        ]

        if self.canonical is not None:
            lines.append(f'canonical spectrum: {self.canonical}')

        return lines

    def to_dict(self) -> dict[str, Any]:
        return {
            'a': self.partition.a,
            'b': self.partition.b,
            'p': self.p,
            'class': self.partition_class.kind.value,
            'b_hat': self.partition_class.b_hat,
            'X': list(self.poset.elements),
            'relation': sorted([i, j] for i, j in self.poset.relation),
            'components': [list(c) for c in self.poset.components],
            'dim': self.dimension,
            'canonical_spectrum': (
                None if self.canonical is None else list(self.canonical.coeffs)
            ),
        }


def classify_report(a: int, b: int, p: int) -> ClassifyReport:
    """
    Bundles everything known about `(a, b)` at `p` without building any design.

    Args:
        a (int): The larger part.
        b (int): The smaller part.
        p (int): The prime.

    Returns:
        ClassifyReport: The class, support poset and predicted coefficient space
        dimension, plus the canonical spectrum when the partition is James.
    """
    partition: TwoPartPartition = TwoPartPartition(a, b)
    partition_class: PartitionClass = classify(partition, p)

    return ClassifyReport(
        partition=partition,
        p=p,
        partition_class=partition_class,
        poset=support_poset(a, b, p),
        dimension=2 if partition_class.is_pointed else 1,
        canonical=james_canonical_spectrum(a, b, p) if partition_class.is_james else None,
    )


def pointed_split(u: Design, a: int, b: int, p: int) -> tuple[Design, Design]:
    """
    Splits a universal design of a pointed partition into `u' + c`.

    Args:
        u (Design): A universal design on `b`-subsets of `[a + b]` over `F_p`.
        a (int): The larger part.
        b (int): The smaller part.
        p (int): The prime.

    Raises:
        DesignError: If the partition isn't pointed, `u` has the wrong shape or isn't
            universal.

    Returns:
        tuple[Design, Design]: `u'`, non-null at level `b_hat` only, and `c`, a
        constant design.
    """
    partition_class: PartitionClass = classify(TwoPartPartition(a, b), p)

    if not partition_class.is_pointed:
        raise DesignError(f'({a}, {b}) is {partition_class} at p={p}, not pointed')

    if u.shape != (a + b, b, p):
        raise DesignError(f'Expected a design of shape {(a + b, b, p)}, got {u.shape}')

    mu: Spectrum = spectrum(u)

    if not mu.defined:
        raise DesignError(f'The design isn\'t universal, its spectrum is {mu}')

    b_hat: int = decompose(b, p).b_hat
    gamma: list[int] = [binom_mod(a + b - j, b - j, p) for j in range(b)]
    anchor: int | None = next((j for j, g in enumerate(gamma) if g and j != b_hat), None)

    k: int = 0
    if anchor is not None:
        k = int(mu.coeffs[anchor]) * pow(gamma[anchor], -1, p) % p  # type: ignore[arg-type]

    c: Design = constant_design(a + b, b, p, k)
    rest: Design = subtract(u, c)
    remainder: Spectrum = spectrum(rest)

    if not set(remainder.support) <= {b_hat}:
        raise DesignError(
            f'The design doesn\'t split: after removing {k} times the constant design '
            f'the spectrum is {remainder}'
        )

    return rest, c
