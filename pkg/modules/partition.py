from __future__ import annotations

import enum
from dataclasses import dataclass

from modules.exceptions import DesignError
from modules.padic import check_prime, p_length, valuation


@dataclass(frozen=True)
class TwoPartPartition:
    """A two part partition `(a, b)` of `v = a + b`, with `a >= b >= 1`."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if not self.a >= self.b >= 1:
            raise DesignError(
                f'({self.a}, {self.b}) isn\'t a two part partition, which needs a >= b >= 1'
            )

    @property
    def v(self) -> int:
        return self.a + self.b

    def __str__(self) -> str:
        return f'({self.a}, {self.b})'


@dataclass(frozen=True)
class Decomposition:
    """`b = alpha * p**beta + b_hat`, with `beta = l_p(b)` and `b_hat < p**beta`."""

    alpha: int
    beta: int
    b_hat: int


class PartitionKind(enum.Enum):
    JAMES = 'James'
    POINTED = 'Pointed'
    GENERIC = 'Generic'


@dataclass(frozen=True)
class PartitionClass:
    kind: PartitionKind
    b_hat: int | None = None

    @property
    def is_james(self) -> bool:
        return self.kind is PartitionKind.JAMES

    @property
    def is_pointed(self) -> bool:
        return self.kind is PartitionKind.POINTED

    def __str__(self) -> str:
        if self.kind is PartitionKind.POINTED:
            return f'Pointed(b̂={self.b_hat})'
        return self.kind.value


def decompose(b: int, p: int) -> Decomposition:
    """
    Splits off the leading base `p` digit of `b`.

    Args:
        b (int): A positive integer.
        p (int): The prime.

    Returns:
        Decomposition: `alpha`, `beta` and `b_hat` with `b = alpha * p**beta + b_hat`.
    """
    if b < 1:
        raise DesignError(f'Can\'t decompose {b}, expected a positive integer')

    beta: int = p_length(b, p)
    alpha, b_hat = divmod(b, p**beta)

    return Decomposition(alpha, beta, b_hat)


def classify(part: TwoPartPartition, p: int) -> PartitionClass:
    """
    Classifies a partition as James, pointed or generic at the prime `p`.

    James when `val(a+1) > l_p(b)`. Pointed when `b = p**beta + b_hat` with
    `b_hat < p**val(a+1) < p**beta`; `b_hat = 0` counts.

    Args:
        part (TwoPartPartition): The partition.
        p (int): The prime.

    Returns:
        PartitionClass: The classification, carrying `b_hat` when pointed.
    """
    check_prime(p)

    val_a: int = valuation(part.a + 1, p)
    split: Decomposition = decompose(part.b, p)

    if val_a > split.beta:
        return PartitionClass(PartitionKind.JAMES)

    if split.alpha == 1 and split.b_hat < p**val_a < p**split.beta:
        return PartitionClass(PartitionKind.POINTED, split.b_hat)

    return PartitionClass(PartitionKind.GENERIC)


def james_alternative(part: TwoPartPartition, p: int) -> bool:
    """Whether `a = -1` modulo `p**(l_p(b) + 1)`, the congruence form of James."""
    modulus: int = p ** (p_length(part.b, p) + 1)

    return part.a % modulus == modulus - 1
