import pytest

from modules.exceptions import DesignError
from modules.padic import valuation
from modules.partition import (
    Decomposition,
    PartitionClass,
    PartitionKind,
    TwoPartPartition,
    classify,
    decompose,
    james_alternative,
)


@pytest.mark.parametrize(
    'b, p, expected',
    [
        (5, 2, Decomposition(1, 2, 1)),
        (2, 3, Decomposition(2, 0, 0)),
        (8, 2, Decomposition(1, 3, 0)),
        (25, 5, Decomposition(1, 2, 0)),
        (17, 3, Decomposition(1, 2, 8)),
    ],
)
def test_decompose(b: int, p: int, expected: Decomposition) -> None:
    assert decompose(b, p) == expected


def test_decompose_rejects_zero() -> None:
    with pytest.raises(DesignError):
        decompose(0, 2)


@pytest.mark.parametrize('a, b', [(2, 3), (0, 0), (3, 0)])
def test_partition_rejects_bad_parts(a: int, b: int) -> None:
    with pytest.raises(DesignError):
        TwoPartPartition(a, b)


@pytest.mark.parametrize(
    'a, b, p, expected',
    [
        (3, 2, 2, PartitionClass(PartitionKind.JAMES)),
        (5, 5, 2, PartitionClass(PartitionKind.POINTED, 1)),
        (3, 2, 3, PartitionClass(PartitionKind.GENERIC)),
        (2, 2, 2, PartitionClass(PartitionKind.POINTED, 0)),
        (7, 4, 2, PartitionClass(PartitionKind.JAMES)),
    ],
)
def test_classify(a: int, b: int, p: int, expected: PartitionClass) -> None:
    assert classify(TwoPartPartition(a, b), p) == expected


def test_class_text() -> None:
    assert str(PartitionClass(PartitionKind.POINTED, 1)) == 'Pointed(b̂=1)'
    assert str(PartitionClass(PartitionKind.JAMES)) == 'James'
    assert str(PartitionClass(PartitionKind.GENERIC)) == 'Generic'


@pytest.mark.parametrize('a, b, p, expected', [(3, 2, 2, True), (2, 2, 2, False), (7, 4, 2, True)])
def test_james_alternative(a: int, b: int, p: int, expected: bool) -> None:
    assert james_alternative(TwoPartPartition(a, b), p) is expected


@pytest.mark.parametrize('p', [2, 3, 5])
def test_classification_sweep(p: int) -> None:
    for a in range(1, 61):
        for b in range(1, a + 1):
            part = TwoPartPartition(a, b)
            found = classify(part, p)
            split = decompose(b, p)

            assert james_alternative(part, p) is found.is_james
            assert not (found.is_james and found.is_pointed)
            assert split.alpha * p**split.beta + split.b_hat == b
            assert 1 <= split.alpha < p and 0 <= split.b_hat < p**split.beta

            if found.is_pointed:
                assert found.b_hat == split.b_hat
                assert valuation(a + 1, p) < split.beta
