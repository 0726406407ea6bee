import itertools
from math import comb

import numpy as np
import pytest

from modules.construct import (
    constant_design,
    cor_nonnull_prime_power_level,
    integral_canonical_spectrum,
    james_canonical_spectrum,
    james_null,
    level_design,
    lift_u_Y,
    nonconstant_integral_design_exists,
    pointed_design,
    prime_power_design,
    restrict_u_Y,
    solve_design,
    ubar_X,
    wilson_exists,
)
from modules.design import (
    Design,
    Spectrum,
    add,
    hat,
    is_null,
    is_universal,
    is_universal_fast,
    level_coefficient,
    satisfies_integral_recurrence,
    spectrum,
    zero_design,
)
from modules.exceptions import ConstructionError, DesignError
from modules.fplinalg import FpMatrix, nullspace, rank, solve
from modules.padic import p_length
from modules.partition import TwoPartPartition, classify
from modules.subsets import Subset, blocks, inclusion_matrix


def partitions(limit: int) -> list[tuple[int, int]]:
    return [(a, b) for b in range(1, limit) for a in range(b, limit - b + 1)]


@pytest.mark.parametrize('p', [2, 3])
def test_constant_design_spectrum_and_nullity(p: int) -> None:
    for a, b in partitions(12):
        for k in range(p):
            u = constant_design(a + b, b, p, k)

            assert spectrum(u) == Spectrum(
                tuple(k * comb(a + b - j, b - j) % p for j in range(b)), p
            )

        null: bool = is_null(constant_design(a + b, b, p, 1))

        assert null is classify(TwoPartPartition(a, b), p).is_james, (a, b, p)


def test_constant_design_examples() -> None:
    assert spectrum(constant_design(5, 2, 2, 1)) == Spectrum((0, 0), 2)
    assert spectrum(constant_design(5, 2, 3, 1)) == Spectrum((1, 1), 3)
    assert constant_design(5, 2, 3, 0) == zero_design(5, 2, 3)


def test_james_null_examples() -> None:
    x, y = Subset((1, 2), 4), Subset((3, 4), 4)
    binary = james_null(4, 2, x, y, {1: 3, 2: 4}, 2)

    assert [binary[Subset(s, 4)] for s in blocks(4, 2)] == [1, 0, 1, 1, 0, 1]
    assert spectrum(binary) == Spectrum((0, 0), 2)

    ternary = james_null(4, 2, x, y, {1: 3, 2: 4}, 3)

    assert ternary[Subset((1, 4), 4)] == ternary[Subset((2, 3), 4)] == 2

    single = james_null(3, 1, Subset((1,), 3), Subset((2,), 3), {1: 2}, 5)

    assert single.values.tolist() == [1, 4, 0]
    assert spectrum(single) == Spectrum((0,), 5)


@pytest.mark.parametrize(
    'x, y, f',
    [
        ((1, 2), (2, 3), {1: 2, 2: 3}),
        ((1, 2), (3,), {1: 3}),
        ((1, 2), (3, 4), {1: 3, 2: 3}),
        ((1, 2), (3, 4), {1: 3}),
    ],
)
def test_james_null_rejects(x: tuple[int, ...], y: tuple[int, ...], f: dict[int, int]) -> None:
    with pytest.raises(ConstructionError):
        james_null(4, 2, Subset(x, 4), Subset(y, 4), f, 2)


@pytest.mark.parametrize('p', [2, 3])
def test_james_null_designs_are_null(p: int) -> None:
    for v in range(2, 11):
        for b in range(1, v // 2 + 1):
            x = Subset(tuple(range(1, b + 1)), v)
            y = Subset(tuple(range(v - b + 1, v + 1)), v)

            pairings = (zip(x, y, strict=True), zip(x, reversed(y.elements), strict=True))

            for f in map(dict, pairings):
                u = james_null(v, b, x, y, f, p)

                assert is_null(u), (v, b, p, f)
                assert is_universal_fast(u)


@pytest.mark.parametrize('p', [2, 3])
def test_james_null_designs_span_null_space(p: int) -> None:
    for v in range(2, 9):
        for b in range(1, min(3, v // 2) + 1):
            stacked = FpMatrix(
                np.vstack([inclusion_matrix(j, b, v, p).entries for j in range(b)]), p
            )
            null_dimension = len(nullspace(stacked))

            assert null_dimension == comb(v, b) - comb(v, b - 1)

            generated: list[np.ndarray] = []

            for x_elements in itertools.combinations(range(1, v + 1), b):
                rest = [t for t in range(1, v + 1) if t not in x_elements]

                for y_elements in itertools.combinations(rest, b):
                    for image in itertools.permutations(y_elements):
                        f = dict(zip(x_elements, image, strict=True))
                        u = james_null(v, b, Subset(x_elements, v), Subset(y_elements, v), f, p)
                        generated.append(u.values)

            assert rank(FpMatrix(np.stack(generated), p)) == null_dimension, (v, b, p)


def test_prime_power_design_examples() -> None:
    small = prime_power_design(2, 1, 2)

    assert (small.v, small.b) == (4, 2)
    assert sorted(s.elements for s, _ in small.support()) == [(2, 3), (2, 4), (3, 4)]
    assert spectrum(small) == Spectrum((1, 0), 2)

    assert spectrum(prime_power_design(5, 2, 2)) == Spectrum((1, 0, 0, 0), 2)


@pytest.mark.parametrize('a, beta, p', [(3, 1, 2), (1, 1, 2), (5, 0, 2), (7, 2, 2)])
def test_prime_power_design_rejects(a: int, beta: int, p: int) -> None:
    with pytest.raises(ConstructionError):
        prime_power_design(a, beta, p)


@pytest.mark.parametrize('p', [2, 3])
def test_prime_power_designs_are_non_null_only_at_level_zero(p: int) -> None:
    for beta in (1, 2):
        b = p**beta

        for a in range(b, 13 - b):
            try:
                u = prime_power_design(a, beta, p)
            except ConstructionError:
                continue

            mu = spectrum(u)

            assert mu.defined and mu.support == (0,), (a, beta, p)
            assert mu.coeffs[0] == 1


def test_lift_with_empty_set_is_identity() -> None:
    base = prime_power_design(5, 2, 2)

    assert lift_u_Y(base, Subset((), 9)) == base


@pytest.mark.parametrize('y', [(10,), (1,), (4,)])
def test_lift_u_Y(y: tuple[int, ...]) -> None:
    base = prime_power_design(5, 2, 2)
    lifted = lift_u_Y(base, Subset(y, 10))
    complement = [t for t in range(1, 11) if t not in y]

    assert (lifted.v, lifted.b) == (10, 5)
    assert len(list(lifted.support())) == len(list(base.support()))

    for block, value in lifted.support():
        assert set(y) <= set(block)

        rest = [complement.index(t) + 1 for t in block if t not in y]

        assert base[Subset(tuple(rest), 9)] == value

    for j in (2, 3):
        assert not hat(lifted, j).any()


def test_lift_u_Y_rejects_wrong_ground_set() -> None:
    with pytest.raises(ConstructionError):
        lift_u_Y(prime_power_design(5, 2, 2), Subset((1, 2), 10))


def test_restrict_u_Y() -> None:
    u = constant_design(6, 2, 3, 2)
    restricted = restrict_u_Y(u, Subset((1, 6), 6))

    for s in blocks(6, 2):
        expected = 0 if {1, 6} & set(s) else 2

        assert restricted[Subset(s, 6)] == expected

    assert restrict_u_Y(u, Subset((), 6)) == u


def test_ubar_X() -> None:
    x = Subset((6, 7, 8, 9), 10)
    u = ubar_X(x, 5, 2, 1, 2)

    assert (u.v, u.b) == (10, 5)

    expected = np.array([1 if s[0] in x else 0 for s in blocks(10, 1)])

    assert np.array_equal(hat(u, 1), expected)

    for j in (0, 2, 3):
        assert not hat(u, j).any()


def test_ubar_X_rejects_wrong_size() -> None:
    with pytest.raises(ConstructionError):
        ubar_X(Subset((6, 7, 8), 10), 5, 2, 1, 2)


@pytest.mark.parametrize('a, b', [(5, 5), (9, 5)])
def test_pointed_design(a: int, b: int) -> None:
    u = pointed_design(a, b, 2)
    mu = spectrum(u)

    assert (u.v, u.b, u.p) == (a + b, b, 2)
    assert is_universal(u) and is_universal_fast(u)
    assert mu.support == (1,)


def test_pointed_design_sums_every_lift() -> None:
    base = prime_power_design(5, 2, 2)
    expected = zero_design(10, 5, 2)

    for y in blocks(10, 1):
        expected = add(expected, lift_u_Y(base, Subset(y, 10)))

    assert pointed_design(5, 5, 2) == expected


@pytest.mark.parametrize('a, b, p', [(3, 2, 2), (3, 2, 3), (2, 2, 2)])
def test_pointed_design_rejects(a: int, b: int, p: int) -> None:
    with pytest.raises(ConstructionError):
        pointed_design(a, b, p)


def test_solve_design_examples() -> None:
    found = solve_design(5, 2, 2, Spectrum((1, 0), 2))

    assert found is not None
    assert spectrum(found) == Spectrum((1, 0), 2)

    assert solve_design(5, 2, 2, Spectrum((0, 1), 2)) is None
    assert solve_design(6, 3, 3, Spectrum((0, 0, 0), 3)) == zero_design(6, 3, 3)
    assert solve_design(6, 3, 2, Spectrum((1, 0, 0), 2)) is None


@pytest.mark.parametrize('p, max_b', [(2, 3), (3, 2)])
def test_solve_design_agrees_with_every_level(p: int, max_b: int) -> None:
    for v in range(1, 8):
        for b in range(1, min(v, max_b) + 1):
            stacked = FpMatrix(
                np.vstack([inclusion_matrix(j, b, v, p).entries for j in range(b)]), p
            )

            for mus in itertools.product(range(p), repeat=b):
                rhs = np.concatenate([np.full(comb(v, j), mu) for j, mu in enumerate(mus)])
                found = solve_design(v, b, p, Spectrum(mus, p))

                assert (found is not None) is solve(stacked, rhs).consistent, (v, b, p, mus)

                if found is not None:
                    assert spectrum(found) == Spectrum(mus, p)


def test_solve_design_rejects_bad_targets() -> None:
    with pytest.raises(DesignError):
        solve_design(5, 2, 2, Spectrum((1,), 2))

    with pytest.raises(DesignError):
        solve_design(5, 2, 2, Spectrum((1, None), 2))


def test_level_design() -> None:
    u = level_design(10, 4, 1, 2, 1)

    assert u is not None
    assert level_coefficient(u, 1) == 1

    assert level_design(10, 5, 4, 2, 1) is None


def test_james_canonical_spectrum_example() -> None:
    assert james_canonical_spectrum(3, 2, 2) == Spectrum((1, 0), 2)


@pytest.mark.parametrize('a, b, p', [(3, 2, 2), (7, 4, 2), (8, 6, 3)])
def test_james_canonical_spectrum_is_realized(a: int, b: int, p: int) -> None:
    target = james_canonical_spectrum(a, b, p)

    assert any(target.coeffs)

    found = solve_design(a + b, b, p, target)

    assert found is not None
    assert spectrum(found) == target


def test_james_canonical_spectrum_rejects_other_partitions() -> None:
    with pytest.raises(ConstructionError):
        james_canonical_spectrum(5, 5, 2)


def test_integral_canonical_spectrum() -> None:
    assert integral_canonical_spectrum(3, 2) == (10, 4)

    for a, b in partitions(20):
        assert satisfies_integral_recurrence(a + b, b, integral_canonical_spectrum(a, b))


@pytest.mark.parametrize('p', [2, 3, 5])
def test_nonconstant_integral_design_exists_exactly_for_james(p: int) -> None:
    for a, b in partitions(30):
        expected = classify(TwoPartPartition(a, b), p).is_james

        assert nonconstant_integral_design_exists(a, b, p) is expected, (a, b, p)


def test_wilson_examples() -> None:
    assert wilson_exists(10, 4, 1, 2)
    assert not wilson_exists(10, 5, 4, 2)
    assert wilson_exists(7, 3, 0, 3)

    with pytest.raises(DesignError):
        wilson_exists(5, 4, 2, 2)


@pytest.mark.parametrize('p', [2, 3])
def test_wilson_matches_solver(p: int) -> None:
    for v in range(1, 10):
        for b in range(1, v + 1):
            for t in range(b):
                if b > v - t:
                    continue

                found = level_design(v, b, t, p, 1) is not None

                assert wilson_exists(v, b, t, p) is found, (v, b, t, p)


def test_cor_nonnull_examples() -> None:
    assert not cor_nonnull_prime_power_level(5, 5, 0, 2)
    assert cor_nonnull_prime_power_level(5, 5, 1, 2)
    assert cor_nonnull_prime_power_level(2, 2, 0, 2)
    assert not cor_nonnull_prime_power_level(3, 2, 0, 2)

    with pytest.raises(DesignError):
        cor_nonnull_prime_power_level(5, 5, 3, 2)


@pytest.mark.parametrize('p', [2, 3])
def test_cor_nonnull_matches_wilson(p: int) -> None:
    for a in range(1, 13):
        for b in range(1, a + 1):
            for ell in range(p_length(b, p) + 1):
                expected = wilson_exists(a + b, b, b - p**ell, p)

                assert cor_nonnull_prime_power_level(a, b, ell, p) is expected, (a, b, ell, p)


@pytest.mark.parametrize(
    'u',
    [
        constant_design(10, 5, 2, 1),
        prime_power_design(5, 2, 2),
        james_null(8, 3, Subset((1, 2, 3), 8), Subset((5, 6, 8), 8), {1: 8, 2: 5, 3: 6}, 3),
    ],
)
def test_constructed_designs_pass_fast_check(u: Design) -> None:
    assert is_universal(u)
    assert is_universal_fast(u)
