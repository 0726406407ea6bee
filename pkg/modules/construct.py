from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from math import comb

import numpy as np

from modules.design import (
    Design,
    Spectrum,
    add,
    relabel,
    similar,
    spectrum,
    zero_design,
)
from modules.exceptions import ConstructionError, DesignError
from modules.fplinalg import FpMatrix, particular_solution
from modules.padic import binom_mod, binom_valuation, check_prime, digit, p_length, valuation
from modules.partition import TwoPartPartition, classify, decompose
from modules.subsets import Subset, block_array, blocks, colex_rank, inclusion_matrix, ranks


def constant_design(v: int, b: int, p: int, k: int) -> Design:
    """The design with the value `k` on every block."""
    check_prime(p)

    return Design(v, b, p, np.full(comb(v, b), k % p, dtype=np.int64))


def james_null(v: int, b: int, x: Subset, y: Subset, f: Mapping[int, int], p: int) -> Design:
    """
    The signed null design of a matching between two disjoint `b`-sets.

    A block `Z` takes `(-1)**|Z & y|` when it picks exactly one end of every pair
    `(t, f(t))`, and 0 otherwise.

    Args:
        v (int): The size of the ground set.
        b (int): The block size.
        x (Subset): A `b`-subset of `[v]`.
        y (Subset): A `b`-subset of `[v]` disjoint from `x`.
        f (Mapping[int, int]): A bijection from `x` to `y`.
        p (int): The prime.

    Raises:
        ConstructionError: If the sets or the bijection don't fit.

    Returns:
        Design: The design, with `-1` stored as `p - 1`.
    """
    check_prime(p)

    if b < 1 or len(x) != b or len(y) != b:
        raise ConstructionError(f'Need two {b}-subsets with b >= 1, got {{{x}}} and {{{y}}}')

    if x.v != v or y.v != v:
        raise ConstructionError(f'Both subsets must lie in [{v}]')

    if set(x) & set(y):
        raise ConstructionError(f'{{{x}}} and {{{y}}} aren\'t disjoint')

    if set(f) != set(x) or sorted(f.values()) != list(y):
        raise ConstructionError(f'{dict(f)} isn\'t a bijection from {{{x}}} to {{{y}}}')

    values: np.ndarray = np.zeros(comb(v, b), dtype=np.int64)

    for choice in itertools.product(*((t, f[t]) for t in x)):
        from_y: int = sum(1 for t in choice if t in y)
        values[colex_rank(Subset.of(choice, v))] = 1 if from_y % 2 == 0 else p - 1

    return Design(v, b, p, values)


def prime_power_design(a: int, beta: int, p: int) -> Design:
    """
    The indicator of the `p**beta`-subsets of `[a + p**beta]` that avoid `[m]`, where
    `m = a - p**beta + 1`.

    It's non-null only as a 0-design.

    Args:
        a (int): The larger part, at least `p**beta`.
        beta (int): The exponent, with `val(a+1) < beta`.
        p (int): The prime.

    Raises:
        ConstructionError: If `p**beta > a` or `val(a+1) >= beta`.

    Returns:
        Design: The design on `v = a + p**beta` with block size `p**beta`.
    """
    check_prime(p)
    b: int = p**beta

    if beta < 1 or b > a or valuation(a + 1, p) >= beta:
        raise ConstructionError(
            f'Need p**beta <= a and val(a+1) < beta, got a={a}, beta={beta}, p={p}'
        )

    v: int = a + b
    m: int = a - b + 1

    return Design(v, b, p, (block_array(v, b)[:, 0] > m).astype(np.int64))


def _contains_rows(rows: np.ndarray, y: Subset) -> np.ndarray:
    return np.isin(rows, list(y)).sum(axis=1) == len(y)


def lift_u_Y(base: Design, y: Subset) -> Design:
    """
    Lifts `base` from `[v] \\ y` to `[v]`, adding `y` to every block.

    `base` lives on `[v - |y|]`, which is carried onto `[v] \\ y` in increasing order.
    The result takes `u(Z \\ y)` on blocks `Z` containing `y` and 0 elsewhere.

    Args:
        base (Design): The design on the complement of `y`.
        y (Subset): The subset to add, a subset of `[v]`.

    Returns:
        Design: The lifted design, with block size `base.b + |y|`.
    """
    v: int = y.v

    if base.v != v - len(y):
        raise ConstructionError(
            f'The base design must live on the {v - len(y)} points outside {{{y}}}, '
            f'got a ground set of size {base.v}'
        )

    complement: list[int] = [t for t in range(1, v + 1) if t not in y]
    moved: Design = relabel(base, complement, v)

    size: int = base.b + len(y)
    rows: np.ndarray = block_array(v, size)
    holding: np.ndarray = _contains_rows(rows, y)

    held: np.ndarray = rows[holding]
    rest: np.ndarray = held[~np.isin(held, list(y))].reshape(held.shape[0], base.b)

    values: np.ndarray = np.zeros(comb(v, size), dtype=np.int64)
    values[holding] = moved.values[ranks(rest, v)]

    return Design(v, size, base.p, values)


def restrict_u_Y(u: Design, y: Subset) -> Design:
    """Keeps `u` on the blocks disjoint from `y` and zeroes it elsewhere."""
    if y.v != u.v:
        raise ConstructionError(f'{{{y}}} isn\'t a subset of [{u.v}]')

    avoiding: np.ndarray = ~np.isin(block_array(u.v, u.b), list(y)).any(axis=1)

    return Design(u.v, u.b, u.p, np.where(avoiding, u.values, 0))


def ubar_X(x: Subset, a: int, beta: int, b_hat: int, p: int) -> Design:
    """
    Sums the lifts of `prime_power_design(a, beta, p)` over the `b_hat`-subsets of `x`.

    Args:
        x (Subset): A `(p**beta + b_hat - 1)`-subset of `[a + p**beta + b_hat]`.
        a (int): The larger part.
        beta (int): The exponent of the leading power of `p` in the block size.
        b_hat (int): The remainder of the block size.
        p (int): The prime.

    Returns:
        Design: A design with block size `p**beta + b_hat`, whose level `b_hat` induced
        function is `mu_0` times the indicator of the `b_hat`-subsets of `x`.
    """
    base: Design = prime_power_design(a, beta, p)
    b: int = p**beta + b_hat
    v: int = a + b

    if x.v != v or len(x) != b - 1:
        raise ConstructionError(f'Expected a {b - 1}-subset of [{v}], got {{{x}}} in [{x.v}]')

    total: Design = zero_design(v, b, p)

    for y in itertools.combinations(x, b_hat):
        total = add(total, lift_u_Y(base, Subset(y, v)))

    return total


def _stacked_levels(v: int, b: int, p: int, levels: Sequence[int]) -> FpMatrix:
    return FpMatrix(
        np.vstack([inclusion_matrix(j, b, v, p).entries for j in levels]),
        p,
    )


def solve_design(v: int, b: int, p: int, target: Spectrum) -> Design | None:
    """
    Finds a design with exactly the given spectrum.

    Only the levels `b - p**ell` are stacked. A design constant on those levels is
    universal and every other coefficient follows from theirs, so a solution whose
    spectrum misses the target means no design has it.

    Args:
        v (int): The size of the ground set.
        b (int): The block size.
        p (int): The prime.
        target (Spectrum): The coefficients `mu_0, ..., mu_{b-1}`, all defined.

    Returns:
        Design | None: The design from the particular solution of the stacked system
        `hat(u, b - p**ell) = mu_{b - p**ell}`, or `None` if no design has the target.
    """
    check_prime(p)

    if len(target) != b or target.p != p or not target.defined:
        raise DesignError(f'Expected a fully defined spectrum of length {b} over F_{p}')

    if b == 0:
        return zero_design(v, 0, p)

    wanted: tuple[int, ...] = tuple(mu % p for mu in target.coeffs if mu is not None)
    levels: list[int] = sorted({b - p**ell for ell in range(p_length(b, p) + 1)})
    rhs: np.ndarray = np.concatenate(
        [np.full(comb(v, j), wanted[j], dtype=np.int64) for j in levels]
    )
    particular: np.ndarray | None = particular_solution(_stacked_levels(v, b, p, levels), rhs)

    if particular is None:
        return None

    found: Design = Design(v, b, p, particular)

    if spectrum(found).coeffs != wanted:
        return None

    return found


def level_design(v: int, b: int, t: int, p: int, mu: int) -> Design | None:
    """
    Finds a design whose level `t` induced function is the constant `mu`.

    The other levels are left free.

    Returns:
        Design | None: The design from the particular solution, or `None` if there's none.
    """
    check_prime(p)

    if not 0 <= t < b <= v:
        raise DesignError(f'Need 0 <= t < b <= v, got t={t}, b={b}, v={v}')

    particular: np.ndarray | None = particular_solution(
        _stacked_levels(v, b, p, [t]), np.full(comb(v, t), mu % p, dtype=np.int64)
    )

    if particular is None:
        return None

    return Design(v, b, p, particular)


def pointed_design(a: int, b: int, p: int) -> Design:
    """
    A universal design for a pointed partition that's non-null only at level `b_hat`.

    A design `U` of block size `b - 1` whose level `b_hat` induced function is 1 turns
    `sum over X of U(X) * ubar_X(X)` into the sum of the lifts of
    `prime_power_design(a, beta, p)` over every `b_hat`-subset of `[a + b]`. `U` only
    has to exist, so the sum is taken directly.

    Args:
        a (int): The larger part.
        b (int): The smaller part.
        p (int): The prime.

    Raises:
        ConstructionError: If `(a, b)` isn't pointed with `b_hat >= 1`, or the result
            fails its check.

    Returns:
        Design: The design on `[a + b]` with block size `b`.
    """
    partition_class = classify(TwoPartPartition(a, b), p)

    if not partition_class.is_pointed:
        raise ConstructionError(f'({a}, {b}) is {partition_class} at p={p}, not pointed')

    split = decompose(b, p)

    if split.b_hat == 0:
        raise ConstructionError(
            f'({a}, {b}) has b̂=0 at p={p}, use prime_power_design({a}, {split.beta}, {p})'
        )

    v: int = a + b

    if level_design(v, b - 1, split.b_hat, p, 1) is None:
        raise ConstructionError(
            f'No design of block size {b - 1} on [{v}] has level {split.b_hat} constant at 1'
        )

    base: Design = prime_power_design(a, split.beta, p)
    total: Design = zero_design(v, b, p)

    for y in blocks(v, split.b_hat):
        total = add(total, lift_u_Y(base, Subset(y, v)))

    achieved: Spectrum = spectrum(total)

    if not achieved.defined or achieved.support != (split.b_hat,):
        raise ConstructionError(
            f'The assembled design for ({a}, {b}) at p={p} has spectrum {achieved}'
        )

    return total


def integral_canonical_spectrum(a: int, b: int) -> tuple[int, ...]:
    """The integer coefficients `C(a+b-s, a)` for `s < b`, before any reduction."""
    return tuple(comb(a + b - s, a) for s in range(b))


def _reduced_canonical_spectrum(a: int, b: int, p: int) -> Spectrum:
    integral: tuple[int, ...] = integral_canonical_spectrum(a, b)
    d: int = min(binom_valuation(a + b - s, a, p) for s in range(b))

    return Spectrum(tuple(mu // p**d % p for mu in integral), p)


def james_canonical_spectrum(a: int, b: int, p: int) -> Spectrum:
    """
    The spectrum of the mod `p` reduction of the canonical integral design.

    The integer coefficients `C(a+b-s, a)` are divided by `p**d`, the smallest power of
    `p` among them, so at least one stays a unit.

    Args:
        a (int): The larger part.
        b (int): The smaller part.
        p (int): The prime.

    Raises:
        ConstructionError: If `(a, b)` isn't James at `p`.

    Returns:
        Spectrum: The canonical spectrum, unique up to similarity.
    """
    partition_class = classify(TwoPartPartition(a, b), p)

    if not partition_class.is_james:
        raise ConstructionError(f'({a}, {b}) is {partition_class} at p={p}, not James')

    return _reduced_canonical_spectrum(a, b, p)


def nonconstant_integral_design_exists(a: int, b: int, p: int) -> bool:
    """
    Whether some integral design reduces to a universal design that isn't similar to the
    constant one.
    """
    TwoPartPartition(a, b)
    constant: Spectrum = Spectrum(tuple(binom_mod(a + b - s, a, p) for s in range(b)), p)

    return similar(_reduced_canonical_spectrum(a, b, p), constant) is None


def wilson_exists(v: int, b: int, t: int, p: int) -> bool:
    """
    Whether there's a non-null `t`-design of block size `b` on `[v]` over `F_p`.

    True when `C(b-i, t-i) = 0 mod p` forces `C(v-i, t-i) = 0 mod p` for every `i <= t`.
    """
    if not 0 <= t <= b <= v - t:
        raise DesignError(f'Need 0 <= t <= b <= v - t, got v={v}, b={b}, t={t}')

    return all(
        binom_mod(b - i, t - i, p) or not binom_mod(v - i, t - i, p) for i in range(t + 1)
    )


def cor_nonnull_prime_power_level(a: int, b: int, ell: int, p: int) -> bool:
    """
    Whether `(a, b)` has a non-null `(b - p**ell)`-design: `a_ell != p - 1` or `b < p**(ell+1)`.
    """
    TwoPartPartition(a, b)

    if not 0 <= ell <= p_length(b, p):
        raise DesignError(f'Level index {ell} is outside [0, {p_length(b, p)}]')

    return digit(a, ell, p) != p - 1 or b < p ** (ell + 1)
