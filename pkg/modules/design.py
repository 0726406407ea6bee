from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from math import comb

import numpy as np

from modules.exceptions import DesignError
from modules.padic import binom_mod, check_prime, p_length
from modules.subsets import Subset, block_array, colex_rank, colex_unrank, inclusion_apply, ranks


@dataclass(frozen=True, eq=False)
class Design:
    """
    A function from the `b`-subsets of `[v]` to `F_p`.

    `values[r]` is the value on the subset of colex rank `r`.
    """

    v: int
    b: int
    p: int
    values: np.ndarray

    def __post_init__(self) -> None:
        check_prime(self.p)

        if not 0 <= self.b <= self.v:
            raise DesignError(f'Block size {self.b} doesn\'t fit a ground set of size {self.v}')

        values: np.ndarray = np.array(self.values, dtype=np.int64)

        if values.shape != (comb(self.v, self.b),):
            raise DesignError(
                f'A design on {self.b}-subsets of [{self.v}] needs {comb(self.v, self.b)} '
                f'values, got shape {values.shape}'
            )

        if values.size and (values.min() < 0 or values.max() >= self.p):
            raise DesignError(f'Design values must lie in [0, {self.p})')

        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Design):
            return NotImplemented
        return (self.v, self.b, self.p) == (other.v, other.b, other.p) and np.array_equal(
            self.values, other.values
        )

    def __hash__(self) -> int:
        return hash((self.v, self.b, self.p, self.values.tobytes()))

    def __getitem__(self, block: Subset) -> int:
        if block.v != self.v or len(block) != self.b:
            raise DesignError(f'{block} isn\'t a {self.b}-subset of [{self.v}]')
        return int(self.values[colex_rank(block)])

    def support(self) -> Iterator[tuple[Subset, int]]:
        """Yields the blocks with non-zero values, in colex order."""
        for r in np.flatnonzero(self.values):
            yield colex_unrank(int(r), self.b, self.v), int(self.values[r])

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.v, self.b, self.p


@dataclass(frozen=True)
class Spectrum:
    """Per-level coefficients `mu_0, ..., mu_{b-1}`, `None` where the level isn't constant."""

    coeffs: tuple[int | None, ...]
    p: int

    @property
    def defined(self) -> bool:
        return all(mu is not None for mu in self.coeffs)

    @property
    def null(self) -> bool:
        return self.defined and not any(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, mu in enumerate(self.coeffs) if mu)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return f'({", ".join("non-constant" if mu is None else str(mu) for mu in self.coeffs)})'


def zero_design(v: int, b: int, p: int) -> Design:
    return Design(v, b, p, np.zeros(comb(v, b), dtype=np.int64))


def hat(u: Design, j: int) -> np.ndarray:
    """
    The function induced by `u` on `j`-subsets: `Z -> sum of u(Y) over Y containing Z`.

    Args:
        u (Design): The design.
        j (int): The level, `0 <= j <= u.b`.

    Returns:
        np.ndarray: The induced values, indexed by `j`-subsets of `[v]` in colex order.
    """
    if not 0 <= j <= u.b:
        raise DesignError(f'Level {j} is outside [0, {u.b}] for block size {u.b}')

    return inclusion_apply(u.values, j, u.v, u.p, b=u.b)


def level_coefficient(u: Design, j: int) -> int | None:
    """
    The coefficient `mu_j` of `u` as a `j`-design.

    Args:
        u (Design): The design.
        j (int): The level, `0 <= j < u.b`.

    Returns:
        int | None: The constant value of the level `j` induced function, or `None` if
        it isn't constant.
    """
    if not 0 <= j < u.b:
        raise DesignError(f'Level {j} is outside [0, {u.b}) for block size {u.b}')

    induced: np.ndarray = hat(u, j)

    if np.all(induced == induced[0]):
        return int(induced[0])

    return None


def spectrum(u: Design) -> Spectrum:
    return Spectrum(tuple(level_coefficient(u, j) for j in range(u.b)), u.p)


def is_universal(u: Design) -> bool:
    return spectrum(u).defined


def is_null(u: Design) -> bool:
    return spectrum(u).null


def is_universal_fast(u: Design) -> bool:
    """
    Checks universality on the levels `b - p**ell` for `0 <= ell <= l_p(b)` only.

    A `(b - p**ell)`-design is a `j`-design whenever digit `ell` of `b - j` is non-zero,
    and every `b - j` with `j < b` has some non-zero digit, so these levels suffice.
    """
    if u.b < 1:
        raise DesignError('Universality needs a block size of at least 1')

    return all(
        level_coefficient(u, u.b - u.p**ell) is not None for ell in range(p_length(u.b, u.p) + 1)
    )


def propagate_coefficient(v: int, b: int, t: int, j: int, mu_t: int, p: int) -> int | None:
    """
    The coefficient a `t`-design is forced to have as a `j`-design.

    `C(b-j, t-j) A_j^b u = A_j^t A_t^b u = C(v-j, t-j) mu_t 1`, so when `C(b-j, t-j)` is
    a unit, `mu_j = C(v-j, t-j) / C(b-j, t-j) * mu_t`.

    Args:
        v (int): The size of the ground set.
        b (int): The block size.
        t (int): The level with known coefficient.
        j (int): The level to propagate to.
        mu_t (int): The coefficient at level `t`.
        p (int): The prime.

    Returns:
        int | None: `mu_j`, or `None` when `C(b-j, t-j) = 0 mod p` leaves it undetermined.
    """
    if not 0 <= j <= t <= b <= v:
        raise DesignError(f'Need 0 <= j <= t <= b <= v, got j={j}, t={t}, b={b}, v={v}')

    denominator: int = binom_mod(b - j, t - j, p)

    if not denominator:
        return None

    numerator: int = binom_mod(v - j, t - j, p)

    return numerator * pow(denominator, -1, p) * mu_t % p


def similar(s1: Spectrum, s2: Spectrum) -> int | None:
    """
    The non-zero `k` with `s1 = k * s2`, if there is one.

    Args:
        s1 (Spectrum): A fully defined spectrum.
        s2 (Spectrum): A fully defined spectrum of the same length and prime.

    Returns:
        int | None: The scalar `k`, `1` when both spectra are zero, or `None` when the
        spectra aren't proportional.
    """
    if not (s1.defined and s2.defined):
        raise DesignError('Similarity needs spectra defined on every level')

    if len(s1) != len(s2) or s1.p != s2.p:
        raise DesignError(f'Can\'t compare spectra {s1} over F_{s1.p} and {s2} over F_{s2.p}')

    p: int = s1.p
    mu: list[int] = [int(x) for x in s1.coeffs]  # type: ignore[arg-type]
    gamma: list[int] = [int(x) for x in s2.coeffs]  # type: ignore[arg-type]

    if not any(mu) and not any(gamma):
        return 1

    if not any(mu) or not any(gamma):
        return None

    first: int = next(j for j, g in enumerate(gamma) if g)
    k: int = mu[first] * pow(gamma[first], -1, p) % p

    if all(m == k * g % p for m, g in zip(mu, gamma, strict=True)):
        return k

    return None


def _check_same_shape(u: Design, w: Design) -> None:
    if u.shape != w.shape:
        raise DesignError(f'Design shapes (v, b, p) differ: {u.shape} and {w.shape}')


def add(u: Design, w: Design) -> Design:
    _check_same_shape(u, w)

    return Design(u.v, u.b, u.p, (u.values + w.values) % u.p)


def subtract(u: Design, w: Design) -> Design:
    _check_same_shape(u, w)

    return Design(u.v, u.b, u.p, (u.values - w.values) % u.p)


def scale(u: Design, k: int) -> Design:
    return Design(u.v, u.b, u.p, (u.values * (k % u.p)) % u.p)


def indicator(block: Subset, p: int, value: int = 1) -> Design:
    """The function `delta_X`: `value` on `block`, zero on every other subset of its size."""
    values: np.ndarray = np.zeros(comb(block.v, len(block)), dtype=np.int64)
    values[colex_rank(block)] = value % p

    return Design(block.v, len(block), p, values)


def relabel(u: Design, injection: Sequence[int], v: int) -> Design:
    """
    Carries `u` onto a larger ground set along an order-preserving injection.

    Args:
        u (Design): The design on `[u.v]`.
        injection (Sequence[int]): The images of `1, ..., u.v`, strictly increasing in
            `[1, v]`.
        v (int): The size of the new ground set.

    Returns:
        Design: `S -> u(preimage of S)` when `S` lies in the image, 0 otherwise.
    """
    images: list[int] = list(injection)

    if len(images) != u.v:
        raise DesignError(f'The injection needs {u.v} images, got {len(images)}')

    if any(x >= y for x, y in zip(images, images[1:])) or (
        images and not 1 <= images[0] <= images[-1] <= v
    ):
        raise DesignError(f'{images} isn\'t an order-preserving injection into [{v}]')

    preimage: np.ndarray = np.zeros(v + 1, dtype=np.int64)
    preimage[images] = np.arange(1, u.v + 1)

    pulled: np.ndarray = preimage[block_array(v, u.b)]
    inside: np.ndarray = np.all(pulled > 0, axis=1)

    values: np.ndarray = np.zeros(comb(v, u.b), dtype=np.int64)
    values[inside] = u.values[ranks(pulled[inside], u.v)]

    return Design(v, u.b, u.p, values)


def satisfies_integral_recurrence(v: int, b: int, mus: Sequence[int]) -> bool:
    """
    Whether integer coefficients satisfy `(v - j) mu_{j+1} = (b - j) mu_j`.

    This is the existence criterion for universal integral designs on `b`-subsets of
    `[v]`; the check runs over consecutive pairs of `mus`.
    """
    if len(mus) > b:
        raise DesignError(f'Expected at most {b} coefficients, got {len(mus)}')

    return all(
        (v - j) * mus[j + 1] == (b - j) * mus[j] for j in range(len(mus) - 1)
    )
