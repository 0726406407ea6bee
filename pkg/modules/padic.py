from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb

from modules.exceptions import DesignError


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base `p` digits of a non-negative integer, without trailing zeros."""

    digits: tuple[int, ...]
    p: int

    def __int__(self) -> int:
        return sum(digit * self.p**i for i, digit in enumerate(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        # Digits past the leading one are zero
        if i < len(self.digits):
            return self.digits[i]
        return 0


@functools.lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """
    Validates the field modulus.

    Args:
        p (int): The candidate prime.

    Raises:
        DesignError: If `p` isn't prime.

    Returns:
        int: `p`, unchanged.
    """
    if p >= 2**16:
        raise DesignError(f'Primes must be smaller than 65536, got {p}')

    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise DesignError(f'{p} isn\'t prime')

    return p


def digits(n: int, p: int) -> DigitVector:
    """
    Expands `n` in base `p`.

    Args:
        n (int): A non-negative integer.
        p (int): The prime base.

    Returns:
        DigitVector: The digits of `n`, least significant first.
    """
    check_prime(p)

    if n < 0:
        raise DesignError(f'Can\'t expand the negative number {n}')

    expansion: list[int] = []

    while n:
        n, digit = divmod(n, p)
        expansion.append(digit)

    return DigitVector(tuple(expansion), p)


def digit(n: int, i: int, p: int) -> int:
    """Returns the coefficient of `p**i` in the base `p` expansion of `n`."""
    return digits(n, p)[i]


def valuation(n: int, p: int) -> int:
    """
    The p-adic valuation of `n`: the index of its least significant non-zero digit.

    Args:
        n (int): A positive integer.
        p (int): The prime.

    Raises:
        DesignError: If `n` is less than 1, where the valuation isn't finite.

    Returns:
        int: The exponent of the largest power of `p` that divides `n`.
    """
    check_prime(p)

    if n < 1:
        raise DesignError(f'The {p}-adic valuation of {n} isn\'t defined')

    v: int = 0

    while n % p == 0:
        n //= p
        v += 1

    return v


def p_length(n: int, p: int) -> int:
    """
    The p-adic length of `n`: the index of its leading base `p` digit.

    Args:
        n (int): A positive integer.
        p (int): The prime.

    Raises:
        DesignError: If `n` is less than 1.

    Returns:
        int: The `l` such that `p**l <= n < p**(l+1)`.
    """
    if n < 1:
        raise DesignError(f'The {p}-adic length of {n} isn\'t defined')

    return len(digits(n, p)) - 1


def binom_mod(n: int, k: int, p: int) -> int:
    """
    Computes `C(n, k) mod p` digit by digit with Lucas' theorem.

    Args:
        n (int): The upper index, non-negative.
        k (int): The lower index, non-negative. Values above `n` give 0.
        p (int): The prime.

    Returns:
        int: The residue of the binomial coefficient.
    """
    check_prime(p)

    if n < 0 or k < 0:
        raise DesignError(f'Binomial indices must be non-negative, got ({n}, {k})')

    if k > n:
        return 0

    result: int = 1

    while k:
        n, n_i = divmod(n, p)
        k, k_i = divmod(k, p)

        if k_i > n_i:
            return 0

        result = result * comb(n_i, k_i) % p

    return result


def binom_valuation(n: int, k: int, p: int) -> int:
    """
    Counts the carries when `k` and `n - k` are added in base `p` (Kummer's theorem).

    Args:
        n (int): The upper index.
        k (int): The lower index, at most `n`.
        p (int): The prime.

    Raises:
        DesignError: If `k > n`, where there's no addition to carry in.

    Returns:
        int: The exponent of `p` in `C(n, k)`.
    """
    check_prime(p)

    if not 0 <= k <= n:
        raise DesignError(f'Need 0 <= k <= n for a carry count, got ({n}, {k})')

    x: int = k
    y: int = n - k
    carry: int = 0
    carries: int = 0

    while x or y or carry:
        x, x_i = divmod(x, p)
        y, y_i = divmod(y, p)
        carry = 1 if x_i + y_i + carry >= p else 0
        carries += carry

    return carries


def divisibility_run(a: int, b: int, p: int) -> bool:
    """
    Whether `C(a+1, 1), C(a+2, 2), ..., C(a+b, b)` are all divisible by `p`.

    This holds exactly when the lowest `l_p(b) + 1` digits of `a` are all `p - 1`, so
    no binomial is evaluated.

    Args:
        a (int): A non-negative integer.
        b (int): The length of the run, at least 1.
        p (int): The prime.

    Returns:
        bool: `True` if every binomial in the run is `0 mod p`.
    """
    if b < 1:
        raise DesignError(f'The run length must be at least 1, got {b}')

    if a < 0:
        raise DesignError(f'Expected a non-negative integer, got {a}')

    modulus: int = p ** (p_length(b, p) + 1)

    return a % modulus == modulus - 1
