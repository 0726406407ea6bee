from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from modules.exceptions import LinearAlgebraError
from modules.padic import check_prime


@dataclass(frozen=True)
class FpMatrix:
    """A dense matrix over `F_p`, entries stored reduced into `[0, p)`."""

    entries: np.ndarray
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)

        # Frozen, so reduce through object.__setattr__
        reduced: np.ndarray = np.asarray(self.entries, dtype=np.int64) % self.p

        if reduced.ndim != 2:
            raise LinearAlgebraError(f'Expected a 2D array, got shape {reduced.shape}')

        reduced.flags.writeable = False
        object.__setattr__(self, 'entries', reduced)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]] | np.ndarray, p: int, cols: int = 0) -> FpMatrix:
        """Builds a matrix from nested sequences. `cols` sizes an empty matrix."""
        entries: np.ndarray = np.asarray(rows, dtype=np.int64)

        if entries.size == 0:
            entries = entries.reshape(0, cols)

        return cls(entries, p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        if self.p != other.p or self.cols != other.rows:
            raise LinearAlgebraError(
                f'Can\'t multiply a {self.rows}x{self.cols} matrix over F_{self.p} by a '
                f'{other.rows}x{other.cols} matrix over F_{other.p}'
            )
        return FpMatrix(self.entries @ other.entries, self.p)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Returns `self @ vector` reduced mod `p`."""
        vector = np.asarray(vector, dtype=np.int64)

        if vector.shape != (self.cols,):
            raise LinearAlgebraError(
                f'Expected a vector of length {self.cols}, got shape {vector.shape}'
            )

        return (self.entries @ vector) % self.p

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.p, self.entries.shape, self.entries.tobytes()))


@dataclass(frozen=True)
class AffineSolutionSpace:
    """
    The solutions of `A x = rhs`: `particular` plus any combination of
    `nullspace_basis`. `particular` is `None` when the system is inconsistent.
    """

    particular: np.ndarray | None
    nullspace_basis: tuple[np.ndarray, ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.nullspace_basis)


def _eliminate(work: np.ndarray, targets: np.ndarray, r: int, c: int, p: int) -> None:
    """Subtracts multiples of row `r` from the `targets` rows to clear column `c`."""
    support: np.ndarray = c + np.flatnonzero(work[r, c:])
    block: tuple[np.ndarray, ...] = np.ix_(targets, support)
    work[block] = (work[block] - np.outer(work[targets, c], work[r, support])) % p


def rref(m: FpMatrix) -> tuple[FpMatrix, int, tuple[int, ...]]:
    """
    Reduced row echelon form over `F_p`.

    Pivots are taken column by column, each from the first row at or below the
    current pivot row with a non-zero entry, so the result is deterministic. Rows below
    each pivot are cleared on the way down and rows above it on the way back up. Only
    the columns where the pivot row is non-zero are touched.

    Args:
        m (FpMatrix): The matrix to reduce.

    Returns:
        tuple[FpMatrix, int, tuple[int, ...]]: The reduced matrix, its rank and the
        pivot columns in increasing order.
    """
    p: int = m.p
    work: np.ndarray = m.entries.copy()
    rows, cols = work.shape
    pivots: list[int] = []
    r: int = 0

    for c in range(cols):
        if r == rows:
            break

        candidates: np.ndarray = np.flatnonzero(work[r:, c])

        if candidates.size == 0:
            continue

        pivot_row: int = r + int(candidates[0])

        if pivot_row != r:
            work[[r, pivot_row]] = work[[pivot_row, r]]

        # Entries left of c in row r are already zero
        work[r, c:] = work[r, c:] * pow(int(work[r, c]), -1, p) % p

        below: np.ndarray = r + 1 + np.flatnonzero(work[r + 1 :, c])

        if below.size:
            _eliminate(work, below, r, c, p)

        pivots.append(c)
        r += 1

    for i in range(r - 1, 0, -1):
        above: np.ndarray = np.flatnonzero(work[:i, pivots[i]])

        if above.size:
            _eliminate(work, above, i, pivots[i], p)

    return FpMatrix(work, p), r, tuple(pivots)


def rank(m: FpMatrix) -> int:
    return rref(m)[1]


def _nullspace_from_rref(
    reduced: np.ndarray, pivots: Sequence[int], cols: int, p: int
) -> list[np.ndarray]:
    pivot_set: set[int] = set(pivots)
    basis: list[np.ndarray] = []

    for free in range(cols):
        if free in pivot_set:
            continue

        x: np.ndarray = np.zeros(cols, dtype=np.int64)
        x[free] = 1
        x[list(pivots)] = (-reduced[: len(pivots), free]) % p
        basis.append(x)

    return basis


def nullspace(m: FpMatrix) -> tuple[np.ndarray, ...]:
    """A basis of `{x : m x = 0}`, one vector per non-pivot column."""
    reduced, _, pivots = rref(m)

    return tuple(_nullspace_from_rref(reduced.entries, pivots, m.cols, m.p))


def _reduce_augmented(
    m: FpMatrix, rhs: np.ndarray
) -> tuple[np.ndarray, tuple[int, ...], np.ndarray | None]:
    """Reduces `[m | rhs]` to the reduced entries, the pivots of `m` and a particular solution."""
    p: int = m.p
    rhs = np.asarray(rhs, dtype=np.int64) % p

    if rhs.shape != (m.rows,):
        raise LinearAlgebraError(
            f'Right hand side has shape {rhs.shape}, expected ({m.rows},) for a '
            f'{m.rows}x{m.cols} system'
        )

    augmented: FpMatrix = FpMatrix(np.column_stack([m.entries, rhs]), p)
    reduced, _, pivots = rref(augmented)
    cols: int = m.cols
    left_pivots: tuple[int, ...] = tuple(c for c in pivots if c < cols)
    particular: np.ndarray | None = None

    if cols not in pivots:
        particular = np.zeros(cols, dtype=np.int64)
        particular[list(left_pivots)] = reduced.entries[: len(left_pivots), cols]

        if not np.array_equal(m.apply(particular), rhs):
            raise LinearAlgebraError('Particular solution doesn\'t satisfy the system')

    return reduced.entries, left_pivots, particular


def particular_solution(m: FpMatrix, rhs: np.ndarray) -> np.ndarray | None:
    """
    One solution of `m x = rhs` over `F_p`, with every free variable set to 0.

    Skips the nullspace, so it's the cheaper call when only existence matters.

    Raises:
        LinearAlgebraError: If the dimensions don't agree, or the self-check fails.

    Returns:
        np.ndarray | None: The solution, or `None` if the system is inconsistent.
    """
    return _reduce_augmented(m, rhs)[2]


def solve(m: FpMatrix, rhs: np.ndarray) -> AffineSolutionSpace:
    """
    Solves `m x = rhs` over `F_p`.

    The particular solution sets every free variable to 0. Both the particular
    solution and the nullspace basis are checked against `m` before returning.

    Args:
        m (FpMatrix): The coefficient matrix.
        rhs (np.ndarray): The right hand side, of length `m.rows`.

    Raises:
        LinearAlgebraError: If the dimensions don't agree, or the self-check fails.

    Returns:
        AffineSolutionSpace: The particular solution (or `None`) and a nullspace basis.
    """
    reduced, left_pivots, particular = _reduce_augmented(m, rhs)
    basis: list[np.ndarray] = _nullspace_from_rref(reduced, left_pivots, m.cols, m.p)

    if basis and np.any((m.entries @ np.stack(basis, axis=1)) % m.p):
        raise LinearAlgebraError('Nullspace basis doesn\'t satisfy the homogeneous system')

    return AffineSolutionSpace(particular, tuple(basis))


def in_span(basis: Sequence[np.ndarray], w: np.ndarray, p: int) -> bool:
    """
    Whether `w` is an `F_p`-linear combination of `basis`.

    Args:
        basis (Sequence[np.ndarray]): Vectors, all the same length as `w`.
        w (np.ndarray): The vector to test.
        p (int): The prime.

    Returns:
        bool: `True` if `w` lies in the span. The empty span holds only zero.
    """
    check_prime(p)
    w = np.asarray(w, dtype=np.int64) % p

    if any(np.shape(vector) != w.shape for vector in basis):
        raise LinearAlgebraError(f'Every basis vector must have shape {w.shape}')

    if not basis:
        return not w.any()

    return solve(FpMatrix(np.stack(basis, axis=1), p), w).consistent
