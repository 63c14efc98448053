"""Dense linear algebra over a prime field F_q.

Two interchangeable backends produce identical results:

* a generic Gauss-Jordan elimination on ``numpy`` int64 arrays reduced mod q;
* a q = 2 path on bit-packed rows, where bit j of a row int is column j.
  Pivots are chosen at the lowest set bit, which is the leftmost column, so the
  packed reduced row echelon form coincides with the ordinary one.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError


class LinAlgError(ArithmeticError):
    pass


class NoSolution(LinAlgError):
    """The system A x = b is inconsistent."""


class Underdetermined(LinAlgError):
    """The system A x = b is consistent but has more than one solution."""


class FqMatrix:
    """Immutable dense matrix over F_q."""

    __slots__ = ("q", "_a")

    def __init__(self, entries, q: int):
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ParameterError("FqMatrix needs a 2-d array")
        a %= q
        a.setflags(write=False)
        self.q = q
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int) -> FqMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), q)

    @classmethod
    def identity(cls, size: int, q: int) -> FqMatrix:
        return cls(np.eye(size, dtype=np.int64), q)

    @classmethod
    def from_bits(cls, rows: Sequence[int], cols: int) -> FqMatrix:
        return cls(unpack_rows(rows, cols).reshape(len(rows), cols), 2)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> FqMatrix:
        return FqMatrix(self._a.T, self.q)

    def to_bits(self) -> list[int]:
        return pack_rows(self._a)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def __matmul__(self, other):
        if isinstance(other, FqMatrix):
            if other.q != self.q:
                raise ParameterError("matrices over different fields")
            if self.cols != other.rows:
                raise ParameterError(f"shape mismatch {self.shape} @ {other.shape}")
            return FqMatrix(self._a @ other._a, self.q)
        v = np.asarray(other, dtype=np.int64)
        if v.shape[0] != self.cols:
            raise ParameterError(f"shape mismatch {self.shape} @ {v.shape}")
        return (self._a @ v) % self.q

    def hstack(self, other: FqMatrix) -> FqMatrix:
        return FqMatrix(np.hstack([self._a, other._a]), self.q)

    def vstack(self, other: FqMatrix) -> FqMatrix:
        return FqMatrix(np.vstack([self._a, other._a]), self.q)

    def __eq__(self, other):
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.q == other.q and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.q, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FqMatrix(q={self.q}, {self._a.tolist()})"


# ---------------------------------------------------------------------------
# bit-packed helpers (q = 2)

def pack_rows(a: np.ndarray) -> list[int]:
    a = np.asarray(a)
    out = []
    for row in a:
        v = 0
        for j in np.flatnonzero(row & 1).tolist():
            v |= 1 << j
        out.append(v)
    return out


def unpack_rows(rows: Sequence[int], cols: int) -> np.ndarray:
    out = np.zeros((len(rows), cols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j in range(cols):
            if (r >> j) & 1:
                out[i, j] = 1
    return out


def rref_bits(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed F_2 rows.

    Returns the nonzero rows ordered by pivot and the pivot column list.
    """
    basis: dict[int, int] = {}
    for r in rows:
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for pp, b in basis.items():
                if (b >> p) & 1:
                    basis[pp] = b ^ r
            basis[p] = r
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def rank_bits(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            p = (r & -r).bit_length() - 1
            b = pivots.get(p)
            if b is None:
                pivots[p] = r
                break
            r ^= b
    return len(pivots)


# ---------------------------------------------------------------------------
# generic Gauss-Jordan

def _rref_array(a: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * pow(int(a[r, c]), q - 2, q)) % q
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % q
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: FqMatrix, *, method: str = "auto") -> tuple[FqMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    ``method`` is ``"auto"``, ``"generic"`` or ``"bits"`` (q = 2 only).
    """
    if method == "auto":
        method = "bits" if M.q == 2 else "generic"
    if method == "bits":
        if M.q != 2:
            raise ParameterError("bit-packed elimination needs q = 2")
        rows, pivots = rref_bits(M.to_bits())
        R = np.zeros(M.shape, dtype=np.int64)
        if rows:
            R[: len(rows)] = unpack_rows(rows, M.cols)
        return FqMatrix(R, 2), len(pivots), pivots
    if method != "generic":
        raise ParameterError(f"unknown elimination method {method!r}")
    R, pivots = _rref_array(M.array, M.q)
    return FqMatrix(R, M.q), len(pivots), pivots


def rank(M: FqMatrix) -> int:
    if M.q == 2:
        return rank_bits(M.to_bits())
    return rref(M)[1]


def is_full_rank(M: FqMatrix) -> bool:
    return rank(M) == min(M.rows, M.cols)


def random_matrix(rows: int, cols: int, q: int, rng: np.random.Generator) -> FqMatrix:
    return FqMatrix(rng.integers(0, q, size=(rows, cols)), q)


def kernel(M: FqMatrix) -> FqMatrix:
    """Basis of the right null space {x : M x = 0}, one vector per row."""
    R, r, pivots = rref(M)
    q = M.q
    free = [c for c in range(M.cols) if c not in set(pivots)]
    K = np.zeros((len(free), M.cols), dtype=np.int64)
    Ra = R.array
    for idx, f in enumerate(free):
        K[idx, f] = 1
        for i, p in enumerate(pivots):
            K[idx, p] = (-Ra[i, f]) % q
    return FqMatrix(K, q)


def solve(A: FqMatrix, b: Sequence[int]) -> np.ndarray:
    """Unique solution x of A x = b.

    Raises :class:`NoSolution` if the system is inconsistent and
    :class:`Underdetermined` if it has several solutions.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != A.rows:
        raise ParameterError(f"right-hand side has length {b.shape[0]}, expected {A.rows}")
    aug = FqMatrix(np.hstack([A.array, b[:, None]]), A.q)
    R, r, pivots = rref(aug, method="generic")
    if pivots and pivots[-1] == A.cols:
        raise NoSolution("inconsistent linear system")
    if r < A.cols:
        raise Underdetermined(f"rank {r} < {A.cols} unknowns")
    x = np.zeros(A.cols, dtype=np.int64)
    x[pivots] = R.array[:r, -1]
    return x


class Solver:
    """Row-reduction of A computed once, reused for many right-hand sides.

    Stores the transform P with P A = rref(A); a right-hand side b is consistent
    iff the rows of P b below the rank vanish.
    """

    def __init__(self, A: FqMatrix):
        self.q = A.q
        self.rows, self.cols = A.shape
        aug = A.hstack(FqMatrix.identity(A.rows, A.q))
        R, _, pivots = rref(aug)
        self.pivots = [p for p in pivots if p < A.cols]
        self.rank = len(self.pivots)
        P = R.array[:, A.cols:]
        self._reduce = P[: self.rank]
        self._check = P[self.rank:]
        if self.q == 2:
            self._reduce_bits = pack_rows(self._reduce)
            self._check_bits = [c for c in pack_rows(self._check) if c]

    def solve(self, b: Sequence[int]) -> np.ndarray:
        b = np.asarray(b, dtype=np.int64).reshape(-1)
        if b.shape[0] != self.rows:
            raise ParameterError(f"right-hand side has length {b.shape[0]}, expected {self.rows}")
        if self._check.size and np.any((self._check @ b) % self.q):
            raise NoSolution("inconsistent linear system")
        if self.rank < self.cols:
            raise Underdetermined(f"rank {self.rank} < {self.cols} unknowns")
        x = np.zeros(self.cols, dtype=np.int64)
        x[self.pivots] = (self._reduce @ b) % self.q
        return x

    def solve_bits(self, b: int) -> int:
        """q = 2 variant: ``b`` and the result are packed vectors."""
        for c in self._check_bits:
            if (c & b).bit_count() & 1:
                raise NoSolution("inconsistent linear system")
        if self.rank < self.cols:
            raise Underdetermined(f"rank {self.rank} < {self.cols} unknowns")
        x = 0
        for p, row in zip(self.pivots, self._reduce_bits):
            if (row & b).bit_count() & 1:
                x |= 1 << p
        return x
