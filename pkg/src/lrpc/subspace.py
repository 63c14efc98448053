"""F_q-linear subspaces of F_{q^m}.

A :class:`Subspace` keeps its basis in canonical form: the reduced row echelon
form of the coefficient matrix (one row per basis element, column i holding
the coefficient of a^i), without zero rows.  Two subspaces are equal exactly
when their canonical bases are identical.
"""
from __future__ import annotations

from functools import reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ParameterError
from .field import Field
from .linalg import FqMatrix, NoSolution, Solver, rank_bits, rref, rref_bits


def _canonical(field: Field, elements: Iterable[int]) -> tuple[int, ...]:
    if field.q == 2:
        return tuple(rref_bits(elements)[0])
    elems = list(elements)
    if not elems:
        return ()
    M = FqMatrix([field.to_coeffs(e) for e in elems], field.q)
    R, r, _ = rref(M)
    return tuple(field.from_coeffs(row) for row in R.array[:r].tolist())


class Subspace:
    __slots__ = ("field", "basis")

    def __init__(self, field: Field, basis: tuple[int, ...]):
        # basis must already be canonical; use Subspace.span otherwise
        self.field = field
        self.basis = basis

    @classmethod
    def span(cls, field: Field, elements: Iterable[int]) -> Subspace:
        return cls(field, _canonical(field, elements))

    @classmethod
    def zero(cls, field: Field) -> Subspace:
        return cls(field, ())

    @classmethod
    def full(cls, field: Field) -> Subspace:
        return cls.span(field, (field.q**i for i in range(field.m)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> FqMatrix:
        if not self.basis:
            return FqMatrix.zeros(0, self.field.m, self.field.q)
        return FqMatrix([self.field.to_coeffs(b) for b in self.basis], self.field.q)

    def elements(self) -> Iterator[int]:
        """Every element of the subspace (q**dim of them)."""
        f = self.field
        if f.q == 2:
            yield 0
            acc = 0
            # Gray-code walk
            for i in range(1, 1 << self.dim):
                acc ^= self.basis[(i & -i).bit_length() - 1]
                yield acc
            return
        for idx in range(f.q**self.dim):
            coeffs = [(idx // f.q**i) % f.q for i in range(self.dim)]
            yield f.combine(coeffs, self.basis)

    def __contains__(self, x: int) -> bool:
        return contains(self, x)

    def _check(self, other: Subspace):
        if other.field != self.field:
            raise ParameterError("subspaces of different fields")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.basis == other.basis

    def __hash__(self):
        return hash((self.field.q, self.field.m, self.basis))

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, self.basis + other.basis)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def __mul__(self, other: Subspace) -> Subspace:
        return product_space(self, other)

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(contains(other, b) for b in self.basis)

    def __le__(self, other: Subspace) -> bool:
        return self.issubspace(other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={list(self.basis)})"


def support(field: Field, vector: Iterable[int]) -> Subspace:
    """F_q-span of the entries of a vector over F_{q^m}; its dim is the rank weight."""
    return Subspace.span(field, vector)


def rank_weight(field: Field, vector: Iterable[int]) -> int:
    if field.q == 2:
        return rank_bits(vector)
    return support(field, vector).dim


def product_space(A: Subspace, B: Subspace) -> Subspace:
    A._check(B)
    mul = A.field.mul
    return Subspace.span(A.field, (mul(a, b) for a in A.basis for b in B.basis))


def scale_space(phi: int, S: Subspace) -> Subspace:
    """phi * S; dimension is preserved for phi != 0."""
    mul = S.field.mul
    return Subspace.span(S.field, (mul(phi, s) for s in S.basis))


def scalar_inverse_space(phi: int, S: Subspace) -> Subspace:
    """phi^-1 * S."""
    if phi == 0:
        raise ZeroDivisionError("cannot divide a subspace by zero")
    return scale_space(S.field.inv(phi), S)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B by the Zassenhaus construction: echelonise [[A, A], [B, 0]]."""
    A._check(B)
    f = A.field
    if not A.basis or not B.basis:
        return Subspace.zero(f)
    m = f.m
    if f.q == 2:
        low = (1 << m) - 1
        rows = [a | (a << m) for a in A.basis]
        rows.extend(B.basis)
        reduced, _ = rref_bits(rows)
        return Subspace.span(f, (r >> m for r in reduced if not r & low))
    Am = A.matrix.array
    Bm = B.matrix.array
    top = np.hstack([Am, Am])
    bottom = np.hstack([Bm, np.zeros_like(Bm)])
    R, r, pivots = rref(FqMatrix(np.vstack([top, bottom]), f.q))
    rows = [R.array[i, m:] for i, p in enumerate(pivots) if p >= m]
    return Subspace.span(f, (f.from_coeffs(row.tolist()) for row in rows))


def intersect_all(spaces: Sequence[Subspace]) -> Subspace:
    return reduce(intersect, spaces)


def contains(S: Subspace, x: int) -> bool:
    f = S.field
    if f.q == 2:
        for b in S.basis:
            if (x >> ((b & -b).bit_length() - 1)) & 1:
                x ^= b
        return x == 0
    return len(_canonical(f, S.basis + (x,))) == S.dim


def random_subspace(field: Field, d: int, rng: np.random.Generator) -> Subspace:
    """Uniformly random d-dimensional subspace (rejection on dependent draws)."""
    if not 0 <= d <= field.m:
        raise ParameterError(f"subspace dimension {d} outside [0, {field.m}]")
    while True:
        S = Subspace.span(field, field.random_many(rng, d))
        if S.dim == d:
            return S


def random_element_of(S: Subspace, rng: np.random.Generator) -> int:
    coeffs = rng.integers(0, S.field.q, size=S.dim).tolist()
    return S.field.combine(coeffs, S.basis)


class Coordinates:
    """Coordinates of field elements with respect to a fixed list of elements.

    ``independent`` tells whether the list is F_q-linearly independent; only
    then are coordinates unique and :meth:`of` usable.
    """

    def __init__(self, field: Field, elements: Sequence[int]):
        self.field = field
        self.elements = tuple(elements)
        if field.q == 2:
            pivots: dict[int, tuple[int, int]] = {}
            independent = True
            for i, e in enumerate(self.elements):
                tag = 1 << i
                while e:
                    p = (e & -e).bit_length() - 1
                    hit = pivots.get(p)
                    if hit is None:
                        pivots[p] = (e, tag)
                        break
                    e ^= hit[0]
                    tag ^= hit[1]
                else:
                    independent = False
            self._pivots = pivots
            self.independent = independent
        else:
            cols = [field.to_coeffs(e) for e in self.elements]
            A = FqMatrix(np.array(cols, dtype=np.int64).T.reshape(field.m, len(cols)), field.q)
            self._solver = Solver(A)
            self.independent = self._solver.rank == len(self.elements)

    def of_bits(self, x: int) -> int:
        """q = 2: packed coordinate vector of x; raises NoSolution if x is outside the span."""
        tag = 0
        pivots = self._pivots
        while x:
            p = (x & -x).bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                raise NoSolution("element not in the span")
            x ^= hit[0]
            tag ^= hit[1]
        return tag

    def of(self, x: int) -> tuple[int, ...]:
        if not self.independent:
            raise ParameterError("coordinates are not unique for a dependent list")
        n = len(self.elements)
        if self.field.q == 2:
            tag = self.of_bits(x)
            return tuple((tag >> i) & 1 for i in range(n))
        return tuple(self._solver.solve(self.field.to_coeffs(x)).tolist())
