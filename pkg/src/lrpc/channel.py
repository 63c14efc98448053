"""Rank-error channel for interleaved codes: all u blocks share one error support."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import CodeParams
from .errors import ParameterError
from .linalg import FqMatrix, rank
from .subspace import Subspace, random_subspace


@dataclass(frozen=True)
class RankError:
    """An interleaved error e = (gamma_1..gamma_t) · (E1^T ... Eu^T).

    ``coeffs`` has shape (u, n, t): coeffs[w, j, r] is the coefficient of
    gamma_r in entry j of block w.
    """

    support: Subspace
    gamma: tuple[int, ...]
    coeffs: np.ndarray
    error: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.gamma)

    def block(self, w: int) -> tuple[int, ...]:
        n = self.coeffs.shape[1]
        return self.error[w * n:(w + 1) * n]


def sample_error(t: int, params: CodeParams, rng: np.random.Generator) -> RankError:
    """Uniform support of dimension t, then a uniform rank-t (u*n) x t coefficient matrix."""
    f = params.field
    N = params.N
    if not 0 <= t <= min(f.m, N):
        raise ParameterError(f"error rank t={t} outside [0, min(m, u*n)] = [0, {min(f.m, N)}]")
    if t == 0:
        return RankError(Subspace.zero(f), (), np.zeros((params.u, params.n, 0), dtype=np.int64), (0,) * N)
    E = random_subspace(f, t, rng)
    gamma = E.basis
    while True:
        C = rng.integers(0, f.q, size=(N, t))
        if rank(FqMatrix(C, f.q)) == t:
            break
    error = tuple(f.combine(row, gamma) for row in C.tolist())
    coeffs = C.reshape(params.u, params.n, t)
    coeffs.setflags(write=False)
    return RankError(E, gamma, coeffs, error)


def apply(codeword: Sequence[int], err: RankError | Sequence[int], field) -> list[int]:
    """y = c + e."""
    e = err.error if isinstance(err, RankError) else err
    if len(codeword) != len(e):
        raise ParameterError(f"codeword length {len(codeword)} != error length {len(e)}")
    if field.q == 2:
        return [a ^ b for a, b in zip(codeword, e)]
    return [field.add(a, b) for a, b in zip(codeword, e)]
