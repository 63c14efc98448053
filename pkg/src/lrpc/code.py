"""LRPC codes and their u-fold horizontal interleaving.

A code is described by a basis ``phi`` of the low-rank space F and by the
coefficient tensor ``h_coeffs[i, j, l]`` over F_q, giving the parity-check
matrix entries ``H[i][j] = sum_l h_coeffs[i, j, l] * phi[l]``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ConstructionError, ParameterError
from .field import Field
from .linalg import FqMatrix, Solver, rank
from .subspace import Coordinates, Subspace

FORMAT_NAME = "interleaved-lrpc-code"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    lam: int
    field: Field
    u: int = 1

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ParameterError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        if self.lam < 1:
            raise ParameterError("lambda must be >= 1")
        if self.u < 1:
            raise ParameterError("interleaving order u must be >= 1")

    @property
    def r(self) -> int:
        """Number of parity checks n - k of a component code."""
        return self.n - self.k

    @property
    def N(self) -> int:
        return self.u * self.n

    @property
    def K(self) -> int:
        return self.u * self.k

    @property
    def admissible(self) -> bool:
        """Whether H_ext can have full column rank, i.e. lambda >= n / (n - k)."""
        return self.lam * (self.n - self.k) >= self.n


# ---------------------------------------------------------------------------
# matrices over F_{q^m}

def ext_rref(field: Field, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_{q^m}; returns nonzero rows and pivots."""
    A = [list(r) for r in rows]
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def ext_kernel(field: Field, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : M x^T = 0} over F_{q^m}."""
    R, pivots = ext_rref(field, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = field.neg(R[i][f])
        basis.append(v)
    return basis


def vec_mat_t(field: Field, v: Sequence[int], M: Sequence[Sequence[int]]) -> list[int]:
    """v · M^T over F_{q^m}."""
    out = []
    for row in M:
        acc = 0
        for a, b in zip(v, row):
            if a and b:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def expand_coefficients(field: Field, phi: Sequence[int], H: Sequence[Sequence[int]]) -> np.ndarray:
    """Recover h_coeffs[i, j, l] from H by solving in the basis phi."""
    coords = Coordinates(field, phi)
    if not coords.independent:
        raise ParameterError("phi is not linearly independent")
    out = np.zeros((len(H), len(H[0]), len(phi)), dtype=np.int64)
    for i, row in enumerate(H):
        for j, h in enumerate(row):
            out[i, j] = coords.of(h)
    return out


def build_h_ext(h_coeffs: np.ndarray, q: int) -> FqMatrix:
    """(n-k)λ x n matrix; row i*λ + l holds h_coeffs[i, :, l]."""
    r, n, lam = h_coeffs.shape
    return FqMatrix(np.transpose(h_coeffs, (0, 2, 1)).reshape(r * lam, n), q)


def h_ext_full_rank_prob(params: CodeParams) -> float:
    """Probability that a uniform (n-k)λ x n matrix over F_q has rank n."""
    rows = params.r * params.lam
    n, q = params.n, params.field.q
    if rows < n:
        return 0.0
    # prod_{j=1}^{n} (1 - q^{j-1-rows}), summed in log space
    logp = math.fsum(math.log1p(-float(q) ** (j - 1 - rows)) for j in range(1, n + 1))
    return math.exp(logp)


class _Gf2mLinearMap:
    """Fast v -> v·M for q = 2, a x b matrix M over F_{2^m}, via per-bit tables."""

    def __init__(self, field: Field, M: Sequence[Sequence[int]]):
        m = field.m
        a = len(M)
        b = len(M[0]) if a else 0
        T = np.zeros((a, m, b), dtype=np.uint64)
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                y = x
                for bit in range(m):
                    T[i, bit, j] = y
                    y = field.mul(y, 2) if m > 1 else y
        self._T = T.reshape(a * m, b)
        self._shifts = np.arange(m, dtype=np.uint64)
        self._b = b

    def __call__(self, v: Sequence[int]) -> list[int]:
        bits = ((np.asarray(v, dtype=np.uint64)[:, None] >> self._shifts) & np.uint64(1)).astype(bool)
        sel = self._T[bits.reshape(-1)]
        if sel.shape[0] == 0:
            return [0] * self._b
        return np.bitwise_xor.reduce(sel, axis=0).tolist()


@dataclass(frozen=True, eq=False)
class LrpcCode:
    params: CodeParams
    phi: tuple[int, ...]
    h_coeffs: np.ndarray
    H: tuple[tuple[int, ...], ...] = dc_field(init=False)
    h_ext: FqMatrix = dc_field(init=False)
    gen: tuple[tuple[int, ...], ...] = dc_field(init=False)

    def __post_init__(self):
        p = self.params
        f = p.field
        hc = np.asarray(self.h_coeffs, dtype=np.int64) % f.q
        if hc.shape != (p.r, p.n, p.lam) or len(self.phi) != p.lam:
            raise ParameterError("coefficient tensor / phi do not match the code parameters")
        hc.setflags(write=False)
        object.__setattr__(self, "h_coeffs", hc)
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))
        H = tuple(
            tuple(f.combine(hc[i, j].tolist(), self.phi) for j in range(p.n)) for i in range(p.r)
        )
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "h_ext", build_h_ext(hc, f.q))
        object.__setattr__(self, "gen", tuple(tuple(row) for row in self._generator()))

    def _generator(self) -> list[list[int]]:
        f = self.params.field
        K = ext_kernel(f, self.H, self.params.n)
        if not K:
            return []
        G, _ = ext_rref(f, K)
        return G

    # -- derived data shared by all decodes --------------------------------
    @cached_property
    def h_ext_solver(self) -> Solver:
        return Solver(self.h_ext)

    @cached_property
    def _check_index(self) -> list[list[int]]:
        # for each (i, l) row of h_ext the columns j with h_{i,j,l} = 1 (q = 2)
        return [np.flatnonzero(row).tolist() for row in self.h_ext.array]

    @cached_property
    def _encoder(self):
        if self.params.field.q == 2 and self.params.field.m <= 63:
            return _Gf2mLinearMap(self.params.field, self.gen)
        return None

    @property
    def support_space(self) -> Subspace:
        """F, the span of all parity-check entries."""
        return Subspace.span(self.params.field, (h for row in self.H for h in row))

    # -- block operations --------------------------------------------------
    def syndrome(self, y_block: Sequence[int]) -> list[int]:
        """s = y·H^T for one component block of length n."""
        p = self.params
        if len(y_block) != p.n:
            raise ParameterError(f"block length {len(y_block)} != n = {p.n}")
        f = p.field
        if f.q != 2:
            return vec_mat_t(f, y_block, self.H)
        # s_i = sum_l phi_l * (sum_j h_{i,j,l} y_j)
        lam = p.lam
        idx = self._check_index
        mul = f.mul
        out = []
        for i in range(p.r):
            s = 0
            for l in range(lam):
                acc = 0
                for j in idx[i * lam + l]:
                    acc ^= y_block[j]
                if acc:
                    s ^= mul(self.phi[l], acc)
            out.append(s)
        return out

    def encode_block(self, msg: Sequence[int]) -> list[int]:
        p = self.params
        if len(msg) != p.k:
            raise ParameterError(f"message block length {len(msg)} != k = {p.k}")
        if self._encoder is not None:
            return self._encoder(msg)
        f = p.field
        out = [0] * p.n
        for a, row in zip(msg, self.gen):
            if a:
                for j, g in enumerate(row):
                    if g:
                        out[j] = f.add(out[j], f.mul(a, g))
        return out

    # -- interleaved operations --------------------------------------------
    def blocks(self, word: Sequence[int]) -> list[list[int]]:
        p = self.params
        if len(word) != p.N:
            raise ParameterError(f"word length {len(word)} != u*n = {p.N}")
        return [list(word[w * p.n:(w + 1) * p.n]) for w in range(p.u)]

    def encode(self, msg: Sequence[int]) -> list[int]:
        """Block-diagonal encoding of u*k message symbols into u*n code symbols."""
        p = self.params
        if len(msg) != p.K:
            raise ParameterError(f"message length {len(msg)} != u*k = {p.K}")
        out: list[int] = []
        for w in range(p.u):
            out.extend(self.encode_block(msg[w * p.k:(w + 1) * p.k]))
        return out

    def syndromes(self, word: Sequence[int]) -> list[list[int]]:
        return [self.syndrome(b) for b in self.blocks(word)]

    def is_codeword(self, word: Sequence[int]) -> bool:
        return all(not any(s) for s in self.syndromes(word))

    def random_message(self, rng: np.random.Generator) -> list[int]:
        return self.params.field.random_many(rng, self.params.K)

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        p = self.params
        f = p.field
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "q": f.q,
            "m": f.m,
            "modulus": list(f.modulus),
            "n": p.n,
            "k": p.k,
            "lambda": p.lam,
            "u": p.u,
            "phi": [list(f.to_coeffs(x)) for x in self.phi],
            "h_coeffs": self.h_coeffs.tolist(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> LrpcCode:
        if d.get("format") != FORMAT_NAME:
            raise ParameterError(f"not a serialised code (format={d.get('format')!r})")
        if d.get("version") != FORMAT_VERSION:
            raise ParameterError(f"unsupported code format version {d.get('version')!r}")
        f = Field(d["q"], d["m"], tuple(d["modulus"]))
        params = CodeParams(d["n"], d["k"], d["lambda"], f, d.get("u", 1))
        phi = tuple(f.from_coeffs(c) for c in d["phi"])
        return cls(params, phi, np.array(d["h_coeffs"], dtype=np.int64))

    @classmethod
    def loads(cls, s: str) -> LrpcCode:
        return cls.from_dict(json.loads(s))

    def __eq__(self, other):
        if not isinstance(other, LrpcCode):
            return NotImplemented
        return (
            self.params == other.params
            and self.phi == other.phi
            and np.array_equal(self.h_coeffs, other.h_coeffs)
        )

    __hash__ = None


def check_code(code: LrpcCode) -> list[str]:
    """Structural problems of a code; empty for a decodable code."""
    p = code.params
    f = p.field
    problems = []
    coeff_rows = code.h_coeffs.reshape(-1, p.lam)
    span_dim = rank(FqMatrix(coeff_rows, f.q))
    if Subspace.span(f, code.phi).dim != p.lam or span_dim != p.lam:
        problems.append("support of H has dimension < lambda")
    if len(ext_rref(f, code.H)[1]) != p.r:
        problems.append("H is not of full rank n-k")
    if rank(code.h_ext) != p.n:
        problems.append("H_ext is not of full rank n")
    return problems


def keygen(params: CodeParams, rng: np.random.Generator, max_attempts: int = 100) -> LrpcCode:
    """Draw a random LRPC code whose H_ext has full rank n."""
    if not params.admissible:
        raise ConstructionError(
            f"lambda={params.lam} < n/(n-k) = {params.n}/{params.r}: H_ext cannot have rank n"
        )
    f = params.field
    for _ in range(max_attempts):
        while True:
            phi = f.random_many(rng, params.lam)
            if Subspace.span(f, phi).dim == params.lam:
                break
        h_coeffs = rng.integers(0, f.q, size=(params.r, params.n, params.lam))
        if rank(build_h_ext(h_coeffs, f.q)) != params.n:
            continue
        code = LrpcCode(params, tuple(phi), h_coeffs)
        if not check_code(code):
            return code
    raise ConstructionError(f"no valid parity-check matrix after {max_attempts} attempts")
