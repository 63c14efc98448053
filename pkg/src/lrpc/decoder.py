"""Three-step decoder for u-interleaved LRPC codes (u = 1 is the plain LRPC decoder).

1. syndrome space S' = supp(s^(1), ..., s^(u)),
2. support estimate E = phi_1^-1 S' ∩ ... ∩ phi_λ^-1 S',
3. erasure decoding: expand every syndrome entry in the basis {phi_l gamma_r}
   and solve H_ext · e_{:, r}^(w) = s_{:, :, r}^(w) for every block w and r.

A decoded word is always re-checked against H before it is reported.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import LrpcCode
from .errors import ParameterError
from .linalg import NoSolution, Underdetermined
from .subspace import Coordinates, Subspace, intersect_all, product_space, scalar_inverse_space, support


class FailureReason(str, enum.Enum):
    SUPPORT_TOO_LARGE = "support_too_large"
    PRODUCT_SPACE_DEFICIENT = "product_space_deficient"
    SUPPORT_MISMATCH = "support_mismatch"
    SYSTEM_UNSOLVABLE = "system_unsolvable"
    VERIFICATION_MISMATCH = "verification_mismatch"

    @property
    def event(self) -> str:
        """Failure-count column this reason is reported under."""
        return _EVENT_OF[self]


_EVENT_OF = {
    FailureReason.SUPPORT_TOO_LARGE: "product",
    FailureReason.PRODUCT_SPACE_DEFICIENT: "product",
    FailureReason.SUPPORT_MISMATCH: "intersection",
    FailureReason.SYSTEM_UNSOLVABLE: "solve",
    FailureReason.VERIFICATION_MISMATCH: "verify",
}
EVENTS = ("product", "intersection", "solve", "verify")


class DecodingFailure(Exception):
    def __init__(self, reason: FailureReason, message: str = ""):
        super().__init__(message or reason.value)
        self.reason = reason


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one decoding attempt.  ``reason`` is None on success."""

    codeword: tuple[int, ...] | None
    error: tuple[int, ...] | None
    reason: FailureReason | None
    syndrome_space: Subspace | None = None
    support: Subspace | None = None

    @property
    def success(self) -> bool:
        return self.reason is None


@dataclass(frozen=True)
class SyndromeExpansion:
    """coeffs[w, i, l, r]: coefficient of phi_l * gamma_r in syndrome entry s_i^(w)."""

    coeffs: np.ndarray

    def reassemble(self, code: LrpcCode, gamma: Sequence[int]) -> list[list[int]]:
        f = code.params.field
        u, r, lam, t = self.coeffs.shape
        basis = [f.mul(code.phi[l], gamma[j]) for l in range(lam) for j in range(t)]
        return [[f.combine(self.coeffs[w, i].reshape(-1).tolist(), basis) for i in range(r)] for w in range(u)]


def syndrome_space(code: LrpcCode, y: Sequence[int]) -> tuple[list[list[int]], Subspace]:
    """Per-block syndromes and the span S' of all their entries."""
    syn = code.syndromes(y)
    return syn, support(code.params.field, (s for block in syn for s in block))


def recover_support(S: Subspace, phi: Sequence[int]) -> Subspace:
    """Intersection of phi_l^-1 S over all l."""
    return intersect_all([scalar_inverse_space(p, S) for p in phi])


def _product_coordinates(code: LrpcCode, gamma: Sequence[int]) -> Coordinates:
    f = code.params.field
    t = len(gamma)
    if code.params.lam * t > f.m:
        raise DecodingFailure(
            FailureReason.SUPPORT_TOO_LARGE, f"λ·dim(E) = {code.params.lam * t} exceeds m = {f.m}"
        )
    basis = [f.mul(p, g) for p in code.phi for g in gamma]
    coords = Coordinates(f, basis)
    if not coords.independent:
        raise DecodingFailure(FailureReason.PRODUCT_SPACE_DEFICIENT, "dim(F·E) < λ·dim(E)")
    return coords


def expand_syndrome(code: LrpcCode, syndromes: Sequence[Sequence[int]], gamma: Sequence[int]) -> SyndromeExpansion:
    """Coordinates of every syndrome entry in the product basis {phi_l * gamma_r}."""
    p = code.params
    t = len(gamma)
    if len(syndromes) != p.u:
        raise ParameterError(f"expected {p.u} syndrome blocks, got {len(syndromes)}")
    coords = _product_coordinates(code, gamma)
    out = np.zeros((p.u, p.r, p.lam, t), dtype=np.int64)
    try:
        for w, block in enumerate(syndromes):
            for i, s in enumerate(block):
                out[w, i] = np.reshape(coords.of(s), (p.lam, t))
    except NoSolution:
        raise DecodingFailure(FailureReason.SUPPORT_MISMATCH, "syndrome outside F·E") from None
    return SyndromeExpansion(out)


def solve_error(code: LrpcCode, expansion: SyndromeExpansion, gamma: Sequence[int]) -> list[list[int]]:
    """Error blocks from the expanded syndromes, one H_ext solve per (block, r)."""
    p = code.params
    f = p.field
    solver = code.h_ext_solver
    u, _, _, t = expansion.coeffs.shape
    blocks = []
    for w in range(u):
        # rows of the right-hand side are (i, l) in i-major order
        rhs = expansion.coeffs[w].reshape(p.r * p.lam, t)
        e = [0] * p.n
        for r in range(t):
            try:
                x = solver.solve(rhs[:, r])
            except NoSolution:
                raise DecodingFailure(FailureReason.SYSTEM_UNSOLVABLE, "H_ext system inconsistent") from None
            except Underdetermined:  # pragma: no cover - excluded by keygen
                raise DecodingFailure(FailureReason.SYSTEM_UNSOLVABLE, "H_ext rank deficient") from None
            for j, c in enumerate(x.tolist()):
                if c:
                    e[j] = f.add(e[j], f.scale(c, gamma[r]))
        blocks.append(e)
    return blocks


def _solve_binary(code: LrpcCode, syndromes, gamma) -> list[list[int]]:
    # q = 2 fast path of expand_syndrome + solve_error on packed vectors
    p = code.params
    lam, t, r_ = p.lam, len(gamma), p.r
    coords = _product_coordinates(code, gamma)
    solver = code.h_ext_solver
    blocks = []
    for block in syndromes:
        try:
            tags = [coords.of_bits(s) for s in block]
        except NoSolution:
            raise DecodingFailure(FailureReason.SUPPORT_MISMATCH, "syndrome outside F·E") from None
        e = [0] * p.n
        for r in range(t):
            b = 0
            for i in range(r_):
                tag = tags[i]
                if tag:
                    for l in range(lam):
                        if (tag >> (l * t + r)) & 1:
                            b |= 1 << (i * lam + l)
            try:
                x = solver.solve_bits(b)
            except NoSolution:
                raise DecodingFailure(FailureReason.SYSTEM_UNSOLVABLE, "H_ext system inconsistent") from None
            g = gamma[r]
            while x:
                j = (x & -x).bit_length() - 1
                e[j] ^= g
                x &= x - 1
        blocks.append(e)
    return blocks


def decode(code: LrpcCode, y: Sequence[int]) -> DecodeOutcome:
    p = code.params
    f = p.field
    if len(y) != p.N:
        raise ParameterError(f"received word has length {len(y)}, expected u*n = {p.N}")
    syn, S = syndrome_space(code, y)
    E = recover_support(S, code.phi)
    gamma = E.basis
    try:
        if f.q == 2:
            blocks = _solve_binary(code, syn, gamma)
        else:
            blocks = solve_error(code, expand_syndrome(code, syn, gamma), gamma)
    except DecodingFailure as exc:
        return DecodeOutcome(None, None, exc.reason, S, E)
    error = tuple(x for b in blocks for x in b)
    codeword = tuple(f.sub(a, b) for a, b in zip(y, error))
    if not code.is_codeword(codeword):
        return DecodeOutcome(None, None, FailureReason.VERIFICATION_MISMATCH, S, E)
    return DecodeOutcome(codeword, error, None, S, E)


def failure_events(code: LrpcCode, E: Subspace, S: Subspace) -> dict[str, bool]:
    """The three failure conditions evaluated with the true support E.

    ``product``: dim(F E) < λt, ``intersection``: ∩ phi_l^-1 S' != E,
    ``syndrome``: dim(S') < λt.
    """
    lam_t = code.params.lam * E.dim
    F = Subspace.span(code.params.field, code.phi)
    return {
        "product": product_space(F, E).dim < lam_t,
        "intersection": recover_support(S, code.phi) != E,
        "syndrome": S.dim < lam_t,
    }
