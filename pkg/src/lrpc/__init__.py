"""Decoding of horizontally interleaved Low-Rank Parity-Check (LRPC) codes."""
from .bounds import BoundReport, complexity_estimate, union_bound
from .channel import RankError, apply, sample_error
from .code import CodeParams, LrpcCode, h_ext_full_rank_prob, keygen
from .decoder import DecodeOutcome, FailureReason, decode
from .errors import ConstructionError, ParameterError
from .field import Field, FieldElement
from .linalg import FqMatrix, NoSolution, Underdetermined
from .simulate import SimConfig, SimRecord, run_campaign, run_trial, write_csv
from .subspace import Subspace

__all__ = [
    "BoundReport", "CodeParams", "ConstructionError", "DecodeOutcome", "FailureReason", "Field",
    "FieldElement", "FqMatrix", "LrpcCode", "NoSolution", "ParameterError", "RankError", "SimConfig",
    "SimRecord", "Subspace", "Underdetermined", "apply", "complexity_estimate", "decode",
    "h_ext_full_rank_prob", "keygen", "run_campaign", "run_trial", "sample_error", "union_bound",
    "write_csv",
]
