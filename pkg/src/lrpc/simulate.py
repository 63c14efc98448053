"""Monte-Carlo decoding-failure-rate campaigns.

One code is drawn per campaign.  For every error rank t, trials run in index
order until ``stop_failures`` failures are collected or ``max_trials`` is hit.
Trial i at rank t draws all of its randomness from a generator seeded by
(master seed, t, i), so the records do not depend on the worker count.
"""
from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .channel import apply, sample_error
from .code import CodeParams, LrpcCode, keygen
from .decoder import EVENTS, DecodeOutcome, FailureReason, decode
from .errors import ParameterError

log = logging.getLogger(__name__)

CSV_HEADER = ["t", "trials", "failures", "fer", "e_product", "e_intersection", "e_solve", "e_verify"]

_KEYGEN_STREAM = 0
_TRIAL_STREAM = 1


@dataclass(frozen=True)
class SimConfig:
    params: CodeParams
    t_values: Sequence[int]
    stop_failures: int = 100
    max_trials: int = 1_000_000
    seed: int = 0
    workers: int = 1
    batch_size: int = 512

    def __post_init__(self):
        if self.stop_failures < 1:
            raise ParameterError("stop_failures must be >= 1")
        if self.max_trials < self.stop_failures:
            raise ParameterError("max_trials must be >= stop_failures")
        if self.workers < 1 or self.batch_size < 1:
            raise ParameterError("workers and batch_size must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be a 64-bit unsigned integer")


@dataclass
class SimRecord:
    t: int
    trials: int = 0
    failures: int = 0
    events: dict[str, int] = field(default_factory=lambda: dict.fromkeys(EVENTS, 0))
    wall_time: float = 0.0

    @property
    def fer(self) -> float:
        return self.failures / self.trials if self.trials else 0.0

    def row(self) -> list:
        return [self.t, self.trials, self.failures, repr(self.fer)] + [self.events[e] for e in EVENTS]


def keygen_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_KEYGEN_STREAM,)))


def trial_rng(seed: int, t: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_TRIAL_STREAM, t, index)))


def run_trial(code: LrpcCode, t: int, rng: np.random.Generator) -> DecodeOutcome:
    """Encode a random message, add a rank-t error, decode and classify.

    A verified decoding to a codeword other than the transmitted one counts
    as a VERIFICATION_MISMATCH failure.
    """
    f = code.params.field
    c = code.encode(code.random_message(rng))
    err = sample_error(t, code.params, rng)
    y = apply(c, err, f)
    out = decode(code, y)
    if out.success and list(out.codeword) != c:
        return DecodeOutcome(None, None, FailureReason.VERIFICATION_MISMATCH, out.syndrome_space, out.support)
    return out


# worker-process state; the code is shipped once per process
_worker_code: LrpcCode | None = None


def _init_worker(code: LrpcCode) -> None:
    global _worker_code
    _worker_code = code


def _run_range(seed: int, t: int, start: int, stop: int, code: LrpcCode | None = None) -> list[str | None]:
    code = code or _worker_code
    out = []
    for i in range(start, stop):
        res = run_trial(code, t, trial_rng(seed, t, i))
        out.append(None if res.success else res.reason.event)
    return out


def _campaign_for_t(cfg: SimConfig, code: LrpcCode, t: int, pool) -> SimRecord:
    rec = SimRecord(t)
    start = time.perf_counter()
    index = 0
    while rec.failures < cfg.stop_failures and index < cfg.max_trials:
        stop = min(index + cfg.batch_size, cfg.max_trials)
        if pool is None:
            outcomes = _run_range(cfg.seed, t, index, stop, code)
        else:
            step = -(-(stop - index) // cfg.workers)
            bounds = [(a, min(a + step, stop)) for a in range(index, stop, step)]
            futures = [pool.submit(_run_range, cfg.seed, t, a, b) for a, b in bounds]
            outcomes = [o for fut in futures for o in fut.result()]
        for event in outcomes:
            rec.trials += 1
            if event is not None:
                rec.failures += 1
                rec.events[event] += 1
                if rec.failures >= cfg.stop_failures:
                    break
        index = stop
    rec.wall_time = time.perf_counter() - start
    log.info("t=%d trials=%d failures=%d fer=%.3e (%.1fs)", t, rec.trials, rec.failures, rec.fer, rec.wall_time)
    return rec


def run_campaign(cfg: SimConfig, code: LrpcCode | None = None) -> list[SimRecord]:
    """Run every t in ``cfg.t_values`` against one code (drawn from the seed unless given)."""
    if code is None:
        code = keygen(cfg.params, keygen_rng(cfg.seed))
    elif code.params != cfg.params:
        raise ParameterError("supplied code does not match the campaign parameters")
    for t in cfg.t_values:
        if not 0 <= t <= min(cfg.params.field.m, cfg.params.N):
            raise ParameterError(f"error rank t={t} is not realisable")
    if cfg.workers == 1:
        return [_campaign_for_t(cfg, code, t, None) for t in cfg.t_values]
    with ProcessPoolExecutor(cfg.workers, initializer=_init_worker, initargs=(code,)) as pool:
        return [_campaign_for_t(cfg, code, t, pool) for t in cfg.t_values]


def write_csv(records: Iterable[SimRecord], out: str | TextIO) -> None:
    if isinstance(out, str):
        with open(out, "w", newline="") as fh:
            write_csv(records, fh)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.row())


def records_to_csv(records: Iterable[SimRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
