import numpy as np
import pytest

from lrpc.channel import apply, sample_error
from lrpc.code import CodeParams, keygen
from lrpc.decoder import (
    EVENTS, DecodingFailure, FailureReason, SyndromeExpansion, _solve_binary, decode, expand_syndrome,
    failure_events, recover_support, solve_error, syndrome_space,
)
from lrpc.errors import ParameterError
from lrpc.field import Field
from lrpc.subspace import Subspace, product_space

F8 = Field(2, 3)
F30 = Field(2, 30)


@pytest.fixture(scope="module")
def fig1_code():
    return keygen(CodeParams(32, 16, 2, F30), np.random.default_rng(0))


@pytest.fixture(scope="module")
def u2_code():
    return keygen(CodeParams(16, 8, 2, F30, u=2), np.random.default_rng(1))


def transmit(code, t, rng):
    c = code.encode(code.random_message(rng))
    err = sample_error(t, code.params, rng)
    return c, err, apply(c, err, code.params.field)


def test_failure_taxonomy():
    assert {r.event for r in FailureReason} == set(EVENTS)
    assert FailureReason.SUPPORT_MISMATCH.event == "intersection"
    assert FailureReason.PRODUCT_SPACE_DEFICIENT.event == "product"


def test_recover_support_examples():
    S = Subspace.span(F8, [0b100, 0b011])
    assert recover_support(S, [1, 0b010]) == Subspace.span(F8, [0b100])
    assert recover_support(S, [1]) == S
    assert recover_support(Subspace.zero(F8), [1, 2]).dim == 0


def test_codeword_decodes_to_itself(fig1_code):
    rng = np.random.default_rng(0)
    c = fig1_code.encode(fig1_code.random_message(rng))
    out = decode(fig1_code, c)
    assert out.success and out.codeword == tuple(c) and out.error == (0,) * 32
    assert out.syndrome_space.dim == 0


def test_length_mismatch(fig1_code):
    with pytest.raises(ParameterError):
        decode(fig1_code, [0] * 31)


def test_syndrome_space_dimension(u2_code):
    rng = np.random.default_rng(2)
    F = u2_code.support_space
    full = 0
    trials = 300
    for _ in range(trials):
        _, err, y = transmit(u2_code, 4, rng)
        syn, S = syndrome_space(u2_code, y)
        assert len(syn) == 2
        assert S.dim <= min(8, 16, 30)
        assert S <= product_space(F, err.support)
        full += S.dim == 8
    # Pr[dim S' < λt] <= 2^(8-16)
    p = 2.0**-8
    assert trials - full <= trials * p + 3 * np.sqrt(trials * p * (1 - p)) + 1


def test_end_to_end_recovers_true_error(u2_code):
    rng = np.random.default_rng(3)
    ok = 0
    for _ in range(200):
        c, err, y = transmit(u2_code, 4, rng)
        out = decode(u2_code, y)
        ev = failure_events(u2_code, err.support, out.syndrome_space)
        if not any(ev.values()):
            assert out.success
            assert out.error == err.error and list(out.codeword) == c
            assert out.support == err.support
            ok += 1
        if out.success:
            assert u2_code.is_codeword(out.codeword)
            assert all(F30.add(a, b) == x for a, b, x in zip(out.codeword, out.error, y))
    assert ok >= 190


def test_expand_and_solve_generic_path(u2_code):
    rng = np.random.default_rng(4)
    done = 0
    while done < 30:
        _, err, y = transmit(u2_code, 3, rng)
        syn, S = syndrome_space(u2_code, y)
        if S.dim != 6:
            continue
        gamma = err.gamma
        exp = expand_syndrome(u2_code, syn, gamma)
        assert exp.reassemble(u2_code, gamma) == syn
        blocks = solve_error(u2_code, exp, gamma)
        assert blocks == [list(err.block(w)) for w in range(2)]
        assert _solve_binary(u2_code, syn, gamma) == blocks
        done += 1


def test_zero_expansion_and_zero_block(u2_code):
    f = F30
    rng = np.random.default_rng(5)
    gamma = [f.random(rng), f.random(rng)]
    zero = SyndromeExpansion(np.zeros((2, 8, 2, 2), dtype=np.int64))
    assert solve_error(u2_code, zero, gamma) == [[0] * 16, [0] * 16]
    exp = expand_syndrome(u2_code, [[0] * 8, [0] * 8], gamma)
    assert not exp.coeffs.any()
    # second block error-free
    err = sample_error(2, CodeParams(16, 8, 2, F30, u=1), rng)
    y = list(err.error) + [0] * 16
    out = decode(u2_code, y)
    if out.success:
        assert out.error[16:] == (0,) * 16
        assert out.error[:16] == err.error


def test_support_too_large(fig1_code):
    gamma = [1 << i for i in range(16)]
    with pytest.raises(DecodingFailure) as exc:
        expand_syndrome(fig1_code, [[0] * 16], gamma)
    assert exc.value.reason is FailureReason.SUPPORT_TOO_LARGE
    rng = np.random.default_rng(6)
    for _ in range(5):
        _, err, y = transmit(fig1_code, 30, rng)
        assert not decode(fig1_code, y).success


def test_product_space_deficient():
    code = keygen(CodeParams(8, 4, 2, F30), np.random.default_rng(7))
    phi1, phi2 = code.phi
    # gamma = {1, phi2/phi1}: phi1 * (phi2/phi1) = phi2 * 1, so F·E has dim 3 < 4
    gamma = [1, F30.div(phi2, phi1)]
    with pytest.raises(DecodingFailure) as exc:
        expand_syndrome(code, [[0] * 4], gamma)
    assert exc.value.reason is FailureReason.PRODUCT_SPACE_DEFICIENT


def test_ternary_decode():
    f = Field(3, 10)
    code = keygen(CodeParams(8, 4, 2, f, u=2), np.random.default_rng(8))
    rng = np.random.default_rng(9)
    ok = 0
    for _ in range(40):
        c, err, y = transmit(code, 2, rng)
        out = decode(code, y)
        if out.success:
            assert list(out.codeword) == c and out.error == err.error
            ok += 1
        ev = failure_events(code, err.support, out.syndrome_space)
        if not any(ev.values()):
            assert out.success
    assert ok >= 35


def test_seeded_fig1_t3_success_rate(fig1_code):
    rng = np.random.default_rng(10)
    trials = 2000
    fails = sum(not decode(fig1_code, transmit(fig1_code, 3, rng)[2]).success for _ in range(trials))
    bound = 3 * 2.0**-24 + 3 * 2.0**-21 + 2.0**-10
    assert fails / trials <= bound + 3 * np.sqrt(bound * (1 - bound) / trials)


def test_failure_events_definition(fig1_code):
    rng = np.random.default_rng(11)
    _, err, y = transmit(fig1_code, 5, rng)
    _, S = syndrome_space(fig1_code, y)
    ev = failure_events(fig1_code, err.support, S)
    assert set(ev) == {"product", "intersection", "syndrome"}
    F = fig1_code.support_space
    assert ev["product"] == (product_space(F, err.support).dim < 10)
    assert ev["syndrome"] == (S.dim < 10)
