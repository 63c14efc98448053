import numpy as np
import pytest

from lrpc.channel import RankError, apply, sample_error
from lrpc.code import CodeParams, keygen
from lrpc.errors import ParameterError
from lrpc.field import Field
from lrpc.linalg import FqMatrix, rank
from lrpc.subspace import support

F30 = Field(2, 30)


@pytest.mark.parametrize("params", [
    CodeParams(32, 16, 2, F30),
    CodeParams(8, 4, 2, F30, u=4),
    CodeParams(6, 3, 2, Field(3, 8), u=2),
], ids=["u1", "u4", "q3"])
def test_sample_error_rank_and_support(params):
    rng = np.random.default_rng(0)
    f = params.field
    for t in range(0, min(f.m, params.N, 9) + 1):
        err = sample_error(t, params, rng)
        assert isinstance(err, RankError) and err.t == t
        assert len(err.error) == params.N
        assert support(f, err.error) == err.support
        assert err.support.dim == t
        C = err.coeffs.reshape(params.N, t)
        if t:
            assert rank(FqMatrix(C, f.q)) == t
        for j, x in enumerate(err.error):
            assert x == f.combine(C[j].tolist(), err.gamma)
        for w in range(params.u):
            assert support(f, err.block(w)) <= err.support


def test_t_zero_is_zero_error():
    err = sample_error(0, CodeParams(8, 4, 2, F30), np.random.default_rng(0))
    assert err.error == (0,) * 8 and err.support.dim == 0


def test_t_equals_n_full_rank():
    p = CodeParams(6, 3, 2, Field(2, 10))
    err = sample_error(6, p, np.random.default_rng(1))
    assert rank(FqMatrix(err.coeffs[0], 2)) == 6
    assert support(p.field, err.error).dim == 6


def test_t_out_of_range():
    p = CodeParams(4, 2, 2, Field(2, 6), u=1)
    with pytest.raises(ParameterError):
        sample_error(5, p, np.random.default_rng(0))
    with pytest.raises(ParameterError):
        sample_error(-1, p, np.random.default_rng(0))
    p = CodeParams(8, 4, 2, Field(2, 6), u=1)
    with pytest.raises(ParameterError):
        sample_error(7, p, np.random.default_rng(0))


def test_deterministic():
    p = CodeParams(8, 4, 2, F30, u=2)
    a = sample_error(4, p, np.random.default_rng(3))
    b = sample_error(4, p, np.random.default_rng(3))
    assert a.error == b.error and a.support == b.support


def test_apply():
    p = CodeParams(8, 4, 2, F30, u=2)
    rng = np.random.default_rng(2)
    code = keygen(p, rng)
    c = code.encode(code.random_message(rng))
    assert apply(c, sample_error(0, p, rng), F30) == c
    err = sample_error(3, p, rng)
    y = apply(c, err, F30)
    assert apply(y, err, F30) == c
    assert code.syndromes(y) == [code.syndrome(list(err.block(w))) for w in range(p.u)]
    with pytest.raises(ParameterError):
        apply(c[:-1], err, F30)


def test_apply_ternary():
    f = Field(3, 4)
    e = [1, 2, 5]
    y = apply([0, 0, 0], e, f)
    assert y == e
    assert apply(y, [f.neg(x) for x in e], f) == [0, 0, 0]
