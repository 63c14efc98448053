from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrpc.errors import ParameterError
from lrpc.field import Field
from lrpc.linalg import NoSolution
from lrpc.subspace import (
    Coordinates, Subspace, contains, intersect, intersect_all, product_space, random_element_of,
    random_subspace, rank_weight, scalar_inverse_space, support,
)

from oracles import all_elements, span_closure

F8 = Field(2, 3)
ONE, A, A2, A1 = 1, 0b010, 0b100, 0b011  # 1, a, a^2, 1+a


def span(field, *elems):
    return Subspace.span(field, elems)


def closure(field, elems):
    return span_closure(elems, field.add, field.scale, field.q)


def test_support_examples():
    assert support(F8, [0, 0, 0]).dim == 0
    g = 0b101
    assert support(F8, [g, g, g]) == span(F8, g) and rank_weight(F8, [g, g, g]) == 1
    S = support(F8, [A2, A1])
    assert S.dim == 2
    assert all_elements(S) == {0, A2, A1, 0b111}


def test_product_space_examples():
    B = span(F8, A2)
    assert product_space(span(F8, ONE), B) == B
    P = product_space(span(F8, ONE, A), B)
    assert P == span(F8, A2, A1) and P.dim == 2


def test_scalar_inverse_space_examples():
    S = span(F8, A2, A1)
    assert scalar_inverse_space(ONE, S) == S
    assert scalar_inverse_space(A, S) == span(F8, A, A2)
    with pytest.raises(ZeroDivisionError):
        scalar_inverse_space(0, S)


def test_intersect_examples():
    S = span(F8, A2, A1)
    assert intersect(S, S) == S
    assert intersect(S, span(F8, A, A2)) == span(F8, A2)
    assert intersect(S, Subspace.zero(F8)).dim == 0


def test_contains_and_full():
    f = Field(2, 5)
    assert Subspace.full(f).dim == 5
    assert random_subspace(f, 5, np.random.default_rng(0)) == Subspace.full(f)
    S = random_subspace(f, 2, np.random.default_rng(1))
    assert contains(S, 0)
    assert sum(contains(S, x) for x in range(32)) == 4
    with pytest.raises(ParameterError):
        random_subspace(f, 6, np.random.default_rng(0))


def test_mismatched_fields_rejected():
    with pytest.raises(ParameterError):
        span(F8, 1) + span(Field(2, 4), 1)
    with pytest.raises(ParameterError):
        intersect(span(F8, 1), span(Field(2, 4), 1))


@pytest.mark.parametrize("m", [4, 6, 8])
def test_product_and_intersection_against_enumeration(m):
    f = Field(2, m)
    rng = np.random.default_rng(m)
    for _ in range(60):
        da, db = rng.integers(0, m // 2 + 1, size=2)
        Aa = random_subspace(f, int(da), rng)
        Bb = random_subspace(f, int(db), rng)
        prods = {f.mul(a, b) for a in all_elements(Aa) for b in all_elements(Bb)}
        assert all_elements(product_space(Aa, Bb)) == closure(f, prods)
        assert product_space(Aa, Bb) == product_space(Bb, Aa)
        assert all_elements(intersect(Aa, Bb)) == all_elements(Aa) & all_elements(Bb)


def test_ternary_operations_against_enumeration():
    f = Field(3, 4)
    rng = np.random.default_rng(9)
    for _ in range(30):
        Aa = random_subspace(f, int(rng.integers(0, 3)), rng)
        Bb = random_subspace(f, int(rng.integers(0, 3)), rng)
        assert len(all_elements(Aa)) == 3**Aa.dim
        ea, eb = all_elements(Aa), all_elements(Bb)
        assert all_elements(intersect(Aa, Bb)) == ea & eb
        prods = {f.mul(a, b) for a in ea for b in eb}
        assert all_elements(product_space(Aa, Bb)) == closure(f, prods)
        phi = int(rng.integers(1, f.order))
        inv = scalar_inverse_space(phi, Aa)
        assert all_elements(inv) == {f.mul(f.inv(phi), x) for x in ea}
        for x in range(0, f.order, 7):
            assert contains(Aa, x) == (x in ea)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 6), st.integers(1, 4))
def test_canonical_form_independent_of_generators(seed, d, extra):
    f = Field(2, 12)
    rng = np.random.default_rng(seed)
    S = random_subspace(f, d, rng)
    gens = [random_element_of(S, rng) for _ in range(d + extra)] + list(S.basis)
    rng.shuffle(gens)
    assert Subspace.span(f, gens) == S
    assert Subspace.span(f, gens).basis == S.basis


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 5), st.integers(0, 5))
def test_product_dimension_bound(seed, da, db):
    f = Field(2, 30)
    rng = np.random.default_rng(seed)
    Aa, Bb = random_subspace(f, da, rng), random_subspace(f, db, rng)
    P = product_space(Aa, Bb)
    assert P.dim <= min(da * db, 30)
    assert P == product_space(Bb, Aa)
    phi = f.random(rng) or 1
    assert scalar_inverse_space(phi, Aa).dim == da
    for a in Aa.basis:
        assert intersect(P, product_space(span(f, a), Bb)) == product_space(span(f, a), Bb)


def test_intersect_all_folds():
    f = Field(2, 8)
    rng = np.random.default_rng(4)
    spaces = [random_subspace(f, 6, rng) for _ in range(3)]
    want = all_elements(spaces[0]) & all_elements(spaces[1]) & all_elements(spaces[2])
    assert all_elements(intersect_all(spaces)) == want
    assert intersect_all(spaces) == intersect_all(spaces[::-1])


def test_random_subspace_uniform_m4():
    f = Field(2, 4)
    rng = np.random.default_rng(35)
    draws = 100_000
    counts = Counter(random_subspace(f, 2, rng).basis for _ in range(draws))
    assert len(counts) == 35  # Gaussian binomial [4 choose 2]_2
    expected = draws / 35
    stat = sum((c - expected) ** 2 / expected for c in counts.values())
    assert stat < 65.2  # chi-square, 34 dof, p ~ 1e-3


def test_random_element_of_uniform():
    f = Field(2, 8)
    rng = np.random.default_rng(8)
    S = random_subspace(f, 3, rng)
    counts = Counter(random_element_of(S, rng) for _ in range(8000))
    assert set(counts) == all_elements(S)
    stat = sum((c - 1000) ** 2 / 1000 for c in counts.values())
    assert stat < 24.3  # 7 dof, p ~ 1e-3


@pytest.mark.parametrize("q,m", [(2, 10), (3, 5)])
def test_coordinates(q, m):
    f = Field(q, m)
    rng = np.random.default_rng(q)
    elems = f.random_many(rng, 4)
    C = Coordinates(f, elems)
    assert C.independent == (span(f, *elems).dim == 4)
    if C.independent:
        c = rng.integers(0, q, 4).tolist()
        assert C.of(f.combine(c, elems)) == tuple(c)
        outside = next(x for x in range(f.order) if not contains(span(f, *elems), x))
        with pytest.raises(NoSolution):
            C.of(outside)
    dep = Coordinates(f, [elems[0], elems[0]])
    assert not dep.independent
    with pytest.raises(ParameterError):
        dep.of(elems[0])
