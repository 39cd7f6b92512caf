import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chevcount.gfq import GF
from chevcount.mpoly import Poly, parse_poly

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def poly_strategy(field, max_vars=3, max_terms=4, max_exp=2):
    coeff = st.integers(1, field.q - 1)
    mono = st.lists(
        st.tuples(st.integers(1, max_vars), st.integers(1, max_exp)),
        max_size=2, unique_by=lambda ve: ve[0],
    ).map(lambda pairs: tuple(sorted(pairs)))
    term = st.tuples(mono, coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda terms: Poly.zero(field) if not terms
        else sum((Poly.from_terms(field, [t]) for t in terms[1:]),
                 Poly.from_terms(field, [terms[0]])))


def assignments(field, variables):
    return itertools.product(field.elements(), repeat=len(variables))


def evaluate(p, variables, point):
    return p.evaluate(dict(zip(variables, point)))


@pytest.mark.parametrize("field", [F2, F3, F4], ids=lambda f: "q%d" % f.q)
def test_constructors(field):
    z = Poly.zero(field)
    assert z.is_zero() and str(z) == "0"
    c = Poly.constant(field, field.one)
    assert c.is_constant() and c.constant_value() == field.one
    y2 = Poly.variable(field, 2)
    assert str(y2) == "y2"
    assert y2.variables() == {2}


def test_str_ordering():
    f = GF(7)
    p = parse_poly("3*y1^2*y2 + y3 + 5", f)
    assert str(p) == "3*y1^2*y2 + y3 + 5"
    assert parse_poly(str(p), f) == p


def test_parse_poly_forms():
    assert parse_poly("y1 - y2", F3) == parse_poly("y1 + 2*y2", F3)
    assert parse_poly("0", F3).is_zero()
    assert parse_poly("y1*y1", F3) == parse_poly("y1^2", F3)
    assert parse_poly("4", F3) == parse_poly("1", F3)
    with pytest.raises(ValueError):
        parse_poly("y1 + + y2", F3)
    with pytest.raises(ValueError):
        parse_poly("z1", F3)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(F3), poly_strategy(F3), poly_strategy(F3))
def test_ring_laws_f3(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == Poly.zero(F3)
    assert a - b == a + (-b)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(F4), poly_strategy(F4))
def test_mul_matches_pointwise_f4(a, b):
    variables = sorted(a.variables() | b.variables())
    prod = a * b
    for point in assignments(F4, variables):
        assert evaluate(prod, variables, point) == F4.mul(
            evaluate(a, variables, point), evaluate(b, variables, point))


@settings(max_examples=60, deadline=None)
@given(poly_strategy(F2, max_exp=3), st.integers(1, 5))
def test_reduced_power_pointwise_f2(a, e):
    reduced = a.pow(e, reduce_q=2)
    variables = sorted(a.variables())
    for d in reduced.terms:
        assert all(exp == 1 for _, exp in d)
    for point in assignments(F2, variables):
        want = F2.pow(evaluate(a, variables, point), e)
        assert evaluate(reduced, variables, point) == want


def test_reduce_exponents_pointwise():
    for field in (F2, F3, F4):
        p = parse_poly("y1^5 + y2^3*y1 + 2", field) if field.q > 2 else \
            parse_poly("y1^5 + y2^3*y1", field)
        r = p.reduce_exponents()
        variables = sorted(p.variables())
        assert r.degree() <= len(variables) * (field.q - 1)
        for point in assignments(field, variables):
            assert evaluate(p, variables, point) == evaluate(r, variables, point)


def test_substitute():
    f = F3
    p = parse_poly("y1^2 + y2", f)
    g = parse_poly("y2 + 1", f)
    s = p.substitute(1, g, reduce_q=3)
    for b in f.elements():
        got = s.evaluate({2: b})
        want = f.add(f.mul(f.add(b, 1), f.add(b, 1)), b)
        assert got == want
    with pytest.raises(ValueError):
        p.substitute(1, parse_poly("y1 + 1", f), reduce_q=3)


def test_substitute_eliminates_variable():
    p = parse_poly("y1*y3 + y2", F2)
    s = p.substitute(3, parse_poly("y2 + 1", F2), reduce_q=2)
    assert 3 not in s.variables()


def test_scale_and_equality():
    p = parse_poly("y1 + 2", F3)
    assert p.scale(2) == parse_poly("2*y1 + 1", F3)
    assert p.scale(0).is_zero()
    assert hash(p) == hash(parse_poly("2 + y1", F3))


def test_degree_len_iteration():
    p = parse_poly("y1^2*y2 + y3 + 4", GF(5))
    assert p.degree() == 3
    assert len(p) == 3
    assert p.variables() == {1, 2, 3}
