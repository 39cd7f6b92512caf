import pytest
from hypothesis import given, settings, strategies as st

from chevcount.gfq import GF, field_for_order


FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(2, 3), GF(3, 2)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: "q%d" % f.q)
def test_field_axioms_exhaustive(field):
    elems = list(field.elements())
    assert len(elems) == field.q
    zero, one = field.zero, field.one
    for a in elems:
        assert field.add(a, zero) == a
        assert field.mul(a, one) == a
        assert field.add(a, field.neg(a)) == zero
        if a != zero:
            assert field.mul(a, field.inv(a)) == one
        for b in elems:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            for c in elems:
                assert field.mul(a, field.add(b, c)) == \
                    field.add(field.mul(a, b), field.mul(a, c))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: "q%d" % f.q)
def test_frobenius_and_pow(field):
    for a in field.elements():
        assert field.pow(a, field.q) == a  # x^q = x
        if a != field.zero:
            assert field.pow(a, field.q - 1) == field.one
        assert field.pow(a, 1) == a
        assert field.pow(a, 0) == field.one


def test_prime_field_is_mod_p():
    f = GF(7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.neg(2) == 5
    assert f.inv(3) == 5


def test_extension_field_nontrivial():
    f = GF(2, 2)
    # the generator t satisfies t^2 = t + 1 for the packed modulus
    t = 2
    assert f.mul(t, t) == f.add(t, 1)
    assert sorted(f.elements()) == [0, 1, 2, 3]


def test_from_int_and_check():
    f = GF(3)
    assert f.from_int(-1) == 2
    assert f.from_int(5) == 2
    f4 = GF(2, 2)
    with pytest.raises(ValueError):
        f4.check(4)
    assert f4.check(3) == 3


def test_field_for_order():
    assert field_for_order(2).q == 2
    assert field_for_order(9).q == 9
    assert field_for_order(8).q == 8
    assert (field_for_order(49).p, field_for_order(49).k) == (7, 2)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(ValueError):
            field_for_order(bad)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_gf9_associativity_random(a, b, c):
    f = GF(3, 2)
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
