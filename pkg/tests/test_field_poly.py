import pytest
from hypothesis import given, strategies as st

from dormantlab.errors import InputError
from dormantlab.field import FieldElement, check_odd_prime, inv_mod, is_prime, sqrt_table
from dormantlab.poly import Poly, RationalFunction

PRIMES = [3, 5, 7, 11, 13, 17]


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, -7, 2**31 + 11])
def test_check_odd_prime_rejects(bad):
    with pytest.raises(InputError):
        check_odd_prime(bad)


@given(st.sampled_from(PRIMES), st.integers(min_value=1, max_value=1000))
def test_inv_mod(p, a):
    if a % p == 0:
        with pytest.raises(ZeroDivisionError):
            inv_mod(a, p)
    else:
        assert a * inv_mod(a, p) % p == 1


def test_sqrt_table():
    table = sqrt_table(13)
    for x, r in table.items():
        assert r * r % 13 == x
    # exactly (p+1)/2 squares
    assert len(table) == 7


def test_field_element_ops():
    a, b = FieldElement(3, 7), FieldElement(5, 7)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert (a / b).value == 3 * inv_mod(5, 7) % 7
    assert -a == 4
    assert a.inverse() * a == 1
    with pytest.raises(ValueError):
        a + FieldElement(1, 5)


coeff_lists = st.lists(st.integers(min_value=0, max_value=40), max_size=6)


@given(st.sampled_from(PRIMES), coeff_lists, coeff_lists)
def test_poly_ring_axioms(p, a, b):
    f, g = Poly(a, p), Poly(b, p)
    assert f * g == g * f
    assert f + g == g + f
    if f and g:
        assert (f * g).degree == f.degree + g.degree


@given(st.sampled_from(PRIMES), coeff_lists, coeff_lists)
def test_poly_divmod(p, a, b):
    f, g = Poly(a, p), Poly(b, p)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_poly_canonical_form():
    assert Poly([1, 2, 0, 0], 5).coeffs == (1, 2)
    assert Poly([0, 5, 10], 5) == Poly.zero(5)
    assert Poly.zero(5).degree == -1


def test_theta_matches_definition():
    # theta(f) = x(x-1) f'
    p = 7
    f = Poly([2, 3, 0, 1], p)
    assert f.theta() == Poly([0, -1, 1], p) * f.derivative()


def test_compose_affine():
    p = 11
    f = Poly([1, 0, 1], p)  # 1 + x^2
    g = f.compose_affine(1, 1)  # f(x+1) = 2 + 2x + x^2
    assert g == Poly([2, 2, 1], p)


@given(st.sampled_from(PRIMES), coeff_lists, coeff_lists)
def test_rational_reduction(p, a, b):
    num, den = Poly(a, p), Poly(b, p)
    if den.is_zero():
        return
    r = RationalFunction(num, den)
    assert r.den.leading() in (0, 1)
    assert r.num.gcd(r.den).degree <= 0
    # value is preserved: r * den == num as fractions
    assert r * den == RationalFunction(num)


def test_rational_theta_quotient_rule():
    p = 5
    r = RationalFunction(Poly.one(p), Poly.x(p))  # 1/x
    # theta(1/x) = x(x-1) * (-1/x^2) = (1-x)/x
    assert r.theta() == RationalFunction(Poly([1, -1], p), Poly.x(p))
