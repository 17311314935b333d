import pytest
import sympy
from hypothesis import given, strategies as st

from exclab.errors import DomainError
from exclab.poly import ONE, Q, S, T, ZERO, MultiPoly, q_factorial, q_int

q, t, s = sympy.symbols("q t s")


def to_sympy(p: MultiPoly):
    return sum((c * q**a * t**b * s**e for (a, b, e), c in p.items()), sympy.Integer(0))


def from_sympy(expr) -> MultiPoly:
    poly = sympy.Poly(sympy.expand(expr), q, t, s)
    return MultiPoly({m: int(c) for m, c in poly.terms()})


polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 3), st.integers(0, 3)),
    st.integers(-20, 20),
    max_size=6,
).map(MultiPoly)


def test_canonical_form_drops_zeros():
    assert MultiPoly({(1, 0, 0): 0}) == ZERO
    assert MultiPoly([((1, 0, 0), 2), ((1, 0, 0), -2)]).terms == {}
    assert Q + 1 == MultiPoly({(0, 0, 0): 1, (1, 0, 0): 1})


def test_rejects_negative_exponents():
    with pytest.raises(DomainError):
        MultiPoly({(-1, 0, 0): 1})


def test_arith_examples():
    assert (Q - 1) * (Q + 1) == Q**2 - 1
    p = T**2 * S + Q * S
    assert p.substitute(t=0) == Q * S
    assert (Q * S).substitute(s=-1) == -Q
    assert (T**3 * Q).substitute(t=2) == 8 * Q


def test_negative_power():
    with pytest.raises(DomainError):
        Q ** -1


def test_unknown_variable():
    with pytest.raises(DomainError):
        Q.substitute(x=1)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys, st.integers(0, 4))
def test_against_sympy(a, b, k):
    assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b
    assert from_sympy(to_sympy(a) - to_sympy(b)) == a - b
    assert from_sympy(to_sympy(a) ** k) == a**k


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_against_sympy(a, tv, sv):
    expected = from_sympy(to_sympy(a).subs({t: tv, s: sv}))
    assert a.substitute(t=tv, s=sv) == expected


def test_q_int():
    assert q_int(3) == 1 + Q + Q**2
    assert q_int(0) == ZERO
    assert q_int(1) == ONE
    with pytest.raises(DomainError):
        q_int(-1)


def test_q_factorial():
    assert q_factorial(3) == MultiPoly.from_q_coefficients([1, 2, 2, 1])
    assert q_factorial(0) == ONE
    for m in range(6):
        expected = sympy.prod([sum(q**k for k in range(j)) for j in range(1, m + 1)])
        assert q_factorial(m) == from_sympy(expected)


def test_serialization():
    p = 1 - Q**2
    assert p.q_coefficients() == [1, 0, -1]
    assert str(p) == "1 - q^2"
    assert str(-(1 + Q + Q**2)) == "-1 - q - q^2"
    assert str(1 + 4 * Q + Q**2) == "1 + 4q + q^2"
    assert str(ZERO) == "0" and ZERO.q_coefficients() == []
    tri = T**2 * S**2 + Q * S
    assert tri.to_records() == [
        {"a": 0, "b": 2, "c": 2, "coeff": 1},
        {"a": 1, "b": 0, "c": 1, "coeff": 1},
    ]
    assert MultiPoly.from_records(tri.to_records()) == tri
    with pytest.raises(DomainError):
        tri.q_coefficients()


def test_value_at():
    assert (Q**2 - 1).value_at(1) == 0
    assert q_int(4).value_at(1) == 4
