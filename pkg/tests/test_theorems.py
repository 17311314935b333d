import pytest
import sympy

from exclab.errors import DomainError
from exclab.poly import ONE, Q, MultiPoly, q_int
from exclab.theorems import (
    Theorem,
    closed_form,
    dn_complement_sum,
    dn_sum,
    even_binomial_sum,
    recursion_check,
    specialized,
    t3_stated_form,
)

q = sympy.symbols("q")


def from_sympy(expr) -> MultiPoly:
    coeffs = sympy.Poly(sympy.cancel(sympy.expand(expr)), q).all_coeffs()[::-1]
    return MultiPoly.from_q_coefficients([int(c) for c in coeffs])


# -- closed forms against rational-function oracles ----------------------------


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 6) for n in range(1, 8)])
def test_t1_division_free_form(r, n):
    assert closed_form("T1", r, n) == from_sympy(-((q**r - 1) ** n) / (q - 1))


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 6) for n in range(1, 7)])
def test_t2_form(r, n):
    qint = lambda m: sum((q**k for k in range(m)), sympy.Integer(0))
    assert closed_form("T2", r, n) == from_sympy(-q * qint(r) ** n * qint(n - 1))


@pytest.mark.parametrize("n", range(1, 11))
def test_t4_division_free_form(n):
    expected = -sympy.Rational(1, 2) * (q - 1) ** (n - 1) * ((1 + q) ** n + (1 - q) ** n)
    assert closed_form("T4", 2, n) == from_sympy(expected)
    assert even_binomial_sum(n) == from_sympy(((1 + q) ** n + (1 - q) ** n) / 2)


@pytest.mark.parametrize("n", range(1, 11))
def test_t3_forms(n):
    assert closed_form("T3", 2, n) == from_sympy(-((q**2 - 1) ** (n - 1)))
    # the two expressions agree exactly at even n
    assert (t3_stated_form(n) == closed_form("T3", 2, n)) == (n % 2 == 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_single_color_specialisations(n):
    assert closed_form(Theorem.T1, 1, n) == -((Q - 1) ** (n - 1))
    assert closed_form(Theorem.T2, 1, n) == -Q * q_int(n - 1)


def test_t4_n2():
    assert closed_form("T4", 2, 2) == 1 - Q + Q**2 - Q**3
    assert specialized("T4", 2, 2) == 1 - Q + Q**2 - Q**3


def test_t1_at_q_one():
    for r in range(1, 5):
        assert closed_form("T1", r, 1).value_at(1) == -r
        for n in range(2, 6):
            assert closed_form("T1", r, n).value_at(1) == 0


@pytest.mark.parametrize("args", [("T1", 0, 3), ("T2", 2, 0), ("T3", 3, 2), ("T4", 1, 2), ("T5", 2, 2)])
def test_invalid_arguments(args):
    with pytest.raises(DomainError):
        closed_form(*args)


def test_t3_stated_form_bad_n():
    with pytest.raises(DomainError):
        t3_stated_form(0)


# -- brute force meets closed form ---------------------------------------------------


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 4) for n in range(1, 5)])
@pytest.mark.parametrize("variant", ["abs", "clr"])
def test_t1_t2_small(r, n, variant):
    assert specialized("T1", r, n, variant) == closed_form("T1", r, n)
    assert specialized("T2", r, n, variant) == closed_form("T2", r, n)


@pytest.mark.parametrize("n", range(1, 7))
def test_dn_small(n):
    assert specialized("T3", 2, n) == closed_form("T3", 2, n)
    assert specialized("T4", 2, n) == closed_form("T4", 2, n)


def test_d2_sums():
    # D_2 = {12, 1^1 2^1, 21, 2^1 1^1}
    assert dn_sum(2, "clr") == 1 - Q**2
    assert dn_complement_sum(2, "clr") == Q - Q**3


# -- recursions ------------------------------------------------------------------


def test_recursion_t1_r2_n2():
    rc = recursion_check("T1", 2, 2)
    assert rc.passed
    (eq,) = rc.equations
    assert eq.lhs == eq.rhs == (1 + Q) * (1 - Q**2)


def test_recursion_t2_r1_n2():
    rc = recursion_check("T2", 1, 2)
    assert rc.passed and rc.equations[0].lhs == -Q
    assert specialized("T2", 1, 1) == 0


def test_recursion_t3_n2():
    rc = recursion_check("T3", 2, 2)
    assert rc.passed and rc.equations[0].lhs == 1 - Q**2
    assert specialized("T3", 2, 1) == -ONE


def test_recursion_t4_is_coupled():
    rc = recursion_check("T4", 2, 4)
    assert len(rc.equations) == 2 and rc.passed
    report = rc.report()
    assert report["theorem"] == "T4" and all(e["passed"] for e in report["equations"])


def test_recursion_needs_n2():
    with pytest.raises(DomainError):
        recursion_check("T1", 2, 1)


def test_recursion_detects_a_mismatch():
    rc = recursion_check("T1", 2, 3)
    rc.equations[0].rhs = rc.equations[0].rhs + Q
    assert not rc.passed
    assert rc.report()["passed"] is False
