"""Closed forms and recursions for the signed excedance generating functions.

All four identities are specialisations at s = -1:

* T1: sum over G(r,n), t = 1, either excedance variant;
* T2: sum over G(r,n), t = 0 (only derangements survive), either variant;
* T3: sum over D_n with exc_clr, t = 1;
* T4: sum over D_n with exc_abs, t = 1.

Closed forms are built with integer arithmetic only: the division by (q-1)
in T1 becomes the q-integer [r]_q and the factor 1/2 in T4 becomes a sum of
even-index binomial terms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .perm import GroupSpec, Restriction
from .distribution import distribution
from .poly import ONE, Q, MultiPoly, q_int


class Theorem(enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"


def _theorem(th) -> Theorem:
    try:
        return th if isinstance(th, Theorem) else Theorem(th)
    except ValueError:
        raise DomainError(f"unknown theorem {th!r}") from None


def _check_rn(th: Theorem, r: int, n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if th in (Theorem.T1, Theorem.T2) and r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if th in (Theorem.T3, Theorem.T4) and r != 2:
        raise DomainError(f"{th.value} lives in B_n / D_n, so r must be 2, got {r}")


def even_binomial_sum(n: int) -> MultiPoly:
    """sum over even k <= n of C(n, k) q^k, i.e. ((1+q)^n + (1-q)^n) / 2."""
    return MultiPoly(((k, 0, 0), math.comb(n, k)) for k in range(0, n + 1, 2))


def closed_form(theorem, r: int, n: int) -> MultiPoly:
    """The closed form in q for ``theorem`` at (r, n).

    T3 is the version the recursion actually yields, -(q^2 - 1)^(n-1); see
    :func:`t3_stated_form` for the other sign.
    """
    th = _theorem(theorem)
    _check_rn(th, r, n)
    if th is Theorem.T1:
        return -((Q**r - 1) ** (n - 1)) * q_int(r)
    if th is Theorem.T2:
        return -Q * q_int(r) ** n * q_int(n - 1)
    if th is Theorem.T3:
        return -((Q**2 - 1) ** (n - 1))
    return -((Q - 1) ** (n - 1)) * even_binomial_sum(n)


def t3_stated_form(n: int) -> MultiPoly:
    """(1 - q^2)^(n-1): differs from the true value by a sign for odd n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return (ONE - Q**2) ** (n - 1)


def specialized(theorem, r: int, n: int, variant: str | None = None, *, cap=None, jobs: int = 1) -> MultiPoly:
    """Brute-force left-hand side of ``theorem`` at (r, n) as a q-polynomial.

    For T3/T4 ``variant`` defaults to clr/abs respectively; passing it
    explicitly gives the other-order sum over D_n.
    """
    th = _theorem(theorem)
    _check_rn(th, r, n)
    if th is Theorem.T1:
        return distribution(GroupSpec(r, n), variant or "abs", cap, jobs).substitute(t=1, s=-1)
    if th is Theorem.T2:
        spec = GroupSpec(r, n, Restriction.DERANGEMENTS)
        return distribution(spec, variant or "abs", cap, jobs).substitute(t=0, s=-1)
    variant = variant or ("clr" if th is Theorem.T3 else "abs")
    return dn_sum(n, variant, cap=cap, jobs=jobs)


def dn_sum(n: int, variant: str, *, cap=None, jobs: int = 1) -> MultiPoly:
    """a_n: signed sum over D_n at t = 1."""
    spec = GroupSpec(2, n, Restriction.EVEN_COLOR_SUM)
    return distribution(spec, variant, cap, jobs).substitute(t=1, s=-1)


def dn_complement_sum(n: int, variant: str, *, cap=None, jobs: int = 1) -> MultiPoly:
    """b_n: signed sum over B_n minus D_n at t = 1."""
    full = distribution(GroupSpec(2, n), variant, cap, jobs).substitute(t=1, s=-1)
    return full - dn_sum(n, variant, cap=cap, jobs=jobs)


@dataclass
class Equation:
    name: str
    lhs: MultiPoly
    rhs: MultiPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class RecursionCheck:
    theorem: Theorem
    r: int
    n: int
    variant: str
    equations: list[Equation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(eq.holds for eq in self.equations)

    def report(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "r": self.r,
            "n": self.n,
            "variant": self.variant,
            "passed": self.passed,
            "equations": [
                {
                    "name": eq.name,
                    "lhs": eq.lhs.q_coefficients(),
                    "rhs": eq.rhs.q_coefficients(),
                    "passed": eq.holds,
                }
                for eq in self.equations
            ],
        }


def recursion_check(theorem, r: int, n: int, variant: str | None = None, *, cap=None, jobs: int = 1) -> RecursionCheck:
    """Compare the brute-force level-n sum with the recursion applied to level n-1.

    For T4 both coupled equations (for a_n over D_n and b_n over its
    complement) are checked.
    """
    th = _theorem(theorem)
    _check_rn(th, r, n)
    if n < 2:
        raise DomainError(f"recursions relate n to n-1, need n >= 2, got {n}")
    kw = dict(cap=cap, jobs=jobs)
    if th is Theorem.T4:
        variant = variant or "abs"
        a_prev, b_prev = dn_sum(n - 1, variant, **kw), dn_complement_sum(n - 1, variant, **kw)
        a_now, b_now = dn_sum(n, variant, **kw), dn_complement_sum(n, variant, **kw)
        eqs = [
            Equation("a_n = (q-1)(a_{n-1} + q b_{n-1})", a_now, (Q - 1) * (a_prev + Q * b_prev)),
            Equation("b_n = (q-1)(b_{n-1} + q a_{n-1})", b_now, (Q - 1) * (b_prev + Q * a_prev)),
        ]
        return RecursionCheck(th, r, n, variant, eqs)

    if th in (Theorem.T3,):
        variant = variant or "clr"
    else:
        variant = variant or "abs"
    now = specialized(th, r, n, variant, **kw)
    prev = specialized(th, r, n - 1, variant, **kw)
    if th is Theorem.T1:
        eq = Equation("P_n = (q^r - 1) P_{n-1}", now, (Q**r - 1) * prev)
    elif th is Theorem.T2:
        rq = q_int(r)
        eq = Equation("P_n = [r]_q (P_{n-1} - q^{n-1} [r]_q^{n-1})", now, rq * (prev - Q ** (n - 1) * rq ** (n - 1)))
    else:
        eq = Equation("a_n = (q^2 - 1) a_{n-1}", now, (Q**2 - 1) * prev)
    return RecursionCheck(th, r, n, variant, [eq])
