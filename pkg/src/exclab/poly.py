"""Sparse polynomials in q, t, s with exact integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DomainError

Exponent = tuple[int, int, int]

VARIABLES = ("q", "t", "s")


class MultiPoly:
    """Immutable sparse polynomial ``sum coeff * q^a t^b s^c``.

    Terms with zero coefficient are never stored, so two polynomials are
    equal exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != 3 or min(exp) < 0:
                raise DomainError(f"exponent must be a nonnegative triple, got {exp}")
            acc[exp] = acc.get(exp, 0) + int(coeff)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> MultiPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, coeff: int = 1) -> MultiPoly:
        return cls({(a, b, c): coeff})

    @classmethod
    def from_q_coefficients(cls, coeffs: Iterable[int]) -> MultiPoly:
        return cls(((k, 0, 0), c) for k, c in enumerate(coeffs))

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        """Terms sorted lexicographically by exponent triple."""
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, int):
            return MultiPoly.constant(x)
        return NotImplemented

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return MultiPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, int] = {}
        for (a1, b1, c1), k1 in self._terms.items():
            for (a2, b2, c2), k2 in other._terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                acc[e] = acc.get(e, 0) + k1 * k2
        return MultiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise DomainError(f"negative power {k} of a polynomial")
        result = MultiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, **values: int) -> MultiPoly:
        """Replace variables by integers, e.g. ``p.substitute(t=1, s=-1)``.

        The substituted exponent collapses to 0 and the coefficient picks up
        ``value**exponent`` (with ``0**0 == 1``).
        """
        idx = []
        for name, v in values.items():
            if name not in VARIABLES:
                raise DomainError(f"unknown variable {name!r}")
            if not isinstance(v, int):
                raise DomainError(f"substitution value for {name} must be an integer")
            idx.append((VARIABLES.index(name), v))
        acc: dict[Exponent, int] = {}
        for exp, c in self._terms.items():
            e = list(exp)
            for i, v in idx:
                c *= v ** e[i]
                e[i] = 0
            key = tuple(e)
            acc[key] = acc.get(key, 0) + c
        return MultiPoly(acc)

    def __call__(self, q: int = None, t: int = None, s: int = None) -> MultiPoly:
        vals = {k: v for k, v in (("q", q), ("t", t), ("s", s)) if v is not None}
        return self.substitute(**vals)

    def is_univariate(self) -> bool:
        """True when only q occurs."""
        return all(b == 0 and c == 0 for _, b, c in self._terms)

    def degree(self) -> int:
        """Degree in q; -1 for the zero polynomial."""
        return max((a for a, _, _ in self._terms), default=-1)

    def q_coefficients(self) -> list[int]:
        """Ascending coefficient list ``[c_0, c_1, ...]``; ``[]`` for zero."""
        if not self.is_univariate():
            raise DomainError("polynomial still depends on t or s")
        out = [0] * (self.degree() + 1)
        for (a, _, _), c in self._terms.items():
            out[a] = c
        return out

    def value_at(self, q: int) -> int:
        """Integer value of a univariate polynomial at ``q``."""
        return sum(c * q**a for a, c in enumerate(self.q_coefficients()))

    def to_records(self) -> list[dict[str, int]]:
        return [{"a": a, "b": b, "c": c, "coeff": k} for (a, b, c), k in self.items()]

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, int]]) -> MultiPoly:
        return cls(((r["a"], r["b"], r["c"]), r["coeff"]) for r in records)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, exp) if e
            )
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


Q = MultiPoly.monomial(a=1)
T = MultiPoly.monomial(b=1)
S = MultiPoly.monomial(c=1)
ONE = MultiPoly.constant(1)
ZERO = MultiPoly()


def q_int(m: int) -> MultiPoly:
    """The q-integer [m]_q = 1 + q + ... + q^(m-1); [0]_q = 0."""
    if m < 0:
        raise DomainError(f"q-integer of negative m={m}")
    return MultiPoly.from_q_coefficients([1] * m)


def q_factorial(m: int) -> MultiPoly:
    if m < 0:
        raise DomainError(f"q-factorial of negative m={m}")
    out = ONE
    for k in range(2, m + 1):
        out = out * q_int(k)
    return out
