"""Colored permutations: the groups G(r, n), their subgroups and subsets.

An element of G(r, n) is stored in window form: position ``i`` (1-based)
holds the digit ``tau[i-1]`` painted with color ``z[i-1]``.  The element acts
on the alphabet of colored digits by

    sigma(i^[j]) = tau(i)^[(z_i + j) mod r].

``r = 1`` gives the symmetric group, ``r = 2`` the signed permutations B_n;
D_n is the index-2 subgroup of B_n with even color sum.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, ParseError, ResourceLimitError

DEFAULT_CAP = 10**8
CAP_ENV_VAR = "EXCLAB_CAP"


def default_cap() -> int:
    """Enumeration cap, overridable through the ``EXCLAB_CAP`` variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise DomainError(f"{CAP_ENV_VAR} must be nonnegative, got {cap}")
    return cap


@dataclass(frozen=True)
class ColoredDigit:
    """A letter ``digit^[color]`` of the alphabet."""

    digit: int
    color: int = 0

    def __str__(self) -> str:
        return str(self.digit) if self.color == 0 else f"{self.digit}^{self.color}"


def alphabet(r: int, n: int) -> list[ColoredDigit]:
    """All r*n colored digits, digit-major."""
    return [ColoredDigit(d, c) for d in range(1, n + 1) for c in range(r)]


@dataclass(frozen=True)
class ColoredPermutation:
    """Element of G(r, n) in window form (1-based values, colors in [0, r))."""

    r: int
    tau: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        tau = tuple(int(v) for v in self.tau)
        z = tuple(int(c) for c in self.z)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "z", z)
        if self.r < 1:
            raise DomainError(f"number of colors must be positive, got r={self.r}")
        n = len(tau)
        if n == 0:
            raise DomainError("empty windows are not allowed (n >= 1)")
        if len(z) != n:
            raise DomainError(f"tau has length {n} but z has length {len(z)}")
        if sorted(tau) != list(range(1, n + 1)):
            raise DomainError(f"tau={tau} is not a permutation of 1..{n}")
        for i, c in enumerate(z, 1):
            if not 0 <= c < self.r:
                raise DomainError(f"color z_{i}={c} outside [0, {self.r - 1}]")

    @classmethod
    def _trusted(cls, r: int, tau: tuple[int, ...], z: tuple[int, ...]) -> ColoredPermutation:
        # hot path for enumeration and proof maps; inputs already valid
        obj = object.__new__(cls)
        object.__setattr__(obj, "r", r)
        object.__setattr__(obj, "tau", tau)
        object.__setattr__(obj, "z", z)
        return obj

    @classmethod
    def identity(cls, r: int, n: int) -> ColoredPermutation:
        return cls(r, tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def from_window(cls, entries: Sequence[ColoredDigit | tuple[int, int] | int], r: int) -> ColoredPermutation:
        """Build from window entries: ColoredDigit, (digit, color) or bare digit."""
        tau, z = [], []
        for e in entries:
            if isinstance(e, ColoredDigit):
                tau.append(e.digit)
                z.append(e.color)
            elif isinstance(e, tuple):
                tau.append(e[0])
                z.append(e[1])
            else:
                tau.append(e)
                z.append(0)
        return cls(r, tuple(tau), tuple(z))

    @property
    def n(self) -> int:
        return len(self.tau)

    @property
    def window(self) -> tuple[ColoredDigit, ...]:
        return tuple(ColoredDigit(d, c) for d, c in zip(self.tau, self.z))

    def image(self, i: int) -> ColoredDigit:
        """The window entry sigma(i), 1-based."""
        if not 1 <= i <= self.n:
            raise DomainError(f"position {i} outside [1, {self.n}]")
        return ColoredDigit(self.tau[i - 1], self.z[i - 1])

    def __mul__(self, other: ColoredPermutation) -> ColoredPermutation:
        return multiply(self, other)

    def __str__(self) -> str:
        return format_window(self)


def act(sigma: ColoredPermutation, x: ColoredDigit) -> ColoredDigit:
    """Image of the colored digit ``x`` under ``sigma``."""
    if not 1 <= x.digit <= sigma.n:
        raise DomainError(f"digit {x.digit} outside [1, {sigma.n}]")
    if not 0 <= x.color < sigma.r:
        raise DomainError(f"color {x.color} outside [0, {sigma.r - 1}]")
    i = x.digit - 1
    return ColoredDigit(sigma.tau[i], (sigma.z[i] + x.color) % sigma.r)


def multiply(a: ColoredPermutation, b: ColoredPermutation) -> ColoredPermutation:
    """Composition ``a o b``: apply ``b`` first, then ``a``."""
    if a.r != b.r or a.n != b.n:
        raise DomainError(f"cannot multiply elements of G({a.r},{a.n}) and G({b.r},{b.n})")
    r = a.r
    tau = tuple(a.tau[v - 1] for v in b.tau)
    z = tuple((zb + a.z[v - 1]) % r for v, zb in zip(b.tau, b.z))
    return ColoredPermutation._trusted(r, tau, z)


def inverse(sigma: ColoredPermutation) -> ColoredPermutation:
    n, r = sigma.n, sigma.r
    tau = [0] * n
    z = [0] * n
    for i, (v, c) in enumerate(zip(sigma.tau, sigma.z), 1):
        tau[v - 1] = i
        z[v - 1] = (-c) % r
    return ColoredPermutation._trusted(r, tuple(tau), tuple(z))


def underlying(sigma: ColoredPermutation) -> tuple[int, ...]:
    """The plain permutation |sigma| of [n]."""
    return sigma.tau


def count_cycles(tau: Sequence[int]) -> int:
    """Cycles of a 1-based permutation, fixed points included."""
    n = len(tau)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = tau[j] - 1
    return cycles


def cycle_count(sigma: ColoredPermutation) -> int:
    return count_cycles(sigma.tau)


def is_derangement(sigma: ColoredPermutation) -> bool:
    """True when no position is an absolute fixed point."""
    return all(v != i for i, v in enumerate(sigma.tau, 1))


def swap_positions(sigma: ColoredPermutation, i: int, j: int) -> ColoredPermutation:
    """Exchange the window entries (digit and color together) at positions i, j."""
    n = sigma.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"positions ({i}, {j}) outside [1, {n}]")
    tau = list(sigma.tau)
    z = list(sigma.z)
    tau[i - 1], tau[j - 1] = tau[j - 1], tau[i - 1]
    z[i - 1], z[j - 1] = z[j - 1], z[i - 1]
    return ColoredPermutation._trusted(sigma.r, tuple(tau), tuple(z))


# -- subsets and enumeration -------------------------------------------------


class Restriction(enum.Enum):
    """Which subset of G(r, n) to enumerate.  Even color sum needs r = 2."""

    ALL = "all"
    EVEN_COLOR_SUM = "dn"
    DERANGEMENTS = "derangements"
    DERANGEMENTS_EVEN_COLOR_SUM = "dn-derangements"

    @property
    def even_only(self) -> bool:
        return self in (Restriction.EVEN_COLOR_SUM, Restriction.DERANGEMENTS_EVEN_COLOR_SUM)

    @property
    def derangements_only(self) -> bool:
        return self in (Restriction.DERANGEMENTS, Restriction.DERANGEMENTS_EVEN_COLOR_SUM)


@dataclass(frozen=True)
class GroupSpec:
    """The set G(r, n), optionally restricted to D_n and/or derangements."""

    r: int
    n: int
    restriction: Restriction = Restriction.ALL

    def __post_init__(self):
        if not isinstance(self.restriction, Restriction):
            object.__setattr__(self, "restriction", Restriction(self.restriction))
        if self.r < 1:
            raise DomainError(f"r must be >= 1, got {self.r}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.restriction.even_only and self.r != 2:
            raise DomainError(f"restriction {self.restriction.value!r} requires r = 2, got r={self.r}")

    @property
    def ambient_size(self) -> int:
        """r^n * n!, the size of the full group; the cap is checked against it."""
        return self.r**self.n * math.factorial(self.n)

    def contains(self, sigma: ColoredPermutation) -> bool:
        if sigma.r != self.r or sigma.n != self.n:
            return False
        if self.restriction.even_only and sum(sigma.z) % 2:
            return False
        if self.restriction.derangements_only and not is_derangement(sigma):
            return False
        return True

    def __str__(self) -> str:
        return f"G({self.r},{self.n})[{self.restriction.value}]"


def check_cap(spec: GroupSpec, cap: int | None = None) -> None:
    cap = default_cap() if cap is None else cap
    if spec.ambient_size > cap:
        raise ResourceLimitError(
            f"{spec} needs {spec.ambient_size} elements to be scanned, cap is {cap}"
        )


def iter_underlying(n: int, derangements_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Permutations of 1..n in lexicographic order."""
    for tau in itertools.permutations(range(1, n + 1)):
        if derangements_only and any(v == i for i, v in enumerate(tau, 1)):
            continue
        yield tau


def enumerate_elements(spec: GroupSpec, cap: int | None = None) -> Iterator[ColoredPermutation]:
    """Every element of ``spec`` exactly once.

    Order: tau lexicographic; for each tau the color vector counts in base r
    with z_1 most significant.
    """
    check_cap(spec, cap)
    return _elements(spec)


def _elements(spec: GroupSpec) -> Iterator[ColoredPermutation]:
    r, n = spec.r, spec.n
    even = spec.restriction.even_only
    colorings = list(itertools.product(range(r), repeat=n))
    if even:
        colorings = [z for z in colorings if sum(z) % 2 == 0]
    make = ColoredPermutation._trusted
    for tau in iter_underlying(n, spec.restriction.derangements_only):
        for z in colorings:
            yield make(r, tau, z)


# -- window notation ----------------------------------------------------------

_TOKEN = re.compile(r"(\d+)(?:\^(\d+))?")


def format_window(sigma: ColoredPermutation) -> str:
    """Caret notation, e.g. ``"3 1^1 2^2"``; color 0 is written bare."""
    return " ".join(str(ColoredDigit(d, c)) for d, c in zip(sigma.tau, sigma.z))


def parse_window(text: str, r: int) -> ColoredPermutation:
    """Inverse of :func:`format_window`.  Tokens are ``d`` or ``d^c``."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    tokens = text.split()
    if not tokens:
        raise ParseError("empty window")
    n = len(tokens)
    tau, z = [], []
    seen: set[int] = set()
    for pos, tok in enumerate(tokens, 1):
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ParseError(f"malformed token {tok!r} (expected d or d^c)", pos)
        digit = int(m.group(1))
        color = int(m.group(2) or 0)
        if not 1 <= digit <= n:
            raise ParseError(f"digit {digit} outside [1, {n}]", pos)
        if digit in seen:
            raise ParseError(f"repeated digit {digit}", pos)
        if color >= r:
            raise ParseError(f"color {color} not below r={r}", pos)
        seen.add(digit)
        tau.append(digit)
        z.append(color)
    return ColoredPermutation(r, tuple(tau), tuple(z))
