"""Orders on colored digits and the excedance-type statistics.

Two total orders live on the alphabet:

* absolute: by digit ascending, ties broken by color descending
  (``1^[r-1] < ... < 1^[1] < 1 < 2^[r-1] < ...``);
* color: by color descending, ties broken by digit ascending
  (``1^[r-1] < ... < n^[r-1] < 1^[r-2] < ... < 1 < ... < n``).
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from .perm import ColoredDigit, ColoredPermutation, act, alphabet, cycle_count


class OrderKind(enum.Enum):
    ABSOLUTE = "absolute"
    COLOR = "color"


def order_key(order: OrderKind, x: ColoredDigit) -> tuple[int, int]:
    if order is OrderKind.ABSOLUTE:
        return (x.digit, -x.color)
    if order is OrderKind.COLOR:
        return (-x.color, x.digit)
    raise TypeError(f"not an OrderKind: {order!r}")


def compare(order: OrderKind, x: ColoredDigit, y: ColoredDigit) -> int:
    """-1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    kx, ky = order_key(order, x), order_key(order, y)
    return (kx > ky) - (kx < ky)


def csum(sigma: ColoredPermutation) -> int:
    """Plain integer sum of the colors (not reduced mod r)."""
    return sum(sigma.z)


def exc_underlying(sigma: ColoredPermutation) -> int:
    return sum(1 for i, v in enumerate(sigma.tau, 1) if v > i)


def exc_A(sigma: ColoredPermutation) -> int:
    """Positions i in [n-1] with sigma(i) > i in the color order."""
    return sum(
        1
        for i in range(1, sigma.n)
        if compare(OrderKind.COLOR, sigma.image(i), ColoredDigit(i, 0)) > 0
    )


def exc_A_simple(sigma: ColoredPermutation) -> int:
    # equivalent shortcut: uncolored position whose value exceeds it
    return sum(1 for i, (v, c) in enumerate(zip(sigma.tau, sigma.z), 1) if c == 0 and v > i)


def exc_abs(sigma: ColoredPermutation) -> int:
    return exc_underlying(sigma) + csum(sigma)


def exc_clr(sigma: ColoredPermutation) -> int:
    return sigma.r * exc_A(sigma) + csum(sigma)


def exc_full(sigma: ColoredPermutation, order: OrderKind) -> int:
    """Excedances of sigma as a bijection of the whole alphabet under ``order``."""
    return sum(
        1 for x in alphabet(sigma.r, sigma.n) if compare(order, act(sigma, x), x) > 0
    )


def fix_abs(sigma: ColoredPermutation) -> int:
    """Absolute fixed points: |sigma(i)| = i, whatever the color."""
    return sum(1 for i, v in enumerate(sigma.tau, 1) if v == i)


EXCEDANCE = {"abs": exc_abs, "clr": exc_clr}


def excedance(sigma: ColoredPermutation, variant: str) -> int:
    """``exc_abs`` for ``variant="abs"``, ``exc_clr`` for ``"clr"``."""
    try:
        return EXCEDANCE[variant](sigma)
    except KeyError:
        raise ValueError(f"variant must be 'abs' or 'clr', got {variant!r}") from None


@dataclass(frozen=True)
class StatBundle:
    excAbs: int
    excClr: int
    excA: int
    excUnderlying: int
    csum: int
    cyc: int
    fixAbs: int

    def to_json(self) -> dict[str, int]:
        return asdict(self)


def stat_bundle(sigma: ColoredPermutation) -> StatBundle:
    a = exc_A(sigma)
    u = exc_underlying(sigma)
    c = csum(sigma)
    return StatBundle(
        excAbs=u + c,
        excClr=sigma.r * a + c,
        excA=a,
        excUnderlying=u,
        csum=c,
        cyc=cycle_count(sigma),
        fixAbs=fix_abs(sigma),
    )
