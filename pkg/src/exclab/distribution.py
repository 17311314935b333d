"""Brute-force generating polynomials sum q^exc t^fix s^cyc.

Two independent routes compute the same sums:

* :func:`distribution_over` walks ColoredPermutation objects one at a time
  and calls the reference statistics in :mod:`exclab.stats`;
* :func:`distribution` scans a whole group with numpy, one block of
  underlying permutations against all color vectors at once, and
  accumulates integer counts per exponent triple.

The fast route optionally fans blocks out to worker processes.  Blocks are
fixed-size and summed in block order; since the reduction is an exact integer
sum the result does not depend on the number of workers.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

import numpy as np

from .errors import DomainError
from .perm import ColoredPermutation, GroupSpec, Restriction, check_cap, count_cycles
from .poly import MultiPoly
from .stats import excedance, fix_abs

VARIANTS = ("abs", "clr")
BLOCK = 2520  # underlying permutations per work unit


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")


def distribution_over(elements: Iterable[ColoredPermutation], variant: str) -> MultiPoly:
    """Sum of q^exc t^fix s^cyc over an explicit collection of elements."""
    _check_variant(variant)
    counts: Counter = Counter()
    shape = None
    for sigma in elements:
        if shape is None:
            shape = (sigma.r, sigma.n)
        elif (sigma.r, sigma.n) != shape:
            raise DomainError(
                f"mixed groups in one stream: G{shape} and G({sigma.r},{sigma.n})"
            )
        counts[(excedance(sigma, variant), fix_abs(sigma), count_cycles(sigma.tau))] += 1
    return MultiPoly(counts)


# -- vectorized scan ------------------------------------------------------------


def _colorings(r: int, n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(r), repeat=n)), dtype=np.int64).reshape(-1, n)


def _cycle_counts(taus: np.ndarray) -> np.ndarray:
    """Cycles of each row (0-based images): count positions that are their orbit minimum."""
    m, n = taus.shape
    start = np.broadcast_to(np.arange(n), (m, n))
    orbit_min = start.copy()
    cur = taus.copy()
    for _ in range(n - 1):
        np.minimum(orbit_min, cur, out=orbit_min)
        cur = np.take_along_axis(taus, cur, axis=1)
    return (orbit_min == start).sum(axis=1)


def _block_counts(r: int, n: int, restriction: str, variant: str, start: int, stop: int) -> dict:
    restr = Restriction(restriction)
    rows = itertools.islice(itertools.permutations(range(n)), start, stop)
    taus = np.array(list(rows), dtype=np.int64).reshape(-1, n)
    pos = np.arange(n)
    fix = (taus == pos).sum(axis=1)
    if restr.derangements_only:
        keep = fix == 0
        taus, fix = taus[keep], fix[keep]
    if taus.shape[0] == 0:
        return {}
    exceed = taus > pos
    cyc = _cycle_counts(taus)

    z = _colorings(r, n)
    if restr.even_only:
        z = z[z.sum(axis=1) % 2 == 0]
    color_sum = z.sum(axis=1)

    if variant == "abs":
        exc = exceed.sum(axis=1)[:, None] + color_sum[None, :]
    else:
        # position n never exceeds, so the [n-1] restriction is automatic
        uncolored = (z == 0).astype(np.int64)
        exc_a = exceed.astype(np.int64) @ uncolored.T
        exc = r * exc_a + color_sum[None, :]

    base = n + 1
    keys = (exc * base + fix[:, None]) * base + cyc[:, None]
    hist = np.bincount(keys.ravel())
    out = {}
    for key in np.flatnonzero(hist):
        k = int(key)
        out[(k // (base * base), (k // base) % base, k % base)] = int(hist[key])
    return out


def _blocks(n: int) -> list[tuple[int, int]]:
    total = math.factorial(n)
    return [(lo, min(lo + BLOCK, total)) for lo in range(0, total, BLOCK)]


@functools.lru_cache(maxsize=512)
def _scan(r: int, n: int, restriction: str, variant: str, jobs: int) -> MultiPoly:
    tasks = [(r, n, restriction, variant, lo, hi) for lo, hi in _blocks(n)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_block_counts, *zip(*tasks)))
    else:
        parts = [_block_counts(*t) for t in tasks]
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return MultiPoly(total)


def distribution(spec: GroupSpec, variant: str, cap: int | None = None, jobs: int = 1) -> MultiPoly:
    """Sum of q^exc t^fix s^cyc over every element of ``spec``.

    ``variant`` selects exc_abs ("abs") or exc_clr ("clr"); fix counts
    absolute fixed points and cyc the cycles of the underlying permutation.
    """
    _check_variant(variant)
    check_cap(spec, cap)
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs}")
    return _scan(spec.r, spec.n, spec.restriction.value, variant, jobs)


def clear_cache() -> None:
    _scan.cache_clear()
