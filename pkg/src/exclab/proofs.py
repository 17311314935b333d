"""Set decompositions, killing involutions and bijections behind the identities.

Every map here rewrites window entries directly (swaps, truncation,
relabelling); none of them goes through group multiplication.

Decompositions:

* G(r,n), n >= 2: K (n sits in neither of the last two positions),
  T^i (sigma(n) = n^[i]) and R^i (sigma(n-1) = n^[i]);
* derangements D(r,n), n >= 2: A^i (sigma(2) = 1^[i] and |sigma(1)| != 2),
  Tcycle (|sigma| = 2 3 ... n 1) and Dhat (everything else);
* D_n, n >= 2: the five blocks K, T^0, T^1, R^0, R^1 of the first
  decomposition restricted to even color sum.

The ``verify_*`` functions check every claimed property element by element
and return a :class:`SuiteReport`.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .distribution import distribution, distribution_over
from .errors import DomainError
from .perm import (
    ColoredPermutation,
    GroupSpec,
    Restriction,
    cycle_count,
    enumerate_elements,
    format_window,
    is_derangement,
    swap_positions,
)
from .poly import ZERO, MultiPoly, Q, q_int
from .stats import csum, exc_A, exc_abs, exc_clr, exc_underlying


class Family(enum.Enum):
    K = "K"
    T = "T"
    R = "R"
    A = "A"
    TCYCLE = "Tcycle"
    DHAT = "Dhat"
    DN_K = "DnK"
    DN_T0 = "DnT0"
    DN_T1 = "DnT1"
    DN_R0 = "DnR0"
    DN_R1 = "DnR1"


INDEXED = {Family.T, Family.R, Family.A}
GRN_FAMILIES = {Family.K, Family.T, Family.R}
DERANGEMENT_FAMILIES = {Family.A, Family.TCYCLE, Family.DHAT}
DN_FAMILIES = {Family.DN_K, Family.DN_T0, Family.DN_T1, Family.DN_R0, Family.DN_R1}


@dataclass(frozen=True, order=False)
class SubsetLabel:
    family: Family
    color: int | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if (self.color is not None) != (self.family in INDEXED):
            raise DomainError(f"color index must be given exactly for T, R, A; got {self.family.value} {self.color}")

    def __str__(self) -> str:
        if self.color is None:
            return self.family.value
        return f"{self.family.value}^{self.color}"

    def sort_key(self):
        return (self.family.value, -1 if self.color is None else self.color)


def grn_labels(r: int) -> list[SubsetLabel]:
    return ([SubsetLabel(Family.K)] + [SubsetLabel(Family.T, i) for i in range(r)]
            + [SubsetLabel(Family.R, i) for i in range(r)])


def derangement_labels(r: int) -> list[SubsetLabel]:
    return ([SubsetLabel(Family.A, i) for i in range(r)]
            + [SubsetLabel(Family.TCYCLE), SubsetLabel(Family.DHAT)])


def _need_n2(sigma: ColoredPermutation) -> None:
    if sigma.n < 2:
        raise DomainError(f"decomposition uses positions n-1 and n, need n >= 2, got n={sigma.n}")


def long_cycle(n: int) -> tuple[int, ...]:
    """The window 2 3 ... n 1."""
    return tuple(range(2, n + 1)) + (1,)


# -- G(r, n) -------------------------------------------------------------------


def classify_grn(sigma: ColoredPermutation) -> SubsetLabel:
    _need_n2(sigma)
    n = sigma.n
    if sigma.tau[n - 1] == n:
        return SubsetLabel(Family.T, sigma.z[n - 1])
    if sigma.tau[n - 2] == n:
        return SubsetLabel(Family.R, sigma.z[n - 2])
    return SubsetLabel(Family.K)


def swap_last_two(sigma: ColoredPermutation) -> ColoredPermutation:
    _need_n2(sigma)
    return swap_positions(sigma, sigma.n - 1, sigma.n)


def truncate_last(sigma: ColoredPermutation) -> ColoredPermutation:
    """Drop position n of an element that has |sigma(n)| = n."""
    _need_n2(sigma)
    if sigma.tau[-1] != sigma.n:
        raise DomainError(f"{format_window(sigma)} does not end in the digit {sigma.n}")
    return ColoredPermutation._trusted(sigma.r, sigma.tau[:-1], sigma.z[:-1])


# -- derangements ----------------------------------------------------------------


def classify_derangements(sigma: ColoredPermutation) -> SubsetLabel:
    _need_n2(sigma)
    if not is_derangement(sigma):
        raise DomainError(f"{format_window(sigma)} has an absolute fixed point")
    if sigma.tau[1] == 1 and sigma.tau[0] != 2:
        return SubsetLabel(Family.A, sigma.z[1])
    if sigma.tau == long_cycle(sigma.n):
        return SubsetLabel(Family.TCYCLE)
    return SubsetLabel(Family.DHAT)


def kill_dhat(sigma: ColoredPermutation) -> ColoredPermutation:
    """Swap positions i, i+1 for the first i with |sigma(i)| != i+1."""
    if classify_derangements(sigma).family is not Family.DHAT:
        raise DomainError(f"{format_window(sigma)} is not in Dhat")
    for i in range(1, sigma.n):
        if sigma.tau[i - 1] != i + 1:
            return swap_positions(sigma, i, i + 1)
    # only the long cycle has no such i, and it was classified Tcycle
    raise AssertionError(f"classification bug: no swap position for {format_window(sigma)}")


def reduce_A(sigma: ColoredPermutation) -> ColoredPermutation:
    """Remove the entry 1^[i] at position 2 and shift every digit down by one."""
    label = classify_derangements(sigma)
    if label.family is not Family.A:
        raise DomainError(f"{format_window(sigma)} is in {label}, not in an A block")
    tau = (sigma.tau[0] - 1,) + tuple(v - 1 for v in sigma.tau[2:])
    z = (sigma.z[0],) + sigma.z[2:]
    return ColoredPermutation._trusted(sigma.r, tau, z)


def lift_T_to_W(sigma: ColoredPermutation) -> ColoredPermutation:
    """Recolor uncolored positions i < n with the new color r, landing in G(r+1, n)."""
    if classify_derangements(sigma).family is not Family.TCYCLE:
        raise DomainError(f"{format_window(sigma)} is not in Tcycle")
    n, r = sigma.n, sigma.r
    z = tuple(c if (i == n or c != 0) else r for i, c in enumerate(sigma.z, 1))
    return ColoredPermutation._trusted(r + 1, sigma.tau, z)


def in_W(sigma: ColoredPermutation, r: int) -> bool:
    """Membership in W: long cycle in G(r+1,n), z_i != 0 for i < n, z_n != r."""
    n = sigma.n
    return (
        sigma.r == r + 1
        and sigma.tau == long_cycle(n)
        and all(c != 0 for c in sigma.z[:-1])
        and sigma.z[-1] != r
    )


def enumerate_W(r: int, n: int) -> list[ColoredPermutation]:
    """W built straight from its definition."""
    tau = long_cycle(n)
    return [
        ColoredPermutation(r + 1, tau, head + (last,))
        for head in itertools.product(range(1, r + 1), repeat=n - 1)
        for last in range(r)
    ]


# -- D_n -------------------------------------------------------------------------


def classify_dn(sigma: ColoredPermutation) -> SubsetLabel:
    _need_n2(sigma)
    if sigma.r != 2 or csum(sigma) % 2:
        raise DomainError(f"{format_window(sigma)} (r={sigma.r}) is not in D_n")
    n = sigma.n
    if sigma.tau[n - 1] == n:
        return SubsetLabel(Family.DN_T1 if sigma.z[n - 1] else Family.DN_T0)
    if sigma.tau[n - 2] == n:
        return SubsetLabel(Family.DN_R1 if sigma.z[n - 2] else Family.DN_R0)
    return SubsetLabel(Family.DN_K)


# -- block sums ---------------------------------------------------------------------


def _classifier_for(block: SubsetLabel, spec: GroupSpec) -> Callable:
    fam = block.family
    if fam in GRN_FAMILIES:
        if spec.restriction is not Restriction.ALL:
            raise DomainError(f"block {block} partitions all of G(r,n), not {spec}")
        if block.color is not None and not 0 <= block.color < spec.r:
            raise DomainError(f"block {block} needs color index below r={spec.r}")
        return classify_grn
    if fam in DERANGEMENT_FAMILIES:
        if spec.restriction is not Restriction.DERANGEMENTS:
            raise DomainError(f"block {block} partitions the derangements, not {spec}")
        if block.color is not None and not 0 <= block.color < spec.r:
            raise DomainError(f"block {block} needs color index below r={spec.r}")
        return classify_derangements
    if spec.restriction is not Restriction.EVEN_COLOR_SUM:
        raise DomainError(f"block {block} partitions D_n, not {spec}")
    return classify_dn


def block_members(block: SubsetLabel, spec: GroupSpec, cap=None) -> list[ColoredPermutation]:
    if spec.n < 2:
        raise DomainError(f"decompositions need n >= 2, got {spec}")
    classify = _classifier_for(block, spec)
    return [s for s in enumerate_elements(spec, cap) if classify(s) == block]


def subset_contribution(block: SubsetLabel, spec: GroupSpec, variant: str,
                        t: int | None = None, s: int | None = None, cap=None) -> MultiPoly:
    """Generating polynomial restricted to one block, optionally specialised."""
    poly = distribution_over(block_members(block, spec, cap), variant)
    vals = {k: v for k, v in (("t", t), ("s", s)) if v is not None}
    return poly.substitute(**vals) if vals else poly


# -- verification suites ------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    counterexample: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    suite: str
    r: int
    n: int
    block_sizes: dict[str, int] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "r": self.r,
            "n": self.n,
            "passed": self.passed,
            "blockSizes": self.block_sizes,
            "checks": [c.to_json() for c in self.checks],
        }

    # helpers used while building the report

    def expect(self, name: str, ok: bool, **detail) -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def expect_all(self, name: str, cases: Iterable[tuple[bool, ColoredPermutation]]) -> None:
        count = 0
        for ok, sigma in cases:
            count += 1
            if not ok:
                self.checks.append(Check(name, False, {"checked": count}, format_window(sigma)))
                return
        self.checks.append(Check(name, True, {"checked": count}))

    def expect_poly(self, name: str, computed: MultiPoly, claimed: MultiPoly) -> None:
        self.checks.append(Check(name, computed == claimed, {
            "computed": computed.q_coefficients(),
            "claimed": claimed.q_coefficients(),
        }))


class _Stats:
    """Memoised statistics, since every element is inspected many times."""

    def __init__(self):
        self._memo: dict[ColoredPermutation, tuple] = {}

    def __call__(self, sigma: ColoredPermutation) -> tuple[int, int, int, int, int, int]:
        got = self._memo.get(sigma)
        if got is None:
            got = (exc_abs(sigma), exc_clr(sigma), cycle_count(sigma), csum(sigma),
                   exc_underlying(sigma), exc_A(sigma))
            self._memo[sigma] = got
        return got

    def abs(self, s):
        return self(s)[0]

    def clr(self, s):
        return self(s)[1]

    def cyc(self, s):
        return self(s)[2]

    def csum(self, s):
        return self(s)[3]

    def under(self, s):
        return self(s)[4]

    def exc_a(self, s):
        return self(s)[5]


def _signed_sum(elements: Iterable[ColoredPermutation], variant: str, t: int) -> MultiPoly:
    return distribution_over(elements, variant).substitute(t=t, s=-1)


def _partition(elements, classify) -> dict[SubsetLabel, list[ColoredPermutation]]:
    blocks: dict[SubsetLabel, list] = defaultdict(list)
    for sigma in elements:
        blocks[classify(sigma)].append(sigma)
    return blocks


def _sizes(blocks, labels: Iterable[SubsetLabel]) -> dict[str, int]:
    return {str(k): len(blocks.get(k, ())) for k in sorted(labels, key=SubsetLabel.sort_key)}


def _check_bijection(rep: SuiteReport, name: str, source: list, image_fn, target: list, target_pred) -> list:
    """Image lands in target, no two sources collide, and the sizes agree."""
    images = [image_fn(s) for s in source]
    rep.expect_all(f"{name}: image in target", ((target_pred(im), s) for s, im in zip(source, images)))
    distinct = len(set(images))
    rep.expect(f"{name}: injective", distinct == len(images), images=len(images), distinct=distinct)
    rep.expect(f"{name}: onto", distinct == len(target) and set(images) == set(target),
               source=len(source), target=len(target))
    return images


def _check_killing(rep: SuiteReport, name: str, block: list, phi, member, st: _Stats) -> None:
    """phi maps the block to itself, is a fixed-point-free involution,
    keeps both excedance numbers and flips the cycle parity."""
    pairs = [(s, phi(s)) for s in block]
    rep.expect_all(f"{name}: maps block to itself", ((member(p), s) for s, p in pairs))
    rep.expect_all(f"{name}: involution", ((phi(p) == s, s) for s, p in pairs))
    rep.expect_all(f"{name}: no fixed points", ((p != s, s) for s, p in pairs))
    rep.expect_all(f"{name}: preserves exc_abs", ((st.abs(p) == st.abs(s), s) for s, p in pairs))
    rep.expect_all(f"{name}: preserves exc_clr", ((st.clr(p) == st.clr(s), s) for s, p in pairs))
    rep.expect_all(f"{name}: flips cycle parity",
                   (((st.cyc(p) - st.cyc(s)) % 2 == 1, s) for s, p in pairs))


def verify_grn(r: int, n: int, cap=None) -> SuiteReport:
    """Decomposition K / T^i / R^i of G(r,n) and its bookkeeping at t=1, s=-1."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    rep = SuiteReport("grn", r, n)
    st = _Stats()
    elements = list(enumerate_elements(GroupSpec(r, n), cap))
    blocks = _partition(elements, classify_grn)
    rep.block_sizes = _sizes(blocks, grn_labels(r))

    def predicates(s):
        hits = []
        if s.tau[n - 1] != n and s.tau[n - 2] != n:
            hits.append(SubsetLabel(Family.K))
        for i in range(r):
            if (s.tau[n - 1], s.z[n - 1]) == (n, i):
                hits.append(SubsetLabel(Family.T, i))
            if (s.tau[n - 2], s.z[n - 2]) == (n, i):
                hits.append(SubsetLabel(Family.R, i))
        return hits

    rep.expect_all("partition: exactly one block per element",
                   ((predicates(s) == [classify_grn(s)], s) for s in elements))
    size = r ** (n - 1) * math.factorial(n - 1)
    for i in range(r):
        rep.expect(f"|T^{i}| = |R^{i}| = r^(n-1)(n-1)!",
                   len(blocks[SubsetLabel(Family.T, i)]) == size == len(blocks[SubsetLabel(Family.R, i)]),
                   expected=size)

    K = blocks[SubsetLabel(Family.K)]
    in_K = lambda s: classify_grn(s).family is Family.K
    _check_killing(rep, "phi on K", K, swap_last_two, in_K, st)

    lower = list(enumerate_elements(GroupSpec(r, n - 1), cap))
    lower_set = set(lower)
    prev = {v: distribution(GroupSpec(r, n - 1), v, cap).substitute(t=1, s=-1) for v in ("abs", "clr")}

    for i in range(r):
        Ti = blocks[SubsetLabel(Family.T, i)]
        Ri = blocks[SubsetLabel(Family.R, i)]
        name = f"T^{i} -> G({r},{n - 1})"
        _check_bijection(rep, name, Ti, truncate_last, lower, lambda x: x in lower_set)
        rep.expect_all(f"{name}: exc_abs drops by {i}",
                       ((st.abs(s) - st.abs(truncate_last(s)) == i, s) for s in Ti))
        rep.expect_all(f"{name}: exc_clr drops by {i}",
                       ((st.clr(s) - st.clr(truncate_last(s)) == i, s) for s in Ti))
        rep.expect_all(f"{name}: one cycle fewer",
                       ((st.cyc(s) - st.cyc(truncate_last(s)) == 1, s) for s in Ti))

        name = f"R^{i} -> T^{i}"
        Ti_set = set(Ti)
        _check_bijection(rep, name, Ri, swap_last_two, Ti, lambda x: x in Ti_set)
        clr_drop = r if i == 0 else 0
        rep.expect_all(f"{name}: exc_abs drops by 1",
                       ((st.abs(s) - st.abs(swap_last_two(s)) == 1, s) for s in Ri))
        rep.expect_all(f"{name}: exc_clr drops by {clr_drop}",
                       ((st.clr(s) - st.clr(swap_last_two(s)) == clr_drop, s) for s in Ri))
        rep.expect_all(f"{name}: csum unchanged",
                       ((st.csum(s) == st.csum(swap_last_two(s)), s) for s in Ri))
        rep.expect_all(f"{name}: flips cycle parity",
                       (((st.cyc(s) - st.cyc(swap_last_two(s))) % 2 == 1, s) for s in Ri))

    for v in ("abs", "clr"):
        p = prev[v]
        total = ZERO
        got = _signed_sum(K, v, 1)
        rep.expect_poly(f"[{v}] K contributes 0", got, ZERO)
        total += got
        for i in range(r):
            got = _signed_sum(blocks[SubsetLabel(Family.T, i)], v, 1)
            rep.expect_poly(f"[{v}] T^{i} contributes -q^{i} P_(n-1)", got, -(Q**i) * p)
            total += got
            got = _signed_sum(blocks[SubsetLabel(Family.R, i)], v, 1)
            if v == "abs":
                rep.expect_poly(f"[abs] R^{i} contributes q^{i + 1} P_(n-1)", got, Q ** (i + 1) * p)
            else:
                k = r if i == 0 else i
                rep.expect_poly(f"[clr] R^{i} contributes q^{k} P_(n-1)", got, Q**k * p)
            total += got
        whole = distribution(GroupSpec(r, n), v, cap).substitute(t=1, s=-1)
        rep.expect_poly(f"[{v}] blocks sum to P_n", total, whole)
    return rep


def verify_derangements(r: int, n: int, cap=None) -> SuiteReport:
    """Decomposition A^i / Tcycle / Dhat of D(r,n) and its bookkeeping at t=0, s=-1."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    rep = SuiteReport("derangements", r, n)
    st = _Stats()
    elements = list(enumerate_elements(GroupSpec(r, n, Restriction.DERANGEMENTS), cap))
    blocks = _partition(elements, classify_derangements)
    rep.block_sizes = _sizes(blocks, derangement_labels(r))
    cyc_n = long_cycle(n)

    def predicates(s):
        hits = [SubsetLabel(Family.A, i) for i in range(r)
                if s.tau[1] == 1 and s.z[1] == i and s.tau[0] != 2]
        if s.tau == cyc_n:
            hits.append(SubsetLabel(Family.TCYCLE))
        if not hits:
            hits.append(SubsetLabel(Family.DHAT))
        return hits

    rep.expect_all("partition: exactly one block per element",
                   ((predicates(s) == [classify_derangements(s)], s) for s in elements))

    Tc = blocks[SubsetLabel(Family.TCYCLE)]
    rep.expect("|Tcycle| = r^n", len(Tc) == r**n, size=len(Tc))

    D = blocks[SubsetLabel(Family.DHAT)]
    in_D = lambda s: classify_derangements(s).family is Family.DHAT
    _check_killing(rep, "phi on Dhat", D, kill_dhat, in_D, st)

    lower = list(enumerate_elements(GroupSpec(r, n - 1, Restriction.DERANGEMENTS), cap))
    lower_set = set(lower)
    for i in range(r):
        Ai = blocks[SubsetLabel(Family.A, i)]
        name = f"A^{i} -> D({r},{n - 1})"
        if n == 2:
            rep.expect(f"{name}: both sides empty", not Ai and not lower)
            continue
        _check_bijection(rep, name, Ai, reduce_A, lower, lambda x: x in lower_set)
        rep.expect_all(f"{name}: exc of |sigma| unchanged",
                       ((st.under(s) == st.under(reduce_A(s)), s) for s in Ai))
        rep.expect_all(f"{name}: exc_A unchanged",
                       ((st.exc_a(s) == st.exc_a(reduce_A(s)), s) for s in Ai))
        rep.expect_all(f"{name}: csum drops by {i}",
                       ((st.csum(s) - st.csum(reduce_A(s)) == i, s) for s in Ai))
        rep.expect_all(f"{name}: cycle count unchanged",
                       ((st.cyc(s) == st.cyc(reduce_A(s)), s) for s in Ai))

    W = enumerate_W(r, n)
    _check_bijection(rep, f"Tcycle -> W in G({r + 1},{n})", Tc, lift_T_to_W, W, lambda x: in_W(x, r))
    rep.expect_all("Tcycle -> W: csum(image) = exc_clr(source)",
                   ((st.csum(lift_T_to_W(s)) == st.clr(s), s) for s in Tc))

    rq = q_int(r)
    for v in ("abs", "clr"):
        prev = distribution(GroupSpec(r, n - 1, Restriction.DERANGEMENTS), v, cap).substitute(t=0, s=-1)
        total = ZERO
        got = _signed_sum(D, v, 0)
        rep.expect_poly(f"[{v}] Dhat contributes 0", got, ZERO)
        total += got
        for i in range(r):
            got = _signed_sum(blocks[SubsetLabel(Family.A, i)], v, 0)
            rep.expect_poly(f"[{v}] A^{i} contributes q^{i} P_(n-1)", got, Q**i * prev)
            total += got
        got = _signed_sum(Tc, v, 0)
        total += got
        if v == "abs":
            rep.expect_poly("[abs] Tcycle contributes -q^(n-1) [r]_q^n", got, -(Q ** (n - 1)) * rq**n)
        else:
            claimed = -((Q * rq) ** (n - 1)) * rq
            rep.expect_poly("[clr] Tcycle contributes -(q + ... + q^r)^(n-1) [r]_q", got, claimed)
            rep.expect_poly("[clr] signed csum over W equals Tcycle sum",
                            _w_csum_sum(W), claimed)
        whole = distribution(GroupSpec(r, n, Restriction.DERANGEMENTS), v, cap).substitute(t=0, s=-1)
        rep.expect_poly(f"[{v}] blocks sum to P_n", total, whole)
    return rep


def _w_csum_sum(W: list[ColoredPermutation]) -> MultiPoly:
    """sum over W of q^csum (-1)^cyc."""
    acc: dict = defaultdict(int)
    for w in W:
        acc[(csum(w), 0, 0)] += (-1) ** cycle_count(w)
    return MultiPoly(acc)


def verify_dn(n: int, cap=None) -> SuiteReport:
    """Five-block decomposition of D_n and the coupled bookkeeping for a_n, b_n."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    rep = SuiteReport("dn", 2, n)
    st = _Stats()
    elements = list(enumerate_elements(GroupSpec(2, n, Restriction.EVEN_COLOR_SUM), cap))
    blocks = _partition(elements, classify_dn)
    rep.block_sizes = _sizes(blocks, [SubsetLabel(f) for f in DN_FAMILIES])

    def predicates(s):
        hits = []
        if s.tau[n - 1] != n and s.tau[n - 2] != n:
            hits.append(Family.DN_K)
        last, before = (s.tau[n - 1], s.z[n - 1]), (s.tau[n - 2], s.z[n - 2])
        for fam, entry, want in ((Family.DN_T0, last, (n, 0)), (Family.DN_T1, last, (n, 1)),
                                 (Family.DN_R0, before, (n, 0)), (Family.DN_R1, before, (n, 1))):
            if entry == want:
                hits.append(fam)
        return [SubsetLabel(f) for f in hits]

    rep.expect_all("partition: exactly one block per element",
                   ((predicates(s) == [classify_dn(s)], s) for s in elements))
    rep.expect("blocks cover D_n", sum(map(len, blocks.values())) == 2 ** (n - 1) * math.factorial(n))

    get = lambda fam: blocks[SubsetLabel(fam)]
    K = get(Family.DN_K)
    in_K = lambda s: classify_dn(s).family is Family.DN_K
    _check_killing(rep, "phi on K_n", K, swap_last_two, in_K, st)

    lower_even = list(enumerate_elements(GroupSpec(2, n - 1, Restriction.EVEN_COLOR_SUM), cap))
    lower_odd = [s for s in enumerate_elements(GroupSpec(2, n - 1), cap) if csum(s) % 2]
    even_set, odd_set = set(lower_even), set(lower_odd)
    drop_then_cut = lambda s: truncate_last(swap_last_two(s))

    # (block, map, target, csum drop, exc_A drop, exc_clr drop, exc_abs drop, cycle change parity)
    maps = [
        (Family.DN_T0, truncate_last, "D_(n-1)", 0, 0, 0, 0, 1),
        (Family.DN_T1, truncate_last, "D^c_(n-1)", 1, 0, 1, 1, 1),
        (Family.DN_R0, drop_then_cut, "D_(n-1)", 0, 1, 2, 1, 0),
        (Family.DN_R1, drop_then_cut, "D^c_(n-1)", 1, 0, 1, 2, 0),
    ]
    for fam, fn, tname, d_csum, d_a, d_clr, d_abs, d_par in maps:
        src = get(fam)
        target, tset = (lower_even, even_set) if tname.startswith("D_") else (lower_odd, odd_set)
        name = f"{fam.value} -> {tname}"
        _check_bijection(rep, name, src, fn, target, lambda x, ts=tset: x in ts)
        pairs = [(s, fn(s)) for s in src]
        rep.expect_all(f"{name}: csum drops by {d_csum}",
                       ((st.csum(s) - st.csum(p) == d_csum, s) for s, p in pairs))
        rep.expect_all(f"{name}: exc_A drops by {d_a}",
                       ((st.exc_a(s) - st.exc_a(p) == d_a, s) for s, p in pairs))
        rep.expect_all(f"{name}: exc_clr drops by {d_clr}",
                       ((st.clr(s) - st.clr(p) == d_clr, s) for s, p in pairs))
        rep.expect_all(f"{name}: exc_abs drops by {d_abs}",
                       ((st.abs(s) - st.abs(p) == d_abs, s) for s, p in pairs))
        rep.expect_all(f"{name}: cycle parity {'flips' if d_par else 'kept'}",
                       (((st.cyc(s) - st.cyc(p)) % 2 == d_par, s) for s, p in pairs))

    # block claims: factor applied to a_(n-1) or b_(n-1)
    claims = {
        "clr": {Family.DN_T0: ("a", -1, 0), Family.DN_T1: ("b", -1, 1),
                Family.DN_R0: ("a", 1, 2), Family.DN_R1: ("b", 1, 1)},
        "abs": {Family.DN_T0: ("a", -1, 0), Family.DN_T1: ("b", -1, 1),
                Family.DN_R0: ("a", 1, 1), Family.DN_R1: ("b", 1, 2)},
    }
    for v in ("abs", "clr"):
        a_prev = distribution(GroupSpec(2, n - 1, Restriction.EVEN_COLOR_SUM), v, cap).substitute(t=1, s=-1)
        b_prev = distribution(GroupSpec(2, n - 1), v, cap).substitute(t=1, s=-1) - a_prev
        got = _signed_sum(K, v, 1)
        rep.expect_poly(f"[{v}] K_n contributes 0", got, ZERO)
        total = got
        for fam, (which, sign, power) in claims[v].items():
            base = a_prev if which == "a" else b_prev
            got = _signed_sum(get(fam), v, 1)
            label = f"{'-' if sign < 0 else ''}q^{power} {which}_(n-1)"
            rep.expect_poly(f"[{v}] {fam.value} contributes {label}", got, sign * Q**power * base)
            total += got
        whole = distribution(GroupSpec(2, n, Restriction.EVEN_COLOR_SUM), v, cap).substitute(t=1, s=-1)
        rep.expect_poly(f"[{v}] blocks sum to a_n", total, whole)
    return rep
