import math

import pytest

from exclab.errors import DomainError
from exclab.perm import ColoredPermutation, GroupSpec, Restriction, cycle_count, enumerate_elements, parse_window
from exclab.poly import ZERO, Q, q_int
from exclab.proofs import (
    Family,
    SubsetLabel,
    block_members,
    classify_derangements,
    classify_dn,
    classify_grn,
    enumerate_W,
    in_W,
    kill_dhat,
    lift_T_to_W,
    reduce_A,
    subset_contribution,
    swap_last_two,
    verify_derangements,
    verify_dn,
    verify_grn,
)
from exclab.stats import csum, exc_abs, exc_clr, exc_underlying

from conftest import all_elements


def W(text, r):
    return parse_window(text, r)


def L(family, color=None):
    return SubsetLabel(Family(family), color)


# -- labels ------------------------------------------------------------------------


def test_label_validation():
    assert str(L("T", 1)) == "T^1" and str(L("Dhat")) == "Dhat"
    with pytest.raises(DomainError):
        L("T")
    with pytest.raises(DomainError):
        L("K", 0)
    with pytest.raises(ValueError):
        SubsetLabel("X")


# -- G(r, n) -----------------------------------------------------------------------


def test_classify_grn_examples():
    assert classify_grn(ColoredPermutation.identity(3, 4)) == L("T", 0)
    assert classify_grn(W("2^1 1", 2)) == L("R", 1)
    assert classify_grn(W("1^1 2^2", 3)) == L("T", 2)
    with pytest.raises(DomainError):
        classify_grn(ColoredPermutation.identity(2, 1))


def test_swap_last_two():
    assert swap_last_two(W("2^1 1 3", 2)) == W("2^1 3 1", 2)
    for r in range(1, 4):
        for n in range(2, 5):
            for s in all_elements(r, n):
                assert swap_last_two(swap_last_two(s)) == s


def test_k_empty_at_n2():
    assert block_members(L("K"), GroupSpec(2, 2)) == []


@pytest.mark.parametrize("r,n", [(1, 3), (2, 3), (3, 3), (2, 4)])
def test_grn_block_sizes_and_order_independence(r, n):
    blocks = {}
    for s in all_elements(r, n):
        label = classify_grn(s)
        blocks.setdefault(label, 0)
        blocks[label] += 1
        # checking R before T gives the same answer
        alt = (L("R", s.z[n - 2]) if s.tau[n - 2] == n
               else L("T", s.z[n - 1]) if s.tau[n - 1] == n else L("K"))
        assert alt == label
    for i in range(r):
        assert blocks[L("T", i)] == blocks[L("R", i)] == r ** (n - 1) * math.factorial(n - 1)


# -- derangements ------------------------------------------------------------------


def test_classify_derangements_examples():
    assert classify_derangements(W("3 1^1 4 2^1", 2)) == L("A", 1)
    assert classify_derangements(W("2^1 3 1^2", 3)) == L("Tcycle")
    assert classify_derangements(W("2 1", 1)) == L("Tcycle")
    with pytest.raises(DomainError):
        classify_derangements(W("1 2", 1))


def test_kill_dhat_example():
    sigma = W("3^1 4 1^1 5^1 2^2", 3)
    image = kill_dhat(sigma)
    assert image == W("4 3^1 1^1 5^1 2^2", 3)
    assert kill_dhat(image) == sigma
    # |sigma| = 3 4 1 5 2 exceeds at 1, 2, 4; csum = 5
    for s in (sigma, image):
        assert exc_underlying(s) == 3 and csum(s) == 5 and exc_abs(s) == 8
    assert exc_clr(sigma) == exc_clr(image)
    assert (cycle_count(sigma) - cycle_count(image)) % 2 == 1


def test_kill_dhat_involution_exhaustive():
    for r in range(1, 4):
        for n in range(2, 5):
            for s in enumerate_elements(GroupSpec(r, n, Restriction.DERANGEMENTS)):
                if classify_derangements(s).family is Family.DHAT:
                    t = kill_dhat(s)
                    assert classify_derangements(t).family is Family.DHAT
                    assert kill_dhat(t) == s


def test_kill_dhat_wrong_block():
    with pytest.raises(DomainError):
        kill_dhat(W("2 3 1", 2))


def test_reduce_A_example():
    sigma = W("3 1^1 4 2^1", 2)
    image = reduce_A(sigma)
    assert image == W("2 3 1^1", 2)
    assert csum(sigma) - csum(image) == 1
    with pytest.raises(DomainError):
        reduce_A(W("2 3 1", 2))


def test_A_blocks_empty_at_n2():
    for r in range(1, 4):
        spec = GroupSpec(r, 2, Restriction.DERANGEMENTS)
        for i in range(r):
            assert block_members(L("A", i), spec) == []


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (2, 4), (3, 3), (3, 4)])
def test_reduce_A_counts(r, n):
    smaller = len(list(enumerate_elements(GroupSpec(r, n - 1, Restriction.DERANGEMENTS))))
    for i in range(r):
        members = block_members(L("A", i), GroupSpec(r, n, Restriction.DERANGEMENTS))
        assert len(members) == smaller
        assert len({reduce_A(s) for s in members}) == smaller


def test_lift_example():
    sigma = W("2^1 3 1^1", 3)
    image = lift_T_to_W(sigma)
    assert image == ColoredPermutation(4, (2, 3, 1), (1, 3, 1))
    assert csum(image) == 5 == exc_clr(sigma)
    assert in_W(image, 3)
    colored = W("2^1 3^2 1", 3)
    assert lift_T_to_W(colored).z == colored.z and lift_T_to_W(colored).r == 4
    with pytest.raises(DomainError):
        lift_T_to_W(W("3 1^1 4 2^1", 2))


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 4) for n in range(2, 5)])
def test_lift_is_onto_W(r, n):
    spec = GroupSpec(r, n, Restriction.DERANGEMENTS)
    images = {lift_T_to_W(s) for s in block_members(L("Tcycle"), spec)}
    target = enumerate_W(r, n)
    assert images == set(target) and len(target) == r**n
    assert all(in_W(w, r) for w in target)


# -- D_n -----------------------------------------------------------------------------


def test_classify_dn_examples():
    assert classify_dn(W("1 2", 2)) == L("DnT0")
    assert classify_dn(W("1^1 2^1", 2)) == L("DnT1")
    assert classify_dn(W("2 1", 2)) == L("DnR0")
    assert classify_dn(W("2^1 1^1", 2)) == L("DnR1")
    assert block_members(L("DnK"), GroupSpec(2, 2, Restriction.EVEN_COLOR_SUM)) == []
    assert classify_dn(ColoredPermutation.identity(2, 5)) == L("DnT0")
    with pytest.raises(DomainError):
        classify_dn(W("2 1 3^1", 2))


# -- contributions ---------------------------------------------------------------


def test_subset_contribution_examples():
    spec = GroupSpec(2, 2)
    assert subset_contribution(L("T", 0), spec, "abs", t=1, s=-1) == 1 + Q
    for r, n in [(2, 3), (3, 3), (2, 4)]:
        for v in ("abs", "clr"):
            assert subset_contribution(L("K"), GroupSpec(r, n), v, t=1, s=-1) == ZERO
            der = GroupSpec(r, n, Restriction.DERANGEMENTS)
            assert subset_contribution(L("Dhat"), der, v, t=0, s=-1) == ZERO


def test_subset_contribution_unspecialised():
    poly = subset_contribution(L("T", 0), GroupSpec(1, 2), "abs")
    assert poly.substitute(q=1, t=1, s=1) == 1


def test_tcycle_sum():
    for r in range(1, 4):
        for n in range(2, 5):
            spec = GroupSpec(r, n, Restriction.DERANGEMENTS)
            got = subset_contribution(L("Tcycle"), spec, "clr", s=-1)
            assert got == -((Q * q_int(r)) ** (n - 1)) * q_int(r)


@pytest.mark.parametrize("block,spec", [
    (L("T", 0), GroupSpec(2, 3, Restriction.DERANGEMENTS)),
    (L("A", 0), GroupSpec(2, 3)),
    (L("DnK"), GroupSpec(2, 3)),
    (L("T", 2), GroupSpec(2, 3)),
])
def test_block_spec_mismatch(block, spec):
    with pytest.raises(DomainError):
        subset_contribution(block, spec, "abs")


# -- suites ----------------------------------------------------------------------


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 3) for n in range(2, 5)])
def test_suites_pass_small(r, n):
    for rep in (verify_grn(r, n), verify_derangements(r, n)):
        assert rep.passed, [c.to_json() for c in rep.failures()]
        data = rep.to_json()
        assert data["passed"] and data["checks"]


def test_dn_suite_small():
    for n in range(2, 6):
        rep = verify_dn(n)
        assert rep.passed, [c.to_json() for c in rep.failures()]
        assert sum(rep.block_sizes.values()) == 2 ** (n - 1) * math.factorial(n)


def test_report_records_counterexample():
    rep = verify_grn(2, 2)
    rep.expect_all("demo", [(True, W("1 2", 2)), (False, W("2 1", 2))])
    assert not rep.passed
    bad = rep.failures()[0].to_json()
    assert bad["counterexample"] == "2 1" and bad["detail"] == {"checked": 2}
