import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nihocodes import closed
from nihocodes.errors import DomainError, IrrationalSum
from nihocodes.expsums import (
    a_domain,
    char_sum,
    fiber_counts,
    moment_report,
    niho_polynomial_values,
    niho_root_count,
    sum_table,
    value_distribution,
)
from nihocodes.niho import NihoFamily, Variant, make_family
from refield import RefField

# frozen from a full enumeration with the polynomial-arithmetic oracle in refield.py
FROZEN_PARY4_3_2_T2 = {81: 1, 18: 960, 9: 720, 0: 2960, -9: 1920}
FROZEN_BINARY3_M3_S2 = {64: 1, 40: 21, 16: 147, -8: 343}

FAMILIES = [
    make_family(2, 2, "binary3", s2=1),
    make_family(2, 3, "binary3", s2=2),
    make_family(2, 3, "binary4", k=1, t=5),
    make_family(2, 3, "binary4", k=1, t=1),
    make_family(3, 2, "pary4", t=2),
    make_family(3, 2, "pary4", t=6),
    make_family(5, 2, "pary4", t=6),
]


def reference_sum(ctx, fam, a, b):
    """Character sum straight from polynomial arithmetic; returns (value, fibers)."""
    ref = RefField(ctx.p, ctx.spec.modulus)
    A, B = ref.from_log(a, ctx.zero), ref.from_log(b, ctx.zero)
    fibers = [0] * ctx.p
    for k in list(range(ctx.order)) + [ctx.zero]:
        x = ref.from_log(k, ctx.zero)
        xd1 = ref.pow(x, fam.d1) if k != ctx.zero else ref.zero()
        xd2 = ref.pow(x, fam.d2) if k != ctx.zero else ref.zero()
        if fam.variant is Variant.BINARY3:
            j = (ref.trace(ref.mul(A, xd1), terms=ctx.m) + ref.trace(ref.mul(B, xd2))) % ctx.p
        else:
            j = ref.trace(ref.add(ref.mul(A, xd1), ref.mul(B, xd2)))
        fibers[j] += 1
    return fibers[0] - fibers[1], fibers


def test_trivial_values(field):
    for fam in FAMILIES:
        ctx = field(fam.p, fam.m)
        assert char_sum(ctx, fam, ctx.zero, ctx.zero) == ctx.pm**2
        assert niho_root_count(ctx, fam, ctx.zero, ctx.zero) == ctx.pm + 1


def test_binary3_example(field):
    ctx = field(2, 2)
    fam = FAMILIES[0]
    assert char_sum(ctx, fam, ctx.zero, ctx.one) == 0
    assert reference_sum(ctx, fam, ctx.zero, ctx.one)[0] == 0
    # z^2 + 1 = (z + 1)^2 has the single root 1 on S
    assert niho_root_count(ctx, fam, ctx.zero, ctx.one) == 1
    vals = niho_polynomial_values(ctx, fam, ctx.zero, ctx.one)
    expected = [ctx.add(ctx.mul(int(z), int(z)), ctx.one) for z in ctx.unit_circle]
    assert vals.tolist() == expected


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILIES), st.data())
def test_char_sum_matches_reference(fam, data):
    from conftest import cached_field

    ctx = cached_field(fam.p, fam.m)
    a = data.draw(st.sampled_from(a_domain(ctx, fam).tolist()))
    b = data.draw(st.integers(0, ctx.q - 1))
    value, fibers = reference_sum(ctx, fam, a, b)
    assert char_sum(ctx, fam, a, b) == value
    assert fiber_counts(ctx, fam, a, b) == fibers
    assert (niho_root_count(ctx, fam, a, b) - 1) * ctx.pm == value


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_direct_equals_niho_elementwise(field, fam):
    ctx = field(fam.p, fam.m)
    direct = sum_table(ctx, fam, "direct")
    niho = sum_table(ctx, fam, "niho")
    assert direct.shape == (len(a_domain(ctx, fam)), ctx.q)
    assert np.array_equal(direct, niho)


def test_frozen_distributions(field):
    pary = make_family(3, 2, "pary4", t=2)
    b3 = make_family(2, 3, "binary3", s2=2)
    assert b3.l == 3
    for fam, frozen in [(pary, FROZEN_PARY4_3_2_T2), (b3, FROZEN_BINARY3_M3_S2)]:
        ctx = field(fam.p, fam.m)
        for method in ("direct", "niho"):
            assert value_distribution(ctx, fam, method).entries == frozen
        assert closed.closed_value_dist(fam).entries == frozen


def test_binary3_m2_distribution(field):
    ctx = field(2, 2)
    vd = value_distribution(ctx, FAMILIES[0], "niho")
    assert vd.entries == {16: 1, 4: 30, 0: 15, -4: 18}
    assert vd.total == vd.domain_size == 64


def test_binary4_m3_distribution(field):
    ctx = field(2, 3)
    fam = make_family(2, 3, "binary4", k=1, t=1)
    vd = value_distribution(ctx, fam, "direct", jobs=3)
    assert vd.entries == {64: 1, 16: 588, 8: 504, 0: 1827, -8: 1176}


def test_jobs_do_not_change_result(field):
    ctx = field(3, 2)
    fam = FAMILIES[4]
    assert value_distribution(ctx, fam, "niho", jobs=4).entries == value_distribution(ctx, fam, "niho").entries


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_support_containment(field, fam):
    ctx = field(fam.p, fam.m)
    P, l = ctx.pm, fam.l
    if fam.variant is Variant.BINARY3:
        allowed = {P * P, -P, (l - 1) * P, (2 * l - 1) * P}
    elif fam.variant is Variant.BINARY4:
        allowed = {P * P, -P, (l - 1) * P, (2 * l - 1) * P, (3 * l - 1) * P}
    else:
        allowed = {P * P, -P, (l // 2 - 1) * P, (l - 1) * P, (3 * l // 2 - 1) * P}
    assert set(value_distribution(ctx, fam).entries) <= allowed


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([f for f in FAMILIES if f.p > 2]), st.data())
def test_lambda_invariance(fam, data):
    from conftest import cached_field

    ctx = cached_field(fam.p, fam.m)
    a = data.draw(st.integers(0, ctx.q - 1))
    b = data.draw(st.integers(0, ctx.q - 1))
    lam = ctx.from_residue(data.draw(st.integers(1, ctx.p - 1)))
    assert char_sum(ctx, fam, ctx.mul(lam, a), ctx.mul(lam, b)) == char_sum(ctx, fam, a, b)


def test_irrational_sum_detected(field):
    # x^8 is 1 on GF(9)*, so the sum is 1 + 8 zeta^2: the nonzero fibers differ
    ctx = field(3, 1)
    bad = NihoFamily(Variant.PARY4, 3, 1, s1=1, s2=1, d1=8, d2=8, l=2, t=4)
    assert fiber_counts(ctx, bad, ctx.one, ctx.zero) == [1, 0, 8]
    with pytest.raises(IrrationalSum):
        char_sum(ctx, bad, ctx.one, ctx.zero)


def test_domain_errors(field):
    ctx = field(2, 2)
    fam = FAMILIES[0]
    with pytest.raises(DomainError):
        char_sum(ctx, fam, 1, 0)  # theta is not in GF(4)
    with pytest.raises(DomainError):
        char_sum(ctx, fam, 0, ctx.q)


def test_sampling_mode(field):
    ctx = field(3, 2)
    fam = FAMILIES[4]
    vd = value_distribution(ctx, fam, sample=500, seed=7)
    assert vd.total == vd.domain_size == 500
    assert set(vd.entries) <= set(FROZEN_PARY4_3_2_T2)
    again = value_distribution(ctx, fam, sample=500, seed=7)
    assert vd.entries == again.entries


def test_moment_examples(field):
    ctx = field(2, 2)
    rep = moment_report(ctx, FAMILIES[0])
    one, two = rep.items
    assert (one.identity, one.lhs) == (1, 64)
    assert (two.identity, two.lhs, two.rhs_closed) == (2, 1024, 64 * 16)
    assert rep.passed
    rep6 = moment_report(field(3, 2), FAMILIES[4])
    assert rep6.items[0].identity == 6 and rep6.items[0].lhs == 6561
    assert rep6.passed


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_moments_pass(field, fam):
    rep = moment_report(field(fam.p, fam.m), fam)
    assert rep.passed, rep.to_list()
