from dataclasses import replace
from fractions import Fraction
from math import comb

import pytest

from azlab.checks import (
    PAPER_TARGETS,
    CongruenceTarget as T,
    IdentityName as I,
    Tables,
    get_tables,
    identity_sweep,
    sweep,
    verify_congruence,
    verify_identity,
)
from azlab.modular import PrimeModulus, prime_range, reduce_rational

# ---------------------------------------------------------------- identities


def test_bb1_n2_by_hand():
    r = verify_identity(I.BB1, 2)
    assert r.lhs == 1 - 6 + 6 == r.rhs
    assert r.holds


def test_single_term_cases():
    r = verify_identity(I.CC3, 1, 0)
    assert (r.lhs, r.rhs, r.holds) == (1, 1, True)
    r = verify_identity(I.EE3, 1, 0)
    assert (r.lhs, r.rhs, r.holds) == (1, 1, True)


def test_red_cc4_n5_against_direct_evaluation():
    gamma = [1, -3, 9, -3, -279]
    lhs = sum(Fraction(4 * k + 1, 81**k) * gamma[k] for k in range(5))
    rhs = Fraction(1, 3**4) * sum(
        Fraction((5 - i) * comb(2 * i, i) ** 2 * comb(4 * i, 2 * i) * comb(5 + 3 * i, 4 * i), (-27) ** i)
        for i in range(5)
    )
    r = verify_identity(I.RED_CC4, 5)
    assert r.lhs == lhs and r.rhs == rhs and r.holds


@pytest.mark.parametrize("name", [I.RED_CC4, I.RED_DD])
def test_reductions_carry_sign_for_even_n(name):
    # the prime-indexed statements hide a (-1)^(n-1) that matters for even n
    r = verify_identity(name, 4)
    assert r.holds and r.lhs != 0


def test_identity_index_validation():
    with pytest.raises(ValueError):
        verify_identity(I.CC3, 3, 3)
    with pytest.raises(ValueError):
        verify_identity(I.CC3, 3)
    with pytest.raises(ValueError):
        verify_identity(I.BB1, 3, 0)
    with pytest.raises(ValueError):
        verify_identity(I.BB1, -1)


@pytest.mark.parametrize("name", list(I))
def test_identities_hold_up_to_40(name):
    bad = [(r.n, r.i) for r in identity_sweep([name], 40) if not r.holds]
    assert bad == []


def test_identity_sweep_ordering():
    rows = list(identity_sweep([I.EE3, I.BB1], 3))
    keys = [(r.name.value, r.n, r.i) for r in rows]
    assert keys[:4] == [("bb1", 0, None), ("bb1", 1, None), ("bb1", 2, None), ("bb1", 3, None)]
    assert keys[4:] == [("ee3", 1, 0), ("ee3", 2, 0), ("ee3", 2, 1), ("ee3", 3, 0), ("ee3", 3, 1), ("ee3", 3, 2)]


# --------------------------------------------------------------- congruences


def test_thm1_p5_by_hand():
    pm = PrimeModulus(5, 3)
    gamma = [1, -3, 9, -3, -279]
    terms = [reduce_rational(Fraction((4 * k + 1) * gamma[k], 81**k), pm).value for k in range(5)]
    assert terms == [1, 60, 71, 96, 17]
    c = verify_congruence(T.THM1, 5)
    assert c.lhs.value == c.rhs.value == sum(terms) % 125 == 120
    assert c.holds and c.m == 3 and not c.conjecture


def test_p5_anchors():
    c = verify_congruence(T.SIGN_BB10, 5)
    assert c.holds and c.rhs.value == 4  # -1 mod 5
    c = verify_congruence(T.LEHMER_BB11, 5)
    assert (c.lhs.value, c.rhs.value, c.holds) == (1, 1, True)
    c = verify_congruence(T.MORTENSON, 5)
    assert (c.lhs.value, c.rhs.value, c.holds) == (24, 24, True)


def test_lehmer_holds_mod_p_only():
    # stated mod p^2; only the mod-p reduction survives for p >= 7
    failing = []
    for p in prime_range(5, 200):
        c = verify_congruence(T.LEHMER_BB11, p)
        assert c.lhs.value % p == c.rhs.value % p
        if not c.holds:
            failing.append(p)
    assert 5 not in failing and 7 in failing and 11 in failing


def test_conjecture_flags():
    assert verify_congruence(T.CONJ_EE6, 7).conjecture
    assert verify_congruence(T.SUM_G_NINE, 7).conjecture
    assert not verify_congruence(T.THM3, 7).conjecture


def test_rejects_small_or_composite():
    for p in (2, 3, 9, 25):
        with pytest.raises(ValueError):
            verify_congruence(T.THM1, p)


def test_sweep_examples():
    checks = sweep({T.THM1}, 5, 7)
    assert [(c.p, c.holds) for c in checks] == [(5, True), (7, True)]
    assert sweep(set(), 5, 100) == []


def test_sweep_all_paper_targets_to_50():
    primes = prime_range(5, 50)
    checks = sweep(PAPER_TARGETS, 5, 50)
    assert len(PAPER_TARGETS) == 19
    assert len(checks) == 19 * len(primes) == 19 * 13
    assert [(c.target, c.p) for c in checks] == [(t, p) for t in PAPER_TARGETS for p in primes]
    failing = {(c.target, c.p) for c in checks if not c.holds}
    assert {t for t, _ in failing} <= {T.LEHMER_BB11}


def test_parallel_sweep_matches_serial():
    targets = [T.THM2, T.BB9, T.JV_REFLECT]
    assert sweep(targets, 5, 60, jobs=3) == sweep(targets, 5, 60)


@pytest.mark.parametrize("thm,red", [(T.THM1, I.RED_CC4), (T.THM2, I.RED_DD), (T.THM3, I.RED_EE)])
def test_reduction_routes_agree(thm, red):
    for p in prime_range(5, 199):
        direct = verify_congruence(thm, p).lhs
        via = reduce_rational(verify_identity(red, p).rhs, PrimeModulus(p, 3))
        assert direct == via, p


def test_remark_route_agrees_with_conjecture_lhs():
    for p in prime_range(5, 100):
        direct = verify_congruence(T.CONJ_EE6, p).lhs
        via = reduce_rational(verify_identity(I.RED_REMARK, p).rhs, PrimeModulus(p, 3))
        assert direct == via


def test_perturbed_gamma_breaks_thm1():
    tables = get_tables(5).with_gamma_offset(1, 1)
    assert not verify_congruence(T.THM1, 5, tables).holds
    assert verify_congruence(T.THM1, 5).holds


def test_first_failing_index_is_reported():
    base = Tables.build(11)
    g = list(base.g)
    g[2] += 1
    c = verify_congruence(T.JV_REFLECT, 5, replace(base, g=g))
    assert not c.holds and c.first_failing_index == 2
    ok = verify_congruence(T.JV_REFLECT, 5, base)
    assert ok.holds and ok.first_failing_index is None


def test_tables_too_small():
    with pytest.raises(ValueError):
        verify_congruence(T.THM1, 13, Tables.build(7))


def test_record_schema():
    rec = verify_congruence(T.THM1, 5).to_record()
    assert list(rec) == ["target", "p", "m", "lhs", "rhs", "holds", "first_failing_index", "conjecture"]
    assert rec["lhs"] == "120" and rec["first_failing_index"] is None
