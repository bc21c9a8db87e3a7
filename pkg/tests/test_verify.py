import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hlpoly.norms import INF, SpaceParams
from hlpoly.polynomial import COMPLEX, REAL, HomoPoly, evaluate, monomial, random_polynomial
from hlpoly.verify import (
    BLEI_SHAPES, BleiInstance, _compositions, blei_sides, certified_sup_upper, check_bayart,
    check_blei, check_complexification, check_eq888, check_harris, harris_factor,
    random_blei_instance, repeated_polar, run_bayart_suite, run_blei_suite,
    run_complexify_suite, run_harris_suite, solve_rho,
)

E1, E2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])


def z1z2(field=COMPLEX):
    return HomoPoly(field, 2, 2, {(1, 1): 1.0})


# -- Blei ---------------------------------------------------------------

def test_blei_identity_example():
    inst = BleiInstance(np.eye(2), 2, 2, 1, 1.0, 2.0, 4 / 3)
    lhs, rhs = blei_sides(inst)
    assert lhs == pytest.approx(2 ** 0.75, rel=1e-14)
    assert rhs == pytest.approx(2.0, rel=1e-14)
    r = check_blei(inst)
    assert r.holds and r.verdict == "pass"


@pytest.mark.parametrize("m,n,k", BLEI_SHAPES)
def test_blei_single_entry_equality(m, n, k):
    a = np.zeros((n,) * m)
    a[(n - 1,) * m] = -2.5
    inst = BleiInstance(a, m, n, k, 1.3, 2.7, solve_rho(m, k, 1.3, 2.7))
    lhs, rhs = blei_sides(inst)
    assert lhs == pytest.approx(2.5, rel=1e-13) and rhs == pytest.approx(2.5, rel=1e-13)


@given(st.integers(0, 2**31), st.floats(1.0, 3.0))
@settings(max_examples=50, deadline=None)
def test_blei_s_equal_q_collapses(seed, s):
    a = np.random.default_rng(seed).standard_normal((2, 2, 2))
    lhs, rhs = blei_sides(BleiInstance(a, 3, 2, 1, s, s, s))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_blei_rejects_bad_instances():
    with pytest.raises(ValueError):
        BleiInstance(np.eye(2), 2, 2, 1, 1.0, 2.0, 1.5)
    with pytest.raises(ValueError):
        BleiInstance(np.eye(3), 2, 2, 1, 1.0, 2.0, 4 / 3)
    with pytest.raises(ValueError):
        BleiInstance(np.eye(2), 2, 2, 1, 2.0, 1.5, 12 / 7)
    with pytest.raises(ValueError):
        BleiInstance(np.eye(2), 2, 2, 3, 1.0, 2.0, 4 / 3)


@given(st.integers(0, 2**31), st.sampled_from(BLEI_SHAPES))
@settings(max_examples=200, deadline=None)
def test_blei_random_instances_hold(seed, shape):
    inst = random_blei_instance(*shape, seed)
    assert inst.s <= inst.rho <= inst.q
    assert check_blei(inst).holds


def test_blei_suite_small():
    reps = run_blei_suite(trials=50, seed=4)
    assert len(reps) == 50 * len(BLEI_SHAPES)
    assert all(r.holds for r in reps)
    assert [r.lhs for r in reps] == [r.lhs for r in run_blei_suite(trials=50, seed=4, workers=3)]


# -- Bayart -------------------------------------------------------------

def test_bayart_examples():
    r = check_bayart(z1z2(), 2.0, samples=20_000, seed=0)
    assert r.lhs == 1.0 and abs(r.rhs - 1.0) <= 1e-12 and r.holds
    r = check_bayart(z1z2(), 1.0, samples=20_000, seed=0)
    assert r.rhs == pytest.approx(2.0, rel=1e-12) and r.margin == pytest.approx(1.0, rel=1e-12)
    P = HomoPoly(COMPLEX, 2, 2, {(2, 0): 1, (0, 2): 1})
    r = check_bayart(P, 2.0, samples=100_000, seed=5)
    assert r.lhs == pytest.approx(math.sqrt(2), rel=1e-14)
    assert abs(r.rhs - r.lhs) <= 3 * r.stderr
    assert r.holds


def test_bayart_accepts_real_input_and_rejects_bad_s():
    assert check_bayart(z1z2(REAL), 1.5, samples=1000).holds
    with pytest.raises(ValueError):
        check_bayart(z1z2(), 2.5)


def test_bayart_suite_small():
    reps = run_bayart_suite(trials=10, samples=5_000, seed=3)
    assert len(reps) == 30
    assert all(r.holds for r in reps)


# -- Harris -------------------------------------------------------------

def test_harris_factor_values():
    assert harris_factor((1, 1)) == 2.0
    assert harris_factor((2, 1)) == pytest.approx(9 / 4, rel=1e-15)
    for m in range(1, 8):
        assert harris_factor((m,)) == pytest.approx(1.0, rel=1e-15)
    assert harris_factor((0, 3)) == pytest.approx(1.0, rel=1e-15)
    big = harris_factor((15, 15))
    assert harris_factor((15, 15, 0)) == big
    assert math.isfinite(harris_factor((20, 20)))


def test_harris_examples():
    r = check_harris(z1z2(), (1, 1), (E1, E2), INF)
    assert r.lhs == pytest.approx(0.5, rel=1e-15)
    assert r.extra["factor"] == 2.0
    assert r.extra["sup_norm"] == pytest.approx(1.0, rel=1e-12)
    assert r.holds
    P = random_polynomial(3, 2, COMPLEX, seed=2)
    x = np.array([0.6, 0.8j])
    r = check_harris(P, (3,), (x,), 2.0)
    assert r.extra["factor"] == 1.0
    assert r.lhs == pytest.approx(abs(evaluate(P, x)), rel=1e-13)
    assert r.holds
    r = check_harris(monomial((2, 1), field=COMPLEX), (2, 1), (E1, E2), INF)
    assert r.lhs == pytest.approx(1 / 3, rel=1e-15)
    assert r.extra["factor"] == pytest.approx(9 / 4, rel=1e-15)
    assert r.lhs <= 9 / 8 * r.extra["sup_norm"]
    assert r.holds


def dft_polar(P, partition, points):
    """Coefficient of prod t_j^{m_j} in P(sum t_j x_j), over m!/prod m_j!."""
    m, k = P.m, len(partition)
    N = m + 1
    w = np.exp(2j * np.pi * np.arange(N) / N)
    X = np.array(points, dtype=complex)
    total = 0.0
    for idx in itertools.product(range(N), repeat=k):
        t = w[list(idx)]
        total += evaluate(P, t @ X) * np.prod(t ** (-np.array(partition)))
    coef = total / N**k
    return coef * math.prod(math.factorial(mj) for mj in partition) / math.factorial(m)


@given(st.integers(0, 2**31), st.integers(2, 4), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_repeated_polar_matches_dft_oracle(seed, m, n):
    rng = np.random.default_rng(seed)
    P = random_polynomial(m, n, COMPLEX, seed=seed, distribution="gaussian")
    parts = list(_compositions(m))
    part = parts[seed % len(parts)]
    pts = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in part]
    got = repeated_polar(P, part, pts)
    assert got == pytest.approx(dft_polar(P, part, pts), rel=1e-9, abs=1e-10)


def test_certified_upper_bounds_numeric_norm():
    P = random_polynomial(3, 3, COMPLEX, seed=9)
    r = check_harris(P, (1, 2), (np.array([1, 0, 0]), np.array([0, 1, 0])), INF, n_starts=8)
    assert r.extra["sup_norm"] <= certified_sup_upper(P, INF) * (1 + 1e-12)
    assert certified_sup_upper(monomial((2, 1)), 3.0) == pytest.approx((2 / 3) ** (2 / 3) * (1 / 3) ** (1 / 3))


def test_harris_input_errors():
    with pytest.raises(ValueError):
        check_harris(z1z2(), (1, 1), (E1,), INF)
    with pytest.raises(ValueError):
        check_harris(z1z2(), (1, 2), (E1, E2), INF)
    with pytest.raises(ValueError):
        check_harris(z1z2(), (1, 1), (E1, 2 * E2), INF)


def test_harris_suite_small():
    reps = run_harris_suite(trials=15, seed=1)
    assert not any(r.hard_failure for r in reps)


# -- complexification ---------------------------------------------------

def test_complexification_examples():
    r = check_complexification(monomial((2, 0)), 4.0)
    assert r.extra["ratio"] == pytest.approx(1.0, rel=1e-9) and r.holds
    P2 = HomoPoly(REAL, 2, 2, {(2, 0): 1.0, (0, 2): -1.0})
    r = check_complexification(P2, 4.0)
    assert r.extra["norm_real"] == pytest.approx(1.0, rel=1e-9)
    assert r.extra["ratio"] == pytest.approx(math.sqrt(2), rel=1e-6)
    t = 2 ** -0.25
    assert abs(evaluate(HomoPoly(COMPLEX, 2, 2, P2.terms), np.array([t, 1j * t]))) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        check_complexification(z1z2(), 4.0)


def test_complexify_suite_small():
    reps = run_complexify_suite(trials=8, seed=11)
    assert all(r.extra["ratio"] <= r.extra["bound"] * (1 + 1e-6) for r in reps)
    assert all(r.verdict in ("pass", "inconclusive") for r in reps)


# -- integral inequality with K^m ---------------------------------------

def test_eq888_examples():
    r = check_eq888(z1z2(), INF, 2.0, 1.0, samples=10_000)
    assert r.lhs == 1.0 and r.rhs == pytest.approx(1.0, rel=1e-12) and r.holds
    assert r.details == "exact torus measure"
    P = random_polynomial(2, 3, COMPLEX, seed=4, distribution="gaussian")
    r = check_eq888(P, INF, 1.0, math.sqrt(2), samples=50_000, seed=2)
    b = check_bayart(P, 1.0, samples=50_000, seed=2)
    assert r.holds and r.rhs == pytest.approx(b.rhs, rel=1e-12)
    r = check_eq888(z1z2(), 8.0, 2.0, 2.0, samples=20_000, seed=1)
    assert r.details == "approximate measure (cone)"
    assert r.verdict in ("pass", "within-band", "inconclusive")
    assert r.extra["measure"] == "cone-measure"


def test_eq888_domain():
    with pytest.raises(ValueError):
        check_eq888(z1z2(), 2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        check_eq888(z1z2(), 8.0, 3.0, 1.0)
    with pytest.raises(ValueError):
        check_eq888(z1z2(), INF, 1.0, 0.0)


# -- records ------------------------------------------------------------

def test_record_format():
    rec = check_blei(BleiInstance(np.eye(2), 2, 2, 1, 1.0, 2.0, 4 / 3), seed=7).to_record()
    assert list(rec)[:7] == ["check", "holds", "lhs", "rhs", "margin", "seed", "verdict"]
    assert rec["check"] == "blei" and rec["seed"] == 7
    json.dumps(rec)
    rec = check_harris(z1z2(), (1, 1), (E1, E2), INF).to_record()
    assert rec["p"] == "inf"
    json.dumps(rec)
