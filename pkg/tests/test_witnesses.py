import math

import mpmath as mp
import numpy as np
import pytest

from hlpoly.constants import lower_bound_real
from hlpoly.norms import INF, sup_norm
from hlpoly.polynomial import evaluate
from hlpoly.witnesses import (
    build_witness, certification_gap, grid_sweep_check, witness_maximizer, witness_ratio,
    witness_sup_norm,
)


@pytest.mark.parametrize("m", range(2, 11))
def test_witness_shape(m):
    W = build_witness(m)
    assert len(W) == 2 ** (m // 2)
    assert sum(W.terms.values()) == 0.0
    assert set(abs(c) for c in W.terms.values()) == {1.0}
    assert (W.n, W.m) == (m, m)


def test_witness_small_forms():
    x = np.array([0.3, -0.7, 1.1, 0.4, -2.0])
    assert evaluate(build_witness(2), x[:2]) == pytest.approx(0.09 - 0.49)
    assert evaluate(build_witness(3), x[:3]) == pytest.approx((0.09 - 0.49) * 1.1)
    assert evaluate(build_witness(4), x[:4]) == pytest.approx((0.09 - 0.49) * (1.21 - 0.16))


@pytest.mark.parametrize("m", range(2, 13))
def test_maximizer_attains_closed_form(m):
    for p in (2 * m, 3 * m, INF):
        x = witness_maximizer(m, p)
        nrm = np.abs(x).max() if math.isinf(p) else (np.abs(x) ** p).sum() ** (1 / p)
        assert nrm == pytest.approx(1.0, rel=1e-14)
        assert abs(evaluate(build_witness(m), x)) == pytest.approx(witness_sup_norm(m, p), rel=1e-13)


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("mult", [2, 4])
def test_closed_form_matches_numeric(m, mult):
    p = mult * m
    num = sup_norm(build_witness(m), p, n_starts=32, seed=1)
    exact = witness_sup_norm(m, p)
    assert num.best_value <= exact * (1 + 1e-12)
    assert num.best_value == pytest.approx(exact, rel=1e-8)


@pytest.mark.parametrize("m", range(2, 7))
def test_grid_sweep_below_closed_form(m):
    for p in (2 * m, 4 * m, INF):
        assert grid_sweep_check(m, p, points=10_000, seed=m) <= witness_sup_norm(m, p) * (1 + 1e-12)


def test_ratio_examples():
    assert witness_ratio(2, 4).value == pytest.approx(math.sqrt(2), rel=1e-13)
    assert witness_ratio(4, 8).value == pytest.approx(2 * math.sqrt(2), rel=1e-13)
    r = witness_ratio(3, 6)
    assert r.value == pytest.approx(2 ** (1 / 6) * math.sqrt(3), rel=1e-13)
    assert r.label == "certified"
    assert r.params["reduced_ratio"] == pytest.approx(math.sqrt(2), rel=1e-13)


def mp_ratio(m, p):
    mp.mp.dps = 40
    m_, p_ = mp.mpf(m), mp.mpf(p)
    rho = 2 * m_ * p_ / (m_ * p_ + p_ - 2 * m_)
    terms = 2 ** (m // 2)
    if m % 2 == 0:
        den = (m_ / 2) ** (-m_ / p_)
    else:
        den = (2 / m_) ** ((m_ - 1) / p_) * m_ ** (-1 / p_)
    return terms ** (1 / rho) / den


@pytest.mark.parametrize("m", range(2, 13))
def test_certification_chain(m):
    for p in range(2 * m, 65, 4):
        r = witness_ratio(m, p).value
        assert r == pytest.approx(float(mp_ratio(m, p)), rel=1e-12)
        lb = lower_bound_real(m, p)
        assert r >= lb.proof_chain * (1 - 1e-12)
        assert certification_gap(m, p) >= -1e-12 * r
        if m % 2 == 0:
            assert r == pytest.approx(lb.proof_chain, rel=1e-12)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12])
def test_headline_at_p_2m(m):
    assert witness_ratio(m, 2 * m).value >= 2 ** (m / 16) * (1 - 1e-12)
    assert lower_bound_real(m, 2 * m).headline == pytest.approx(2 ** (m / 16), rel=1e-12)


def test_domain_errors():
    for m, p in [(1, 4), (3, 5), (2, INF)]:
        with pytest.raises(ValueError):
            witness_ratio(m, p)
    with pytest.raises(ValueError):
        build_witness(1)
