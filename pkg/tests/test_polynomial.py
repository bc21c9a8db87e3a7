import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlpoly import multiindex as mi
from hlpoly.polynomial import (
    HomoPoly, complexify, evaluate, from_json, gradient, polar, polar_coefficient,
    random_polynomial, restrict_diagonal, to_json,
)
from hlpoly.witnesses import build_witness


def test_evaluate_examples(xy, p2):
    assert evaluate(p2, [1.0, 0.0]) == 1.0
    assert evaluate(xy, [3.0, 2.0]) == 6.0
    t = 2 ** -0.25
    # z1^2 - z2^2 at (t, it) = t^2 + t^2
    val = evaluate(complexify(p2), np.array([t, 1j * t]))
    assert abs(val - math.sqrt(2)) < 1e-15


def test_evaluate_dimension_mismatch(xy):
    with pytest.raises(ValueError):
        evaluate(xy, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        evaluate(xy, np.array([1j, 1.0]))


def test_evaluate_batch_matches_pointwise(rng):
    P = random_polynomial(3, 3, "complex", seed=5, distribution="gaussian")
    X = rng.standard_normal((7, 3)) + 1j * rng.standard_normal((7, 3))
    batch = evaluate(P, X)
    for x, v in zip(X, batch):
        direct = sum(c * np.prod(x ** np.array(a)) for a, c in P.terms.items())
        assert abs(v - direct) <= 1e-12 * (1 + abs(direct))


def test_gradient_finite_differences(rng):
    P = random_polynomial(4, 3, "real", seed=2)
    x = rng.standard_normal((1, 3))
    _, g = gradient(P, x)
    h = 1e-6
    for j in range(3):
        e = np.zeros((1, 3))
        e[0, j] = h
        fd = (evaluate(P, x + e) - evaluate(P, x - e)) / (2 * h)
        assert abs(g[0, j] - fd[0]) < 1e-6 * (1 + abs(fd[0]))


@pytest.mark.parametrize("terms, i, want", [
    ({(1, 1): 1.0}, (0, 1), 0.5),
    ({(2, 0): 1.0}, (0, 0), 1.0),
    ({(2, 1): 1.0}, (0, 0, 1), 1 / 3),
])
def test_polar_coefficient_examples(terms, i, want):
    alpha = next(iter(terms))
    P = HomoPoly("real", len(alpha), sum(alpha), terms)
    assert polar_coefficient(P, i) == pytest.approx(want, abs=1e-16)


def test_polar_coefficient_absent_is_zero(xy):
    assert polar_coefficient(xy, (0, 0)) == 0.0


def test_restrict_examples(xy):
    back = restrict_diagonal(polar(xy))
    assert abs(back.terms[(1, 1)] - 1.0) <= 1e-15
    W = build_witness(4)
    assert restrict_diagonal(polar(W)).terms == W.terms
    P = random_polynomial(3, 3, "real", seed=42)
    Q = restrict_diagonal(polar(P))
    assert Q.terms.keys() == P.terms.keys()
    for a in P.terms:
        assert abs(Q.terms[a] - P.terms[a]) <= 1e-14 * abs(P.terms[a])


def test_polar_apply_on_diagonal_is_P(rng):
    # L(x, ..., x) = P(x): independent check of the orbit expansion
    P = random_polynomial(3, 2, "complex", seed=9, distribution="gaussian")
    x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert abs(polar(P).apply(*[x] * 3) - evaluate(P, x)) < 1e-12


def test_polar_apply_brute_force(rng):
    # sum over all of M(m, n) of L(e_i) prod y_k[i_k]
    from itertools import product
    P = random_polynomial(3, 2, "real", seed=4)
    ys = rng.standard_normal((3, 2))
    brute = sum(polar_coefficient(P, i) * np.prod([ys[k, i[k]] for k in range(3)])
                for i in product(range(2), repeat=3))
    assert abs(polar(P).apply(*ys) - brute) < 1e-12


def test_complexify_examples(p2):
    x2 = HomoPoly("real", 1, 2, {(2,): 1.0})
    assert complexify(x2).terms == {(2,): 1 + 0j}
    Pc = complexify(p2)
    assert Pc.field == "complex"
    assert sorted(abs(c) for c in Pc.terms.values()) == sorted(abs(c) for c in p2.terms.values())
    with pytest.raises(ValueError):
        complexify(Pc)


def test_random_polynomial_contract():
    a = random_polynomial(2, 2, "real", seed=7)
    b = random_polynomial(2, 2, "real", seed=7)
    assert a == b and to_json(a) == to_json(b)
    assert len(random_polynomial(3, 3, "complex", seed=1, distribution="gaussian")) == 10
    assert len(random_polynomial(4, 4, "real", seed=9, distribution="sparse", k=5)) == 5
    assert len(random_polynomial(2, 2, "real", seed=9, distribution="sparse", k=50)) == 3


def test_canonical_form():
    P = HomoPoly("real", 2, 2, {(2, 0): 0.0, (1, 1): 1e-301, (0, 2): 2.0})
    assert list(P.terms) == [(0, 2)]
    with pytest.raises(ValueError):
        HomoPoly("real", 2, 2, {(1, 0): 1.0})
    with pytest.raises(ValueError):
        HomoPoly("real", 2, 2, {(1, 1): 1j})


def test_json_format_and_errors(p2):
    d = json.loads(to_json(p2))
    assert d == {"field": "real", "n": 2, "m": 2,
                 "terms": [{"alpha": [2, 0], "re": 1.0}, {"alpha": [0, 2], "re": -1.0}]}
    for bad in ['{"field": "real"}', "[1]", "not json",
                '{"field":"real","n":2,"m":2,"terms":[{"alpha":[1,0],"re":1}]}']:
        with pytest.raises(ValueError):
            from_json(bad)


import json  # noqa: E402

floats = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300)


@settings(max_examples=100)
@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_json_round_trip_bit_exact(m, n, data):
    alphas = mi.enumerate_exponents(m, n)
    fld = data.draw(st.sampled_from(["real", "complex"]))
    terms = {}
    for a in alphas:
        if data.draw(st.booleans()):
            re = data.draw(floats)
            terms[a] = complex(re, data.draw(floats)) if fld == "complex" else re
    P = HomoPoly(fld, n, m, terms)
    Q = from_json(to_json(P))
    assert Q == P
    for a in P.terms:
        assert complex(Q.terms[a]).real.hex() == complex(P.terms[a]).real.hex()
        assert complex(Q.terms[a]).imag.hex() == complex(P.terms[a]).imag.hex()


# -- properties ------------------------------------------------------------


def test_lemma1_round_trip_200():
    rng = np.random.default_rng(0)
    for t in range(200):
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        P = random_polynomial(m, n, ["real", "complex"][t % 2], seed=t, distribution="gaussian")
        Q = restrict_diagonal(polar(P))
        for a, c in P.terms.items():
            assert abs(Q.terms[a] - c) <= 1e-13 * abs(c)


@settings(max_examples=100)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_polar_permutation_invariance(m, n, seed, rnd):
    P = random_polynomial(m, n, "real", seed=seed)
    i = [rnd.randrange(n) for _ in range(m)]
    j = i[:]
    rnd.shuffle(j)
    assert polar_coefficient(P, i) == polar_coefficient(P, j)


@settings(max_examples=100)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 10**6),
       st.floats(-10, 10, allow_nan=False))
def test_homogeneity(m, n, seed, t):
    P = random_polynomial(m, n, "complex", seed=seed, distribution="gaussian")
    x = np.random.default_rng(seed).standard_normal(n) * (1 + 0j)
    lhs = evaluate(P, t * x)
    rhs = t**m * evaluate(P, x)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6))
def test_complexify_agrees_on_real_points(m, n, seed):
    P = random_polynomial(m, n, "real", seed=seed)
    x = np.random.default_rng(seed).standard_normal(n)
    assert evaluate(complexify(P), x.astype(complex)) == evaluate(P, x)
