import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symplt.cholesky import cholesky_lower
from symplt.generators import (
    FAMILIES,
    GeneratorSpec,
    RngStream,
    beta_hilbert_symplectic,
    beta_matrix,
    gener_symp2,
    hilbert,
    lemma4_construct,
    log_spectrum,
    orth_symp,
    perturbed_symplectic,
    random_spectrum_symplectic,
    s_of_t,
)
from symplt.linalg import condition_number, two_norm
from symplt.symplectic import loss_of_symplecticity, symplecticity_defect


def test_rng_stream_deterministic_and_in_range():
    a, b = RngStream(3), RngStream(3)
    ua, ub = a.uniform(1000), b.uniform(1000)
    assert np.array_equal(ua, ub)
    assert ua.min() > 0.0 and ua.max() < 1.0
    assert not np.array_equal(RngStream(4).uniform(10), RngStream(3).uniform(10))
    assert np.array_equal(RngStream.derive(7, 2).uniform(5), RngStream((7, 2)).uniform(5))
    assert not np.array_equal(RngStream.derive(7, 2).uniform(5), RngStream.derive(7, 4).uniform(5))


def test_normal_cache_makes_draws_split_invariant():
    whole = RngStream(11).normal(7)
    r = RngStream(11)
    parts = np.concatenate([r.normal(3), r.normal(1), r.normal(3)])
    assert np.array_equal(whole, parts)


def test_normal_moments():
    z = RngStream(0).normal(200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1.0) < 0.01


def test_s_of_t_examples():
    assert np.array_equal(s_of_t(0.0), np.eye(4))
    a = s_of_t(math.pi)
    d = loss_of_symplecticity(a.T @ a)
    assert 2.8478e-12 <= d <= 2.8478e-10
    with pytest.raises(OverflowError):
        s_of_t(1000.0)


@given(t=st.floats(-20, 20))
def test_s_of_t_symplectic(t):
    assert symplecticity_defect(s_of_t(t)).symp_rel <= 1e-14


def test_hilbert_examples():
    assert np.array_equal(hilbert(1), [[1.0]])
    assert np.array_equal(hilbert(2), [[1.0, 0.5], [0.5, 1 / 3]])
    assert hilbert(3)[2, 2] == 0.2
    with pytest.raises(ValueError):
        hilbert(0)


def test_hilbert_spd_up_to_13():
    for m in range(1, 14):
        cholesky_lower(hilbert(m))


def test_beta_examples():
    assert np.array_equal(beta_matrix(1), [[1.0]])
    assert np.array_equal(beta_matrix(3), [[1, 2, 3], [2, 6, 12], [3, 12, 30]])
    b = beta_matrix(40)
    assert np.array_equal(b, b.T)
    # (i+j-1)! / ((i-1)! (j-1)!) against the gamma-function oracle
    i, j = 17, 23
    oracle = math.exp(math.lgamma(i + j) - math.lgamma(i) - math.lgamma(j))
    assert b[i - 1, j - 1] == pytest.approx(oracle, rel=1e-12)
    for bad in (0, 61):
        with pytest.raises(ValueError):
            beta_matrix(bad)


def test_orth_symp_examples():
    q = orth_symp(1, RngStream(0))
    assert q.shape == (2, 2)
    assert np.linalg.norm(q.T @ q - np.eye(2), 2) <= 1e-15


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 30), seed=st.integers(0, 2**32 - 1))
def test_orth_symp_properties(n, seed):
    q = orth_symp(n, RngStream(seed))
    assert loss_of_symplecticity(q) <= 1e-12
    assert abs(two_norm(q).value - 1.0) <= 1e-10


def test_log_spectrum():
    assert np.array_equal(log_spectrum(1, 2.0), [100.0])
    d = log_spectrum(4, 3.0)
    assert d[0] == pytest.approx(1e3) and d[-1] == 1.0
    assert np.all(np.diff(d) < 0)


def test_gener_symp2_examples():
    assert np.allclose(gener_symp2(1, 0.0, RngStream(0)), np.eye(2), atol=1e-15)
    a = gener_symp2(5, 3.0, RngStream(0))
    assert condition_number(a) == pytest.approx(1e6, rel=1e-3)
    assert np.array_equal(a, a.T)
    with pytest.raises(ValueError):
        gener_symp2(0, 1.0, RngStream(0))
    with pytest.raises(ValueError):
        gener_symp2(2, -1.0, RngStream(0))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 20), s=st.floats(0, 3), seed=st.integers(0, 2**32 - 1))
def test_gener_symp2_symplectic_spd(n, s, seed):
    a = gener_symp2(n, s, RngStream(seed))
    assert symplecticity_defect(a).symp_rel <= 1e-12
    cholesky_lower(a)
    assert condition_number(a) == pytest.approx(10 ** (2 * s), rel=1e-6)


def test_block_congruence_examples():
    assert np.array_equal(lemma4_construct(np.eye(3), np.zeros((3, 3))), np.eye(6))
    # order-10 member of the beta/Hilbert family
    assert condition_number(beta_hilbert_symplectic(5)) == pytest.approx(1.1262e6, rel=1e-3)
    assert condition_number(beta_hilbert_symplectic(10)) == pytest.approx(1.9056e12, rel=1e-3)
    with pytest.raises(ValueError):
        lemma4_construct(np.eye(2), np.zeros((3, 3)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 10), seed=st.integers(0, 2**32 - 1))
def test_block_congruence_symplectic_for_well_conditioned_g(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    g = m @ m.T + n * np.eye(n)
    c = rng.standard_normal((n, n))
    a = lemma4_construct(g, c + c.T)
    assert symplecticity_defect(a).symp_rel <= 1e-12
    cholesky_lower(a)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 20), seed=st.integers(0, 2**32 - 1))
def test_random_spectrum_properties(n, seed):
    rng = RngStream(seed)
    a = random_spectrum_symplectic(n, rng)
    assert np.array_equal(a, a.T)
    assert symplecticity_defect(a).symp_rel <= 1e-11
    d = RngStream(seed).uniform(n)
    g = np.concatenate([d, 1 / d])
    if g.max() / g.min() <= 1e8:
        assert condition_number(a) == pytest.approx(g.max() / g.min(), rel=1e-6)


def test_random_spectrum_large_n():
    for seed in range(3):
        a = random_spectrum_symplectic(250, RngStream(seed))
        assert symplecticity_defect(a).symp_rel <= 1e-11


def test_perturbed_examples():
    base = gener_symp2(5, 3.0, RngStream(0))
    assert np.array_equal(perturbed_symplectic(5, 3.0, 0.0, RngStream(0)), base)
    assert loss_of_symplecticity(perturbed_symplectic(5, 3.0, 1.0, RngStream(0))) >= 10
    symp = symplecticity_defect(perturbed_symplectic(5, 3.0, 1e-6, RngStream(0))).symp_rel
    assert 1e-12 <= symp <= 1e-8
    with pytest.raises(ValueError):
        perturbed_symplectic(5, 3.0, -1.0, RngStream(0))


def test_generator_spec_round_trip_and_build():
    cases = [
        GeneratorSpec("s_of_t", t=1.5, options={"gram": True}),
        GeneratorSpec("gener_symp2", n=3, s=2.0, seed=5),
        GeneratorSpec("lemma4", n=4),
        GeneratorSpec("spectrum", n=6, seed=9),
        GeneratorSpec("perturbed", n=2, s=1.0, t=0.5, seed=1),
    ]
    assert {c.family for c in cases} == set(FAMILIES)
    for spec in cases:
        back = GeneratorSpec.from_json(spec.to_json())
        assert back == spec
        assert np.array_equal(back.build(), spec.build())


def test_generator_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec("nope")
    with pytest.raises(ValueError):
        GeneratorSpec("gener_symp2", n=3)
    spec = GeneratorSpec.from_json('{"n": 2, "s": 1}', family="gener_symp2")
    assert spec.seed == 0 and spec.build().shape == (4, 4)
