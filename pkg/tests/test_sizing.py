import itertools

import numpy as np
import pytest

from resonance_sizer import (
    Permutation,
    SizeMismatch,
    TooLarge,
    class_mates,
    distance_matrix,
    edge_equivalent,
    is_generic,
    random_configuration,
    scale_configuration,
    size_v,
    v_sigma,
    validate_configuration,
)
from tests.conftest import apply_rigid_motion


def brute_max(config):
    d = distance_matrix(config)
    n = config.n
    return max(
        sum(d[j, p[j]] for j in range(n)) for p in itertools.permutations(range(n))
    )


def test_v_sigma_identity_is_zero(unit_pair):
    assert v_sigma(unit_pair, Permutation.identity(2)) == 0.0


def test_v_sigma_swap_doubles_distance():
    cfg = validate_configuration([(0, 0, 0), (0, 0.7, 0)])
    assert v_sigma(cfg, Permutation((1, 0))) == pytest.approx(1.4, rel=1e-15)


def test_v_sigma_equilateral_cycle(equilateral):
    assert v_sigma(equilateral, Permutation((1, 2, 0))) == pytest.approx(3.0, rel=1e-12)


def test_v_sigma_size_mismatch(unit_pair):
    with pytest.raises(SizeMismatch):
        v_sigma(unit_pair, Permutation((1, 2, 0)))


def test_size_v_pair(unit_pair):
    report = size_v(unit_pair, mode="brute")
    assert report.v == pytest.approx(2.0, rel=1e-15)
    assert report.argmax == Permutation((1, 0))
    assert report.achievers == (Permutation((1, 0)),)


def test_size_v_equilateral(equilateral):
    report = size_v(equilateral, mode="brute")
    assert report.v == pytest.approx(3.0, rel=1e-12)
    # both 3-cycles tie; transpositions reach only 2
    assert set(a.image for a in report.achievers) == {(1, 2, 0), (2, 0, 1)}


def test_size_v_collinear(collinear):
    report = size_v(collinear, mode="brute")
    assert report.v == pytest.approx(4.0, rel=1e-15)
    # the end-swapping transposition and both 3-cycles all attain 4
    assert set(a.image for a in report.achievers) == {(2, 1, 0), (1, 2, 0), (2, 0, 1)}


def test_size_v_assignment_matches_brute_small():
    rng = np.random.default_rng(17)
    for n in range(2, 7):
        for _ in range(10):
            cfg = random_configuration(n, rng)
            brute = size_v(cfg, mode="brute")
            assign = size_v(cfg, mode="assignment")
            assert assign.v == pytest.approx(brute.v, abs=1e-12 * max(1.0, brute.v))
            assert assign.achievers is None
            assert brute.v == pytest.approx(brute_max(cfg), rel=1e-15)


def test_size_v_brute_cap():
    cfg = random_configuration(11, seed=0)
    with pytest.raises(TooLarge):
        size_v(cfg, mode="brute")


def test_v_sigma_inverse_and_class_mates():
    rng = np.random.default_rng(23)
    for _ in range(30):
        n = int(rng.integers(3, 7))
        cfg = random_configuration(n, rng)
        sigma = Permutation(tuple(int(x) for x in rng.permutation(n)))
        v = v_sigma(cfg, sigma)
        v_max = size_v(cfg).v
        assert v_sigma(cfg, sigma.inverse()) == pytest.approx(v, abs=1e-12 * max(1, v_max))
        for mate in class_mates(sigma):
            assert v_sigma(cfg, mate) == pytest.approx(v, abs=1e-12 * max(1, v_max))


def test_v_scaling_covariance():
    rng = np.random.default_rng(29)
    cfg = random_configuration(5, rng)
    sigma = Permutation(tuple(int(x) for x in rng.permutation(5)))
    for c in (0.25, 3.0):
        scaled = scale_configuration(cfg, c)
        assert v_sigma(scaled, sigma) == pytest.approx(c * v_sigma(cfg, sigma), rel=1e-12)
        r0, r1 = size_v(cfg), size_v(scaled)
        assert r1.v == pytest.approx(c * r0.v, rel=1e-12)
        assert edge_equivalent(r0.argmax, r1.argmax)


def test_is_generic_collinear_false(collinear):
    report = is_generic(collinear)
    assert not report.is_generic
    assert report.min_gap == pytest.approx(0.0, abs=1e-12)
    a, b = report.witness_pair
    assert v_sigma(collinear, a) == pytest.approx(v_sigma(collinear, b), abs=1e-12)


def test_is_generic_equilateral_false(equilateral):
    assert not is_generic(equilateral).is_generic


def test_is_generic_random_true():
    cfg = random_configuration(3, seed=101)
    report = is_generic(cfg)
    assert report.is_generic
    assert report.min_gap > report.gap_tol


def test_is_generic_invariant_under_rigid_motion_and_relabeling():
    rng = np.random.default_rng(31)
    cfg = random_configuration(4, rng)
    base = is_generic(cfg)
    moved = apply_rigid_motion(cfg, rng)
    assert is_generic(moved).is_generic == base.is_generic
    perm = rng.permutation(4)
    relabeled = validate_configuration(cfg.centers[perm])
    report = is_generic(relabeled)
    assert report.is_generic == base.is_generic
    assert report.min_gap == pytest.approx(base.min_gap, rel=1e-9, abs=1e-12)


def test_separating_configuration_exists_for_nonequivalent_pairs():
    # contrapositive of "equal V for all Y implies edge-equivalent"
    rng = np.random.default_rng(37)
    sigma = Permutation((1, 2, 0, 3))
    tau = Permutation((1, 0, 3, 2))
    assert not edge_equivalent(sigma, tau)
    found = False
    for _ in range(20):
        cfg = random_configuration(4, rng)
        if abs(v_sigma(cfg, sigma) - v_sigma(cfg, tau)) > 1e-6:
            found = True
            break
    assert found
