"""Verifier mechanics at reduced scale; the acceptance suite runs them full."""

import itertools
import random

import numpy as np
import pytest

from mfnear import counting, oracle
from mfnear.boolfun import TruthTable, is_bent
from mfnear.gf2 import AffineSubspace, LinearSubspace, enumerate_subspaces, linear_subspace_bases
from mfnear.mmf import MMFunction, Permutation, build_mmf, m_subspaces, near_enumerate, realize_near


def test_near_brute_uniform_60_on_sample():
    for g in itertools.islice(oracle.all_mf_functions(2), 25):
        f = build_mmf(g)
        neighbors = oracle.near_brute(f)
        assert len(neighbors) == 60
        for t in itertools.islice(neighbors, 3):
            assert is_bent(t)


def test_near_brute_rejects_large():
    with pytest.raises(ValueError):
        oracle.near_brute(TruthTable.zero(10))


def test_verify_sum_pi_n2():
    for k in range(3):
        out = oracle.verify_sum_pi(2, k)
        assert out.passed, out.witness
    assert oracle.verify_sum_pi(2, 1).work["total"] == 144
    assert oracle.verify_sum_pi(2, 0).work["total"] == 24 * 4


def test_verify_sum_pi_n3_k2():
    out = oracle.verify_sum_pi(3, 2)
    assert out.passed and out.work["total"] == 112896


def test_verify_sum_phiH():
    assert oracle.verify_sum_phiH(1).work["total"] == 16
    assert oracle.verify_sum_phiH(2).work["total"] == 512
    out = oracle.verify_sum_phiH(3, seed=9)
    assert out.passed and out.work["total"] == 1 << 16


def test_verify_coincidence_small():
    out = oracle.verify_coincidence(trials=5, seed=2)
    assert out.passed, out.witness
    assert out.work["trials"] == 5 and out.work["controls"] >= 1


def test_near_mf_census_both_modes():
    for mode in ("brute", "criterion"):
        out = oracle.near_mf_census(mode)
        assert out.passed, out.witness
        assert out.work["near_outside_mf"] == 512
        assert out.work["mfsp_size"] == 896


def test_mf6_census_by_dedup():
    # count distinct truth tables over all (pi, phi) at n = 3
    from mfnear.mmf import _ip_blocks

    blocks = _ip_blocks(3)
    phi_masks = np.array(
        [
            sum(0xFF << (8 * y) for y in range(8) if (bits >> y) & 1)
            for bits in range(256)
        ],
        dtype=np.uint64,
    )
    perms = list(itertools.permutations(range(8)))
    arr = np.empty(len(perms) * 256, dtype=np.uint64)
    for i, table in enumerate(perms):
        base = 0
        for y in range(8):
            base |= blocks[table[y]] << (8 * y)
        arr[i * 256 : (i + 1) * 256] = np.uint64(base) ^ phi_masks
    assert len(np.unique(arr)) == counting.mf_size(3) == 10321920


def test_m_census_full_mean_15():
    est = oracle.m_census(4, mode="full")
    assert est.exact_mean == 15


def test_m_census_sampled_6():
    est = oracle.m_census(6, mode="sample", trials=300, seed=3)
    assert est.trials == 300
    assert abs(est.z) < 4
    # reproducible for a fixed seed
    again = oracle.m_census(6, mode="sample", trials=300, seed=3)
    assert again.mean == est.mean and again.std_error == est.std_error


def test_m_census_sampled_8():
    est = oracle.m_census(8, mode="sample", trials=200, seed=5)
    assert est.mean >= 1.0
    assert "multi_fraction" in est.extra
    assert abs(est.extra["multi_z"]) < 4


def test_sample_near_average_8():
    est = oracle.sample_near_average(8, trials=150, seed=1)
    assert abs(est.z) < 4
    again = oracle.sample_near_average(8, trials=150, seed=1)
    assert again.mean == est.mean


def test_sample_near_average_10():
    est = oracle.sample_near_average(10, trials=30, seed=2)
    assert est.mean >= counting.lambda_(10)
    assert est.target == float(counting.near_average(5))


def test_construct_two_series_properties():
    rng = random.Random(17)
    for _ in range(5):
        g, U = oracle.construct_two_series(4, rng)
        f = build_mmf(g)
        assert U.is_linear() and U.dim == 4
        assert oracle._affine_on_all_cosets(f, U.direction)
        ms = m_subspaces(f)
        assert len(ms) >= 2


def test_verify_two_coset_lower():
    out = oracle.verify_two_coset_lower(8, trials=3, seed=4)
    assert out.passed, out.witness
    assert out.work["least_count"] >= 896


def test_verify_beta_4():
    out = oracle.verify_beta(4)
    assert out.passed, out.witness
    assert out.work["total"] == 5376


def test_verify_beta_6_sampled():
    out = oracle.verify_beta(6, seed=2, subspace_samples=2)
    assert out.passed, out.witness


def test_count_mf_intersection_6_strata():
    # spot-check one subspace per intersection dimension against the formula
    seen = set()
    for basis in linear_subspace_bases(6, 3):
        if basis == (1, 2, 4):
            continue
        U = LinearSubspace(basis, 6)
        k = oracle._dim_x_intersection(U, 3)
        if k in seen:
            continue
        seen.add(k)
        assert oracle._count_mf_intersection_6(U) == counting.mf_mfu_intersection(3, k)
        if seen == {0, 1, 2}:
            break
    assert seen == {0, 1, 2}


def test_outcome_witness_enforced():
    out = oracle.VerificationOutcome("x", False)
    assert out.witness is not None
    d = out.as_dict()
    assert d["status"] == "fail"
