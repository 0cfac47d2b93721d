"""Construction, witness enumeration, coincidence, and class membership."""

import itertools
import random
from fractions import Fraction

import pytest

from mfnear.boolfun import TruthTable, hamming_distance, is_affine_on, is_bent
from mfnear.counting import lambda_, sigma
from mfnear.gf2 import (
    AffineMap,
    AffineSubspace,
    Gf2Matrix,
    LinearSubspace,
    affine_hull_or_none,
    dot,
    enumerate_subspaces,
    gaussian_binomial,
    random_invertible,
)
from mfnear.mmf import (
    MMFunction,
    Permutation,
    SubspaceTriple,
    build_mmf,
    coincidence_parents,
    compose_subspace,
    decode_mm,
    decompose_subspace,
    dim2_h_maps,
    h_solution_space,
    image_subspaces,
    m_subspaces,
    member_of_mf_u,
    near_count,
    near_enumerate,
    realize_near,
    witness,
)


def x_side(n):
    return LinearSubspace.from_vectors([1 << i for i in range(n)], 2 * n)


def all_mf4():
    for table in itertools.permutations(range(4)):
        for bits in range(16):
            yield MMFunction(Permutation(table, 2), TruthTable(2, bits))


def test_build_smallest():
    g = MMFunction(Permutation.identity(1), TruthTable.zero(1))
    f = build_mmf(g)
    assert f.bits == 0b1000  # f(x, y) = xy
    assert is_bent(f)


def test_build_all_384_distinct_and_bent():
    tables = {build_mmf(g).bits for g in all_mf4()}
    assert len(tables) == 384
    for bits in itertools.islice(tables, 20):
        assert is_bent(TruthTable(4, bits))


def test_decode_round_trip():
    rng = random.Random(21)
    for n in (2, 3):
        for _ in range(20):
            g = MMFunction.random(n, rng)
            back = decode_mm(build_mmf(g))
            assert back is not None
            assert back.pi.table == g.pi.table and back.phi.bits == g.phi.bits
    # a non-MF bent function decodes to None
    g = MMFunction.random(2, rng)
    ws = [w for w in near_enumerate(g) if w.L.dim == 2]
    assert decode_mm(realize_near(g, ws[0])) is None


def test_build_mf6_bent_sample():
    rng = random.Random(23)
    for _ in range(10):
        assert is_bent(build_mmf(MMFunction.random(3, rng)))


def test_image_subspaces_basics():
    rng = random.Random(25)
    for n in (2, 3):
        pi = Permutation.random(n, rng)
        assert len(image_subspaces(pi, 0)) == 1 << n
        assert len(image_subspaces(pi, 1)) == (1 << (n - 1)) * ((1 << n) - 1)
        ident = Permutation.identity(n)
        for k in range(n + 1):
            got = len(image_subspaces(ident, k))
            assert got == (1 << (n - k)) * gaussian_binomial(n, k)


def test_image_subspaces_against_hull_oracle():
    rng = random.Random(27)
    for _ in range(20):
        pi = Permutation.random(3, rng)
        for k in range(4):
            expected = [
                U
                for U in enumerate_subspaces(3, k, affine=True)
                if affine_hull_or_none((pi.table[p] for p in U.points()), 3) is not None
            ]
            assert image_subspaces(pi, k) == expected


def test_compose_decompose_x_side():
    U = AffineSubspace(0, x_side(3))
    t = decompose_subspace(U)
    assert t.L.dim == 0 and t.R == LinearSubspace.full(3) and t.H is None
    assert compose_subspace(t) == U


def test_compose_decompose_round_trip_all_s42():
    for U in enumerate_subspaces(4, 2):
        Ua = AffineSubspace(0, U)
        assert compose_subspace(decompose_subspace(Ua)) == Ua


def test_decompose_census_matches_closed_form():
    # number of U in S(2n, n) with dim(U cap x-side) = k
    for n in (2, 3):
        from collections import Counter

        strata = Counter(
            decompose_subspace(AffineSubspace(0, U)).R.dim
            for U in enumerate_subspaces(2 * n, n)
        )
        for k in range(n + 1):
            expected = (
                (1 << ((n - k) ** 2))
                * gaussian_binomial(n, k)
                * gaussian_binomial(n, n - k)
            )
            assert strata[k] == expected


def test_decompose_rejects_wrong_dim():
    U = AffineSubspace(0, LinearSubspace.from_vectors([1], 4))
    with pytest.raises(ValueError):
        decompose_subspace(U)


def test_h_solution_dim1_always_four():
    rng = random.Random(29)
    for _ in range(20):
        g = MMFunction.random(3, rng)
        for L in image_subspaces(g.pi, 1)[:5]:
            assert h_solution_space(g, L).count == 4


def test_h_solution_dim2_always_32():
    rng = random.Random(31)
    for _ in range(30):
        g = MMFunction.random(3, rng)
        for L in image_subspaces(g.pi, 2):
            space = h_solution_space(g, L)
            assert space.count == 32
            fast = dim2_h_maps(g, L)
            assert [
                (h.matrix.rows, h.constant.bits) for h in space.maps()
            ] == [(h.matrix.rows, h.constant.bits) for h in fast]


def brute_h_count(g, L):
    """Enumerate every affine H: L -> Z2^k and test the composite directly."""
    k = L.dim
    n = g.n
    from mfnear.mmf import _image_info_set
    from mfnear.gf2 import project_bits

    I = _image_info_set(g.pi, L)
    b = L.base
    basis = L.direction.basis
    good = []
    for coeff in range(1 << (k * (k + 1))):
        mask = (1 << k) - 1
        values = {b: coeff & mask}
        for i, v in enumerate(basis):
            values[b ^ v] = (coeff >> ((i + 1) * k)) & mask
        H = AffineMap.from_values(L, values, k)
        comp = {
            p: dot(H.evaluate(p), project_bits(g.pi.table[p], I.indices)) ^ g.phi.value(p)
            for p in L.points()
        }
        c0 = comp[b]
        deltas = [comp[b ^ v] ^ c0 for v in basis]
        ok = True
        for eps in range(1 << k):
            x = b
            expect = c0
            for i, v in enumerate(basis):
                if (eps >> i) & 1:
                    x ^= v
                    expect ^= deltas[i]
            if comp[x] != expect:
                ok = False
                break
        if ok:
            good.append(H)
    return good


def test_h_solution_dim3_matches_brute():
    g = MMFunction(Permutation.identity(3), TruthTable.zero(3))
    L = AffineSubspace(0, LinearSubspace.full(3))
    space = h_solution_space(g, L)
    brute = brute_h_count(g, L)
    assert space.count == len(brute) == 512
    got = {(h.matrix.rows, h.constant.bits) for h in space.maps()}
    assert got == {(h.matrix.rows, h.constant.bits) for h in brute}
    # a couple of random functions on the same full-space L
    rng = random.Random(33)
    for _ in range(3):
        g = MMFunction.random(3, rng)
        space = h_solution_space(g, L)
        brute = brute_h_count(g, L)
        assert space.count == len(brute)


def test_h_solution_sum_over_restrictions():
    # sum over all phi|_L of the solution count is 2^((k+1)^2) for k = 2
    rng = random.Random(35)
    g0 = MMFunction.random(3, rng)
    L = image_subspaces(g0.pi, 2)[0]
    total = 0
    for bits in range(16):
        phi_bits = 0
        for i, p in enumerate(sorted(L.points())):
            if (bits >> i) & 1:
                phi_bits |= 1 << p
        g = MMFunction(g0.pi, TruthTable(3, phi_bits))
        total += h_solution_space(g, L).count
    assert total == 1 << 9


def test_h_solution_rejects_bad_L():
    rng = random.Random(37)
    while True:
        g = MMFunction.random(3, rng)
        bad = [
            U
            for U in enumerate_subspaces(3, 2, affine=True)
            if affine_hull_or_none((g.pi.table[p] for p in U.points()), 3) is None
        ]
        if bad:
            with pytest.raises(ValueError):
                h_solution_space(g, bad[0])
            break


def test_near_enumerate_structure_at_n2():
    for g in itertools.islice(all_mf4(), 40):
        ws = near_enumerate(g)
        assert len(ws) == 60
        by_dim = {}
        for w in ws:
            by_dim.setdefault(w.L.dim, 0)
            by_dim[w.L.dim] += 1
        assert by_dim == {0: 4, 1: 24, 2: 32}
        assert by_dim[0] + by_dim[1] == lambda_(4)
        f = build_mmf(g)
        realized = [realize_near(g, w) for w in ws]
        assert len({t.bits for t in realized}) == 60
        for w, t in zip(ws[:10], realized[:10]):
            assert is_bent(t)
            assert hamming_distance(f, t) == 4


def test_near_count_matches_enumeration():
    rng = random.Random(39)
    for n in (2, 3):
        for _ in range(5):
            g = MMFunction.random(n, rng)
            assert near_count(g) == len(near_enumerate(g))


def test_near_count_lower_bound_linear_pi_n4():
    rng = random.Random(41)
    pi = Permutation.from_linear(random_invertible(4, rng))
    g = MMFunction(pi, TruthTable(4, rng.getrandbits(16)))
    a2 = len(image_subspaces(pi, 2))
    assert near_count(g) >= lambda_(8) + 32 * a2


def test_realize_small_dims_stay_in_class():
    rng = random.Random(43)
    g = MMFunction.random(3, rng)
    for w in near_enumerate(g):
        if w.L.dim <= 1:
            assert decode_mm(realize_near(g, w)) is not None
        elif w.L.dim == 2:
            assert decode_mm(realize_near(g, w)) is None


def test_dim2_dedup_gives_512():
    seen = set()
    for g in all_mf4():
        for w in near_enumerate(g):
            if w.L.dim == 2:
                seen.add(realize_near(g, w).bits)
    assert len(seen) == 512


def test_witness_stores_info_set_and_subspace():
    rng = random.Random(45)
    g = MMFunction.random(3, rng)
    for w in near_enumerate(g)[:20]:
        assert w.subspace.dim == 3 and w.subspace.ambient == 6
        again = witness(g, w.L, w.H)
        assert again.info_set == w.info_set and again.subspace == w.subspace


def test_coincidence_parents_contains_original():
    rng = random.Random(47)
    g = MMFunction.random(3, rng)
    L = image_subspaces(g.pi, 2)[0]
    H = h_solution_space(g, L).maps()[0]
    w = witness(g, L, H)
    parents = coincidence_parents(g, w)
    assert len(parents) == 24
    assert any(p.table == g.pi.table and phi.bits == g.phi.bits for p, phi, _ in parents)
    gt = realize_near(g, w)
    for p, phi, h in parents:
        g2 = MMFunction(p, phi)
        assert realize_near(g2, witness(g2, L, h)).bits == gt.bits


def test_coincidence_rejects_wrong_dim():
    rng = random.Random(49)
    g = MMFunction.random(2, rng)
    w = [w for w in near_enumerate(g) if w.L.dim == 1][0]
    with pytest.raises(ValueError):
        coincidence_parents(g, w)


def test_member_x_side_always():
    rng = random.Random(51)
    for n in (2, 3):
        for _ in range(5):
            g = MMFunction.random(n, rng)
            assert member_of_mf_u(g, AffineSubspace(0, x_side(n)))


def test_member_agrees_with_definition_on_mf4():
    from mfnear.oracle import _affine_on_all_cosets

    subspaces = list(enumerate_subspaces(4, 2))
    for g in all_mf4():
        f = build_mmf(g)
        for U in subspaces:
            assert member_of_mf_u(g, AffineSubspace(0, U)) == _affine_on_all_cosets(f, U)


def test_member_count_for_k1_subspace():
    for U in enumerate_subspaces(4, 2):
        t = decompose_subspace(AffineSubspace(0, U))
        if t.R.dim == 1:
            members = sum(1 for g in all_mf4() if member_of_mf_u(g, AffineSubspace(0, U)))
            assert members == 128
            break


def test_m_subspaces_inner_product():
    from mfnear.boolfun import TruthTable as TT

    f = TT.from_values((dot(i & 3, i >> 2) for i in range(16)), 4)
    ms = m_subspaces(f)
    assert x_side(2) in ms
    y_side = LinearSubspace.from_vectors([4, 8], 4)
    assert y_side in ms


def test_m_subspaces_vs_member_criterion():
    rng = random.Random(53)
    for _ in range(10):
        g = MMFunction.random(2, rng)
        f = build_mmf(g)
        ms = set(m_subspaces(f))
        crit = {
            U
            for U in enumerate_subspaces(4, 2)
            if member_of_mf_u(g, AffineSubspace(0, U))
        }
        assert ms == crit


def test_near_count_ea_invariant():
    rng = random.Random(55)
    from mfnear.boolfun import ea_transform
    from mfnear.oracle import near_brute_count

    g = MMFunction.random(3, rng)
    base = near_count(g)
    f = build_mmf(g)
    for _ in range(5):
        A = random_invertible(6, rng)
        ft = ea_transform(f, A, rng.getrandbits(6))
        assert near_brute_count(ft) == base


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1, 2), 2)
    pi = Permutation((2, 0, 3, 1), 2)
    assert pi.inverse().table == (1, 3, 0, 2)


def test_subspace_triple_validation():
    L = AffineSubspace(0, LinearSubspace.from_vectors([1], 3))
    R = LinearSubspace.from_vectors([2], 3)
    with pytest.raises(ValueError):
        SubspaceTriple(L, R, None)  # dims do not add to n
