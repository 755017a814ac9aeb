"""Common-orbit exceptionality tests, coset averages, and the example
constructions (wreath diagonal and affine scalar)."""

from fractions import Fraction

import pytest

from schurscope.exceptio import (
    NotNormal,
    NotTransitive,
    build_scalar_example,
    build_wreath_diagonal_example,
    chi_fixed_points,
    class_is_rational_in,
    common_orbits,
    coset_average_fixed_points,
    coset_representatives,
    excomp_decompose,
    is_arithmetically_exceptional,
    is_exceptional,
)
from schurscope.permcore import (
    Perm,
    PermGroup,
    psl2_torus_coset_action,
)


def s_n(n):
    return PermGroup(n, [Perm([1, 0] + list(range(2, n))),
                         Perm(list(range(1, n)) + [0])])


S3 = s_n(3)
C3 = PermGroup(3, [Perm([1, 2, 0])])
S4 = s_n(4)
A4 = PermGroup(4, [Perm([1, 2, 0, 3]), Perm([1, 0, 3, 2])])
C4 = PermGroup(4, [Perm([1, 2, 3, 0])])
D4 = PermGroup(4, [Perm([1, 2, 3, 0]), Perm([0, 3, 2, 1])])


def test_is_exceptional_small_instances():
    v = is_exceptional(S3, C3)
    assert v.exceptional and v.r == 1 and v.witness is None
    v = is_exceptional(S4, A4)
    assert not v.exceptional and v.r == 2
    a, b = v.witness
    assert a != b
    # (D4, C4): the antipodal pair orbit is common
    v = is_exceptional(D4, C4)
    assert not v.exceptional
    assert v.witness == (0, 2)


def test_common_orbits_diagonal_always_present():
    for A, G in ((S3, C3), (S4, A4), (D4, C4), (S4, S4)):
        reps = common_orbits(A, G)
        assert reps[0] == (0, 0)


def test_common_orbits_equal_groups_is_rank():
    # with A = G every orbit is common, so the count is the rank
    assert len(common_orbits(S4, S4)) == 2
    assert len(common_orbits(C4, C4)) == 4


def test_not_normal_and_not_transitive_raise():
    C2 = PermGroup(3, [Perm([1, 0, 2])])
    with pytest.raises(NotNormal):
        is_exceptional(S3, C2)  # not normal
    V = PermGroup(4, [Perm([1, 0, 2, 3]), Perm([0, 1, 3, 2])])
    with pytest.raises(NotTransitive):
        is_exceptional(PermGroup(4, V.gens), V)


def test_coset_representatives():
    reps = coset_representatives(S4, A4)
    assert len(reps) == 2
    assert reps[0].is_identity()
    assert reps[1] not in A4


def test_coset_average_equals_common_orbit_count():
    # the average of squared fixed-point counts over a coset xG equals the
    # number of common orbits of (<G, x>, G) on pairs
    for A, G in ((S4, A4), (S3, C3), (D4, C4)):
        for x in coset_representatives(A, G):
            B = PermGroup(A.degree, list(G.gens) + [x])
            avg = coset_average_fixed_points(A, G, x)
            assert avg == len(common_orbits(B, G))


def test_coset_average_known_values():
    x = Perm([1, 0, 2, 3])  # transposition coset of A4 in S4
    assert coset_average_fixed_points(S4, A4, x) == 2
    y = Perm([1, 0, 2])
    assert coset_average_fixed_points(S3, C3, y) == 1


def test_arithmetic_exceptionality_small():
    # (S3, C3): the reflection coset works
    v = is_arithmetically_exceptional(S3, C3)
    assert v.arithmetically_exceptional and v.witness not in C3
    # (S4, A4): only one nontrivial coset and it fails
    assert not is_arithmetically_exceptional(S4, A4).arithmetically_exceptional


def test_arithmetic_exceptionality_psl28():
    act, G8 = psl2_torus_coset_action(8, "pgammal")
    A = act.group
    G = PermGroup(A.degree, [act.image(g) for g in G8.gens])
    assert is_exceptional(A, G).exceptional  # A/G is cyclic of order 3
    v = is_arithmetically_exceptional(A, G)
    assert v.arithmetically_exceptional
    # the witness coset element has order a power of 3 (field automorphism)
    assert v.witness.order() % 3 == 0


def test_chi_fixed_points_matches_direct_count():
    act, _ = psl2_torus_coset_action(8, "psl")
    G = act.group
    H = PermGroup(G.degree, G.stabilizer_gens(0))
    for g in (G.gens[0], G.gens[0] * G.gens[-1]):
        assert chi_fixed_points(G, H, g) == len(g.fixed_points())


def test_class_rationality():
    assert class_is_rational_in(S3, Perm([1, 2, 0]))
    # inside C3 itself, sigma and sigma^2 are not conjugate
    assert not class_is_rational_in(C3, Perm([1, 2, 0]))


def test_wreath_example_small():
    C2 = PermGroup(2, [Perm([1, 0])])
    # gcd(t, |L|) = 1 -> exceptional
    A, G, act = build_wreath_diagonal_example(C2, 3)
    assert A.degree == 4  # |L|^(t-1)
    assert is_exceptional(A, G).exceptional
    # gcd(2, 2) > 1 -> not exceptional
    A, G, _ = build_wreath_diagonal_example(C2, 2)
    assert not is_exceptional(A, G).exceptional


def test_wreath_s3_t2_not_exceptional():
    A, G, _ = build_wreath_diagonal_example(S3, 2)
    assert A.degree == 6
    assert not is_exceptional(A, G).exceptional


def test_scalar_example():
    # V = F_5, H trivial, scalar of order 2: A = D5, G = C5
    A, G = build_scalar_example(5, 1, [], 2)
    assert A.degree == 5 and A.order == 10 and G.order == 5
    assert is_exceptional(A, G).exceptional
    # order-4 scalar: Frobenius group of order 20
    A, G = build_scalar_example(5, 1, [], 4)
    assert A.order == 20
    assert is_exceptional(A, G).exceptional


def test_scalar_example_preconditions():
    with pytest.raises(ValueError):
        build_scalar_example(5, 1, [], 3)  # 3 does not divide 4
    with pytest.raises(ValueError):
        build_scalar_example(5, 1, [], 1)
    # H containing an element of order r is rejected
    with pytest.raises(ValueError):
        build_scalar_example(5, 2, [[[0, 1], [1, 0]]], 2)


def test_excomp_decompose_consistency():
    M = PermGroup(4, [Perm([1, 0, 2, 3])])
    U = PermGroup(4, [Perm([1, 0, 2, 3]), Perm([0, 1, 3, 2])])
    v1, v2, v3 = excomp_decompose(S4, A4, M, U)
    assert v1 == (v2 and v3)
