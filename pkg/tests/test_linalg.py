import random

from hypothesis import given, settings, strategies as st

from trimod import linalg


def test_modp_rref_identity():
    R, piv = linalg.modp_rref([[1, 0], [0, 1]], 3)
    assert piv == [0, 1]


def test_modp_kernel_and_solve():
    A = [[1, 2, 0], [0, 0, 1]]
    ker = linalg.modp_kernel(A, 5)
    assert len(ker) == 1
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) % 5 == 0 for row in A)
    x = linalg.modp_solve(A, [3, 4], 5)
    assert x is not None
    assert [sum(a * v for a, v in zip(row, x)) % 5 for row in A] == [3, 4]
    assert linalg.modp_solve([[2], [1]], [1, 2], 5) is None


def test_smith_diagonalizes():
    A = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    diag, U, V, _ = linalg.smith_normal_form(A)
    n = len(A)
    UA = [[sum(U[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    UAV = [[sum(UA[i][k] * V[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            expect = diag[i] if i == j else 0
            assert UAV[i][j] == expect


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_smith_uinv_random(seed):
    rng = random.Random(seed)
    nr, nc = rng.randint(1, 4), rng.randint(1, 4)
    A = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
    diag, U, V, Ui = linalg.smith_normal_form(A, want_uinv=True)
    # U * Ui == I
    for i in range(nr):
        for j in range(nr):
            s = sum(U[i][k] * Ui[k][j] for k in range(nr))
            assert s == (1 if i == j else 0)


def test_subgroup_basics_z4():
    moduli = [4, 4]
    b = linalg.subgroup_basis([[2, 0]], moduli)
    assert linalg.subgroup_contains(b, [2, 0], moduli)
    assert linalg.subgroup_contains(b, [6, 0], moduli)
    assert not linalg.subgroup_contains(b, [1, 0], moduli)
    assert linalg.subgroup_size(b, moduli) == 2
    full = linalg.subgroup_basis([[1, 0], [0, 1]], moduli)
    assert linalg.subgroup_size(full, moduli) == 16


def test_subgroup_mixed_orders():
    moduli = [2, 4]
    b = linalg.subgroup_basis([[1, 2]], moduli)
    assert linalg.subgroup_size(b, moduli) == 2
    assert linalg.subgroup_contains(b, [1, 2], moduli)
    assert not linalg.subgroup_contains(b, [1, 0], moduli)


def test_subgroup_equality_is_canonical():
    moduli = [4, 4]
    b1 = linalg.subgroup_basis([[2, 0], [0, 2]], moduli)
    b2 = linalg.subgroup_basis([[2, 2], [0, 2], [2, 0]], moduli)
    assert b1 == b2


def test_congruence_kernel_z8():
    # kernel of multiplication by 2 on Z/8 is (4)
    gens = linalg.congruence_kernel([[2]], [8], [8])
    basis = linalg.subgroup_basis(gens, [8])
    assert linalg.subgroup_size(basis, [8]) == 2
    assert linalg.subgroup_contains(basis, [4], [8])


def test_congruence_kernel_prime():
    gens = linalg.congruence_kernel([[1, 1]], [5], [5, 5])
    basis = linalg.subgroup_basis(gens, [5, 5])
    assert linalg.subgroup_size(basis, [5, 5]) == 5


def test_congruence_solve_mixed():
    # 2x = 2 mod 4 has solution
    x = linalg.congruence_solve([[2]], [2], [4])
    assert x is not None and (2 * x[0]) % 4 == 2
    assert linalg.congruence_solve([[2]], [1], [4]) is None


def test_quotient_presentation_z4_by_2():
    qm, proj, lift = linalg.quotient_presentation([[2]], [4])
    assert qm == [2]
    img = linalg.apply_matrix(proj, [1])
    assert img[0] % 2 == 1
    back = linalg.apply_matrix(lift, [1])
    # lift of the generator maps back to an odd element of Z/4
    assert back[0] % 2 == 1


def test_quotient_presentation_prime():
    qm, proj, lift = linalg.quotient_presentation([[1, 1, 0]], [3, 3, 3])
    assert qm == [3, 3]
    # proj(lift(x)) == x
    for unit in ([1, 0], [0, 1]):
        amb = linalg.apply_matrix(lift, unit)
        again = [x % 3 for x in linalg.apply_matrix(proj, amb)]
        assert again == unit
    # relation maps to zero
    assert [x % 3 for x in linalg.apply_matrix(proj, [1, 1, 0])] == [0, 0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_quotient_presentation_random(seed):
    rng = random.Random(seed)
    D = rng.randint(1, 4)
    moduli = [rng.choice([2, 3, 4, 8, 9]) for _ in range(D)]
    rels = [[rng.randrange(m) for m in moduli] for _ in range(rng.randint(0, 3))]
    qm, proj, lift = linalg.quotient_presentation(rels, moduli)
    # every relation projects to zero
    for r in rels:
        img = linalg.apply_matrix(proj, r)
        assert all(x % m == 0 for x, m in zip(img, qm))
    # proj . lift = identity on the quotient
    for j in range(len(qm)):
        unit = [int(k == j) for k in range(len(qm))]
        amb = linalg.apply_matrix(lift, unit)
        again = [x % m for x, m in zip(linalg.apply_matrix(proj, amb), qm)]
        assert again == unit
    # sizes multiply out: |ambient| = |subgroup| * |quotient|
    sub = linalg.subgroup_basis(rels, moduli)
    qsize = 1
    for m in qm:
        qsize *= m
    total = 1
    for m in moduli:
        total *= m
    assert linalg.subgroup_size(sub, moduli) * qsize == total
