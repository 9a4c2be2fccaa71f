import random
from collections import Counter
from fractions import Fraction

import pytest

from fixedspace.bruteforce import (
    InfeasibleError,
    IntegersMod,
    PrimeField,
    QuadraticExtension,
    _FormEnumerator,
    check_eigenspace_split,
    crt_product_check,
    eigenspace_split,
    empirical_group_distribution,
    enumerate_group,
    fixed_space,
    kernel_basis,
    kernel_shape,
    mat_mul,
    random_element,
    rank,
    standard_gram,
)
from fixedspace.distributions import formula_table
from fixedspace.grouporders import GeneralLinear, GSpCoset, Symplectic, Unitary, sp_order


def transpose(A):
    return tuple(zip(*A))


def test_quadratic_extension_is_a_field():
    K = QuadraticExtension(3)
    for x in range(1, K.size):
        assert K.mul(x, K.inv(x)) == 1
        assert K.conj(K.conj(x)) == x
        assert K.norm(x) in range(1, 3)
    with pytest.raises(ValueError):
        QuadraticExtension(3, (0, 2))  # t^2 + 2t has the root 0


def test_rank_and_kernel():
    F = PrimeField(5)
    M = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(F, M) == 2
    (v,) = kernel_basis(F, M)
    assert all(sum(a * b for a, b in zip(row, v)) % 5 == 0 for row in M)


def test_kernel_shape():
    assert kernel_shape([[1, 0], [0, 1]], 3, 2) == ()
    assert kernel_shape([[3, 0], [0, 0]], 3, 2) == (3, 9)
    assert kernel_shape([[0, 0], [0, 0]], 3, 2) == (9, 9)
    # a unimodular change of basis does not change the shape
    assert kernel_shape([[3, 3], [3, 3]], 3, 2) == kernel_shape([[3, 0], [0, 0]], 3, 2)
    assert kernel_shape([[2, 0], [0, 6]], 3, 3) == (3,)


def test_fixed_space_identity():
    I = ((1, 0), (0, 1))
    assert fixed_space(I, PrimeField(3)) == 2
    assert fixed_space(I, IntegersMod(9)) == (9, 9)
    with pytest.raises(ValueError):
        fixed_space(I, IntegersMod(15))


@pytest.mark.parametrize(
    "spec",
    [Symplectic(1, 3), Symplectic(1, 5), Symplectic(1, 7), GSpCoset(1, 3, 2), GSpCoset(1, 5, 2),
     GSpCoset(1, 5, 3), Unitary(2, 2), Unitary(2, 3)],
)
def test_oracle_matches_formula(spec):
    brute = empirical_group_distribution(spec, workers=1)
    assert brute.entries == formula_table(spec).entries
    assert brute.provenance == "brute-force"


def test_gl2_f3():
    t = empirical_group_distribution(GeneralLinear(2, 3), workers=1)
    assert t.meta["order"] == 48
    assert t.entries == {0: Fraction(9, 16), 1: Fraction(5, 12), 2: Fraction(1, 48)}


def test_elements_preserve_the_form():
    F = PrimeField(3)
    J = standard_gram("symplectic", 2, F)
    elems = list(enumerate_group(Symplectic(1, 3)))
    assert len(elems) == len(set(elems)) == 24
    for A in elems:
        assert mat_mul(F, mat_mul(F, transpose(A), J), A) == J


def test_parallel_split_is_deterministic():
    spec = Symplectic(1, 7)
    one = empirical_group_distribution(spec, workers=1)
    two = empirical_group_distribution(spec, workers=2)
    assert one.to_json() == two.to_json()


def test_feasibility_guard():
    with pytest.raises(InfeasibleError):
        empirical_group_distribution(Symplectic(2, 5))


def test_column_sampling_has_no_dead_ends():
    # equal completion counts for every first column make sampling uniform
    F = PrimeField(3)
    en = _FormEnumerator(F, standard_gram("symplectic", 4, F))
    counts = Counter(tuple(row[0] for row in A) for A in en.walk())
    assert len(set(counts.values())) == 1
    assert sum(counts.values()) == sp_order(2, 3)


def test_random_elements_are_group_elements():
    F = PrimeField(5)
    J = standard_gram("symplectic", 4, F)
    rng = random.Random(7)
    for _ in range(50):
        A = random_element(Symplectic(2, 5), rng)
        assert mat_mul(F, mat_mul(F, transpose(A), J), A) == J
    with pytest.raises(ValueError):
        random_element(Symplectic(1, 3, 2), rng)


def test_random_sampling_is_roughly_uniform():
    rng = random.Random(1)
    seen = Counter(random_element(Symplectic(1, 3), rng) for _ in range(2400))
    assert len(seen) == 24
    assert max(seen.values()) < 2 * min(seen.values())


def test_eigenspace_split():
    F = PrimeField(5)
    rng = random.Random(3)
    for _ in range(100):
        x = random_element(Symplectic(2, 5), rng)
        E, C = eigenspace_split(x, F)
        assert all(check_eigenspace_split(x, F, E, C).values())
        assert len(E) >= fixed_space(x, F)


def test_level_nine_shapes():
    t = empirical_group_distribution(Symplectic(1, 3, 2))
    assert t.meta["order"] == 648
    assert t.total() == 1
    assert t.entries == {
        (): Fraction(5, 8), (3,): Fraction(2, 9), (9,): Fraction(1, 9),
        (3, 3): Fraction(1, 36), (3, 9): Fraction(1, 81), (9, 9): Fraction(1, 648),
    }


def test_crt():
    res = crt_product_check(3, 5)
    assert res["order"] == 24 * 120
    assert res["factorizes"] and res["marginals_match_fields"]
    with pytest.raises(ValueError):
        crt_product_check(3, 3)


def test_unipotent_classes_of_sp4_f3():
    import numpy as np

    from fixedspace.distributions import unipotent_fixed_count

    elems = np.array(list(enumerate_group(Symplectic(2, 3))), dtype=np.int64)
    N = (elems - np.eye(4, dtype=np.int64)) % 3
    N2 = np.matmul(N, N) % 3
    unipotent = ~np.any(np.matmul(N2, N2) % 3, axis=(1, 2))
    assert unipotent.sum() == 3 ** 8
    F = PrimeField(3)
    counts = Counter(fixed_space(tuple(map(tuple, x.tolist())), F) for x in elems[unipotent])
    assert counts == {r: unipotent_fixed_count(2, r, 3) for r in range(1, 5)}
