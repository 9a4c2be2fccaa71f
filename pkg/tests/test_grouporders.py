from fractions import Fraction
from itertools import combinations, product

import pytest

from fixedspace.exactmath import L
from fixedspace.grouporders import (
    GSpCoset,
    Symplectic,
    fw_product,
    gl_order,
    orth_order,
    sp_order,
    sp_subspace_count,
    sp_unipotent_total,
    unitary_order,
    unitary_subspace_count,
)


def test_small_orders():
    assert sp_order(1, 3) == 24
    assert sp_order(2, 3) == 51840
    assert sp_order(1, 5) == 120
    assert unitary_order(2, 2) == 18
    assert unitary_order(3, 2) == 648
    assert gl_order(2, 3) == 48
    assert sp_unipotent_total(2, 3) == 3 ** 8


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_symbolic_matches_numeric(ell):
    for g in range(4):
        assert sp_order(g)(ell) == sp_order(g, ell)
    for n in range(1, 6):
        assert orth_order(n)(ell) == orth_order(n, ell)
        assert unitary_order(n)(ell) == unitary_order(n, ell)


def _so3_count(p):
    n = 0
    for entries in product(range(p), repeat=9):
        A = [entries[0:3], entries[3:6], entries[6:9]]
        ok = all(
            sum(A[k][i] * A[k][j] for k in range(3)) % p == (i == j)
            for i in range(3) for j in range(3)
        )
        if ok:
            det = (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                   - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                   + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])) % p
            n += det == 1
    return n


def test_so3_against_enumeration():
    assert _so3_count(3) == orth_order(3, 3) == 24


def test_even_orthogonal_is_harmonic_mean():
    q = Fraction(5)
    plus2, minus2 = q - 1, q + 1
    assert orth_order(2, 5) == 2 / (1 / plus2 + 1 / minus2)
    plus4, minus4 = q ** 2 * (q ** 2 - 1) ** 2, q ** 2 * (q ** 4 - 1)
    assert orth_order(4, 5) == 2 / (1 / plus4 + 1 / minus4)
    assert orth_order(2) == (L ** 2 - 1) / L


def test_nondegenerate_planes_in_symplectic_4_space():
    p = 3

    def form(u, v):
        return (u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]) % p

    planes = set()
    vecs = [v for v in product(range(p), repeat=4) if any(v)]
    for u, v in combinations(vecs, 2):
        if form(u, v):
            span = frozenset(
                tuple((a * x + b * y) % p for x, y in zip(u, v)) for a in range(p) for b in range(p)
            )
            planes.add(span)
    assert len(planes) == sp_subspace_count(2, 1, 3) == 90


def test_subspace_counts_symbolic():
    assert sp_subspace_count(2, 1) == L ** 2 * (L ** 4 - 1) / (L ** 2 - 1)
    # over F_4 with the identity form, only the two coordinate lines are anisotropic
    assert unitary_subspace_count(2, 1, 2) == 2
    with pytest.raises(ValueError):
        sp_subspace_count(1, 2)


def test_fw_product():
    assert fw_product(2, 3) == Fraction(2, 3) * Fraction(8, 9)
    assert fw_product(0, 3) == 1


def test_spec_validation():
    with pytest.raises(ValueError):
        Symplectic(0, 3)
    with pytest.raises(ValueError):
        Symplectic(1, None, 2)
    with pytest.raises(ValueError):
        GSpCoset(1, 3, 3)
    assert Symplectic(1, 3, 2).modulus == 9
