import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fixedspace.distributions import (
    TABLE_SCHEMA,
    DistributionTable,
    affine_rank_bounds,
    alpha,
    alpha_limit,
    alpha_table,
    alpha_xi_genus1,
    formula_table,
    fw_gap,
    phi,
    phi_count,
    phi_limit,
    trigonal_table,
    unipotent_fixed_count,
    unitary_alpha,
    unitary_alpha_limit,
    unitary_alpha_table,
    unitary_unipotent_fixed_count,
)
from fixedspace.exactmath import L, RatFun
from fixedspace.grouporders import GeneralLinear, GSpCoset, Symplectic, Unitary, sp_order

# exhaustive enumeration of the finite groups, frozen
SP2_F3 = {0: Fraction(5, 8), 1: Fraction(1, 3), 2: Fraction(1, 24)}
SP2_F5 = {0: Fraction(19, 24), 1: Fraction(1, 5), 2: Fraction(1, 120)}
SP4_F3 = {0: Fraction(409, 640), 1: Fraction(23, 72), 2: Fraction(23, 576), 3: Fraction(1, 648),
          4: Fraction(1, 51840)}
GU2_F4 = {0: Fraction(5, 9), 1: Fraction(7, 18), 2: Fraction(1, 18)}
GU3_F4 = {0: Fraction(46, 81), 1: Fraction(41, 108), 2: Fraction(11, 216), 3: Fraction(1, 648)}

primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_frozen_tables():
    assert alpha_table(1, 3) == SP2_F3
    assert alpha_table(1, 5) == SP2_F5
    assert alpha_table(2, 3) == SP4_F3
    assert unitary_alpha_table(2, 2) == GU2_F4
    assert unitary_alpha_table(3, 2) == GU3_F4


def test_genus_one_closed_forms():
    assert alpha(1, 0) == (L ** 2 - L - 1) / (L ** 2 - 1)
    assert alpha(1, 1) == 1 / L
    assert alpha(1, 2) == 1 / (L * (L ** 2 - 1))
    assert alpha(2, 0) == phi(2)


def test_unipotent_counts_genus_one():
    # identity, and the l^2 - 1 nontrivial transvection-type unipotents of SL_2
    assert unipotent_fixed_count(1, 2) == 1
    assert unipotent_fixed_count(1, 1) == L ** 2 - 1
    assert unipotent_fixed_count(1, 0) == 0
    assert unipotent_fixed_count(1, 3) == 0


@pytest.mark.parametrize("g", range(1, 5))
def test_steinberg(g):
    total = sum((unipotent_fixed_count(g, r) for r in range(2 * g + 1)), L * 0)
    assert total == L ** (2 * g * g)


@pytest.mark.parametrize("n", range(1, 5))
def test_unitary_steinberg(n):
    total = sum((unitary_unipotent_fixed_count(n, r) for r in range(n + 1)), L * 0)
    assert total == L ** (n * n - n)


@given(st.integers(min_value=1, max_value=6), primes)
def test_normalization_numeric(g, ell):
    assert sum(alpha_table(g, ell).values()) == 1
    assert sum(unitary_alpha_table(g, ell).values()) == 1


@given(st.integers(min_value=1, max_value=5), primes)
def test_phi_count_is_an_integer_multiple(g, ell):
    count = phi_count(g, ell)
    assert count.denominator == 1 and 0 < count < sp_order(g, ell)


def test_argument_validation():
    with pytest.raises(ValueError):
        alpha(0, 0, 3)
    with pytest.raises(ValueError):
        alpha(1, 3, 3)
    with pytest.raises(ValueError):
        unitary_alpha(2, 3, 2)


def test_gsp_coset_formula():
    assert [alpha_xi_genus1(2, r, 5) for r in range(3)] == [Fraction(3, 4), Fraction(1, 4), 0]
    assert alpha_xi_genus1(2, 0) == (L - 2) / (L - 1)
    with pytest.raises(ValueError):
        alpha_xi_genus1(4, 0, 3)
    with pytest.raises(ValueError):
        alpha_xi_genus1(5, 0, 5)
    with pytest.raises(ValueError):
        formula_table(GSpCoset(2, 5, 2))
    assert formula_table(GSpCoset(1, 5, 6)).entries == SP2_F5


@pytest.mark.parametrize("ell", [3, 5])
@pytest.mark.parametrize("r", range(5))
def test_alpha_limit_tail(ell, r):
    for bound in (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10 ** 5)):
        value, tail = alpha_limit(r, bound, ell)
        assert tail < bound
        g = max(1, (r + 1) // 2)
        while Fraction(ell) ** -g / (ell - 1) >= bound:
            g += 1
        assert abs(alpha(g + 3, r, ell) - value) < tail


def test_limits_need_numbers():
    with pytest.raises(ValueError):
        alpha_limit(0, Fraction(1, 10), None)
    with pytest.raises(ValueError):
        alpha_limit(0, 0, 3)
    value, tail = phi_limit(Fraction(1, 10 ** 4), 3)
    assert value == alpha_limit(0, Fraction(1, 10 ** 4), 3)[0]
    v, t = unitary_alpha_limit(0, 3, Fraction(1, 1000))
    assert t < Fraction(1, 1000) and 0 < v < 1


def test_trigonal_table():
    t = trigonal_table()
    assert sorted(t.entries) == [0, 2, 4, 6]
    assert t.total() == 1
    # ranks at m = 2, counted in GU_3(F_4)
    at2 = t.evaluate(2)
    assert [at2[k] * 648 for k in (0, 2, 4, 6)] == [368, 246, 33, 1]
    # rank 0 matches l (l^5 - l^3 - 1) / ((l + 1)(l^2 - 1)(l^3 + 1))
    assert t[0] == L * (L ** 5 - L ** 3 - 1) / ((L + 1) * (L ** 2 - 1) * (L ** 3 + 1))


def test_affine_bounds():
    lo_le, lo_ge = affine_rank_bounds(1, 1, 0)
    assert lo_le == alpha(1, 0) and lo_ge == alpha(1, 1) + alpha(1, 2)
    lo_le, lo_ge = affine_rank_bounds(1, 2, 0, Fraction(1, 100), 3)
    assert lo_le == Fraction(5, 8) - Fraction(1, 100)
    assert lo_ge == Fraction(1, 24) - Fraction(1, 100)
    # r = 2g is trivially satisfied, and large epsilon clamps at 0
    assert affine_rank_bounds(2, 1, 4, 0, 3)[0] == 1
    assert affine_rank_bounds(1, 1, 1, 1, 3) == (0, 0)
    with pytest.raises(ValueError):
        affine_rank_bounds(1, 1, 0, Fraction(1, 10))
    with pytest.raises(ValueError):
        affine_rank_bounds(1, 0, 0)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_fw_gap(g):
    gap = fw_gap(g)
    assert isinstance(gap, RatFun) and not gap.is_zero()
    assert gap.degree == -2
    for ell in (3, 5, 7, 11, 101, 1009):
        scaled = -gap(ell) * ell ** 2
        assert Fraction(3, 5) <= scaled <= 1


@pytest.mark.parametrize(
    "table",
    [
        formula_table(Symplectic(2, 3)),
        formula_table(Symplectic(2)),
        formula_table(GSpCoset(1, 5, 3)),
        formula_table(Unitary(3)),
        DistributionTable(GeneralLinear(2, 3), {0: Fraction(9, 16)}, "brute-force", {"order": 48}),
        DistributionTable(Symplectic(1, 3, 2), {(): Fraction(5, 8), (3, 9): Fraction(1, 81)}, "brute-force"),
    ],
)
def test_json_round_trip(table):
    d = json.loads(table.to_json())
    jsonschema.validate(d, TABLE_SCHEMA)
    back = DistributionTable.from_json(table.to_json())
    assert back.group == table.group
    assert back.entries == table.entries
    assert back.provenance == table.provenance
    assert back.to_json() == table.to_json()


def test_csv():
    text = formula_table(Symplectic(1, 3)).to_csv().splitlines()
    assert text[0] == "group,rank,ell_or_m,modulus,provenance,descriptor,value"
    assert text[1:] == ["sp,1,3,3,formula,0,5/8", "sp,1,3,3,formula,1,1/3", "sp,1,3,3,formula,2,1/24"]


def test_symbolic_table_evaluates():
    t = formula_table(Symplectic(2))
    assert t.evaluate(3).entries == SP4_F3
    with pytest.raises(ValueError):
        DistributionTable(Symplectic(1, 3), {}, "guess")


def test_small_counts():
    assert [unipotent_fixed_count(2, r, 3) for r in range(1, 5)] == [5760, 720, 80, 1]
    assert unipotent_fixed_count(1, 1, 3) == 8
    assert phi_count(0, 3) == 1
    assert phi_count(1, 3) == 15
    assert alpha(2, 0, 3) == phi_count(2, 3) / sp_order(2, 3) == Fraction(33129, 51840)


@pytest.mark.parametrize("ell", [3, 5])
def test_monotone_tail(ell):
    for r in range(5):
        for g in range(max(1, (r + 1) // 2), 9):
            assert abs(alpha(g, r, ell) - alpha(g + 1, r, ell)) < Fraction(ell) ** -g


def test_successive_gaps_fixture():
    # |alpha(g, 1) - alpha(g - 1, 1)| at l = 3, relative to 3^-(g-1) / 2
    gaps = [abs(alpha(g, 1, 3) - alpha(g - 1, 1, 3)) for g in range(2, 9)]
    assert gaps[0] == Fraction(1, 72)
    ratios = [gap / (Fraction(3) ** -(g - 1) / 2) for g, gap in zip(range(2, 9), gaps)]
    assert ratios[0] == Fraction(1, 12)
    assert all(x <= Fraction(1, 12) for x in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_trivial_limit():
    for r in range(3):
        assert alpha_limit(r, 1, 3)[0] == alpha(1, r, 3)
