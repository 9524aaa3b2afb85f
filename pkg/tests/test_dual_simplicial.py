"""
Claims tested:
  - augmented Andre permutations and their cd-variations;
  - Phi-check by enumeration and by recurrence, and the Boolean cd-indices;
  - the t_{n,i} table for n <= 5;
  - tau against an independent recurrence, sigma against its expansion and the
    shifted-basis coefficient, the telescoping window sums and Narayana numbers;
  - monotone coefficients outside the table or fractional are rejected;
  - st and g of dual simplicial posets from the h-vector of the dual;
  - the cube closed forms and the monotone h-vector check.
"""
from functools import lru_cache
from itertools import product

import pytest

from components.bases import binom, t_poly, to_t_basis
from components.dual_simplicial import (
    Permutation,
    andre_permutations,
    boolean_cd_index,
    cd_variation,
    dual_h_from_f,
    g_dual_monotone,
    g_dual_simplicial,
    g_shifted_basis,
    gessel_cube_g,
    gessel_cube_g_binomial,
    glb_nonnegativity_check,
    is_augmented_andre,
    monotone_coefficient,
    monotone_coefficient_int,
    narayana,
    phi_check_enum,
    phi_check_rec,
    shifted_coefficient,
    sigma,
    sigma_by_expansion,
    simplicial_toric_f,
    st_dual_simplicial,
    stanley_decomposition_check,
    t_ni,
    tau,
)
from components.laurent import LaurentPoly
from components.ncindex import NCPoly, cd_index
from components.poset import f_vector
from components.toric import short_toric, stanley_f_g
from dataset.families import boolean_algebra, cross_polytope_lattice, cube_lattice, polygon_lattice
from utils.errors import (
    AsymmetricHVector,
    ConsecutiveDescents,
    IndexOutOfRange,
    InputError,
    NonIntegralCoefficient,
    NotDualSimplicial,
    NotSimplicial,
    ParameterOutOfRange,
)
from utils.params import T_TABLE


@lru_cache(maxsize=None)
def _tau_by_recurrence(n, i, k):
    """tau from the lower-index recurrence, independent of the closed form."""
    if n <= 0 or i < 0 or i >= n or k < 0 or k > n // 2:
        return 0
    if n == 1:
        return 1 if k == 0 else 0
    if i == n - 1:
        return 1 if k == 1 else 0
    total = _tau_by_recurrence(n - 1, i, k) - _tau_by_recurrence(n - 1, i, k - 1)
    for j in range(min(i, n - 2 * k + 1) + 1):
        total += (
            binom(i, j)
            * binom(n - i - 2, n - 2 * k + 1 - j)
            * _tau_by_recurrence(2 * k - 2, i - j, k - 1)
        )
    return total


def _dyck_peaks(i, k):
    """Dyck paths of semilength i with exactly k peaks, by enumeration."""
    count = 0
    for steps in product((1, -1), repeat=2 * i):
        height, ok = 0, True
        for step in steps:
            height += step
            if height < 0:
                ok = False
                break
        if not ok or height != 0:
            continue
        peaks = sum(1 for a, b in zip(steps, steps[1:]) if a == 1 and b == -1)
        count += peaks == k
    return count


def _cube_h(n):
    return [binom(n, i) for i in range(n + 1)]


class TestAndre:
    def test_permutation_rejects_repeats(self):
        with pytest.raises(InputError):
            Permutation((1, 2, 2))

    def test_descents(self):
        assert Permutation((2, 1, 3, 5, 4)).descents == [1, 4]

    def test_small_class(self):
        assert [p.word for p in andre_permutations(2)] == [(1, 2, 3), (2, 1, 3)]

    def test_predicate(self):
        assert is_augmented_andre((2, 1, 3))
        assert not is_augmented_andre((1, 3, 2))

    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 61)])
    def test_counts(self, n, count):
        assert sum(1 for _ in andre_permutations(n)) == count

    def test_cd_variation(self):
        assert cd_variation((1, 2, 3)) == "cc"
        assert cd_variation((2, 1, 3)) == "d"
        assert cd_variation((2, 1, 4, 3, 5)) == "dd"

    def test_consecutive_descents(self):
        with pytest.raises(ConsecutiveDescents):
            cd_variation((3, 2, 1, 4))


class TestPhiCheck:
    def test_n2(self):
        assert phi_check_rec(2, 0) == NCPoly("CD", {"cc": 1})
        assert phi_check_rec(2, 1) == NCPoly("CD", {"d": 1})

    @pytest.mark.parametrize("n", range(1, 7))
    def test_routes_agree(self, n):
        for i in range(n):
            assert phi_check_rec(n, i) == phi_check_enum(n, i)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_boolean_cd_index(self, k):
        assert boolean_cd_index(k) == cd_index(boolean_algebra(k))

    def test_index_errors(self):
        with pytest.raises(ParameterOutOfRange):
            phi_check_rec(3, 3)
        with pytest.raises(ParameterOutOfRange):
            boolean_cd_index(0)


class TestTable:
    @pytest.mark.parametrize("key", sorted(T_TABLE))
    def test_entries(self, key):
        n, i = key
        assert to_t_basis(t_ni(n, i), n) == T_TABLE[key]
        assert to_t_basis(t_ni(n, i, route="enum"), n) == T_TABLE[key]

    def test_t_expansion(self):
        assert t_ni(3, 0) == t_poly(3) - t_poly(1).scale(2)


class TestCoefficients:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_tau_recurrence(self, n):
        for i in range(n):
            for k in range(n // 2 + 1):
                assert tau(n, i, k) == _tau_by_recurrence(n, i, k), (n, i, k)

    def test_tau_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            tau(4, 4, 0)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_sigma_forms(self, n):
        for i in range(1, n):
            for k in range(n // 2 + 1):
                assert sigma(n, i, k) == sigma_by_expansion(n, i, k) == shifted_coefficient(n, i, k)

    def test_sigma_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            sigma(4, 0, 1)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_telescoping(self, n):
        for i in range(1, n // 2 + 1):
            for k in range(1, n // 2 + 1):
                window = sum(tau(n, j, k) for j in range(i, n - i + 1))
                assert window == monotone_coefficient(n, i, k) == monotone_coefficient_int(n, i, k)

    @pytest.mark.parametrize("i", range(1, 7))
    def test_narayana(self, i):
        for k in range(1, i + 1):
            assert narayana(i, k) == _dyck_peaks(i, k) == monotone_coefficient(2 * i, i, k)

    def test_monotone_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            monotone_coefficient(4, 0, 1)

    def test_monotone_fractional_entry(self, monkeypatch):
        monkeypatch.setattr("components.dual_simplicial.binom", lambda a, b: 1)
        with pytest.raises(NonIntegralCoefficient):
            monotone_coefficient(4, 1, 2)


class TestDualSimplicial:
    def test_cube_h(self):
        assert dual_h_from_f(cube_lattice(3)) == [1, 3, 3, 1]

    def test_not_dual_simplicial(self):
        with pytest.raises(NotDualSimplicial):
            dual_h_from_f(cross_polytope_lattice(3))

    def test_cube3_formulas(self):
        h = [1, 3, 3, 1]
        assert st_dual_simplicial(h, 3) == LaurentPoly({3: 1, 1: 5})
        assert g_dual_simplicial(h, 3) == LaurentPoly.from_coefficients([1, 4])
        assert g_dual_monotone(h, 3) == LaurentPoly.from_coefficients([1, 4])
        assert g_shifted_basis(h, 3) == LaurentPoly.from_coefficients([1, 4])

    @pytest.mark.parametrize("P", [cube_lattice(d) for d in range(1, 5)]
                             + [boolean_algebra(r) for r in range(2, 7)]
                             + [polygon_lattice(6)])
    def test_against_direct(self, P):
        h = dual_h_from_f(P)
        n = len(h) - 1
        g = stanley_f_g(P).g
        assert st_dual_simplicial(h, n) == short_toric(P)
        assert g_dual_simplicial(h, n) == g
        assert g_dual_monotone(h, n) == g
        assert g_shifted_basis(h, n) == g

    def test_asymmetric_h(self):
        with pytest.raises(AsymmetricHVector):
            g_dual_simplicial([1, 2, 3], 2)

    def test_wrong_length(self):
        with pytest.raises(ParameterOutOfRange):
            st_dual_simplicial([1, 1], 2)


class TestDecomposition:
    @pytest.mark.parametrize("P", [boolean_algebra(r) for r in range(1, 6)]
                             + [cross_polytope_lattice(3), polygon_lattice(5)])
    def test_holds(self, P):
        report = stanley_decomposition_check(P)
        assert report.cd == report.expected

    def test_octahedron_h(self):
        report = stanley_decomposition_check(cross_polytope_lattice(3))
        assert report.h == (1, 3, 3, 1)

    def test_cube_not_simplicial(self):
        with pytest.raises(NotSimplicial):
            stanley_decomposition_check(cube_lattice(3))

    def test_simplicial_toric_f(self):
        P = cross_polytope_lattice(3)
        assert simplicial_toric_f(f_vector(P)) == stanley_f_g(P).f


class TestCubes:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_face_lattice(self, n):
        assert stanley_f_g(cube_lattice(n)).g == gessel_cube_g(n)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_closed_forms(self, n):
        assert gessel_cube_g(n) == gessel_cube_g_binomial(n)

    def test_cube3(self):
        assert gessel_cube_g(3) == LaurentPoly.from_coefficients([1, 4])

    def test_bad_dimension(self):
        with pytest.raises(ParameterOutOfRange):
            gessel_cube_g(0)


class TestMonotoneCheck:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_cube_h_vectors(self, n):
        verdict = glb_nonnegativity_check(_cube_h(n), n)
        assert verdict.holds is True

    def test_asymmetric_skipped(self):
        assert glb_nonnegativity_check([1, 2, 3], 2).holds is None

    def test_not_monotone_skipped(self):
        assert glb_nonnegativity_check([2, 1, 2], 2).holds is None
