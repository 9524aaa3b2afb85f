"""
Claims tested:
  - Stanley's f and g on triangles, polygons, Boolean algebras and the 3-cube;
  - the four st routes agree (recurrence, flag formula, symmetric variant of f,
    cd substitution);
  - g is read back from st; the g/st transfer is consistent;
  - st of a closed Eulerian interval vanishes, and the lower Eulerian f
    reproduces st on bottom-glued posets;
  - degree of st versus the reduced Euler characteristic, which matches both
    the signed chain count of P without 0 and the alternating flag-f sum;
  - each lower-interval table entry is Stanley f/g of its own interval;
  - the flag formulas reject an n that does not match the flag vector.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from components.flags import flag_f, h_from_f
from components.laurent import LaurentPoly, is_add_symmetric
from components.ncindex import NCPoly, cd_index
from components.poset import Poset, closed_interval, lower_half_open
from components.toric import (
    ShortToric,
    _lower_interval_table,
    apply_cd_word,
    f_closed_interval,
    f_from_g,
    f_from_st,
    f_lower_eulerian,
    fine_f,
    fine_st,
    g_from_st,
    g_st_transfer,
    reduced_euler_char,
    short_toric,
    st_from_f,
    st_recurrence,
    st_via_cd,
    stanley_f_g,
    toric_h_vector,
)
from dataset.families import (
    boolean_algebra,
    chain,
    cross_polytope_lattice,
    cube_lattice,
    glue_at_bottom,
    polygon_lattice,
    random_ranked_poset,
)
from utils.errors import (
    AlphabetMismatch,
    KindMismatch,
    NotEulerian,
    NotLowerEulerian,
    NotMultSymmetric,
    ParameterOutOfRange,
    UnexpectedParity,
)

CUBE3_ST = LaurentPoly({3: 1, 1: 5})


def _eulerian_cases():
    cases = [boolean_algebra(r) for r in range(1, 6)]
    cases += [cube_lattice(d) for d in range(1, 4)]
    cases += [cross_polytope_lattice(d) for d in range(2, 4)]
    cases += [polygon_lattice(m) for m in (3, 4, 7)]
    return cases


class TestStanley:
    def test_cube3(self):
        pair = stanley_f_g(cube_lattice(3))
        assert pair.n == 3
        assert pair.g == LaurentPoly.from_coefficients([1, 4])
        assert pair.f == LaurentPoly.from_coefficients([1, 5, 5, 1])
        assert toric_h_vector(pair) == [1, 5, 5, 1]

    @pytest.mark.parametrize("m", range(3, 9))
    def test_polygon(self, m):
        pair = stanley_f_g(polygon_lattice(m))
        assert pair.g == LaurentPoly.from_coefficients([1, m - 3])
        assert pair.f == LaurentPoly.from_coefficients([1, m - 2, 1])

    @pytest.mark.parametrize("r", range(1, 7))
    def test_simplex_g_is_one(self, r):
        pair = stanley_f_g(boolean_algebra(r))
        assert pair.g == 1
        assert pair.f == LaurentPoly.from_coefficients([1] * r)

    def test_not_eulerian(self):
        with pytest.raises(NotEulerian):
            stanley_f_g(chain(3))

    def test_f_from_g(self):
        assert f_from_g(LaurentPoly.from_coefficients([1, 4]), 3) == LaurentPoly.from_coefficients([1, 5, 5, 1])

    def test_closed_interval_f(self):
        f = f_closed_interval(LaurentPoly.from_coefficients([1, 4]), 3)
        assert f == LaurentPoly({4: 1, 3: 4})


class TestShortToric:
    def test_cube3(self):
        assert short_toric(cube_lattice(3)) == CUBE3_ST

    def test_triangle(self):
        assert short_toric(boolean_algebra(3)) == LaurentPoly({2: 1, 0: 1})

    def test_point(self):
        assert short_toric(boolean_algebra(1)) == 1

    def test_empty_poset(self):
        assert st_recurrence(Poset.empty()) == ShortToric(LaurentPoly.one(), 0)

    @pytest.mark.parametrize("P", _eulerian_cases())
    def test_four_routes(self, P):
        expected = short_toric(P)
        pair = stanley_f_g(P)
        assert fine_st(flag_f(P)) == expected
        assert st_from_f(pair.f, pair.n) == expected
        assert st_via_cd(cd_index(P)) == expected

    @pytest.mark.parametrize("P", _eulerian_cases())
    def test_g_from_st(self, P):
        assert g_from_st(short_toric(P)) == stanley_f_g(P).g

    @pytest.mark.parametrize("P", _eulerian_cases())
    def test_closed_interval_vanishes(self, P):
        assert st_recurrence(P) == 0

    def test_fine_f_is_symmetric_f(self):
        P = cube_lattice(3)
        assert fine_f(flag_f(P)) == stanley_f_g(P).f

    def test_f_from_st(self):
        assert f_from_st(ShortToric(CUBE3_ST, 3)) == LaurentPoly.from_coefficients([1, 5, 5, 1])

    def test_st_from_f_rejects_asymmetric(self):
        with pytest.raises(NotMultSymmetric):
            st_from_f(LaurentPoly.from_coefficients([1, 2, 3]), 2)

    def test_g_from_st_parity(self):
        with pytest.raises(UnexpectedParity):
            g_from_st(ShortToric(LaurentPoly({2: 1}), 3))

    def test_fine_needs_flag_f(self):
        with pytest.raises(KindMismatch):
            fine_st(h_from_f(flag_f(boolean_algebra(2))))

    def test_cd_substitution_needs_cd(self):
        with pytest.raises(AlphabetMismatch):
            st_via_cd(NCPoly("CE", {"cc": 1}))

    def test_apply_first_letter_first(self):
        assert apply_cd_word("dc") == LaurentPoly({1: 1})
        assert apply_cd_word("cd") == 0


class TestTransfer:
    def test_cube3(self):
        transfer = g_st_transfer([1, 4], 3)
        assert transfer.st == CUBE3_ST
        assert transfer.g == LaurentPoly.from_coefficients([1, 4])
        assert transfer.consistent

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(min_value=0, max_value=9),
        coeffs=st.lists(st.integers(min_value=-10, max_value=10), min_size=1, max_size=5),
    )
    def test_always_consistent(self, n, coeffs):
        transfer = g_st_transfer(coeffs[: n // 2 + 1], n)
        assert transfer.consistent


class TestLowerEulerian:
    def test_closed_boolean(self):
        assert f_lower_eulerian(boolean_algebra(3)) == LaurentPoly({3: 1})

    @pytest.mark.parametrize("P", [
        glue_at_bottom(boolean_algebra(3), polygon_lattice(4)),
        glue_at_bottom(chain(1), boolean_algebra(2)),
        glue_at_bottom(cube_lattice(2), boolean_algebra(3)),
        lower_half_open(cube_lattice(3)),
    ])
    def test_st_from_lower_f(self, P):
        n = P.longest_chain
        expected = f_lower_eulerian(P).substitute_power(-2).shift(n).truncate_ge(0)
        assert st_recurrence(P) == expected

    def test_rejects_non_eulerian(self):
        with pytest.raises(NotLowerEulerian):
            f_lower_eulerian(chain(2))


class TestEulerCharacteristic:
    def test_half_open_boolean(self):
        assert reduced_euler_char(lower_half_open(boolean_algebra(3))) == 1

    def test_chain(self):
        assert reduced_euler_char(chain(3)) == 0

    @pytest.mark.parametrize("P", _eulerian_cases())
    def test_full_degree_on_half_open(self, P):
        H = lower_half_open(P)
        assert reduced_euler_char(H) != 0
        assert short_toric(P).poly.degree == H.max_rank

    @settings(max_examples=40, deadline=None)
    @given(size=st.integers(min_value=1, max_value=12), seed=st.integers(min_value=0, max_value=10_000))
    def test_random_posets(self, size, seed):
        P = random_ranked_poset(size, seed=seed)
        result = st_recurrence(P)
        assert is_add_symmetric(result.poly, result.n)
        full = result.poly.degree == result.n
        assert full == (reduced_euler_char(P) != Fraction(0))

    @pytest.mark.parametrize("P", [
        boolean_algebra(3),
        cube_lattice(2),
        polygon_lattice(5),
        chain(3),
        glue_at_bottom(boolean_algebra(3), polygon_lattice(4)),
    ])
    def test_matches_chain_sum(self, P):
        alternating = sum((-1) ** bin(S).count("1") * v for S, v in flag_f(P, interior=False).values.items())
        assert _signed_chain_count(P) == alternating == reduced_euler_char(P)

    @settings(max_examples=40, deadline=None)
    @given(size=st.integers(min_value=1, max_value=12), seed=st.integers(min_value=0, max_value=10_000))
    def test_random_matches_chain_sum(self, size, seed):
        P = random_ranked_poset(size, seed=seed)
        alternating = sum((-1) ** bin(S).count("1") * v for S, v in flag_f(P, interior=False).values.items())
        assert _signed_chain_count(P) == alternating == reduced_euler_char(P)


def _signed_chain_count(P):
    """sum of (-1)^k over the chains x1 < ... < xk of P without its bottom, empty chain included."""
    bottom = P.require_bottom()
    elements = [v for v in range(len(P)) if v != bottom]

    def extend(last, sign):
        total = sign
        for v in elements:
            if last is None or (v != last and P.leq(last, v)):
                total += extend(v, -sign)
        return total

    return extend(None, 1)


class TestLowerIntervalTable:
    def test_every_entry_is_its_interval(self):
        P = cube_lattice(3)
        table = _lower_interval_table(P)
        assert len(table) == len(P)
        bottom = P.ids[P.bottom]
        for p in range(len(P)):
            if P.ranks[p] >= 1:
                assert table[p] == stanley_f_g(closed_interval(P, bottom, P.ids[p]))

    def test_top_entry_is_the_whole_poset(self):
        P = cross_polytope_lattice(3)
        assert _lower_interval_table(P)[P.top] == stanley_f_g(P)


class TestFineSpan:
    @pytest.mark.parametrize("P", [boolean_algebra(3), cube_lattice(3), polygon_lattice(6)])
    def test_matching_n(self, P):
        f = flag_f(P)
        assert fine_st(f, P.max_rank - 1) == short_toric(P)
        assert fine_f(f, P.max_rank - 1) == stanley_f_g(P).f

    def test_st_rejects_wrong_n(self):
        with pytest.raises(ParameterOutOfRange):
            fine_st(flag_f(boolean_algebra(3)), 5)

    def test_f_rejects_wrong_n(self):
        with pytest.raises(ParameterOutOfRange):
            fine_f(flag_f(boolean_algebra(3)), 5)
