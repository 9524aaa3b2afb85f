"""
Claims tested:
  - sign-vector statistics S, R and i;
  - the all-paths and reflected st_ce models agree on even sets;
  - the cd path model agrees with the Catalan closed form;
  - the path models of Q_n and x^n;
  - st_h by brute force, by the single-pass table and by the closed form;
  - the flag-h, ce and cd path sums give st on small posets.
"""
import pytest

from components.bases import Q_poly, st_cd_word
from components.flags import flag_f, h_from_f, to_mask
from components.laurent import LaurentPoly
from components.lattice_paths import (
    SignVector,
    d_cover,
    even_sets,
    path_table,
    q_poly_paths,
    sign_vectors,
    sparse_intervals,
    st_cd_word_paths,
    st_ce_all,
    st_ce_reflected,
    st_from_cd_paths,
    st_from_ce,
    st_from_flag_h,
    st_h_bruteforce,
    st_h_closed,
    st_h_closed_literal,
    st_h_table,
    x_to_q_paths,
)
from components.ncindex import cd_index, ce_index
from components.toric import short_toric
from dataset.families import boolean_algebra, chain, cube_lattice, polygon_lattice
from utils.errors import AlphabetMismatch, KindMismatch, ParameterOutOfRange


def _all_cd_words(n):
    if n < 0:
        return []
    if n == 0:
        return [""]
    return ["c" + w for w in _all_cd_words(n - 1)] + ["d" + w for w in _all_cd_words(n - 2)]


class TestSignVectors:
    def test_statistics(self):
        lam = SignVector((1, -1, -1, 1, 1))
        assert lam.prefix_sums == [1, 0, -1, 0, 1]
        assert lam.S == to_mask([1, 5])
        assert lam.R == to_mask([2, 4])
        assert lam.i_lambda == 2
        assert lam.total == 1
        assert lam.min_prefix == -1

    @pytest.mark.parametrize("n", range(0, 7))
    def test_count(self, n):
        assert sum(1 for _ in sign_vectors(n)) == 2 ** n
        assert len(path_table(n)) == 2 ** n

    def test_cap(self):
        with pytest.raises(ParameterOutOfRange):
            path_table(21)


class TestCeModels:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_reflection(self, n):
        for S in even_sets(n):
            assert st_ce_all(S, n) == st_ce_reflected(S, n), bin(S)

    def test_even_sets(self):
        assert even_sets(3) == [0b000, 0b011, 0b110]


class TestCdModel:
    def test_d_cover(self):
        assert d_cover("dc") == (3, 0b011)
        assert d_cover("cdd") == (5, 0b11110)

    def test_d_cover_rejects_foreign_letters(self):
        with pytest.raises(AlphabetMismatch):
            d_cover("ce")

    @pytest.mark.parametrize("n", range(0, 8))
    def test_paths_match_closed_form(self, n):
        for word in _all_cd_words(n):
            assert st_cd_word_paths(word) == st_cd_word(word), word


class TestBasisPaths:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_Q(self, n):
        assert q_poly_paths(n) == Q_poly(n)

    @pytest.mark.parametrize("n", range(0, 15))
    def test_x_power(self, n):
        assert x_to_q_paths(n) == LaurentPoly.monomial(n)


class TestStH:
    def test_n2_values(self):
        assert st_h_bruteforce(0b11, 2) == LaurentPoly({2: 1})
        assert st_h_bruteforce(0b01, 2) == 1
        assert st_h_bruteforce(0b10, 2) == 0
        assert st_h_bruteforce(0b00, 2) == -1

    @pytest.mark.parametrize("n", range(0, 8))
    def test_closed_form(self, n):
        for S in range(1 << n):
            assert st_h_closed(S, n) == st_h_bruteforce(S, n), bin(S)

    @pytest.mark.parametrize("n", range(0, 8))
    def test_table(self, n):
        table = st_h_table(n)
        assert all(table[S] == st_h_bruteforce(S, n) for S in range(1 << n))

    def test_sparse_intervals(self):
        I = sparse_intervals(to_mask([1, 2, 4, 7, 8, 9]))
        assert I.intervals == ((1, 2), (4, 4), (7, 9))
        assert I.union() == to_mask([1, 2, 4, 7, 8, 9])
        assert len(I) == 3

    def test_literal_reading_undefined(self):
        assert st_h_closed_literal(0, 1) is None

    def test_literal_reading_agrees_on_empty_set(self):
        assert st_h_closed_literal(0, 2) == st_h_closed(0, 2) == -1

    def test_literal_reading_differs(self):
        assert st_h_closed_literal(0b0010, 4) == -1
        assert st_h_closed(0b0010, 4) == 0

    def test_flag_h_needs_h(self):
        with pytest.raises(KindMismatch):
            st_from_flag_h(flag_f(boolean_algebra(3)))


class TestPosetSums:
    @pytest.mark.parametrize("P", [boolean_algebra(3), boolean_algebra(4), cube_lattice(3), polygon_lattice(6)])
    def test_flag_h_sum(self, P):
        assert st_from_flag_h(h_from_f(flag_f(P))) == short_toric(P).poly

    def test_flag_h_sum_on_chain(self):
        C = chain(4)
        assert st_from_flag_h(h_from_f(flag_f(C))) == short_toric(C).poly

    @pytest.mark.parametrize("P", [boolean_algebra(4), cube_lattice(3), polygon_lattice(5)])
    def test_ce_sum(self, P):
        assert st_from_ce(ce_index(P)) == short_toric(P).poly

    @pytest.mark.parametrize("P", [boolean_algebra(4), cube_lattice(3), polygon_lattice(5)])
    def test_cd_sum(self, P):
        assert st_from_cd_paths(cd_index(P)) == short_toric(P).poly

    def test_ce_sum_needs_ce(self):
        with pytest.raises(AlphabetMismatch):
            st_from_ce(cd_index(boolean_algebra(3)))
