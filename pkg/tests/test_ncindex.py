"""
Claims tested:
  - cd-indices of the Boolean algebras, the 3-cube and the octahedron;
  - duality reverses the cd-index;
  - ce/cd conversions are inverse on cd polynomials;
  - the e-word coefficients of the ce-index equal the flag L-vector;
  - alphabet and Eulerian errors.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from components.flags import flag_f, h_from_f
from components.ncindex import (
    NCPoly,
    ab_index,
    ab_to_ce,
    cd_index,
    cd_to_ce,
    ce_coefficients_match_L,
    ce_to_cd,
    reverse,
)
from components.poset import dual
from dataset.families import boolean_algebra, chain, cross_polytope_lattice, cube_lattice, polygon_lattice
from utils.errors import AlphabetMismatch, NotEulerian, OddEWordPresent


def _cd(terms):
    return NCPoly("CD", terms)


@st.composite
def cd_polys(draw):
    words = draw(st.lists(st.text(alphabet="cd", max_size=4), max_size=5))
    coeffs = draw(st.lists(st.integers(min_value=-9, max_value=9), min_size=len(words), max_size=len(words)))
    return _cd(dict(zip(words, coeffs)))


class TestKnownIndices:
    def test_boolean2(self):
        assert cd_index(boolean_algebra(2)) == _cd({"c": 1})

    def test_boolean3(self):
        assert cd_index(boolean_algebra(3)) == _cd({"cc": 1, "d": 1})

    def test_boolean4(self):
        assert cd_index(boolean_algebra(4)) == _cd({"ccc": 1, "cd": 2, "dc": 2})

    def test_cube3(self):
        assert cd_index(cube_lattice(3)) == _cd({"ccc": 1, "dc": 6, "cd": 4})

    def test_octahedron(self):
        assert cd_index(cross_polytope_lattice(3)) == _cd({"ccc": 1, "dc": 4, "cd": 6})

    def test_polygon(self):
        assert cd_index(polygon_lattice(6)) == _cd({"cc": 1, "d": 4})

    def test_ab_index_boolean3(self):
        psi = ab_index(h_from_f(flag_f(boolean_algebra(3))))
        assert psi == NCPoly("AB", {"aa": 1, "ab": 2, "ba": 2, "bb": 1})


class TestStructure:
    @pytest.mark.parametrize("P", [cube_lattice(3), polygon_lattice(5), boolean_algebra(4)])
    def test_dual_reverses(self, P):
        assert cd_index(dual(P)) == reverse(cd_index(P))

    @pytest.mark.parametrize("P", [cube_lattice(3), boolean_algebra(4), chain(3)])
    def test_ce_matches_L(self, P):
        assert ce_coefficients_match_L(P) == []

    def test_all_c_coefficient_is_one(self):
        assert cd_index(cube_lattice(4)).coefficient("cccc") == 1

    @settings(max_examples=50, deadline=None)
    @given(p=cd_polys())
    def test_cd_ce_round_trip(self, p):
        assert ce_to_cd(cd_to_ce(p)) == p


class TestErrors:
    def test_not_eulerian_names_interval(self):
        with pytest.raises(NotEulerian) as info:
            cd_index(chain(2))
        assert len(info.value.witness) == 2

    def test_odd_e_run(self):
        with pytest.raises(OddEWordPresent):
            ce_to_cd(NCPoly("CE", {"ce": 1}))

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            ab_to_ce(_cd({"c": 1}))

    def test_foreign_letter(self):
        with pytest.raises(AlphabetMismatch):
            NCPoly("CD", {"ab": 1})

    def test_mixed_addition(self):
        with pytest.raises(AlphabetMismatch):
            _cd({"c": 1}) + NCPoly("CE", {"c": 1})
