# tests/test_involutions.py
"""
Involutions, orientations and oriented pairs
"""
import pytest

from grouplab.models.group import SubgroupSet
from grouplab.services.group_service import group_service
from grouplab.services.involution_service import involution_service
from grouplab.utils.errors import (
    BoundExceededError, InvalidSelectorError, NotInKernelError, NotInvariantError,
    NotNormalError, ParentMismatchError,
)

from tests.conftest import Q8_FIX_J_K, Q8_I

# Automorphism counts: |Aut(Q8)| = |S4|, |Aut(D8)| = |D8|, |Aut(D6)| = |S3|, |Aut(V4)| = |S3|
AUT_COUNTS = {"Q8": 24, "D8": 8, "D6": 6, "C6": 2, "C2xC2": 6}
# Involutions correspond to automorphisms of order <= 2
INVOLUTION_COUNTS = {"Q8": 10, "D8": 6, "D6": 4, "C6": 2, "C2xC2": 4}
# 2^r - 1 subgroups of index 2
ORIENTATION_COUNTS = {"Q8": 3, "D8": 3, "D6": 1, "C6": 1, "C3": 0, "C2xC2": 3}


class TestAntiAutomorphisms:
    """Test recognition and enumeration of involutions"""

    @pytest.mark.parametrize("spec", sorted(AUT_COUNTS))
    def test_automorphism_counts(self, spec):
        """Test the generator-extension search finds the whole automorphism group"""
        G = group_service.build_group(spec)
        assert len(involution_service.automorphisms(G)) == AUT_COUNTS[spec]

    @pytest.mark.parametrize("spec", sorted(INVOLUTION_COUNTS))
    def test_involution_counts(self, spec):
        """Test the number of involutions"""
        G = group_service.build_group(spec)
        found = involution_service.enumerate_involutions(G)
        assert len(found) == INVOLUTION_COUNTS[spec]
        assert [t.image for t in found] == sorted(t.image for t in found)
        assert all(involution_service.is_anti_automorphism(G, t.image) for t in found)

    def test_classical_is_enumerated(self, q8):
        """Test inversion appears among the enumerated involutions"""
        images = [t.image for t in involution_service.enumerate_involutions(q8)]
        assert q8.inv in images

    def test_not_anti_automorphism(self, q8):
        """Test the identity map of a non-abelian group is rejected"""
        assert not involution_service.is_anti_automorphism(q8, tuple(q8.elements()))
        with pytest.raises(InvalidSelectorError):
            involution_service.identity_map(q8)
        with pytest.raises(InvalidSelectorError):
            involution_service.anti_automorphism(q8, [0, 1, 2, 3, 4, 5, 6, 7])

    def test_identity_map_abelian(self, c6):
        """Test the identity map is an involution of an abelian group"""
        assert involution_service.identity_map(c6).image == tuple(range(6))

    def test_bound(self):
        """Test enumeration refuses groups above the order bound"""
        G = group_service.build_group("Q8xC3")
        with pytest.raises(BoundExceededError):
            involution_service.enumerate_involutions(G)

    def test_involutions_preserve_orders(self, corpus):
        """Test order(star(g)) = order(g), so star maps p-elements onto p-elements"""
        for G in corpus:
            orders = group_service.element_orders(G)
            p_sets = [set(group_service.p_elements(G, p)[0]) for p in (2, 3)]
            for star in involution_service.enumerate_involutions(G):
                assert all(orders[star(g)] == orders[g] for g in G.elements()), G.name
                for members in p_sets:
                    assert {star(g) for g in members} == members, G.name


class TestOrientations:
    """Test orientation enumeration"""

    @pytest.mark.parametrize("spec", sorted(ORIENTATION_COUNTS))
    def test_counts(self, spec):
        """Test one orientation per index-2 subgroup"""
        G = group_service.build_group(spec)
        assert len(involution_service.enumerate_orientations(G)) == ORIENTATION_COUNTS[spec]

    def test_q8_kernels(self, q8):
        """Test Q8 kernels are <i>, <j>, <k> in that order"""
        kernels = [o.kernel.members for o in involution_service.enumerate_orientations(q8)]
        assert kernels == [(0, 1, 2, 3), (0, 2, 4, 6), (0, 2, 5, 7)]

    def test_trivial_first(self, d8):
        """Test the trivial orientation leads when included"""
        found = involution_service.enumerate_orientations(d8, include_trivial=True)
        assert len(found) == 4
        assert found[0].is_trivial

    def test_sign_is_homomorphism(self, d8):
        """Test every orientation is multiplicative"""
        for sigma in involution_service.enumerate_orientations(d8):
            assert all(
                sigma(d8.mul[a][b]) == sigma(a) * sigma(b) for a in d8.elements() for b in d8.elements()
            )

    def test_from_kernel_index(self, q8):
        """Test kernels must have index at most 2"""
        with pytest.raises(InvalidSelectorError):
            involution_service.orientation_from_kernel(q8, group_service.center(q8))

    def test_half_signs_negative(self, corpus):
        """Test every non-trivial orientation sends exactly half the group to -1"""
        for G in corpus:
            for sigma in involution_service.enumerate_orientations(G):
                assert sigma.sign.count(-1) * 2 == G.order, G.name
                assert len(sigma.kernel) * 2 == G.order, G.name

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_odd_p_elements_in_kernel(self, corpus, p):
        """Test elements of odd p-power order have sign +1"""
        for G in corpus:
            members, _ = group_service.p_elements(G, p)
            for sigma in involution_service.enumerate_orientations(G):
                assert all(sigma(g) == 1 for g in members), (G.name, p)


class TestPairs:
    """Test compatibility, selectors and induced pairs"""

    def test_classical_always_compatible(self, d8):
        """Test inversion is compatible with every orientation"""
        star = involution_service.classical_involution(d8)
        for sigma in involution_service.enumerate_orientations(d8, include_trivial=True):
            assert involution_service.make_pair(star, sigma).compatible

    def test_incompatible_pair(self):
        """Test the swap of V4 factors against kernel {0, (1, 0)}"""
        G = group_service.build_group("C2xC2")
        star, _ = involution_service.select_involution(G, "map:0,2,1,3")
        sigma, _ = involution_service.select_orientation(G, "k:2")
        assert not involution_service.make_pair(star, sigma).compatible

    def test_parent_mismatch(self, q8, d8):
        """Test pairing maps from different groups"""
        with pytest.raises(ParentMismatchError):
            involution_service.make_pair(
                involution_service.classical_involution(q8), involution_service.trivial_orientation(d8)
            )

    def test_selectors(self, q8):
        """Test selector resolution returns consistent indices"""
        star, i = involution_service.select_involution(q8, Q8_FIX_J_K)
        assert star.image == (0, 3, 2, 1, 4, 5, 6, 7)
        assert involution_service.enumerate_involutions(q8)[i] == star
        sigma, j = involution_service.select_orientation(q8, f"k:{Q8_I}")
        assert j == 0
        assert sigma.kernel.members == (0, 1, 2, 3)

    @pytest.mark.parametrize("selector", ["bogus", "99", "map:0,1,x"])
    def test_bad_involution_selectors(self, q8, selector):
        """Test malformed or out-of-range involution selectors"""
        with pytest.raises(InvalidSelectorError):
            involution_service.select_involution(q8, selector)

    def test_bad_orientation_selector(self, q8):
        """Test an orientation index past the end"""
        with pytest.raises(InvalidSelectorError):
            involution_service.select_orientation(q8, "3")

    def test_induce_on_center_quotient(self, q8):
        """Test the induced pair on Q8/Z"""
        star = involution_service.classical_involution(q8)
        sigma = involution_service.enumerate_orientations(q8)[0]
        qpair, qr = involution_service.induce_with_projection(
            involution_service.make_pair(star, sigma), group_service.center(q8)
        )
        assert qr.quotient.order == 4
        # inversion on an elementary abelian 2-group is the identity
        assert qpair.star.image == (0, 1, 2, 3)
        assert len(qpair.sigma.kernel) == 2
        assert qpair.compatible

    def test_induce_not_normal(self, d8):
        """Test inducing through a non-normal subgroup"""
        pair = involution_service.make_pair(
            involution_service.classical_involution(d8), involution_service.trivial_orientation(d8)
        )
        with pytest.raises(NotNormalError):
            involution_service.induce_on_quotient(pair, group_service.subgroup_generated(d8, [4]))

    def test_induce_not_invariant(self, d8):
        """Test an involution moving <r^2, t> onto <r^2, rt>"""
        H = SubgroupSet(parent=d8, members=(0, 2, 4, 6))
        star = next(t for t in involution_service.enumerate_involutions(d8) if t(4) not in H)
        pair = involution_service.make_pair(star, involution_service.trivial_orientation(d8))
        with pytest.raises(NotInvariantError):
            involution_service.induce_on_quotient(pair, H)

    def test_induce_not_in_kernel(self, q8):
        """Test <i> against the orientation with kernel <j>"""
        star = involution_service.classical_involution(q8)
        sigma = involution_service.enumerate_orientations(q8)[1]
        pair = involution_service.make_pair(star, sigma)
        with pytest.raises(NotInKernelError):
            involution_service.induce_on_quotient(pair, group_service.subgroup_generated(q8, [Q8_I]))
