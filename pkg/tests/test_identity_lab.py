# tests/test_identity_lab.py
"""
Words, unit enumeration and group identities on symmetric units
"""
import pytest

from grouplab.models.words import WordIdentity
from grouplab.services.algebra_service import algebra_service
from grouplab.services.group_service import group_service
from grouplab.services.identity_service import COMMUTATOR, identity_service
from grouplab.services.involution_service import involution_service
from grouplab.utils.errors import BoundExceededError, InvalidWordError, NotAUnitError

from tests.conftest import D6_FIX_R_T, make_ctx


class TestWords:
    """Test the word grammar"""

    def test_commutator(self):
        """Test (x1,x2) = x1^-1 x2^-1 x1 x2"""
        w = identity_service.parse_word(COMMUTATOR)
        assert w.arity == 2
        assert w.letters == ((1, -1), (2, -1), (1, 1), (2, 1))
        assert str(w) == "(x1,x2)"

    def test_powers_and_products(self):
        """Test juxtaposition and exponents"""
        w = identity_service.parse_word("x1^2 x2^-1 x2^-1")
        assert w.letters == ((1, 2), (2, -2))

    def test_left_normed(self):
        """Test (x1,x2,x3) = ((x1,x2),x3)"""
        w = identity_service.parse_word("(x1,x2,x3)")
        assert w.arity == 3
        assert len(w.letters) == 10

    def test_power_of_commutator(self):
        """Test exponents apply to bracketed words"""
        w = identity_service.parse_word("(x1,x2)^3")
        assert len(w.letters) == 12

    @pytest.mark.parametrize("text", ["", "x1 x1^-1", "(x1", "y1", "x0", "(x1,)", "x1)"])
    def test_invalid(self, text):
        """Test empty, unbalanced and malformed words"""
        with pytest.raises(InvalidWordError):
            identity_service.parse_word(text)

    def test_unreduced_rejected(self):
        """Test WordIdentity insists on reduced letters"""
        with pytest.raises(InvalidWordError):
            WordIdentity(arity=1, letters=((1, 1), (1, 1)))


class TestUnits:
    """Test brute-force unit enumeration"""

    def test_c2_units(self):
        """Test |U(F3 C2)| = 4"""
        units = identity_service.enumerate_units(make_ctx("C2"))
        assert len(units) == 4
        assert [u.coeffs for u in units.units] == sorted(u.coeffs for u in units.units)

    def test_c2_symmetric_units_oriented(self):
        """Test |U+(F3 C2)| = 2 with the non-trivial orientation"""
        units = identity_service.enumerate_units(make_ctx("C2", orientation="0"), symmetric_only=True)
        assert [u.coeffs for u in units.units] == [(1, 0), (2, 0)]

    def test_inverses_recorded(self):
        """Test stored inverses are inverses"""
        ctx = make_ctx("C3")
        units = identity_service.enumerate_units(ctx)
        for u in units.units:
            assert u * ctx.element(units.inverses[u.coeffs]) == ctx.one

    def test_bound(self):
        """Test oversize unit searches are refused"""
        with pytest.raises(BoundExceededError):
            identity_service.enumerate_units(make_ctx("Q8"), bound=10)


class TestIdentities:
    """Test satisfies_identity, the commutator p-power and quotient transfer"""

    def test_q8_symmetric_units_commute(self):
        """Test symmetric units of F3 Q8 satisfy (x1,x2) = 1"""
        ctx = make_ctx("Q8")
        units = identity_service.enumerate_units(ctx, symmetric_only=True)
        result = identity_service.satisfies_identity(units, identity_service.parse_word(COMMUTATOR))
        assert result.holds
        assert result.tuples_checked == len(units) ** 2
        assert result.witness is None

    def test_d8_witness_replays(self):
        """Test the D8 failure carries a replayable witness"""
        ctx = make_ctx("D8")
        word = identity_service.parse_word(COMMUTATOR)
        units = identity_service.enumerate_units(ctx, symmetric_only=True)
        result = identity_service.satisfies_identity(units, word)
        assert not result.holds
        args = [ctx.element(a) for a in result.witness.arguments]
        value = identity_service.evaluate_word(word, args)
        assert list(value.coeffs) == result.witness.value
        assert value != ctx.one

    def test_evaluate_arity(self):
        """Test argument counts are checked"""
        ctx = make_ctx("C3")
        with pytest.raises(InvalidWordError):
            identity_service.evaluate_word(identity_service.parse_word(COMMUTATOR), [ctx.one])

    def test_evaluate_rejects_non_units(self):
        """Test words are only evaluated on units, even with positive exponents"""
        ctx = make_ctx("C2")
        with pytest.raises(NotAUnitError):
            identity_service.evaluate_word(identity_service.parse_word("x1 x2"), [ctx.zero, ctx.one])
        with pytest.raises(NotAUnitError):
            identity_service.evaluate_word(identity_service.parse_word("x1"), [ctx.one + ctx.basis_vector(1)])

    @pytest.mark.parametrize("spec,p", [("Q8", 3), ("D6", 3), ("C6", 3), ("C2xC2", 5), ("D8", 3)])
    def test_commuting_symmetric_elements_give_identity(self, spec, p):
        """Test commuting symmetric elements force (x1,x2) = 1 on symmetric units, within bounds"""
        G = group_service.build_group(spec)
        word = identity_service.parse_word(COMMUTATOR)
        checked = 0
        for star in involution_service.enumerate_involutions(G):
            for sigma in involution_service.enumerate_orientations(G, include_trivial=True):
                pair = involution_service.make_pair(star, sigma)
                if not pair.compatible:
                    continue
                ctx = algebra_service.make_context(G, p, pair)
                if not algebra_service.symmetric_is_commutative(ctx):
                    continue
                try:
                    units = identity_service.enumerate_units(ctx, symmetric_only=True, bound=1000)
                    result = identity_service.satisfies_identity(units, word, bound=10_000)
                except BoundExceededError:
                    continue
                assert result.holds, (spec, star, sigma)
                checked += 1
        assert checked > 0

    def test_tuple_bound(self):
        """Test oversize tuple sweeps are refused"""
        units = identity_service.enumerate_units(make_ctx("C3"))
        with pytest.raises(BoundExceededError):
            identity_service.satisfies_identity(units, identity_service.parse_word("(x1,x2,x3)"), bound=10)

    def test_commutator_p_power(self):
        """Test exponents 0 for F3 C6 and 1 for F3 D6 with r, t fixed"""
        assert identity_service.commutator_p_power(make_ctx("C6", 3, orientation="k:2")) == 0
        assert identity_service.commutator_p_power(make_ctx("D6", 3, D6_FIX_R_T, "0")) == 1

    def test_commutator_p_power_bound(self):
        """Test the pair estimate is checked before enumeration"""
        with pytest.raises(BoundExceededError):
            identity_service.commutator_p_power(make_ctx("Q8"), bound=100)

    def test_transfer_c6(self):
        """Test (x1,x2) holds on both sides of F3 C6 -> F3 C2"""
        ctx = make_ctx("C6", 3, orientation="k:2")
        H = group_service.subgroup_generated(ctx.group, [2])
        source, target = identity_service.transfer_to_quotient(ctx, H, identity_service.parse_word(COMMUTATOR))
        assert source.holds and target.holds

    def test_transfer_d6(self):
        """Test the quotient can satisfy an identity the source does not"""
        ctx = make_ctx("D6", 3, D6_FIX_R_T, "0")
        H = group_service.subgroup_generated(ctx.group, [1])
        source, target = identity_service.transfer_to_quotient(ctx, H, identity_service.parse_word(COMMUTATOR))
        assert not source.holds
        assert target.holds
