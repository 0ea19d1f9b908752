# tests/test_group_algebra.py
"""
F_p G with the oriented involution: arithmetic, symmetric elements, ideals, units
"""
import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from grouplab.models.algebra import AlgebraContext
from grouplab.services.algebra_service import algebra_service
from grouplab.services.group_service import group_service
from grouplab.services.involution_service import involution_service
from grouplab.services.structure_service import structure_service
from grouplab.utils.errors import (
    ContextMismatchError, IncompatiblePairError, InvalidPrimeError, NotAUnitError, NotNormalError,
)
from grouplab.utils.linalg import RowSpace, rank_mod_p, solve_mod_p

from tests.conftest import D6_FIX_R_T, Q8_FIX_J_K, make_ctx

# Contexts shared by the property tests
D8_ORIENTED = make_ctx("D8", 3, orientation="0")
Q8_TWISTED = make_ctx("Q8", 5, involution=Q8_FIX_J_K, orientation="0")
PROPERTY_CONTEXTS = [D8_ORIENTED, Q8_TWISTED]


def vectors(ctx):
    return st.lists(st.integers(0, ctx.p - 1), min_size=ctx.n, max_size=ctx.n).map(ctx.element)


@st.composite
def context_and_elements(draw, count):
    ctx = draw(st.sampled_from(PROPERTY_CONTEXTS))
    return (ctx, *[draw(vectors(ctx)) for _ in range(count)])


class TestLinearAlgebra:
    """Test the exact F_p helpers"""

    def test_rank(self):
        """Test a rank-deficient matrix over F_3"""
        A = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 1]], dtype=np.int64)
        assert rank_mod_p(A, 3) == 2
        assert rank_mod_p(A, 5) == 3

    def test_solve(self):
        """Test solving and singular detection"""
        A = np.array([[2, 1], [1, 1]], dtype=np.int64)
        x = solve_mod_p(A, np.array([1, 0]), 5)
        assert ((A @ x) % 5).tolist() == [1, 0]
        assert solve_mod_p(np.array([[1, 1], [1, 1]]), np.array([1, 0]), 5) is None

    def test_row_space(self):
        """Test incremental spans"""
        span = RowSpace(3, 5)
        assert span.add([1, 2, 3])
        assert not span.add([2, 4, 6])
        assert span.add([0, 1, 0])
        assert span.dim == 2
        assert span.contains([1, 0, 3])
        assert not span.contains([0, 0, 1])


class TestContexts:
    """Test context construction and element guards"""

    def test_even_prime(self, q8):
        """Test characteristic 2 is rejected"""
        pair = involution_service.make_pair(
            involution_service.classical_involution(q8), involution_service.trivial_orientation(q8)
        )
        with pytest.raises(InvalidPrimeError):
            algebra_service.make_context(q8, 2, pair)
        with pytest.raises(InvalidPrimeError):
            algebra_service.make_context(q8, 9, pair)

    def test_incompatible(self):
        """Test contexts require a compatible pair"""
        with pytest.raises(IncompatiblePairError):
            make_ctx("C2xC2", 3, involution="map:0,2,1,3", orientation="k:2")

    def test_context_mismatch(self):
        """Test mixing elements of two algebras"""
        a = make_ctx("C2").one
        b = make_ctx("C2").one
        with pytest.raises(ContextMismatchError):
            a + b

    def test_star_fixes_one(self):
        """Test the identity is symmetric"""
        ctx = D8_ORIENTED
        assert algebra_service.apply_star(ctx, ctx.one) == ctx.one


class TestAlgebraAxioms:
    """Property tests on random coefficient vectors"""

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(3))
    def test_associative(self, data):
        """Test (ab)c = a(bc)"""
        _, a, b, c = data
        assert (a * b) * c == a * (b * c)

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(3))
    def test_distributive(self, data):
        """Test a(b + c) = ab + ac"""
        _, a, b, c = data
        assert a * (b + c) == a * b + a * c

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(2))
    def test_star_anti_homomorphism(self, data):
        """Test (ab)* = b* a*"""
        ctx, a, b = data
        star = lambda x: algebra_service.apply_star(ctx, x)
        assert star(a * b) == star(b) * star(a)

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(1))
    def test_scalars(self, data):
        """Test 2a = a + a and pa = 0"""
        ctx, a = data
        assert algebra_service.scalar_mul(2, a) == algebra_service.add(a, a)
        assert algebra_service.scalar_mul(ctx.p, a) == ctx.zero

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(1))
    def test_star_involutive(self, data):
        """Test a** = a"""
        ctx, a = data
        assert algebra_service.apply_star(ctx, algebra_service.apply_star(ctx, a)) == a

    @hyp_settings(max_examples=40, deadline=None)
    @given(context_and_elements(1))
    def test_unit_inverse(self, data):
        """Test inverse agrees with is_unit"""
        ctx, a = data
        if algebra_service.is_unit(a):
            assert a * algebra_service.inverse(a) == ctx.one
        else:
            with pytest.raises(NotAUnitError):
                algebra_service.inverse(a)

    @pytest.mark.parametrize("ctx", PROPERTY_CONTEXTS)
    def test_check_star_axioms(self, ctx):
        """Test the axiom checker reports no failures"""
        assert algebra_service.check_star_axioms(ctx, samples=50) == 0

    @hyp_settings(max_examples=20, deadline=None)
    @given(context_and_elements(4))
    def test_batched_rows(self, data):
        """Test stacked products and stars match the element operations row by row"""
        ctx, a, b, c, d = data
        A = np.array([a.coeffs, c.coeffs], dtype=np.int64)
        B = np.array([b.coeffs, d.coeffs], dtype=np.int64)
        assert ctx.multiply_rows(A, B).tolist() == [list((a * b).coeffs), list((c * d).coeffs)]
        star = lambda x: list(algebra_service.apply_star(ctx, x).coeffs)
        assert ctx.star_rows(A).tolist() == [star(a), star(c)]

    def test_axiom_check_counts_failures(self):
        """Test an incompatible pair fails both the basis check and the random samples"""
        G = group_service.build_group("C2xC2")
        pair = involution_service.make_pair(
            involution_service.select_involution(G, "map:0,2,1,3")[0],
            involution_service.select_orientation(G, "k:2")[0],
        )
        assert not pair.compatible
        ctx = AlgebraContext(group=G, p=3, pair=pair)
        basis_failures = algebra_service.check_star_axioms(ctx, samples=0)
        assert basis_failures > 0
        assert algebra_service.check_star_axioms(ctx, samples=200) > basis_failures


class TestSymmetricElements:
    """Test symmetric subspaces, commutativity and centrality"""

    def test_q8_symmetric_is_center(self):
        """Test dim F3Q8+ = 5 = dim of the centre, as the same subspace"""
        ctx = make_ctx("Q8")
        sym = algebra_service.symmetric_basis(ctx)
        center = algebra_service.center_basis(ctx)
        assert len(sym) == 5
        assert len(center) == 5
        assert algebra_service.same_subspace(ctx, sym, center)
        assert algebra_service.symmetric_is_commutative(ctx)
        assert algebra_service.symmetric_is_central(ctx)

    def test_d8_symmetric_not_commutative(self):
        """Test inversion on D8 fixes non-commuting reflections"""
        ctx = make_ctx("D8")
        assert len(algebra_service.symmetric_basis(ctx)) == 7
        a, b = algebra_service.noncommuting_symmetric_pair(ctx)
        assert a * b != b * a

    def test_symmetric_and_skew_split(self):
        """Test the fixed and anti-fixed spaces fill the algebra"""
        for ctx in PROPERTY_CONTEXTS + [make_ctx("D6", 3, D6_FIX_R_T, "0")]:
            sym = algebra_service.symmetric_basis(ctx)
            skew = algebra_service.skew_basis(ctx)
            assert len(sym) + len(skew) == ctx.n
            assert all(algebra_service.apply_star(ctx, s) == s for s in sym)
            assert all(algebra_service.apply_star(ctx, s) == -s for s in skew)

    def test_d6_oriented(self):
        """Test r and t fixed, kernel C3: four symmetric dimensions, not commutative"""
        ctx = make_ctx("D6", 3, D6_FIX_R_T, "0")
        assert len(algebra_service.symmetric_basis(ctx)) == 4
        assert not algebra_service.symmetric_is_commutative(ctx)

    def test_q8_twisted_commutative(self):
        """Test i -> -i with kernel <i>: symmetric elements live in F<i>"""
        assert algebra_service.symmetric_is_commutative(Q8_TWISTED)

    def test_commutative_conditions_imply_central(self):
        """Test symmetric elements are central whenever the second condition holds"""
        for spec in ("Q8", "D8", "Q8xC2"):
            G = group_service.build_group(spec)
            for star in involution_service.enumerate_involutions(G):
                for sigma in involution_service.enumerate_orientations(G):
                    pair = involution_service.make_pair(star, sigma)
                    if not pair.compatible:
                        continue
                    if structure_service.check_theorem1(G, pair).thm1_cond2:
                        ctx = algebra_service.make_context(G, 3, pair)
                        assert algebra_service.symmetric_is_central(ctx), spec

    def test_idempotents(self):
        """Test symmetric idempotents: central in F3Q8, not in F3D8"""
        assert algebra_service.symmetric_idempotents_central(make_ctx("Q8")) == (True, None)
        ctx = make_ctx("D8")
        central, witness = algebra_service.symmetric_idempotents_central(ctx)
        assert not central
        assert witness * witness == witness
        assert not algebra_service.is_central(ctx, witness)


class TestIdeals:
    """Test augmentation ideals, nilpotency and regularity"""

    def test_delta_c6_c3(self):
        """Test Delta(C6, C3) over F3: dimension 4, nilpotent of index 3"""
        ctx = make_ctx("C6", 3, orientation="k:2")
        H = group_service.subgroup_generated(ctx.group, [2])
        ideal = algebra_service.delta_ideal(ctx, H)
        assert ideal.dim == 4
        assert algebra_service.nilpotency_index(ideal) == 3

    def test_delta_d6_c3(self):
        """Test Delta(D6, C3) cubes to zero over F3"""
        ctx = make_ctx("D6", 3, D6_FIX_R_T, "0")
        ideal = algebra_service.delta_ideal(ctx, group_service.subgroup_generated(ctx.group, [1]))
        assert ideal.dim == 4
        assert algebra_service.nilpotency_index(ideal) == 3

    def test_delta_not_nilpotent_off_characteristic(self):
        """Test Delta(C6, C2) over F3 is not nilpotent"""
        ctx = make_ctx("C6", 3)
        ideal = algebra_service.delta_ideal(ctx, group_service.subgroup_generated(ctx.group, [3]))
        assert ideal.dim == 3
        assert algebra_service.nilpotency_index(ideal, bound=8) is None

    def test_delta_not_normal(self):
        """Test Delta needs a normal subgroup"""
        ctx = make_ctx("D8")
        with pytest.raises(NotNormalError):
            algebra_service.delta_ideal(ctx, group_service.subgroup_generated(ctx.group, [4]))

    def test_regular_and_radical(self):
        """Test regularity and the radical description"""
        assert algebra_service.is_regular(make_ctx("Q8", 3))
        assert algebra_service.radical_description(make_ctx("Q8", 3)).startswith("J = 0")
        c6 = make_ctx("C6", 3)
        assert not algebra_service.is_regular(c6)
        assert algebra_service.radical_description(c6).startswith("eta = J = Delta")

    def test_projection_is_multiplicative(self):
        """Test F3 C6 -> F3 (C6/C3) respects products"""
        ctx = make_ctx("C6", 3, orientation="k:2")
        qctx, qr = algebra_service.quotient_context(ctx, group_service.subgroup_generated(ctx.group, [2]))
        assert qctx.n == 2
        a = ctx.element([1, 2, 0, 1, 1, 2])
        b = ctx.element([0, 1, 1, 2, 0, 1])
        assert algebra_service.project(qctx, qr, a * b) == (
            algebra_service.project(qctx, qr, a) * algebra_service.project(qctx, qr, b)
        )


class TestUnits:
    """Test units and inverses"""

    def test_c2_units(self):
        """Test the units of F3 C2 are +-1 and +-g"""
        ctx = make_ctx("C2")
        g = ctx.basis_vector(1)
        assert algebra_service.is_unit(g)
        assert algebra_service.inverse(g) == g
        assert not algebra_service.is_unit(ctx.one + g)
        with pytest.raises(NotAUnitError):
            algebra_service.inverse(ctx.one + g)
