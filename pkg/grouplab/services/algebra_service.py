# grouplab/services/algebra_service.py

import itertools
from typing import List, Optional, Tuple

import numpy as np

from grouplab.config import get_settings
from grouplab.models.algebra import AlgebraContext, AlgebraElement, IdealBasis
from grouplab.models.group import FiniteGroup, OrientedPair, QuotientResult, SubgroupSet
from grouplab.services.group_service import group_service, is_prime
from grouplab.services.involution_service import involution_service
from grouplab.utils.errors import (
    BoundExceededError, IncompatiblePairError, InvalidPrimeError, NotAUnitError,
    NotNormalError, ParentMismatchError,
)
from grouplab.utils.linalg import RowSpace, rank_mod_p, solve_mod_p
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)


class AlgebraService:
    # Contexts

    def make_context(self, G: FiniteGroup, p: int, pair: OrientedPair) -> AlgebraContext:
        if p < 3 or not is_prime(p):
            raise InvalidPrimeError(f"{p} is not an odd prime")
        if pair.group != G:
            raise ParentMismatchError(f"pair lives on {pair.group.name}, not {G.name}")
        if not pair.compatible:
            raise IncompatiblePairError("the oriented map is an involution only when g * star(g) lies in the kernel")
        return AlgebraContext(group=G, p=p, pair=pair)

    def quotient_context(self, ctx: AlgebraContext, H: SubgroupSet) -> Tuple[AlgebraContext, QuotientResult]:
        qpair, qr = involution_service.induce_with_projection(ctx.pair, H)
        return self.make_context(qr.quotient, ctx.p, qpair), qr

    def project(self, qctx: AlgebraContext, qr: QuotientResult, alpha: AlgebraElement) -> AlgebraElement:
        """The epimorphism F_p G -> F_p (G/H) on coefficients."""
        out = np.zeros(qctx.n, dtype=np.int64)
        np.add.at(out, np.array(qr.projection, dtype=np.int64), alpha.vector)
        return qctx.element(out)

    # Arithmetic

    def add(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return a + b

    def scalar_mul(self, c: int, a: AlgebraElement) -> AlgebraElement:
        return a * int(c)

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return a * b

    def apply_star(self, ctx: AlgebraContext, alpha: AlgebraElement) -> AlgebraElement:
        """sum a_g g  ->  sum a_g sigma(g) star(g)"""
        out = np.zeros(ctx.n, dtype=np.int64)
        out[ctx.star_perm] = ctx.sign * alpha.vector
        return ctx.element(out)

    def star_matrix(self, ctx: AlgebraContext) -> np.ndarray:
        S = np.zeros((ctx.n, ctx.n), dtype=np.int64)
        S[ctx.star_perm, np.arange(ctx.n)] = ctx.sign
        return S % ctx.p

    # Symmetric / skew / central subspaces

    def symmetric_basis(self, ctx: AlgebraContext) -> List[AlgebraElement]:
        basis = self._orbit_basis(ctx, fixed_sign=1)
        expected = ctx.n - rank_mod_p(self.star_matrix(ctx) - np.eye(ctx.n, dtype=np.int64), ctx.p)
        if len(basis) != expected:
            raise RuntimeError(
                f"symmetric basis of {ctx!r} has {len(basis)} elements, fixed space has dimension {expected}"
            )
        return basis

    def skew_basis(self, ctx: AlgebraContext) -> List[AlgebraElement]:
        return self._orbit_basis(ctx, fixed_sign=-1)

    def _orbit_basis(self, ctx: AlgebraContext, fixed_sign: int) -> List[AlgebraElement]:
        # one vector per star-orbit, ordered by the orbit's least element
        star, sigma = ctx.pair.star, ctx.pair.sigma
        seen = set()
        basis = []
        for g in ctx.group.elements():
            if g in seen:
                continue
            t = star(g)
            seen.update((g, t))
            if t == g:
                if sigma(g) == fixed_sign:
                    basis.append(ctx.basis_vector(g))
            else:
                coeffs = [0] * ctx.n
                coeffs[g] = 1
                coeffs[t] = (fixed_sign * sigma(g)) % ctx.p
                basis.append(AlgebraElement(ctx, tuple(coeffs)))
        return basis

    def noncommuting_symmetric_pair(self, ctx: AlgebraContext) -> Optional[Tuple[AlgebraElement, AlgebraElement]]:
        basis = self.symmetric_basis(ctx)
        for i, a in enumerate(basis):
            for b in basis[i + 1:]:
                if a * b != b * a:
                    return a, b
        return None

    def symmetric_is_commutative(self, ctx: AlgebraContext) -> bool:
        return self.noncommuting_symmetric_pair(ctx) is None

    def center_basis(self, ctx: AlgebraContext) -> List[AlgebraElement]:
        """Class sums, one per conjugacy class."""
        basis = []
        for cls in group_service.conjugacy_classes(ctx.group):
            coeffs = [0] * ctx.n
            for g in cls:
                coeffs[g] = 1
            basis.append(AlgebraElement(ctx, tuple(coeffs)))
        return basis

    def _noncentral_witness(self, ctx: AlgebraContext, elements: List[AlgebraElement]) -> Optional[Tuple[AlgebraElement, int]]:
        for b in elements:
            for g in ctx.group.elements():
                x = ctx.basis_vector(g)
                if x * b != b * x:
                    return b, g
        return None

    def symmetric_is_central(self, ctx: AlgebraContext) -> bool:
        return self._noncentral_witness(ctx, self.symmetric_basis(ctx)) is None

    def is_central(self, ctx: AlgebraContext, alpha: AlgebraElement) -> bool:
        return self._noncentral_witness(ctx, [alpha]) is None

    def same_subspace(self, ctx: AlgebraContext, first: List[AlgebraElement], second: List[AlgebraElement]) -> bool:
        rows = [e.coeffs for e in first]
        both = rows + [e.coeffs for e in second]
        r1 = rank_mod_p(np.array(rows, dtype=np.int64).reshape(-1, ctx.n), ctx.p)
        r2 = rank_mod_p(np.array([e.coeffs for e in second], dtype=np.int64).reshape(-1, ctx.n), ctx.p)
        r12 = rank_mod_p(np.array(both, dtype=np.int64).reshape(-1, ctx.n), ctx.p)
        return r1 == r2 == r12

    # Augmentation ideals

    def delta_ideal(self, ctx: AlgebraContext, H: SubgroupSet) -> IdealBasis:
        """Kernel of F_p G -> F_p (G/H), spanned by g(h - 1) over coset representatives g."""
        G = ctx.group
        if not group_service.is_normal(G, H):
            raise NotNormalError(f"subgroup {list(H.members)} is not normal in {G.name}")
        reps = sorted({min(G.mul[g][h] for h in H) for g in G.elements()})
        basis = []
        for g in reps:
            for h in H:
                if h == G.identity:
                    continue
                coeffs = [0] * ctx.n
                coeffs[G.mul[g][h]] = 1
                coeffs[g] = ctx.p - 1
                basis.append(AlgebraElement(ctx, tuple(coeffs)))

        span = RowSpace(ctx.n, ctx.p)
        for b in basis:
            span.add(b.coeffs)
        if span.dim != ctx.n - ctx.n // len(H):
            raise RuntimeError(f"augmentation ideal of {G.name} has dimension {span.dim}")
        for b in basis:
            for g in G.elements():
                x = ctx.basis_vector(g)
                if not (span.contains((x * b).coeffs) and span.contains((b * x).coeffs)):
                    raise RuntimeError(f"span of Delta({G.name}, H) is not a two-sided ideal")
        return IdealBasis(context=ctx, basis=tuple(basis))

    def nilpotency_index(self, ideal: IdealBasis, bound: Optional[int] = None) -> Optional[int]:
        """Least k <= bound with I^k = 0, or None."""
        bound = bound or get_settings().nilpotency_bound
        ctx = ideal.context
        current = [b.vector for b in ideal.basis]
        generators = current
        for k in range(1, bound + 1):
            if not current:
                return k
            span = RowSpace(ctx.n, ctx.p)
            for x in current:
                for y in generators:
                    span.add(ctx.multiply(x, y))
            current = span.basis()
        return None

    def is_regular(self, ctx: AlgebraContext) -> bool:
        """Von Neumann regular: for finite G exactly when p does not divide |G|."""
        return ctx.n % ctx.p != 0

    def radical_description(self, ctx: AlgebraContext) -> str:
        if self.is_regular(ctx):
            return "J = 0 (p does not divide |G|; the algebra is semisimple)"
        members, closed = group_service.p_elements(ctx.group, ctx.p)
        P = SubgroupSet(parent=ctx.group, members=members)
        if closed and group_service.is_normal(ctx.group, P):
            return "eta = J = Delta(G, P) (P is a normal p-subgroup of p'-index)"
        return "not determined (the p-elements do not form a normal subgroup)"

    # Units

    def is_unit(self, alpha: AlgebraElement) -> bool:
        ctx = alpha.context
        return rank_mod_p(ctx.left_regular(alpha.vector), ctx.p) == ctx.n

    def inverse(self, alpha: AlgebraElement) -> AlgebraElement:
        ctx = alpha.context
        x = solve_mod_p(ctx.left_regular(alpha.vector), ctx.one.vector, ctx.p)
        if x is None:
            raise NotAUnitError(f"{alpha!r} is not invertible in {ctx!r}")
        return ctx.element(x)

    # Symmetric idempotents

    def symmetric_idempotents_central(
        self, ctx: AlgebraContext, bound: Optional[int] = None
    ) -> Tuple[bool, Optional[AlgebraElement]]:
        """Every symmetric idempotent is central? Returns the first non-central one otherwise."""
        bound = bound or get_settings().idempotent_bound
        basis = self.symmetric_basis(ctx)
        size = ctx.p ** len(basis)
        if size > bound:
            raise BoundExceededError(f"symmetric subspace of {ctx!r}", size, bound)
        B = np.array([b.coeffs for b in basis], dtype=np.int64).reshape(len(basis), ctx.n)
        for combo in itertools.product(range(ctx.p), repeat=len(basis)):
            vec = (np.array(combo, dtype=np.int64) @ B) % ctx.p
            if not np.array_equal(ctx.multiply(vec, vec), vec):
                continue
            alpha = ctx.element(vec)
            if not self.is_central(ctx, alpha):
                logger.info(f"{ctx!r}: non-central symmetric idempotent {alpha!r}")
                return False, alpha
        return True, None

    # Axioms

    def check_star_axioms(self, ctx: AlgebraContext, samples: Optional[int] = None, seed: Optional[int] = None) -> int:
        """Counts failures of star(star(a)) = a and star(ab) = star(b) star(a)."""
        settings = get_settings()
        samples = settings.axiom_samples if samples is None else samples
        rng = np.random.default_rng(settings.random_seed if seed is None else seed)
        failures = 0

        # on basis elements both identities reduce to permutations with signs
        star, sign, T = ctx.star_perm, ctx.sign, ctx.group.table
        failures += int(np.count_nonzero((star[star] != np.arange(ctx.n)) | (sign[star] * sign != 1)))
        lhs_idx, lhs_sign = star[T], sign[T]
        rhs_idx = T[np.ix_(star, star)].T
        rhs_sign = np.outer(sign, sign)
        failures += int(np.count_nonzero((lhs_idx != rhs_idx) | (lhs_sign != rhs_sign)))

        if samples:
            A = rng.integers(0, ctx.p, (samples, ctx.n))
            B = rng.integers(0, ctx.p, (samples, ctx.n))
            failures += int(np.count_nonzero((ctx.star_rows(ctx.star_rows(A)) != A).any(axis=1)))
            lhs = ctx.star_rows(ctx.multiply_rows(A, B))
            rhs = ctx.multiply_rows(ctx.star_rows(B), ctx.star_rows(A))
            failures += int(np.count_nonzero((lhs != rhs).any(axis=1)))
        return failures


algebra_service = AlgebraService()
