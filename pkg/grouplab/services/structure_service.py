# grouplab/services/structure_service.py

from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

from grouplab.models.group import AntiAutomorphism, FiniteGroup, OrientedPair, SubgroupSet
from grouplab.models.schemas import ClassificationReport
from grouplab.services.group_service import group_service
from grouplab.services.involution_service import involution_service
from grouplab.utils.errors import (
    AbelianGroupError, IncompatiblePairError, InvalidPrimeError, NotNormalError,
    PNotSubgroupError, TrivialOrientationError,
)
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)

CHAR4_NOTE = (
    "char-4 branch of the commutativity criterion is structurally excluded: "
    "coefficients lie in a field of odd characteristic"
)
FIELD_NOTE = (
    "the equivalence with a group identity on symmetric units assumes an infinite field; "
    "over a finite field only the commutativity criterion is exact"
)
PI_NOTE = "the group algebra is PI in this case (reported, not verified)"
FINITE_GI_NOTE = (
    "over a finite field the symmetric units form a finite set and satisfy x^e = 1 "
    "for e the exponent of the unit group"
)


@lru_cache(maxsize=256)
def _group_facts(G: FiniteGroup) -> Tuple[FrozenSet[int], bool, Optional[int]]:
    """(centre, LC-property, unique non-trivial commutator) of G, computed once per group."""
    z = frozenset(group_service.center(G).members)
    lc = not G.is_abelian and _commuting_pairs_touch_center(G, z)
    nontrivial = group_service.commutator_set(G) - {G.identity}
    s = next(iter(nontrivial)) if len(nontrivial) == 1 else None
    return z, lc, s


def _commuting_pairs_touch_center(G: FiniteGroup, z: FrozenSet[int]) -> bool:
    for g in G.elements():
        if g in z:
            continue
        for h in G.elements():
            if h in z:
                continue
            gh = G.mul[g][h]
            if gh == G.mul[h][g] and gh not in z:
                return False
    return True


class StructureService:
    def has_lc_property(self, G: FiniteGroup) -> bool:
        """Non-abelian, and commuting pairs always involve a central element among g, h, gh."""
        return _group_facts(G)[1]

    def lc_via_center_quotient(self, G: FiniteGroup) -> bool:
        if G.is_abelian:
            return False
        qr = group_service.quotient(G, group_service.center(G))
        return group_service.is_klein_four(qr.quotient)

    def unique_commutator(self, G: FiniteGroup) -> Optional[int]:
        return _group_facts(G)[2]

    def is_slc_canonical(self, G: FiniteGroup, star: AntiAutomorphism) -> bool:
        """star fixes the centre and sends every other g to s*g."""
        if not self.has_lc_property(G):
            return False
        s = self.unique_commutator(G)
        if s is None:
            return False
        z = _group_facts(G)[0]
        return all(
            star(g) == (g if g in z else G.mul[s][g]) for g in G.elements()
        )

    def _kernel_lc(self, G: FiniteGroup, N: SubgroupSet) -> bool:
        N_group, _ = group_service.subgroup_as_group(G, N)
        return self.has_lc_property(N_group)

    def _kernel_center_matches(self, G: FiniteGroup, N: SubgroupSet) -> bool:
        """zeta(N) == N intersected with zeta(G)"""
        z = _group_facts(G)[0]
        zeta_n = {
            x for x in N
            if all(G.mul[x][y] == G.mul[y][x] for y in N)
        }
        return zeta_n == {x for x in N if x in z}

    def _conditions(self, G: FiniteGroup, pair: OrientedPair) -> ClassificationReport:
        star, sigma = pair.star, pair.sigma
        N = sigma.kernel
        z = _group_facts(G)[0]

        N_abelian = all(G.mul[a][b] == G.mul[b][a] for a in N for b in N)
        cond1 = N_abelian and all(star(g) == g for g in G.elements() if g not in N)

        lc_G = self.has_lc_property(G)
        lc_N = self._kernel_lc(G, N)
        s = self.unique_commutator(G)
        cond2 = False
        if lc_G and lc_N and s is not None:
            cond2 = True
            for g in G.elements():
                fixed = (g in N and g in z) or (g not in N and g not in z)
                expected = g if fixed else G.mul[s][g]
                if star(g) != expected:
                    cond2 = False
                    break

        notes: List[str] = [CHAR4_NOTE, FIELD_NOTE]
        return ClassificationReport(
            group=G.name,
            order=G.order,
            is_abelian=G.is_abelian,
            lc_G=lc_G,
            lc_N=lc_N,
            unique_commutator=s,
            slc_canonical=self.is_slc_canonical(G, star),
            thm1_cond1=cond1,
            thm1_cond2=cond2,
            lemma8_verdict=cond1 or cond2,
            kernel_center_matches=self._kernel_center_matches(G, N),
            notes=notes,
        )

    def check_theorem1(self, G: FiniteGroup, pair: OrientedPair) -> ClassificationReport:
        if not pair.compatible:
            raise IncompatiblePairError("g * star(g) must lie in the orientation kernel for every g")
        if pair.sigma.is_trivial:
            raise TrivialOrientationError("the classification needs a non-trivial orientation")
        if G.is_abelian:
            raise AbelianGroupError(f"{G.name} is abelian; the classification addresses non-abelian groups")
        return self._conditions(G, pair)

    def check_theorem2(self, G: FiniteGroup, pair: OrientedPair, p: int) -> ClassificationReport:
        """Classifies G/P with the induced pair, P being the set of p-elements."""
        members, closed = group_service.p_elements(G, p)
        if not closed:
            raise PNotSubgroupError(p, members)
        if p < 3:
            raise InvalidPrimeError("the characteristic must be an odd prime")
        if not pair.compatible:
            raise IncompatiblePairError("g * star(g) must lie in the orientation kernel for every g")
        if pair.sigma.is_trivial:
            raise TrivialOrientationError("the classification needs a non-trivial orientation")

        P = SubgroupSet(parent=G, members=members)
        if not group_service.is_normal(G, P):
            raise NotNormalError(f"the {p}-elements of {G.name} do not form a normal subgroup")

        if len(P) == 1:
            Q, qpair = G, pair
        else:
            qpair = involution_service.induce_on_quotient(pair, P)
            Q = qpair.group

        if Q.is_abelian:
            report = ClassificationReport(
                group=Q.name,
                order=Q.order,
                is_abelian=True,
                quotient_case=1,
                notes=[CHAR4_NOTE, FIELD_NOTE, PI_NOTE],
            )
        else:
            report = self._conditions(Q, qpair)
            if report.thm1_cond1:
                report.quotient_case = 2
            elif report.thm1_cond2:
                report.quotient_case = 3
            if report.quotient_case is not None:
                report.notes.append(PI_NOTE)
        logger.debug(f"{G.name} mod {p}-elements: case {report.quotient_case}")
        return report

    def modular_conditions(self, G: FiniteGroup, pair: OrientedPair, p: int) -> bool:
        """P is a normal subgroup and G/P is abelian or meets the oriented commutativity conditions."""
        try:
            report = self.check_theorem2(G, pair, p)
        except (PNotSubgroupError, NotNormalError):
            return False
        return report.quotient_case is not None


structure_service = StructureService()
