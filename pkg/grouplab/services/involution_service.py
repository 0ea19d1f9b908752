# grouplab/services/involution_service.py

import itertools
from typing import List, Optional, Sequence, Tuple

from grouplab.config import get_settings
from grouplab.models.group import (
    AntiAutomorphism, FiniteGroup, Orientation, OrientedPair, QuotientResult, SubgroupSet,
)
from grouplab.services.group_service import group_service
from grouplab.utils.errors import (
    BoundExceededError, InvalidSelectorError, NotInKernelError, NotInvariantError,
    ParentMismatchError,
)
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)


class InvolutionService:
    def classical_involution(self, G: FiniteGroup) -> AntiAutomorphism:
        return AntiAutomorphism(parent=G, image=G.inv)

    def identity_map(self, G: FiniteGroup) -> AntiAutomorphism:
        """g -> g, an involution exactly when G is abelian."""
        if not G.is_abelian:
            raise InvalidSelectorError(f"the identity map is not an anti-automorphism of {G.name}")
        return AntiAutomorphism(parent=G, image=tuple(G.elements()))

    def is_anti_automorphism(self, G: FiniteGroup, image: Sequence[int]) -> bool:
        """Bijective anti-homomorphism of order at most 2."""
        n = G.order
        if len(image) != n or sorted(image) != list(range(n)):
            return False
        if any(image[image[g]] != g for g in range(n)):
            return False
        return all(
            image[G.mul[g][h]] == G.mul[image[h]][image[g]]
            for g in range(n)
            for h in range(n)
        )

    def anti_automorphism(self, G: FiniteGroup, image: Sequence[int]) -> AntiAutomorphism:
        image = tuple(int(x) for x in image)
        if not self.is_anti_automorphism(G, image):
            raise InvalidSelectorError(f"{list(image)} is not an involution of {G.name}")
        return AntiAutomorphism(parent=G, image=image)

    def automorphisms(self, G: FiniteGroup) -> List[Tuple[int, ...]]:
        """
        All automorphisms as element permutations, found by extending every
        order-preserving choice of generator images along a spanning tree.
        """
        gens = group_service.generating_set(G)
        tree = group_service.spanning_tree(G, gens)
        orders = group_service.element_orders(G)
        candidates = [[x for x in G.elements() if orders[x] == orders[g]] for g in gens]

        found = []
        for images in itertools.product(*candidates):
            phi = self._extend(G, G, tree, images)
            if phi is not None and self._is_homomorphism(G, G, phi):
                found.append(phi)
        found.sort()
        logger.debug(f"{G.name}: {len(found)} automorphisms")
        return found

    @staticmethod
    def _extend(G: FiniteGroup, target: FiniteGroup, tree, images) -> Optional[Tuple[int, ...]]:
        phi = [-1] * G.order
        used = set()
        for element, parent, pos in tree:
            value = target.identity if parent < 0 else target.mul[phi[parent]][images[pos]]
            if value in used:
                return None
            used.add(value)
            phi[element] = value
        return tuple(phi)

    @staticmethod
    def _is_homomorphism(G: FiniteGroup, target: FiniteGroup, phi: Sequence[int]) -> bool:
        for a in G.elements():
            row = G.mul[a]
            pa = target.mul[phi[a]]
            for b in G.elements():
                if phi[row[b]] != pa[phi[b]]:
                    return False
        return True

    def enumerate_involutions(self, G: FiniteGroup, bound: Optional[int] = None) -> List[AntiAutomorphism]:
        """Every tau = phi o inversion (phi an automorphism) with tau^2 = id, sorted by image."""
        bound = bound or get_settings().involution_order_bound
        if G.order > bound:
            raise BoundExceededError(f"involution enumeration on {G.name}", G.order, bound)
        result = []
        for phi in self.automorphisms(G):
            tau = tuple(phi[G.inv[g]] for g in G.elements())
            if all(tau[tau[g]] == g for g in G.elements()):
                result.append(tau)
        result.sort()
        return [AntiAutomorphism(parent=G, image=tau) for tau in result]

    def enumerate_orientations(self, G: FiniteGroup, include_trivial: bool = False) -> List[Orientation]:
        """One orientation per subgroup of index <= 2; the trivial one first when included."""
        gens = group_service.generating_set(G)
        tree = group_service.spanning_tree(G, gens)
        found = []
        for signs in itertools.product((1, -1), repeat=len(gens)):
            sign = [0] * G.order
            for element, parent, pos in tree:
                sign[element] = 1 if parent < 0 else sign[parent] * signs[pos]
            if not all(
                sign[G.mul[a][b]] == sign[a] * sign[b] for a in G.elements() for b in G.elements()
            ):
                continue
            if all(s == 1 for s in sign) and not include_trivial:
                continue
            found.append(self._orientation(G, tuple(sign)))
        found.sort(key=lambda o: (not o.is_trivial, o.kernel.members))
        return found

    def _orientation(self, G: FiniteGroup, sign: Tuple[int, ...]) -> Orientation:
        kernel = SubgroupSet(parent=G, members=tuple(g for g in G.elements() if sign[g] == 1))
        return Orientation(parent=G, sign=sign, kernel=kernel)

    def trivial_orientation(self, G: FiniteGroup) -> Orientation:
        return self._orientation(G, tuple(1 for _ in G.elements()))

    def orientation_from_kernel(self, G: FiniteGroup, N: SubgroupSet) -> Orientation:
        if G.order % len(N) or N.index > 2:
            raise InvalidSelectorError(f"{list(N.members)} does not have index <= 2 in {G.name}")
        return self._orientation(G, tuple(1 if g in N else -1 for g in G.elements()))

    def make_pair(self, star: AntiAutomorphism, sigma: Orientation) -> OrientedPair:
        if star.parent != sigma.parent:
            raise ParentMismatchError(
                f"involution on {star.parent.name} paired with orientation on {sigma.parent.name}"
            )
        G = star.parent
        compatible = all(sigma(G.mul[g][star(g)]) == 1 for g in G.elements())
        return OrientedPair(star=star, sigma=sigma, compatible=compatible)

    def induce_on_quotient(self, pair: OrientedPair, H: SubgroupSet) -> OrientedPair:
        return self.induce_with_projection(pair, H)[0]

    def induce_with_projection(self, pair: OrientedPair, H: SubgroupSet) -> Tuple[OrientedPair, QuotientResult]:
        G = pair.group
        qr = group_service.quotient(G, H)
        if any(pair.star(h) not in H for h in H):
            raise NotInvariantError(f"{list(H.members)} is not invariant under the involution")
        if any(pair.sigma(h) != 1 for h in H):
            raise NotInKernelError(f"{list(H.members)} is not contained in the orientation kernel")

        Q = qr.quotient
        image = tuple(qr.projection[pair.star(r)] for r in qr.representatives)
        sign = tuple(pair.sigma(r) for r in qr.representatives)
        star_bar = AntiAutomorphism(parent=Q, image=image)
        sigma_bar = self._orientation(Q, sign)
        return self.make_pair(star_bar, sigma_bar), qr

    # Selectors

    def select_involution(self, G: FiniteGroup, selector: str) -> Tuple[AntiAutomorphism, Optional[int]]:
        """
        "classical", "identity", an index into enumerate_involutions(G) or
        "map:i0,i1,..." (explicit images). Returns the map and its index when known.
        """
        text = selector.strip()
        if text == "classical":
            star = self.classical_involution(G)
        elif text == "identity":
            star = self.identity_map(G)
        elif text.startswith("map:"):
            star = self.anti_automorphism(G, _parse_ints(text[4:], selector))
        elif text.isdigit():
            involutions = self.enumerate_involutions(G)
            k = int(text)
            if k >= len(involutions):
                raise InvalidSelectorError(f"{G.name} has {len(involutions)} involutions, no index {k}")
            return involutions[k], k
        else:
            raise InvalidSelectorError(f"unknown involution selector {selector!r}")
        if G.order > get_settings().involution_order_bound:
            return star, None
        images = [tau.image for tau in self.enumerate_involutions(G)]
        return star, images.index(star.image)

    def select_orientation(self, G: FiniteGroup, selector: str) -> Tuple[Orientation, Optional[int]]:
        """
        "trivial", an index into enumerate_orientations(G) (non-trivial ones) or
        "k:g1,g2,..." for the index-2 kernel generated by g1, g2, ...
        """
        text = selector.strip()
        if text == "trivial":
            return self.trivial_orientation(G), None
        orientations = self.enumerate_orientations(G)
        if text.isdigit():
            k = int(text)
            if k >= len(orientations):
                raise InvalidSelectorError(f"{G.name} has {len(orientations)} non-trivial orientations, no index {k}")
            return orientations[k], k
        if text.startswith("k:"):
            gens = _parse_ints(text[2:], selector)
            if any(g < 0 or g >= G.order for g in gens):
                raise InvalidSelectorError(f"kernel generators {gens} are not elements of {G.name}")
            sigma = self.orientation_from_kernel(G, group_service.subgroup_generated(G, gens))
            kernels = [o.kernel.members for o in orientations]
            index = kernels.index(sigma.kernel.members) if sigma.kernel.members in kernels else None
            return sigma, index
        raise InvalidSelectorError(f"unknown orientation selector {selector!r}")


def _parse_ints(text: str, selector: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise InvalidSelectorError(f"malformed selector {selector!r}") from e


involution_service = InvolutionService()
