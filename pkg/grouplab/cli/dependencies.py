# grouplab/cli/dependencies.py

from argparse import ArgumentTypeError, Namespace
from typing import List, Optional, Tuple

from grouplab.config import get_settings
from grouplab.models.algebra import AlgebraContext
from grouplab.models.group import FiniteGroup, OrientedPair, SubgroupSet
from grouplab.services.algebra_service import algebra_service
from grouplab.services.group_service import group_service
from grouplab.services.involution_service import involution_service
from grouplab.utils.errors import InvalidSelectorError


def parse_primes(text: str) -> List[int]:
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}")
    if not primes:
        raise ArgumentTypeError("at least one prime is required")
    return primes


def get_primes(args: Namespace) -> List[int]:
    return args.primes or list(get_settings().default_primes)


def get_prime(args: Namespace) -> int:
    """--prime when given, else the first of --primes."""
    prime = getattr(args, "prime", None)
    return prime if prime is not None else get_primes(args)[0]


def get_group(args: Namespace) -> FiniteGroup:
    return group_service.build_group(args.group)


def get_pair(args: Namespace, G: FiniteGroup) -> Tuple[OrientedPair, Optional[int], Optional[int]]:
    star, i = involution_service.select_involution(G, args.involution)
    sigma, j = involution_service.select_orientation(G, args.orientation)
    return involution_service.make_pair(star, sigma), i, j


def get_context(args: Namespace) -> AlgebraContext:
    G = get_group(args)
    pair, _, _ = get_pair(args, G)
    return algebra_service.make_context(G, get_prime(args), pair)


def get_subgroup(args: Namespace, ctx: AlgebraContext) -> SubgroupSet:
    """'P' (the p-elements), 'G', 'Z' (the centre) or comma-separated generators."""
    G = ctx.group
    text = args.subgroup.strip()
    if text == "P":
        members, _ = group_service.p_elements(G, ctx.p)
        return group_service.subgroup(G, members)
    if text == "G":
        return group_service.subgroup(G, G.elements())
    if text == "Z":
        return group_service.center(G)
    try:
        gens = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise InvalidSelectorError(f"malformed subgroup selector {args.subgroup!r}") from e
    if any(g < 0 or g >= G.order for g in gens):
        raise InvalidSelectorError(f"subgroup generators {gens} are not elements of {G.name}")
    return group_service.subgroup_generated(G, gens)
