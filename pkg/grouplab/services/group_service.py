# grouplab/services/group_service.py

import json
import random
import re
from collections import deque
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from grouplab.config import get_settings
from grouplab.models.group import FiniteGroup, QuotientResult, SubgroupSet
from grouplab.utils.errors import InvalidGroupSpecError, InvalidTableError, NotNormalError
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)

_CYCLIC = re.compile(r"^C(\d+)$")
_DIHEDRAL = re.compile(r"^D(\d+)$")
_QUATERNION = re.compile(r"^Q(8|16)$")

GroupSpec = Union[str, dict]


class GroupService:
    # Construction

    def build_group(self, spec: GroupSpec) -> FiniteGroup:
        """
        Builds a group from the text grammar (C<n>, D<2n>, Q8, Q16, products
        joined by 'x'), a JSON object {"name", "table"} or a path to a .json file.
        """
        if isinstance(spec, dict):
            return self.from_table(spec.get("table"), spec.get("name", "table"))
        text = spec.strip()
        if text.startswith("{"):
            return self.build_group(self._json_payload(text, "JSON group spec"))
        if text.endswith(".json"):
            path = Path(text)
            if not path.is_file():
                raise InvalidGroupSpecError(f"group spec file not found: {text}")
            return self.build_group(self._json_payload(path.read_text(encoding="utf-8"), text))

        factors = [f for f in re.split(r"[xX]", text)]
        if not factors or any(not f for f in factors):
            raise InvalidGroupSpecError(f"cannot parse group spec {spec!r}")
        group = self._build_factor(factors[0])
        for factor in factors[1:]:
            group = self.direct_product(group, self._build_factor(factor))
        return group

    @staticmethod
    def _json_payload(text: str, source: str) -> dict:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidGroupSpecError(f"malformed JSON in {source}: {e}") from e
        if not isinstance(payload, dict):
            raise InvalidGroupSpecError(f"{source} must hold a JSON object, got {type(payload).__name__}")
        return payload

    def _build_factor(self, text: str) -> FiniteGroup:
        if m := _CYCLIC.match(text):
            return self.cyclic(int(m.group(1)))
        if m := _DIHEDRAL.match(text):
            return self.dihedral(int(m.group(1)))
        if m := _QUATERNION.match(text):
            return self.quaternion(int(m.group(1)))
        raise InvalidGroupSpecError(f"unknown group factor {text!r}")

    def cyclic(self, n: int) -> FiniteGroup:
        if n < 1:
            raise InvalidGroupSpecError("cyclic order must be positive")
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return self._make_group(table, f"C{n}", validate=False)

    def dihedral(self, order: int) -> FiniteGroup:
        """D<2n>: index k is r^k, index n+k is r^k t."""
        if order < 4 or order % 2:
            raise InvalidGroupSpecError("dihedral order must be even and at least 4")
        n = order // 2

        def mul(a: int, b: int) -> int:
            ka, ra = a % n, a >= n
            kb, rb = b % n, b >= n
            if not ra:
                return (ka + kb) % n + (n if rb else 0)
            if not rb:
                return (ka - kb) % n + n
            return (ka - kb) % n

        table = [[mul(a, b) for b in range(order)] for a in range(order)]
        return self._make_group(table, f"D{order}", validate=False)

    def quaternion(self, order: int) -> FiniteGroup:
        """Q8/Q16 as <a, x | a^m = 1, x^2 = a^(m/2), x a x^-1 = a^-1> with m = order/2: index k is a^k, m+k is a^k x."""
        if order not in (8, 16):
            raise InvalidGroupSpecError("quaternion order must be 8 or 16")
        m = order // 2
        half = m // 2

        def mul(a: int, b: int) -> int:
            ka, xa = a % m, a >= m
            kb, xb = b % m, b >= m
            if not xa:
                return (ka + kb) % m + (m if xb else 0)
            if not xb:
                return (ka - kb) % m + m
            return (ka - kb + half) % m

        table = [[mul(a, b) for b in range(order)] for a in range(order)]
        return self._make_group(table, f"Q{order}", validate=False)

    def direct_product(self, A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
        """(a, b) is stored at index a*|B| + b, so the identity stays at 0."""
        nb = B.order
        order = A.order * nb
        table = [
            [A.mul[x // nb][y // nb] * nb + B.mul[x % nb][y % nb] for y in range(order)]
            for x in range(order)
        ]
        return self._make_group(table, f"{A.name}x{B.name}", validate=False)

    def from_table(self, rows: Optional[Sequence[Sequence[int]]], name: str = "table") -> FiniteGroup:
        if not rows:
            raise InvalidTableError("empty multiplication table")
        try:
            table = [[int(v) for v in row] for row in rows]
        except (TypeError, ValueError) as e:
            raise InvalidTableError(f"table entries must be integers: {e}") from e
        return self._make_group(table, name, validate=True)

    def _make_group(self, table: List[List[int]], name: str, validate: bool) -> FiniteGroup:
        n = len(table)
        if validate:
            self._check_latin_square(table)
        identity = self._find_identity(table)
        inv = [0] * n
        for g in range(n):
            inv[g] = table[g].index(identity)
        if validate:
            for g in range(n):
                if table[inv[g]][g] != identity:
                    raise InvalidTableError(f"element {g} has no two-sided inverse")
            self._check_associative(table)
        return FiniteGroup(
            order=n,
            identity=identity,
            mul=tuple(tuple(row) for row in table),
            inv=tuple(inv),
            name=name,
        )

    @staticmethod
    def _check_latin_square(table: List[List[int]]) -> None:
        n = len(table)
        target = list(range(n))
        for i, row in enumerate(table):
            if len(row) != n or sorted(row) != target:
                raise InvalidTableError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if sorted(table[i][j] for i in range(n)) != target:
                raise InvalidTableError(f"column {j} is not a permutation of 0..{n - 1}")

    @staticmethod
    def _find_identity(table: List[List[int]]) -> int:
        n = len(table)
        for e in range(n):
            if all(table[e][g] == g and table[g][e] == g for g in range(n)):
                return e
        raise InvalidTableError("table has no two-sided identity")

    @staticmethod
    def _check_associative(table: List[List[int]]) -> None:
        settings = get_settings()
        n = len(table)
        if n <= settings.associativity_check_bound:
            triples: Iterable[Tuple[int, int, int]] = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            rng = random.Random(settings.random_seed)
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(settings.associativity_samples)
            ]
            logger.info(f"Order {n} above bound; sampling {settings.associativity_samples} triples")
        for a, b, c in triples:
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidTableError(f"not associative at ({a}, {b}, {c})")

    # Elementary structure

    def element_order(self, G: FiniteGroup, g: int) -> int:
        k, x = 1, g
        while x != G.identity:
            x = G.mul[x][g]
            k += 1
        return k

    def element_orders(self, G: FiniteGroup) -> List[int]:
        return [self.element_order(G, g) for g in G.elements()]

    def is_abelian(self, G: FiniteGroup) -> bool:
        return G.is_abelian

    def center(self, G: FiniteGroup) -> SubgroupSet:
        members = [
            g for g in G.elements()
            if all(G.mul[g][h] == G.mul[h][g] for h in G.elements())
        ]
        return SubgroupSet(parent=G, members=tuple(members))

    def commutator(self, G: FiniteGroup, g: int, h: int) -> int:
        """(g, h) = g^-1 h^-1 g h"""
        return G.mul[G.mul[G.inv[g]][G.inv[h]]][G.mul[g][h]]

    def commutator_set(self, G: FiniteGroup) -> frozenset:
        return frozenset(
            self.commutator(G, g, h) for g in G.elements() for h in G.elements()
        )

    def subgroup_generated(self, G: FiniteGroup, gens: Iterable[int]) -> SubgroupSet:
        gens = sorted(set(gens))
        members = {G.identity}
        frontier = deque([G.identity])
        while frontier:
            x = frontier.popleft()
            for g in gens:
                y = G.mul[x][g]
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return SubgroupSet(parent=G, members=tuple(sorted(members)))

    def subgroup(self, G: FiniteGroup, members: Iterable[int]) -> SubgroupSet:
        """Wraps a member set after checking it is a subgroup."""
        members = set(members)
        if G.identity not in members or any(
            G.mul[a][b] not in members for a in members for b in members
        ):
            raise InvalidTableError(f"{sorted(members)} is not a subgroup of {G.name}")
        return SubgroupSet(parent=G, members=tuple(sorted(members)))

    def is_normal(self, G: FiniteGroup, H: SubgroupSet) -> bool:
        return all(
            G.mul[G.mul[g][h]][G.inv[g]] in H for g in G.elements() for h in H
        )

    def conjugacy_classes(self, G: FiniteGroup) -> List[Tuple[int, ...]]:
        seen = set()
        classes = []
        for x in G.elements():
            if x in seen:
                continue
            cls = {G.mul[G.mul[g][x]][G.inv[g]] for g in G.elements()}
            seen |= cls
            classes.append(tuple(sorted(cls)))
        return classes

    def quotient(self, G: FiniteGroup, H: SubgroupSet, name: Optional[str] = None) -> QuotientResult:
        if not self.is_normal(G, H):
            raise NotNormalError(f"subgroup {list(H.members)} is not normal in {G.name}")
        key = [min(G.mul[g][h] for h in H) for g in G.elements()]
        reps = sorted(set(key))
        index_of = {r: i for i, r in enumerate(reps)}
        projection = tuple(index_of[k] for k in key)
        table = [
            [projection[G.mul[a][b]] for b in reps]
            for a in reps
        ]
        label = name or (G.name if len(H) == 1 else f"{G.name}/{len(H)}")
        quotient = self._make_group(table, label, validate=False)
        return QuotientResult(
            quotient=quotient,
            projection=projection,
            subgroup=H,
            representatives=tuple(reps),
        )

    def subgroup_as_group(self, G: FiniteGroup, H: SubgroupSet) -> Tuple[FiniteGroup, Tuple[int, ...]]:
        """Restricts the table of G to H; returns the group and its embedding into G."""
        members = list(H.members)
        local = {g: i for i, g in enumerate(members)}
        table = [[local[G.mul[a][b]] for b in members] for a in members]
        group = self._make_group(table, f"{G.name}|{len(members)}", validate=False)
        return group, tuple(members)

    def p_elements(self, G: FiniteGroup, p: int) -> Tuple[Tuple[int, ...], bool]:
        """The elements of p-power order, and whether they are closed under multiplication."""
        orders = self.element_orders(G)
        members = [g for g in G.elements() if _is_power_of(orders[g], p)]
        member_set = set(members)
        closed = all(G.mul[a][b] in member_set for a in members for b in members)
        return tuple(members), closed

    def generating_set(self, G: FiniteGroup) -> List[int]:
        """Greedy generating set: each element not yet generated is added, in index order."""
        gens: List[int] = []
        generated = {G.identity}
        for g in G.elements():
            if g not in generated:
                gens.append(g)
                generated = set(self.subgroup_generated(G, gens).members)
            if len(generated) == G.order:
                break
        return gens

    def spanning_tree(self, G: FiniteGroup, gens: Sequence[int]) -> List[Tuple[int, int, int]]:
        """
        BFS over the Cayley graph: (element, parent, generator position) with
        element = parent * gens[position]; the identity comes first with parent -1.
        """
        tree = [(G.identity, -1, -1)]
        seen = {G.identity}
        frontier = deque([G.identity])
        while frontier:
            x = frontier.popleft()
            for i, g in enumerate(gens):
                y = G.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, i))
                    frontier.append(y)
        return tree

    def is_klein_four(self, G: FiniteGroup) -> bool:
        return G.order == 4 and all(
            self.element_order(G, g) == 2 for g in G.elements() if g != G.identity
        )

    def is_hamiltonian_2_group(self, G: FiniteGroup) -> bool:
        """Non-abelian 2-group with every subgroup normal (checked on cyclic subgroups)."""
        if G.is_abelian or not _is_power_of(G.order, 2):
            return False
        for g in G.elements():
            if not self.is_normal(G, self.subgroup_generated(G, [g])):
                return False
        z = self.center(G)
        if any(G.mul[c][c] != G.identity for c in z):
            return False
        return self._contains_quaternion(G)

    def _contains_quaternion(self, G: FiniteGroup) -> bool:
        orders = self.element_orders(G)
        fours = [g for g in G.elements() if orders[g] == 4]
        for a in fours:
            for b in fours:
                if (
                    G.mul[a][a] == G.mul[b][b]
                    and G.mul[G.mul[b][a]][G.inv[b]] == G.inv[a]
                ):
                    return True
        return False


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


group_service = GroupService()
