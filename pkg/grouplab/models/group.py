# grouplab/models/group.py

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Tuple

import numpy as np


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group on the elements 0..order-1 given by its multiplication table.

    Instances are built (and validated) by GroupService; treat them as immutable.
    """

    order: int
    identity: int
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    name: str

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def table(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64)

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class SubgroupSet:
    parent: FiniteGroup
    members: Tuple[int, ...]

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.members)

    def __repr__(self) -> str:
        return f"SubgroupSet({self.parent.name!r}, {list(self.members)})"


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteGroup
    projection: Tuple[int, ...]
    subgroup: SubgroupSet
    # least element of each coset, indexed by quotient element
    representatives: Tuple[int, ...]


@dataclass(frozen=True)
class AntiAutomorphism:
    parent: FiniteGroup
    image: Tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image[g]

    @property
    def is_classical(self) -> bool:
        return self.image == self.parent.inv

    def __repr__(self) -> str:
        return f"AntiAutomorphism({self.parent.name!r}, {list(self.image)})"


@dataclass(frozen=True)
class Orientation:
    parent: FiniteGroup
    sign: Tuple[int, ...]
    kernel: SubgroupSet

    def __call__(self, g: int) -> int:
        return self.sign[g]

    @property
    def is_trivial(self) -> bool:
        return len(self.kernel) == self.parent.order

    def __repr__(self) -> str:
        return f"Orientation({self.parent.name!r}, kernel={list(self.kernel.members)})"


@dataclass(frozen=True)
class OrientedPair:
    star: AntiAutomorphism
    sigma: Orientation
    compatible: bool

    @property
    def group(self) -> FiniteGroup:
        return self.star.parent


@dataclass(frozen=True)
class CorpusEntry:
    spec: str
    group: FiniteGroup
    provenance: str
