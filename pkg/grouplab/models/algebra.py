# grouplab/models/algebra.py

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Tuple, Union

import numpy as np

from grouplab.models.group import FiniteGroup, OrientedPair
from grouplab.utils.errors import ContextMismatchError


@dataclass(frozen=True, eq=False)
class AlgebraContext:
    """F_p G together with the oriented involution given by a compatible (star, sigma) pair."""

    group: FiniteGroup
    p: int
    pair: OrientedPair

    @property
    def n(self) -> int:
        return self.group.order

    @cached_property
    def table_flat(self) -> np.ndarray:
        return self.group.table.ravel()

    @cached_property
    def left_index(self) -> np.ndarray:
        # L(a)[y, x] = a[y x^-1]
        inv = np.array(self.group.inv, dtype=np.int64)
        return self.group.table[:, inv]

    @cached_property
    def star_perm(self) -> np.ndarray:
        return np.array(self.pair.star.image, dtype=np.int64)

    @cached_property
    def sign(self) -> np.ndarray:
        return np.array(self.pair.sigma.sign, dtype=np.int64)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """(ab)_g = sum over xy = g of a_x b_y"""
        raw = np.bincount(self.table_flat, weights=np.outer(a, b).ravel(), minlength=self.n)
        return np.rint(raw).astype(np.int64) % self.p

    @cached_property
    def right_index(self) -> np.ndarray:
        # R[x, g] = x^-1 g
        inv = np.array(self.group.inv, dtype=np.int64)
        return self.group.table[inv]

    def multiply_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Row-wise products of two stacks of coefficient vectors: (ab)_g = sum_x a_x b_(x^-1 g)."""
        return np.einsum("sx,sxg->sg", A, B[:, self.right_index]) % self.p

    def star_rows(self, A: np.ndarray) -> np.ndarray:
        out = np.zeros_like(A)
        out[:, self.star_perm] = A * self.sign
        return out % self.p

    def left_regular(self, a: np.ndarray) -> np.ndarray:
        return a[self.left_index]

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, tuple(int(c) % self.p for c in coeffs))

    def basis_vector(self, g: int, coeff: int = 1) -> "AlgebraElement":
        coeffs = [0] * self.n
        coeffs[g] = coeff % self.p
        return AlgebraElement(self, tuple(coeffs))

    @property
    def one(self) -> "AlgebraElement":
        return self.basis_vector(self.group.identity)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (0,) * self.n)

    def __repr__(self) -> str:
        return f"AlgebraContext(F{self.p}[{self.group.name}])"


@dataclass(frozen=True)
class AlgebraElement:
    context: AlgebraContext = field(repr=False, compare=False)
    coeffs: Tuple[int, ...]

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _check(self, other: "AlgebraElement") -> None:
        if other.context is not self.context:
            raise ContextMismatchError(f"{self.context!r} vs {other.context!r}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return self.context.element(self.vector + other.vector)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return self.context.element(self.vector - other.vector)

    def __neg__(self) -> "AlgebraElement":
        return self.context.element(-self.vector)

    def __mul__(self, other: Union["AlgebraElement", int]) -> "AlgebraElement":
        if isinstance(other, int):
            return self.context.element(self.vector * other)
        self._check(other)
        return AlgebraElement(
            self.context, tuple(int(c) for c in self.context.multiply(self.vector, other.vector))
        )

    def __rmul__(self, scalar: int) -> "AlgebraElement":
        return self * scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.context is other.context and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*g{g}" for g, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class IdealBasis:
    context: AlgebraContext
    basis: Tuple[AlgebraElement, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class UnitSet:
    context: AlgebraContext
    units: Tuple[AlgebraElement, ...]
    symmetric_only: bool
    # inverse coefficient vectors keyed by the unit's coefficients
    inverses: Dict[Tuple[int, ...], Tuple[int, ...]] = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.units)
