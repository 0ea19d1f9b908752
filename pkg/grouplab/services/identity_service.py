# grouplab/services/identity_service.py

import itertools
import re
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from grouplab.config import get_settings
from grouplab.models.algebra import AlgebraContext, AlgebraElement, UnitSet
from grouplab.models.group import SubgroupSet
from grouplab.models.schemas import IdentityResult, IdentityWitness
from grouplab.models.words import (
    Letter, WordIdentity, commutator_letters, invert_letters, reduce_letters,
)
from grouplab.services.algebra_service import algebra_service
from grouplab.utils.errors import (
    BoundExceededError, ContextMismatchError, InvalidWordError,
)
from grouplab.utils.linalg import solve_mod_p
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)

_TOKEN = re.compile(r"\s*(x\d+|\^-?\d+|[(),])")

COMMUTATOR = "(x1,x2)"


class _WordParser:
    """
    word   := factor+
    factor := atom ('^' int)?
    atom   := 'x' int | '(' word (',' word)* ')'
    (w1, ..., wk) with k >= 2 is the left-normed commutator ((w1, w2), ..., wk).
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[str]:
        tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                raise InvalidWordError(f"unexpected character at position {pos} in {text!r}")
            tokens.append(m.group(1))
            pos = m.end()
        return tokens

    def _peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> str:
        tok = self._peek()
        if tok is None:
            raise InvalidWordError(f"unexpected end of word {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Tuple[Letter, ...]:
        letters = self._word()
        if self._peek() is not None:
            raise InvalidWordError(f"trailing input {self._peek()!r} in {self.text!r}")
        return letters

    def _word(self) -> Tuple[Letter, ...]:
        letters: Tuple[Letter, ...] = ()
        start = self.pos
        while self._peek() is not None and self._peek() not in (",", ")") and not self._peek().startswith("^"):
            letters = reduce_letters(letters + self._factor())
        if self.pos == start:
            raise InvalidWordError(f"empty word in {self.text!r}")
        return letters

    def _factor(self) -> Tuple[Letter, ...]:
        atom = self._atom()
        tok = self._peek()
        if tok is not None and tok.startswith("^"):
            self._take()
            k = int(tok[1:])
            base = atom if k >= 0 else invert_letters(atom)
            return reduce_letters(base * abs(k))
        return atom

    def _atom(self) -> Tuple[Letter, ...]:
        tok = self._take()
        if tok.startswith("x"):
            var = int(tok[1:])
            if var < 1:
                raise InvalidWordError(f"variables are numbered from x1 in {self.text!r}")
            return ((var, 1),)
        if tok == "(":
            parts = [self._word()]
            while self._peek() == ",":
                self._take()
                parts.append(self._word())
            if self._take() != ")":
                raise InvalidWordError(f"unbalanced parentheses in {self.text!r}")
            result = parts[0]
            for part in parts[1:]:
                result = commutator_letters(result, part)
            return result
        raise InvalidWordError(f"unexpected token {tok!r} in {self.text!r}")


class IdentityService:
    def parse_word(self, text: str) -> WordIdentity:
        letters = _WordParser(text).parse()
        arity = max((var for var, _ in letters), default=0)
        return WordIdentity(arity=arity, letters=letters, text=text.strip())

    def enumerate_units(
        self, ctx: AlgebraContext, symmetric_only: bool = False, bound: Optional[int] = None
    ) -> UnitSet:
        """All units (or all symmetric units) by sweeping F_p G (or its symmetric subspace)."""
        bound = bound or get_settings().unit_bound
        if symmetric_only:
            spanning = [b.vector for b in algebra_service.symmetric_basis(ctx)]
        else:
            spanning = [ctx.basis_vector(g).vector for g in ctx.group.elements()]
        size = ctx.p ** len(spanning)
        if size > bound:
            raise BoundExceededError(f"unit search space of {ctx!r}", size, bound)

        B = np.array(spanning, dtype=np.int64).reshape(len(spanning), ctx.n)
        e = ctx.one.vector
        units = []
        inverses: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for combo in itertools.product(range(ctx.p), repeat=len(spanning)):
            vec = (np.array(combo, dtype=np.int64) @ B) % ctx.p
            inv = solve_mod_p(ctx.left_regular(vec), e, ctx.p)
            if inv is None:
                continue
            key = tuple(int(c) for c in vec)
            units.append(AlgebraElement(ctx, key))
            inverses[key] = tuple(int(c) for c in inv)
        units.sort(key=lambda u: u.coeffs)
        logger.debug(f"{ctx!r}: {len(units)} {'symmetric ' if symmetric_only else ''}units")
        return UnitSet(context=ctx, units=tuple(units), symmetric_only=symmetric_only, inverses=inverses)

    def _inverse(self, u: AlgebraElement, cache: Dict[Tuple[int, ...], Tuple[int, ...]]) -> AlgebraElement:
        cached = cache.get(u.coeffs)
        if cached is None:
            cached = algebra_service.inverse(u).coeffs
            cache[u.coeffs] = cached
        return AlgebraElement(u.context, cached)

    @staticmethod
    def _power(x: AlgebraElement, k: int) -> AlgebraElement:
        result = x.context.one
        base = x
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate_word(
        self,
        w: WordIdentity,
        args: Sequence[AlgebraElement],
        cache: Optional[Dict[Tuple[int, ...], Tuple[int, ...]]] = None,
    ) -> AlgebraElement:
        if len(args) != w.arity:
            raise InvalidWordError(f"word {w} takes {w.arity} arguments, got {len(args)}")
        ctx = args[0].context
        if any(a.context is not ctx for a in args):
            raise ContextMismatchError("word arguments live in different algebras")
        cache = {} if cache is None else cache
        # arguments must be units; raises NotAUnitError otherwise
        inverses = [self._inverse(a, cache) for a in args]

        result = ctx.one
        for var, exp in w.letters:
            base = args[var - 1] if exp > 0 else inverses[var - 1]
            result = result * self._power(base, abs(exp))
        return result

    def satisfies_identity(
        self, units: UnitSet, w: WordIdentity, bound: Optional[int] = None
    ) -> IdentityResult:
        """Checks w = 1 on every tuple; the lexicographically least failing tuple is the witness."""
        bound = bound or get_settings().tuple_bound
        total = len(units) ** w.arity
        if total > bound:
            raise BoundExceededError(f"word tuples over {units.context!r}", total, bound)
        one = units.context.one
        cache = dict(units.inverses)
        checked = 0
        for args in itertools.product(units.units, repeat=w.arity):
            checked += 1
            value = self.evaluate_word(w, args, cache)
            if value != one:
                witness = IdentityWitness(
                    word=str(w),
                    arguments=[list(a.coeffs) for a in args],
                    value=list(value.coeffs),
                )
                return IdentityResult(
                    holds=False, word=str(w), units=len(units), tuples_checked=checked, witness=witness
                )
        return IdentityResult(holds=True, word=str(w), units=len(units), tuples_checked=checked)

    def commutator_p_power(
        self, ctx: AlgebraContext, n_max: int = 8, bound: Optional[int] = None
    ) -> Optional[int]:
        """Least n <= n_max with (u, v)^(p^n) = 1 for all symmetric units u, v."""
        bound = bound or get_settings().tuple_bound
        d = len(algebra_service.symmetric_basis(ctx))
        estimate = ctx.p ** (2 * d)
        if estimate > bound:
            raise BoundExceededError(f"symmetric unit pairs of {ctx!r}", estimate, bound)

        units = self.enumerate_units(ctx, symmetric_only=True)
        word = self.parse_word(COMMUTATOR)
        cache = dict(units.inverses)
        one = ctx.one
        commutators = {
            self.evaluate_word(word, (u, v), cache) for u in units.units for v in units.units
        }
        worst = 0
        for c in commutators:
            n, x = 0, c
            while x != one:
                n += 1
                if n > n_max:
                    return None
                x = self._power(x, ctx.p)
            worst = max(worst, n)
        return worst

    def transfer_to_quotient(
        self, ctx: AlgebraContext, H: SubgroupSet, w: WordIdentity
    ) -> Tuple[IdentityResult, IdentityResult]:
        """Evaluates w on the symmetric units of F_p G and of F_p (G/H)."""
        qctx, qr = algebra_service.quotient_context(ctx, H)
        source_units = self.enumerate_units(ctx, symmetric_only=True)
        target_units = self.enumerate_units(qctx, symmetric_only=True)
        source = self.satisfies_identity(source_units, w)
        target = self.satisfies_identity(target_units, w)

        images = {algebra_service.project(qctx, qr, u) for u in source_units.units}
        if not images <= set(target_units.units):
            raise RuntimeError("projection does not map symmetric units to symmetric units")
        return source, target


identity_service = IdentityService()
