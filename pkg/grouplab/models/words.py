# grouplab/models/words.py

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from grouplab.utils.errors import InvalidWordError

Letter = Tuple[int, int]


def reduce_letters(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    """Free reduction: merges adjacent powers of the same variable and drops zero exponents."""
    word: List[Letter] = []
    for var, exp in letters:
        if word and word[-1][0] == var:
            merged = word[-1][1] + exp
            word.pop()
            if merged:
                word.append((var, merged))
        elif exp:
            word.append((var, exp))
    return tuple(word)


def invert_letters(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    return tuple((var, -exp) for var, exp in reversed(list(letters)))


def commutator_letters(a: Tuple[Letter, ...], b: Tuple[Letter, ...]) -> Tuple[Letter, ...]:
    """(a, b) = a^-1 b^-1 a b"""
    return reduce_letters(invert_letters(a) + invert_letters(b) + a + b)


@dataclass(frozen=True)
class WordIdentity:
    """A non-trivial reduced word in x1..xk."""

    arity: int
    letters: Tuple[Letter, ...]
    text: str = ""

    def __post_init__(self):
        if not self.letters:
            raise InvalidWordError(f"word {self.text!r} reduces to the empty word")
        if reduce_letters(self.letters) != self.letters:
            raise InvalidWordError(f"word {self.text!r} is not reduced")
        if any(var < 1 or var > self.arity for var, _ in self.letters):
            raise InvalidWordError(f"word {self.text!r} uses a variable outside x1..x{self.arity}")

    def __str__(self) -> str:
        if self.text:
            return self.text
        return "".join(f"x{v}" + (f"^{e}" if e != 1 else "") for v, e in self.letters)
