"""Exact word arithmetic in the Baumslag-Solitar group B(m,n).

B(m,n) = <a, b | a^-1 b^m a = b^n>.  Elements are freely reduced syllable
sequences; the word problem is solved by pinch ("Britton") reduction:
a^-1 b^(tm) a -> b^(tn) and a b^(tn) a^-1 -> b^(tm).  All exponents are
plain Python integers, so the geometric growth of b-exponents under
reduction is handled exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import WordSyntaxError

A = "a"
B = "b"


@dataclass(frozen=True)
class GroupSpec:
    """The index pair (m, n) of B(m,n).  Both entries must be nonzero."""

    m: int
    n: int

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise ValueError("B(m,n) requires m != 0 and n != 0")

    @property
    def is_solvable_case(self) -> bool:
        return abs(self.m) == 1 or abs(self.n) == 1

    @property
    def is_equal_case(self) -> bool:
        return self.m == self.n

    @property
    def is_minus_case(self) -> bool:
        return self.m == -self.n

    def __str__(self):
        return f"B({self.m},{self.n})"


@dataclass(frozen=True)
class Syllable:
    base: str  # A or B
    exp: int

    def __post_init__(self):
        if self.base not in (A, B):
            raise ValueError(f"bad syllable base {self.base!r}")
        if self.exp == 0:
            raise ValueError("syllable exponent must be nonzero")


@dataclass(frozen=True)
class Word:
    """Freely reduced sequence of syllables; the empty word is the identity."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        prev = None
        for s in self.syllables:
            if prev is not None and prev == s.base:
                raise ValueError("word is not freely reduced")
            prev = s.base

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __str__(self):
        return format_word(self)


IDENTITY = Word()


def _push(stack: list[list], base: str, exp: int) -> None:
    """Append (base, exp) to a syllable stack, merging and cascading."""
    if exp == 0:
        return
    stack.append([base, exp])
    # merge adjacent equal bases; a zero merge exposes a new adjacency
    while len(stack) >= 2 and stack[-1][0] == stack[-2][0]:
        top = stack.pop()
        stack[-1][1] += top[1]
        if stack[-1][1] == 0:
            stack.pop()


def word(pairs: Iterable[tuple[str, int]]) -> Word:
    """Build a Word from (base, exp) pairs, applying free reduction."""
    stack: list[list] = []
    for base, exp in pairs:
        _push(stack, base, exp)
    return Word(tuple(Syllable(b, e) for b, e in stack))


def from_syllables(*pairs: tuple[str, int]) -> Word:
    return word(pairs)


_TOKEN = re.compile(r"\s*([abAB])(?:\^(-?\d+))?")


def parse_word(text: str, group: GroupSpec | None = None) -> Word:
    """Parse word text; capitals are inverses, '^' introduces an exponent.

    Grammar: term*, term := letter exponent?, letter in {a, b, A, B}.
    The result is freely reduced.  '1' denotes the empty word, matching
    format_word.  `group` is accepted for interface symmetry; the grammar
    does not depend on (m, n).
    """
    if text.strip() == "1":
        return Word()
    pairs = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise WordSyntaxError("unexpected token", pos, rest[0])
        letter, exp_text = match.groups()
        exp = 1 if exp_text is None else int(exp_text)
        if letter.isupper():
            exp = -exp
        pairs.append((letter.lower(), exp))
        pos = match.end()
    return word(pairs)


def format_word(w: Word) -> str:
    """Canonical text: lowercase letters with explicit '^-1' exponents."""
    if not w:
        return "1"
    parts = []
    for s in w:
        parts.append(s.base if s.exp == 1 else f"{s.base}^{s.exp}")
    return " ".join(parts)


def multiply(u: Word, v: Word) -> Word:
    stack = [[s.base, s.exp] for s in u]
    for s in v:
        _push(stack, s.base, s.exp)
    return Word(tuple(Syllable(b, e) for b, e in stack))


def invert(w: Word) -> Word:
    return Word(tuple(Syllable(s.base, -s.exp) for s in reversed(w.syllables)))


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    result = IDENTITY
    for _ in range(k):
        result = multiply(result, w)
    return result


def _tokens(w: Word) -> Iterator[tuple[str, int]]:
    """Yield b-syllables whole and a-syllables as +-1 units."""
    for s in w:
        if s.base == B:
            yield (B, s.exp)
        else:
            step = 1 if s.exp > 0 else -1
            for _ in range(abs(s.exp)):
                yield (A, step)


def britton_reduce(w: Word, group: GroupSpec) -> Word:
    """Remove every pinch a^-1 b^(tm) a and a b^(tn) a^-1.

    Each rewrite deletes two a-units, so the scan terminates; pinches are
    removed innermost-leftmost, which makes the result deterministic (any
    strategy yields an equal element).
    """
    m, n = group.m, group.n
    stack: list[list] = []
    for base, exp in _tokens(w):
        if base == B:
            _push(stack, B, exp)
            continue
        # an a-unit; look for a pinch ending here
        if len(stack) >= 2 and stack[-1][0] == B and stack[-2][0] == A:
            t = stack[-1][1]
            p = stack[-2][1]
            if exp > 0 and p < 0 and t % m == 0:
                stack.pop()
                _push(stack, A, 1)
                _push(stack, B, (t // m) * n)
                continue
            if exp < 0 and p > 0 and t % n == 0:
                stack.pop()
                _push(stack, A, -1)
                _push(stack, B, (t // n) * m)
                continue
        _push(stack, A, exp)
    return Word(tuple(Syllable(b, e) for b, e in stack))


@dataclass(frozen=True)
class NormalForm:
    """Britton-reduced, coset-normalized canonical representative."""

    word: Word
    group: GroupSpec

    def __str__(self):
        return format_word(self.word)


def _carry_pass(w: Word, group: GroupSpec) -> Word:
    """Push b-exponents into coset range, carrying the quotient rightward.

    b^u a = b^r a b^(q n) for u = q m + r, r in [0, |m|);
    b^u a^-1 = b^r a^-1 b^(q m) for u = q n + r, r in [0, |n|).
    """
    m, n = group.m, group.n
    stack: list[list] = []
    carry = 0
    for base, exp in _tokens(w):
        if base == B:
            carry += exp
            continue
        if exp > 0:
            r = carry % abs(m)
            q = (carry - r) // m
            _push(stack, B, r)
            _push(stack, A, 1)
            carry = q * n
        else:
            r = carry % abs(n)
            q = (carry - r) // n
            _push(stack, B, r)
            _push(stack, A, -1)
            carry = q * m
    _push(stack, B, carry)
    return Word(tuple(Syllable(b, e) for b, e in stack))


def normal_form(w: Word, group: GroupSpec) -> NormalForm:
    """Deterministic canonical form; idempotent, and syntactic equality of
    normal forms coincides with equality in the group."""
    current = britton_reduce(w, group)
    # A carry pass may cancel a-units and re-expose pinches; every such
    # cancellation shortens the a-length, so this loop terminates.
    for _ in range(sum(abs(s.exp) for s in current if s.base == A) + 2):
        candidate = _carry_pass(current, group)
        if candidate == current:
            return NormalForm(current, group)
        current = britton_reduce(candidate, group)
    raise RuntimeError("normal form iteration failed to stabilize")  # pragma: no cover


def are_equal(u: Word, v: Word, group: GroupSpec) -> bool:
    """Word problem: u = v in B(m,n) iff britton_reduce(u v^-1) is empty."""
    return not britton_reduce(multiply(u, invert(v)), group)


def exp_sum(w: Word, base: str) -> int:
    """Sum of the exponents of one letter.

    For base A this is a homomorphism to Z on every B(m,n).  For base B it
    is a homomorphism only when m = n; otherwise it is well defined only
    modulo |n - m|.
    """
    return sum(s.exp for s in w if s.base == base)


def substitute(w: Word, image_a: Word, image_b: Word) -> Word:
    """Replace each generator by its image word and freely reduce."""
    result_stack: list[list] = []
    for s in w:
        image = image_a if s.base == A else image_b
        piece = power(image, s.exp)
        for syl in piece:
            _push(result_stack, syl.base, syl.exp)
    return Word(tuple(Syllable(b, e) for b, e in result_stack))


def relator(group: GroupSpec) -> Word:
    """The defining relator a^-1 b^m a b^-n."""
    return word([(A, -1), (B, group.m), (A, 1), (B, -group.n)])


_GEN_A = word([(A, 1)])
_GEN_B = word([(B, 1)])
_GEN_A_INV = word([(A, -1)])


def standardize(group: GroupSpec) -> tuple[GroupSpec, tuple[Word, Word]]:
    """Rewrite (m,n) so that 0 < m' <= |n'|, returning the generator map.

    Uses the two index isomorphisms B(m,n) ~ B(-m,-n) (identity on letters)
    and B(m,n) ~ B(n,m) (a -> a^-1, b -> b).  The first variant in a fixed
    preference order that satisfies the constraint is chosen, so the result
    is deterministic.  B(1,1) already satisfies the constraint and is
    returned unchanged; callers that cannot handle it must flag it
    themselves.
    """
    m, n = group.m, group.n
    candidates = [
        ((m, n), (_GEN_A, _GEN_B)),
        ((-m, -n), (_GEN_A, _GEN_B)),
        ((n, m), (_GEN_A_INV, _GEN_B)),
        ((-n, -m), (_GEN_A_INV, _GEN_B)),
    ]
    for (mm, nn), images in candidates:
        if 0 < mm <= abs(nn):
            return GroupSpec(mm, nn), images
    raise AssertionError("unreachable: some variant always standardizes")
