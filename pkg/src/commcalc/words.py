"""Free-group words over a declared generator alphabet, commutator
expression trees, parsing, free reduction, and substitution.

Conventions (fixed so the classical commutator identities hold
letter-for-letter):

    [x, y] = x^-1 y^-1 x y        x^g = g^-1 x g

Under these, [x,yz] = [x,z] [x,y]^z, [xz,y] = [x,y]^z [z,y], and the
Hall-Witt word [[x,y],z^x] [[z,x],y^z] [[y,z],x^y] freely reduces to
the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class WordError(ValueError):
    pass


class UnknownGeneratorError(WordError):
    """A name not declared in the session alphabet."""


class UnmappedGeneratorError(WordError):
    """Total substitution requested but a leaf generator has no image."""


class ParseError(WordError):
    def __init__(self, message: str, offset: int, expected: str = ""):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


@dataclass(frozen=True)
class Generator:
    """A named free-group generator with a small integer tag.

    The tag is what downstream variable sets key on; within an Alphabet
    the tags are a bijection onto a contiguous range.
    """

    name: str
    index: int

    def __repr__(self) -> str:
        return f"Generator({self.name!r}, {self.index})"


class Alphabet:
    """The generator universe of a session, declared up front.

    Parsing refuses names outside the alphabet; this catches typos in
    expression input instead of silently minting new generators.
    """

    def __init__(self, names: Iterable[str]):
        names = list(names)
        if len(set(names)) != len(names):
            raise WordError(f"duplicate generator names in {names}")
        for n in names:
            if not (n and n[0].isalpha() and n.isalnum()):
                raise WordError(f"invalid generator name: {n!r}")
        self._gens = tuple(Generator(n, i) for i, n in enumerate(names))
        self._by_name = {g.name: g for g in self._gens}

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self._gens

    def __iter__(self):
        return iter(self._gens)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownGeneratorError(
                f"unknown generator {name!r}; alphabet is "
                f"{[g.name for g in self._gens]}"
            ) from None

    def word(self, text: str) -> "GroupWord":
        """Convenience: parse text and flatten it to a reduced word.
        Empty text denotes the identity (expressions have no empty
        form, words do)."""
        if not text.strip():
            return GroupWord()
        return expr_to_word(parse_expr(text, self))


def _reduce_letters(letters) -> tuple:
    out: list = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """An element of the free group in normal form.

    letters is a tuple of (Generator, sign) pairs with sign in {+1,-1};
    the constructor freely reduces, so equal group elements compare equal.
    Immutable: all operations return new words.
    """

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    @staticmethod
    def generator(g: Generator, sign: int = 1) -> "GroupWord":
        if sign not in (1, -1):
            raise WordError(f"sign must be +1 or -1, got {sign}")
        return GroupWord(((g, sign),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -s) for g, s in reversed(self.letters)))

    def conjugate(self, by: "GroupWord") -> "GroupWord":
        """self^by = by^-1 * self * by."""
        return by.inverse() * self * by

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        out = GroupWord()
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, s in self.letters:
            parts.append(g.name if s == 1 else f"{g.name}^-1")
        return " ".join(parts)


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    """[x,y] = x^-1 y^-1 x y, freely reduced."""
    return x.inverse() * y.inverse() * x * y


def free_reduce(w: GroupWord) -> GroupWord:
    """Normal form in the free group.  GroupWord already stores the
    normal form, so this is the identity; it exists as the named
    operation and as the hook for reducing raw letter sequences."""
    return GroupWord(w.letters)


# ---------------------------------------------------------------------------
# commutator expressions


@dataclass(frozen=True)
class CommExpr:
    pass


@dataclass(frozen=True)
class Leaf(CommExpr):
    gen: Generator


@dataclass(frozen=True)
class Inverse(CommExpr):
    base: CommExpr


@dataclass(frozen=True)
class Product(CommExpr):
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise WordError("products must be non-empty")


@dataclass(frozen=True)
class Commutator(CommExpr):
    left: CommExpr
    right: CommExpr


@dataclass(frozen=True)
class Conjugate(CommExpr):
    base: CommExpr
    by: CommExpr


# --- parsing ---------------------------------------------------------------
#
# expr     := factor { "*" factor }
# factor   := base [ "^" exponent ]
# base     := GENERATOR | "[" expr "," expr "]" | "(" expr ")"
# exponent := "-"? INTEGER | base        (integer = power, base = conjugation)
#
# Whitespace is insignificant; "^-1" binds tighter than "*".


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            raise ParseError(
                f"unexpected {self.peek()!r}" if self.peek() else "unexpected end of input",
                self.pos,
                expected=repr(ch),
            )
        self.pos += 1

    def name(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or not self.text[self.pos].isalpha():
            raise ParseError(
                f"unexpected {self.peek()!r}" if self.peek() else "unexpected end of input",
                self.pos,
                expected="generator name, '[' or '('",
            )
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        return self.text[start:self.pos], start

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
            raise ParseError("bad exponent", start, expected="integer or base")
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def parse_expr(text: str, alphabet: Alphabet) -> CommExpr:
    """Parse the concrete syntax into its unique expression tree."""
    toks = _Tokens(text)
    e = _parse_expr(toks, alphabet)
    toks.skip_ws()
    if toks.pos != len(text):
        raise ParseError(f"trailing input {text[toks.pos:]!r}", toks.pos, expected="end of input")
    return e


def _parse_expr(toks: _Tokens, alphabet: Alphabet) -> CommExpr:
    factors = [_parse_factor(toks, alphabet)]
    while toks.peek() == "*":
        toks.take("*")
        factors.append(_parse_factor(toks, alphabet))
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _parse_factor(toks: _Tokens, alphabet: Alphabet) -> CommExpr:
    base = _parse_base(toks, alphabet)
    if toks.peek() != "^":
        return base
    toks.take("^")
    ch = toks.peek()
    if ch == "-" or ch.isdigit():
        at = toks.pos
        n = toks.integer()
        return _power(base, n, at)
    return Conjugate(base, _parse_base(toks, alphabet))


def _power(base: CommExpr, n: int, offset: int) -> CommExpr:
    if n == 0:
        raise ParseError("zero exponent has no expression form", offset, expected="nonzero integer")
    if n < 0:
        return Inverse(_power(base, -n, offset))
    if n == 1:
        return base
    return Product(tuple([base] * n))


def _parse_base(toks: _Tokens, alphabet: Alphabet) -> CommExpr:
    ch = toks.peek()
    if ch == "[":
        toks.take("[")
        left = _parse_expr(toks, alphabet)
        toks.take(",")
        right = _parse_expr(toks, alphabet)
        toks.take("]")
        return Commutator(left, right)
    if ch == "(":
        toks.take("(")
        inner = _parse_expr(toks, alphabet)
        toks.take(")")
        return inner
    name, start = toks.name()
    if name not in alphabet:
        raise ParseError(f"unknown generator {name!r}", start, expected="declared generator")
    return Leaf(alphabet[name])


def print_expr(e: CommExpr) -> str:
    """Concrete syntax for an expression; parse(print_expr(e)) is
    structurally identical to e for parser-produced trees."""
    if isinstance(e, Leaf):
        return e.gen.name
    if isinstance(e, Inverse):
        return f"{_print_base(e.base)}^-1"
    if isinstance(e, Product):
        return "*".join(_print_factor(f) for f in e.factors)
    if isinstance(e, Commutator):
        return f"[{print_expr(e.left)},{print_expr(e.right)}]"
    if isinstance(e, Conjugate):
        return f"{_print_base(e.base)}^{_print_base(e.by)}"
    raise TypeError(f"not a CommExpr: {e!r}")


def _print_base(e: CommExpr) -> str:
    if isinstance(e, (Leaf, Commutator)):
        return print_expr(e)
    return f"({print_expr(e)})"


def _print_factor(e: CommExpr) -> str:
    if isinstance(e, Product):
        return f"({print_expr(e)})"
    return print_expr(e)


# --- evaluation ------------------------------------------------------------


def substitute(
    e: CommExpr,
    mapping: Mapping[Generator, GroupWord],
    require_total: bool = False,
) -> GroupWord:
    """Flatten e to a reduced word, replacing mapped leaves by their
    image words.  Unmapped generators stand for themselves unless the
    caller requests a total substitution."""
    if isinstance(e, Leaf):
        if e.gen in mapping:
            return mapping[e.gen]
        if require_total:
            raise UnmappedGeneratorError(f"no image for generator {e.gen.name!r}")
        return GroupWord.generator(e.gen)
    if isinstance(e, Inverse):
        return substitute(e.base, mapping, require_total).inverse()
    if isinstance(e, Product):
        out = GroupWord()
        for f in e.factors:
            out = out * substitute(f, mapping, require_total)
        return out
    if isinstance(e, Commutator):
        return commutator(
            substitute(e.left, mapping, require_total),
            substitute(e.right, mapping, require_total),
        )
    if isinstance(e, Conjugate):
        return substitute(e.base, mapping, require_total).conjugate(
            substitute(e.by, mapping, require_total)
        )
    raise TypeError(f"not a CommExpr: {e!r}")


def expr_to_word(e: CommExpr) -> GroupWord:
    """The freely reduced word of e under the fixed conventions."""
    return substitute(e, {})
