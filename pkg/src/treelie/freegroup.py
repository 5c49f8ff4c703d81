"""Freely reduced words in a finitely generated free group.

Generators are numbered 1..rank.  When the rank is even, 2g, the
generators are displayed in symplectic pairs x_i = g_{2i-1}, y_i = g_{2i};
this naming is purely a display convention and both spellings parse.
Commutators follow [a, b] = a b a^-1 b^-1.
"""

from __future__ import annotations


class WordSyntaxError(ValueError):
    """Raised on malformed word text; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce(letters):
    out = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


class GroupWord:
    """An immutable freely reduced word.  Letters are (generator, ±1) pairs."""

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters=()):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        letters = _reduce(letters)
        for gen, sign in letters:
            if not 1 <= gen <= rank:
                raise ValueError(f"generator index {gen} out of range 1..{rank}")
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        self.rank = rank
        self.letters = letters

    @classmethod
    def identity(cls, rank: int) -> "GroupWord":
        return cls(rank)

    @classmethod
    def generator(cls, rank: int, index: int, power: int = 1) -> "GroupWord":
        sign = 1 if power >= 0 else -1
        return cls(rank, ((index, sign),) * abs(power))

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return GroupWord(self.rank, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.rank, tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = GroupWord.identity(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupWord)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.rank, self.letters))

    def to_text(self) -> str:
        """Grammar-conformant text; parse_word(to_text(w)) == w."""
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            gen, sign = letters[i]
            j = i
            while j < len(letters) and letters[j] == (gen, sign):
                j += 1
            power = sign * (j - i)
            name = generator_name(self.rank, gen)
            parts.append(name if power == 1 else f"{name}^{power}")
            i = j
        return " ".join(parts)

    def __repr__(self):
        return f"GroupWord({self.rank}, {self.to_text()!r})"


def generator_name(rank: int, index: int) -> str:
    if rank % 2 == 0:
        pair, off = divmod(index - 1, 2)
        return f"{'xy'[off]}{pair + 1}"
    return f"g{index}"


def multiply(u: GroupWord, v: GroupWord) -> GroupWord:
    return u * v


def invert(u: GroupWord) -> GroupWord:
    return u.inverse()


def commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def surface_relator(genus: int) -> GroupWord:
    """[x1,y1][x2,y2]...[xg,yg] in the free group of rank 2g."""
    if genus < 0:
        raise ValueError("genus must be >= 0")
    rank = 2 * genus
    word = GroupWord.identity(rank)
    for i in range(genus):
        x = GroupWord.generator(rank, 2 * i + 1)
        y = GroupWord.generator(rank, 2 * i + 2)
        word = word * commutator(x, y)
    return word


# --- parsing ----------------------------------------------------------------
#
# word := term* ; term := atom ["^" int]
# atom := gen | "[" word "," word "]" | "(" word ")"
# gen  := ("x" | "y" | "g") digits
# Whitespace separates terms.  Exponents on bracketed atoms are accepted as
# a harmless superset of the grammar.


class _Scanner:
    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.pos = 0

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message):
        raise WordSyntaxError(message, self.pos)

    def parse_word(self, stop: str = "") -> GroupWord:
        result = GroupWord.identity(self.rank)
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                return result
            result = result * self.parse_term()

    def parse_term(self) -> GroupWord:
        atom = self.parse_atom()
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            return atom ** self.parse_int()
        return atom

    def parse_atom(self) -> GroupWord:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            left = self.parse_word(",")
            if self.peek() != ",":
                self.error("expected ',' in commutator")
            self.pos += 1
            right = self.parse_word("]")
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return commutator(left, right)
        if ch == "(":
            self.pos += 1
            inner = self.parse_word(")")
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch in "xyg":
            kind = ch
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                self.error(f"expected digits after '{kind}'")
            number = int(self.text[start:self.pos])
            if number < 1:
                self.error("generator numbers start at 1")
            if kind == "g":
                index = number
            else:
                index = 2 * number - 1 if kind == "x" else 2 * number
            if not 1 <= index <= self.rank:
                self.error(f"generator {kind}{number} out of range for rank {self.rank}")
            return GroupWord.generator(self.rank, index)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def parse_int(self) -> int:
        self.skip_space()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected an integer exponent")
        return int(self.text[start:self.pos])


def parse_word(text: str, rank: int) -> GroupWord:
    """Parse word text over generators g1..g<rank> (x_i/y_i aliases allowed)."""
    scanner = _Scanner(text, rank)
    word = scanner.parse_word()
    scanner.skip_space()
    if scanner.pos != len(text):
        scanner.error("trailing input")
    return word
