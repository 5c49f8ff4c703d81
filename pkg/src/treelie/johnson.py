"""Endomorphisms of a free group and their graded defect tensors.

An endomorphism is stored by its generator images.  When the rank is even
the generators pair up as x_i = g_{2i-1}, y_i = g_{2i} and the genus-g
surface relator [x_1,y_1]...[x_g,y_g] makes sense; an endomorphism that
fixes it modulo weight n+2 and fixes every generator modulo weight n has
a degree-n defect tensor

    sum_i  x_i (x) psi(y_i)  -  y_i (x) psi(x_i)

where psi(a) is the degree-n leading class of a^-1 h(a).  That tensor
always lies in the contraction kernel, and realize() inverts the
assignment on kernel elements by an explicit coordinate section.
"""

from __future__ import annotations

from . import linalg
from .dspace import HTensorLie, dn_contains
from .freegroup import GroupWord, commutator, generator_name
from .freegroup import surface_relator as _surface_relator
from .freelie import LieElement, from_tensor, lyndon_bracketing
from .magnus import (
    DEFAULT_CAP,
    EXCEEDS_CAP,
    INFINITE_WEIGHT,
    lcs_weight,
    magnus_expand,
)


class FreeEndo:
    """Endomorphism of the free group given by generator images."""

    __slots__ = ("rank", "images")

    def __init__(self, images):
        images = tuple(images)
        if not images:
            raise ValueError("need at least one generator image")
        rank = images[0].rank
        if len(images) != rank:
            raise ValueError(f"rank {rank} needs exactly {rank} images")
        if any(w.rank != rank for w in images):
            raise ValueError("all images must share the rank")
        self.rank = rank
        self.images = images

    @classmethod
    def identity(cls, rank: int) -> "FreeEndo":
        return cls([GroupWord.generator(rank, i) for i in range(1, rank + 1)])

    @classmethod
    def from_json(cls, data) -> "FreeEndo":
        from .freegroup import parse_word

        rank = int(data["rank"])
        return cls([parse_word(text, rank) for text in data["images"]])

    def apply(self, word: GroupWord) -> GroupWord:
        if word.rank != self.rank:
            raise ValueError("rank mismatch")
        out = GroupWord.identity(self.rank)
        for gen, sign in word.letters:
            image = self.images[gen - 1]
            out = out * (image if sign > 0 else image.inverse())
        return out

    def compose(self, other: "FreeEndo") -> "FreeEndo":
        """self after other: compose(h1, h2).apply(w) = h1(h2(w))."""
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return FreeEndo([self.apply(image) for image in other.images])

    def abelianized(self):
        """Induced matrix on H; column j is the image of generator j+1."""
        m = self.rank
        matrix = [[0] * m for _ in range(m)]
        for j, image in enumerate(self.images):
            for gen, sign in image.letters:
                matrix[gen - 1][j] += sign
        return matrix

    def to_json(self):
        return {"rank": self.rank, "images": [w.to_text() for w in self.images]}

    def __eq__(self, other):
        if not isinstance(other, FreeEndo):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        body = ", ".join(
            f"{generator_name(self.rank, i + 1)} -> {w.to_text()}"
            for i, w in enumerate(self.images)
        )
        return f"FreeEndo({body})"


def apply(h: FreeEndo, w: GroupWord) -> GroupWord:
    return h.apply(w)


def compose(h1: FreeEndo, h2: FreeEndo) -> FreeEndo:
    return h1.compose(h2)


def is_automorphism_mod(h: FreeEndo, n: int = 2) -> bool:
    """Invertible on every nilpotent quotient, tested on H.

    Unimodularity of the abelianized matrix already forces invertibility
    of all the induced maps on F/F_n, so n does not enter the test.
    """
    return linalg.int_det(h.abelianized()) in (1, -1)


def fixes_surface_relator(h: FreeEndo, n: int) -> bool:
    """is_automorphism_mod and h(relator) = relator modulo weight n+1."""
    if h.rank % 2:
        raise ValueError("needs even rank")
    if n < 2:
        raise ValueError("level must be >= 2")
    if not is_automorphism_mod(h, n):
        return False
    relator = _surface_relator(h.rank // 2)
    weight = lcs_weight(relator.inverse() * h.apply(relator), cap=n)
    return weight is INFINITE_WEIGHT or weight is EXCEEDS_CAP


def generator_defects(h: FreeEndo):
    """The words g^-1 h(g), one per generator."""
    return [
        GroupWord.generator(h.rank, j).inverse() * h.images[j - 1]
        for j in range(1, h.rank + 1)
    ]


def weight_level(h: FreeEndo, cap: int = DEFAULT_CAP) -> int:
    """Largest n <= cap such that every generator defect has weight >= n."""
    level = cap
    for defect in generator_defects(h):
        weight = lcs_weight(defect, cap=cap)
        if weight is INFINITE_WEIGHT or weight is EXCEEDS_CAP:
            continue
        level = min(level, weight)
    return level


def johnson_map(h: FreeEndo, n: int) -> HTensorLie:
    """Degree-n defect tensor sum_i x_i (x) psi(y_i) - y_i (x) psi(x_i)."""
    rank = h.rank
    if rank % 2:
        raise ValueError("needs even rank")
    if n < 1:
        raise ValueError("degree must be >= 1")
    if not fixes_surface_relator(h, n + 1):
        raise ValueError(
            f"endomorphism does not fix the surface relator modulo weight {n + 2}"
        )
    psi = []
    for j, defect in enumerate(generator_defects(h), start=1):
        series = magnus_expand(defect, cap=n)
        low = series.min_positive_degree()
        if low is not None and low < n:
            raise ValueError(
                f"generator {generator_name(rank, j)} moves at weight {low},"
                f" needs weight >= {n}"
            )
        part = series.homogeneous_part(n)
        psi.append(
            LieElement.zero(rank, n) if part.is_zero() else from_tensor(part)
        )
    total = HTensorLie.zero(rank, n)
    for i in range(1, rank // 2 + 1):
        xi, yi = 2 * i - 1, 2 * i
        total = total + HTensorLie.single(rank, xi, psi[yi - 1])
        total = total - HTensorLie.single(rank, yi, psi[xi - 1])
    return total


def _bracketing_word(rank: int, node) -> GroupWord:
    if isinstance(node, int):
        return GroupWord.generator(rank, node)
    return commutator(_bracketing_word(rank, node[0]), _bracketing_word(rank, node[1]))


def lie_lift(element: LieElement, reverse: bool = False) -> GroupWord:
    """Fixed section sending a Lie element to a word with that leading class.

    Each Lyndon monomial goes to its nested commutator word raised to the
    integer coefficient; factors multiply in sorted monomial order, or in
    reversed order when reverse is set.
    """
    out = GroupWord.identity(element.rank)
    items = element.sorted_terms()
    if reverse:
        items = list(reversed(items))
    for word, coeff in items:
        exponent = int(coeff)
        if exponent != coeff:
            raise ValueError("lift needs integer coefficients")
        base = _bracketing_word(element.rank, lyndon_bracketing(word))
        out = out * base**exponent
    return out


def _deep_commutator(rank: int, weight: int) -> GroupWord:
    """Left-normed [[g1,g2],g1,...,g1] with the given letter count."""
    if rank < 2 or weight < 2:
        raise ValueError("needs rank >= 2 and weight >= 2")
    g1 = GroupWord.generator(rank, 1)
    out = commutator(g1, GroupWord.generator(rank, 2))
    for _ in range(weight - 2):
        out = commutator(out, g1)
    return out


def realize(theta: HTensorLie, genus: int | None = None, alternate: bool = False) -> FreeEndo:
    """Endomorphism whose defect tensor is theta, via the coordinate section
    h(x_i) = x_i * lift(-theta_{y_i}), h(y_i) = y_i * lift(theta_{x_i}).

    With alternate set, the lift multiplies monomials in reversed order and
    appends a weight n+2 commutator to every image; the defect tensor is
    unchanged, which exhibits independence of the lift.
    """
    rank = theta.rank
    if rank % 2:
        raise ValueError("needs even rank")
    if genus is not None and 2 * genus != rank:
        raise ValueError(f"genus {genus} contradicts rank {rank}")
    if not dn_contains(theta):
        raise ValueError("tensor is not in the contraction kernel")
    n = theta.degree
    junk = _deep_commutator(rank, n + 2) if alternate else GroupWord.identity(rank)
    images = []
    for i in range(1, rank // 2 + 1):
        xi, yi = 2 * i - 1, 2 * i
        on_x = lie_lift(-theta.parts[yi - 1], reverse=alternate)
        on_y = lie_lift(theta.parts[xi - 1], reverse=alternate)
        images.append(GroupWord.generator(rank, xi) * on_x * junk)
        images.append(GroupWord.generator(rank, yi) * on_y * junk)
    h = FreeEndo(images)
    if not fixes_surface_relator(h, n + 1):
        raise ValueError("coordinate section fails on this kernel element")
    return h
