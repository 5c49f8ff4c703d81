"""From colored trees to the bracket-contraction kernel and back.

Convention, fixed once: entering a trivalent vertex through slot s, the
subtree reads as [value at slot s+2, value at slot s+1] (mod 3).  Legs
read as their colors.  Reversing one cyclic order negates the value, so
the reading respects antisymmetry.
"""

from __future__ import annotations

from .diagrams import Diagram, DiagramSum, canonicalize
from .dspace import HTensorLie, bracket_contraction
from .freelie import LieElement, lie_bracket, lyndon_bracketing


def _check_tree(diagram: Diagram):
    if diagram.verts < 1:
        raise ValueError("expected a tree with at least one vertex")
    if not diagram.is_connected() or diagram.loop_rank != 0:
        raise ValueError("expected a connected tree")


def rooted_to_lie(diagram: Diagram, root: int, rank=None) -> LieElement:
    """Lie element of degree n+1 read off a degree-n tree from one leg."""
    _check_tree(diagram)
    if not 0 <= root < diagram.n_legs:
        raise ValueError(f"root {root} is not a leg index")
    rank = max(diagram.legs) if rank is None else rank
    partner = diagram._partner()
    nbase = 3 * diagram.verts

    def value(port):
        if port >= nbase:
            return LieElement.generator(rank, diagram.legs[port - nbase])
        v, s = port // 3, port % 3
        left = value(partner[3 * v + (s + 2) % 3])
        right = value(partner[3 * v + (s + 1) % 3])
        return lie_bracket(left, right)

    return value(partner[nbase + root])


def psi(tree, rank=None) -> HTensorLie:
    """Sum over legs of (leg color) tensor (tree read from that leg).

    Accepts a Diagram or a DiagramSum of trees; lands in the kernel of
    the bracket contraction.
    """
    if isinstance(tree, DiagramSum):
        parts = [
            psi_diagram(d, rank).scale(c) for d, c in tree.sorted_terms()
        ]
        if not parts:
            raise ValueError("cannot infer rank and degree from an empty sum")
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out
    return psi_diagram(tree, rank)


def psi_diagram(diagram: Diagram, rank=None) -> HTensorLie:
    _check_tree(diagram)
    rank = max(diagram.legs) if rank is None else rank
    degree = diagram.verts + 1
    out = HTensorLie.zero(rank, degree)
    for leg, color in enumerate(diagram.legs):
        out = out + HTensorLie.single(
            rank, color, rooted_to_lie(diagram, leg, rank)
        )
    return out


def psi_in_kernel(tree, rank=None) -> bool:
    return bracket_contraction(psi(tree, rank)).is_zero()


def _build_rooted_tree(root_color, bracketing):
    """Raw tree for color (x) bracket: the root leg reads the bracketing."""
    edges = []
    legs = []
    verts = 0

    def build(node):
        # Returns the upward attachment as a symbolic port.
        nonlocal verts
        if isinstance(node, int):
            legs.append(node)
            return ("leg", len(legs) - 1)
        v = verts
        verts += 1
        left, right = node
        # Entering via slot 0 the reading is [slot 2, slot 1].
        attach_left = build(left)
        attach_right = build(right)
        edges.append((("vert", 3 * v + 2), attach_left))
        edges.append((("vert", 3 * v + 1), attach_right))
        return ("vert", 3 * v)

    top = build(bracketing)
    legs.append(root_color)
    edges.append((top, ("leg", len(legs) - 1)))

    def port(sym):
        kind, k = sym
        return k if kind == "vert" else 3 * verts + k

    return verts, tuple(legs), tuple((port(a), port(b)) for a, b in edges)


def rooted_embed(theta: HTensorLie) -> DiagramSum:
    """Each term color (x) Lyndon bracket becomes its rooted binary tree."""
    if theta.degree < 2:
        raise ValueError("need degree >= 2 to form trees")
    out = DiagramSum()
    for gen0, part in enumerate(theta.parts):
        for word, coeff in part.sorted_terms():
            raw = _build_rooted_tree(gen0 + 1, lyndon_bracketing(word))
            res = canonicalize(*raw)
            if res is None:
                continue
            d, sign = res
            out = out + DiagramSum.single(d, sign * coeff)
    return out
