"""Uni-trivalent colored graphs modulo antisymmetry, and their tree spaces.

A diagram has some number of trivalent vertices, each with a cyclic order
on its three half-edges, and univalent legs colored by generator indices.
Ports number the half-edges: vertex v owns ports 3v, 3v+1, 3v+2 (the slot
order is the cyclic order), and leg j is port 3*verts + j.  Every port
lies on exactly one edge.

Reversing the cyclic order at one vertex negates a diagram.  Canonical
forms fold that sign away: canonicalize returns the minimum serialization
representative together with the relative sign, or None when the diagram
admits an orientation-reversing automorphism and is therefore zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct

from . import linalg


class MalformedDiagram(ValueError):
    pass


def _partner_list(verts, legs, edges):
    total = 3 * verts + len(legs)
    partner = [-1] * total
    for edge in edges:
        if len(edge) != 2:
            raise MalformedDiagram(f"edge {edge} is not a pair")
        p, q = edge
        for r in (p, q):
            if not 0 <= r < total:
                raise MalformedDiagram(f"port {r} out of range")
        if p == q:
            raise MalformedDiagram(f"edge {edge} joins a port to itself")
        if partner[p] != -1 or partner[q] != -1:
            raise MalformedDiagram(f"port reused by edge {edge}")
        partner[p] = q
        partner[q] = p
    if any(p == -1 for p in partner):
        raise MalformedDiagram("every port must lie on exactly one edge")
    return partner


def _components(verts, nlegs, partner):
    total = 3 * verts + nlegs
    seen = [False] * total
    comps = []
    for start in range(total):
        if seen[start]:
            continue
        stack = [start]
        ports = []
        while stack:
            p = stack.pop()
            if seen[p]:
                continue
            seen[p] = True
            ports.append(p)
            stack.append(partner[p])
            if p < 3 * verts:
                base = 3 * (p // 3)
                stack.extend((base, base + 1, base + 2))
        vids = sorted({p // 3 for p in ports if p < 3 * verts})
        lids = sorted(p - 3 * verts for p in ports if p >= 3 * verts)
        comps.append((vids, lids))
    return comps


class _Worse(Exception):
    pass


def _traverse(root, mask_bit, partner, verts, legs, rebuild=False, bound=None):
    """Serialize one component from a root port under per-vertex reflections.

    Events are flat ints: leg = (0, color); vertex first visit = (1,);
    back edge = (2, vertex discovery index, role); already-used edge = (3,).
    Entering a vertex via slot s, the unreflected child order is
    (s+2, s+1) mod 3; mask_bit(v) swaps it and costs a sign.

    With a bound stream the traversal raises _Worse as soon as its own
    stream exceeds the bound lexicographically.  With rebuild=True also
    returns (nverts, leg colors, edges) renumbered by discovery order,
    legs encoded as negative ports -1-j.
    """
    nbase = 3 * verts
    events = []
    disc = {}
    role = {}
    used = set()
    newleg = {}
    newedges = []
    newcolors = []

    if bound is None:
        emit = events.append
    else:
        blen = len(bound)
        state = [0]  # next bound index while streams agree; -1 once below

        def emit(x):
            events.append(x)
            i = state[0]
            if i >= 0:
                if i >= blen or x > bound[i]:
                    raise _Worse
                state[0] = -1 if x < bound[i] else i + 1

    def newport(p):
        if p >= nbase:
            return -1 - newleg[p]
        v, s = disc[p // 3], role[p]
        return 3 * v + s

    def describe_leg(p):
        if rebuild:
            newleg[p] = len(newcolors)
            newcolors.append(legs[p - nbase])
        emit(0)
        emit(legs[p - nbase])

    def visit(v, entry, entry_live):
        disc[v] = len(disc)
        emit(1)
        s = entry % 3
        a = 3 * v + (s + 2) % 3
        b = 3 * v + (s + 1) % 3
        if mask_bit(v):
            a, b = b, a
        # Rebuild slots keep orientation: unreflected (entry, b, a) is the
        # rotation (s, s+1, s+2) of the original cyclic order.
        role[entry], role[a], role[b] = 0, 2, 1
        order = (a, b, entry) if entry_live else (a, b)
        for p in order:
            key = (p, partner[p]) if p < partner[p] else (partner[p], p)
            if key in used:
                emit(3)
            else:
                cross(p)

    def cross(p):
        q = partner[p]
        key = (p, q) if p < q else (q, p)
        used.add(key)
        if q >= nbase:
            describe_leg(q)
            if rebuild:
                newedges.append((newport(p), newport(q)))
        else:
            v = q // 3
            if v in disc:
                emit(2)
                emit(disc[v])
                emit(role[q])
                if rebuild:
                    newedges.append((newport(p), newport(q)))
            else:
                visit(v, q, False)
                if rebuild:
                    newedges.append((newport(p), newport(q)))

    if root >= nbase:
        describe_leg(root)
        cross(root)
    else:
        visit(root // 3, root, True)
    if not rebuild:
        return tuple(events), None
    return tuple(events), (len(disc), newcolors, newedges)


def _tree_canonical(vids, lids, partner, verts, legs):
    """Canonical data for a loop-free component, bottom-up.

    Subtree streams are context-free in a tree, so each vertex picks the
    smaller of its two child orders locally; a tie there, or between two
    minimal roots with opposite accumulated signs, means the component is
    zero by AS and None is returned so the caller falls back to the mask
    search (which still owes a minimal stream as a stable key).  Event
    language identical to _traverse.
    """
    nbase = 3 * verts

    def sub(port):
        # events after the visit marker when entering through `port`
        v, s = divmod(port, 3)
        ra = branch(partner[3 * v + (s + 2) % 3])
        if ra is None:
            return None
        rb = branch(partner[3 * v + (s + 1) % 3])
        if rb is None:
            return None
        ea, sga = ra
        eb, sgb = rb
        unflipped = ea + eb
        flipped = eb + ea
        if unflipped < flipped:
            return unflipped, sga * sgb
        if flipped < unflipped:
            return flipped, -sga * sgb
        return None  # both orders minimal: zero by antisymmetry

    def branch(q):
        if q >= nbase:
            return (0, legs[q - nbase]), 1
        r = sub(q)
        if r is None:
            return None
        return (1,) + r[0], r[1]

    low = min(legs[j] for j in lids)
    best = None
    signs = set()
    for j in lids:
        if legs[j] != low:
            continue
        r = branch(partner[nbase + j])
        if r is None:
            return None
        stream = (0, low) + r[0]
        if best is None or stream < best:
            best = stream
            signs = {r[1]}
        elif stream == best:
            signs.add(r[1])
    if len(signs) == 2:
        return None
    return best, signs.pop(), _replay_tree(best)


def _replay_tree(stream):
    """Rebuild piece data (nverts, colors, edges) from a tree stream."""
    colors = [stream[1]]
    edges = []
    nv = 0
    stack = [[-1]]
    i = 2
    while i < len(stream):
        while not stack[-1]:
            stack.pop()
        parent = stack[-1].pop()
        ev = stream[i]
        if ev == 1:
            v = nv
            nv += 1
            edges.append((parent, 3 * v))
            stack.append([3 * v + 1, 3 * v + 2])
            i += 1
        else:
            j = len(colors)
            colors.append(stream[i + 1])
            edges.append((parent, -1 - j))
            i += 2
    return nv, colors, edges


def _branch_canonical(roots, partner, verts, legs):
    """Minimal event stream over roots and reflections, by backtracking.

    Each vertex's reflection is fixed when it is first visited and both
    choices are explored depth-first, so stream prefixes are shared and a
    branch dies the moment it exceeds the best complete stream so far.
    Returns (stream, signs, winner): signs is the set of reflection
    parities attaining the stream, winner a (root, reflections) pair that
    attained it first.  Event language identical to _traverse.
    """
    nbase = 3 * verts
    events = []
    disc = {}
    role = {}
    used = set()
    flips = {}
    trail = []
    best = None
    tie = 0  # length of the common prefix of events and best
    signs = set()
    winner = None

    def emit(x):
        nonlocal tie
        n = len(events)
        if best is not None and tie == n:
            if n >= len(best) or x > best[n]:
                raise _Worse
            if x == best[n]:
                tie = n + 1
        events.append(x)

    def rollback(ne, nt):
        nonlocal tie
        del events[ne:]
        if tie > ne:
            tie = ne
        while len(trail) > nt:
            kind, x = trail.pop()
            if kind == 0:
                used.discard(x)
            elif kind == 1:
                del disc[x]
                del flips[x]
            else:
                del role[x]

    def finish(root):
        nonlocal best, tie, signs, winner
        n = len(events)
        s = -1 if sum(flips.values()) % 2 else 1
        if best is None or tie < n or n < len(best):
            best = events.copy()
            tie = n
            signs = {s}
            winner = (root, dict(flips))
        else:
            signs.add(s)

    def step(stack, root):
        while True:
            if stack is None:
                finish(root)
                return
            p, stack = stack
            q = partner[p]
            key = (p, q) if p < q else (q, p)
            if key in used:
                emit(3)
                continue
            if q >= nbase:
                used.add(key)
                trail.append((0, key))
                emit(0)
                emit(legs[q - nbase])
                continue
            v = q // 3
            if v in disc:
                used.add(key)
                trail.append((0, key))
                emit(2)
                emit(disc[v])
                emit(role[q])
                continue
            used.add(key)
            trail.append((0, key))
            enter(v, q, stack, root)
            return

    def enter(v, q, rest, root):
        # first visit of v through port q: try both reflections
        disc[v] = len(disc)
        flips[v] = 0
        trail.append((1, v))
        emit(1)
        s = q % 3
        a0 = 3 * v + (s + 2) % 3
        b0 = 3 * v + (s + 1) % 3
        role[q] = 0
        trail.append((2, q))
        ne = len(events)
        nt = len(trail)
        for flip in (0, 1):
            a, b = (b0, a0) if flip else (a0, b0)
            role[a] = 2
            role[b] = 1
            trail.append((2, a))
            trail.append((2, b))
            flips[v] = flip
            try:
                step((a, (b, rest)), root)
            except _Worse:
                pass
            rollback(ne, nt)

    for root in roots:
        try:
            if root >= nbase:
                emit(0)
                emit(legs[root - nbase])
                step((root, None), root)
            else:
                enter(root // 3, root, (root, None), root)
        except _Worse:
            pass
        rollback(0, 0)
    return best, signs, winner


def _component_canonical(vids, lids, partner, verts, legs):
    """Minimal serialization of one component.

    Returns (key, sign, rebuilt) with sign 0 when both signs reach the
    minimum (the component is zero by antisymmetry; rebuilt is None then).
    """
    k, nl = len(vids), len(lids)
    if nl == k + 2:  # connected and loop-free
        out = _tree_canonical(vids, lids, partner, verts, legs)
        if out is not None:
            return out
    nbase = 3 * verts
    if lids:
        # only a minimal-color leg can start a minimal stream
        low = min(legs[j] for j in lids)
        roots = [nbase + j for j in lids if legs[j] == low]
    else:
        roots = [3 * v + s for v in vids for s in range(3)]
    best, signs, winner = _branch_canonical(roots, partner, verts, legs)
    if len(signs) == 2:
        return tuple(best), 0, None
    root, wf = winner
    _, rebuilt = _traverse(
        root, lambda v: wf[v], partner, verts, legs, rebuild=True
    )
    return tuple(best), signs.pop(), rebuilt


class Diagram:
    """Canonical immutable value; build via canonicalize, never directly."""

    __slots__ = ("verts", "legs", "edges")

    def __init__(self, verts, legs, edges):
        self.verts = verts
        self.legs = tuple(legs)
        self.edges = tuple(sorted(tuple(sorted(e)) for e in edges))

    @property
    def degree(self):
        return self.verts

    @property
    def n_legs(self):
        return len(self.legs)

    @property
    def loop_rank(self):
        comps = _components(self.verts, len(self.legs), self._partner())
        return len(self.edges) - (self.verts + len(self.legs)) + len(comps)

    def _partner(self):
        return _partner_list(self.verts, self.legs, self.edges)

    def is_connected(self):
        if self.verts == 0 and not self.legs:
            return False
        return len(_components(self.verts, len(self.legs), self._partner())) == 1

    def _key(self):
        return (self.verts, self.legs, self.edges)

    def __eq__(self, other):
        return isinstance(other, Diagram) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < other._key()

    def to_json(self):
        return {
            "verts": self.verts,
            "legs": [{"color": c} for c in self.legs],
            "edges": [list(e) for e in self.edges],
            "cyclic": [[3 * v, 3 * v + 1, 3 * v + 2] for v in range(self.verts)],
        }

    def __repr__(self):
        if self.verts == 0 and not self.legs:
            return "empty"
        legs = ",".join(f"g{c}" for c in self.legs)
        edges = " ".join(f"{p}-{q}" for p, q in self.edges)
        return f"diagram(v={self.verts}; legs {legs or '-'}; {edges})"


EMPTY_DIAGRAM = Diagram(0, (), ())

_CANON_MEMO: dict = {}

_COMP_MEMO: dict = {}


_MISS = object()


def canonicalize(verts, legs, edges):
    """(canonical Diagram, sign) for a raw encoding, or None if AS-zero."""
    legs = tuple(legs)
    raw = (verts, legs, tuple(sorted(tuple(sorted(e)) for e in edges)))
    hit = _CANON_MEMO.get(raw, _MISS)
    if hit is not _MISS:
        return hit
    partner = _partner_list(*raw)
    comps = _components(verts, len(legs), partner)
    pieces = []
    sign = 1
    nbase = 3 * verts
    for vids, lids in comps:
        # canonical data is isomorphism-invariant, so cache it per component
        # keyed by the induced sub-raw (order-preserving relabeling)
        vloc = {v: i for i, v in enumerate(vids)}
        lloc = {j: i for i, j in enumerate(lids)}
        k = len(vids)

        def local(p):
            if p >= nbase:
                return 3 * k + lloc[p - nbase]
            return 3 * vloc[p // 3] + p % 3

        ports = [3 * v + s for v in vids for s in range(3)]
        ports += [nbase + j for j in lids]
        cedges = tuple(
            sorted(
                tuple(sorted((local(p), local(partner[p]))))
                for p in ports
                if p < partner[p]
            )
        )
        ckey = (k, tuple(legs[j] for j in lids), cedges)
        hit = _COMP_MEMO.get(ckey, _MISS)
        if hit is _MISS:
            hit = _component_canonical(vids, lids, partner, verts, legs)
            _COMP_MEMO[ckey] = hit
        key, csign, rebuilt = hit
        if csign == 0:
            _CANON_MEMO[raw] = None
            return None
        sign *= csign
        pieces.append((key, rebuilt))
    pieces.sort(key=lambda t: t[0])
    # Assemble: vertex blocks per component in key order, then all legs.
    nv = sum(piece[1][0] for piece in pieces)
    colors = []
    symbolic = []  # endpoints: nonneg vertex port or ("leg", global index)
    voff = 0
    for _, (cv, ccolors, cedges) in pieces:
        loff = len(colors)
        colors.extend(ccolors)
        for p, q in cedges:
            pair = []
            for r in (p, q):
                if r >= 0:
                    pair.append(r + 3 * voff)
                else:
                    pair.append(("leg", loff + (-1 - r)))
            symbolic.append(pair)
        voff += cv
    fixed = [
        tuple(3 * nv + r[1] if isinstance(r, tuple) else r for r in pair)
        for pair in symbolic
    ]
    result = (Diagram(nv, colors, fixed), sign)
    _CANON_MEMO[raw] = result
    return result


class DiagramSum:
    """Finite rational combination of canonical diagrams."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for d, c in (terms or {}).items():
            if c:
                clean[d] = c
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def single(cls, diagram, coeff=1):
        return cls({diagram: coeff})

    @classmethod
    def from_raw(cls, verts, legs, edges, coeff=1):
        out = canonicalize(verts, legs, edges)
        if out is None or not coeff:
            return cls()
        d, sign = out
        return cls({d: sign * coeff})

    def add_raw(self, verts, legs, edges, coeff=1):
        """In-place accumulation; used by the hot gluing loops."""
        out = canonicalize(verts, legs, edges)
        if out is None or not coeff:
            return
        d, sign = out
        new = self.terms.get(d, 0) + sign * coeff
        if new:
            self.terms[d] = new
        else:
            del self.terms[d]

    def __add__(self, other):
        terms = dict(self.terms)
        for d, c in other.terms.items():
            new = terms.get(d, 0) + c
            if new:
                terms[d] = new
            else:
                del terms[d]
        return DiagramSum(terms)

    def __neg__(self):
        return DiagramSum({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        if not factor:
            return DiagramSum()
        return DiagramSum({d: factor * c for d, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, DiagramSum) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0]._key())

    def to_json(self):
        return {
            "terms": [
                {"coeff": str(Fraction(c)), "diagram": d.to_json()}
                for d, c in self.sorted_terms()
            ]
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.sorted_terms():
            if c == 1:
                parts.append(f"{d!r}")
            elif c == -1:
                parts.append(f"-{d!r}")
            else:
                parts.append(f"{c}*{d!r}")
        return " + ".join(parts).replace("+ -", "- ")


def tripod_raw(a, b, c):
    """One vertex, legs (a, b, c) attached in slot order."""
    return 1, (a, b, c), ((0, 3), (1, 4), (2, 5))


def expand_multilinear(verts, vector_legs, edges):
    """Expand legs colored by integer vectors {gen: coeff} into basis colors."""
    supports = []
    for vec in vector_legs:
        items = sorted((g, c) for g, c in vec.items() if c)
        supports.append(items)
    out = DiagramSum()
    for choice in _iproduct(*supports):
        colors = tuple(g for g, _ in choice)
        coeff = 1
        for _, c in choice:
            coeff *= c
        out = out + DiagramSum.from_raw(verts, colors, edges, coeff)
    return out


def glue_raw(d1: Diagram, d2: Diagram, pairs):
    """Raw disjoint union of two diagrams with matched legs fused into edges.

    pairs are (leg index of d1, leg index of d2); struts cannot appear as
    inputs, so a glued leg's partner is always a vertex port or a kept leg
    of the same factor.
    """
    g1 = {i for i, _ in pairs}
    g2 = {j for _, j in pairs}
    verts = d1.verts + d2.verts
    colors = []
    portmap = {}
    base1, base2 = 3 * d1.verts, 3 * d2.verts

    for v in range(d1.verts):
        for s in range(3):
            portmap[(1, 3 * v + s)] = 3 * v + s
    for v in range(d2.verts):
        for s in range(3):
            portmap[(2, 3 * v + s)] = 3 * (d1.verts + v) + s
    legbase = 3 * verts
    for j, c in enumerate(d1.legs):
        if j not in g1:
            portmap[(1, base1 + j)] = legbase + len(colors)
            colors.append(c)
    for j, c in enumerate(d2.legs):
        if j not in g2:
            portmap[(2, base2 + j)] = legbase + len(colors)
            colors.append(c)

    p1 = d1._partner()
    p2 = d2._partner()
    edges = []
    for p, q in d1.edges:
        if (p >= base1 and p - base1 in g1) or (q >= base1 and q - base1 in g1):
            continue
        edges.append((portmap[(1, p)], portmap[(1, q)]))
    for p, q in d2.edges:
        if (p >= base2 and p - base2 in g2) or (q >= base2 and q - base2 in g2):
            continue
        edges.append((portmap[(2, p)], portmap[(2, q)]))
    for i, j in pairs:
        a = p1[base1 + i]
        b = p2[base2 + j]
        if (a >= base1 and a - base1 in g1) or (b >= base2 and b - base2 in g2):
            raise MalformedDiagram("glued legs may not pair with glued legs")
        edges.append((portmap[(1, a)], portmap[(2, b)]))
    return verts, tuple(colors), tuple(edges)


def _perfect_matchings(ports):
    if not ports:
        yield []
        return
    first = ports[0]
    for k in range(1, len(ports)):
        rest = ports[1:k] + ports[k + 1 :]
        for sub in _perfect_matchings(rest):
            yield [(first, ports[k])] + sub


def _shape_reps(nv, nl):
    """Connected uncolored shapes: one raw encoding per isomorphism class."""
    total = 3 * nv + nl
    if total % 2 or nv < 1:
        return []
    legs = tuple(1 for _ in range(nl))
    seen = {}
    for matching in _perfect_matchings(list(range(total))):
        if any(p >= 3 * nv and q >= 3 * nv for p, q in matching):
            continue  # a leg-leg edge is a strut component
        raw = (nv, legs, tuple(matching))
        partner = _partner_list(*raw)
        comps = _components(nv, nl, partner)
        if len(comps) != 1:
            continue
        key, _, _ = _component_canonical(comps[0][0], comps[0][1], partner, nv, legs)
        if key not in seen:
            seen[key] = raw
    return [seen[k] for k in sorted(seen)]


def connected_diagrams(rank, max_degree, max_legs):
    """All nonzero connected diagrams within the bounds, colors 1..rank."""
    if max_degree > 3:
        raise ValueError("connected enumeration is bounded at degree 3")
    found = {}
    for nv in range(1, max_degree + 1):
        for nl in range(0, max_legs + 1):
            for shape in _shape_reps(nv, nl):
                verts, _, edges = shape
                for colors in _iproduct(range(1, rank + 1), repeat=nl):
                    out = canonicalize(verts, colors, edges)
                    if out is None:
                        continue
                    d, _ = out
                    found[d._key()] = d
    return [found[k] for k in sorted(found)]


def _expand_cherry(raw, leg_index, a, b):
    """Replace one leg by a new vertex carrying two fresh legs (a, b)."""
    verts, legs, edges = raw
    old_legbase = 3 * verts
    nverts = verts + 1
    new_legbase = 3 * nverts
    kept = [c for j, c in enumerate(legs) if j != leg_index]
    colors = tuple(kept) + (a, b)

    def remap(p):
        if p < old_legbase:
            return p
        j = p - old_legbase
        if j == leg_index:
            return 3 * verts  # slot 0 of the new vertex
        jj = j - 1 if j > leg_index else j
        return new_legbase + jj

    edges2 = [(remap(p), remap(q)) for p, q in edges]
    edges2.append((3 * verts + 1, new_legbase + len(kept)))
    edges2.append((3 * verts + 2, new_legbase + len(kept) + 1))
    return nverts, colors, tuple(edges2)


def _class_key(raw):
    verts, legs, edges = raw
    partner = _partner_list(verts, legs, edges)
    comps = _components(verts, len(legs), partner)
    keys = []
    for vids, lids in comps:
        key, _, _ = _component_canonical(vids, lids, partner, verts, legs)
        keys.append(key)
    return tuple(sorted(keys))


def tree_class_reps(n, rank):
    """One raw tree per isomorphism class, degree n, including AS-zero ones."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    reps = {}
    for colors in _iproduct(range(1, rank + 1), repeat=3):
        raw = tripod_raw(*colors)
        reps.setdefault(_class_key(raw), raw)
    for _ in range(n - 1):
        next_reps = {}
        for raw in reps.values():
            nlegs = len(raw[1])
            for leg in range(nlegs):
                for a in range(1, rank + 1):
                    for b in range(1, rank + 1):
                        grown = _expand_cherry(raw, leg, a, b)
                        key = _class_key(grown)
                        if key not in next_reps:
                            next_reps[key] = grown
        reps = next_reps
    return [reps[k] for k in sorted(reps)]


def all_trees(n, rank):
    """Canonical nonzero degree-n trees with colors in 1..rank, sorted."""
    out = {}
    for raw in tree_class_reps(n, rank):
        res = canonicalize(*raw)
        if res is not None:
            d, _ = res
            out[d._key()] = d
    return [out[k] for k in sorted(out)]


def _ihx_terms(raw, p, q):
    """The three raw graphs of the relation at internal edge (p, q).

    Cutting the edge leaves four stubs a, b, c, d read off the cyclic
    orders; the two rewirings below realize the Jacobi rearrangement
    [c,[b,a]] = [b,[c,a]] + [a,[b,c]] under the rooted-reading convention,
    so the relator is I - H - X.
    """
    verts, legs, edges = raw
    u, su = p // 3, p % 3
    w, sw = q // 3, q % 3
    if u == w:
        raise ValueError("relation undefined on a self-loop edge")
    pa1 = 3 * u + (su + 1) % 3
    pa2 = 3 * u + (su + 2) % 3
    pb1 = 3 * w + (sw + 1) % 3
    pb2 = 3 * w + (sw + 2) % 3

    def rewire(mapping):
        out = []
        for e in edges:
            x, y = e
            if (x, y) in ((p, q), (q, p)):
                continue
            out.append((mapping.get(x, x), mapping.get(y, y)))
        out.append((p, pb1))
        return verts, legs, tuple(out)

    term_h = rewire({pa2: pb2, pb1: pa2, pb2: q})
    term_x = rewire({pa1: pb2, pb1: pa1, pb2: q})
    return raw, term_h, term_x


def ihx_relators(n, rank, trees_only=True):
    """All single-edge relators on degree-n diagram classes.

    Trees always; with trees_only=False also the connected loop classes
    (degree <= 3 enumeration bound).  Degree 1 has no internal edges.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    reps = list(tree_class_reps(n, rank))
    if not trees_only:
        if n > 3:
            raise ValueError("loop enumeration is bounded at degree 3")
        # Connected loop shapes have at most n legs, same parity as n.
        for nl in range(n % 2, n + 1, 2):
            for shape in _shape_reps(n, nl):
                verts, _, edges = shape
                if len(edges) - (verts + nl) + 1 < 1:
                    continue  # trees already covered
                for colors in _iproduct(range(1, rank + 1), repeat=nl):
                    reps.append((verts, colors, edges))
    relators = []
    for raw in reps:
        verts, legs, edges = raw
        internal = [
            (p, q)
            for p, q in sorted(tuple(sorted(e)) for e in edges)
            if p < 3 * verts and q < 3 * verts and p // 3 != q // 3
        ]
        for p, q in internal:
            term_i, term_h, term_x = _ihx_terms(raw, p, q)
            rel = (
                DiagramSum.from_raw(*term_i)
                - DiagramSum.from_raw(*term_h)
                - DiagramSum.from_raw(*term_x)
            )
            if not rel.is_zero():
                relators.append(rel)
    return relators


class TreeSpace:
    """Degree-n trees modulo antisymmetry and the single-edge relations.

    trees is the canonical spanning set; basis lists the quotient basis
    classes (non-pivot trees) as singleton sums.
    """

    def __init__(self, n, rank):
        if not 1 <= n <= 3:
            raise ValueError("tree spaces are computed for degrees 1..3")
        if rank > 6:
            raise ValueError("tree spaces are computed for rank <= 6")
        self.degree = n
        self.rank = rank
        self.trees = all_trees(n, rank)
        self._index = {d: k for k, d in enumerate(self.trees)}
        rows = []
        for rel in ihx_relators(n, rank, trees_only=True):
            rows.append(
                {self._index[d]: Fraction(c) for d, c in rel.terms.items()}
            )
        reduced, pivots = linalg.rref(rows)
        self._rows = reduced
        self.pivots = pivots
        free = [k for k in range(len(self.trees)) if k not in set(pivots)]
        self._free = free
        self.dimension = len(free)
        self.basis = [DiagramSum.single(self.trees[k]) for k in free]

    def coordinates(self, dsum: DiagramSum):
        """Quotient coordinates of a tree sum over the free basis."""
        vec = {}
        for d, c in dsum.terms.items():
            if d not in self._index:
                raise ValueError(f"diagram {d!r} is not a degree-{self.degree} tree here")
            vec[self._index[d]] = Fraction(c)
        for row in self._rows:
            lead = min(row)
            if lead in vec:
                linalg.axpy(vec, row, -vec[lead] / row[lead])
        return [vec.get(k, Fraction(0)) for k in self._free]

    def is_zero(self, dsum: DiagramSum):
        return all(c == 0 for c in self.coordinates(dsum))


def tree_space(n, rank):
    return TreeSpace(n, rank)
