"""Planar knot-diagram core.

A diagram is stored as PD-style crossing records.  Each crossing holds the
four incident edge ids in counterclockwise order; by convention the strand
passing through slots (0, 2) is the under strand and the strand through
slots (1, 3) is the over strand.  Rotating a record by two slots is a
representational gauge and leaves the diagram unchanged.

Orientation is not stored: for knots, crossing signs are independent of the
traversal direction, so signs, writhe and Gauss data are derived from a
deterministic traversal that starts at the basepoint edge.

Edge ids are arbitrary non-negative integers.  A 0-crossing unknot is the
fragment with no crossings and ``free_loops == 1``; its single circle is
addressable as edge 0 for attachment purposes.
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple, Sequence


class MalformedDiagram(ValueError):
    """Raised when text input or crossing data fails validation."""


class NotRealizable(ValueError):
    """Raised when a DT code admits no planar realization."""


class Crossing(NamedTuple):
    """One crossing: edge ids at slots 0..3 ccw; slots (0,2) carry the under strand."""

    ends: tuple[int, int, int, int]

    def rotated(self, r: int) -> "Crossing":
        e = self.ends
        return Crossing((e[r % 4], e[(r + 1) % 4], e[(r + 2) % 4], e[(r + 3) % 4]))

    def mirrored(self) -> "Crossing":
        # Swapping over/under keeps the ccw order and moves the under pair to (1,3).
        return self.rotated(1)

    def relabeled(self, mapping: dict[int, int]) -> "Crossing":
        return Crossing(tuple(mapping.get(e, e) for e in self.ends))  # type: ignore[arg-type]


# An occurrence of an edge end: ("x", crossing_index, slot) or ("b", leg_index, 0).
Occ = tuple[str, int, int]
# A dart travels edge e from occurrence[dir] toward occurrence[1 - dir].
Dart = tuple[int, int]


class Fragment:
    """Crossing soup with optional boundary legs and free (crossing-less) loops.

    Immutable after construction.  ``legs`` lists the edge ids that end on
    the boundary, in ccw order around the boundary circle.
    """

    def __init__(self, crossings: Iterable[Crossing] = (), legs: Sequence[int] = (),
                 free_loops: int = 0):
        self.crossings: tuple[Crossing, ...] = tuple(
            c if isinstance(c, Crossing) else Crossing(tuple(c)) for c in crossings)
        self.legs: tuple[int, ...] = tuple(legs)
        self.free_loops = int(free_loops)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def occurrences(self) -> dict[int, list[Occ]]:
        occ: dict[int, list[Occ]] = {}
        for ci, c in enumerate(self.crossings):
            for slot, e in enumerate(c.ends):
                occ.setdefault(e, []).append(("x", ci, slot))
        for li, e in enumerate(self.legs):
            occ.setdefault(e, []).append(("b", li, 0))
        return occ

    def edges(self) -> list[int]:
        return sorted(self.occurrences)

    def check_edge_pairing(self) -> None:
        for e, occs in self.occurrences.items():
            if len(occs) != 2:
                raise MalformedDiagram(
                    f"edge {e} occurs {len(occs)} times (expected exactly 2)")

    # -- traversal -------------------------------------------------------

    def _arrival(self, dart: Dart) -> Occ:
        e, d = dart
        return self.occurrences[e][1 - d]

    def _next_strand_dart(self, dart: Dart) -> Dart:
        """Follow the strand through the crossing at the end of ``dart``."""
        kind, ci, slot = self._arrival(dart)
        if kind != "x":
            raise MalformedDiagram("strand walk ran into a boundary leg")
        out = (slot + 2) % 4
        f = self.crossings[ci].ends[out]
        d = 0 if self.occurrences[f][0] == ("x", ci, out) else 1
        return (f, d)

    def closed_components(self) -> list[list[Dart]]:
        """Strand walks of all closed components (legs must pair separately)."""
        self.check_edge_pairing()
        leg_edges = set(self.legs)
        visited: set[int] = set()
        comps = []
        for e in self.edges():
            if e in visited or e in leg_edges:
                continue
            if any(k == "b" for k, _, _ in self.occurrences[e]):
                visited.add(e)
                continue
            walk = []
            cur: Dart = (e, 0)
            while True:
                edge, _ = cur
                if edge in visited:
                    raise MalformedDiagram("strand walk revisited an edge")
                visited.add(edge)
                walk.append(cur)
                cur = self._next_strand_dart(cur)
                if cur == (e, 0):
                    break
            comps.append(walk)
        return comps

    def boundary_strands(self) -> list[list[Dart]]:
        """Strand walks from each leg to its partner leg, in leg order."""
        self.check_edge_pairing()
        strands = []
        done: set[int] = set()
        for li, e in enumerate(self.legs):
            if li in done:
                continue
            d = 0 if self.occurrences[e][0] == ("b", li, 0) else 1
            walk: list[Dart] = [(e, d)]
            while True:
                kind, idx, _ = self._arrival(walk[-1])
                if kind == "b":
                    done.add(idx)
                    break
                walk.append(self._next_strand_dart(walk[-1]))
            done.add(li)
            strands.append(walk)
        return strands

    def component_count(self) -> int:
        return len(self.closed_components()) + len(self.boundary_strands()) + self.free_loops

    # -- faces -----------------------------------------------------------

    def _next_face_dart(self, dart: Dart) -> Dart:
        kind, ci, slot = self._arrival(dart)
        if kind == "b":
            return (dart[0], 1 - dart[1])
        nxt = (slot + 1) % 4
        f = self.crossings[ci].ends[nxt]
        d = 0 if self.occurrences[f][0] == ("x", ci, nxt) else 1
        return (f, d)

    def face_walks(self) -> list[list[Dart]]:
        """Orbits of the left-turn dart map; each walk keeps its face on the right."""
        if not self.crossings and self.free_loops == 1 and not self.legs:
            return [[(0, 0)], [(0, 1)]]
        seen: set[Dart] = set()
        walks = []
        for e in self.edges():
            for d in (0, 1):
                start = (e, d)
                if start in seen:
                    continue
                walk = []
                cur = start
                while cur not in seen:
                    seen.add(cur)
                    walk.append(cur)
                    cur = self._next_face_dart(cur)
                walks.append(walk)
        return walks

    def is_planar(self) -> bool:
        """Euler test for a closed connected diagram (V - E + F == 2)."""
        if not self.crossings:
            return True
        if self.legs or self.free_loops:
            raise ValueError("planarity test applies to closed connected fragments")
        n = self.n_crossings
        return len(self.face_walks()) == n + 2

    def max_edge_id(self) -> int:
        ids = list(self.occurrences)
        return max(ids) if ids else 0

    def relabeled(self, mapping: dict[int, int]) -> "Fragment":
        return Fragment(
            [c.relabeled(mapping) for c in self.crossings],
            [mapping.get(e, e) for e in self.legs],
            self.free_loops,
        )


class _IdJoiner:
    """Union-find over edge ids used when splicing strands.

    ``join(u, v)`` fuses one stub end of u with one stub end of v; fusing the
    two ends of what is already a single edge closes a free loop.
    """

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}
        self.loops = 0

    def find(self, x: int) -> int:
        path = []
        while x in self.parent:
            path.append(x)
            x = self.parent[x]
        for p in path:
            self.parent[p] = x
        return x

    def join(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            self.loops += 1
        else:
            self.parent[rv] = ru

    def apply(self, crossings: Iterable[Crossing]) -> list[Crossing]:
        return [Crossing(tuple(self.find(e) for e in c.ends)) for c in crossings]  # type: ignore[arg-type]


class Diagram(Fragment):
    """A closed single-component (knot) diagram with a marked basepoint edge."""

    def __init__(self, crossings: Iterable[Crossing] = (), free_loops: int = 0,
                 basepoint: int | None = None, check: bool = True):
        super().__init__(crossings, (), free_loops)
        if basepoint is None:
            basepoint = min(self.occurrences) if self.occurrences else 0
        self.basepoint = basepoint
        if check:
            self.validate()

    @classmethod
    def unknot(cls) -> "Diagram":
        return cls((), free_loops=1)

    def validate(self) -> None:
        if self.legs:
            raise MalformedDiagram("knot diagram cannot have boundary legs")
        if not self.crossings:
            if self.free_loops != 1:
                raise MalformedDiagram("crossing-free diagram must be a single circle")
            return
        if self.free_loops:
            raise MalformedDiagram("knot diagram with crossings cannot carry free loops")
        self.check_edge_pairing()
        comps = self.closed_components()
        if len(comps) != 1:
            raise MalformedDiagram(f"diagram has {len(comps)} components (expected 1)")
        if len(comps[0]) != 2 * self.n_crossings:
            raise MalformedDiagram("traversal does not cover every edge")
        if self.basepoint not in self.occurrences:
            raise MalformedDiagram(f"basepoint edge {self.basepoint} not present")

    # -- derived orientation data ---------------------------------------

    @cached_property
    def knot_walk(self) -> list[Dart]:
        """Canonical traversal: starts at the basepoint edge with dir 0."""
        if not self.crossings:
            return []
        walk = []
        cur: Dart = (self.basepoint, 0)
        while True:
            walk.append(cur)
            cur = self._next_strand_dart(cur)
            if cur == (self.basepoint, 0):
                return walk

    @cached_property
    def passages(self) -> list[tuple[int, int]]:
        """(crossing index, arrival slot) at each traversal step."""
        out = []
        for dart in self.knot_walk:
            kind, ci, slot = self._arrival(dart)
            out.append((ci, slot))
        return out

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs derived from the canonical traversal."""
        in_slots: dict[int, list[int]] = {}
        for ci, slot in self.passages:
            in_slots.setdefault(ci, []).append(slot)
        signs = [0] * self.n_crossings
        for ci, slots in in_slots.items():
            u_in = next(s for s in slots if s in (0, 2))
            o_in = next(s for s in slots if s in (1, 3))
            signs[ci] = 1 if (o_in - u_in) % 4 == 3 else -1
        return tuple(signs)

    def writhe(self) -> int:
        return sum(self.signs)

    def _gauss_sequence(self, reverse: bool = False) -> list[tuple[int, bool, int]]:
        """(crossing, is_over, sign) per passage, optionally reversed traversal."""
        seq = [(ci, slot in (1, 3), self.signs[ci]) for ci, slot in self.passages]
        if reverse:
            seq = seq[::-1]
        return seq

    @cached_property
    def canonical_key(self) -> str:
        """Minimal labeled Gauss string over basepoint rotations and reversal.

        Equal for diagrams differing by relabeling or basepoint moves; this
        is a diagram-level fingerprint, not a knot invariant.
        """
        if not self.crossings:
            return "unknot"
        best: str | None = None
        for reverse in (False, True):
            seq = self._gauss_sequence(reverse)
            m = len(seq)
            for r in range(m):
                label: dict[int, int] = {}
                parts = []
                for i in range(m):
                    ci, over, sign = seq[(r + i) % m]
                    lab = label.setdefault(ci, len(label))
                    parts.append(f"{lab}{'o' if over else 'u'}{'+' if sign > 0 else '-'}")
                cand = ";".join(parts)
                if best is None or cand < best:
                    best = cand
        return best  # type: ignore[return-value]

    # -- basic operations -------------------------------------------------

    def mirror(self) -> "Diagram":
        """Flip every over/under assignment."""
        return Diagram([c.mirrored() for c in self.crossings], self.free_loops,
                       self.basepoint, check=False)

    def relabeled(self, mapping: dict[int, int]) -> "Diagram":
        return Diagram([c.relabeled(mapping) for c in self.crossings], self.free_loops,
                       mapping.get(self.basepoint, self.basepoint), check=False)

    def shifted(self, delta: int) -> "Diagram":
        return self.relabeled({e: e + delta for e in self.occurrences})

    def connected_sum(self, other: "Diagram") -> "Diagram":
        """Connected sum taken at the basepoint edges of both diagrams."""
        if not self.crossings:
            return other
        if not other.crossings:
            return self
        shift = self.max_edge_id() + 1
        d2 = other.shifted(shift)
        e1 = self.basepoint
        e2 = d2.basepoint
        # Cut both basepoint edges and reconnect crosswise, respecting the
        # canonical flow occ0 -> occ1 on each.
        cr1 = list(self.crossings)
        cr2 = list(d2.crossings)
        (k1, c1, s1) = self.occurrences[e1][1]
        (k2, c2, s2) = d2.occurrences[e2][1]
        assert k1 == "x" and k2 == "x"
        # e1 now flows into d2's head occurrence, e2 into d1's.
        ends2 = list(cr2[c2].ends)
        ends2[s2] = e1
        cr2[c2] = Crossing(tuple(ends2))
        ends1 = list(cr1[c1].ends)
        ends1[s1] = e2
        cr1[c1] = Crossing(tuple(ends1))
        return Diagram(cr1 + cr2, 0, self.basepoint)


# -- PD text format -------------------------------------------------------

_PD_TOKEN = re.compile(r"X\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]")


def parse_pd(text: str) -> Diagram:
    """Parse ``X(a,b,c,d)`` tuples (ccw from the incoming under-strand).

    The empty string gives the 0-crossing unknot.  The basepoint is the
    lowest-numbered edge.
    """
    stripped = text.strip()
    if not stripped:
        return Diagram.unknot()
    crossings = []
    pos = 0
    for m in _PD_TOKEN.finditer(stripped):
        if stripped[pos:m.start()].strip(" ,;\t\n"):
            raise MalformedDiagram(
                f"unexpected text in PD code: {stripped[pos:m.start()]!r}")
        crossings.append(Crossing(tuple(int(g) for g in m.groups())))  # type: ignore[arg-type]
        pos = m.end()
    if stripped[pos:].strip(" ,;\t\n"):
        raise MalformedDiagram(f"unexpected text in PD code: {stripped[pos:]!r}")
    if not crossings:
        raise MalformedDiagram("no X(a,b,c,d) tuples found")
    return Diagram(crossings)


def emit_pd(d: Diagram) -> str:
    """Emit PD text with edges renumbered 1..2n along the canonical traversal."""
    if not d.crossings:
        return ""
    number: dict[int, int] = {}
    for i, (e, _) in enumerate(d.knot_walk):
        number[e] = i + 1
    under_in: dict[int, int] = {}
    order: list[int] = []
    for ci, slot in d.passages:
        if slot in (0, 2):
            under_in[ci] = slot
        if ci not in order:
            order.append(ci)
    parts = []
    for ci in order:
        rotated = d.crossings[ci].rotated(under_in[ci])
        parts.append("X(%d,%d,%d,%d)" % tuple(number[e] for e in rotated.ends))
    return " ".join(parts)


# -- DT format ------------------------------------------------------------

def parse_dt(text: str) -> Diagram:
    """Parse a Dowker-Thistlethwaite code (space-separated even integers).

    Entry ``a_i`` pairs odd position 2i-1 with even position ``|a_i|``; the
    passage at the even position goes over exactly when the entry is
    positive.  Codes without a planar realization are rejected.
    """
    stripped = text.strip()
    if not stripped:
        return Diagram.unknot()
    try:
        entries = [int(tok) for tok in stripped.replace(",", " ").split()]
    except ValueError as exc:
        raise MalformedDiagram(f"bad DT token in {text!r}") from exc
    n = len(entries)
    if any(a == 0 or a % 2 for a in entries):
        raise MalformedDiagram("DT entries must be nonzero even integers")
    evens = [abs(a) for a in entries]
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise MalformedDiagram("DT even entries must be 2,4,...,2n in some order")
    if n > 14:
        raise NotRealizable("DT realizability search capped at 14 crossings")

    # Positions 1..2n around the circle; edge j runs from position j to j+1.
    def edge_before(p: int) -> int:
        return 2 * n if p == 1 else p - 1

    pairs = []
    for i, a in enumerate(entries):
        odd = 2 * i + 1
        even = abs(a)
        over, under = (even, odd) if a > 0 else (odd, even)
        pairs.append((under, over))

    def build(bits: tuple[int, ...]) -> list[Crossing]:
        crossings = []
        for (under, over), bit in zip(pairs, bits):
            u_in, u_out = edge_before(under), under
            o_in, o_out = edge_before(over), over
            if bit:
                ends = (u_in, o_in, u_out, o_out)
            else:
                ends = (u_in, o_out, u_out, o_in)
            crossings.append(Crossing(ends))
        return crossings

    for bits in product((0, 1), repeat=n - 1):
        crossings = build((0,) + bits)
        frag = Fragment(crossings)
        if len(frag.face_walks()) == n + 2:
            return Diagram(crossings, basepoint=1)
    raise NotRealizable(f"DT code {text!r} has no planar realization")


def emit_dt(d: Diagram) -> str:
    """Emit the DT code along the canonical traversal from the basepoint."""
    if not d.crossings:
        return ""
    m = len(d.passages)
    visits: dict[int, list[tuple[int, bool]]] = {}
    # The basepoint edge leaves DT position 1, so the arrival at step i is
    # position i+2 (cyclically).
    for i, (ci, slot) in enumerate(d.passages):
        visits.setdefault(ci, []).append(((i + 1) % m + 1, slot in (1, 3)))
    entries = {}
    for ci, vv in visits.items():
        (p1, over1), (p2, over2) = sorted(vv)
        if p1 % 2 == 0:
            (p1, over1), (p2, over2) = (p2, over2), (p1, over1)
        if p1 % 2 == 0 or p2 % 2:
            raise MalformedDiagram("diagram admits no odd/even DT labelling")
        entries[p1] = p2 if over2 else -p2
    return " ".join(str(entries[p]) for p in sorted(entries))
