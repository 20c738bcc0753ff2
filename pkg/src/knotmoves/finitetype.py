"""Finite-type checks on singular families and move-invariance reports.

The alternating sum of an invariant over the 2^l knots of a singular family
is the central quantity: it vanishes exactly when the invariant is finite
type for the family's order vector.  All sums here are exact integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import gauss
from .diagram import Diagram, MalformedDiagram
from .moves import InapplicableMove
from .templates import (Chord, InvalidSite, SingularFamily, apply_chord, band_sum,
                        family, random_insert_chord, triangle_slide_sites)

INVARIANTS = {"v2": gauss.v2, "v3": gauss.v3}


def alternating_sum(fam: SingularFamily, phi: str) -> int:
    """Sum of (-1)^|P| phi(K_P) over all subsets P of the chords."""
    fn = INVARIANTS[phi]
    total = 0
    for subset, diagram in family(fam).items():
        total += (-1) ** len(subset) * fn(diagram)
    return total


def random_family(base: Diagram, orders: tuple[int, ...], rng: random.Random,
                  allow_switch: bool = True) -> SingularFamily | None:
    """Sample disjoint chords of the given orders on `base`; None on failure.

    Rewrite chords (switches, triangle flips) may share through-edges with
    each other; insertion sites must avoid every other chord's edges.
    """
    chords: list[Chord] = []
    used_crossings: set[int] = set()
    rewrite_edges: set[int] = set()
    insert_edges: set[int] = set()
    for idx, k in enumerate(orders):
        chord = None
        if k == 2 and allow_switch and base.n_crossings and rng.random() < 0.5:
            free = [ci for ci in range(base.n_crossings)
                    if ci not in used_crossings
                    and not (set(base.crossings[ci].ends) & insert_edges)]
            if free:
                chord = Chord(2, "switch", (free[rng.randrange(len(free))],))
        if chord is None and k == 3 and base.n_crossings and rng.random() < 0.25:
            sites = []
            for s in triangle_slide_sites(base, "delta"):
                cis = set(s[1:4])
                edges = set().union(*(set(base.crossings[ci].ends) for ci in cis))
                if not (cis & used_crossings) and not (edges & insert_edges):
                    sites.append(s)
            if sites:
                chord = Chord(3, "delta", sites[rng.randrange(len(sites))][1:])
        if chord is None:
            chord = random_insert_chord(base, k, rng, rewrite_edges,
                                        offset_base=4 * idx)
        if chord is None:
            return None
        e, x = chord.touched(base)
        if chord.kind == "insert":
            insert_edges |= e
        else:
            used_crossings |= x
            rewrite_edges |= e
        chords.append(chord)
    fam = SingularFamily(base, tuple(chords))
    try:
        fam.validate()
        # Insertions sharing a face can interleave and spoil co-faciality;
        # building the full band sum catches every such collision.
        band_sum(base, fam.chords)
    except (InvalidSite, InapplicableMove, MalformedDiagram):
        return None
    return fam


@dataclass
class TrialRecord:
    trial: int
    base: str
    orders: tuple[int, ...]
    sum: int | None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.sum == 0

    def to_json(self) -> dict:
        return {"trial": self.trial, "base": self.base, "orders": list(self.orders),
                "sum": self.sum, "note": self.note}


def verify_type(phi: str, orders: tuple[int, ...], trials: int, seed: int,
                bases: dict[str, Diagram]) -> list[TrialRecord]:
    """Seeded random families of the given type; records every alternating sum.

    Construction failures (site exhaustion) are reported, not fatal.
    """
    rng = random.Random(seed)
    names = sorted(bases)
    records = []
    done = 0
    attempts = 0
    while done < trials and attempts < trials * 20:
        attempts += 1
        name = names[rng.randrange(len(names))]
        fam = random_family(bases[name], orders, rng)
        if fam is None:
            continue
        try:
            s = alternating_sum(fam, phi)
        except (InvalidSite, InapplicableMove, MalformedDiagram) as exc:
            records.append(TrialRecord(done, name, orders, None,
                                       f"construction failed: {exc}"))
            continue
        records.append(TrialRecord(done, name, orders, s))
        done += 1
    return records


def move_invariance_report(d: Diagram, l: int, n_moves: int, seed: int) -> dict:
    """Apply random order-(l+1) chords sequentially; track v_j for j <= l-1.

    For l = 3 this checks that order-4 moves never change v2; orders below
    2 have only constant invariants, so for l = 2 the report instead
    exhibits how order-3 moves do move v2 (sharpness).
    """
    rng = random.Random(seed)
    k = l + 1
    if k not in (3, 4):
        raise ValueError("supported orders are l in {2, 3}")
    current = d
    steps = []
    v2_before = gauss.v2(current)
    for step in range(n_moves):
        chord = random_insert_chord(current, k, rng)
        if chord is None:
            steps.append({"step": step, "note": "site exhaustion"})
            break
        current = apply_chord(current, chord)
        v2_after = gauss.v2(current)
        steps.append({"step": step, "v2_before": v2_before, "v2_after": v2_after,
                      "delta": v2_after - v2_before})
        v2_before = v2_after
    deltas = [s["delta"] for s in steps if "delta" in s]
    report = {
        "l": l, "move_order": k, "seed": seed, "steps": steps,
        "v2_constant": all(x == 0 for x in deltas) if deltas else True,
        "v2_deltas_seen": sorted(set(deltas)),
    }
    report["pass"] = report["v2_constant"] if l == 3 else True
    return report


def delta_v2_witness(bases: dict[str, Diagram], seed: int = 7,
                     attempts: int = 200) -> dict | None:
    """A concrete order-3 chord application with |delta v2| = 1."""
    rng = random.Random(seed)
    names = sorted(bases)
    for _ in range(attempts):
        base = bases[names[rng.randrange(len(names))]]
        chord = random_insert_chord(base, 3, rng)
        if chord is None:
            continue
        d2 = apply_chord(base, chord)
        dv = gauss.v2(d2) - gauss.v2(base)
        if abs(dv) == 1:
            return {"base_key": base.canonical_key, "chord": chord.to_json(),
                    "delta_v2": dv}
    return None


def group_checks(bases: dict[str, Diagram], pairs: int = 50, seed: int = 3) -> dict:
    """Abelian-group behaviour of connected sum through the (v2, v3) proxy."""
    rng = random.Random(seed)
    names = sorted(bases)
    tup = {n: (gauss.v2(d), gauss.v3(d)) for n, d in bases.items()}

    additive = []
    for _ in range(pairs):
        a, b = rng.choice(names), rng.choice(names)
        s = bases[a].connected_sum(bases[b])
        got = (gauss.v2(s), gauss.v3(s))
        want = (tup[a][0] + tup[b][0], tup[a][1] + tup[b][1])
        additive.append({"pair": [a, b], "got": list(got), "want": list(want),
                         "ok": got == want})

    commutative = []
    for _ in range(10):
        a, b = rng.choice(names), rng.choice(names)
        ab = bases[a].connected_sum(bases[b])
        ba = bases[b].connected_sum(bases[a])
        commutative.append({
            "pair": [a, b],
            "ok": (gauss.v2(ab), gauss.v3(ab)) == (gauss.v2(ba), gauss.v3(ba))})

    associative = []
    for _ in range(5):
        a, b, c = rng.choice(names), rng.choice(names), rng.choice(names)
        left = bases[a].connected_sum(bases[b]).connected_sum(bases[c])
        right = bases[a].connected_sum(bases[b].connected_sum(bases[c]))
        associative.append({
            "triple": [a, b, c],
            "ok": (gauss.v2(left), gauss.v3(left)) == (gauss.v2(right), gauss.v3(right))})

    unknot = Diagram.unknot()
    identity = []
    for n in names[:10]:
        s = unknot.connected_sum(bases[n])
        identity.append({"name": n,
                         "ok": (gauss.v2(s), gauss.v3(s)) == tup[n]})

    inverses = {"v2_level": [], "v2v3_level": []}
    for a in names:
        for b in names:
            if tup[a][0] + tup[b][0] == 0:
                inverses["v2_level"].append([a, b])
            if (tup[a][0] + tup[b][0], tup[a][1] + tup[b][1]) == (0, 0):
                inverses["v2v3_level"].append([a, b])

    report = {
        "additive": additive, "commutative": commutative,
        "associative": associative, "identity": identity, "inverses": inverses,
        "pass": (all(r["ok"] for r in additive) and all(r["ok"] for r in commutative)
                 and all(r["ok"] for r in associative) and all(r["ok"] for r in identity)),
    }
    return report
