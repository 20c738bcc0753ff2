"""Reidemeister moves on diagram fragments.

All moves are expressed as small rewirings of crossing records and are
recorded as serializable script entries so that any move sequence can be
replayed and checked.  Crossing indices in script entries refer to the
fragment state at that step.

The triangle slide implemented here serves double duty: with a coherent
over/under pattern it is the R3 move (an isotopy); with the cyclic pattern
it changes the knot and is used by the move engine as the order-3 rewrite.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .diagram import Crossing, Dart, Diagram, Fragment, MalformedDiagram, _IdJoiner

Script = list[tuple]


class InapplicableMove(ValueError):
    """Raised when a move site does not admit the requested move."""


def _rebuild(frag: Fragment, crossings, legs=None, free_loops=None):
    cls = type(frag)
    legs = frag.legs if legs is None else legs
    loops = frag.free_loops if free_loops is None else free_loops
    if isinstance(frag, Diagram):
        return Diagram(crossings, loops, basepoint=None, check=False)
    return Fragment(crossings, legs, loops)


def _finish(frag: Fragment, crossings: list[Crossing], joiner: _IdJoiner):
    crossings = joiner.apply(crossings)
    legs = tuple(joiner.find(e) for e in frag.legs)
    return _rebuild(frag, crossings, legs, frag.free_loops + joiner.loops)


# -- R1 ---------------------------------------------------------------------

def r1_removal_sites(frag: Fragment) -> list[tuple]:
    sites = []
    for ci, c in enumerate(frag.crossings):
        for s in range(4):
            if c.ends[s] == c.ends[(s + 1) % 4]:
                sites.append(("r1-", ci))
                break
    return sites


def r1_remove(frag: Fragment, ci: int) -> Fragment:
    c = frag.crossings[ci]
    loop_slot = next((s for s in range(4) if c.ends[s] == c.ends[(s + 1) % 4]), None)
    if loop_slot is None:
        raise InapplicableMove(f"crossing {ci} carries no kink loop")
    p = c.ends[(loop_slot + 2) % 4]
    q = c.ends[(loop_slot + 3) % 4]
    joiner = _IdJoiner()
    joiner.join(p, q)
    rest = [x for i, x in enumerate(frag.crossings) if i != ci]
    return _finish(frag, rest, joiner)


def r1_add(frag: Fragment, edge: int, chirality: int) -> Fragment:
    occ = frag.occurrences
    if edge not in occ:
        if frag.free_loops == 1 and not frag.crossings and edge == 0:
            # Kink on the bare circle: one big arc plus the curl loop.
            a, g = 1, 2
            ends = (a, a, g, g) if chirality > 0 else (a, g, g, a)
            return _rebuild(frag, [Crossing(ends)], frag.legs, 0)
        raise InapplicableMove(f"edge {edge} not present")
    fresh = frag.max_edge_id() + 1
    b, g = fresh, fresh + 1
    crossings = list(frag.crossings)
    legs = list(frag.legs)
    kind, xi, slot = occ[edge][1]
    if kind == "x":
        ends = list(crossings[xi].ends)
        ends[slot] = b
        crossings[xi] = Crossing(tuple(ends))
    else:
        legs[xi] = b
    crossings.append(Crossing((edge, b, g, g) if chirality > 0 else (edge, g, g, b)))
    return _rebuild(frag, crossings, tuple(legs), frag.free_loops)


# -- R2 ---------------------------------------------------------------------

def _bigon_faces(frag: Fragment) -> list[tuple[Dart, Dart]]:
    out = []
    for walk in frag.face_walks():
        if len(walk) != 2:
            continue
        (x, _), (y, _) = walk
        if x == y:
            continue
        occx = frag.occurrences[x]
        if any(k == "b" for k, _, _ in occx + frag.occurrences[y]):
            continue
        cis = {occx[0][1], occx[1][1]}
        if len(cis) == 2:
            out.append((walk[0], walk[1]))
    return out


def _strand_slot(c: Crossing, edge: int) -> int:
    return c.ends.index(edge)


def r2_removal_sites(frag: Fragment) -> list[tuple]:
    sites = []
    seen = set()
    for dx, dy in _bigon_faces(frag):
        x, y = dx[0], dy[0]
        occx, occy = frag.occurrences[x], frag.occurrences[y]
        if {o[1] for o in occx} != {o[1] for o in occy}:
            continue
        ci, cj = sorted({o[1] for o in occx})
        key = (ci, cj, *sorted((x, y)))
        if key in seen:
            continue
        cx, cy = frag.crossings[ci], frag.crossings[cj]
        if any(cr.ends.count(e) != 1 for cr in (cx, cy) for e in (x, y)):
            continue
        sx_i, sx_j = _strand_slot(cx, x), _strand_slot(cy, x)
        sy_i, sy_j = _strand_slot(cx, y), _strand_slot(cy, y)
        if (sy_i - sx_i) % 2 == 0 or (sy_j - sx_j) % 2 == 0:
            continue  # bigon arcs on one strand: not an R2 pattern
        if (sx_i % 2) == (sx_j % 2):
            seen.add(key)
            sites.append(("r2-", ci, cj, x, y))
    return sites


def r2_remove(frag: Fragment, ci: int, cj: int, x: int, y: int) -> Fragment:
    cx, cy = frag.crossings[ci], frag.crossings[cj]
    if any(cr.ends.count(e) != 1 for cr in (cx, cy) for e in (x, y)):
        raise InapplicableMove("bigon edges must pass each crossing once")
    sx_i, sx_j = _strand_slot(cx, x), _strand_slot(cy, x)
    sy_i, sy_j = _strand_slot(cx, y), _strand_slot(cy, y)
    if (sy_i - sx_i) % 2 == 0 or (sy_j - sx_j) % 2 == 0:
        raise InapplicableMove("edges do not form a two-strand bigon")
    if (sx_i % 2) != (sx_j % 2):
        raise InapplicableMove("bigon is clasped, not removable")
    joiner = _IdJoiner()
    joiner.join(cx.ends[(sx_i + 2) % 4], cy.ends[(sx_j + 2) % 4])
    joiner.join(cx.ends[(sy_i + 2) % 4], cy.ends[(sy_j + 2) % 4])
    rest = [c for i, c in enumerate(frag.crossings) if i not in (ci, cj)]
    return _finish(frag, rest, joiner)


def r2_add_sites(frag: Fragment, max_faces: int | None = None) -> list[tuple]:
    sites = []
    walks = frag.face_walks()
    if max_faces is not None:
        walks = walks[:max_faces]
    for walk in walks:
        m = len(walk)
        for i in range(m):
            for j in range(i + 1, m):
                (e, de), (f, df) = walk[i], walk[j]
                if e == f or e not in frag.occurrences or f not in frag.occurrences:
                    continue
                sites.append(("r2+", e, de, f, df, True))
                sites.append(("r2+", e, de, f, df, False))
    return sites


def r2_add(frag: Fragment, e: int, de: int, f: int, df: int, over: bool) -> Fragment:
    occ = frag.occurrences
    if e not in occ or f not in occ or e == f:
        raise InapplicableMove("R2 push needs two distinct existing edges")
    fresh = frag.max_edge_id() + 1
    a2, b2, m, w = fresh, fresh + 1, fresh + 2, fresh + 3
    crossings = list(frag.crossings)
    legs = list(frag.legs)

    def _replace(occurrence, old, new):
        kind, idx, slot = occurrence
        if kind == "x":
            ends = list(crossings[idx].ends)
            ends[slot] = new
            crossings[idx] = Crossing(tuple(ends))
        else:
            legs[idx] = new

    _replace(occ[e][1 - de], e, a2)
    _replace(occ[f][1 - df], f, b2)
    # Face walks keep the face on the right, so the two strands run
    # antiparallel along the face: e dips across f with flanks wired as
    # (e=a1) -cW- m -cE- a2 and (f=b1) -cE- w -cW- b2.
    if over:
        cw = Crossing((w, e, b2, m))
        ce = Crossing((f, a2, w, m))
    else:
        cw = Crossing((e, b2, m, w))
        ce = Crossing((a2, w, m, f))
    crossings.extend([cw, ce])
    return _rebuild(frag, crossings, tuple(legs), frag.free_loops)


# -- R3 / triangle slides ----------------------------------------------------

def triangle_faces(frag: Fragment) -> list[list[Dart]]:
    out = []
    for walk in frag.face_walks():
        if len(walk) != 3:
            continue
        edges = [d[0] for d in walk]
        if len(set(edges)) != 3:
            continue
        if any(e not in frag.occurrences
               or any(k == "b" for k, _, _ in frag.occurrences[e]) for e in edges):
            continue
        corners = {frag._arrival(d)[1] for d in walk}
        if len(corners) == 3:
            out.append(walk)
    return out


def triangle_slide_sites(frag: Fragment, kind: str = "r3") -> list[tuple]:
    """Slide sites on triangle faces; kind is 'r3' (isotopy) or 'delta'."""
    sites = []
    for walk in triangle_faces(frag):
        for moving in range(3):
            site = _classify_slide(frag, walk, moving)
            if site is not None and site[0] == kind:
                sites.append(site)
    return sites


def _classify_slide(frag: Fragment, walk: Sequence[Dart], moving: int):
    # walk darts: eA arrives at P, eB at Q, eC at R; edges around the face.
    darts = list(walk[moving:]) + list(walk[:moving])
    x12 = darts[1][0]
    _, c1, _ = frag._arrival(darts[0])
    _, c2, _ = frag._arrival(darts[1])
    _, c3, _ = frag._arrival(darts[2])
    x31, x23 = darts[0][0], darts[2][0]
    s1 = _strand_slot(frag.crossings[c1], x12)
    s2 = _strand_slot(frag.crossings[c2], x12)
    coherent = (s1 % 2) == (s2 % 2)
    return ("r3" if coherent else "delta", c1, c2, c3, x12, x23, x31)


def triangle_slide(frag: Fragment, c1: int, c2: int, c3: int,
                   x12: int, x23: int, x31: int) -> Fragment:
    """Slide the strand carrying x12 across the opposite corner c3.

    Preserves every pairwise over/under relation; whether this is an R3
    isotopy or an order-3 move depends only on the pattern at the corners.
    """
    crossings = list(frag.crossings)
    ca, cb, cc = crossings[c1], crossings[c2], crossings[c3]
    try:
        p_x12, p_x31 = ca.ends.index(x12), ca.ends.index(x31)
        q_x12, q_x23 = cb.ends.index(x12), cb.ends.index(x23)
        r_x23, r_x31 = cc.ends.index(x23), cc.ends.index(x31)
    except ValueError as exc:
        raise InapplicableMove("triangle edges not incident as required") from exc
    a1 = ca.ends[(p_x12 + 2) % 4]
    co1 = ca.ends[(p_x31 + 2) % 4]
    a2 = cb.ends[(q_x12 + 2) % 4]
    b2 = cb.ends[(q_x23 + 2) % 4]
    b3 = cc.ends[(r_x23 + 2) % 4]
    co3 = cc.ends[(r_x31 + 2) % 4]

    # The slide swaps the crossing order along every strand; each strand
    # keeps its slot pair at each record, so over/under data is untouched.
    na = list(ca.ends)
    na[(p_x12 + 2) % 4] = a2
    na[(p_x31 + 2) % 4] = co3
    nb = list(cb.ends)
    nb[(q_x12 + 2) % 4] = a1
    nb[(q_x23 + 2) % 4] = b3
    nc = list(cc.ends)
    nc[(r_x23 + 2) % 4] = b2
    nc[(r_x31 + 2) % 4] = co1
    crossings[c1] = Crossing(tuple(na))
    crossings[c2] = Crossing(tuple(nb))
    crossings[c3] = Crossing(tuple(nc))
    out = _rebuild(frag, crossings)
    out.check_edge_pairing()
    return out


def reidemeister(d: Diagram, kind: int, site, direction: str) -> Diagram:
    """Apply one Reidemeister move.

    kind 1/2/3 with direction "add" or "remove" (kind 3 ignores direction);
    sites are the tuples produced by the site enumerators of this module
    with the leading tag stripped, e.g. ``(edge, chirality)`` for an R1 add.
    """
    if kind == 1:
        out = r1_add(d, *site) if direction == "add" else r1_remove(d, *site)
    elif kind == 2:
        out = r2_add(d, *site) if direction == "add" else r2_remove(d, *site)
    elif kind == 3:
        out = triangle_slide(d, *site)
    else:
        raise InapplicableMove(f"unknown move kind {kind}")
    if isinstance(out, Diagram):
        out.validate()
    return out  # type: ignore[return-value]


# -- scripts ------------------------------------------------------------------

def apply_move(frag: Fragment, entry: Sequence) -> Fragment:
    op = entry[0]
    if op == "r1-":
        return r1_remove(frag, entry[1])
    if op == "r1+":
        return r1_add(frag, entry[1], entry[2])
    if op == "r2-":
        return r2_remove(frag, *entry[1:])
    if op == "r2+":
        return r2_add(frag, *entry[1:])
    if op in ("r3", "delta"):
        return triangle_slide(frag, *entry[1:])
    if op == "switch":
        crossings = list(frag.crossings)
        crossings[entry[1]] = crossings[entry[1]].mirrored()
        return _rebuild(frag, crossings)
    raise InapplicableMove(f"unknown move {op!r}")


def replay(frag: Fragment, script: Sequence[Sequence]) -> Fragment:
    for entry in script:
        frag = apply_move(frag, entry)
    return frag


# -- simplification -----------------------------------------------------------

def greedy_reduce(frag: Fragment) -> tuple[Fragment, Script]:
    """Apply R1/R2 removals until none remain; returns the result and script."""
    script: Script = []
    while True:
        sites = r1_removal_sites(frag)
        if not sites:
            sites = r2_removal_sites(frag)
        if not sites:
            return frag, script
        entry = sites[0]
        frag = apply_move(frag, entry)
        script.append(entry)


def simplify_fragment(frag: Fragment, key_fn: Callable[[Fragment], str],
                      r3_budget: int = 1000) -> tuple[Fragment, Script]:
    """Greedy R1/R2 reduction plus a budgeted R3 exploration.

    Never returns a fragment with more crossings than the input; ties are
    broken by the canonical key for determinism.
    """
    start, script = greedy_reduce(frag)
    best = (start.n_crossings, key_fn(start), start, script)
    frontier = [(start, script)]
    seen = {best[1]}
    expansions = 0
    while frontier and expansions < r3_budget:
        cur, cur_script = frontier.pop(0)
        for site in triangle_slide_sites(cur, "r3"):
            expansions += 1
            if expansions > r3_budget:
                break
            try:
                nxt = triangle_slide(cur, *site[1:])
            except (InapplicableMove, MalformedDiagram):
                continue
            nxt, extra = greedy_reduce(nxt)
            key = key_fn(nxt)
            if key in seen:
                continue
            seen.add(key)
            nxt_script = cur_script + [site] + extra
            cand = (nxt.n_crossings, key, nxt, nxt_script)
            if cand[:2] < best[:2]:
                best = cand
            frontier.append((nxt, nxt_script))
    return best[2], best[3]


def simplify(d: Diagram, r3_budget: int = 1000) -> Diagram:
    """R-move simplification of a knot diagram (never increases crossings)."""
    out, _ = simplify_fragment(d, lambda f: f.canonical_key, r3_budget)  # type: ignore[attr-defined]
    return out  # type: ignore[return-value]


def simplify_with_script(d: Diagram, r3_budget: int = 1000) -> tuple[Diagram, Script]:
    out, script = simplify_fragment(d, lambda f: f.canonical_key, r3_budget)  # type: ignore[attr-defined]
    return out, script  # type: ignore[return-value]


# -- random perturbation -------------------------------------------------------

def random_perturb(d: Diagram, steps: int, seed: int, max_extra: int = 6) -> Diagram:
    """Apply `steps` random R-moves; crossing growth capped at `max_extra`."""
    rng = random.Random(seed)
    base = d.n_crossings
    for _ in range(steps):
        candidates: list[tuple] = []
        candidates.extend(r1_removal_sites(d))
        candidates.extend(r2_removal_sites(d))
        candidates.extend(("r3",) + s[1:] for s in triangle_slide_sites(d, "r3"))
        if d.n_crossings < base + max_extra:
            for e in d.edges():
                candidates.append(("r1+", e, 1))
                candidates.append(("r1+", e, -1))
            candidates.extend(r2_add_sites(d))
        if not d.crossings:
            candidates = [("r1+", 0, 1), ("r1+", 0, -1)]
        if not candidates:
            break
        entry = candidates[rng.randrange(len(candidates))]
        try:
            d = apply_move(d, entry)  # type: ignore[assignment]
        except (InapplicableMove, MalformedDiagram):
            continue
    return d
