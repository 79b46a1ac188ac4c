"""Diagram moves, replayable move certificates and a greedy simplifier.

All moves act on :class:`~brunnian._planar.Planar` graphs.  A :class:`Move`
names its target using crossing indices and PD tuple positions of the
diagram it is applied to, so a list of moves replays from the original
diagram with :func:`apply_moves`.

Besides the Reidemeister moves the simplifier uses *bridge reroutes*: a
stretch of one strand that passes under (or over) every strand it meets can
be redrawn along any other path with the same property, so it is replaced by
a shortest path through the dual graph when that crosses fewer edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ._planar import Planar
from .diagram import LinkDiagram, canonical_pd
from .errors import RewriteError

__all__ = [
    "Move",
    "SimplifyResult",
    "apply_move",
    "apply_moves",
    "candidate_moves",
    "insertion_moves",
    "simplify",
]


@dataclass(frozen=True)
class Move:
    """One diagram move.

    ``kind`` is one of ``R1``, ``R2``, ``R3``, ``bridge``, ``split``,
    ``R1+`` or ``R2+``; ``data`` holds the kind-specific target.
    """

    kind: str
    data: tuple

    def describe(self):
        return f"{self.kind} {self.data}"

    def to_json(self):
        return {"kind": self.kind, "data": _listify(self.data)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["kind"], _tuplify(obj["data"]))


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, (list, tuple)) else x


def _tuplify(x):
    return tuple(_tuplify(v) for v in x) if isinstance(x, list) else x


@dataclass(frozen=True)
class SimplifyResult:
    diagram: LinkDiagram
    moves: tuple
    steps: int


def _rot(s, k):
    return (s + k) % 4


def _over(slot):
    return slot[1] % 2 == 1


# ---------------------------------------------------------------- R1 / R2 / R3


def _find_r1(P):
    out = []
    for c in P.ids:
        for s in range(4):
            if P.nbr[(c, s)] == (c, _rot(s, 1)):
                out.append(c)
                break
    return out


def _do_r1(P, c):
    if not any(P.nbr[(c, s)] == (c, _rot(s, 1)) for s in range(4)):
        raise RewriteError(f"crossing {c} is not a kink")
    P.free += P.remove_crossings({c})


def _face_index(faces):
    return {slot: i for i, f in enumerate(faces) for slot in f}


def _bigon_ok(P, face):
    if len(face) != 2:
        return False
    (c1, s1), (c2, s2) = face
    if c1 == c2:
        return False
    t = P.nbr[(c1, s1)][1]
    return s1 % 2 == t % 2


def _find_r2(P, faces):
    return [f[0] for f in faces if _bigon_ok(P, f)]


def _face_of(P, slot):
    for f in P.faces():
        if slot in f:
            return f
    raise RewriteError(f"no face starts at {slot}")


def _do_r2(P, slot):
    face = _face_of(P, slot)
    if not _bigon_ok(P, face):
        raise RewriteError("not a removable bigon")
    P.free += P.remove_crossings({face[0][0], face[1][0]})


def _r3_lines(P, face):
    """Rewiring data for a triangle, or None when no R3 applies."""
    if len(face) != 3 or len({s[0] for s in face}) != 3:
        return None
    tri = {s[0] for s in face}
    lines = []
    for d in face:
        v_in = P.nbr[d]
        u_out = (d[0], _rot(d[1], 2))
        v_out = (v_in[0], _rot(v_in[1], 2))
        U, V = P.nbr[u_out], P.nbr[v_out]
        if U[0] in tri or V[0] in tri:
            return None
        lines.append((d, v_in, u_out, v_out, U, V))
    if not any(_over(line[0]) == _over(line[1]) for line in lines):
        return None
    return lines


def _find_r3(P, faces):
    return [f[0] for f in faces if _r3_lines(P, f) is not None]


def _do_r3(P, slot):
    lines = _r3_lines(P, _face_of(P, slot))
    if lines is None:
        raise RewriteError("not an R3 triangle")
    for u_in, v_in, u_out, v_out, U, V in lines:
        P.link(u_out, v_out)
        P.link(u_in, V)
        P.link(v_in, U)


# ---------------------------------------------------------------- bridges


def _runs(P, under):
    """Maximal runs of same-level visits, per component.

    Yields ``(a, k, run)`` where ``a`` is the out-slot of the bounding visit
    before the run and ``run`` lists the run's crossings, or ``(seed, None,
    crossings)`` for a component whose every visit is at the run level.
    """
    seen = set()
    for c in list(P.ids):
        for s in range(4):
            if (c, s) in seen:
                continue
            seed = (c, s) if P.is_in[(c, s)] else P.nbr[(c, s)]
            slots = P.component_slots(seed)
            seen.update(slots)
            visits = [x for x in slots if P.is_in[x]]
            level = [(_over(x) != under) for x in visits]  # True = run level
            if all(level):
                yield visits[0], None, sorted({x[0] for x in visits})
                continue
            n = len(visits)
            for i in range(n):
                if level[i] or not level[(i + 1) % n]:
                    continue
                run = []
                j = (i + 1) % n
                while level[j]:
                    run.append(visits[j][0])
                    j = (j + 1) % n
                a = (visits[i][0], _rot(visits[i][1], 2))
                yield a, len(run), run


def _run_from(P, a, under):
    """Re-derive the run that starts after out-slot ``a``."""
    run = []
    cur = P.nbr[a]
    while _over(cur) != under:
        run.append(cur[0])
        cur = P.nbr[(cur[0], _rot(cur[1], 2))]
    return run, cur


def _corner_face(P, slot, open_slots, face_of):
    c, s = slot
    t = _rot(s, 1)
    while (c, t) in open_slots:
        t = _rot(t, 1)
    return face_of[P.nbr[(c, t)]]


def _plan_route(P, a, b):
    """Shortest dual path from the corner at ``a`` to the corner at ``b``.

    ``P`` must already have the edge a-b removed.  Returns the departure
    slots of the edges crossed, in order.
    """
    opened = {a, b}
    faces = P.faces(opened)
    face_of = _face_index(faces)
    src = _corner_face(P, a, opened, face_of)
    dst = _corner_face(P, b, opened, face_of)
    prev = {src: None}
    queue = deque([src])
    while queue:
        f = queue.popleft()
        if f == dst:
            break
        for p in faces[f]:
            g = face_of[P.nbr[p]]
            if g not in prev:
                prev[g] = (f, p)
                queue.append(g)
    if dst not in prev:
        return None
    route = []
    f = dst
    while prev[f] is not None:
        f, p = prev[f]
        route.append(p)
    return route[::-1]


def _open_run(P, a, under):
    run, b = _run_from(P, a, under)
    if a[0] in run or b[0] in run:
        return None
    loops = P.remove_crossings(set(run))
    P.free += loops
    if P.nbr.get(a) != b:
        raise RewriteError("run did not close into a single edge")
    del P.nbr[a]
    del P.nbr[b]
    return run, b


def _lay_route(P, a, b, route, under):
    prev = a
    for p in route:
        q = P.nbr[p]
        y = P.new_crossing()
        if under:
            north, west, south, east = (y, 0), (y, 1), (y, 2), (y, 3)
        else:
            west, south, east, north = (y, 0), (y, 1), (y, 2), (y, 3)
        forward = not P.is_in[p]  # existing strand runs p -> q
        P.link(p, west)
        P.link(east, q)
        P.is_in[west] = forward
        P.is_in[east] = not forward
        P.link(prev, north)
        P.is_in[north] = True
        P.is_in[south] = False
        prev = south
    P.link(prev, b)


def _bridge_candidates(P, under):
    out = []
    for a, k, run in _runs(P, under):
        if k is None:
            out.append((len(run), Move("split", (a, under)), run))
            continue
        trial = P.copy()
        opened = _open_run(trial, a, under)
        if opened is None:
            continue
        route = _plan_route(trial, a, opened[1])
        if route is None or len(route) >= k:
            continue
        out.append((k - len(route), Move("bridge", (a, under, k, tuple(route))), run))
    return out


def _do_bridge(P, a, under, k, route):
    opened = _open_run(P, a, under)
    if opened is None or len(opened[0]) != k:
        raise RewriteError("bridge run does not match")
    _lay_route(P, a, opened[1], route, under)


def _do_split(P, seed, under):
    slots = P.component_slots(seed)
    visits = [x for x in slots if P.is_in[x]]
    if any(_over(x) == under for x in visits):
        raise RewriteError("component is not at one level")
    P.free += P.remove_crossings({x[0] for x in visits})


# ---------------------------------------------------------------- insertions


def _do_r1_plus(P, p, over_first):
    q = P.nbr[p]
    x = P.new_crossing()
    P.link(p, (x, 0))
    P.link((x, 2), (x, 3))
    P.link((x, 1), q)
    fwd = not P.is_in[p]
    P.is_in.update({(x, 0): fwd, (x, 2): not fwd, (x, 3): fwd, (x, 1): not fwd})
    if over_first:
        P.flip(x)
    P.reorient()


def _do_r2_plus(P, p1, p2, flip):
    q1, q2 = P.nbr[p1], P.nbr[p2]
    if {p2, q2} == {p1, q1}:
        raise RewriteError("finger needs two different edges")
    if p2 not in _face_of(P, p1):
        raise RewriteError("edges do not share a face")
    X, Y = P.new_crossing(), P.new_crossing()
    S, E, N, W = 0, 1, 2, 3
    P.link(p1, (X, S))
    P.link((X, N), (Y, N))
    P.link((Y, S), q1)
    P.link(p2, (Y, E))
    P.link((Y, W), (X, E))
    P.link((X, W), q2)
    for c in (X, Y):
        for s in range(4):
            P.is_in[(c, s)] = s < 2
    if flip:
        P.flip(X)
        P.flip(Y)
    P.reorient()


def insertion_moves(d: LinkDiagram):
    """All crossing-increasing R1/R2 moves available on ``d``."""
    P = Planar.from_diagram(d)
    out = []
    for c in P.ids:
        for s in range(4):
            out.append(Move("R1+", ((c, s), False)))
            out.append(Move("R1+", ((c, s), True)))
    for f in P.faces():
        for i, p1 in enumerate(f):
            for p2 in f[i + 1:]:
                if {p2, P.nbr[p2]} != {p1, P.nbr[p1]}:
                    out.append(Move("R2+", (p1, p2, False)))
                    out.append(Move("R2+", (p1, p2, True)))
    return out


# ---------------------------------------------------------------- dispatch


def _apply_planar(P, move):
    kind, data = move.kind, move.data
    if kind == "R1":
        _do_r1(P, data[0])
    elif kind == "R2":
        _do_r2(P, data[0])
    elif kind == "R3":
        _do_r3(P, data[0])
    elif kind == "bridge":
        _do_bridge(P, *data)
    elif kind == "split":
        _do_split(P, *data)
    elif kind == "R1+":
        _do_r1_plus(P, *data)
    elif kind == "R2+":
        _do_r2_plus(P, *data)
    else:
        raise RewriteError(f"unknown move {kind!r}")


def apply_move(d: LinkDiagram, move: Move) -> LinkDiagram:
    P = Planar.from_diagram(d)
    try:
        _apply_planar(P, move)
    except (KeyError, IndexError) as exc:
        raise RewriteError(f"{move.describe()} does not apply: {exc}") from None
    return P.to_diagram()


def apply_moves(d: LinkDiagram, moves) -> LinkDiagram:
    for m in moves:
        d = apply_move(d, m)
    return d


def candidate_moves(d: LinkDiagram):
    """Crossing-reducing moves on ``d`` and the available R3 moves."""
    P = Planar.from_diagram(d)
    faces = P.faces()
    reducing = [Move("R1", (c,)) for c in _find_r1(P)]
    reducing += [Move("R2", (s,)) for s in _find_r2(P, faces)]
    for under in (True, False):
        reducing += [move for _, move, _ in _bridge_candidates(P, under)]
    return reducing, [Move("R3", (s,)) for s in _find_r3(P, faces)]


def _reducing(P):
    """Best crossing-reducing move, in priority order, or None."""
    r1 = _find_r1(P)
    if r1:
        return Move("R1", (r1[0],))
    faces = P.faces()
    r2 = _find_r2(P, faces)
    if r2:
        return Move("R2", (r2[0],))
    best = None
    for under in (True, False):
        for gain, move, _ in _bridge_candidates(P, under):
            if best is None or gain > best[0]:
                best = (gain, move)
    return None if best is None else best[1]


def simplify(d: LinkDiagram, max_steps=10_000, r3_depth=2) -> SimplifyResult:
    """Greedily remove crossings; returns the final diagram and the moves used.

    When no reducing move exists, R3 sequences of length up to ``r3_depth``
    are searched for one that unlocks a reduction.  ``max_steps`` bounds the
    number of diagrams examined.
    """
    moves = []
    steps = 0
    while d.crossing_count() and steps < max_steps:
        steps += 1
        move = _reducing(Planar.from_diagram(d))
        if move is not None:
            d = apply_move(d, move)
            moves.append(move)
            continue
        found = _r3_search(d, r3_depth, max_steps - steps)
        if found is None:
            break
        seq, cost = found
        steps += cost
        for m in seq:
            d = apply_move(d, m)
        moves.extend(seq)
    return SimplifyResult(d, tuple(moves), steps)


def _r3_search(d, depth, budget):
    """Breadth-first R3 search for a state with a reducing move."""
    seen = {canonical_pd(d)}
    frontier = [(d, ())]
    cost = 0
    for _ in range(depth):
        nxt = []
        for state, path in frontier:
            P = Planar.from_diagram(state)
            for slot in _find_r3(P, P.faces()):
                cost += 1
                if cost > budget:
                    return None
                m = Move("R3", (slot,))
                new = apply_move(state, m)
                key = canonical_pd(new)
                if key in seen:
                    continue
                seen.add(key)
                reduce = _reducing(Planar.from_diagram(new))
                if reduce is not None:
                    return path + (m, reduce), cost
                nxt.append((new, path + (m,)))
        frontier = nxt
    return None
