"""Mutable planar 4-valent graph used as the working form for diagram rewrites.

Every crossing has four slots numbered counterclockwise.  Slots 0 and 2 carry
the under-strand, slots 1 and 3 the over-strand.  ``nbr`` maps a slot to the
slot at the other end of its edge and ``is_in`` records whether the oriented
strand enters the crossing through that slot.  Crossing ids only ever grow,
so a smaller id means an older crossing; orientation repairs keep the
direction found at the oldest crossing of each component.
"""

from __future__ import annotations

from .errors import RewriteError


def _rot(s, k):
    return (s + k) % 4


class Planar:
    def __init__(self):
        self.nbr = {}
        self.is_in = {}
        self.ids = []
        self.free = 0
        self._next = 0

    # ------------------------------------------------------------ basics

    def new_crossing(self):
        c = self._next
        self._next += 1
        self.ids.append(c)
        return c

    def link(self, x, y):
        self.nbr[x] = y
        self.nbr[y] = x

    def copy(self):
        other = Planar()
        other.nbr = dict(self.nbr)
        other.is_in = dict(self.is_in)
        other.ids = list(self.ids)
        other.free = self.free
        other._next = self._next
        return other

    def crossing_count(self):
        return len(self.ids)

    def under_in(self, c):
        return 0 if self.is_in[(c, 0)] else 2

    def sign(self, c):
        u = self.under_in(c)
        return 1 if self.is_in[(c, _rot(u, 3))] else -1

    def flip(self, c):
        """Swap over and under at crossing c (keeps the planar embedding)."""
        old = {s: self.nbr[(c, s)] for s in range(4)}
        flags = {s: self.is_in.get((c, s)) for s in range(4)}
        for s in range(4):
            del self.nbr[(c, s)]
            self.is_in.pop((c, s), None)
        moved = {(c, s): (c, _rot(s, 1)) for s in range(4)}
        for s in range(4):
            x = moved[(c, s)]
            y = old[s]
            y = moved.get(y, y)
            self.nbr[x] = y
            self.nbr[y] = x
            if flags[s] is not None:
                self.is_in[x] = flags[s]

    # ------------------------------------------------------------ conversion

    @classmethod
    def from_diagram(cls, d):
        P = cls()
        where = {}
        for i, (tup, sgn) in enumerate(zip(d.crossings, d.signs)):
            c = P.new_crossing()
            for s, label in enumerate(tup):
                where.setdefault(label, []).append((c, s))
            P.is_in[(c, 0)] = True
            P.is_in[(c, 2)] = False
            P.is_in[(c, 3)] = sgn > 0
            P.is_in[(c, 1)] = sgn < 0
        for label, slots in where.items():
            if len(slots) != 2:
                raise ValueError(f"arc {label} occurs {len(slots)} times")
            P.link(*slots)
        P.free = d.free_circles
        return P

    def trace_components(self):
        """Components as lists of in-slots, in a deterministic order.

        Components are ordered by their oldest crossing; each starts at the
        strand leaving that crossing (under-strand first).
        """
        seen = set()
        comps = []
        for c in sorted(self.ids):
            for pair in ((0, 2), (1, 3)):
                if (c, pair[0]) in seen:
                    continue
                out = (c, pair[1]) if self.is_in[(c, pair[0])] else (c, pair[0])
                comp = []
                cur = out
                while True:
                    nxt = self.nbr[cur]
                    comp.append(nxt)
                    seen.add(nxt)
                    seen.add(cur)
                    cur = (nxt[0], _rot(nxt[1], 2))
                    if cur == out:
                        break
                comps.append(comp)
        return comps

    def to_diagram(self):
        from .diagram import LinkDiagram

        comps = self.trace_components()
        label = {}
        components = []
        n = 0
        for comp in comps:
            arcs = []
            for in_slot in comp:
                n += 1
                label[in_slot] = n
                label[self.nbr[in_slot]] = n
                arcs.append(n)
            components.append(tuple(arcs))
        order = sorted(self.ids)
        crossings = []
        signs = []
        for c in order:
            u = self.under_in(c)
            crossings.append(tuple(label[(c, _rot(u, k))] for k in range(4)))
            signs.append(self.sign(c))
        return LinkDiagram(tuple(crossings), tuple(signs), tuple(components), self.free)

    # ------------------------------------------------------------ orientation

    def reorient(self):
        """Make orientations consistent, keeping the direction at each
        component's oldest crossing."""
        seen = set()
        new = {}
        for c in sorted(self.ids):
            for s0, s2 in ((0, 2), (1, 3)):
                if (c, s0) in seen:
                    continue
                start = (c, s2) if self.is_in.get((c, s2)) else (c, s0)
                cur = start
                while True:
                    out = (cur[0], _rot(cur[1], 2))
                    new[cur] = True
                    new[out] = False
                    seen.add(cur)
                    seen.add(out)
                    cur = self.nbr[out]
                    if cur == start:
                        break
        self.is_in = new

    def component_slots(self, slot):
        """All slots on the component through ``slot``."""
        slots = []
        start = slot
        cur = slot
        while True:
            other = (cur[0], _rot(cur[1], 2))
            slots.extend((cur, other))
            cur = self.nbr[other]
            if cur == start:
                return slots

    # ------------------------------------------------------------ faces

    def faces(self, open_slots=frozenset()):
        """Faces as lists of departure slots; the face lies to the left."""
        seen = set()
        result = []
        for c in sorted(self.ids):
            for s in range(4):
                start = (c, s)
                if start in seen or start in open_slots:
                    continue
                face = []
                cur = start
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    c2, t = self.nbr[cur]
                    k = _rot(t, -1)
                    while (c2, k) in open_slots:
                        k = _rot(k, -1)
                    cur = (c2, k)
                result.append(face)
        return result

    # ------------------------------------------------------------ surgery

    def remove_crossings(self, doomed):
        """Delete crossings, letting both strands pass straight through.

        Returns the number of closed loops left without any crossing; they
        are not added to ``free`` (callers decide what they are).
        """
        doomed = set(doomed)
        if not doomed:
            return 0
        visited = set()
        links = []
        for c in sorted(doomed):
            for s in range(4):
                x = self.nbr[(c, s)]
                if x[0] in doomed or x in visited:
                    continue
                cur = (c, s)
                while True:
                    visited.add(cur)
                    out = (cur[0], _rot(cur[1], 2))
                    visited.add(out)
                    y = self.nbr[out]
                    if y[0] not in doomed:
                        break
                    cur = y
                visited.add(x)
                visited.add(y)
                links.append((x, y))
        loops = 0
        for c in sorted(doomed):
            for s in range(4):
                if (c, s) in visited:
                    continue
                loops += 1
                cur = (c, s)
                while cur not in visited:
                    out = (cur[0], _rot(cur[1], 2))
                    visited.add(cur)
                    visited.add(out)
                    cur = self.nbr[out]
        for c in doomed:
            for s in range(4):
                del self.nbr[(c, s)]
                self.is_in.pop((c, s), None)
        self.ids = [c for c in self.ids if c not in doomed]
        for x, y in links:
            self.link(x, y)
        return loops

    def insert_twist(self, p1, p2, count):
        """Insert ``count`` half-twists between the edges leaving slots p1, p2.

        Both departure slots must lie on the same face (as returned by
        :meth:`faces`).  The new crossings get provisional over/under choices
        and no orientation; callers reorient and set signs afterwards.
        Returns the new crossing ids, in order from p1's end.
        """
        q1 = self.nbr[p1]
        q2 = self.nbr[p2]
        if p2 == q1 or p1 == p2:
            raise RewriteError("twist needs two distinct edges")
        # geometric slots SW=0, SE=1, NE=2, NW=3; e1 runs p1 -> q1 along the
        # bottom, e2 runs p2 -> q2 along the top, face in between
        new = [self.new_crossing() for _ in range(count)]
        for x in (p1, q1, p2, q2):
            self.nbr.pop(x, None)
        self.link(p1, (new[0], 0))
        self.link(q2, (new[0], 3))
        for a, b in zip(new, new[1:]):
            self.link((a, 2), (b, 3))
            self.link((a, 1), (b, 0))
        self.link((new[-1], 1), q1)
        self.link((new[-1], 2), p2)
        return new

    def set_signs(self, crossings, sign):
        for c in crossings:
            if self.sign(c) != sign:
                self.flip(c)
        return crossings

    def check(self):
        for x, y in self.nbr.items():
            if self.nbr.get(y) != x:
                raise AssertionError(f"asymmetric link {x} {y}")
            if self.is_in[x] == self.is_in[y]:
                raise AssertionError(f"orientation clash on edge {x} {y}")
        for c in self.ids:
            if self.is_in[(c, 0)] == self.is_in[(c, 2)]:
                raise AssertionError(f"under-strand orientation at {c}")
            if self.is_in[(c, 1)] == self.is_in[(c, 3)]:
                raise AssertionError(f"over-strand orientation at {c}")
        return True

    def piece_count(self):
        seen = set()
        pieces = 0
        for c in self.ids:
            if c in seen:
                continue
            pieces += 1
            stack = [c]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(self.nbr[(x, s)][0] for s in range(4))
        return pieces

    def is_planar(self):
        """Euler check: each connected piece of a planar 4-valent graph
        with v vertices has v + 2 faces."""
        n = len(self.ids)
        if n == 0:
            return True
        return len(self.faces()) == n + 2 * self.piece_count()
