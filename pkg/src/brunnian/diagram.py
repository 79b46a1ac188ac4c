"""Link diagrams: a Morse-slice DSL, its compiler, and PD / Gauss codes.

A slice program describes a diagram scanned from bottom to top.  At every
height a row of strand positions ``1..width`` is alive and one event happens::

    cup P          new minimum; its two ends occupy positions P and P+1
    cap P          maximum joining positions P and P+1
    cross P +      crossing of positions P and P+1 with oriented sign +1
    cross P -      ... with oriented sign -1
    cross P over   the strand coming from position P passes over
    cross P under  the strand coming from position P passes under

Orientation does not depend on over/under choices, so the compiler orients
every component first (from the first segment created while scanning: cups
run from their left end to their right end, crossing outputs run upward) and
then picks over/under to realise each requested sign.

PD codes list, for every crossing, four arc labels counterclockwise starting
at the incoming under-arc; a crossing is positive when its over-strand runs
from the fourth label to the second.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ._planar import Planar
from .errors import DomainError, ParseError

__all__ = [
    "Slice",
    "SliceProgram",
    "LinkDiagram",
    "parse_program",
    "program_text",
    "compile_program",
    "compile",
    "delete_component",
    "writhe",
    "crossing_count",
    "component_count",
    "pd_text",
    "parse_pd",
    "gauss_code",
    "gauss_text",
    "canonical_pd",
    "reverse_components",
]

_CROSS_MODES = {"+": 1, "-": -1, "over": "over", "under": "under"}


@dataclass(frozen=True)
class Slice:
    kind: str  # "cup" | "cap" | "cross"
    position: int
    sign: int = 0  # oriented sign for "cross"; 0 when ``over`` is used
    over: str = ""  # "over"/"under": fate of the strand coming from ``position``

    def text(self):
        if self.kind != "cross":
            return f"{self.kind} {self.position}"
        mode = self.over or ("+" if self.sign > 0 else "-")
        return f"cross {self.position} {mode}"


@dataclass(frozen=True)
class SliceProgram:
    slices: tuple

    def widths(self):
        """Width after each slice; raises DomainError on an invalid event."""
        w = 0
        out = []
        for i, s in enumerate(self.slices, 1):
            w = _step_width(s, w, i)
            out.append(w)
        if w != 0:
            raise DomainError(f"program ends at width {w}, expected 0")
        return out


def _step_width(s, w, where):
    p = s.position
    if p < 1:
        raise DomainError(f"position must be >= 1 (slice {where})")
    if s.kind == "cup":
        if p > w + 1:
            raise DomainError(f"cup {p} beyond width {w} (slice {where})")
        return w + 2
    if s.kind in ("cap", "cross"):
        if p + 1 > w:
            raise DomainError(f"width underflow: {s.kind} {p} at width {w} (slice {where})")
        return w - 2 if s.kind == "cap" else w
    raise DomainError(f"unknown slice kind {s.kind!r}")


def parse_program(text: str) -> SliceProgram:
    """Parse the slice DSL; errors carry the offending line number."""
    slices = []
    w = 0
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = lineno
        toks = line.split()
        word = toks[0].lower()
        if word in ("cup", "cap"):
            if len(toks) != 2:
                raise ParseError(f"'{word}' takes one position", lineno)
            s = Slice(word, _parse_pos(toks[1], lineno))
        elif word == "cross":
            if len(toks) != 3 or toks[2].lower() not in _CROSS_MODES:
                raise ParseError("expected 'cross P +|-|over|under'", lineno)
            mode = _CROSS_MODES[toks[2].lower()]
            pos = _parse_pos(toks[1], lineno)
            s = Slice("cross", pos, sign=mode) if isinstance(mode, int) else Slice("cross", pos, over=mode)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", lineno)
        try:
            w = _step_width(s, w, lineno)
        except DomainError as exc:
            msg = str(exc).rsplit(" (slice", 1)[0]
            raise ParseError(msg, lineno) from None
        slices.append(s)
    if w != 0:
        raise ParseError(f"nonzero final width {w}", last or None)
    return SliceProgram(tuple(slices))


def _parse_pos(tok, lineno):
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(f"bad position {tok!r}", lineno)
    return int(tok)


def program_text(program: SliceProgram) -> str:
    return "".join(s.text() + "\n" for s in program.slices)


# ---------------------------------------------------------------- diagrams


@dataclass(frozen=True)
class LinkDiagram:
    """Oriented link diagram in PD form.

    ``components`` lists the arcs of each component in traversal order;
    component ids are indices into it, followed by one id per free circle.
    """

    crossings: tuple
    signs: tuple
    components: tuple
    free_circles: int = 0

    @property
    def arcs(self):
        return tuple(a for comp in self.components for a in comp)

    def crossing_count(self):
        return len(self.crossings)

    def component_count(self):
        return len(self.components) + self.free_circles

    def writhe(self):
        return sum(self.signs)

    def component_of_arc(self):
        return {a: k for k, comp in enumerate(self.components) for a in comp}

    def crossing_components(self, i):
        """(under component, over component) of crossing i."""
        owner = self.component_of_arc()
        a, b, _, _ = self.crossings[i]
        return owner[a], owner[b]

    def check(self):
        """Verify the structural invariants; returns True or raises ValueError."""
        from collections import Counter

        counts = Counter(x for tup in self.crossings for x in tup)
        arcs = self.arcs
        if sorted(counts) != sorted(arcs) or len(set(arcs)) != len(arcs):
            raise ValueError("arc labels and components disagree")
        if any(v != 2 for v in counts.values()):
            raise ValueError("an arc label does not occur exactly twice")
        if self.free_circles == 0 and len(arcs) != 2 * len(self.crossings):
            raise ValueError("arc count is not twice the crossing count")
        # strand-following permutation: incoming arc -> outgoing arc
        succ = {}
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            succ[a] = c
            if s > 0:
                succ[d] = b
            else:
                succ[b] = d
        for comp in self.components:
            for x, y in zip(comp, comp[1:] + comp[:1]):
                if succ.get(x) != y:
                    raise ValueError(f"component tracing breaks at arc {x}")
        if len(succ) != len(arcs):
            raise ValueError("strand permutation is not total")
        return True

    def pd_text(self):
        return pd_text(self)

    def gauss_text(self):
        return gauss_text(self)


def writhe(d: LinkDiagram) -> int:
    return d.writhe()


def crossing_count(d: LinkDiagram) -> int:
    return d.crossing_count()


def component_count(d: LinkDiagram) -> int:
    return d.component_count()


def delete_component(d: LinkDiagram, c: int) -> LinkDiagram:
    """Remove component ``c`` together with every crossing it takes part in."""
    ncomp = d.component_count()
    if isinstance(c, bool) or not 0 <= c < ncomp:
        raise DomainError(f"no component {c} (diagram has {ncomp})")
    if c >= len(d.components):
        return LinkDiagram(d.crossings, d.signs, d.components, d.free_circles - 1)
    P = Planar.from_diagram(d)
    arcs = set(d.components[c])
    doomed = {i for i, tup in enumerate(d.crossings) if arcs.intersection(tup)}
    loops = P.remove_crossings(doomed)
    # one of the loops is the deleted component itself
    P.free += loops - 1
    return P.to_diagram()


# ---------------------------------------------------------------- compiler


def compile_program(program: SliceProgram) -> LinkDiagram:
    """Compile a slice program to an oriented PD diagram."""
    program.widths()
    # Tokens: crossing slots (c, s) with geometric slots SW=0 SE=1 NE=2 NW=3,
    # and cup ends ("u", i, 0|1).  ``ext`` holds the one external link of each
    # token; cup ends are internally joined to each other.
    ext = {}
    stamp = {}
    pending = []
    crossing_req = []
    counter = 0

    def join(x, y):
        ext[x] = y
        ext[y] = x

    ncups = 0
    for s in program.slices:
        p = s.position - 1
        if s.kind == "cup":
            left, right = ("u", ncups, 0), ("u", ncups, 1)
            stamp[left] = stamp[right] = counter
            counter += 1
            ncups += 1
            pending[p:p] = [left, right]
        elif s.kind == "cap":
            join(pending[p], pending[p + 1])
            del pending[p:p + 2]
        else:
            c = len(crossing_req)
            crossing_req.append(s)
            join(pending[p], (c, 0))
            join(pending[p + 1], (c, 1))
            stamp[(c, 3)] = counter
            stamp[(c, 2)] = counter + 1
            counter += 2
            pending[p:p + 2] = [(c, 3), (c, 2)]

    def through(tok):
        if tok[0] == "u":
            return ("u", tok[1], 1 - tok[2])
        return (tok[0], (tok[1] + 2) % 4)

    # group tokens into components; each component is a cyclic token walk
    # where consecutive tokens alternate ext / through steps
    is_in = {}
    nbr = {}
    seen = set()
    free = 0
    tokens = sorted(ext, key=lambda t: (t[0] == "u", t))
    for t0 in tokens:
        if t0 in seen:
            continue
        walk = []
        cur = t0
        while True:
            walk.append(cur)
            seen.add(cur)
            nxt = through(cur)
            walk.append(nxt)
            seen.add(nxt)
            cur = ext[nxt]
            if cur == t0:
                break
        # walk = [a0, b0, a1, b1, ...] with a_i -> b_i through, b_i -> a_{i+1} ext
        if all(t[0] == "u" for t in walk):
            free += 1
            continue
        # orientation from the oldest created segment: a segment starts at a
        # stamped token and is traversed away from it
        best = min((stamp[t], i) for i, t in enumerate(walk) if t in stamp)
        i = best[1]
        tok = walk[i]
        if tok[0] == "u":
            # cup: traversed from its left end (0) to its right end (1)
            forward = (tok[2] == 1) == (i % 2 == 1)
        else:
            # crossing output: leaves the crossing, so tok is an out-slot
            forward = i % 2 == 1
        if not forward:
            walk = walk[::-1]
        for j in range(0, len(walk), 2):
            a, b = walk[j], walk[j + 1]
            if a[0] != "u":
                is_in[a] = True
            if b[0] != "u":
                is_in[b] = False
        # resolve crossing-to-crossing neighbours across cups
        n = len(walk)
        for j in range(1, n, 2):
            b = walk[j]
            if b[0] == "u":
                continue
            k = j + 1
            while walk[k % n][0] == "u":
                k += 2
            nbr[b] = walk[k % n]
            nbr[walk[k % n]] = b

    P = Planar()
    for _ in crossing_req:
        P.new_crossing()
    P.nbr = nbr
    P.is_in = is_in
    P.free = free
    for c, s in enumerate(crossing_req):
        # provisional: SW-NE (the strand from position P) is under
        if s.over:
            if s.over == "over":
                P.flip(c)
        elif P.sign(c) != s.sign:
            P.flip(c)
    return P.to_diagram()


compile = compile_program  # noqa: A001  (public name used throughout the docs)


# ---------------------------------------------------------------- PD / Gauss


def pd_text(d: LinkDiagram) -> str:
    lines = [f"X[{a},{b},{c},{e}]" for a, b, c, e in d.crossings]
    if d.free_circles:
        lines.append(f"O x {d.free_circles}")
    return "\n".join(lines) + "\n"


_X_RE = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_O_RE = re.compile(r"O\s*x\s*(\d+)")


def parse_pd(text: str) -> LinkDiagram:
    """Read ``X[a,b,c,d]`` lines (plus an optional ``O x k`` line).

    Over-strand directions are propagated from the under-strands; strands
    that are over everywhere fall back to the consecutive-label convention.
    """
    tuples = []
    free = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _X_RE.fullmatch(line)
        if m:
            tuples.append(tuple(int(g) for g in m.groups()))
            continue
        m = _O_RE.fullmatch(line)
        if m:
            free += int(m.group(1))
            continue
        raise ParseError(f"cannot read {line!r}", lineno)
    P = Planar()
    where = {}
    for tup in tuples:
        c = P.new_crossing()
        for s, label in enumerate(tup):
            where.setdefault(label, []).append((c, s))
    for label, slots in where.items():
        if len(slots) != 2:
            raise ParseError(f"arc {label} occurs {len(slots)} times")
        P.link(*slots)
    is_in = {}
    for c in P.ids:
        is_in[(c, 0)] = True
        is_in[(c, 2)] = False
    _propagate(P, is_in)
    for c, (_, b, _, e) in zip(P.ids, tuples):
        if (c, 1) not in is_in:
            forward = e - b == 1 or b - e > 1  # over-strand runs b -> d
            is_in[(c, 1)] = forward
            is_in[(c, 3)] = not forward
            _propagate(P, is_in)
    P.is_in = is_in
    P.free = free
    P.reorient()
    return P.to_diagram()


def _propagate(P, is_in):
    stack = list(is_in)
    while stack:
        x = stack.pop()
        for y, val in ((P.nbr[x], not is_in[x]), ((x[0], (x[1] + 2) % 4), not is_in[x])):
            if y not in is_in:
                is_in[y] = val
                stack.append(y)


def gauss_code(d: LinkDiagram):
    """Per component: crossing numbers (1-based), positive where it passes over."""
    at = {}
    for i, (a, b, c, e) in enumerate(d.crossings, 1):
        at[a] = -i
        if d.signs[i - 1] > 0:
            at[e] = i
        else:
            at[b] = i
    return [[at[arc] for arc in comp] for comp in d.components]


def gauss_text(d: LinkDiagram) -> str:
    lines = []
    for k, code in enumerate(gauss_code(d)):
        lines.append(f"component {k}: " + " ".join(f"{v:+d}" for v in code))
    for k in range(d.free_circles):
        lines.append(f"component {len(d.components) + k}: (no crossings)")
    lines.append("signs: " + " ".join("+" if s > 0 else "-" for s in d.signs))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- canonical form


def reverse_components(d: LinkDiagram, which) -> LinkDiagram:
    """Reverse the orientation of the listed components."""
    which = set(which)
    if not which:
        return d
    P = Planar.from_diagram(d)
    owner = d.component_of_arc()
    for i, tup in enumerate(d.crossings):
        for s, arc in enumerate(tup):
            if owner[arc] in which:
                P.is_in[(i, s)] = not P.is_in[(i, s)]
    return P.to_diagram()


def _relabel_from(d, start, succ, owner, incident):
    label = {}
    n = 0
    queue = [start]
    done_comp = set()
    qi = 0
    while qi < len(queue):
        arc = queue[qi]
        qi += 1
        comp = owner[arc]
        if comp in done_comp:
            continue
        done_comp.add(comp)
        cur = arc
        while True:
            n += 1
            label[cur] = n
            cur = succ[cur]
            if cur == arc:
                break
        # reach further components through crossings, in label order
        for a in sorted(label, key=label.get)[n - len(d.components[comp]):]:
            for i in incident[a]:
                for other in d.crossings[i]:
                    if owner[other] not in done_comp:
                        queue.append(_incoming(d, i, other, succ))
    if len(label) != len(owner):
        return None
    body = tuple(
        sorted((tuple(label[x] for x in tup), s) for tup, s in zip(d.crossings, d.signs))
    )
    return body


def _incoming(d, i, arc, succ):
    """The arc entering crossing i on the strand that contains ``arc``."""
    tup = d.crossings[i]
    s = tup.index(arc)
    pair = tup[(s + 2) % 4]
    return arc if succ.get(arc) == pair else pair


def canonical_pd(d: LinkDiagram, oriented=True):
    """Hashable form equal for diagrams that agree up to relabelling.

    With ``oriented=False`` the given orientations are ignored: the start
    component is tried both ways and every other component is oriented by
    where the traversal first meets it.
    """
    if not oriented:
        return _unoriented_canonical(d)
    succ = {}
    for comp in d.components:
        for x, y in zip(comp, comp[1:] + comp[:1]):
            succ[x] = y
    owner = d.component_of_arc()
    # per arc: the crossing it enters, then the one it leaves
    head = {}
    tail = {}
    for i, tup in enumerate(d.crossings):
        for a in tup:
            if succ[a] in tup and (tup.index(succ[a]) - tup.index(a)) % 4 == 2:
                head.setdefault(a, i)
            else:
                tail.setdefault(a, i)
    incident = {a: [head[a], tail.get(a, head[a])] for a in owner}
    best = None
    for start in owner:
        body = _relabel_from(d, start, succ, owner, incident)
        if body is None:
            # split diagram: fall back to per-piece forms
            return _split_canonical(d)
        if best is None or body < best:
            best = body
    return (best or (), d.free_circles)


def _split_canonical(d, oriented=True):
    P = Planar.from_diagram(d)
    pieces = []
    seen = set()
    for c in P.ids:
        if c in seen:
            continue
        stack = [c]
        group = set()
        while stack:
            x = stack.pop()
            if x in group:
                continue
            group.add(x)
            stack.extend(P.nbr[(x, s)][0] for s in range(4))
        seen |= group
        sub = P.copy()
        sub.remove_crossings(set(P.ids) - group)
        sub.free = 0
        pieces.append(canonical_pd(sub.to_diagram(), oriented)[0])
    return (tuple(sorted(pieces)), d.free_circles)


def _unoriented_canonical(d):
    P = Planar.from_diagram(d)
    if P.piece_count() > 1:
        return _split_canonical(d, oriented=False)
    best = None
    for c in P.ids:
        for s in range(4):
            key = _directed_key(P, (c, s))
            if best is None or key < best:
                best = key
    return (best or (), d.free_circles)


def _directed_key(P, start_out):
    """Relabel from the directed edge leaving ``start_out``; orientation of
    later components: leave through the slot counterclockwise of where the
    discovering strand arrived (or left)."""
    label = {}
    head = set()
    order = []
    queue = [start_out]
    qi = 0
    n = 0
    while qi < len(queue):
        out = queue[qi]
        qi += 1
        if out in label:
            continue
        first = out
        while True:
            inn = P.nbr[out]
            n += 1
            label[out] = label[inn] = n
            head.add(inn)
            order.append((inn, out))
            out = (inn[0], (inn[1] + 2) % 4)
            if out == first:
                break
        while len(order):
            inn, tail = order.pop(0)
            for c, s in (inn, tail):
                nxt = (c, (s + 1) % 4)
                if nxt not in label:
                    queue.append(nxt)
    body = []
    for c in P.ids:
        under_in = 0 if (c, 0) in head else 2
        tup = tuple(label[(c, (under_in + k) % 4)] for k in range(4))
        sign = 1 if (c, (under_in + 3) % 4) in head else -1
        body.append((tup, sign))
    return tuple(sorted(body))
