"""Builders for the augmented chains L_n, L'_n and the Brunnian links Br(k).

All three families are written as slice programs scanned bottom to top.  Six
strand positions are alive: a long bottom component B at 1-2, the current
clasp component C_i at 3-4 and a long top component T at 5-6.  Block i puts
a vertical circle around positions 2-3 (lower) and one around 4-5 (upper),
after which C_i is capped and C_{i+1} cupped.

A circle passes over both strands it meets on one side and under both on
the other, so every strand it meets alternates at the circle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ._planar import Planar
from .diagram import LinkDiagram, compile_program, parse_program
from .errors import DomainError, ParseError, RewriteError

__all__ = [
    "FamilySpec",
    "CircleTag",
    "AugmentedStructure",
    "parse_family",
    "family_program",
    "build_Ln",
    "build_Lpn",
    "build_Br",
    "build",
    "find_circles",
    "adams_move",
    "adams_crossing",
    "rolfsen_twist",
    "rolfsen_pipeline",
    "circle_component",
    "adams_all",
    "LOWER_SIGN",
    "UPPER_SIGN",
]

# Handedness of the Adams crossing (and of the twists filling the circle) per level.
LOWER_SIGN = 1
UPPER_SIGN = -1
_HANDED = {1: "over", -1: "under"}


@dataclass(frozen=True)
class FamilySpec:
    family: str  # "Ln" | "Lpn" | "Br"
    n: int
    twists: tuple = ()

    def __post_init__(self):
        if self.family not in ("Ln", "Lpn", "Br"):
            raise DomainError(f"unknown family {self.family!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if self.family == "Br":
            if len(self.twists) != self.n:
                raise DomainError(f"Br needs {self.n} twist numbers, got {len(self.twists)}")
            if any(isinstance(k, bool) or not isinstance(k, int) or k < 1 for k in self.twists):
                raise DomainError("every twist number must be an integer >= 1")
        elif self.twists:
            raise DomainError(f"{self.family} takes no twist numbers")

    @classmethod
    def br(cls, *twists):
        if len(twists) == 1 and isinstance(twists[0], (list, tuple)):
            twists = tuple(twists[0])
        return cls("Br", len(twists), tuple(twists))

    def label(self):
        if self.family == "Br":
            return "Br(" + ",".join(map(str, self.twists)) + ")"
        return f"{self.family}({self.n})"


def parse_family(text: str) -> FamilySpec:
    """Read ``Ln:4``, ``Lpn:4`` or ``Br:1,2,1`` (a space may replace the colon)."""
    m = re.fullmatch(r"\s*(Ln|Lpn|Br)\s*[: ]\s*([0-9][0-9,\s]*)\s*", text or "")
    if not m:
        raise ParseError(f"bad family spec {text!r}; expected Ln:N, Lpn:N or Br:k1,...,kn")
    fam, rest = m.groups()
    nums = [int(x) for x in re.split(r"[,\s]+", rest.strip()) if x]
    if fam == "Br":
        return FamilySpec("Br", len(nums), tuple(nums))
    if len(nums) != 1:
        raise ParseError(f"{fam} takes a single n")
    return FamilySpec(fam, nums[0])


@dataclass(frozen=True)
class CircleTag:
    component: int
    block: int  # 1-based
    level: str  # "lower" | "upper"
    crossings: tuple = ()  # crossing indices in the diagram it was built with


@dataclass(frozen=True)
class AugmentedStructure:
    circles: tuple  # CircleTag, in block order (lower before upper)

    @property
    def circle_ids(self):
        return tuple(t.component for t in self.circles)

    def tag(self, block, level):
        for t in self.circles:
            if t.block == block and t.level == level:
                return t
        raise KeyError((block, level))


# ---------------------------------------------------------------- programs


def _circle(p):
    """Circle around positions p, p+1: over on its first side, under on the other."""
    return [
        f"cup {p}",
        f"cross {p + 1} under",
        f"cross {p + 2} under",
        f"cross {p} over",
        f"cross {p + 1} over",
        f"cap {p + 2}",
    ]


def _program_lines(spec):
    """Program lines plus, per vertical circle, its four crossing indices."""
    lines = [f"# {spec.label()}", "cup 1", "cup 3", "cup 5"]
    circles = []
    ncross = 0

    def add(chunk):
        nonlocal ncross
        lines.extend(chunk)
        ncross += sum(line.startswith("cross") for line in chunk)

    for i in range(spec.n):
        lines.append(f"# block {i + 1}")
        if spec.family == "Br":
            reps = 2 * spec.twists[i] + 1
            add([f"cross 2 {_HANDED[LOWER_SIGN]}"] * reps + [f"cross 4 {_HANDED[UPPER_SIGN]}"] * reps)
        else:
            if spec.family == "Lpn":
                # both strands run up into the circle, so left-over is handedness +1
                add([f"cross 2 {_HANDED[LOWER_SIGN]}", f"cross 4 {_HANDED[UPPER_SIGN]}"])
            for p in (2, 4):
                circles.append(tuple(range(ncross, ncross + 4)))
                add(_circle(p))
        if i + 1 < spec.n:
            add(["cap 3", "cup 3"])
    add(["cap 3", "cap 3", "cap 1"])
    return lines, circles


def family_program(spec: FamilySpec) -> str:
    return "\n".join(_program_lines(spec)[0]) + "\n"


def _build_augmented(spec):
    lines, circles = _program_lines(spec)
    d = compile_program(parse_program("\n".join(lines)))
    tags = []
    for j, group in enumerate(circles):
        level = "lower" if j % 2 == 0 else "upper"
        tags.append(CircleTag(circle_component(d, group), j // 2 + 1, level, group))
    return d, AugmentedStructure(tuple(tags))


def build_Ln(n: int):
    return _build_augmented(FamilySpec("Ln", n))


def build_Lpn(n: int):
    return _build_augmented(FamilySpec("Lpn", n))


def build_Br(spec) -> LinkDiagram:
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec.br(tuple(spec))
    if spec.family != "Br":
        raise DomainError("build_Br needs a Br spec")
    return compile_program(parse_program(family_program(spec)))


def build(spec: FamilySpec) -> LinkDiagram:
    if spec.family == "Ln":
        return build_Ln(spec.n)[0]
    if spec.family == "Lpn":
        return build_Lpn(spec.n)[0]
    return build_Br(spec)


# ---------------------------------------------------------------- circles


def _circle_shape(d, comp):
    """Crossing indices of a 2-strand augmentation circle, else None.

    Returned in the order met along the circle, starting at its lowest index.
    """
    if comp >= len(d.components):
        return None
    arcs = set(d.components[comp])
    owner = d.component_of_arc()
    visits = []
    for i, tup in enumerate(d.crossings):
        mine = [s for s, a in enumerate(tup) if a in arcs]
        if not mine:
            continue
        if len(mine) != 2 or mine[0] % 2 != mine[1] % 2:
            return None  # self-crossing
        visits.append(i)
    if len(visits) != 4:
        return None
    others = []
    for i in visits:
        tup = d.crossings[i]
        others.append(next(owner[a] for a in tup if a not in arcs))
    if comp in others:
        return None
    P = Planar.from_diagram(d)
    inner = _inner_face(P, set(visits))
    if inner is None:
        return None
    return visits


def _circle_slots(P, crossings):
    """Slots of ``P`` lying on the circle through ``crossings``."""
    c = min(crossings)
    for s in range(4):
        slots = P.component_slots((c, s))
        if {x[0] for x in slots} == set(crossings) and len(slots) == 8:
            return set(slots)
    return None


def _inner_face(P, crossings):
    """The 4-gon inside the circle bounded by both encircled strands."""
    on_circle = _circle_slots(P, crossings)
    if on_circle is None:
        return None
    for f in P.faces():
        if len(f) == 4 and {x[0] for x in f} == crossings:
            circle_edges = [x for x in f if x in on_circle]
            if len(circle_edges) == 2:
                return f
    return None


def find_circles(d: LinkDiagram):
    """Components shaped like a circle around two strands, by oldest crossing.

    In L_n the clasp components have this shape too; use the structure
    returned by the builders to single out the vertical circles.
    """
    found = []
    for comp in range(len(d.components)):
        shape = _circle_shape(d, comp)
        if shape is not None:
            found.append((min(shape), comp))
    return [comp for _, comp in sorted(found)]


def _require_circle(d, circle):
    if isinstance(circle, bool) or not isinstance(circle, int):
        raise DomainError("circle must be a component id")
    shape = _circle_shape(d, circle)
    if shape is None:
        raise RewriteError(f"component {circle} is not a two-strand augmentation circle")
    return shape


def _outer_corner(P, crossings):
    """Outer face along the circle edge joining its two oldest crossings.

    Returns the departure slots (p1, p2) of the encircled strands' edges that
    bound this face next to the circle, ready for :meth:`Planar.insert_twist`.
    """
    on_circle = _circle_slots(P, crossings)
    lo = set(sorted(crossings)[:2])
    inner = _inner_face(P, crossings)
    for f in P.faces():
        if f is inner or f == inner:
            continue
        for j, x in enumerate(f):
            y = P.nbr[x]
            if x in on_circle and {x[0], y[0]} == lo:
                after = f[(j + 1) % len(f)]
                before = f[j - 1]
                return after, before
    raise RewriteError("no outer face beside the circle")


def adams_crossing(d: LinkDiagram, circle: int):
    """Index of the crossing between the encircled strands beside the circle, or None."""
    shape = _require_circle(d, circle)
    P = Planar.from_diagram(d)
    found = _adams_triangle(P, set(shape))
    return None if found is None else found[0]


def _adams_triangle(P, crossings):
    on_circle = _circle_slots(P, crossings)
    for f in P.faces():
        if len(f) != 3:
            continue
        outside = [x for x in f if x[0] not in crossings]
        if len(outside) != 1:
            continue
        circ = [x for x in f if x[0] in crossings]
        if not any(x in on_circle for x in circ):
            continue
        return outside[0][0], outside[0]
    return None


def adams_move(d: LinkDiagram, circle: int, direction="forward", sign=-1) -> LinkDiagram:
    """Insert (forward) or remove (inverse) the crossing beside a circle.

    Forward puts a half-twist between the two encircled strands, next to
    the circle edge joining its two oldest crossings.  Its ``sign`` is the
    handedness: the crossing sign seen with both strands oriented toward
    the circle, which does not depend on the link's orientation.  Inverse
    removes a crossing that shares a triangular face with the circle.
    """
    shape = _require_circle(d, circle)
    P = Planar.from_diagram(d)
    crossings = set(shape)
    if direction == "forward":
        if sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if _adams_triangle(P, crossings) is not None:
            raise RewriteError("circle already has an adjacent crossing")
        p1, p2 = _outer_corner(P, crossings)
        (x,) = P.insert_twist(p1, p2, 1)
        P.reorient()
        # slots 0 and 3 of the new crossing face the circle
        away = (P.is_in[(x, 0)]) + (P.is_in[(x, 3)])
        if P.sign(x) * (-1) ** away != sign:
            P.flip(x)
    elif direction == "inverse":
        found = _adams_triangle(P, crossings)
        if found is None:
            raise RewriteError("no crossing beside the circle")
        x, depart = found
        t_out = depart[1]
        t_back = (t_out + 1) % 4  # arrival slot of the triangle at x
        _smooth(P, x, ((t_out, (t_out - 1) % 4), (t_back, (t_back + 1) % 4)))
        P.reorient()
    else:
        raise DomainError("direction must be 'forward' or 'inverse'")
    return P.to_diagram()


def _smooth(P, x, pairs):
    ends = {s: P.nbr[(x, s)] for s in range(4)}
    for s in range(4):
        del P.nbr[(x, s)]
        P.is_in.pop((x, s), None)
    P.ids.remove(x)
    for s1, s2 in pairs:
        a, b = ends[s1], ends[s2]
        if a == (x, s2):
            P.free += 1
            continue
        if a[0] == x or b[0] == x:
            raise RewriteError("smoothing would create a dangling end")
        P.link(a, b)


def rolfsen_twist(d: LinkDiagram, circle: int, k: int, sign: int) -> LinkDiagram:
    """Replace a circle by 2k half-twists of oriented sign ``sign`` (1/k filling)."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError("k must be an integer >= 1")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    shape = _require_circle(d, circle)
    P = Planar.from_diagram(d)
    crossings = set(shape)
    inner = _inner_face(P, crossings)
    on_circle = _circle_slots(P, crossings)
    chords = [x for x in inner if x not in on_circle]
    new = P.insert_twist(chords[0], chords[1], 2 * k)
    loops = P.remove_crossings(crossings)
    P.free += loops - 1
    P.reorient()
    P.set_signs(new, sign)
    return P.to_diagram()


def circle_component(d: LinkDiagram, crossings) -> int:
    """The component whose crossings are exactly the given ones."""
    owner = d.component_of_arc()
    group = set(crossings)
    common = set.intersection(*({owner[a] for a in d.crossings[i]} for i in group))
    common = {
        c for c in common
        if {i for i, tup in enumerate(d.crossings) if any(owner[a] == c for a in tup)} == group
    }
    if len(common) != 1:
        raise RewriteError(f"crossings {tuple(crossings)} do not single out a circle")
    return common.pop()


def adams_all(d: LinkDiagram, structure: AugmentedStructure) -> LinkDiagram:
    """Forward Adams move at every circle (lower +, upper - as in L'_n)."""
    # new crossings are appended, so recorded indices stay valid
    for tag in structure.circles:
        sign = LOWER_SIGN if tag.level == "lower" else UPPER_SIGN
        d = adams_move(d, circle_component(d, tag.crossings), "forward", sign)
    return d


def rolfsen_pipeline(twists) -> LinkDiagram:
    """Br(k) obtained from L'_n by twisting out every circle.

    Each circle is filled with 2k_i half-twists whose sign matches the
    Adams crossing beside it, so block i ends with 2k_i+1 crossings of one
    sign at each level.
    """
    spec = FamilySpec.br(tuple(twists))
    d, structure = build_Lpn(spec.n)
    # last circle first: removing high indices leaves lower ones in place
    for tag in reversed(structure.circles):
        circle = circle_component(d, tag.crossings)
        x = adams_crossing(d, circle)
        if x is None:
            raise RewriteError("circle without an Adams crossing")
        d = rolfsen_twist(d, circle, spec.twists[tag.block - 1], d.signs[x])
    return d
