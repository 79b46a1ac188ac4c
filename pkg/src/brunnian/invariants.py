"""Link invariants and the Brunnian-property checker.

The bracket is normalised so that a crossingless circle has value 1, and the
Jones polynomial is ``(-A)^(-3w) <D>`` read at ``A = t^(-1/4)``.  Links with
an even number of components have half-integer powers of ``t``, which
:class:`LaurentPoly` stores as doubled integer exponents.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels
from .diagram import LinkDiagram, delete_component
from .errors import DomainError, ResourceError

__all__ = [
    "LaurentPoly",
    "LinkingMatrix",
    "linking_matrix",
    "kauffman_bracket",
    "jones",
    "unlink_jones",
    "BRACKET_CROSSING_LIMIT",
    "TrivialityVerdict",
    "simplify_to_trivial",
    "BrunnianReport",
    "verify_brunnian",
    "certify_diagram",
    "TwistRegion",
    "TwistCensus",
    "twist_region_census",
]

BRACKET_CROSSING_LIMIT = 24


class LaurentPoly:
    """Integer Laurent polynomial in one variable.

    Exponents are stored multiplied by ``scale`` so that half-integer powers
    (``scale=2``, as in the Jones polynomial of an even link) stay integral.
    Zero coefficients are never stored.
    """

    __slots__ = ("terms", "var", "scale")

    def __init__(self, terms=None, var="t", scale=1):
        self.terms = {int(e): int(c) for e, c in (terms or {}).items() if c}
        self.var = var
        self.scale = scale

    @classmethod
    def from_exponents(cls, mapping, var="t"):
        """Build from {rational exponent: coefficient}."""
        mapping = {Fraction(e): c for e, c in mapping.items()}
        scale = 1
        for e in mapping:
            scale = scale * e.denominator // gcd(scale, e.denominator)
        return cls({int(e * scale): c for e, c in mapping.items()}, var, scale)

    def _rescaled(self, scale):
        k = scale // self.scale
        return {e * k: c for e, c in self.terms.items()}

    def _common(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return None
        scale = self.scale * other.scale // gcd(self.scale, other.scale)
        return scale, self._rescaled(scale), other._rescaled(scale)

    def __add__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        scale, mine, theirs = common
        out = defaultdict(int, mine)
        for e, c in theirs.items():
            out[e] += c
        return LaurentPoly(out, self.var, scale)._reduced()

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var, self.scale)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        return self + (-other)

    def __mul__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        scale, mine, theirs = common
        out = defaultdict(int)
        for e1, c1 in mine.items():
            for e2, c2 in theirs.items():
                out[e1 + e2] += c1 * c2
        return LaurentPoly(out, self.var, scale)._reduced()

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only non-negative integer powers")
        out = LaurentPoly({0: 1}, self.var)
        for _ in range(n):
            out = out * self
        return out

    def _reduced(self):
        """Smallest scale that keeps every exponent integral."""
        g = self.scale
        for e in self.terms:
            g = gcd(g, e)
        if g <= 1:
            return self
        return LaurentPoly({e // g: c for e, c in self.terms.items()}, self.var, self.scale // g)

    def __eq__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        _, mine, theirs = common
        return mine == theirs

    def __hash__(self):
        r = self._reduced()
        return hash((frozenset(r.terms.items()), r.scale))

    def is_zero(self):
        return not self.terms

    def evaluate(self, x):
        return sum(c * x ** (e / self.scale) for e, c in self.terms.items())

    def coefficients(self):
        """Sorted (exponent, coefficient) pairs with Fraction exponents."""
        return sorted((Fraction(e, self.scale), c) for e, c in self.terms.items())

    def to_json(self):
        return [[str(e), c] for e, c in self.coefficients()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.coefficients()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "" if e == 1 else f"^{e}" if e.denominator == 1 else f"^({e})"
                body = ("" if mag == 1 else f"{mag}*") + self.var + power
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            text += f" {sgn} {body}"
        return text

    __repr__ = __str__


# ---------------------------------------------------------------- linking


@dataclass(frozen=True)
class LinkingMatrix:
    """Pairwise linking numbers (zero diagonal)."""

    values: tuple

    @property
    def size(self):
        return len(self.values)

    def __getitem__(self, ij):
        i, j = ij
        return self.values[i][j]

    def off_diagonal_zero(self):
        n = self.size
        return all(self.values[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def as_lists(self):
        return [list(r) for r in self.values]


def linking_matrix(d: LinkDiagram) -> LinkingMatrix:
    n = d.component_count()
    twice = [[0] * n for _ in range(n)]
    for i, s in enumerate(d.signs):
        a, b = d.crossing_components(i)
        if a != b:
            twice[a][b] += s
            twice[b][a] += s
    return LinkingMatrix(tuple(tuple(v // 2 for v in row) for row in twice))


# ---------------------------------------------------------------- bracket


def _bracket_exponents(d: LinkDiagram, limit):
    """Bracket as {exponent of A: coefficient}, unknot normalised to 1."""
    c = d.crossing_count()
    if c > limit:
        raise ResourceError(f"{c} crossings exceeds the state-sum limit of {limit}")
    loops_extra = d.free_circles
    if c == 0:
        hist = np.zeros((1, 2), dtype=np.int64)
        hist[0, 0] = 1
        loops_extra -= 1
        if d.free_circles == 0:
            raise DomainError("empty diagram")
    else:
        labels = sorted(set(d.arcs))
        index = {a: i for i, a in enumerate(labels)}
        pd = np.array([[index[x] for x in tup] for tup in d.crossings], dtype=np.int32)
        hist = _kernels.bracket_histogram(np.ascontiguousarray(pd), len(labels))
    # delta = -A^2 - A^-2, raised to (loops - 1)
    delta = {2: -1, -2: -1}
    powers = [{0: 1}]

    def delta_pow(k):
        while len(powers) <= k:
            prev = powers[-1]
            nxt = defaultdict(int)
            for e, v in prev.items():
                for e2, v2 in delta.items():
                    nxt[e + e2] += v * v2
            powers.append(dict(nxt))
        return powers[k]

    out = defaultdict(int)
    rows, cols = hist.shape
    for a in range(rows):
        for loops in range(cols):
            cnt = int(hist[a, loops])
            if not cnt:
                continue
            k = loops + loops_extra - 1 if c else loops_extra
            shift = a - (c - a)
            for e, v in delta_pow(k).items():
                out[e + shift] += cnt * v
    return {e: v for e, v in out.items() if v}


def kauffman_bracket(d: LinkDiagram, *, limit=BRACKET_CROSSING_LIMIT) -> LaurentPoly:
    """Kauffman bracket in the variable A (unknot = 1)."""
    return LaurentPoly(_bracket_exponents(d, limit), var="A")


def jones(d: LinkDiagram, *, limit=BRACKET_CROSSING_LIMIT) -> LaurentPoly:
    """Jones polynomial in t."""
    br = _bracket_exponents(d, limit)
    w = d.writhe()
    sign = -1 if w % 2 else 1
    # (-A)^(-3w) <D>, then A^e -> t^(-e/4); exponents of t kept doubled
    doubled = {}
    for e, v in br.items():
        shifted = e - 3 * w
        if shifted % 2:
            raise ValueError("bracket exponent parity is inconsistent")
        doubled[-shifted // 2] = sign * v
    return LaurentPoly(doubled, "t", 2)._reduced()


def unlink_jones(k: int) -> LaurentPoly:
    """Jones polynomial of the k-component unlink."""
    base = LaurentPoly({1: -1, -1: -1}, "t", 2)
    return base ** (k - 1)


# ---------------------------------------------------------------- triviality


@dataclass(frozen=True)
class TrivialityVerdict:
    trivial: bool
    certificate: tuple = ()
    reason: str = ""
    final: LinkDiagram | None = None

    @property
    def label(self):
        return "Trivial" if self.trivial else "Unknown"


def _budget(max_steps):
    if max_steps is not None:
        return int(max_steps)
    env = os.environ.get("BRUNNIAN_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"BRUNNIAN_BUDGET must be an integer, got {env!r}") from None
        if value < 1:
            raise DomainError("BRUNNIAN_BUDGET must be positive")
        return value
    return 10_000


def simplify_to_trivial(d: LinkDiagram, max_steps=None) -> TrivialityVerdict:
    """Try to reduce ``d`` to a crossingless diagram with diagram moves."""
    from .moves import simplify

    result = simplify(d, max_steps=_budget(max_steps))
    if result.diagram.crossing_count() == 0:
        return TrivialityVerdict(True, tuple(result.moves), "", result.diagram)
    return TrivialityVerdict(
        False,
        tuple(result.moves),
        f"stuck at {result.diagram.crossing_count()} crossings after {result.steps} steps",
        result.diagram,
    )


@dataclass(frozen=True)
class BrunnianReport:
    name: str
    components: int
    crossings: int
    sublinks: tuple  # TrivialityVerdict per deleted component
    jones_full: LaurentPoly | None
    jones_unlink: LaurentPoly
    nontrivial: bool | None
    linking: LinkingMatrix
    notes: tuple = field(default=())

    @property
    def all_sublinks_trivial(self):
        return all(v.trivial for v in self.sublinks)

    @property
    def certified(self):
        return self.all_sublinks_trivial and bool(self.nontrivial)

    @property
    def verdict(self):
        # the checks can only ever confirm; a failed check means "unknown"
        return "Brunnian-certified" if self.certified else "Unknown"

    def as_dict(self):
        return {
            "name": self.name,
            "components": self.components,
            "crossings": self.crossings,
            "verdict": self.verdict,
            "sublinks": [
                {
                    "deleted": i,
                    "result": v.label,
                    "moves": len(v.certificate),
                    "reason": v.reason,
                }
                for i, v in enumerate(self.sublinks)
            ],
            "jones": None if self.jones_full is None else self.jones_full.to_json(),
            "jones_text": None if self.jones_full is None else str(self.jones_full),
            "nontrivial": self.nontrivial,
            "linking_matrix": self.linking.as_lists(),
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)

    def to_kv(self):
        lines = [
            f"name={self.name}",
            f"components={self.components}",
            f"crossings={self.crossings}",
            f"verdict={self.verdict}",
        ]
        for i, v in enumerate(self.sublinks):
            lines.append(f"sublink.{i}={v.label}")
        lines.append(f"jones={self.jones_full}")
        lines.append(f"nontrivial={self.nontrivial}")
        lines.append(f"linking_offdiag_zero={self.linking.off_diagonal_zero()}")
        return "\n".join(lines) + "\n"

    def to_text(self):
        out = [f"{self.name}: {self.components} components, {self.crossings} crossings"]
        for i, v in enumerate(self.sublinks):
            detail = f"{len(v.certificate)} moves" if v.trivial else v.reason
            out.append(f"  delete component {i}: {v.label} ({detail})")
        if self.jones_full is None:
            out.append("  Jones polynomial: not computed")
        else:
            out.append(f"  Jones polynomial: {self.jones_full}")
            out.append(f"  unlink value:     {self.jones_unlink}")
        out.append(f"  verdict: {self.verdict}")
        out.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(out) + "\n"


def verify_brunnian(spec, max_steps=None) -> BrunnianReport:
    """Certify that the Br link of ``spec`` is Brunnian.

    Every sublink with one component deleted must simplify to a crossingless
    unlink, and the Jones polynomial of the whole link must differ from the
    unlink's.  Only family specs are accepted.
    """
    from .families import FamilySpec, build

    if not isinstance(spec, FamilySpec):
        raise DomainError("verify_brunnian takes a FamilySpec")
    return certify_diagram(build(spec), spec.label(), max_steps)


def certify_diagram(d: LinkDiagram, name="link", max_steps=None) -> BrunnianReport:
    """The checks of :func:`verify_brunnian` on an arbitrary diagram."""
    n = d.component_count()
    if n < 2:
        raise DomainError("a Brunnian check needs at least two components")
    budget = _budget(max_steps)
    sublinks = tuple(
        simplify_to_trivial(delete_component(d, i), max_steps=budget) for i in range(n)
    )
    notes = []
    try:
        jf = jones(d)
        nontrivial = jf != unlink_jones(n)
    except ResourceError as exc:
        jf = None
        nontrivial = None
        notes.append(str(exc))
    return BrunnianReport(
        name=name,
        components=n,
        crossings=d.crossing_count(),
        sublinks=sublinks,
        jones_full=jf,
        jones_unlink=unlink_jones(n),
        nontrivial=nontrivial,
        linking=linking_matrix(d),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------- twist regions


@dataclass(frozen=True)
class TwistRegion:
    crossings: tuple  # crossing indices
    components: tuple  # the (one or two) components whose strands form it
    traversals: dict  # component -> number of crossing visits in the region

    @property
    def size(self):
        return len(self.crossings)


@dataclass(frozen=True)
class TwistCensus:
    regions: tuple
    per_component: dict  # component -> total crossing visits inside regions

    @property
    def max_size(self):
        return max((r.size for r in self.regions), default=0)

    def has_region_at_least(self, k=6):
        return any(r.size >= k for r in self.regions)

    def all_regions_at_least(self, k=6):
        return bool(self.regions) and all(r.size >= k for r in self.regions)

    def sizes(self):
        return [r.size for r in self.regions]

    def as_rows(self):
        rows = []
        for i, r in enumerate(self.regions):
            rows.append(
                {
                    "region": i,
                    "size": r.size,
                    "crossings": list(r.crossings),
                    "components": list(r.components),
                    "traversals": {str(k): v for k, v in sorted(r.traversals.items())},
                }
            )
        return rows


def twist_region_census(d: LinkDiagram) -> TwistCensus:
    """Group crossings joined by bigon faces into maximal twist regions."""
    from ._planar import Planar

    P = Planar.from_diagram(d)
    index = {c: i for i, c in enumerate(P.ids)}
    parent = list(range(len(P.ids)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for face in P.faces():
        if len(face) == 2:
            a, b = face[0][0], face[1][0]
            if a != b:
                parent[find(index[a])] = find(index[b])
    groups = defaultdict(list)
    for i in range(len(P.ids)):
        groups[find(i)].append(i)
    regions = []
    per_comp = defaultdict(int)
    for members in sorted(groups.values(), key=lambda g: (-len(g), g)):
        trav = defaultdict(int)
        for i in members:
            a, b = d.crossing_components(i)
            trav[a] += 1
            trav[b] += 1
        for k, v in trav.items():
            per_comp[k] += v
        regions.append(TwistRegion(tuple(members), tuple(sorted(trav)), dict(trav)))
    return TwistCensus(tuple(regions), dict(per_comp))
