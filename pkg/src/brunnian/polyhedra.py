"""Antiprism and P_n skeletons, and the closed-form volume quantities.

Volumes of ideal right-angled antiprisms follow Thurston's drum formula
``vol(A_m) = 2m [L(pi/4 + pi/2m) + L(pi/4 - pi/2m)]``.  The complement of the
link ``L_n`` splits into four copies of ``A_2n``, which gives
``16n [L(pi/4 + pi/4n) + L(pi/4 - pi/4n)]``; the same number bounds the
volume of every hyperbolic ``Br(k_1, ..., k_n)`` from above.

Skeletons use a fixed vertex numbering: top ring, then (for P_n) the middle
ring, then the bottom ring, each counterclockwise.  Faces are stored with a
consistent orientation, so every directed edge occurs in exactly one face.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field

from .errors import DomainError
from .lobachevsky import lobachevsky_pi

__all__ = [
    "REFERENCE",
    "PolyhedralSkeleton",
    "VolumeReport",
    "antiprism_volume",
    "ln_complement_volume",
    "brunnian_upper_bound",
    "volume_report",
    "volume_table_csv",
    "antiprism_skeleton",
    "pn_skeleton",
    "glue_antiprisms",
    "census_satisfies_euler",
]

# Six-digit reference values; kept as data, never used as inputs to formulas.
REFERENCE = {
    "vol_A3": 3.663863,
    "vol_A4": 6.023046,
    "vol_A5": 8.137885,
    "vol_A6": 10.149416,
    "vol_L2": 24.092184,
    "vol_borromean": 7.327724,
    "vol_Br11": 12.528922,
}


def _check_int(name, value, lo):
    if isinstance(value, bool) or int(value) != value:
        raise DomainError(f"{name} must be an integer")
    value = int(value)
    if value < lo:
        raise DomainError(f"{name} must be >= {lo}, got {value}")
    return value


def _drum(m, scale):
    """scale * [L((m+2) pi / 4m) + L((m-2) pi / 4m)] with its error bound."""
    hi = lobachevsky_pi(m + 2, 4 * m)
    lo = lobachevsky_pi(m - 2, 4 * m)
    return scale * (hi.value + lo.value), scale * (hi.abs_error_bound + lo.abs_error_bound)


def antiprism_volume(m: int, with_error: bool = False):
    """Volume of the ideal right-angled m-gonal antiprism, m >= 3."""
    m = _check_int("m", m, 3)
    value, err = _drum(m, 2 * m)
    return (value, err) if with_error else value


def ln_complement_volume(n: int, with_error: bool = False):
    """Volume of the complement of L_n (equivalently of L'_n), n >= 2."""
    n = _check_int("n", n, 2)
    # pi/4 +- pi/4n == (n +- 1) pi / 4n, the drum angles of A_2n
    value, err = _drum(2 * n, 16 * n)
    return (value, err) if with_error else value


def brunnian_upper_bound(n: int, with_error: bool = False):
    """beta_n: strict upper bound for vol(S^3 - Br(k_1..k_n)), n >= 2."""
    return ln_complement_volume(n, with_error=with_error)


@dataclass(frozen=True)
class VolumeReport:
    n: int
    antiprism_vol: float
    ln_vol: float
    beta_n: float
    error_bound: float

    def as_row(self):
        return {
            "n": self.n,
            "vol_A_2n": self.antiprism_vol,
            "vol_Ln": self.ln_vol,
            "beta_n": self.beta_n,
            "error_bound": self.error_bound,
        }


def volume_report(n: int) -> VolumeReport:
    n = _check_int("n", n, 2)
    a, a_err = antiprism_volume(2 * n, with_error=True)
    ln, ln_err = ln_complement_volume(n, with_error=True)
    beta = brunnian_upper_bound(n)
    return VolumeReport(n, a, ln, beta, max(ln_err, 4 * a_err))


def volume_table_csv(n_from: int, n_to: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "vol_A_2n", "vol_Ln", "beta_n", "error_bound"])
    for n in range(n_from, n_to + 1):
        r = volume_report(n)
        writer.writerow([r.n, f"{r.antiprism_vol:.12f}", f"{r.ln_vol:.12f}",
                         f"{r.beta_n:.12f}", f"{r.error_bound:.3e}"])
    return out.getvalue()


# ---------------------------------------------------------------- skeletons


@dataclass(frozen=True)
class PolyhedralSkeleton:
    vertices: tuple
    edges: tuple
    faces: tuple
    labels: dict = field(default_factory=dict, compare=False)

    @property
    def V(self):
        return len(self.vertices)

    @property
    def E(self):
        return len(self.edges)

    @property
    def F(self):
        return len(self.faces)

    def euler_characteristic(self):
        return self.V - self.E + self.F

    def degrees(self):
        deg = Counter()
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return {v: deg[v] for v in self.vertices}

    def face_census(self):
        """Map face size -> number of faces of that size."""
        return dict(sorted(Counter(len(f) for f in self.faces).items()))

    def edge_face_counts(self):
        counts = Counter()
        for f in self.faces:
            for i, u in enumerate(f):
                v = f[(i + 1) % len(f)]
                counts[frozenset((u, v))] += 1
        return counts

    def check(self):
        """Raise ValueError unless this is a 4-valent sphere skeleton."""
        if self.euler_characteristic() != 2:
            raise ValueError(f"Euler characteristic {self.euler_characteristic()} != 2")
        bad = {v: d for v, d in self.degrees().items() if d != 4}
        if bad:
            raise ValueError(f"vertices of degree != 4: {bad}")
        efc = self.edge_face_counts()
        edge_set = {frozenset(e) for e in self.edges}
        if set(efc) != edge_set or any(c != 2 for c in efc.values()):
            raise ValueError("some edge does not lie on exactly two faces")
        directed = Counter()
        for f in self.faces:
            for i, u in enumerate(f):
                directed[(u, f[(i + 1) % len(f)])] += 1
        if any(c != 1 for c in directed.values()):
            raise ValueError("faces are not consistently oriented")
        return True

    def to_adjacency_text(self):
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        lines = []
        for v in self.vertices:
            tag = self.labels.get(v)
            head = f"{v}" + (f" [{tag}]" if tag else "")
            lines.append(f"{head}: " + " ".join(str(w) for w in sorted(adj[v])))
        return "\n".join(lines) + "\n"

    def to_face_text(self):
        return "\n".join(" ".join(str(v) for v in f) for f in self.faces) + "\n"

    @classmethod
    def from_face_text(cls, text):
        faces = []
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                faces.append(tuple(int(tok) for tok in line.split()))
        verts = sorted({v for f in faces for v in f})
        edges = sorted({tuple(sorted((f[i], f[(i + 1) % len(f)])))
                        for f in faces for i in range(len(f))})
        return cls(tuple(verts), tuple(edges), tuple(faces))


def _edges_of(faces):
    return tuple(sorted({tuple(sorted((f[i], f[(i + 1) % len(f)])))
                         for f in faces for i in range(len(f))}))


def antiprism_skeleton(m: int) -> PolyhedralSkeleton:
    """1-skeleton of the m-gonal antiprism: top ring 0..m-1, bottom ring m..2m-1."""
    m = _check_int("m", m, 3)
    t = list(range(m))
    b = list(range(m, 2 * m))
    faces = [tuple(t), tuple(reversed(b))]
    for i in range(m):
        j = (i + 1) % m
        faces.append((t[j], t[i], b[j]))
        faces.append((t[i], b[i], b[j]))
    return PolyhedralSkeleton(tuple(t + b), _edges_of(faces), tuple(faces))


def _pn_labels(m):
    """Alternate vertices of the top and bottom rings are the bowtie (red) ones."""
    labels = {}
    for i in range(m):
        red = i % 2 == 0
        labels[i] = "red" if red else "black"
        labels[m + i] = "black"
        labels[2 * m + i] = "red" if red else "black"
    return labels


def pn_skeleton(n: int) -> PolyhedralSkeleton:
    """1-skeleton of P_n: rings T (0..2n-1), M (2n..4n-1), B (4n..6n-1)."""
    n = _check_int("n", n, 2)
    m = 2 * n
    T = list(range(m))
    M = list(range(m, 2 * m))
    B = list(range(2 * m, 3 * m))
    faces = [tuple(T), tuple(reversed(B))]
    for i in range(m):
        j = (i + 1) % m
        faces.append((T[j], T[i], M[j]))
        faces.append((T[i], M[i], B[j], M[j]))
        faces.append((M[i], B[i], B[j]))
    return PolyhedralSkeleton(tuple(T + M + B), _edges_of(faces), tuple(faces), _pn_labels(m))


def _merge_across(f1, f2, u, v):
    """Merge faces f1 (containing u->v) and f2 (containing v->u), dropping edge uv."""
    i = f1.index(u)
    f1 = f1[i + 1:] + f1[:i + 1]  # starts at v, ends at u
    j = f2.index(v)
    f2 = f2[j + 1:] + f2[:j + 1]  # starts at u, ends at v
    return tuple(f1[:-1] + f2[:-1])


def glue_antiprisms(m: int) -> PolyhedralSkeleton:
    """Glue two copies of A_m along an m-gon and dissolve the gluing ring.

    Copy 1 keeps its labels; copy 2's top ring is identified with copy 1's
    bottom ring.  The glued face and its m edges disappear, and each pair of
    triangles that met across one of those edges becomes a quadrilateral.
    """
    m = _check_int("m", m, 4)
    if m % 2:
        raise DomainError("gluing into P_n needs an even antiprism size m = 2n")
    first = antiprism_skeleton(m)
    second = antiprism_skeleton(m)
    # copy 2: top ring i -> first's bottom ring m+i, bottom ring m+i -> 2m+i
    relabel = {i: m + i for i in range(m)}
    relabel.update({m + i: 2 * m + i for i in range(m)})
    glued_bottom = tuple(reversed(range(m, 2 * m)))
    faces1 = [list(f) for f in first.faces if f != glued_bottom]
    faces2 = [[relabel[v] for v in f] for f in second.faces if f != tuple(range(m))]
    faces = faces1 + faces2
    for i in range(m):
        u, v = m + i, m + (i + 1) % m
        idx1 = next(k for k, f in enumerate(faces) if _has_directed(f, u, v))
        idx2 = next(k for k, f in enumerate(faces) if _has_directed(f, v, u))
        merged = list(_merge_across(faces[idx1], faces[idx2], u, v))
        faces = [f for k, f in enumerate(faces) if k not in (idx1, idx2)] + [merged]
    faces = tuple(tuple(f) for f in faces)
    return PolyhedralSkeleton(tuple(range(3 * m)), _edges_of(faces), faces, _pn_labels(m))


def _has_directed(face, u, v):
    k = len(face)
    return any(face[i] == u and face[(i + 1) % k] == v for i in range(k))


def census_satisfies_euler(vertices: int, census: dict, degree: int = 4) -> bool:
    """Whether a face census is compatible with Euler's formula for a
    ``degree``-valent sphere graph on ``vertices`` vertices."""
    faces = sum(census.values())
    twice_edges = sum(size * count for size, count in census.items())
    if twice_edges % 2 or twice_edges != degree * vertices:
        return False
    return vertices - twice_edges // 2 + faces == 2
