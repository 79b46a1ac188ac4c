from collections import Counter

import networkx as nx
import pytest

from brunnian.errors import DomainError
from brunnian.polyhedra import (
    REFERENCE,
    PolyhedralSkeleton,
    antiprism_skeleton,
    antiprism_volume,
    brunnian_upper_bound,
    census_satisfies_euler,
    glue_antiprisms,
    ln_complement_volume,
    pn_skeleton,
    volume_report,
    volume_table_csv,
)
from oracles import ANTIPRISM_VOLUMES, BORROMEAN_VOLUME, BR11_VOLUME, L2_VOLUME


@pytest.mark.parametrize("m", sorted(ANTIPRISM_VOLUMES))
def test_antiprism_volumes(m):
    value, err = antiprism_volume(m, with_error=True)
    assert abs(value - ANTIPRISM_VOLUMES[m]) <= 1e-6
    assert err < 1e-12


def test_octahedron_is_half_borromean():
    assert abs(2 * antiprism_volume(3) - BORROMEAN_VOLUME) <= 2e-6


def test_l2_volume():
    vol = ln_complement_volume(2)
    assert abs(vol - L2_VOLUME) <= 1e-6
    assert abs(vol - 4 * antiprism_volume(4)) <= 1e-10


def test_ln_is_four_antiprisms():
    for n in range(2, 12):
        assert ln_complement_volume(n) == pytest.approx(4 * antiprism_volume(2 * n), abs=1e-10)


def test_bound_exceeds_reference_br11_volume():
    assert BR11_VOLUME < brunnian_upper_bound(2)
    assert REFERENCE["vol_Br11"] == BR11_VOLUME


def test_volumes_increase():
    vals = [antiprism_volume(m) for m in range(3, 30)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_volume_report_and_csv():
    r = volume_report(3)
    assert r.ln_vol == pytest.approx(r.beta_n)
    assert r.as_row()["n"] == 3
    text = volume_table_csv(2, 4)
    lines = text.strip().splitlines()
    assert lines[0].startswith("n,")
    assert len(lines) == 4
    assert lines[1].split(",")[2].startswith("24.09218")


@pytest.mark.parametrize("bad", [2, 0, -3, 2.5, True])
def test_antiprism_rejects_bad_m(bad):
    with pytest.raises(DomainError):
        antiprism_volume(bad)


def test_ln_rejects_n1():
    with pytest.raises(DomainError):
        ln_complement_volume(1)


@pytest.mark.parametrize("m", range(3, 10))
def test_antiprism_skeleton(m):
    sk = antiprism_skeleton(m)
    assert sk.check()
    assert (sk.V, sk.E, sk.F) == (2 * m, 4 * m, 2 * m + 2)
    expected = Counter({3: 2 * m}) + Counter({m: 2})
    assert sk.face_census() == dict(expected)


@pytest.mark.parametrize("n", range(2, 21))
def test_pn_skeleton(n):
    sk = pn_skeleton(n)
    assert sk.check()
    assert (sk.V, sk.E, sk.F) == (6 * n, 12 * n, 6 * n + 2)
    assert sk.euler_characteristic() == 2
    assert set(sk.degrees().values()) == {4}
    assert sk.face_census() == dict(Counter({3: 4 * n, 4: 2 * n}) + Counter({2 * n: 2}))
    glued = glue_antiprisms(2 * n)
    assert glued.check()
    assert glued.face_census() == sk.face_census()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_glued_isomorphic_to_pn(n):
    a = nx.Graph(list(pn_skeleton(n).edges))
    b = nx.Graph(list(glue_antiprisms(2 * n).edges))
    assert nx.is_isomorphic(a, b)


def test_four_n_quad_census_fails_euler():
    for n in range(2, 21):
        ours = Counter({3: 4 * n, 4: 2 * n}) + Counter({2 * n: 2})
        four_n_quads = Counter({3: 4 * n, 4: 4 * n}) + Counter({2 * n: 2})
        assert census_satisfies_euler(6 * n, ours)
        assert not census_satisfies_euler(6 * n, four_n_quads)


def test_red_vertices_alternate():
    sk = pn_skeleton(3)
    red = sorted(v for v, t in sk.labels.items() if t == "red")
    assert red == [0, 2, 4, 12, 14, 16]


def test_face_text_round_trip():
    sk = pn_skeleton(3)
    back = PolyhedralSkeleton.from_face_text(sk.to_face_text())
    assert back.faces == sk.faces
    assert back.edges == sk.edges
    assert "0 [red]:" in sk.to_adjacency_text()


def test_glue_rejects_odd():
    with pytest.raises(DomainError):
        glue_antiprisms(5)
    with pytest.raises(DomainError):
        pn_skeleton(1)
