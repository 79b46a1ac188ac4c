import json
from fractions import Fraction

import pytest

from brunnian.diagram import compile_program, delete_component, parse_program
from brunnian.errors import DomainError, ResourceError
from brunnian.families import FamilySpec, build
from brunnian.invariants import (
    LaurentPoly,
    certify_diagram,
    jones,
    kauffman_bracket,
    linking_matrix,
    simplify_to_trivial,
    twist_region_census,
    unlink_jones,
    verify_brunnian,
)
from brunnian.moves import apply_moves
from oracles import JONES_DOUBLED, PROGRAMS, skein_bracket


def compiled(text):
    return compile_program(parse_program(text))


def doubled(poly):
    return {int(e * 2): c for e, c in poly.coefficients()}


# ------------------------------------------------------------ LaurentPoly


def test_laurent_arithmetic():
    a = LaurentPoly({1: 1, -1: 1}, "A")
    assert a * a == LaurentPoly({2: 1, 0: 2, -2: 1}, "A")
    assert (a - a).is_zero()
    assert a ** 0 == LaurentPoly({0: 1}, "A")
    assert str(LaurentPoly({2: -1, 0: 1}, "A")) == "-A^2 + 1"


def test_laurent_half_integer_exponents():
    half = LaurentPoly({1: -1, -1: -1}, "t", 2)
    assert half.coefficients() == [(Fraction(-1, 2), -1), (Fraction(1, 2), -1)]
    assert half * half == LaurentPoly({1: 1, 0: 2, -1: 1}, "t")
    assert half.evaluate(4.0) == pytest.approx(-2.5)


def test_laurent_equality_across_scales():
    assert LaurentPoly({2: 3}, "t", 2) == LaurentPoly({1: 3}, "t", 1)
    assert hash(LaurentPoly({2: 3}, "t", 2)) == hash(LaurentPoly({1: 3}, "t", 1))


# ------------------------------------------------------------ bracket and Jones


def test_bracket_small_cases():
    assert kauffman_bracket(compiled(PROGRAMS["unknot"])) == LaurentPoly({0: 1}, "A")
    kink = compiled("cup 1\ncross 1 +\ncap 1\n")
    assert kink.signs == (1,)
    assert kauffman_bracket(kink) == LaurentPoly({3: -1}, "A")
    two = compiled("cup 1\ncup 3\ncap 3\ncap 1\n")
    assert kauffman_bracket(two) == LaurentPoly({2: -1, -2: -1}, "A")


@pytest.mark.parametrize("name", sorted(JONES_DOUBLED))
def test_jones_table(name):
    assert doubled(jones(compiled(PROGRAMS[name]))) == JONES_DOUBLED[name]


@pytest.mark.parametrize(
    "spec",
    [FamilySpec("Br", 2, (1, 1)), FamilySpec("Ln", 2)] + [None],
)
def test_bracket_matches_skein_oracle(spec):
    d = compiled(PROGRAMS["borromean"]) if spec is None else build(spec)
    if d.crossing_count() > 16:
        d = delete_component(d, 0)
    ours = kauffman_bracket(d)
    ref = skein_bracket(list(d.crossings), d.free_circles)
    assert {int(k): v for k, v in ours.coefficients()} == ref


def test_unlink_jones():
    for k in range(1, 5):
        circles = "".join(f"cup {2 * i + 1}\n" for i in range(k))
        circles += "".join(f"cap {2 * i + 1}\n" for i in reversed(range(k)))
        assert jones(compiled(circles)) == unlink_jones(k)


def test_br11_jones_is_not_unlink():
    assert jones(build(FamilySpec("Br", 2, (1, 1)))) != unlink_jones(2)


def test_bracket_crossing_limit():
    big = build(FamilySpec("Br", 2, (3, 3)))
    assert big.crossing_count() == 28
    with pytest.raises(ResourceError):
        jones(big)


# ------------------------------------------------------------ linking


def test_linking_hopf():
    m = linking_matrix(compiled(PROGRAMS["hopf"]))
    assert m[0, 1] == m[1, 0] == 1
    assert m[0, 0] == 0
    assert not m.off_diagonal_zero()


def test_linking_split_and_borromean():
    assert linking_matrix(compiled("cup 1\ncup 3\ncap 3\ncap 1\n")).off_diagonal_zero()
    assert linking_matrix(compiled(PROGRAMS["borromean"])).off_diagonal_zero()


@pytest.mark.parametrize(
    "twists", [(k1, k2) for k1 in (1, 2, 3) for k2 in (1, 2, 3)]
    + [(1, 1, 1), (1, 2, 3), (3, 1, 2, 2), (1, 1, 1, 1, 1), (2, 3, 1, 3, 2)],
)
def test_br_linking_matrix_is_zero(twists):
    m = linking_matrix(build(FamilySpec("Br", len(twists), twists)))
    assert m.size == len(twists)
    assert m.off_diagonal_zero()


# ------------------------------------------------------------ simplification


def test_clasp_simplifies():
    clasp = compiled("cup 1\ncup 3\ncross 2 +\ncross 2 -\ncap 3\ncap 1\n")
    verdict = simplify_to_trivial(clasp)
    assert verdict.trivial and verdict.label == "Trivial"
    assert verdict.final.component_count() == 2


def test_br11_minus_component_simplifies():
    d = build(FamilySpec("Br", 2, (1, 1)))
    verdict = simplify_to_trivial(delete_component(d, 1), max_steps=1000)
    assert verdict.trivial
    # the certificate replays to the same crossingless diagram
    replay = apply_moves(delete_component(d, 1), verdict.certificate)
    assert replay.crossing_count() == 0
    assert replay.component_count() == 1


def test_br11_intact_is_unknown():
    verdict = simplify_to_trivial(build(FamilySpec("Br", 2, (1, 1))), max_steps=200)
    assert not verdict.trivial
    assert verdict.label == "Unknown"
    assert "stuck" in verdict.reason


def test_trefoil_not_simplified():
    assert not simplify_to_trivial(compiled(PROGRAMS["trefoil_right"])).trivial


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("BRUNNIAN_BUDGET", "zero")
    with pytest.raises(DomainError):
        simplify_to_trivial(compiled(PROGRAMS["hopf"]))
    monkeypatch.setenv("BRUNNIAN_BUDGET", "50")
    assert not simplify_to_trivial(compiled(PROGRAMS["hopf"])).trivial


# ------------------------------------------------------------ Brunnian reports


def test_verify_br11_report():
    report = verify_brunnian(FamilySpec("Br", 2, (1, 1)))
    assert report.certified and report.verdict == "Brunnian-certified"
    assert report.crossings == 12
    payload = json.loads(report.to_json())
    assert [s["result"] for s in payload["sublinks"]] == ["Trivial", "Trivial"]
    assert payload["linking_matrix"] == [[0, 0], [0, 0]]
    assert "verdict=Brunnian-certified" in report.to_kv()
    assert "Brunnian-certified" in report.to_text()


def test_verify_121_report():
    report = verify_brunnian(FamilySpec("Br", 3, (1, 2, 1)))
    assert report.crossings == 22
    assert all(v.trivial for v in report.sublinks)
    assert report.certified


def test_verify_rejects_bare_diagram():
    with pytest.raises(DomainError):
        verify_brunnian(compiled("cup 1\ncup 3\ncap 3\ncap 1\n"))


def test_split_unlink_is_not_certified():
    report = certify_diagram(compiled("cup 1\ncup 3\ncap 3\ncap 1\n"), "unlink")
    assert report.all_sublinks_trivial
    assert report.nontrivial is False
    assert report.verdict == "Unknown"


def test_hopf_passes_two_component_check():
    report = certify_diagram(compiled(PROGRAMS["hopf"]), "hopf")
    assert report.certified  # each single component is an unknot
    assert not report.linking.off_diagonal_zero()


def test_large_link_reports_skipped_jones():
    report = verify_brunnian(FamilySpec("Br", 2, (3, 3)), max_steps=2000)
    assert report.jones_full is None
    assert report.nontrivial is None
    assert report.verdict == "Unknown"
    assert report.notes


# ------------------------------------------------------------ twist regions


def test_census_br33():
    census = twist_region_census(build(FamilySpec("Br", 2, (3, 3))))
    assert census.sizes() == [7, 7, 7, 7]
    assert census.all_regions_at_least(6)


def test_census_br11():
    census = twist_region_census(build(FamilySpec("Br", 2, (1, 1))))
    assert census.sizes() == [3, 3, 3, 3]
    assert not census.has_region_at_least(6)


def test_census_hopf():
    census = twist_region_census(compiled(PROGRAMS["hopf"]))
    assert census.sizes() == [2]
    assert census.max_size == 2
