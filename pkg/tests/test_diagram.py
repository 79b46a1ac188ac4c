import pytest

from brunnian.diagram import (
    LinkDiagram,
    Slice,
    canonical_pd,
    compile_program,
    component_count,
    crossing_count,
    delete_component,
    gauss_code,
    parse_pd,
    parse_program,
    pd_text,
    program_text,
    reverse_components,
    writhe,
)
from brunnian.errors import DomainError, ParseError
from brunnian.families import FamilySpec, build
from oracles import PROGRAMS


def diagram(name):
    return compile_program(parse_program(PROGRAMS[name]))


def test_unknot_program():
    d = diagram("unknot")
    assert (crossing_count(d), component_count(d), writhe(d)) == (0, 1, 0)
    assert d.free_circles == 1


def test_hopf_link_counts():
    d = diagram("hopf")
    assert (crossing_count(d), component_count(d), writhe(d)) == (2, 2, 2)
    assert d.signs == (1, 1)
    assert {d.crossing_components(i) for i in range(2)} == {(0, 1), (1, 0)}


def test_nested_cups_give_unlink():
    d = diagram("nested_two_kinks")
    assert crossing_count(d) == 2
    assert component_count(d) == 2
    assert d.free_circles == 1
    assert len(d.components) == 1


@pytest.mark.parametrize("name", sorted(PROGRAMS))
def test_structural_invariants(name):
    d = diagram(name)
    assert d.check()
    if d.free_circles == 0:
        assert len(d.arcs) == 2 * crossing_count(d)
    assert sorted(d.arcs) == list(range(1, len(d.arcs) + 1))


@pytest.mark.parametrize("name", sorted(PROGRAMS))
def test_pd_round_trip(name):
    d = diagram(name)
    text = pd_text(d)
    assert parse_pd(text) == d
    assert pd_text(parse_pd(text)) == text


@pytest.mark.parametrize("name", sorted(PROGRAMS))
def test_compile_is_deterministic(name):
    assert pd_text(diagram(name)) == pd_text(diagram(name))


def test_program_text_round_trip():
    prog = parse_program(PROGRAMS["borromean"])
    assert parse_program(program_text(prog)) == prog


def test_parser_accepts_comments_and_blank_lines():
    prog = parse_program("# unknot\n\ncup 1   # open\ncap 1\n")
    assert [s.kind for s in prog.slices] == ["cup", "cap"]


def test_over_under_aliases():
    plus = compile_program(parse_program("cup 1\ncross 1 +\ncap 1\n"))
    assert plus.signs == (1,)
    over = parse_program("cup 1\ncup 2\ncross 1 over\ncap 2\ncap 1\n")
    assert any(s.over is not None for s in over.slices if s.kind == "cross")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("cross 1 +", 1, "underflow"),
        ("cup 1\nfrobnicate 2\ncap 1", 2, "unknown directive"),
        ("cup 1\ncap 2", 2, "underflow"),
        ("cup 1\ncross 1 sideways\ncap 1", 2, ""),
        ("cup 0\ncap 1", 1, ""),
        ("cup 1\ncup 1", None, "final width"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    msg = str(info.value)
    assert fragment in msg
    if line is not None:
        assert msg.startswith(f"line {line}:")


def test_slice_text():
    assert Slice("cup", 3).text() == "cup 3"


def test_gauss_code_lengths():
    d = diagram("borromean")
    code = gauss_code(d)
    assert sum(len(c) for c in code) == 2 * crossing_count(d)
    # each crossing appears once over and once under
    seen = sorted(x for comp in code for x in comp)
    assert seen == sorted([-k for k in range(1, 7)] + list(range(1, 7)))


def test_parse_pd_rejects_garbage():
    with pytest.raises(ParseError):
        parse_pd("X[1,2,3]")
    with pytest.raises(ParseError):
        parse_pd("Y[1,2,3,4]")


# ------------------------------------------------------------ delete_component


@pytest.mark.parametrize("which", [0, 1])
def test_hopf_minus_component_is_unknot(which):
    d = delete_component(diagram("hopf"), which)
    assert (crossing_count(d), component_count(d)) == (0, 1)


def test_split_union_minus_one_is_unknot():
    d = compile_program(parse_program("cup 1\ncup 3\ncap 3\ncap 1\n"))
    assert component_count(d) == 2
    for c in (0, 1):
        e = delete_component(d, c)
        assert (crossing_count(e), component_count(e)) == (0, 1)


def test_delete_from_borromean_keeps_other_crossings():
    d = diagram("borromean")
    for c in range(3):
        e = delete_component(d, c)
        e.check()
        assert component_count(e) == 2
        assert crossing_count(e) == 2


def test_delete_component_property_on_families():
    for spec in (FamilySpec("Br", 2, (1, 1)), FamilySpec("Ln", 2), FamilySpec("Lpn", 2)):
        d = build(spec)
        for c in range(component_count(d)):
            e = delete_component(d, c)
            e.check()
            assert component_count(e) == component_count(d) - 1
            assert crossing_count(e) <= crossing_count(d)


def test_br11_minus_component():
    d = build(FamilySpec("Br", 2, (1, 1)))
    assert (crossing_count(d), component_count(d), writhe(d)) == (12, 2, 0)
    e = delete_component(d, 1)
    assert component_count(e) == 1
    assert crossing_count(e) <= 12


@pytest.mark.parametrize("bad", [-1, 2, 7, True])
def test_delete_unknown_component(bad):
    with pytest.raises(DomainError):
        delete_component(diagram("hopf"), bad)


# ------------------------------------------------------------ canonical forms


def test_canonical_ignores_labelling():
    d = diagram("figure_eight")
    shift = {a: (a % 8) + 1 for a in d.arcs}
    relabelled = LinkDiagram(
        tuple(tuple(shift[x] for x in tup) for tup in d.crossings),
        d.signs,
        tuple(tuple(shift[x] for x in comp) for comp in d.components),
        d.free_circles,
    )
    assert canonical_pd(relabelled) == canonical_pd(d)


def test_canonical_separates_mirrors():
    right, left = diagram("trefoil_right"), diagram("trefoil_left")
    assert canonical_pd(right) != canonical_pd(left)
    assert canonical_pd(right, oriented=False) != canonical_pd(left, oriented=False)


def test_unoriented_canonical_forgets_orientation():
    d = diagram("borromean")
    for which in ([0], [1, 2], [0, 1, 2]):
        r = reverse_components(d, which)
        r.check()
        assert canonical_pd(r, oriented=False) == canonical_pd(d, oriented=False)
    assert canonical_pd(reverse_components(diagram("hopf"), [0])) != canonical_pd(diagram("hopf"))
