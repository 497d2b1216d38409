from __future__ import annotations

import random
from fractions import Fraction

import pytest
from arrangements import (
    UNIT_CIRCLE,
    ceva,
    random_beta0_conic_line,
    random_beta0_lines,
    slope_line,
    three_lines_circle,
    through,
    two_triples_and_circle,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.errors import NotApplicable
from arrangeo.finite import count_homs
from arrangeo.geometry import Arrangement
from arrangeo.pipeline import presentation_of
from arrangeo.simplify import simplify_to_cf
from arrangeo.structure import (
    DECOMPOSED,
    OUTSIDE,
    PREDICTED_CF,
    GroupStructure,
    check_cl_identity,
    cl_structure,
    conic_split,
    distinct_intersections,
    fan_structure,
    has_parallel_lines,
    oka_sakamoto_split,
    predict_cf,
    split_multiplicities,
)

PENCIL_PLUS_ONE = Arrangement.make([(1, 1, 0), (-1, 1, 0), (2, 1, 0), (3, 1, -5)])
ELLIPSES = Arrangement.make([], [[1, 0, 4, 0, 0, -4], [4, 0, 1, 0, 0, -4]])


def test_group_structure_text_and_folding():
    s = GroupStructure(1, (1, 2, 2))
    assert str(s) == "Z^2 ⊕ F2 ⊕ F2"
    assert s.folded() == GroupStructure(2, (2, 2))
    assert s.abelian_rank == 6
    assert str(GroupStructure(0, ())) == "1"
    assert str(GroupStructure(1, (2,))) == "Z ⊕ F2"
    with pytest.raises(ValueError):
        GroupStructure(0, (0,))


def test_fan_on_a_pencil_plus_a_line():
    s = fan_structure(PENCIL_PLUS_ONE)
    assert (s.r, s.free_ranks) == (2, (2,))
    _, p = presentation_of(PENCIL_PLUS_ONE)
    assert count_homs(p, "S3") == count_homs(s.canonical(), "S3")


def test_fan_refuses_cycles_and_parallels():
    with pytest.raises(NotApplicable):
        fan_structure(ceva())
    parallel = Arrangement.make([(1, 1, 0), (2, 2, -3), (-1, 1, 0)])
    assert has_parallel_lines(parallel)
    with pytest.raises(NotApplicable):
        fan_structure(parallel)
    assert predict_cf(parallel).outcome == OUTSIDE


def test_conic_line_formula_on_a_triple_point():
    # two lines meeting on the unit circle at (3/5, 4/5) plus a third line
    arr = Arrangement.make([(4, -3, 0), (-5, 5, -1), (0, 2, 1)], [UNIT_CIRCLE])
    on, off = split_multiplicities(arr)
    assert (on, off) == ([3], [])
    s = cl_structure(arr)
    assert check_cl_identity(3, s.r, on, off)
    assert s.folded() == GroupStructure(4, ())
    split = conic_split(arr)
    assert split.structure.folded() == s.folded()


def test_two_triples_and_circle():
    v = predict_cf(two_triples_and_circle())
    assert v.outcome == DECOMPOSED and str(v.structure) == "Z^2 ⊕ F2 ⊕ F2"
    assert v.identities_checked


def test_three_lines_circle_is_outside():
    v = predict_cf(three_lines_circle())
    assert v.outcome == OUTSIDE
    assert v.notes and "Z^4" in v.notes[0]


def test_ceva_is_outside():
    assert predict_cf(ceva()).outcome == OUTSIDE


def test_distinct_intersections():
    line = [Arrangement.make([(0, 1, 0)]).lines[0]]
    tangent = [Arrangement.make([(0, 1, -1)]).lines[0]]
    circle = list(Arrangement.make([], [UNIT_CIRCLE]).conics)
    assert distinct_intersections(line, circle) == 2
    assert distinct_intersections(tangent, circle) == 1
    a, b = ELLIPSES.conics
    assert distinct_intersections([a], [b]) == 4
    # two circles share the points at infinity, so only two affine points remain
    c2 = list(Arrangement.make([], [[1, 0, 1, -1, 0, -1]]).conics)
    assert distinct_intersections(circle, c2) == 2


def test_oka_sakamoto():
    rep = oka_sakamoto_split(PENCIL_PLUS_ONE, ["L4"])
    assert rep.holds and (rep.d1, rep.d2, rep.points) == (1, 3, 3)
    # the pencil gives Z ⊕ F2 and the extra line adds a Z
    assert str(rep.structure) == "Z^2 ⊕ F2"
    assert not oka_sakamoto_split(PENCIL_PLUS_ONE, ["L1"]).holds


def test_two_ellipses():
    v = predict_cf(ELLIPSES)
    assert v.outcome == DECOMPOSED and v.structure.folded() == GroupStructure(2, ())


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_split_and_formula_agree(seed):
    arr = random_beta0_conic_line(random.Random(seed))
    s = cl_structure(arr)
    assert conic_split(arr).structure.folded() == s.folded()
    _, p = presentation_of(arr)
    assert count_homs(p, "S3") == count_homs(s.canonical(), "S3")


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_fan_matches_hom_counts(seed):
    arr = random_beta0_lines(random.Random(seed), 5)
    v = predict_cf(arr)
    assert v.outcome == DECOMPOSED
    _, p = presentation_of(arr)
    assert count_homs(p, "S3") == count_homs(v.structure.canonical(), "S3")


def test_triangle_of_triple_points_is_predicted_cf():
    a, b, c = (0, 0), (4, 0), (1, 4)
    arr = Arrangement.make([through(a, b), through(b, c), through(c, a),
                            slope_line(a, 3), slope_line(b, Fraction(1, 2)), slope_line(c, -2)])
    v = predict_cf(arr)
    assert v.outcome == PREDICTED_CF and v.structure is None
    # the rewriting reaches the same conclusion independently
    _, p = presentation_of(arr)
    assert simplify_to_cf(p).conjugation_free
