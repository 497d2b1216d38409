from __future__ import annotations

import random

import pytest
from arrangements import UNIT_CIRCLE, ceva, example_skel, random_conic_line, random_line_arrangement, three_lines_circle
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.errors import NonGeneric
from arrangeo.exact import compare
from arrangeo.geometry import Arrangement
from arrangeo.monodromy import sort_events
from arrangeo.pipeline import monodromy_of
from arrangeo.skeleton import track_blocks
from arrangeo.words import Automorphism, generator_of_conjugate, half_twist_block, product_word


def test_single_node():
    m = monodromy_of(Arrangement.make([(1, 1, 0), (-1, 1, 0)]))
    assert len(m.events) == 1
    ev = m.events[0]
    assert (ev.kind, ev.lefschetz, ev.multiplicity) == ("node", (1, 2), 2)
    assert m.transport(ev) == [(1,), (2,)]


def test_circle_alone_has_two_branch_points():
    m = monodromy_of(Arrangement.make([], [UNIT_CIRCLE]))
    assert [e.kind for e in m.events] == ["branch", "branch"]
    assert all(e.lefschetz == (1, 2) for e in m.events)
    # branch points act trivially on generators
    assert all(s.delta == Automorphism.identity(2) for s in m.stops)


def test_events_ordered_from_the_base_point():
    m = monodromy_of(ceva())
    xs = [e.x for e in m.events]
    assert all(compare(a, b) > 0 for a, b in zip(xs, xs[1:]))
    assert [e.index for e in m.events] == list(range(1, len(xs) + 1))
    assert sorted(e.multiplicity for e in m.events) == [2, 2, 2, 3, 3, 3, 3]


def test_first_event_has_identity_transport():
    m = monodromy_of(example_skel())
    ev = m.events[0]
    a, b = ev.lefschetz
    assert m.transport(ev) == [(i,) for i in range(a, b + 1)]


def test_composed_delta_of_the_example():
    m = monodromy_of(example_skel())
    want = half_twist_block(3, 4, 4).then(half_twist_block(2, 3, 4)).then(half_twist_block(1, 2, 4))
    assert m.composed_delta(m.events[3]) == want


def test_unsheared_input_is_rejected():
    # the two nodes share x = 0
    arr = Arrangement.make([(1, 1, -1), (-1, 1, -1), (1, 1, 1), (-1, 1, 1)])
    with pytest.raises(NonGeneric):
        sort_events(arr)


def _check_words(m):
    for ev in m.events:
        words = m.transport(ev)
        for w in words:
            assert generator_of_conjugate(w) is not None
        aut = m.composed_delta(ev)
        assert aut.apply(product_word(m.n)) == product_word(m.n)


def test_conic_line_words_are_conjugates():
    _check_words(monodromy_of(three_lines_circle()))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_transport_matches_skeleton_tracking(seed):
    rng = random.Random(seed)
    m = monodromy_of(random_line_arrangement(rng, rng.randint(3, 5)))
    _check_words(m)
    for ev in m.events:
        blocks = [s.event.lefschetz for s in m.stops_before(ev)]
        assert m.transport(ev) == track_blocks(*ev.lefschetz, blocks)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_conic_line_monodromy(seed):
    m = monodromy_of(random_conic_line(random.Random(seed)))
    _check_words(m)
    assert sum(e.kind == "branch" for e in m.events) == 2
