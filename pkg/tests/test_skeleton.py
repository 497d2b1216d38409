from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.errors import MalformedSkeleton
from arrangeo.skeleton import Skeleton, skeleton_to_words, track_blocks
from arrangeo.words import Automorphism, format_word, half_twist_block


def _words(sk, n):
    return [format_word(w) for w in skeleton_to_words(sk, n)]


def test_worked_examples():
    assert _words(Skeleton.make([1, 6], {2: "A", 3: "A", 4: "A", 5: "B"}, split=3), 6) == ["3 2 1 -2 -3", "-4 6 4"]
    assert _words(Skeleton.make([1, 2, 6], {3: "A", 4: "A", 5: "B"}, split=3), 6) == ["3 1 -3", "3 2 -3", "-4 6 4"]


def test_straight_segment_gives_generators():
    assert skeleton_to_words(Skeleton.segment(2, 4), 5) == [(2,), (3,), (4,)]


@pytest.mark.parametrize("sk", [
    Skeleton.make([3]),
    Skeleton.make([3, 2]),
    Skeleton.make([1, 7]),
    Skeleton.make([1, 4], {2: "X"}),
    Skeleton.make([1, 4], {4: "A"}),
    Skeleton(((1, 4)), ((2, "A"), (2, "B")), 1),
])
def test_malformed(sk):
    with pytest.raises(MalformedSkeleton):
        skeleton_to_words(sk, 6)


def test_passages_below_do_not_conjugate():
    assert _words(Skeleton.make([1, 4], {2: "B", 3: "B"}, split=1), 4) == ["1", "4"]


@given(st.integers(1, 5))
def test_split_choice_does_not_change_a_straight_segment(g):
    sk = Skeleton((1, 6), (), g)
    words = skeleton_to_words(sk, 6)
    assert words == [(1,), (6,)]


blocks = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 3)).map(lambda t: (t[0], min(t[0] + t[1], 5))),
                  max_size=6)


@settings(max_examples=200, deadline=None)
@given(blocks, st.integers(1, 4))
def test_tracking_agrees_with_substitution(bs, a):
    b = a + 1
    aut = Automorphism.identity(5)
    for lo, hi in bs:
        aut = aut.then(half_twist_block(lo, hi, 5))
    # paths that leave the single-passage model are refused, never mistranslated
    try:
        got = track_blocks(a, b, bs)
    except MalformedSkeleton:
        return
    assert got == [aut.image(i) for i in range(a, b + 1)]
