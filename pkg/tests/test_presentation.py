from __future__ import annotations

import random

import pytest
from arrangements import ceva, example_skel, random_beta0_lines, three_lines_circle
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.finite import count_homs, named_group
from arrangeo.geometry import Arrangement
from arrangeo.pipeline import move_basepoint, presentation_of
from arrangeo.presentation import (
    COMM,
    CYCLIC,
    EQ,
    Presentation,
    Relation,
    abelianization,
    basepoint_move,
    canonical_presentation,
    cyclic_products,
    expand_cyclic,
    parse_presentation,
    relation_count,
)


def test_single_node_presentation():
    _, p = presentation_of(Arrangement.make([(1, 1, 0), (-1, 1, 0)]))
    assert p.relations == (Relation(COMM, ((1,), (2,)), "x1"),)


def test_relation_kinds_follow_events():
    mono, p = presentation_of(ceva())
    kinds = [r.kind for r in p.relations]
    assert kinds == ["comm" if e.kind == "node" else "cyclic" for e in mono.events]
    assert relation_count((e.kind, e.multiplicity) for e in mono.events) == 3 + 4 * 2
    assert sum(len(r.relators()) for r in p.relations) == 11


def test_conic_branch_points_give_equalities():
    mono, p = presentation_of(three_lines_circle())
    eqs = [r for r in p.relations if r.kind == EQ]
    assert len(eqs) == 2
    assert p.n == 5


def test_expand_cyclic():
    rel = Relation(CYCLIC, ((1,), (2,), (3,)))
    assert cyclic_products(rel.words) == [(3, 2, 1), (1, 3, 2), (2, 1, 3)]
    assert expand_cyclic(rel) == [((3, 2, 1), (1, 3, 2)), ((1, 3, 2), (2, 1, 3))]
    with pytest.raises(ValueError):
        expand_cyclic(Relation(COMM, ((1,), (2,))))


def test_relation_shape_is_checked():
    with pytest.raises(ValueError):
        Relation(CYCLIC, ((1,), (2,)))
    with pytest.raises(ValueError):
        Presentation(2, (Relation(COMM, ((1,), (3,))),))


def test_abelianization():
    for arr in (ceva(), example_skel(), three_lines_circle()):
        _, p = presentation_of(arr)
        ab = abelianization(p)
        assert ab.rank == len(arr.lines) + len(arr.conics) and ab.torsion == ()
    p = Presentation(2, (Relation(EQ, ((1, 1), ())),))
    assert abelianization(p).torsion == (2,)


def test_hom_counts():
    # [DERIVED] counts frozen from an independent brute-force enumeration
    _, p = presentation_of(ceva())
    assert count_homs(p, "S3") == 1008
    assert count_homs(canonical_presentation(2, ()), "S3") == 18
    assert count_homs(canonical_presentation(2, ()), "S4") == 120
    assert count_homs(canonical_presentation(0, (2,)), "S4") == 576
    assert count_homs(canonical_presentation(4, ()), "S3") == 126
    assert count_homs(canonical_presentation(4, ()), "S4") == 2016
    assert count_homs(Presentation(3, ()), named_group("S3")) == 216


def test_canonical_presentation_shape():
    p = canonical_presentation(2, (2, 2))
    assert p.n == 6
    assert len(p.relations) == 1 + 2 * 4 + 4
    assert abelianization(p).rank == 6


def test_text_round_trip():
    _, p = presentation_of(ceva())
    q = parse_presentation(p.format())
    assert q.relations == tuple(Relation(r.kind, r.words) for r in p.relations)


def test_basepoint_swap_example():
    # a lone node is crossed by a plain swap of its two generators
    mono, p = presentation_of(Arrangement.make([(1, 1, 0), (-1, 1, 0)]))
    mv = basepoint_move(p, mono, mono.events[0], "left")
    assert mv.rule == "swap" and mv.position == 1
    assert mv.substitution.images == ((2,), (1,))
    back = basepoint_move(mv.presentation, mono, mono.events[0], "right", 1)
    assert back.presentation == p


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_basepoint_moves_preserve_invariants(seed):
    arr = random_beta0_lines(random.Random(seed), 5)
    mono, p = presentation_of(arr)
    base = (abelianization(p), count_homs(p, "S3"))
    for k in range(1, len(mono.events) + 1):
        q = move_basepoint(p, mono, k, "left")
        assert (abelianization(q), count_homs(q, "S3")) == base
