"""Arrangement builders shared by the tests."""
from __future__ import annotations

import random
from fractions import Fraction as F

from arrangeo.geometry import Arrangement, validate
from arrangeo.graph import betti, build_graph
from arrangeo.structure import has_parallel_lines

UNIT_CIRCLE = [1, 0, 1, 0, 0, -1]


def through(p, q):
    """Coefficients (a, b, c) of the line through two rational points."""
    (x1, y1), (x2, y2) = p, q
    a, b = y2 - y1, x1 - x2
    return (a, b, -a * x1 - b * y1)


def slope_line(p, s):
    """y - p_y = s (x - p_x)."""
    return (-s, 1, -(p[1] - s * p[0]))


def meet(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    d = a1 * b2 - a2 * b1
    return (F(b1 * c2 - b2 * c1) / d, F(c1 * a2 - c2 * a1) / d)


def circle_point(t):
    """Rational point on the unit circle from the stereographic parameter t."""
    t = F(t)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def ceva() -> Arrangement:
    """Six lines through pairs of four points in general position: four triple points."""
    pts = [(0, 0), (5, 1), (1, 5), (F(3, 2), F(5, 4))]
    return Arrangement.make([through(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4)])


def example_skel() -> Arrangement:
    """Four lines whose first three events sit at [1,2], [2,3], [3,4] seen from the base point."""
    return Arrangement.make([(2, 1, 5), (-4, 1, 3), (3, 1, -1), (-1, 1, 5)])


def three_lines_circle() -> Arrangement:
    """Three lines through pairs of three points on the unit circle (a triangle of triple points)."""
    pts = [(F(3, 5), F(4, 5)), (F(-4, 5), F(3, 5)), (F(12, 13), F(-5, 13))]
    return Arrangement.make([through(pts[i], pts[j]) for i, j in ((0, 1), (0, 2), (1, 2))], [UNIT_CIRCLE])


def two_triples_and_circle() -> Arrangement:
    """Five lines with off-conic triple points T1 = (0, 1/5) on L1, L2, L3 and
    T2 = (1/2, 1/2) on L1, L4, L5, joined by L1; the unit circle passes through
    N = L2 ∩ L4 = (3/5, 4/5).  The graph is the triangle T1 T2 N, T1 is an
    off-conic witness, and the group is Z^2 ⊕ F2 ⊕ F2.
    """
    return Arrangement.make(
        [(-3, 5, -1), (-5, 5, -1), (0, 5, -1), (-3, 1, 1), (-4, 2, 1)], [UNIT_CIRCLE]
    )


def _lines_ok(arr: Arrangement) -> bool:
    return validate(arr).ok and not has_parallel_lines(arr) and not any(l.vertical for l in arr.lines)


def random_nodes_only(rng: random.Random, k: int) -> Arrangement:
    while True:
        lines = [(F(rng.randint(-9, 9), rng.randint(1, 4)), 1, F(rng.randint(-9, 9), rng.randint(1, 3)))
                 for _ in range(k)]
        try:
            arr = Arrangement.make(lines)
        except Exception:
            continue
        if _lines_ok(arr) and all(p.multiplicity == 2 for p in _points(arr)):
            return arr


def _points(arr):
    from arrangeo.geometry import singular_points

    return [p for p in singular_points(arr) if not p.is_branch]


def random_line_arrangement(rng: random.Random, k: int, concurrency: float = 0.5) -> Arrangement:
    """k lines; each new line goes through an existing intersection point with the given probability."""
    while True:
        lines = []
        for _ in range(k):
            s = F(rng.randint(-6, 6), rng.randint(1, 3))
            pts = [meet(a, b) for i, a in enumerate(lines) for b in lines[i + 1:] if a[0] * b[1] != b[0] * a[1]]
            if pts and rng.random() < concurrency:
                lines.append(slope_line(rng.choice(pts), s))
            else:
                lines.append((-s, 1, F(rng.randint(-6, 6), rng.randint(1, 2))))
        try:
            arr = Arrangement.make(lines)
        except Exception:
            continue
        if _lines_ok(arr):
            return arr


def random_beta0_lines(rng: random.Random, kmax: int = 7) -> Arrangement:
    while True:
        arr = random_line_arrangement(rng, rng.randint(3, kmax))
        if betti(build_graph(arr)) == 0:
            return arr


def random_conic_line(rng: random.Random, kmax: int = 4, hyperbola: bool = False) -> Arrangement:
    """Unit circle (or x^2 - y^2 = 1) with lines, some through points of the conic."""
    conic = [1, 0, -1, 0, 0, -1] if hyperbola else UNIT_CIRCLE
    params = [F(1, 2), F(1, 3), F(2), F(-1, 2), F(3), F(-3), F(2, 3), F(-2), F(3, 2)]

    def cpoint(t):
        if hyperbola:
            return ((1 + t * t) / (2 * t), (1 - t * t) / (2 * t))
        return circle_point(t)

    while True:
        anchors = [cpoint(rng.choice(params)) for _ in range(2)]
        lines = []
        for _ in range(rng.randint(2, kmax)):
            s = F(rng.randint(-6, 6), rng.randint(1, 3))
            a = rng.choice(anchors + [None])
            lines.append((-s, 1, F(rng.randint(-4, 4), 2)) if a is None else slope_line(a, s))
        try:
            arr = Arrangement.make(lines, [conic])
        except Exception:
            continue
        if _lines_ok(arr):
            return arr


def random_beta0_conic_line(rng: random.Random, kmax: int = 4) -> Arrangement:
    while True:
        arr = random_conic_line(rng, kmax, hyperbola=rng.random() < 0.3)
        if betti(build_graph(arr)) == 0:
            return arr
