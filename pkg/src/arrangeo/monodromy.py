"""Braid monodromy of a real line / conic-line arrangement on the free group.

Fiber points are numbered bottom to top (1 = lowest y).  The base point u
lies to the right of every singular value, and events are numbered x_1,
x_2, ... by decreasing x.  Walking from u leftwards below the events, each
stop contributes an automorphism δ; the words of an event are the images of
its Lefschetz pair under the δ's of all stops between it and u, nearest
stop first.

A conic contributes two fiber points.  Where they are complex (p ± iq) the
pair is pulled to p ± iε and rotated by 90 degrees onto the real axis: the
clockwise frame puts the lower point p - iε in the lower slot, the
counterclockwise frame puts it in the upper slot.  A complex region bounded
on the left by a branch point uses the clockwise frame there, one bounded on
the right uses the counterclockwise frame; with this choice the branch
points act as the identity on generators.  A line crossing the real part of
the pair inside a complex region is a "transparent crossing": not a
singular point, but it moves the fiber points and carries a braid.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import floor
from typing import Optional, Sequence

from .errors import MalformedSkeleton, NonGeneric
from .exact import ExactScalar, compare, rational_between
from .geometry import Arrangement, PointXY, require_valid, singular_points, transparent_crossings
from .words import Automorphism, Word, half_twist_block, twist

LOWER, UPPER = "-", "+"


@dataclass(frozen=True)
class SingularEvent:
    index: int  # 1-based, counted from the base point
    x: ExactScalar
    kind: str  # "node" | "multiple" | "branch"
    multiplicity: int
    lefschetz: tuple[int, int]
    point: PointXY

    @property
    def label(self) -> str:
        return f"x{self.index}"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "multiplicity": self.multiplicity,
            "lefschetz": list(self.lefschetz),
            "x": self.x.to_json(),
            "y": self.point.y.to_json(),
            "components": list(self.point.components),
        }


@dataclass(frozen=True)
class Stop:
    """A place on the walk from u to the left where the fiber model changes.

    kind is "event", "transparent" (line crossing the real part of the
    complex conic pair) or "frame" (switch between the two rotation frames
    inside one complex region).
    """

    x: ExactScalar
    kind: str
    delta: Automorphism
    event: Optional[SingularEvent] = None
    detail: str = ""


@dataclass(frozen=True)
class FiberModel:
    """Slot labels bottom to top at the base point; the conic's slots carry its id."""

    slots: tuple[str, ...]
    conic_state: str = "none"  # "real", "complex" or "none"

    @property
    def n(self) -> int:
        return len(self.slots)

    def components(self) -> dict[int, str]:
        return {i + 1: s for i, s in enumerate(self.slots)}


@dataclass(frozen=True)
class Monodromy:
    arrangement: Arrangement
    events: tuple[SingularEvent, ...]
    stops: tuple[Stop, ...]
    fiber: FiberModel
    base_x: Fraction

    @property
    def n(self) -> int:
        return self.fiber.n

    def stops_before(self, event: SingularEvent) -> list[Stop]:
        """Stops strictly between the event and u, nearest to the event first."""
        out = []
        for s in self.stops:
            if s.event is not None and s.event.index == event.index:
                break
            out.append(s)
        return list(reversed(out))

    def composed_delta(self, event: SingularEvent) -> Automorphism:
        aut = Automorphism.identity(self.n)
        for s in self.stops_before(event):
            aut = aut.then(s.delta)
        return aut

    def transport(self, event: SingularEvent) -> list[Word]:
        aut = self.composed_delta(event)
        a, b = event.lefschetz
        return [aut.image(i) for i in range(a, b + 1)]


# -- fiber ordering -------------------------------------------------------------


def _conic_region(arr: Arrangement, x: Fraction) -> str:
    c = arr.conic
    return "real" if c.delta_at(x) > 0 else "complex"


def _fiber_at(arr: Arrangement, x: Fraction) -> list[tuple[ExactScalar, str]]:
    """(y, label) pairs sorted by y; a complex conic pair is listed twice at its real part."""
    items: list[tuple[ExactScalar, str]] = []
    for l in arr.lines:
        items.append((l.y_at(x), l.id))
    c = arr.conic
    if c is not None:
        ys = c.ys_at(x) if c.delta_at(x) > 0 else None
        if ys is not None:
            items.append((ys[0], c.id + LOWER))
            items.append((ys[1], c.id + UPPER))
        else:
            p = c.center_y(x)
            items.append((p, c.id + "~"))
            items.append((p, c.id + "~"))

    def cmp(s, t):
        return compare(s[0], t[0])

    items.sort(key=cmp_to_key(cmp))
    ys = [y for y, lab in items if not lab.endswith("~")]
    if len(set(ys)) != len(ys):
        raise NonGeneric(f"two strands meet at sample x={x}")
    return items


def _slot_of(order: list[tuple[ExactScalar, str]], label: str) -> int:
    for i, (_, lab) in enumerate(order):
        if lab == label:
            return i + 1
    raise KeyError(label)


def _conic_slot(order) -> int:
    for i, (_, lab) in enumerate(order):
        if lab.endswith("~") or lab.endswith(LOWER):
            return i + 1
    raise KeyError("conic")


# -- transparent crossing and frame change braids ---------------------------------


def _crossing_delta(n: int, r: int, c: int, frame: str) -> Automorphism:
    """Braid of a real strand passing the complex pair, read moving right.

    c is the pair's lower slot and r the strand's slot on the right side of
    the crossing.  In the fiber the strand runs between p + iε and p - iε;
    seen in the rotated frame it passes below one point and above the other.
    """
    if r == c - 1:
        near = c - 1
    elif r == c + 2:
        near = c + 1
    else:
        raise NonGeneric("transparent crossing strand is not adjacent to the pair")
    s = 1 if frame == "cw" else -1
    return twist(c, n, -s).then(twist(near, n, s))


def _frame_delta(n: int, c: int) -> Automorphism:
    """Change from the clockwise frame (left) to the counterclockwise one (right)."""
    return twist(c, n, 1)


# -- main entry -----------------------------------------------------------------


def _sample_between(left: ExactScalar, right: ExactScalar) -> Fraction:
    return rational_between(left, right)


def _cmp_desc(a: ExactScalar, b: ExactScalar) -> int:
    return compare(b, a)


def sort_events(arr: Arrangement, validated: bool = False) -> Monodromy:
    """Order events from the base point leftwards and compute every stop's δ.

    The arrangement must already be in generic position (see shear_to_generic).
    """
    if not validated:
        require_valid(arr)
    pts = singular_points(arr)
    xs = [p.x for p in pts]
    if len(set(xs)) != len(xs):
        raise NonGeneric("two singular points share an x-coordinate; shear first")
    if any(l.vertical for l in arr.lines):
        raise NonGeneric("vertical line present; shear first")
    conic = arr.conic
    if conic is not None and conic.C == 0:
        raise NonGeneric("conic has a vertical asymptote; shear first")

    raw: list[tuple[ExactScalar, str, object]] = [(p.x, "event", p) for p in pts]
    for tx, lid in transparent_crossings(arr):
        raw.append((ExactScalar(tx), "transparent", lid))
    raw.sort(key=cmp_to_key(lambda s, t: _cmp_desc(s[0], t[0])))
    rx = [s[0] for s in raw]
    if len(set(rx)) != len(rx):
        raise NonGeneric("a transparent crossing coincides with another stop; shear first")

    # hyperbola: complex region between the branch points needs a frame switch
    # right next to the left branch point
    if conic is not None and conic.discriminant() > 0:
        bx = sorted((p.x for p in pts if p.is_branch), key=cmp_to_key(compare))
        xl = bx[0]
        i = rx.index(xl)
        right_neighbor = rx[i - 1]
        fx = _sample_between(xl, right_neighbor)
        raw.insert(i, (ExactScalar(fx), "frame", None))
        rx.insert(i, ExactScalar(fx))

    if raw:
        base = Fraction(floor(raw[0][0].bounds(4)[1]) + 1)
    else:
        base = Fraction(0)

    def order_at(x: Fraction):
        return _fiber_at(arr, x)

    base_order = order_at(base)
    n = len(base_order)
    fiber = FiberModel(
        tuple(lab.rstrip("~+-") if conic is not None and lab.startswith(conic.id) else lab for _, lab in base_order),
        "none" if conic is None else ("real" if conic.delta_at(base) > 0 else "complex"),
    )

    events: list[SingularEvent] = []
    stops: list[Stop] = []
    right = base
    frame = "cw"  # complex region to the right of everything is bounded on its left by a branch point
    for k, (x, kind, data) in enumerate(raw):
        order = order_at(right)
        if kind == "event":
            p: PointXY = data  # type: ignore[assignment]
            if p.is_branch:
                c = _conic_slot(order)
                ev = SingularEvent(len(events) + 1, x, "branch", 2, (c, c + 1), p)
                delta = Automorphism.identity(n)
            else:
                slots = []
                for comp in p.components:
                    if conic is not None and comp == conic.id:
                        side = UPPER if compare(p.y, conic.center_y(p.x)) > 0 else LOWER
                        slots.append(_slot_of(order, comp + side))
                    else:
                        slots.append(_slot_of(order, comp))
                slots.sort()
                a, b = slots[0], slots[-1]
                if b - a + 1 != len(slots):
                    raise NonGeneric(f"strands of the point at x={x} are not consecutive")
                m = len(slots)
                ev = SingularEvent(len(events) + 1, x, "node" if m == 2 else "multiple", m, (a, b), p)
                delta = half_twist_block(a, b, n)
            events.append(ev)
            stops.append(Stop(x, "event", delta, ev))
        elif kind == "transparent":
            r = _slot_of(order, data)  # type: ignore[arg-type]
            c = _conic_slot(order)
            stops.append(Stop(x, "transparent", _crossing_delta(n, r, c, frame), None, str(data)))
        else:
            c = _conic_slot(order)
            stops.append(Stop(x, "frame", _frame_delta(n, c), None, "ccw->cw"))
        # next sample to the left of this stop
        if k + 1 < len(raw):
            right = _sample_between(raw[k + 1][0], x)
        else:
            right = Fraction(floor(x.bounds(4)[0]) - 1)
        # frame bookkeeping when entering a complex region
        if conic is not None and kind == "event" and data.is_branch:  # type: ignore[union-attr]
            if conic.delta_at(right) < 0:
                # complex region lies left of this branch point: bounded on its right
                frame = "ccw"
        if kind == "frame":
            frame = "cw"
    return Monodromy(arr, tuple(events), tuple(stops), fiber, base)
