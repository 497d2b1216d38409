"""Lines, one conic, their singular points and admissibility checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import (
    ComplexIntersection,
    IdenticalLines,
    MalformedInput,
    UnsupportedParabola,
    UnsupportedTangency,
)
from .exact import ExactScalar, _frac, compare

Scalar = ExactScalar


def _lowest_terms(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for q in coeffs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise MalformedInput("all coefficients are zero")
    return tuple(v // g for v in ints)


@dataclass(frozen=True)
class Line:
    """Zero set of a*x + b*y + c; stored as coprime integers, canonical sign."""

    a: int
    b: int
    c: int
    id: str = ""

    @classmethod
    def make(cls, a, b, c, id: str = "") -> "Line":
        a, b, c = _frac(a), _frac(b), _frac(c)
        if a == 0 and b == 0:
            raise MalformedInput(f"line {id or '?'} has a = b = 0")
        ia, ib, ic = _lowest_terms((a, b, c))
        if ib < 0 or (ib == 0 and ia < 0):
            ia, ib, ic = -ia, -ib, -ic
        return cls(ia, ib, ic, id)

    @property
    def vertical(self) -> bool:
        return self.b == 0

    def same_locus(self, other: "Line") -> bool:
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def y_at(self, x: Number) -> ExactScalar:
        if self.vertical:
            raise ValueError("vertical line has no y(x)")
        return (ExactScalar.of(-self.c) - ExactScalar.of(x) * self.a) / self.b

    def contains(self, x: ExactScalar, y: ExactScalar) -> bool:
        return (x * self.a + y * self.b + self.c).sign() == 0

    def sheared(self, t: Fraction) -> "Line":
        # substituting x = x' - t*y
        return Line.make(self.a, self.b - self.a * t, self.c, self.id)

    def to_json(self) -> dict:
        return {"id": self.id, "a": str(self.a), "b": str(self.b), "c": str(self.c)}


Number = Union[int, Fraction, ExactScalar]


@dataclass(frozen=True)
class Conic:
    """A x^2 + B xy + C y^2 + D x + E y + F = 0 with rational coefficients."""

    coeffs: tuple[Fraction, ...]
    id: str = ""

    @classmethod
    def make(cls, coeffs, id: str = "") -> "Conic":
        cs = [_frac(v) for v in coeffs]
        if len(cs) != 6:
            raise MalformedInput("a conic needs six coefficients")
        ints = _lowest_terms(cs)
        first = next(v for v in ints if v != 0)
        if first < 0:
            ints = tuple(-v for v in ints)
        return cls(tuple(Fraction(v) for v in ints), id)

    @property
    def A(self) -> Fraction:
        return self.coeffs[0]

    @property
    def B(self) -> Fraction:
        return self.coeffs[1]

    @property
    def C(self) -> Fraction:
        return self.coeffs[2]

    @property
    def D(self) -> Fraction:
        return self.coeffs[3]

    @property
    def E(self) -> Fraction:
        return self.coeffs[4]

    @property
    def F(self) -> Fraction:
        return self.coeffs[5]

    def det(self) -> Fraction:
        A, B, C, D, E, F = self.coeffs
        # determinant of the symmetric 3x3 matrix of the form
        return A * (C * F - E * E / 4) - B / 2 * (B / 2 * F - E * D / 4) + D / 2 * (B * E / 4 - C * D / 2)

    def discriminant(self) -> Fraction:
        return self.B * self.B - 4 * self.A * self.C

    def is_parabola(self) -> bool:
        return self.discriminant() == 0

    def is_empty_ellipse(self) -> bool:
        return self.discriminant() < 0 and (self.A + self.C) * self.det() > 0

    def fiber_discriminant(self) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients of Δ(x), the discriminant of the form as a quadratic in y."""
        A, B, C, D, E, F = self.coeffs
        return (B * B - 4 * A * C, 2 * B * E - 4 * C * D, E * E - 4 * C * F)

    def center_y(self, x: Number) -> ExactScalar:
        """Real part of the two fiber points over x: -(B x + E) / (2 C)."""
        return (ExactScalar.of(x) * self.B + self.E) / (-2 * self.C)

    def delta_at(self, x: Fraction) -> Fraction:
        p, q, r = self.fiber_discriminant()
        return p * x * x + q * x + r

    def ys_at(self, x: Fraction) -> tuple[ExactScalar, ExactScalar] | None:
        """The two real fiber points (lower, upper) over rational x, or None."""
        d = self.delta_at(x)
        if d < 0:
            return None
        c = self.center_y(x)
        h = ExactScalar.sqrt(d) / (2 * abs(self.C))
        return c - h, c + h

    def value(self, x: ExactScalar, y: ExactScalar) -> ExactScalar:
        A, B, C, D, E, F = self.coeffs
        return x * x * A + x * y * B + y * y * C + x * D + y * E + F

    def sheared(self, t: Fraction) -> "Conic":
        A, B, C, D, E, F = self.coeffs
        return Conic.make((A, B - 2 * A * t, A * t * t - B * t + C, D, E - D * t, F), self.id)

    def to_json(self) -> dict:
        return {"id": self.id, "coeffs": [str(v) for v in self.coeffs]}


@dataclass(frozen=True)
class PointXY:
    x: ExactScalar
    y: ExactScalar
    components: tuple[str, ...]
    multiplicity: Union[int, str]

    @property
    def is_branch(self) -> bool:
        return self.multiplicity == "branch"

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "components": list(self.components),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[Line, ...] = ()
    conics: tuple[Conic, ...] = ()
    shear: Fraction = Fraction(0)

    @classmethod
    def make(cls, lines: Iterable = (), conics: Iterable = ()) -> "Arrangement":
        ls, cs = [], []
        for i, l in enumerate(lines, 1):
            if isinstance(l, Line):
                ls.append(l if l.id else replace(l, id=f"L{i}"))
            else:
                ls.append(Line.make(*l, id=f"L{i}"))
        for i, c in enumerate(conics, 1):
            if isinstance(c, Conic):
                cs.append(c if c.id else replace(c, id=f"C{i}"))
            else:
                cs.append(Conic.make(c, id=f"C{i}"))
        ids = [x.id for x in ls + cs]
        if len(set(ids)) != len(ids):
            raise MalformedInput("component ids must be distinct")
        return cls(tuple(ls), tuple(cs))

    @property
    def conic(self) -> Conic | None:
        return self.conics[0] if self.conics else None

    @property
    def component_ids(self) -> list[str]:
        return [l.id for l in self.lines] + [c.id for c in self.conics]

    def line(self, id: str) -> Line:
        for l in self.lines:
            if l.id == id:
                return l
        raise KeyError(id)

    def sheared(self, t: Fraction) -> "Arrangement":
        if t == 0:
            return self
        return Arrangement(
            tuple(l.sheared(t) for l in self.lines),
            tuple(c.sheared(t) for c in self.conics),
            self.shear + t,
        )

    def without_conics(self) -> "Arrangement":
        return Arrangement(self.lines, (), self.shear)

    def to_json(self) -> dict:
        return {
            "lines": [l.to_json() for l in self.lines],
            "conics": [c.to_json() for c in self.conics],
        }


def parse_arrangement(obj) -> Arrangement:
    """Build an arrangement from the JSON input schema (dict or text)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedInput("top level must be an object")
    unknown = set(obj) - {"lines", "conics"}
    if unknown:
        raise MalformedInput(f"unknown keys: {sorted(unknown)}")
    lines, conics = [], []
    try:
        for i, l in enumerate(obj.get("lines", []), 1):
            lines.append(Line.make(l["a"], l["b"], l["c"], id=str(l.get("id", f"L{i}"))))
        for i, c in enumerate(obj.get("conics", []), 1):
            conics.append(Conic.make(c["coeffs"], id=str(c.get("id", f"C{i}"))))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"bad component: {exc}") from exc
    return Arrangement.make(lines, conics)


# -- pairwise intersections -------------------------------------------------


def line_line(l1: Line, l2: Line) -> PointXY | None:
    if l1.same_locus(l2):
        raise IdenticalLines(f"{l1.id} and {l2.id} coincide")
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        return None
    x = Fraction(l1.b * l2.c - l2.b * l1.c, det)
    y = Fraction(l2.a * l1.c - l1.a * l2.c, det)
    return PointXY(ExactScalar(x), ExactScalar(y), tuple(sorted((l1.id, l2.id))), 2)


class AsymptoticLine(Exception):
    """The line meets the conic in fewer than two affine points (one at infinity)."""


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> tuple[ExactScalar, ExactScalar]:
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ComplexIntersection("complex-conjugate intersection pair")
    if disc == 0:
        raise UnsupportedTangency("double root")
    r = ExactScalar.sqrt(disc) / (2 * a)
    mid = ExactScalar(-b / (2 * a))
    lo, hi = mid - r, mid + r
    return (lo, hi) if lo < hi else (hi, lo)


def conic_line(c: Conic, l: Line) -> list[PointXY]:
    """Intersection points of a conic and a line, sorted by (x, y).

    Returns [] for a complex pair; raises UnsupportedTangency on a double
    root and AsymptoticLine when only one affine point exists.
    """
    A, B, C, D, E, F = c.coeffs
    ids = tuple(sorted((c.id, l.id)))
    if l.b != 0:
        m, k = Fraction(-l.a, l.b), Fraction(-l.c, l.b)  # y = m x + k
        qa = A + B * m + C * m * m
        qb = B * k + 2 * C * m * k + D + E * m
        qc = C * k * k + E * k + F
        if qa == 0:
            raise AsymptoticLine(f"{l.id} is parallel to an asymptote of {c.id}")
        try:
            xs = _quadratic_roots(qa, qb, qc)
        except ComplexIntersection:
            return []
        except UnsupportedTangency:
            raise UnsupportedTangency(f"{l.id} is tangent to {c.id}") from None
        pts = [PointXY(x, x * m + k, ids, 2) for x in xs]
    else:
        x0 = Fraction(-l.c, l.a)
        qa, qb, qc = C, B * x0 + E, A * x0 * x0 + D * x0 + F
        if qa == 0:
            raise AsymptoticLine(f"{l.id} is parallel to an asymptote of {c.id}")
        try:
            ys = _quadratic_roots(qa, qb, qc)
        except ComplexIntersection:
            return []
        except UnsupportedTangency:
            raise UnsupportedTangency(f"{l.id} is tangent to {c.id}") from None
        pts = [PointXY(ExactScalar(x0), y, ids, 2) for y in ys]
    return pts


def branch_points(c: Conic) -> tuple[PointXY, PointXY]:
    """The two points of the conic with a vertical tangent, sorted by x.

    Raises UnsupportedParabola for parabolas and ComplexIntersection when the
    vertical tangents are not real (hyperbola opening up and down).
    """
    if c.is_parabola():
        raise UnsupportedParabola(f"{c.id} is a parabola: one branch point is at infinity")
    if c.C == 0:
        raise ValueError("conic has a vertical asymptote; shear before asking for branch points")
    p, q, r = c.fiber_discriminant()
    try:
        xs = _quadratic_roots(p, q, r)
    except ComplexIntersection:
        raise ComplexIntersection(f"{c.id} has complex branch points") from None
    return tuple(PointXY(x, c.center_y(x), (c.id,), "branch") for x in xs)  # type: ignore[return-value]


def _branch_points_any_frame(c: Conic) -> tuple[PointXY, PointXY]:
    """Branch points; if the frame is degenerate (C = 0), use the first shear making it not."""
    if c.C != 0:
        return branch_points(c)
    t = _first_shear(lambda t: c.sheared(t).C != 0)
    bps = branch_points(c.sheared(t))
    # map back: x = x' - t y
    return tuple(PointXY(p.x - p.y * t, p.y, p.components, p.multiplicity) for p in bps)  # type: ignore[return-value]


def _first_shear(ok) -> Fraction:
    k = 1
    while True:
        for t in (Fraction(1, k), Fraction(-1, k)):
            if ok(t):
                return t
        k += 1


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    components: tuple[str, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "components": list(self.components), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def validate(arr: Arrangement) -> ValidationReport:
    out: list[Violation] = []
    if len(arr.conics) > 1:
        out.append(Violation("TooManyConics", tuple(c.id for c in arr.conics),
                             "the exact pipeline handles at most one conic"))
    for l1, l2 in combinations(arr.lines, 2):
        if l1.same_locus(l2):
            out.append(Violation("IdenticalLines", (l1.id, l2.id)))
    good_conics = []
    for c in arr.conics:
        if c.det() == 0:
            out.append(Violation("DegenerateConic", (c.id,), "the form factors into lines"))
        elif c.is_parabola():
            out.append(Violation("UnsupportedParabola", (c.id,), "one branch point is at infinity"))
        elif c.is_empty_ellipse():
            out.append(Violation("EmptyConic", (c.id,), "no real points"))
        else:
            good_conics.append(c)
    for c in good_conics:
        try:
            bps = _branch_points_any_frame(c)
        except ComplexIntersection:
            out.append(Violation("ComplexIntersection", (c.id,), "branch points are not real"))
            bps = ()
        for l in arr.lines:
            try:
                pts = conic_line(c, l)
                if not pts:
                    out.append(Violation("ComplexIntersection", (c.id, l.id),
                                         "line meets the conic in a complex-conjugate pair"))
            except UnsupportedTangency:
                out.append(Violation("UnsupportedTangency", (c.id, l.id)))
            except AsymptoticLine:
                out.append(Violation("AsymptoticLine", (c.id, l.id),
                                     "line is parallel to an asymptote, one intersection is at infinity"))
            for bp in bps:
                if l.contains(bp.x, bp.y):
                    out.append(Violation("BranchPointOnLine", (c.id, l.id)))
    for c1, c2 in combinations(good_conics, 2):
        if c1.coeffs == c2.coeffs:
            out.append(Violation("IdenticalConics", (c1.id, c2.id)))
    return ValidationReport(tuple(out))


# -- singular points ------------------------------------------------------------


def _point_key(p: PointXY):
    return p.x, p.y


def _sort_points(pts: list[PointXY]) -> list[PointXY]:
    from functools import cmp_to_key

    def cmp(p: PointXY, q: PointXY) -> int:
        return compare(p.x, q.x) or compare(p.y, q.y)

    return sorted(pts, key=cmp_to_key(cmp))


def singular_points(arr: Arrangement) -> list[PointXY]:
    """Intersection points grouped by coincidence, plus branch points, sorted by (x, y)."""
    groups: dict[tuple[ExactScalar, ExactScalar], set[str]] = {}
    for l1, l2 in combinations(arr.lines, 2):
        p = line_line(l1, l2)
        if p is not None:
            groups.setdefault(_point_key(p), set()).update(p.components)
    for c in arr.conics:
        for l in arr.lines:
            for p in conic_line(c, l):
                groups.setdefault(_point_key(p), set()).update(p.components)
    pts = [PointXY(x, y, tuple(sorted(ids)), len(ids)) for (x, y), ids in groups.items()]
    for c in arr.conics:
        if c.C != 0:
            pts.extend(branch_points(c))
    return _sort_points(pts)


def intersection_lattice(arr: Arrangement) -> list[tuple[str, ...]]:
    """Incidence data of the multiple and double points, shear independent."""
    return sorted(p.components for p in singular_points(arr) if not p.is_branch)


def transparent_crossings(arr: Arrangement) -> list[tuple[Fraction, str]]:
    """x where a line meets the conic's center curve while the conic fiber points are complex."""
    c = arr.conic
    if c is None or c.C == 0:
        return []
    out = []
    for l in arr.lines:
        if l.vertical:
            continue
        # line: y = m x + k; center: y = -(B x + E)/(2C)
        m, k = Fraction(-l.a, l.b), Fraction(-l.c, l.b)
        cm, ck = -c.B / (2 * c.C), -c.E / (2 * c.C)
        if m == cm:
            continue
        x = (ck - k) / (m - cm)
        if c.delta_at(x) < 0:
            out.append((x, l.id))
    return sorted(out, key=lambda t: (-t[0], t[1]))


def _frame_is_generic(arr: Arrangement) -> bool:
    if any(l.vertical for l in arr.lines):
        return False
    c = arr.conic
    if c is not None:
        if c.C == 0:
            return False
        try:
            bps = branch_points(c)
        except (ComplexIntersection, UnsupportedParabola):
            return False
        if any(l.contains(p.x, p.y) for p in bps for l in arr.lines):
            return False
    pts = singular_points(arr)
    xs = [p.x for p in pts]
    if len(set(xs)) != len(xs):
        return False
    tx = [ExactScalar(x) for x, _ in transparent_crossings(arr)]
    if len(set(tx)) != len(tx) or set(tx) & set(xs):
        return False
    return True


def shear_to_generic(arr: Arrangement) -> Arrangement:
    """Apply x -> x + t*y with t = 0 if generic, else t = 1/k for the smallest k >= 1 that works."""
    if _frame_is_generic(arr):
        return arr
    k = 1
    while True:
        cand = arr.sheared(Fraction(1, k))
        if _frame_is_generic(cand) and validate(cand).ok:
            return cand
        k += 1


def require_valid(arr: Arrangement) -> None:
    from .errors import ValidationFailed

    report = validate(arr)
    if not report.ok:
        raise ValidationFailed(report)


def multiple_points(arr: Arrangement) -> list[PointXY]:
    return [p for p in singular_points(arr) if not p.is_branch and p.multiplicity >= 3]
