"""Skeletons in the fiber model and the pull-down rule that turns them into words.

A skeleton is a chain of paths joining its endpoints (fiber positions).  For
every intermediate position it records whether the chain passes above ("A")
or below ("B") that point.  The chain is split at a gap g (between positions
g and g+1): an endpoint e <= g is pulled down towards the gap moving right
and picks up a conjugation by Γ_p for every point p it passes above; an
endpoint e > g moves left and picks up Γ_p^-1 instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import MalformedSkeleton
from .words import Word, reduce, twist_sequence

ABOVE, BELOW = "A", "B"


@dataclass(frozen=True)
class Skeleton:
    endpoints: tuple[int, ...]
    passages: tuple[tuple[int, str], ...] = ()  # sorted (position, "A"|"B")
    split: int = 0  # gap between positions split and split+1; 0 means the first endpoint

    @classmethod
    def make(cls, endpoints: Sequence[int], passages: Mapping[int, str] | None = None,
             split: int | None = None) -> "Skeleton":
        eps = tuple(endpoints)
        g = eps[0] if split is None and eps else (split or 0)
        return cls(eps, tuple(sorted((passages or {}).items())), g)

    @classmethod
    def segment(cls, a: int, b: int) -> "Skeleton":
        """Straight skeleton through the consecutive points a..b."""
        return cls(tuple(range(a, b + 1)), (), a)

    def labels(self) -> dict[int, str]:
        return dict(self.passages)

    def check(self, n: int) -> None:
        eps = self.endpoints
        if len(eps) < 2:
            raise MalformedSkeleton("a skeleton needs at least two endpoints")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise MalformedSkeleton("endpoints must be strictly increasing")
        if eps[0] < 1 or eps[-1] > n:
            raise MalformedSkeleton(f"endpoint outside 1..{n}")
        lab = self.labels()
        if len(lab) != len(self.passages):
            raise MalformedSkeleton("a position has two passage records (crossing passages)")
        lo, hi = min(eps[0], self.split + 1), max(eps[-1], self.split)
        for p, v in lab.items():
            if v not in (ABOVE, BELOW):
                raise MalformedSkeleton(f"passage at {p} must be A or B")
            if p in eps:
                raise MalformedSkeleton(f"position {p} is an endpoint, not a passage")
            if not lo <= p <= hi:
                raise MalformedSkeleton(f"passage at {p} lies outside the skeleton")
        if not 0 <= self.split <= n:
            raise MalformedSkeleton("split gap out of range")

    def paths(self) -> list["Path"]:
        lab = self.labels()
        out = []
        for e in self.endpoints:
            if e <= self.split:
                span = range(e + 1, self.split + 1)
            else:
                span = range(self.split + 1, e)
            # other endpoints on the way count as passed below
            out.append(Path(e, self.split, {p: lab.get(p, BELOW) for p in span}))
        return out


def skeleton_to_words(sk: Skeleton, n: int) -> list[Word]:
    sk.check(n)
    return [p.word() for p in sk.paths()]


@dataclass
class Path:
    """One endpoint's way to the gap; labels cover exactly the positions it passes."""

    e: int
    g: int
    labels: dict[int, str] = field(default_factory=dict)

    @property
    def rightward(self) -> bool:
        return self.e <= self.g

    def span(self) -> range:
        return range(self.e + 1, self.g + 1) if self.rightward else range(self.g + 1, self.e)

    def word(self) -> Word:
        w: Word = (self.e,)
        if self.rightward:
            for p in range(self.e + 1, self.g + 1):
                if self.labels.get(p) == ABOVE:
                    w = (p,) + w + (-p,)
        else:
            for p in range(self.e - 1, self.g, -1):
                if self.labels.get(p) == ABOVE:
                    w = (-p,) + w + (p,)
        return reduce(w)

    def normalize(self) -> None:
        """Move the gap towards the endpoint past trailing B passages (word unchanged)."""
        if self.rightward:
            while self.g > self.e and self.labels.get(self.g) == BELOW:
                del self.labels[self.g]
                self.g -= 1
        else:
            while self.g + 1 < self.e and self.labels.get(self.g + 1) == BELOW:
                del self.labels[self.g + 1]
                self.g += 1

    def twist(self, i: int) -> None:
        """Apply the counterclockwise half-twist exchanging points i and i+1."""
        e, L = self.e, self.labels
        span = set(self.span())
        if e not in (i, i + 1):
            has_i, has_j = i in span, i + 1 in span
            if has_i and has_j:
                x, y = L[i], L[i + 1]
                if (x, y) == (ABOVE, BELOW):
                    L[i], L[i + 1] = BELOW, ABOVE
                elif (x, y) == (BELOW, ABOVE):
                    raise MalformedSkeleton("path cannot be straightened after the twist")
            elif has_i or has_j:
                # the gap sits between i and i+1
                if self.rightward:
                    if L[i] == ABOVE:
                        L[i] = BELOW
                        L[i + 1] = ABOVE
                        self.g = i + 1
                elif L[i + 1] == ABOVE:
                    raise MalformedSkeleton("path cannot be straightened after the twist")
        elif e == i:
            if not self.rightward:
                self.e = i + 1
                L[i] = BELOW
            elif self.g == i:
                self.e = i + 1
            else:
                if L[i + 1] == ABOVE:
                    raise MalformedSkeleton("path cannot be straightened after the twist")
                del L[i + 1]
                self.e = i + 1
        else:  # e == i + 1
            if self.rightward:
                self.e = i
                L[i + 1] = ABOVE
            elif self.g == i:
                self.e = i
                L[i + 1] = ABOVE
                self.g = i + 1
            elif L[i] == ABOVE:
                del L[i]
                self.e = i
            elif all(v == BELOW for v in L.values()):
                self.labels = {i + 1: ABOVE}
                self.e = i
                self.g = i + 1
            else:
                raise MalformedSkeleton("path cannot be straightened after the twist")
        self.normalize()


def assemble(paths: Sequence[Path]) -> Skeleton:
    """Merge per-endpoint paths into one skeleton with a common gap."""
    right = [p for p in paths if p.rightward and p.g > p.e]
    left = [p for p in paths if not p.rightward and p.g + 1 < p.e]
    lo = max([p.g for p in right] + [0])
    hi = min([p.g for p in left] + [max(p.e for p in paths)])
    candidates = range(lo, hi + 1)
    eps = sorted(p.e for p in paths)
    if len(set(eps)) != len(eps):
        raise MalformedSkeleton("two paths end at the same point")
    for g in candidates:
        labels: dict[int, str] = {}
        ok = True
        for p in paths:
            q = Path(p.e, p.g, dict(p.labels))
            # extend with B passages up to the common gap
            if q.rightward and g >= q.e:
                for pos in range(q.g + 1, g + 1):
                    q.labels.setdefault(pos, BELOW)
            elif not q.rightward and g < q.e:
                for pos in range(g + 1, q.g + 1):
                    q.labels.setdefault(pos, BELOW)
            else:
                ok = False
                break
            q.g = g
            for pos, v in q.labels.items():
                if pos in eps:
                    ok = ok and v == BELOW
                    continue
                if labels.setdefault(pos, v) != v:
                    ok = False
            if not ok:
                break
        if ok:
            return Skeleton(tuple(eps), tuple(sorted(labels.items())), g)
    raise MalformedSkeleton("paths do not fit into one skeleton")


def track(sk: Skeleton, twists: Sequence[int]) -> list[Path]:
    """Move each path of the skeleton by a sequence of elementary twists."""
    paths = sk.paths()
    for p in paths:
        p.normalize()
    for i in twists:
        for p in paths:
            p.twist(i)
    return paths


def track_blocks(a: int, b: int, blocks: Sequence[tuple[int, int]]) -> list[Word]:
    """Words of the straight skeleton on [a, b] after half-twists on the given blocks, in order."""
    seq: list[int] = []
    for lo, hi in blocks:
        seq.extend(twist_sequence(lo, hi))
    return [p.word() for p in track(Skeleton.segment(a, b), seq)]
