"""Group presentations on fiber generators and the Zariski-van Kampen relations."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .words import (
    Automorphism,
    Word,
    exponent_sum,
    format_word,
    inverse,
    mul,
    parse_word,
    reduce,
)

EQ, COMM, CYCLIC = "eq", "comm", "cyclic"


@dataclass(frozen=True)
class Relation:
    kind: str  # "eq" | "comm" | "cyclic"
    words: tuple[Word, ...]
    source: str = ""

    def __post_init__(self) -> None:
        ws = tuple(reduce(w) for w in self.words)
        object.__setattr__(self, "words", ws)
        if self.kind in (EQ, COMM) and len(ws) != 2:
            raise ValueError(f"{self.kind} relation needs two words")
        if self.kind == CYCLIC and len(ws) < 3:
            raise ValueError("cyclic relation needs at least three words")
        if self.kind not in (EQ, COMM, CYCLIC):
            raise ValueError(f"unknown relation kind {self.kind}")

    def relators(self) -> list[Word]:
        """Words that must be trivial; their normal closure is this relation."""
        if self.kind == EQ:
            return [mul(self.words[0], inverse(self.words[1]))]
        if self.kind == COMM:
            a, b = self.words
            return [mul(a, b, inverse(a), inverse(b))]
        return [mul(l, inverse(r)) for l, r in expand_cyclic(self)]

    def generators(self) -> set[int]:
        return {abs(g) for w in self.words for g in w}

    def substitute(self, aut: Automorphism) -> "Relation":
        return Relation(self.kind, tuple(aut.apply(w) for w in self.words), self.source)

    def format(self) -> str:
        sep = ";" if self.kind == CYCLIC else ","
        return f"rel {self.kind}: " + sep.join(format_word(w) for w in self.words)

    def to_json(self) -> dict:
        return {"kind": self.kind, "words": [list(w) for w in self.words], "source": self.source}


def cyclic_products(words: Sequence[Word]) -> list[Word]:
    """a_k ... a_1, a_1 a_k ... a_2, ..., a_{k-1} ... a_1 a_k."""
    k = len(words)
    desc = list(range(k - 1, -1, -1))
    out = []
    for s in range(k):
        seq = desc[k - s :] + desc[: k - s]
        out.append(mul(*(words[t] for t in seq)))
    return out


def expand_cyclic(rel: Relation) -> list[tuple[Word, Word]]:
    """The k-1 equalities of a cyclic relation: consecutive rotations are equal."""
    if rel.kind != CYCLIC:
        raise ValueError("not a cyclic relation")
    prods = cyclic_products(rel.words)
    return [(prods[i], prods[i + 1]) for i in range(len(prods) - 1)]


@dataclass(frozen=True)
class Presentation:
    n: int
    relations: tuple[Relation, ...]
    components: tuple[str, ...] = ()  # component id of each generator slot

    def __post_init__(self) -> None:
        for r in self.relations:
            for g in r.generators():
                if not 1 <= g <= self.n:
                    raise ValueError(f"relation uses Γ{g} outside 1..{self.n}")
        if self.components and len(self.components) != self.n:
            raise ValueError("component map must cover every generator")

    def relators(self) -> list[Word]:
        return [w for r in self.relations for w in r.relators()]

    def substitute(self, aut: Automorphism) -> "Presentation":
        return replace(self, relations=tuple(r.substitute(aut) for r in self.relations))

    def format(self) -> str:
        lines = [f"gens {self.n}"]
        lines.extend(r.format() for r in self.relations)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "gens": self.n,
            "components": list(self.components),
            "relations": [r.to_json() for r in self.relations],
        }


def parse_presentation(text: str) -> Presentation:
    n = None
    rels = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens"):
            n = int(line.split()[1])
            continue
        head, _, body = line.partition(":")
        kind = head.split()[1]
        sep = ";" if kind == CYCLIC else ","
        rels.append(Relation(kind, tuple(parse_word(w) for w in body.split(sep))))
    if n is None:
        raise ValueError("missing gens header")
    return Presentation(n, tuple(rels))


def relation_count(kinds_and_mult: Iterable[tuple[str, int]]) -> int:
    """Number of word equations contributed by events (1 per node/branch, k-1 per multiple)."""
    return sum(1 if kind in ("node", "branch") else m - 1 for kind, m in kinds_and_mult)


def zvk(mono) -> Presentation:
    """Zariski-van Kampen presentation: one relation per event, words from transport."""
    rels = []
    for ev in mono.events:
        words = tuple(mono.transport(ev))
        if ev.kind == "branch":
            rels.append(Relation(EQ, words, ev.label))
        elif ev.kind == "node":
            rels.append(Relation(COMM, words, ev.label))
        else:
            rels.append(Relation(CYCLIC, words, ev.label))
    return Presentation(mono.n, tuple(rels), mono.fiber.slots)


# -- abelianization ---------------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def abelianization(p: Presentation) -> AbelianInvariants:
    """Rank and torsion of the abelian quotient via Smith normal form."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    rows = [exponent_sum(w, p.n) for w in p.relators()]
    rows = [r for r in rows if any(r)]
    if not rows:
        return AbelianInvariants(p.n, ())
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    return AbelianInvariants(p.n - len(nonzero), tuple(d for d in nonzero if d != 1))


# -- canonical presentations of Z^r + F_{n_1} + ... ---------------------------------


def canonical_presentation(r: int, free_ranks: Sequence[int]) -> Presentation:
    """Z^r ⊕ F_{n_1} ⊕ ...: central generators first, then the free blocks."""
    blocks: list[list[int]] = [[i] for i in range(1, r + 1)]
    nxt = r + 1
    for m in sorted(free_ranks):
        blocks.append(list(range(nxt, nxt + m)))
        nxt += m
    n = nxt - 1
    rels = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            for a in blocks[i]:
                for b in blocks[j]:
                    rels.append(Relation(COMM, ((a,), (b,))))
    return Presentation(n, tuple(rels), tuple(f"B{k}" for k, blk in enumerate(blocks) for _ in blk))


# -- moving the base point ----------------------------------------------------------


@dataclass(frozen=True)
class BasepointMove:
    presentation: Presentation
    position: int  # number of stops to the right of the base point
    rule: str  # how the event itself was crossed: "swap" | "identity" | "twist"
    substitution: Automorphism


def _swap(a: int, n: int) -> Automorphism:
    imgs = [(k,) for k in range(1, n + 1)]
    imgs[a - 1], imgs[a] = (a + 1,), (a,)
    return Automorphism(tuple(imgs))


def _has_plain_comm(p: Presentation, a: int, b: int) -> bool:
    want = {(a,), (b,)}
    return any(r.kind == COMM and set(r.words) == want for r in p.relations)


def _stop_index(mono, event) -> int:
    for k, s in enumerate(mono.stops):
        if s.event is not None and s.event.index == event.index:
            return k
    raise ValueError(f"event {event.label} not in this monodromy")


def basepoint_move(p: Presentation, mono, event, direction: str, position: int = 0) -> BasepointMove:
    """Carry the base point across one event, below it.

    position counts the stops (events, transparent crossings, frame changes)
    between the base point and the far right.  Moving "left" crosses the event
    from right to left and substitutes by δ^-1; moving "right" crosses back and
    substitutes by δ.  Non-event stops between the base point and the event are
    crossed along with it.  A node whose plain commutation [Γ_a, Γ_a+1] is
    present is crossed by swapping Γ_a and Γ_a+1; a branch point is the identity.
    """
    from .errors import NotAdjacent

    k = _stop_index(mono, event)
    stops = mono.stops
    if direction == "left":
        span = range(position, k + 1)
        new_position = k + 1
    elif direction == "right":
        j = k
        while j > 0 and stops[j - 1].event is None:
            j -= 1
        span = range(j, position)
        new_position = j
    else:
        raise ValueError("direction must be 'left' or 'right'")
    if not span or any(stops[i].event is not None and i != k for i in span):
        raise NotAdjacent(f"{event.label} is not adjacent to the base point at position {position}")

    # Stops are crossed nearest first; each substitution peels one δ off the
    # outside of the transported words, and going right puts them back.
    crossed = [stops[i] for i in span]
    if direction == "right":
        crossed.reverse()
    n = p.n
    ident = Automorphism.identity(n)
    sub, cur, rule = ident, p, "identity"
    for s in crossed:
        ev = s.event
        if ev is not None and ev.kind == "node" and _has_plain_comm(cur, *ev.lefschetz):
            step, rule = _swap(ev.lefschetz[0], n), "swap"
        else:
            step = s.delta.inverse() if direction == "left" else s.delta
            if ev is not None and step != ident:
                rule = "twist"
        sub = sub.then(step)
        cur = cur.substitute(step)
    return BasepointMove(cur, new_position, rule, sub)
