"""Budgeted rewriting of a presentation towards conjugation-free form.

Each relation keeps its type; words are conjugates c Γ_k c^-1.  Steps are
Tietze moves that replace one relation by an equivalent one, using only
facts read off relations that are already plain (never the relation being
rewritten):

* strip: conjugate the whole relation by a letter (all relation types are
  invariant under simultaneous conjugation);
* peel: drop the innermost conjugator letter x of c x Γ_k x^-1 c^-1 when
  [x, Γ_k] = e or x and Γ_k are identified, or drop an innermost block Q
  known to commute with Γ_k from a plain cyclic relation;
* hurwitz: on cyclic relations replace a neighbouring pair (x^-1 y x, x) by
  (x, y), or (y, y x y^-1) by (x, y); the product and the generated
  subgroup are unchanged;
* merge: a plain equality Γ_i = Γ_j (i < j) substitutes Γ_i for Γ_j in every
  other relation;
* rotate: rotate a plain cyclic tuple to start with its smallest index;
* reorder: swap two neighbours of a plain cyclic tuple that are known to
  commute.  A cyclic relation says that its product commutes with every
  member, and the swap changes neither the product nor the members.

Every step strictly shortens its relation except merge and rotate, which
happen at most once per relation, so the process terminates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .presentation import COMM, CYCLIC, EQ, Presentation, Relation
from .words import Word, inverse, mul, reduce, split_conjugate

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class Step:
    rule: str
    relation: int  # index into the relation list
    before: tuple[Word, ...]
    after: tuple[Word, ...]
    fact: str = ""

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "relation": self.relation,
            "before": [list(w) for w in self.before],
            "after": [list(w) for w in self.after],
            "fact": self.fact,
        }


@dataclass(frozen=True)
class CfVerdict:
    status: str  # "ConjugationFree" | "Unresolved"
    presentation: Presentation
    trace: tuple[Step, ...]
    steps_used: int
    reason: str = ""

    @property
    def conjugation_free(self) -> bool:
        return self.status == "ConjugationFree"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "steps_used": self.steps_used,
            "presentation": self.presentation.to_json(),
            "trace": [s.to_json() for s in self.trace],
        }


def is_plain(words) -> bool:
    return all(len(w) == 1 and w[0] > 0 for w in words)


def _increasing(idx: list[int]) -> bool:
    return all(a < b for a, b in zip(idx, idx[1:]))


def relation_is_cf(rel: Relation) -> bool:
    if not is_plain(rel.words):
        return False
    idx = [w[0] for w in rel.words]
    return _increasing(idx)


class _Facts:
    """Commutation knowledge extracted from plain relations other than one excluded index."""

    def __init__(self, rels: list[Relation], exclude: int) -> None:
        self.comm: set[frozenset[int]] = set()
        self.blocks: dict[int, list[tuple[Word, str]]] = {}
        for i, r in enumerate(rels):
            if i == exclude or not is_plain(r.words):
                continue
            gens = [w[0] for w in r.words]
            if r.kind == COMM:
                self.comm.add(frozenset(gens))
            elif r.kind == EQ:
                self.comm.add(frozenset(gens))
            elif r.kind == CYCLIC:
                k = len(gens)
                total = tuple(reversed(gens))
                for j, g in enumerate(gens):
                    # Q_j = g_{j-1} ... g_1 g_k ... g_{j+1} commutes with g_j
                    q = tuple(reversed(gens[:j])) + tuple(reversed(gens[j + 1 :]))
                    src = f"cyclic relation {i + 1}"
                    self.blocks.setdefault(g, []).extend([(q, src), (reduce(total), src)])
                if k == 2:
                    self.comm.add(frozenset(gens))

    def commutes(self, x: int, g: int) -> bool:
        return abs(x) == g or frozenset((abs(x), g)) in self.comm


def _peel_word(word: Word, facts: _Facts) -> tuple[Word, str] | None:
    """One peel on c·core·c^-1 if the innermost conjugator material commutes with the core."""
    c, core = split_conjugate(word)
    if not c or len(core) != 1:
        return None
    g = abs(core[0])
    x = c[-1]
    if facts.commutes(x, g):
        return mul(c[:-1], core, inverse(c[:-1])), f"[G{abs(x)},G{g}]"
    for block, src in facts.blocks.get(g, []):
        for b in (block, inverse(block)):
            if len(b) and len(c) >= len(b) and c[-len(b):] == b:
                rest = c[: -len(b)]
                return mul(rest, core, inverse(rest)), src
    return None


def _conjugate_all(words, y: int) -> tuple[Word, ...]:
    """y^-1 w y for each word."""
    return tuple(mul((-y,), w, (y,)) for w in words)


def _size(words) -> int:
    return sum(len(w) for w in words)


def _peel_all(words, facts: _Facts) -> tuple[tuple[Word, ...], list[str]]:
    out, used = [], []
    for w in words:
        while True:
            got = _peel_word(w, facts)
            if got is None:
                break
            w, why = got
            used.append(why)
        out.append(w)
    return tuple(out), used


def _hurwitz(words) -> tuple[tuple[Word, ...], str] | None:
    k = len(words)
    for i in range(k):
        j = (i + 1) % k
        if j == 0:
            # wrapping pairs are handled through rotation of the plain tuple
            continue
        a, b = words[i], words[j]
        # (x^-1 y x, x) -> (x, y)
        y = mul(b, a, inverse(b))
        if len(y) + len(b) < len(a) + len(b):
            new = list(words)
            new[i], new[j] = b, y
            return tuple(new), "(x^-1 y x, x) -> (x, y)"
        # (y, y x y^-1) -> (x, y)
        x = mul(inverse(a), b, a)
        if len(x) + len(a) < len(a) + len(b):
            new = list(words)
            new[i], new[j] = x, a
            return tuple(new), "(y, y x y^-1) -> (x, y)"
    return None


def _improve(rel: Relation, facts: _Facts) -> tuple[str, tuple[Word, ...], str] | None:
    words = rel.words
    size = _size(words)
    # strip a common outer conjugator letter
    firsts = {split_conjugate(w)[0][:1] for w in words}
    if len(firsts) == 1:
        (f,) = firsts
        if f:
            new = _conjugate_all(words, f[0])
            if _size(new) < size:
                return "strip", new, ""
    # peel innermost commuting letters
    new, used = _peel_all(words, facts)
    if _size(new) < size:
        return "peel", new, "; ".join(used)
    # hurwitz moves on cyclic tuples (a commutation is a 2-tuple)
    if rel.kind in (CYCLIC, COMM):
        got = _hurwitz(words)
        if got is not None:
            return "hurwitz", got[0], got[1]
    # conjugate the whole relation by an outer letter, then peel
    letters = sorted({split_conjugate(w)[0][0] for w in words if split_conjugate(w)[0]},
                     key=lambda g: (abs(g), g))
    for y in letters:
        moved = _conjugate_all(words, y)
        peeled, used = _peel_all(moved, facts)
        if _size(peeled) < size:
            return "conjugate+peel", peeled, f"by G{abs(y)}" + ("^-1" if y < 0 else "") + (
                "; " + "; ".join(used) if used else "")
    # an equality c g c^-1 = d h d^-1 becomes g = (c^-1 d) h (c^-1 d)^-1
    if rel.kind == EQ:
        a, b = words
        ca, _ = split_conjugate(a)
        if ca:
            new = (mul(inverse(ca), a, ca), mul(inverse(ca), b, ca))
            new, used = _peel_all(new, facts)
            if _size(new) < size:
                return "conjugate+peel", new, "; ".join(used)
    return None


def _neighbors(kind: str, words: tuple[Word, ...], facts: _Facts):
    """Single equivalence moves on a relation, in a fixed order."""
    # rewrite one conjugator by a right factor that commutes with the core
    for t, w in enumerate(words):
        c, core = split_conjugate(w)
        if not c or len(core) != 1:
            continue
        g = abs(core[0])
        factors: list[tuple[Word, str]] = []
        for x in sorted({abs(h) for h in c} | {abs(h) for pair in facts.comm if g in pair for h in pair}):
            if facts.commutes(x, g):
                factors.append(((x,), f"[G{x},G{g}]"))
        factors.extend(facts.blocks.get(g, []))
        for f, why in factors:
            for b in (f, inverse(f)):
                nc = mul(c, b)
                new = list(words)
                new[t] = mul(nc, core, inverse(nc))
                yield "rewrite", tuple(new), why
    # swap two neighbouring conjugator letters that commute
    for t, w in enumerate(words):
        c, core = split_conjugate(w)
        for j in range(len(c) - 1):
            x, y = c[j], c[j + 1]
            if abs(x) != abs(y) and frozenset((abs(x), abs(y))) in facts.comm:
                nc = c[:j] + (y, x) + c[j + 2 :]
                new = list(words)
                new[t] = mul(nc, core, inverse(nc))
                yield "swap", tuple(new), f"[G{abs(x)},G{abs(y)}]"
    # conjugate the relation by the outer letter of a conjugator
    seen = set()
    for w in words:
        c, _ = split_conjugate(w)
        if c and c[0] not in seen:
            seen.add(c[0])
            y = c[0]
            yield "conjugate", _conjugate_all(words, y), f"by G{abs(y)}" + ("^-1" if y < 0 else "")
    if kind in (CYCLIC, COMM):
        got = _hurwitz(words)
        if got is not None:
            yield "hurwitz", got[0], got[1]


def _search(rel: Relation, facts: _Facts, depth: int = 5, max_states: int = 20000):
    """Shortest sequence of moves that makes the relation strictly shorter."""
    start = rel.words
    size0 = _size(start)
    slack = 2 * len(start) + 2
    frontier = [(start, [])]
    seen = {start}
    for _ in range(depth):
        nxt = []
        for words, path in frontier:
            for rule, new, why in _neighbors(rel.kind, words, facts):
                if new in seen or _size(new) > size0 + slack:
                    continue
                seen.add(new)
                step = path + [(rule, new, why)]
                if _size(new) < size0:
                    return step
                nxt.append((new, step))
                if len(seen) > max_states:
                    return None
        frontier = nxt
    return None


def _rotate_min(words) -> tuple[Word, ...]:
    idx = [w[0] for w in words]
    s = idx.index(min(idx))
    return tuple(words[s:] + words[:s])


def simplify_to_cf(p: Presentation, budget: int = DEFAULT_BUDGET) -> CfVerdict:
    rels = list(p.relations)
    trace: list[Step] = []
    merged: set[int] = set()

    def record(rule: str, i: int, new: tuple[Word, ...], fact: str = "") -> None:
        trace.append(Step(rule, i, rels[i].words, new, fact))
        rels[i] = Relation(rels[i].kind, new, rels[i].source)

    progress = True
    while progress:
        progress = False
        if len(trace) >= budget:
            break
        # merge plain equalities, smallest index first
        for i, r in enumerate(rels):
            if r.kind == EQ and is_plain(r.words) and i not in merged:
                a, b = sorted(w[0] for w in r.words)
                if r.words != ((a,), (b,)):
                    record("orient", i, ((a,), (b,)))
                merged.add(i)
                if a != b:
                    for j, other in enumerate(rels):
                        if j == i or b not in other.generators():
                            continue
                        new = tuple(reduce(a if g == b else -a if g == -b else g for g in w)
                                    for w in other.words)
                        record("merge", j, new, f"G{b} = G{a} (relation {i + 1})")
                progress = True
                break
        if progress:
            continue
        for i, r in enumerate(rels):
            if is_plain(r.words):
                continue
            facts = _Facts(rels, i)
            got = _improve(r, facts)
            if got is not None:
                rule, new, fact = got
                record(rule, i, new, fact)
                progress = True
                break
            path = _search(r, facts)
            if path is not None:
                for rule, new, fact in path:
                    record(rule, i, new, fact)
                progress = True
                break
    # normal form of plain relations
    for i, r in enumerate(rels):
        if not is_plain(r.words):
            continue
        if r.kind == COMM:
            a, b = r.words
            if a[0] > b[0]:
                record("orient", i, (b, a))
        elif r.kind == CYCLIC:
            rot = _rotate_min(r.words)
            if rot != r.words:
                record("rotate", i, rot)
            if not _plain_ok(rels[i]):
                _reorder(rels, i, record)
    out = Presentation(p.n, tuple(rels), p.components)
    used = len(trace)
    pending = [i + 1 for i, r in enumerate(rels) if not is_plain(r.words)]
    unordered = [i + 1 for i, r in enumerate(rels)
                 if is_plain(r.words) and not _plain_ok(r)]
    if not pending and not unordered:
        return CfVerdict("ConjugationFree", out, tuple(trace), used)
    if used >= budget:
        reason = "BudgetExhausted"
    elif pending:
        reason = "no rule applies to relation(s) " + ", ".join(map(str, pending))
    else:
        reason = "plain relation(s) without increasing indices: " + ", ".join(map(str, unordered))
    return CfVerdict("Unresolved", out, tuple(trace), used, reason)


def _reorder(rels: list[Relation], i: int, record) -> None:
    """Reach increasing order of a plain cyclic tuple by rotations and commuting swaps.

    Breadth-first over the (few) orderings; nothing is recorded when no
    ordering is reachable.
    """
    facts = _Facts(rels, i)
    start = rels[i].words
    prev: dict[tuple, tuple] = {start: (None, "", "")}
    queue = [start]
    goal = None
    while queue and goal is None:
        nxt = []
        for cur in queue:
            moves = [(cur[1:] + cur[:1], "rotate", "")]
            for j in range(len(cur) - 1):
                a, b = cur[j][0], cur[j + 1][0]
                if facts.commutes(a, b) and a != b:
                    swapped = cur[:j] + (cur[j + 1], cur[j]) + cur[j + 2:]
                    moves.append((swapped, "reorder", f"[G{min(a, b)},G{max(a, b)}]"))
            for new, rule, fact in moves:
                if new in prev:
                    continue
                prev[new] = (cur, rule, fact)
                if _plain_ok(Relation(CYCLIC, new)) and new == _rotate_min(new):
                    goal = new
                    break
                nxt.append(new)
            if goal is not None:
                break
        queue = nxt
    if goal is None:
        return
    path = []
    cur = goal
    while prev[cur][0] is not None:
        before, rule, fact = prev[cur]
        path.append((rule, cur, fact))
        cur = before
    for rule, new, fact in reversed(path):
        record(rule, i, new, fact)


def _plain_ok(r: Relation) -> bool:
    idx = [w[0] for w in r.words]
    if r.kind == CYCLIC:
        return all(a <= b for a, b in zip(idx, idx[1:]))
    return idx[0] <= idx[1]


def replay(p: Presentation, trace) -> Presentation:
    """Re-apply a trace, checking that each step starts where the previous ended."""
    rels = list(p.relations)
    for s in trace:
        if rels[s.relation].words != s.before:
            raise ValueError(f"trace step {s.rule} does not match relation {s.relation + 1}")
        rels[s.relation] = Relation(rels[s.relation].kind, s.after, rels[s.relation].source)
    return Presentation(p.n, tuple(rels), p.components)
