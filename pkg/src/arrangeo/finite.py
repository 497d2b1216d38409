"""Counting homomorphisms from a finitely presented group into a small finite group."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .words import Word


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: np.ndarray  # table[g, h] = g*h
    inv: np.ndarray
    identity: int

    @property
    def order(self) -> int:
        return len(self.inv)


def _from_permutations(name: str, perms: Sequence[tuple[int, ...]]) -> FiniteGroup:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # p then q
            table[i, j] = index[tuple(q[p[k]] for k in range(len(p)))]
    ident = index[tuple(range(len(perms[0])))]
    inv = np.array([int(np.where(table[i] == ident)[0][0]) for i in range(n)], dtype=np.int64)
    return FiniteGroup(name, table, inv, ident)


def _closure(gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[k]] for k in range(len(p)))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return list(seen)


def symmetric_group(k: int) -> FiniteGroup:
    return _from_permutations(f"S{k}", list(permutations(range(k))))


def named_group(name: str) -> FiniteGroup:
    if name == "S3":
        return symmetric_group(3)
    if name == "S4":
        return symmetric_group(4)
    if name == "Z4":
        return _from_permutations("Z4", _closure([(1, 2, 3, 0)]))
    if name == "D4":
        return _from_permutations("D4", _closure([(1, 2, 3, 0), (3, 2, 1, 0)]))
    raise KeyError(f"unknown oracle group {name!r}; expected S3, S4, Z4 or D4")


ORACLE_NAMES = ("S3", "S4", "Z4", "D4")


def _evaluate(group: FiniteGroup, word: Word, values: Sequence) -> np.ndarray | int:
    """Product of the word's letters; values[g] may be ints or arrays (broadcast)."""
    acc = group.identity
    t, inv = group.table, group.inv
    for g in word:
        v = values[g] if g > 0 else inv[values[-g]]
        acc = t[acc, v]
    return acc


def _conjugacy_classes(group: FiniteGroup) -> list[tuple[int, int]]:
    """(representative, class size) for each conjugacy class."""
    seen: set[int] = set()
    out = []
    for x in range(group.order):
        if x in seen:
            continue
        cls = {int(group.table[group.table[y, x], group.inv[y]]) for y in range(group.order)}
        seen |= cls
        out.append((x, len(cls)))
    return out


def _generator_order(n: int, used: list[list[int]]) -> list[int]:
    """Greedy order in which relators get all their generators as early as possible."""
    seq: list[int] = []
    remaining = set(range(1, n + 1))
    while remaining:
        def score(g: int) -> tuple[int, int, int]:
            done = sum(1 for u in used if g in u and set(u) <= set(seq) | {g})
            touch = sum(1 for u in used if g in u)
            return (-done, -touch, g)

        g = min(remaining, key=score)
        seq.append(g)
        remaining.remove(g)
    return seq


def count_homs(pres, group: FiniteGroup | str, chunk: int = 1 << 21) -> int:
    """Number of homomorphisms from the presented group into a finite group.

    Generators are assigned one at a time, breadth first over numpy arrays of
    partial assignments; a relator is checked as soon as all its generators
    are assigned.  The first generator only runs over conjugacy class
    representatives, weighted by class size.
    """
    if isinstance(group, str):
        group = named_group(group)
    n = pres.n
    if n == 0:
        return 1
    relators = [w for w in pres.relators() if w]
    used = [sorted({abs(g) for g in w}) for w in relators]
    seq = _generator_order(n, used)
    depth_of = {g: i for i, g in enumerate(seq)}
    at_depth: list[list[Word]] = [[] for _ in range(n)]
    for w, u in zip(relators, used):
        at_depth[max(depth_of[g] for g in u)].append(w)

    order = group.order
    ident = group.identity
    dtype = np.int16 if order > 127 else np.int8
    reps = _conjugacy_classes(group)
    rows = np.array([[r] for r, _ in reps], dtype=dtype)
    weights = np.array([size for _, size in reps], dtype=np.int64)

    def keep(rows: np.ndarray, depth: int) -> np.ndarray:
        values: list = [None] * (n + 1)
        for d in range(depth + 1):
            values[seq[d]] = rows[:, d].astype(np.intp)
        mask = np.ones(len(rows), dtype=bool)
        for w in at_depth[depth]:
            mask &= _evaluate(group, w, values) == ident
        return mask

    def extend(rows: np.ndarray, weights: np.ndarray, depth: int) -> int:
        if depth == n:
            return int(weights.sum())
        if len(rows) * order > chunk and len(rows) > 1:
            half = len(rows) // 2
            return extend(rows[:half], weights[:half], depth) + extend(rows[half:], weights[half:], depth)
        new = np.concatenate([np.repeat(rows, order, axis=0),
                              np.tile(np.arange(order, dtype=dtype), len(rows))[:, None]], axis=1)
        w = np.repeat(weights, order)
        mask = keep(new, depth)
        return extend(new[mask], w[mask], depth + 1)

    mask = keep(rows, 0)
    return extend(rows[mask], weights[mask], 1)
