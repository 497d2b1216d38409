"""Free group words and automorphisms of the free group on Γ_1..Γ_n.

A word is a tuple of nonzero ints: k stands for Γ_k and -k for its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


def reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for g in word:
        if g == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-g for g in reversed(word))


def mul(*words: Sequence[int]) -> Word:
    return reduce(g for w in words for g in w)


def conj(c: Sequence[int], w: Sequence[int]) -> Word:
    """c w c^-1."""
    return mul(c, w, inverse(c))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def split_conjugate(word: Sequence[int]) -> tuple[Word, Word]:
    """Write a reduced word as c · core · c^-1 with the longest such c."""
    w = reduce(word)
    i = 0
    while i < len(w) - 1 - i and w[i] == -w[len(w) - 1 - i]:
        i += 1
    return w[:i], w[i : len(w) - i]


def generator_of_conjugate(word: Sequence[int]) -> tuple[Word, int] | None:
    """If word = c Γ_k c^-1 return (c, k), else None."""
    c, core = split_conjugate(word)
    if len(core) == 1 and core[0] > 0:
        return c, core[0]
    return None


def exponent_sum(word: Sequence[int], n: int) -> list[int]:
    v = [0] * n
    for g in word:
        v[abs(g) - 1] += 1 if g > 0 else -1
    return v


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(g) for g in word) if word else "e"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return ()
    return reduce(int(tok) for tok in text.split())


def pretty(word: Sequence[int]) -> str:
    """Human readable form such as G3 G2 G1 G2^-1 G3^-1."""
    if not word:
        return "e"
    return " ".join(f"G{g}" if g > 0 else f"G{-g}^-1" for g in word)


@dataclass(frozen=True)
class Automorphism:
    """Substitution Γ_i -> images[i-1] on the free group of rank n."""

    images: tuple[Word, ...]

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, i: int) -> Word:
        return self.images[i - 1]

    def apply(self, word: Sequence[int]) -> Word:
        out: list[int] = []
        for g in word:
            out.extend(self.images[g - 1] if g > 0 else inverse(self.images[-g - 1]))
        return reduce(out)

    def then(self, other: "Automorphism") -> "Automorphism":
        """Substitute by self first, then by other: w -> other(self(w))."""
        return Automorphism(tuple(other.apply(img) for img in self.images))

    def permutation(self) -> tuple[int, ...]:
        """perm[i-1] = index of the generator whose conjugate is the image of Γ_i."""
        out = []
        for img in self.images:
            got = generator_of_conjugate(img)
            if got is None:
                raise ValueError("image is not a conjugate of a generator")
            out.append(got[1])
        return tuple(out)

    def inverse(self) -> "Automorphism":
        """Inverse of a braid automorphism (images are conjugates of generators).

        Untangles greedily: apply the elementary twist that shortens the
        images most until every image is a generator again.  Braid
        automorphisms always admit a shortening twist until they are the
        identity; the twists applied compose to the inverse.
        """
        n = self.n
        self.permutation()
        cur, undo = self, Automorphism.identity(n)
        steps = [twist(i, n, s) for i in range(1, n) for s in (1, -1)]
        while cur.length() > n:
            best = min(steps, key=lambda t: cur.then(t).length())
            nxt = cur.then(best)
            if nxt.length() >= cur.length():
                raise ValueError("automorphism is not a braid automorphism")
            cur, undo = nxt, undo.then(best)
        if cur != Automorphism.identity(n):
            raise ValueError("automorphism is not a braid automorphism")
        return undo

    def length(self) -> int:
        return sum(len(w) for w in self.images)


def twist(i: int, n: int, power: int = 1) -> Automorphism:
    """Counterclockwise half-twist exchanging fiber points i and i+1.

    Γ_i -> Γ_{i+1}, Γ_{i+1} -> Γ_{i+1} Γ_i Γ_{i+1}^-1; it fixes Γ_n ... Γ_1.
    power=-1 gives the clockwise twist.
    """
    if not 1 <= i < n:
        raise ValueError(f"twist index {i} out of range for {n} points")
    imgs = [(k,) for k in range(1, n + 1)]
    if power == 1:
        imgs[i - 1] = (i + 1,)
        imgs[i] = (i + 1, i, -(i + 1))
    elif power == -1:
        imgs[i - 1] = (-i, i + 1, i)
        imgs[i] = (i,)
    else:
        raise ValueError("power must be 1 or -1")
    return Automorphism(tuple(imgs))


def twist_sequence(a: int, b: int) -> list[int]:
    """Elementary twist indices whose product is the half-twist on block a..b."""
    seq = []
    for top in range(b - 1, a - 1, -1):
        seq.extend(range(a, top + 1))
    return seq


def half_twist_block(a: int, b: int, n: int) -> Automorphism:
    """Positive (counterclockwise) half-twist Δ<a,b> on the block of points a..b."""
    if not 1 <= a < b <= n:
        raise ValueError(f"bad block [{a},{b}] for {n} points")
    aut = Automorphism.identity(n)
    for i in twist_sequence(a, b):
        aut = aut.then(twist(i, n))
    return aut


def product_word(n: int) -> Word:
    """Γ_n Γ_{n-1} ... Γ_1, the boundary word fixed by every twist."""
    return tuple(range(n, 0, -1))
