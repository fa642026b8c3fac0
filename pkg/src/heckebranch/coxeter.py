"""The Weyl group W(B_n) as signed permutations in window notation.

``w.window[k-1] = w(k)``.  Products compose as maps, ``(ab)(k) = a(b(k))``.
Right multiplication by ``s_1`` negates the first window entry and by
``s_i`` (i >= 2) swaps window positions i-1 and i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class SignedPerm:
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a signed permutation: {list(w)}")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, k: int) -> int:
        s = -1 if k < 0 else 1
        return s * self.window[abs(k) - 1]

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return multiply(self, other)

    def inverse(self) -> "SignedPerm":
        out = [0] * self.n
        for k, v in enumerate(self.window, start=1):
            out[abs(v) - 1] = k if v > 0 else -k
        return SignedPerm(tuple(out))

    def __str__(self):
        return "[" + ",".join(map(str, self.window)) + "]"

    @classmethod
    def parse(cls, text: str) -> "SignedPerm":
        body = text.strip().strip("[]")
        return cls(tuple(int(x) for x in re.split(r"[,\s]+", body) if x))

    def negatives(self) -> int:
        return sum(1 for x in self.window if x < 0)


def identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(1, n + 1)))


def generator(n: int, i: int) -> SignedPerm:
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    w = list(range(1, n + 1))
    if i == 1:
        w[0] = -1
    else:
        w[i - 2], w[i - 1] = w[i - 1], w[i - 2]
    return SignedPerm(tuple(w))


def multiply(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return SignedPerm(tuple(a(x) for x in b.window))


def right_mul_gen(w: SignedPerm, i: int) -> SignedPerm:
    win = list(w.window)
    if i == 1:
        win[0] = -win[0]
    else:
        win[i - 2], win[i - 1] = win[i - 1], win[i - 2]
    return SignedPerm(tuple(win))


def left_mul_gen(w: SignedPerm, i: int) -> SignedPerm:
    """s_i * w: act on values instead of positions."""
    if i == 1:
        return SignedPerm(tuple(-x if abs(x) == 1 else x for x in w.window))
    a, b = i - 1, i

    def f(x):
        if abs(x) == a:
            return b if x > 0 else -b
        if abs(x) == b:
            return a if x > 0 else -a
        return x

    return SignedPerm(tuple(f(x) for x in w.window))


def length(w: SignedPerm) -> int:
    """inv(w) + neg(w) + nsp(w) with nsp = #{i<j : w(i)+w(j) < 0}."""
    win = w.window
    n = len(win)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if win[i] > win[j])
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if win[i] + win[j] < 0)
    return inv + nsp + w.negatives()


def right_descents(w: SignedPerm) -> list[int]:
    win = w.window
    out = [1] if win[0] < 0 else []
    out += [i for i in range(2, w.n + 1) if win[i - 2] > win[i - 1]]
    return out


def reduced_word(w: SignedPerm) -> list[int]:
    """Reduced word, built by repeatedly stripping the smallest right descent."""
    letters: list[int] = []
    while True:
        d = right_descents(w)
        if not d:
            break
        letters.append(d[0])
        w = right_mul_gen(w, d[0])
    letters.reverse()
    return letters


def evaluate(n: int, word: Sequence[int]) -> SignedPerm:
    w = identity(n)
    for i in word:
        w = right_mul_gen(w, i)
    return w


@lru_cache(maxsize=None)
def _elements(n: int) -> tuple[SignedPerm, ...]:
    out = []
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            out.append(SignedPerm(tuple(s * p for s, p in zip(signs, perm))))
    out.sort(key=lambda w: (length(w), w.window))
    return tuple(out)


def enumerate_group(n: int, kind: str = "B") -> list[SignedPerm]:
    """All of W(B_n) (``kind='B'``) or the even-sign subgroup W(D_n) (``'D'``).

    Sorted by length, then window.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    kind = kind.upper()
    if kind == "B":
        return list(_elements(n))
    if kind == "D":
        if n < 2:
            raise ValueError("type D needs n >= 2")
        return [w for w in _elements(n) if w.negatives() % 2 == 0]
    raise ValueError(f"unknown group kind {kind!r}")


def closure(gens: Iterable[SignedPerm]) -> set[SignedPerm]:
    """Subgroup generated by ``gens``, by breadth-first search."""
    gens = list(gens)
    if not gens:
        return set()
    seen = {identity(gens[0].n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = multiply(w, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def bfs_lengths(n: int) -> dict[SignedPerm, int]:
    """Coxeter lengths as word distances in the Cayley graph; test oracle."""
    gens = [generator(n, i) for i in range(1, n + 1)]
    dist = {identity(n): 0}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = multiply(w, g)
                if x not in dist:
                    dist[x] = dist[w] + 1
                    nxt.append(x)
        frontier = nxt
    return dist
