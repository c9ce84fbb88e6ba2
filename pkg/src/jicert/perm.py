"""Permutations on {0, ..., n-1} as immutable image tuples.

Composition is function composition acting on the left: (p * q)(x) = p(q(x)).
Conjugation and commutators follow the right-conjugation convention
x ** g = g^-1 * x * g and comm(a, b) = a^-1 * b^-1 * a * b, so that
comm(a, b) = a^-1 * (a ** b).
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatchError


class Permutation:
    __slots__ = ("images",)

    images: tuple[int, ...]

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        n = len(imgs)
        seen = [False] * n
        for x in imgs:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {imgs!r}")
            seen[x] = True
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> Permutation:
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise ValueError(f"cycle point {point} out of range 0..{degree - 1}")
                images[point] = cycle[(i + 1) % len(cycle)]
        return Permutation(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise DegreeMismatchError(
                f"cannot compose degree {len(self.images)} with degree {len(other.images)}"
            )
        s = self.images
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", tuple(s[j] for j in other.images))
        return p

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", tuple(inv))
        return p

    def __pow__(self, n: int | Permutation) -> Permutation:
        if isinstance(n, Permutation):
            return n.inverse() * self * n
        result = Permutation.identity(len(self.images))
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return f"Perm(id:{len(self.images)})"
        return "Perm(" + "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) + ")"

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)


def comm(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b
