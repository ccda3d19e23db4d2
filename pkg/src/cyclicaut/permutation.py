"""Permutations of Z_n stored as image tuples.

Coordinates are the residues 0..n-1; the complete cycle is i -> i+1 mod n.
``Permutation(image)`` means i -> image[i], and ``compose(s, r)`` is
"apply r first, then s".
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .arithmetic import MAX_LENGTH


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if n > MAX_LENGTH:
            raise ValueError(f"degree {n} exceeds cap {MAX_LENGTH}")
        if sorted(self.image) != list(range(n)):
            raise ValueError("image is not a bijection of {0, ..., n-1}")

    @classmethod
    def from_array(cls, arr: Sequence[int] | np.ndarray) -> Permutation:
        return cls(tuple(int(x) for x in arr))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.image)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int64)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int) -> Permutation:
        return power(self, e)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.image[i]
            out.append(tuple(cyc))
        return out

    def orbits(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(c)) for c in self.cycles()]

    def cycle_notation(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.image)) + "]"


def parse_permutation(text: str) -> Permutation:
    """Inverse of ``str(perm)``: parses ``[s0,s1,...]``."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not an image list: {text!r}")
    body = text[1:-1].strip()
    return Permutation(tuple(int(x) for x in body.split(",")) if body else ())


def _check_degree(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")


def compose(s: Permutation, r: Permutation) -> Permutation:
    """The permutation i -> s(r(i))."""
    _check_degree(s, r)
    si = s.image
    return Permutation(tuple(si[x] for x in r.image))


def inverse(s: Permutation) -> Permutation:
    inv = [0] * s.n
    for i, x in enumerate(s.image):
        inv[x] = i
    return Permutation(tuple(inv))


def power(s: Permutation, e: int) -> Permutation:
    if e < 0:
        return power(inverse(s), -e)
    result = Permutation.identity(s.n)
    base = s
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def order(s: Permutation) -> int:
    return lcm(1, *(len(c) for c in s.cycles()))


def complete_cycle(n: int) -> Permutation:
    if n < 1:
        raise ValueError("degree must be >= 1")
    return Permutation(tuple((i + 1) % n for i in range(n)))


@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b mod n with a a unit."""

    n: int
    a: int
    b: int = 0

    def __post_init__(self) -> None:
        if gcd(self.a, self.n) != 1:
            raise ValueError(f"gcd({self.a}, {self.n}) != 1")
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)

    def __call__(self, x: int) -> int:
        return (self.a * x + self.b) % self.n

    def __mul__(self, other: AffineMap) -> AffineMap:
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return AffineMap(self.n, self.a * other.a, self.a * other.b + self.b)

    def inverse(self) -> AffineMap:
        ai = pow(self.a, -1, self.n) if self.n > 1 else 0
        return AffineMap(self.n, ai, -ai * self.b)

    @property
    def is_multiplier(self) -> bool:
        return self.b == 0

    def permutation(self) -> Permutation:
        return Permutation(tuple((self.a * i + self.b) % self.n for i in range(self.n)))

    def __str__(self) -> str:
        if self.b == 0:
            return f"multiplier a={self.a}"
        return f"affine x -> {self.a}*x + {self.b} mod {self.n}"


def affine(n: int, a: int, b: int) -> Permutation:
    return AffineMap(n, a, b).permutation()


def multiplier(n: int, a: int) -> Permutation:
    return AffineMap(n, a, 0).permutation()


def conjugate_into_cycle_power(s: Permutation, t: Permutation | None = None) -> int | None:
    """Return j with s T s^-1 = T^j if s normalises <T>, else None.

    ``t`` must be the complete cycle on the same degree (the default).
    """
    n = s.n
    if t is None:
        t = complete_cycle(n)
    _check_degree(s, t)
    conj = compose(compose(s, t), inverse(s))
    j = conj.image[0]
    for i in range(n):
        if conj.image[i] != (i + j) % n:
            return None
    return j
