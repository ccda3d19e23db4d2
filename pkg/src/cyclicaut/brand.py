"""Polynomial permutations of Z_{p^m} and the groups Q^n, Q_1^n built from them.

A member of Q^n is f(x) = a_0 + a_1 x + ... + a_n x^n (mod p^m) with a_1 a
unit and p^(m-1) dividing every a_i, i >= 2.  Q_1^n further asks
a_1 == 1 (mod p^(m-1)).  Only odd p is supported, and n < p.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .arithmetic import PrimePowerLength
from .errors import CapExceeded, InternalError
from .permutation import Permutation

log = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10**7


def _trimmed(coeffs: Sequence[int], n: int) -> tuple[int, ...]:
    cs = [c % n for c in coeffs]
    while len(cs) > 2 and cs[-1] == 0:
        cs.pop()
    while len(cs) < 2:
        cs.append(0)
    return tuple(cs)


def _evaluate_all(coeffs: Sequence[int], n: int) -> tuple[int, ...]:
    out = []
    for x in range(n):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % n
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class PolyPerm:
    """x -> sum a_i x^i (mod p^m), validated as a member of some Q^n."""

    length: PrimePowerLength
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        p, m, n = self.length.p, self.length.m, self.length.n
        if p == 2:
            raise ValueError("polynomial permutation groups need an odd prime")
        cs = _trimmed(self.coeffs, n)
        object.__setattr__(self, "coeffs", cs)
        if cs[1] % p == 0:
            raise ValueError(f"linear coefficient {cs[1]} is not a unit mod {p}")
        step = p ** (m - 1)
        for i, c in enumerate(cs[2:], start=2):
            if c % step:
                raise ValueError(f"a_{i} = {c} is not divisible by p^(m-1) = {step}")
        if len(cs) - 1 >= p:
            raise ValueError(f"degree {len(cs) - 1} must be below p = {p}")
        if m == 1 and len(cs) > 2:
            raise ValueError("higher-degree terms need m >= 2")
        image = _evaluate_all(cs, n)
        if len(set(image)) != n:
            raise InternalError(f"{self} does not induce a bijection")
        object.__setattr__(self, "_image", image)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def image(self) -> tuple[int, ...]:
        return self._image  # type: ignore[attr-defined]

    def __call__(self, x: int) -> int:
        return self.image[x % self.length.n]

    def permutation(self) -> Permutation:
        return Permutation(self.image)

    def __mul__(self, other: PolyPerm) -> PolyPerm:
        return compose(self, other)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            elif c:
                terms.append(f"{c}*x^{i}")
        return f"poly mod {self.length}: " + " + ".join(terms)


def polyperm(length: PrimePowerLength, coeffs: Sequence[int]) -> PolyPerm:
    return PolyPerm(length, tuple(coeffs))


def identity(length: PrimePowerLength) -> PolyPerm:
    return PolyPerm(length, (0, 1))


def translation(length: PrimePowerLength, b: int) -> PolyPerm:
    return PolyPerm(length, (b, 1))


def f_i(length: PrimePowerLength, i: int) -> PolyPerm:
    """The probe permutation 1 + x + p^(m-1)(x^2 + ... + x^i); f_1 is the cycle T."""
    p, m = length.p, length.m
    if not 1 <= i <= p - 2:
        raise ValueError(f"f_i needs 1 <= i <= p-2 = {p - 2}, got {i}")
    step = p ** (m - 1)
    return PolyPerm(length, (1, 1) + (step,) * (i - 1))


def level_one_multiplier(length: PrimePowerLength) -> PolyPerm:
    """x -> (1 + p^(m-1)) x, which together with T generates Q_1^1."""
    return PolyPerm(length, (0, 1 + length.p ** (length.m - 1)))


def _poly_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % n
    return out


def compose(f: PolyPerm, g: PolyPerm) -> PolyPerm:
    """h = f o g, i.e. h(x) = f(g(x)) mod p^m, expanded and reduced termwise."""
    if f.length != g.length:
        raise ValueError(f"length mismatch: {f.length} vs {g.length}")
    n, p = f.length.n, f.length.p
    result = [0]
    power = [1]
    for i, fc in enumerate(f.coeffs):
        if i:
            power = _poly_mul(power, g.coeffs, n)
        if fc:
            if len(power) > len(result):
                result += [0] * (len(power) - len(result))
            for j, c in enumerate(power):
                result[j] = (result[j] + fc * c) % n
    while len(result) > 2 and result[-1] == 0:
        result.pop()
    if len(result) - 1 >= p:
        raise InternalError(f"composition left a degree {len(result) - 1} term")
    h = PolyPerm(f.length, tuple(result))
    if h.image != tuple(f.image[y] for y in g.image):
        raise InternalError("composition disagrees with pointwise evaluation")
    return h


def invert(g: PolyPerm) -> PolyPerm:
    """Inverse via b_1 = g_1^-1, b_i = -g_i g_1^-(i+1) on the constant-free part."""
    n = g.length.n
    g0, g1 = g.coeffs[0], g.coeffs[1]
    u = pow(g1, -1, n)
    b = [0, u] + [(-gi * pow(u, i + 1, n)) % n for i, gi in enumerate(g.coeffs[2:], start=2)]
    core_inv = PolyPerm(g.length, tuple(b))
    result = compose(core_inv, translation(g.length, -g0)) if g0 else core_inv
    if any(result.image[y] != x for x, y in enumerate(g.image)):
        raise InternalError(f"inverse of {g} failed the pointwise check")
    return result


@dataclass(frozen=True)
class QGroupId:
    """Identifies Q^degree (restricted=False) or Q_1^degree (restricted=True)."""

    length: PrimePowerLength
    degree: int
    restricted: bool = False

    def __post_init__(self) -> None:
        p = self.length.p
        if p == 2:
            raise ValueError("polynomial permutation groups need an odd prime")
        if not 1 <= self.degree <= p - 1:
            raise ValueError(f"degree bound must lie in [1, {p - 1}]")
        if self.degree > 1 and self.length.m < 2:
            raise ValueError("degree > 1 needs m >= 2")

    @property
    def name(self) -> str:
        return f"Q{'_1' if self.restricted else ''}^{self.degree}"

    def cardinality(self) -> int:
        p, m, d = self.length.p, self.length.m, self.degree
        if self.restricted:
            return p ** (m + d)
        return (p - 1) * p ** (2 * m + d - 2)

    def coefficient_choices(self) -> list[list[int]]:
        p, m, n = self.length.p, self.length.m, self.length.n
        step = p ** (m - 1)
        if self.restricted:
            lin = [a for a in range(n) if a % step == 1 % step]
        else:
            lin = [a for a in range(n) if a % p]
        higher = [step * j for j in range(p)]
        return [list(range(n)), lin] + [higher] * (self.degree - 1)

    def __str__(self) -> str:
        return f"{self.name} on Z_{self.length.n}"


def membership(f: PolyPerm, gid: QGroupId) -> bool:
    if f.length != gid.length:
        return False
    if f.degree > gid.degree:
        return False
    if gid.restricted:
        step = f.length.p ** (f.length.m - 1)
        return f.coeffs[1] % step == 1 % step
    return True


def _check_cap(gid: QGroupId, cap: int) -> None:
    size = gid.cardinality()
    if size > cap:
        raise CapExceeded(f"enumerating {gid}", size, cap)


def enumerate_group(gid: QGroupId, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[PolyPerm]:
    """Every element once, lexicographic in (a_0, a_1, ...)."""
    _check_cap(gid, cap)
    dedupe = gid.degree == gid.length.p - 1
    seen: set[tuple[int, ...]] = set()
    for cs in itertools.product(*gid.coefficient_choices()):
        f = PolyPerm(gid.length, cs)
        if dedupe:
            if f.image in seen:
                log.warning("coefficient collision in %s at %s", gid, f)
                continue
            seen.add(f.image)
        yield f


def decode_indices(gid: QGroupId, idx: np.ndarray) -> np.ndarray:
    """Coefficient rows for positions ``idx`` of the lexicographic enumeration."""
    choices = [np.asarray(c, dtype=np.int64) for c in gid.coefficient_choices()]
    out = np.empty((len(idx), len(choices)), dtype=np.int64)
    rest = np.asarray(idx, dtype=np.int64)
    for j in range(len(choices) - 1, -1, -1):
        radix = len(choices[j])
        out[:, j] = choices[j][rest % radix]
        rest = rest // radix
    return out


def image_batches(
    gid: QGroupId,
    cap: int = DEFAULT_ENUMERATION_CAP,
    batch: int = 4096,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(indices, coeffs, images)`` for enumeration positions in [start, stop).

    ``coeffs[b]`` lists a_0..a_degree and ``images[b]`` is the induced map of
    Z_{p^m}.  Distinct coefficient rows always give distinct maps here: the
    higher part is p^(m-1) times a polynomial of degree < p, which is
    determined by its values mod p.
    """
    _check_cap(gid, cap)
    n = gid.length.n
    total = gid.cardinality()
    stop = total if stop is None else min(stop, total)
    xs = np.arange(n, dtype=np.int64)
    rows = [np.ones(n, dtype=np.int64)]
    for _ in range(gid.degree):
        rows.append(rows[-1] * xs % n)
    powers = np.stack(rows)
    for lo in range(start, stop, batch):
        idx = np.arange(lo, min(stop, lo + batch), dtype=np.int64)
        cs = decode_indices(gid, idx)
        yield idx, cs, (cs @ powers) % n
