"""Exact number theory on small moduli: orders, cosets, prime powers.

All lengths handled by the package are capped at ``MAX_LENGTH``; primality
and factorisation use deterministic trial division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .errors import InternalError

MAX_LENGTH = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n`` as ``((p, e), ...)`` with increasing p."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``n == p**m`` and p prime, or None."""
    if n < 2:
        return None
    f = factorize(n)
    return f[0] if len(f) == 1 else None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def euler_phi(n: int) -> int:
    phi = n
    for p, _ in factorize(n):
        phi = phi // p * (p - 1)
    return phi


def units(n: int) -> list[int]:
    """Residues in ``[1, n)`` coprime to n (``[0]`` when n == 1)."""
    if n == 1:
        return [0]
    return [a for a in range(1, n) if gcd(a, n) == 1]


def _check_length(n: int) -> None:
    if n > MAX_LENGTH:
        raise ValueError(f"length {n} exceeds cap {MAX_LENGTH}")


@dataclass(frozen=True)
class PrimePowerLength:
    """A length of the form p**m, validated at construction."""

    p: int
    m: int
    n: int = field(init=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"exponent must be >= 1, got {self.m}")
        object.__setattr__(self, "n", self.p**self.m)
        _check_length(self.n)

    @classmethod
    def of(cls, n: int) -> PrimePowerLength:
        pm = prime_power(n)
        if pm is None:
            raise ValueError(f"{n} is not a prime power")
        return cls(*pm)

    def __str__(self) -> str:
        return f"{self.p}^{self.m}"


def multiplicative_order(q: int, n: int) -> int:
    """Least r >= 1 with q**r == 1 (mod n)."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    _check_length(n)
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    q %= n
    order = euler_phi(n)
    for p, _ in factorize(order):
        while order % p == 0 and pow(q, order // p, n) == 1:
            order //= p
    return order


def z_invariant(q: int, p: int) -> int:
    """Largest z with p**z dividing q**t - 1, where t is the order of q mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q % p == 0:
        raise ValueError(f"{p} divides {q}")
    t = multiplicative_order(q, p)
    u = q**t - 1
    z = 0
    while u % p == 0:
        u //= p
        z += 1
    return z


def order_mod_prime_power(q: int, length: PrimePowerLength) -> int:
    """Order of q modulo p**m, cross-checked against p**(m-1) * ord_p(q) when z == 1."""
    p, m = length.p, length.m
    if q % p == 0:
        raise ValueError(f"{p} divides {q}")
    if length.n == 2:
        return 1
    r = multiplicative_order(q, length.n)
    if p > 2 and z_invariant(q, p) == 1:
        expected = p ** (m - 1) * multiplicative_order(q, p)
        if r != expected:
            raise InternalError(f"ord_{length.n}({q}) = {r}, expected {expected}")
    return r


@dataclass(frozen=True)
class CosetPartition:
    """Orbits of x -> q*x on Z_n, each sorted, listed by increasing minimum."""

    n: int
    q: int
    cosets: tuple[tuple[int, ...], ...]

    def coset_of(self, s: int) -> tuple[int, ...]:
        s %= self.n
        for c in self.cosets:
            if s in c:
                return c
        raise KeyError(s)

    def representatives(self) -> list[int]:
        return [c[0] for c in self.cosets]

    def __len__(self) -> int:
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)


def cyclotomic_coset(s: int, n: int, q: int) -> tuple[int, ...]:
    seen = set()
    x = s % n
    while x not in seen:
        seen.add(x)
        x = x * q % n
    return tuple(sorted(seen))


@lru_cache(maxsize=256)
def cyclotomic_cosets(n: int, q: int) -> CosetPartition:
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    _check_length(n)
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    done = [False] * n
    cosets = []
    for s in range(n):
        if done[s]:
            continue
        c = cyclotomic_coset(s, n, q)
        for x in c:
            done[x] = True
        cosets.append(c)
    return CosetPartition(n, q, tuple(cosets))


def projective_length_decompositions(n: int, max_d: int) -> list[tuple[int, int]]:
    """All (t, d) with t a prime power, 2 <= d <= max_d and n == (t**d - 1)/(t - 1)."""
    if n < 3 or max_d < 2:
        raise ValueError("need n >= 3 and max_d >= 2")
    out = []
    for t in range(2, n):
        if not is_prime_power(t):
            continue
        total, power = 1, 1
        for d in range(2, max_d + 1):
            power *= t
            total += power
            if total == n:
                out.append((t, d))
            if total >= n:
                break
    return out
