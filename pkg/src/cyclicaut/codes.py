"""Linear and cyclic codes over small finite fields.

``LinearCode`` is identified by the reduced row echelon form of a generator
matrix; ``CyclicCode`` carries a defining set Z (a union of q-cyclotomic
cosets) and builds its generator polynomial prod_{z in Z} (x - beta^z) in
GF(q^e), beta a fixed primitive n-th root of unity.

Permutations act on coordinates: sigma sends the entry at position i to
position sigma(i).  Under that convention the multiplier x -> a*x maps the
cyclic code with defining set Z to the one with defining set a^-1 Z.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from .arithmetic import cyclotomic_cosets, multiplicative_order, units
from .errors import CapExceeded, InternalError, PreconditionError
from .finite_field import GF, Embedding, FieldArrays, embedding, field, field_of_order, poly_product_over_roots
from .permutation import Permutation, complete_cycle, inverse, multiplier

DEFAULT_BRUTE_FORCE_CAP = 10**7


def rref(A: np.ndarray, ops: FieldArrays) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the field, zero rows dropped."""
    M = np.array(A, dtype=np.int64, copy=True)
    if M.ndim != 2 or M.shape[0] == 0:
        return np.zeros((0, M.shape[-1] if M.ndim == 2 else 0), dtype=np.int64), []
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = ops.mulv(ops.inv[M[r, c]], M[r])
        factors = M[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            sub = ops.mulv(factors[hit, None], M[r][None, :])
            M[hit] = ops.addv(M[hit], ops.neg[sub])
        pivots.append(c)
        r += 1
    return M[:r], pivots


class LinearCode:
    """A linear [n, k] code over a small field, stored in canonical RREF."""

    def __init__(self, F: GF, n: int, generator: np.ndarray | Sequence[Sequence[int]]) -> None:
        G = np.asarray(generator, dtype=np.int64).reshape(-1, n)
        if G.size and (G.min() < 0 or G.max() >= F.order):
            raise ValueError("generator entries must be element encodings of the field")
        self.field = F
        self.n = n
        self.ops = F.arrays
        self.generator, self.pivots = rref(G, self.ops)
        self.generator.setflags(write=False)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def dimension(self) -> int:
        return self.generator.shape[0]

    def canonical_form(self) -> np.ndarray:
        return self.generator

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.generator.shape == other.generator.shape
            and bool(np.array_equal(self.generator, other.generator))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.generator.tobytes()))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.dimension}] over {self.field!r})"

    @cached_property
    def parity_check(self) -> np.ndarray:
        n, k = self.n, self.dimension
        free = [c for c in range(n) if c not in set(self.pivots)]
        H = np.zeros((n - k, n), dtype=np.int64)
        for t, f in enumerate(free):
            H[t, f] = 1
            for j, pc in enumerate(self.pivots):
                H[t, pc] = self.ops.neg[self.generator[j, f]]
        return H

    def contains(self, vectors: np.ndarray) -> np.ndarray:
        """Membership test for each row of ``vectors`` (any leading batch shape)."""
        V = np.asarray(vectors, dtype=np.int64)
        if self.dimension == self.n:
            return np.ones(V.shape[:-1], dtype=bool)
        syn = self.ops.matmul(V, self.parity_check.T)
        return ~syn.any(axis=-1)

    def apply_perm(self, sigma: Permutation) -> LinearCode:
        if sigma.n != self.n:
            raise ValueError(f"degree mismatch: {sigma.n} vs {self.n}")
        cols = inverse(sigma).array
        return LinearCode(self.field, self.n, self.generator[:, cols])

    def maps_to(self, sigma: Permutation, other: LinearCode) -> bool:
        """True iff sigma(self) == other."""
        if sigma.n != self.n or other.n != self.n:
            raise ValueError("degree mismatch")
        if self.field != other.field or self.dimension != other.dimension:
            return False
        if self.dimension == 0:
            return True
        moved = self.generator[:, inverse(sigma).array]
        return bool(other.contains(moved).all())

    def batch_maps_to(self, images: np.ndarray, other: LinearCode) -> np.ndarray:
        """For each permutation image row, whether it maps self onto other."""
        B = images.shape[0]
        alive = np.ones(B, dtype=bool)
        if self.field != other.field or self.dimension != other.dimension:
            alive[:] = False
            return alive
        idx = np.arange(B)
        rows_ix = np.arange(B)[:, None]
        for g in self.generator:
            live = idx[alive]
            if live.size == 0:
                break
            v = np.zeros((live.size, self.n), dtype=np.int64)
            v[rows_ix[: live.size], images[live]] = g[None, :]
            alive[live] = other.contains(v)
        return alive

    def is_automorphism(self, sigma: Permutation) -> bool:
        return self.maps_to(sigma, self)

    def dual(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.parity_check)

    def codewords(self, start: int = 0, stop: int | None = None, chunk: int = 1 << 15):
        """Yield arrays of codewords for message indices in [start, stop), base-q little endian."""
        q, k = self.q, self.dimension
        total = q**k
        stop = total if stop is None else min(stop, total)
        for lo in range(start, stop, chunk):
            hi = min(stop, lo + chunk)
            idx = np.arange(lo, hi, dtype=np.int64)
            if k == 0:
                yield np.zeros((hi - lo, self.n), dtype=np.int64)
                continue
            msgs = np.stack([(idx // q**j) % q for j in range(k)], axis=1)
            yield self.ops.matmul(msgs, self.generator)

    def min_distance(self, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> int:
        """Exact minimum weight of a nonzero codeword (0 for the zero code)."""
        k = self.dimension
        if k == 0:
            return 0
        if self.q**k <= cap:
            best = self.n
            for block in self.codewords(start=1):
                w = np.count_nonzero(block, axis=1)
                best = min(best, int(w.min()))
            return best
        if self.n <= 64:
            return _information_set_distance(self, cap)
        raise CapExceeded("minimum distance", self.q**k, cap)

    def weight_enumerator(self, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> tuple[int, ...]:
        if self.q**self.dimension > cap:
            raise CapExceeded("weight enumerator", self.q**self.dimension, cap)
        counts = np.zeros(self.n + 1, dtype=np.int64)
        for block in self.codewords():
            counts += np.bincount(np.count_nonzero(block, axis=1), minlength=self.n + 1)
        return tuple(int(c) for c in counts)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "generator": self.generator.tolist()}


def _information_set_distance(code: LinearCode, cap: int) -> int:
    """Exact distance from disjoint information sets (each unseen codeword has weight > w on every set)."""
    n, k, ops, q = code.n, code.dimension, code.ops, code.q
    remaining = list(range(n))
    systematic = []
    while len(remaining) >= k:
        order = remaining + [c for c in range(n) if c not in remaining]
        R, piv = rref(code.generator[:, order], ops)
        if len(piv) < k or max(piv) >= len(remaining):
            break
        G = np.empty_like(R)
        G[:, order] = R
        systematic.append(G)
        used = {order[c] for c in piv}
        remaining = [c for c in remaining if c not in used]
    g = len(systematic)
    best = min(int(np.count_nonzero(G, axis=1).min()) for G in systematic)
    nonzero = list(range(1, q))
    work = 0
    for w in range(1, k + 1):
        work += g * comb(k, w) * (q - 1) ** (w - 1)
        if work > cap:
            raise CapExceeded("information-set distance", work, cap)
        for G in systematic:
            for rows in itertools.combinations(range(k), w):
                sub = G[list(rows)]
                for tail in itertools.product(nonzero, repeat=w - 1):
                    coeff = np.array((1,) + tail, dtype=np.int64)
                    word = ops.matmul(coeff[None, :], sub)[0]
                    best = min(best, int(np.count_nonzero(word)))
        if best <= g * (w + 1):
            return best
    return best


def _root_powers(n: int, F: GF) -> tuple[GF, Embedding, list[int]]:
    """The splitting field GF(q^e), the embedding of F into it, and beta^0..beta^(n-1)."""
    e = multiplicative_order(F.order, n) if n > 1 else 1
    big = field(F.r, F.k * e)
    emb = embedding(F, big)
    beta = big.pow(big.primitive, (big.order - 1) // n)
    powers = [1]
    for _ in range(n - 1):
        powers.append(big.mul(powers[-1], beta))
    return big, emb, powers


class CyclicCode:
    """Cyclic code of length n over F_q given by its defining set."""

    def __init__(self, n: int, F: GF, defining_set: Iterable[int]) -> None:
        if n < 1:
            raise ValueError("length must be >= 1")
        if gcd(F.order, n) != 1:
            raise ValueError(f"gcd(q={F.order}, n={n}) != 1")
        Z = sorted({z % n for z in defining_set})
        zs = set(Z)
        for z in Z:
            if (z * F.order) % n not in zs:
                raise ValueError(f"defining set is not closed under multiplication by {F.order}")
        self.n = n
        self.field = F
        self.defining_set = tuple(Z)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def dimension(self) -> int:
        return self.n - len(self.defining_set)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclicCode):
            return (self.n, self.field, self.defining_set) == (other.n, other.field, other.defining_set)
        if isinstance(other, LinearCode):
            return self.linear == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.field, self.defining_set))

    def __repr__(self) -> str:
        return f"CyclicCode(n={self.n}, q={self.q}, Z={list(self.defining_set)})"

    @cached_property
    def generator_polynomial(self) -> tuple[int, ...]:
        """Coefficients (low to high) of prod (x - beta^z), as elements of F_q."""
        big, emb, powers = _root_powers(self.n, self.field)
        g = poly_product_over_roots(big, [powers[z] for z in self.defining_set])
        try:
            return tuple(emb.project(c) for c in g.coeffs)
        except KeyError as exc:
            raise InternalError(f"generator polynomial escaped {self.field!r}") from exc

    def generator_matrix(self) -> np.ndarray:
        """The k shifted copies of the generator polynomial (not row reduced)."""
        g = self.generator_polynomial
        k = self.dimension
        G = np.zeros((k, self.n), dtype=np.int64)
        for j in range(k):
            G[j, j : j + len(g)] = g
        return G

    @cached_property
    def linear(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.generator_matrix())

    def canonical_form(self) -> np.ndarray:
        return self.linear.generator

    @property
    def generator(self) -> np.ndarray:
        return self.linear.generator

    def apply_perm(self, sigma: Permutation) -> LinearCode:
        return self.linear.apply_perm(sigma)

    def is_automorphism(self, sigma: Permutation) -> bool:
        return self.linear.is_automorphism(sigma)

    def maps_to(self, sigma: Permutation, other: LinearCode | CyclicCode) -> bool:
        return self.linear.maps_to(sigma, as_linear(other))

    def batch_maps_to(self, images: np.ndarray, other: LinearCode | CyclicCode) -> np.ndarray:
        return self.linear.batch_maps_to(images, as_linear(other))

    def contains(self, vectors: np.ndarray) -> np.ndarray:
        return self.linear.contains(vectors)

    def multiply(self, a: int) -> CyclicCode:
        """The image under the multiplier x -> a*x: defining set a^-1 Z."""
        ai = pow(a, -1, self.n)
        return CyclicCode(self.n, self.field, (ai * z for z in self.defining_set))

    def dual(self) -> CyclicCode:
        n = self.n
        zs = set(self.defining_set)
        return CyclicCode(n, self.field, ((-z) % n for z in range(n) if z not in zs))

    def is_elementary(self) -> bool:
        Z = set(self.defining_set)
        n = self.n
        return Z in (set(), set(range(n)), set(range(1, n)), {0})

    def min_distance(self, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> int:
        return self.linear.min_distance(cap)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "defining_set": list(self.defining_set)}


def as_linear(code: LinearCode | CyclicCode) -> LinearCode:
    return code.linear if isinstance(code, CyclicCode) else code


def from_defining_set(n: int, F: GF | int, seeds: Iterable[int]) -> CyclicCode:
    F = field_of_order(F) if isinstance(F, int) else F
    if gcd(F.order, n) != 1:
        raise ValueError(f"gcd(q={F.order}, n={n}) != 1")
    cosets = cyclotomic_cosets(n, F.order)
    Z: set[int] = set()
    for s in seeds:
        Z.update(cosets.coset_of(s))
    return CyclicCode(n, F, Z)


def bch(n: int, F: GF | int, b: int, delta: int) -> CyclicCode:
    """BCH code whose defining set is generated by b, b+1, ..., b+delta-2."""
    if delta < 2:
        raise ValueError("designed distance must be >= 2")
    if b < 0:
        raise ValueError("b must be non-negative")
    return from_defining_set(n, F, range(b, b + delta - 1))


def multiplier_stabilizer(code: CyclicCode, verify: bool = True) -> list[int]:
    """Units a with a*Z == Z, cross-checked against the matrix test on a sample."""
    n = code.n
    Z = set(code.defining_set)
    A = [a for a in units(n) if {a * z % n for z in Z} == Z] if n > 1 else [0]
    if verify and n > 1:
        inside = set(A)
        us = units(n)
        rejected = [a for a in us if a not in inside]
        sample = {A[0], A[-1], *A[1:2]} | set(rejected[:2])
        for a in sample:
            if code.is_automorphism(multiplier(n, a)) != (a in inside):
                raise InternalError(f"multiplier {a}: defining-set and matrix tests disagree")
    return A


def cyclic_from_linear(code: LinearCode) -> CyclicCode:
    """Recover the defining set of a linear code that is invariant under the shift."""
    n, F = code.n, code.field
    if gcd(F.order, n) != 1:
        raise PreconditionError(f"gcd(q={F.order}, n={n}) != 1")
    if not code.is_automorphism(complete_cycle(n)):
        raise PreconditionError("code is not invariant under the cyclic shift")
    big, emb, powers = _root_powers(n, F)
    Z = []
    for z in range(n):
        for row in code.generator:
            acc = 0
            for i, c in enumerate(row):
                if c:
                    acc = big.add(acc, big.mul(emb(int(c)), powers[(z * i) % n]))
            if acc:
                break
        else:
            Z.append(z)
    cyc = CyclicCode(n, F, Z)
    if cyc.linear != code:
        raise InternalError("recovered defining set does not reproduce the code")
    return cyc


def code_from_json(data: dict) -> LinearCode | CyclicCode:
    n, q = int(data["n"]), int(data["q"])
    F = field_of_order(q)
    if "defining_set" in data:
        return CyclicCode(n, F, data["defining_set"])
    if "generator" in data:
        return LinearCode(F, n, data["generator"] or np.zeros((0, n), dtype=np.int64))
    raise ValueError("code descriptor needs 'defining_set' or 'generator'")
