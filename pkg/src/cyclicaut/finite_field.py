"""Finite fields GF(r^k) as quotient rings GF(r)[x]/(modulus).

Elements are plain integers: the base-r digits of an element are the
coefficients of its polynomial representative, lowest degree first.  So in
GF(4) = GF(2)[x]/(x^2+x+1) the element x+1 is encoded as 3.  ``FieldElem``
wraps an encoding together with its field for operator-style use; the
hot paths in other modules work on the raw integers through ``GF`` methods.

The modulus is the lexicographically least monic irreducible polynomial of
degree k, comparing coefficient vectors from x^(k-1) down to the constant
term (equivalently: the smallest integer encoding of the lower coefficients).
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arithmetic import factorize, is_prime, prime_power

MAX_FIELD_ORDER = 2**40
_TABLE_LIMIT = 2**16
_ARRAY_LIMIT = 1024


# polynomials over the prime field GF(r), as coefficient lists low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], r: int) -> list[int]:
    a = [c % r for c in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], r - 2, r)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % r
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % r
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], r: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % r for c in out])


def _pgcd(a: list[int], b: list[int], r: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, r)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], r: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, r)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, r), m, r)
        base = _pmod(_pmul(base, base, r), m, r)
        e >>= 1
    return result


def is_irreducible(poly: Sequence[int], r: int) -> bool:
    """Ben-Or test: f of degree k is irreducible iff gcd(f, x^(r^i) - x) = 1 for i <= k/2."""
    f = _trim([c % r for c in poly])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(1, k // 2 + 1):
        xp = _ppowmod(xp, r, f, r)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % r
        g = _pgcd(f, _trim(diff), r)
        if len(g) > 1:
            return False
    return True


def _digits(a: int, r: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, d = divmod(a, r)
        out.append(d)
    return out


def _from_digits(ds: Iterable[int], r: int) -> int:
    v = 0
    for d in reversed(list(ds)):
        v = v * r + d
    return v


class GF:
    """The field GF(r^k); build instances through :func:`field`."""

    def __init__(self, r: int, k: int, modulus: tuple[int, ...]) -> None:
        self.r = r
        self.k = k
        self.modulus = modulus
        self.order = r**k
        self._mod_int = _from_digits(modulus, r)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None

    def __repr__(self) -> str:
        return f"GF({self.r}^{self.k})" if self.k > 1 else f"GF({self.r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.r, self.k, self.modulus) == (
            other.r,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.r, self.k, self.modulus))

    # raw integer arithmetic

    zero = 0
    one = 1

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.r, self.k)

    def from_digits(self, ds: Sequence[int]) -> int:
        ds = [d % self.r for d in ds]
        if len(ds) > self.k:
            ds = _pmod(list(ds), list(self.modulus), self.r)
        return _from_digits(ds, self.r)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.r
        if self.r == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return _from_digits([(x + y) % self.r for x, y in zip(da, db)], self.r)

    def neg(self, a: int) -> int:
        if self.r == 2:
            return a
        if self.k == 1:
            return -a % self.r
        return _from_digits([-x % self.r for x in self.digits(a)], self.r)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.r
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        if self.r == 2:
            res, top = 0, 1 << self.k
            while b:
                if b & 1:
                    res ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= self._mod_int
            return res
        prod = _pmul(self.digits(a), self.digits(b), self.r)
        return _from_digits(_pmod(prod, list(self.modulus), self.r), self.r)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        e %= self.order - 1
        if self._log is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in " + repr(self))
        if self.k == 1:
            return pow(a, self.r - 2, self.r)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = self.order - 1
        for p, _ in factorize(order):
            while order % p == 0 and self.pow(a, order // p) == 1:
                order //= p
        return order

    def prime_subfield(self, c: int) -> int:
        """Encoding of the integer c viewed in the prime subfield."""
        return c % self.r

    # derived data

    @cached_property
    def primitive(self) -> int:
        """First element, in increasing encoding order, generating the multiplicative group."""
        for a in range(1, self.order):
            if self.element_order(a) == self.order - 1:
                if self.order <= _TABLE_LIMIT and self.k > 1:
                    self._build_tables(a)
                return a
        raise AssertionError("no primitive element found")  # pragma: no cover

    def _build_tables(self, g: int) -> None:
        exp = [0] * (self.order - 1)
        log = [0] * self.order
        x = 1
        for i in range(self.order - 1):
            exp[i] = x
            log[x] = i
            x = self.mul(x, g)
        self._exp, self._log = exp, log

    @cached_property
    def arrays(self) -> FieldArrays:
        if self.order > _ARRAY_LIMIT:
            raise ValueError(f"{self!r} is too large for lookup tables")
        return FieldArrays(self)

    def __call__(self, value: int) -> FieldElem:
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element encoding of {self!r}")
        return FieldElem(self, value)


class FieldArrays:
    """Lookup tables for vectorised arithmetic over a small field."""

    def __init__(self, F: GF) -> None:
        q = F.order
        self.field = F
        self.q = q
        self.prime = F.k == 1
        elems = range(q)
        self.add = np.array([[F.add(a, b) for b in elems] for a in elems], dtype=np.int64)
        self.mul = np.array([[F.mul(a, b) for b in elems] for a in elems], dtype=np.int64)
        self.neg = np.array([F.neg(a) for a in elems], dtype=np.int64)
        self.inv = np.array([0] + [F.inv(a) for a in range(1, q)], dtype=np.int64)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over the field; leading batch axes of A are allowed."""
        if self.prime:
            return (A.astype(np.int64) @ B.astype(np.int64)) % self.q
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for j in range(A.shape[-1]):
            out = self.add[out, self.mul[A[..., j, None], B[j]]]
        return out

    def addv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.q if self.prime else self.add[a, b]

    def mulv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a * b) % self.q if self.prime else self.mul[a, b]


class FieldElem:
    """An element of a specific GF, supporting the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int) -> None:
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _coerce(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"mixing {self.field!r} and {other.field!r}")
            return other.value
        return self.field.prime_subfield(other)

    def __add__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.sub(self._coerce(other), self.value))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.div(self.value, self._coerce(other)))

    def __pow__(self, e: int) -> FieldElem:
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def order(self) -> int:
        return self.field.element_order(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.prime_subfield(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{'*' if mono else ''}{mono}" if c != 1 or not mono else mono)
        return " + ".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def field(r: int, k: int = 1) -> GF:
    """GF(r^k) with the canonical modulus; the same (r, k) always yields the same field."""
    if not is_prime(r):
        raise ValueError(f"characteristic {r} is not prime")
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    if r**k > MAX_FIELD_ORDER:
        raise ValueError(f"GF({r}^{k}) exceeds the field size cap 2^40")
    if k == 1:
        return GF(r, 1, (0, 1))
    for low in range(r**k):
        mod = tuple(_digits(low, r, k)) + (1,)
        if is_irreducible(mod, r):
            return GF(r, k, mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> GF:
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    return field(*pm)


def primitive_element(F: GF) -> FieldElem:
    return FieldElem(F, F.primitive)


class Embedding:
    """Field embedding GF(r^a) -> GF(r^(a*e)) sending x to a fixed root of the sub-field modulus."""

    def __init__(self, sub: GF, sup: GF) -> None:
        if sub.r != sup.r:
            raise ValueError(f"characteristics differ: {sub!r} vs {sup!r}")
        if sup.k % sub.k:
            raise ValueError(f"{sub!r} is not a subfield of {sup!r}")
        self.sub, self.sup = sub, sup
        if sub.k == 1:
            self.image_of_x = None
            self.table = list(range(sub.order))
        else:
            zeta = sup.pow(sup.primitive, (sup.order - 1) // (sub.order - 1))
            cand = 1
            for _ in range(sub.order - 1):
                if _evaluate(sup, sub.modulus, cand) == 0:
                    break
                cand = sup.mul(cand, zeta)
            else:  # pragma: no cover
                raise AssertionError("sub-field modulus has no root")
            self.image_of_x = cand
            powers = [1]
            for _ in range(sub.k - 1):
                powers.append(sup.mul(powers[-1], cand))
            self.table = []
            for a in range(sub.order):
                v = 0
                for c, pw in zip(sub.digits(a), powers):
                    if c:
                        v = sup.add(v, sup.mul(c, pw))
                self.table.append(v)
        self.preimage = {v: a for a, v in enumerate(self.table)}

    def __call__(self, a: int) -> int:
        return self.table[a]

    def project(self, v: int) -> int:
        """Inverse of the embedding on its image; KeyError when v lies outside."""
        return self.preimage[v]


def _evaluate(F: GF, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def embed(sub: GF, sup: GF, a: FieldElem | int) -> FieldElem:
    value = a.value if isinstance(a, FieldElem) else a
    return FieldElem(sup, _embedding(sub, sup)(value))


@lru_cache(maxsize=64)
def _embedding(sub: GF, sup: GF) -> Embedding:
    return Embedding(sub, sup)


def embedding(sub: GF, sup: GF) -> Embedding:
    return _embedding(sub, sup)


class Poly:
    """Dense polynomial over a GF, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, F: GF, coeffs: Iterable[int]) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = F
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return _evaluate(self.field, self.coeffs, x)

    def __mul__(self, other: Poly) -> Poly:
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        a, b = list(self.coeffs), list(other.coeffs)
        size = max(len(a), len(b))
        a += [0] * (size - len(a))
        b += [0] * (size - len(b))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {list(self.coeffs)})"


def poly_product_over_roots(sup: GF, roots: Sequence[FieldElem | int]) -> Poly:
    """The monic polynomial prod (x - root) over ``sup``."""
    vals = [r.value if isinstance(r, FieldElem) else r for r in roots]
    if len(set(vals)) != len(vals):
        raise ValueError("roots must be distinct")
    coeffs = [1]
    for root in vals:
        neg = sup.neg(root)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = sup.add(nxt[i + 1], c)
            nxt[i] = sup.add(nxt[i], sup.mul(c, neg))
        coeffs = nxt
    return Poly(sup, coeffs)
