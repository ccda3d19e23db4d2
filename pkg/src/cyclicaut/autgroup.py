"""Permutation automorphism groups of cyclic codes and circulant graphs.

The classifier only names a group after checking explicit generators with
``is_automorphism``.  Orders are exact except for the imprimitive case,
where only a lower bound is available.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import factorial, lcm
from typing import Protocol

from .arithmetic import (
    MAX_LENGTH,
    PrimePowerLength,
    is_prime,
    prime_power,
    projective_length_decompositions,
    units,
)
from .brand import f_i, level_one_multiplier
from .codes import CyclicCode, LinearCode, bch, cyclic_from_linear
from .codes import multiplier_stabilizer as code_multipliers
from .errors import CapExceeded, InternalError, PreconditionError, UnsupportedLength
from .finite_field import GF, field
from .graphs import CirculantGraph, Graph
from .graphs import multiplier_stabilizer as graph_multipliers
from .permutation import Permutation, complete_cycle, compose, inverse, multiplier

log = logging.getLogger(__name__)

M23_ORDER = 10200960
PSL_2_11_ORDER = 660
SINGER_POINT_CAP = 200_000
GOLAY_DISTANCE_CAP = 10**6


class CyclicObject(Protocol):
    n: int

    def is_automorphism(self, sigma: Permutation) -> bool: ...


class Tag(str, enum.Enum):
    SYMMETRIC = "Symmetric"
    AFFINE_SUBGROUP = "AffineSubgroup"
    FULL_AFFINE = "FullAffine"
    PROJECTIVE = "Projective"
    GOLAY_BINARY = "GolayBinary"
    GOLAY_TERNARY = "GolayTernary"
    IMPRIMITIVE = "Imprimitive"


@dataclass
class AutClassification:
    tag: Tag
    n: int
    order: int
    exact: bool
    evidence: dict
    generators: list[Permutation] = dc_field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if self.order % self.n:
            raise InternalError(f"order {self.order} is not divisible by n = {self.n}")

    @property
    def name(self) -> str:
        ev = self.evidence
        if self.tag is Tag.SYMMETRIC:
            return f"S_{self.n}"
        if self.tag is Tag.FULL_AFFINE:
            return f"AGL(1,{self.n})"
        if self.tag is Tag.AFFINE_SUBGROUP:
            a = len(ev["multipliers"])
            return f"C_{self.n}" if a == 1 else f"C_{a} x| C_{self.n}"
        if self.tag is Tag.PROJECTIVE:
            return f"PGammaL({ev['d']},{ev['t']})"
        if self.tag is Tag.GOLAY_BINARY:
            return "M_23"
        if self.tag is Tag.GOLAY_TERNARY:
            return "PSL(2,11)"
        return f"imprimitive, {ev['block_count']} blocks of size {ev['block_size']}"

    def structure(self) -> dict:
        """Machine-readable group name used in JSON reports."""
        ev = self.evidence
        if self.tag is Tag.SYMMETRIC:
            return {"symmetric": self.n}
        if self.tag is Tag.FULL_AFFINE:
            return {"affine": self.n}
        if self.tag is Tag.AFFINE_SUBGROUP:
            a = len(ev["multipliers"])
            return {"cyclic": self.n} if a == 1 else {"semidirect": [a, self.n]}
        if self.tag is Tag.PROJECTIVE:
            return {"PGammaL": [ev["d"], ev["t"]]}
        if self.tag is Tag.GOLAY_BINARY:
            return {"mathieu": 23}
        if self.tag is Tag.GOLAY_TERNARY:
            return {"PSL": [2, 11]}
        return {"imprimitive": [ev["block_count"], ev["block_size"]]}

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "name": self.structure(),
            "order": self.order,
            "order_exact": self.exact,
            "evidence": self.evidence,
        }

    def __str__(self) -> str:
        bound = "" if self.exact else " (lower bound)"
        suffix = " (elementary)" if self.evidence.get("reason") == "elementary" else ""
        return f"{self.name}{suffix}, order {self.order}{bound}"


def _verify(obj: CyclicObject, gens: list[Permutation], what: str) -> None:
    for g in gens:
        if not obj.is_automorphism(g):
            raise InternalError(f"claimed {what} generator {g} is not an automorphism")


# ---------------------------------------------------------------- projective


def gl_order(d: int, t: int) -> int:
    out = 1
    for i in range(d):
        out *= t**d - t**i
    return out


def pgaml_order(d: int, t: int) -> int:
    pp = prime_power(t)
    if pp is None:
        raise ValueError(f"{t} is not a prime power")
    return pp[1] * gl_order(d, t) // (t - 1)


@dataclass(frozen=True)
class SingerLabeling:
    """Coordinate i <-> projective point spanned by M^i e_1, M a primitive companion matrix."""

    d: int
    t: int
    field: GF
    polynomial: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {pt: i for i, pt in enumerate(self.points)}

    def normalize(self, v: tuple[int, ...]) -> tuple[int, ...]:
        F = self.field
        for c in v:
            if c:
                inv = F.inv(c)
                return tuple(F.mul(inv, x) for x in v)
        raise ValueError("zero vector is not a projective point")

    def singer_step(self, v: tuple[int, ...]) -> tuple[int, ...]:
        """Multiplication by the companion matrix (by x modulo the primitive polynomial)."""
        F = self.field
        top = v[-1]
        out = [0] + list(v[:-1])
        if top:
            out = [F.sub(o, F.mul(top, c)) for o, c in zip(out, self.polynomial)]
        return tuple(out)

    def matrix_permutation(self, g: list[list[int]]) -> Permutation:
        F = self.field
        img = []
        for v in self.points:
            w = []
            for row in g:
                acc = 0
                for a, x in zip(row, v):
                    if a and x:
                        acc = F.add(acc, F.mul(a, x))
                w.append(acc)
            img.append(self.index[self.normalize(tuple(w))])
        return Permutation(tuple(img))

    def frobenius_permutation(self) -> Permutation:
        F = self.field
        return Permutation(tuple(self.index[self.normalize(tuple(F.pow(x, F.r) for x in v))] for v in self.points))

    def gl_generators(self) -> list[list[list[int]]]:
        """diag(w, 1, ...), I + E_12, the d-cycle and the transposition (1 2): these generate GL(d, t)."""
        d, F = self.d, self.field

        def ident() -> list[list[int]]:
            return [[int(i == j) for j in range(d)] for i in range(d)]

        diag = ident()
        diag[0][0] = F.primitive
        transvection = ident()
        transvection[0][1] = 1
        cycle = [[int(i == (j + 1) % d) for j in range(d)] for i in range(d)]
        swap = ident()
        swap[0][0] = swap[1][1] = 0
        swap[0][1] = swap[1][0] = 1
        return [diag, transvection, cycle, swap]

    def generators(self) -> list[Permutation]:
        return [self.matrix_permutation(g) for g in self.gl_generators()] + [self.frobenius_permutation()]


def _primitive_polynomial(F: GF, d: int) -> tuple[int, ...]:
    """Least (in encoding order) c_0..c_{d-1} with x^d + ... + c_0 primitive over F."""
    t = F.order
    full = t**d - 1
    for code in range(1, t**d):
        cs = []
        x = code
        for _ in range(d):
            cs.append(x % t)
            x //= t
        if cs[0] == 0:
            continue
        v = (1,) + (0,) * (d - 1)
        start = v
        steps = 0
        while True:
            top = v[-1]
            w = [0] + list(v[:-1])
            if top:
                w = [F.sub(o, F.mul(top, c)) for o, c in zip(w, cs)]
            v = tuple(w)
            steps += 1
            if v == start or steps > full:
                break
        if steps == full and v == start:
            return tuple(cs)
    raise InternalError(f"no primitive polynomial of degree {d} over GF({t})")


def singer_labeling(d: int, t: int) -> SingerLabeling:
    if d < 2:
        raise ValueError("d must be >= 2")
    pp = prime_power(t)
    if pp is None:
        raise ValueError(f"t = {t} is not a prime power")
    n = (t**d - 1) // (t - 1)
    if n > SINGER_POINT_CAP:
        raise CapExceeded("Singer labeling points", n, SINGER_POINT_CAP)
    F = field(pp[0], pp[1])
    poly = _primitive_polynomial(F, d)
    lab = SingerLabeling(d, t, F, poly, ())
    pts = []
    v = (1,) + (0,) * (d - 1)
    for _ in range(n):
        pts.append(lab.normalize(v))
        v = lab.singer_step(v)
    if len(set(pts)) != n or lab.normalize(v) != pts[0]:
        raise InternalError(f"Singer labeling for ({d}, {t}) is not a bijection onto points")
    return SingerLabeling(d, t, F, poly, tuple(pts))


def _labeling_classes(n: int, r: int) -> list[int]:
    """Representatives of Z_n^* modulo the powers of r (the Singer normaliser's action)."""
    seen: set[int] = set()
    reps = []
    for a in units(n):
        if a in seen:
            continue
        reps.append(a)
        x = a
        while x not in seen:
            seen.add(x)
            x = x * r % n
    return reps


def projective_generators(obj: CyclicObject, d: int, t: int, r: int) -> tuple[int, list[Permutation]] | None:
    """Find a labeling multiplier j and PGammaL generators fixing obj, or None."""
    lab = singer_labeling(d, t)
    if lab.n != obj.n:
        raise PreconditionError(f"(t^d - 1)/(t - 1) = {lab.n} does not match n = {obj.n}")
    base = lab.generators()
    for j in _labeling_classes(obj.n, r):
        mu = multiplier(obj.n, j)
        mu_inv = inverse(mu)
        gens = [compose(mu_inv, compose(g, mu)) for g in base]
        if all(obj.is_automorphism(g) for g in gens):
            return j, gens
    return None


def is_projective(code: CyclicCode, d: int, t: int) -> bool:
    pp = prime_power(t)
    if pp is None or pp[0] != code.field.r:
        raise PreconditionError(f"t = {t} must be a power of the characteristic {code.field.r}")
    if (t**d - 1) // (t - 1) != code.n:
        raise PreconditionError(f"n = {code.n} is not (t^d - 1)/(t - 1) for (d, t) = ({d}, {t})")
    return projective_generators(code, d, t, code.field.r) is not None


def _projective(code: CyclicCode) -> AutClassification | None:
    n, r = code.n, code.field.r
    if n < 7:
        return None
    max_d = n.bit_length() + 1
    for t, d in projective_length_decompositions(n, max_d):
        if d < 3 or prime_power(t)[0] != r:
            continue
        found = projective_generators(code, d, t, r)
        if found is not None:
            j, gens = found
            return AutClassification(
                Tag.PROJECTIVE, n, pgaml_order(d, t), True, {"d": d, "t": t, "labeling_multiplier": j}, gens
            )
    return None


# ---------------------------------------------------------------- Golay


def _extends_small_field_code(code: CyclicCode, s: int) -> bool:
    Z = set(code.defining_set)
    return all((z * s) % code.n in Z for z in Z)


def detect_golay(code: CyclicCode, distance_cap: int = GOLAY_DISTANCE_CAP) -> AutClassification | None:
    n, k = code.n, code.dimension
    if code.is_elementary():
        return None
    if n == 23 and code.field.r == 2 and k in (11, 12):
        tag, order, want, s = Tag.GOLAY_BINARY, M23_ORDER, {12: 7, 11: 8}[k], 2
    elif n == 11 and code.field.r == 3 and k in (5, 6):
        tag, order, want, s = Tag.GOLAY_TERNARY, PSL_2_11_ORDER, {6: 5, 5: 6}[k], 3
    else:
        return None
    # Over a larger field the code must come from the binary/ternary one.
    if not _extends_small_field_code(code, s):
        return None
    try:
        d = code.min_distance(cap=distance_cap)
    except CapExceeded:
        d = None
    if d is not None and d != want:
        raise InternalError(f"Golay-length code with distance {d}, expected {want}")
    gens = [complete_cycle(n)] + [multiplier(n, a) for a in code_multipliers(code)]
    _verify(code, gens, tag.value)
    return AutClassification(tag, n, order, True, {"dimension": k, "min_distance": d}, gens)


# ---------------------------------------------------------------- prime length


def _affine(n: int, A: list[int], obj: CyclicObject) -> AutClassification:
    gens = [complete_cycle(n)] + [multiplier(n, a) for a in A if a != 1]
    _verify(obj, gens, "affine")
    if len(A) == n - 1:
        return AutClassification(Tag.FULL_AFFINE, n, n * (n - 1), True, {"multipliers": A}, gens)
    return AutClassification(Tag.AFFINE_SUBGROUP, n, n * len(A), True, {"multipliers": A}, gens)


def algorithm_a(code: CyclicCode, prescreened: bool = False) -> AutClassification:
    """Aut(C) for prime length: {x -> a x + b : a in A}, A the multiplier stabiliser."""
    p = code.n
    if not is_prime(p):
        raise PreconditionError(f"length {p} is not prime")
    if code.is_elementary():
        raise PreconditionError("elementary code: the group is the full symmetric group")
    if not prescreened:
        if detect_golay(code) is not None:
            raise PreconditionError("Golay screen: the code is a Golay code")
        if _projective(code) is not None:
            raise PreconditionError("projective screen: the code is invariant under PGL(d, t)")
    return _affine(p, code_multipliers(code), code)


# ---------------------------------------------------------------- Sylow probe


@dataclass(frozen=True)
class SylowProbe:
    """I: largest i with f_i in Aut; s: exponent of the Sylow p-subgroup (lower bound if at_cap).

    I = 0 records that even the level-one multiplier fails, so the Sylow
    subgroup is <T> itself (s = m) and Q^(I+1) = Q^1 is the affine group.
    """

    length: PrimePowerLength
    I: int
    s: int
    at_cap: bool
    cyclic_only: bool
    tests: int
    monotone: bool = True

    def to_json(self) -> dict:
        return {
            "I": self.I,
            "s": self.s,
            "at_cap": self.at_cap,
            "cyclic_only": self.cyclic_only,
            "tests": self.tests,
            "monotone": self.monotone,
        }


def sylow_exponent(obj: CyclicObject) -> SylowProbe:
    length = PrimePowerLength.of(obj.n)
    p, m = length.p, length.m
    if p == 2:
        raise PreconditionError("the Sylow probe needs an odd prime")
    if not obj.is_automorphism(complete_cycle(obj.n)):
        raise PreconditionError("object is not invariant under the cyclic shift")
    if m == 1:
        # p^2 does not divide p!, so the Sylow subgroup is <T>.
        return SylowProbe(length, 0, 1, False, True, 1)
    tests = 1
    cache = {1: True}

    def member(i: int) -> bool:
        nonlocal tests
        if i not in cache:
            tests += 1
            cache[i] = obj.is_automorphism(f_i(length, i).permutation())
        return cache[i]

    lo, hi = 1, p - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if member(mid):
            lo = mid
        else:
            hi = mid - 1
    I = lo
    monotone = member(I) and (I + 1 > p - 2 or not member(I + 1))
    if monotone and I >= 2:
        monotone = member(I - 1)
    if not monotone:
        log.warning("f_i membership is not monotone for %r; falling back to a linear scan", obj)
        I = 1
        while I + 1 <= p - 2 and member(I + 1):
            I += 1
    tests += 1
    level_one = obj.is_automorphism(level_one_multiplier(length).permutation())
    if I >= 2 and not level_one:
        raise InternalError("f_2 is an automorphism but the level-one multiplier is not")
    if not level_one:
        return SylowProbe(length, 0, m, False, True, tests, monotone)
    return SylowProbe(length, I, I + m, I == p - 2, False, tests, monotone)


# ---------------------------------------------------------------- dispatch


def _imprimitive(obj: CyclicObject, A: list[int]) -> AutClassification:
    n = obj.n
    p, m = prime_power(n)
    step = p ** (m - 1)
    blocks = [list(range(k, n, step)) for k in range(step)]
    gens = [complete_cycle(n)] + [multiplier(n, a) for a in A if a != 1]
    evidence: dict = {"p": p, "m": m, "block_count": step, "block_size": p, "blocks": blocks, "multipliers": A}
    order = n * len(A)
    if p != 2:
        probe = sylow_exponent(obj)
        evidence["sylow"] = probe.to_json()
        if not probe.cyclic_only:
            L = probe.length
            gens.append(level_one_multiplier(L).permutation())
            if probe.I >= 2:
                gens.append(f_i(L, probe.I).permutation())
        order = lcm(order, p**probe.s)
    _verify(obj, gens, "imprimitive")
    shift = complete_cycle(n) ** step
    if sorted(map(list, shift.orbits())) != blocks:
        raise InternalError("block system does not match the orbits of T^(p^(m-1))")
    return AutClassification(Tag.IMPRIMITIVE, n, order, False, evidence, gens)


def _symmetric(n: int, reason: str) -> AutClassification:
    return AutClassification(Tag.SYMMETRIC, n, factorial(n), True, {"reason": reason})


def classify(code: CyclicCode | LinearCode, distance_cap: int = GOLAY_DISTANCE_CAP) -> AutClassification:
    if isinstance(code, LinearCode):
        code = cyclic_from_linear(code)
    n = code.n
    if n > MAX_LENGTH:
        raise UnsupportedLength(f"length {n} exceeds cap {MAX_LENGTH}")
    if code.is_elementary():
        return _symmetric(n, "elementary")
    golay = detect_golay(code, distance_cap)
    if golay is not None:
        return golay
    proj = _projective(code)
    if proj is not None:
        return proj
    if is_prime(n):
        if n == code.q:
            raise InternalError("length equal to the field order cannot carry a cyclic code here")
        return algorithm_a(code, prescreened=True)
    if prime_power(n) is not None:
        return _imprimitive(code, code_multipliers(code))
    raise UnsupportedLength(f"length {n} is neither prime nor a prime power")


def classify_graph(G: Graph) -> AutClassification:
    if not isinstance(G, CirculantGraph):
        raise PreconditionError("only circulant graphs can be classified")
    n = G.n
    if len(G.connection) in (0, n - 1):
        return _symmetric(n, "empty" if not G.connection else "complete")
    A = graph_multipliers(G)
    if is_prime(n):
        return _affine(n, A, G)
    if prime_power(n) is not None:
        return _imprimitive(G, A)
    raise UnsupportedLength(f"length {n} is neither prime nor a prime power")


def classify_object(obj: CyclicCode | LinearCode | Graph, distance_cap: int = GOLAY_DISTANCE_CAP) -> AutClassification:
    if isinstance(obj, Graph):
        return classify_graph(obj)
    return classify(obj, distance_cap)


# ---------------------------------------------------------------- BCH reference table

# (q, p, delta) -> expected group for b = 1, 2, 3, as (name, order).
TABLE2: dict[tuple[int, int, int], tuple[tuple[str, int], ...]] = {}


def _c(a: int, p: int) -> tuple[str, int]:
    return (f"C_{p}" if a == 1 else f"C_{a} x| C_{p}", a * p)


def _s(p: int) -> tuple[str, int]:
    return (f"S_{p}", factorial(p))


_M23 = ("M_23", M23_ORDER)
_PGL33 = ("PGammaL(3,3)", pgaml_order(3, 3))

TABLE2.update(
    {
        (2, 17, 2): (_c(8, 17), _s(17), _s(17)),
        (2, 23, 3): (_M23, _M23, _M23),
        (2, 41, 2): (_c(20, 41),) * 3,
        (2, 41, 3): (_c(20, 41), _s(41), _s(41)),
        (2, 43, 5): (_c(14, 43),) * 3,
        (2, 43, 7): (_c(14, 43), _s(43), _s(43)),
        (3, 13, 2): (_c(3, 13),) * 3,
        (3, 13, 4): (_PGL33, _c(3, 13), _c(3, 13)),
        (3, 13, 5): (_c(3, 13),) * 3,
        (3, 23, 3): (_c(11, 23),) * 3,
        (3, 41, 5): (_c(8, 41),) * 3,
        (4, 43, 9): (_c(7, 43), _s(43), _s(43)),
        (5, 11, 5): (_c(5, 11),) * 3,
        (11, 5, 3): (_c(1, 5), _c(2, 5), _c(1, 5)),
    }
)


@dataclass(frozen=True)
class Table2Cell:
    q: int
    p: int
    delta: int
    b: int
    expected: tuple[str, int]
    computed: tuple[str, int]
    defining_set: tuple[int, ...]

    @property
    def matches(self) -> bool:
        return self.expected == self.computed


def table2_cell(q: int, p: int, delta: int, b: int) -> Table2Cell:
    code = bch(p, q, b, delta)
    cls = classify(code)
    return Table2Cell(q, p, delta, b, TABLE2[(q, p, delta)][b - 1], (cls.name, cls.order), code.defining_set)


def table2() -> list[Table2Cell]:
    return [table2_cell(q, p, d, b) for (q, p, d) in TABLE2 for b in (1, 2, 3)]
