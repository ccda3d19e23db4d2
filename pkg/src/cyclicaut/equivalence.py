"""Permutation equivalence of cyclic objects, with verified witnesses.

Prime length: only multipliers need checking.  Length p^m: probe the Sylow
p-subgroup of Aut(C) with the f_i maps, then scan Q^(I+1) (or just the
multipliers when the Sylow subgroup is <T>) for f with f(C) = C'.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .arithmetic import PrimePowerLength, is_prime, prime_power, units
from .autgroup import SylowProbe, sylow_exponent
from .brand import DEFAULT_ENUMERATION_CAP, PolyPerm, QGroupId, image_batches
from .codes import CyclicCode, LinearCode, as_linear
from .errors import CapExceeded, InternalError, PreconditionError, UnsupportedLength
from .graphs import Graph
from .permutation import AffineMap, Permutation, complete_cycle

log = logging.getLogger(__name__)

CyclicObj = Union[CyclicCode, LinearCode, Graph]
WEIGHT_ENUMERATOR_CAP = 10**5


class Verdict(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"


@dataclass
class EquivalenceWitness:
    verdict: Verdict
    witness: AffineMap | PolyPerm | None
    search_space: str
    candidates_checked: int
    warnings: list[str] = field(default_factory=list)
    certified: bool = True

    @property
    def equivalent(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT

    def permutation(self) -> Permutation | None:
        return None if self.witness is None else self.witness.permutation()

    def to_json(self) -> dict:
        out = {
            "equivalent": self.equivalent,
            "witness": None if self.witness is None else str(self.witness),
            "checked": self.candidates_checked,
            "space": self.search_space,
            "certified": self.certified,
        }
        if self.witness is not None:
            out["image"] = list(self.witness.permutation().image)
        if self.warnings:
            out["warnings"] = self.warnings
        return out

    def __str__(self) -> str:
        head = "equivalent" if self.equivalent else "not equivalent"
        parts = [head]
        if self.witness is not None:
            parts.append(f"witness {self.witness}")
        parts.append(f"{self.candidates_checked} candidates checked in {self.search_space}")
        if not self.certified:
            parts.append("uncertified")
        return ", ".join(parts)


def _category(obj: CyclicObj) -> tuple:
    if isinstance(obj, Graph):
        return ("graph", obj.n, obj.directed)
    if isinstance(obj, (CyclicCode, LinearCode)):
        return ("code", obj.n, as_linear(obj).field)
    raise TypeError(f"unsupported object {obj!r}")


def _check_pair(C: CyclicObj, D: CyclicObj) -> None:
    a, b = _category(C), _category(D)
    if a[0] != b[0]:
        raise PreconditionError(f"category mismatch: {a[0]} vs {b[0]}")
    if a[1] != b[1]:
        raise PreconditionError(f"length mismatch: {a[1]} vs {b[1]}")
    if a != b:
        what = "directedness" if a[0] == "graph" else "field"
        raise PreconditionError(f"{what} mismatch")
    T = complete_cycle(C.n)
    for obj in (C, D):
        if not obj.is_automorphism(T):
            raise PreconditionError(f"{obj!r} is not invariant under the cyclic shift")


def _maps_to(C: CyclicObj, sigma: Permutation, D: CyclicObj) -> bool:
    if isinstance(C, Graph):
        return C.maps_to(sigma, D)
    return as_linear(C).maps_to(sigma, as_linear(D))


def _batch_maps_to(C: CyclicObj, images: np.ndarray, D: CyclicObj) -> np.ndarray:
    if isinstance(C, Graph):
        return C.batch_maps_to(images, D)
    return as_linear(C).batch_maps_to(images, as_linear(D))


def _image_equal(C: CyclicObj, sigma: Permutation, D: CyclicObj) -> bool:
    if isinstance(C, Graph):
        return C.apply_perm(sigma) == D
    return as_linear(C).apply_perm(sigma) == as_linear(D)


def equivalence_precheck(C: CyclicObj, D: CyclicObj) -> EquivalenceWitness | None:
    """A NotEquivalent verdict from permutation invariants, or None if they agree."""

    def no(reason: str) -> EquivalenceWitness:
        return EquivalenceWitness(Verdict.NOT_EQUIVALENT, None, f"invariants ({reason})", 0)

    if isinstance(C, Graph):
        if C.edge_count != D.edge_count:
            return no("edge count")
        if C.degree_multiset() != D.degree_multiset():
            return no("degree multiset")
        return None
    A, B = as_linear(C), as_linear(D)
    if A.dimension != B.dimension:
        return no("dimension")
    if A.q**A.dimension <= WEIGHT_ENUMERATOR_CAP and A.weight_enumerator() != B.weight_enumerator():
        return no("weight enumerator")
    return None


def _finish(C: CyclicObj, D: CyclicObj, w: AffineMap | PolyPerm, space: str, checked: int, warnings: list[str]):
    sigma = w.permutation()
    if not (_maps_to(C, sigma, D) and _image_equal(C, sigma, D)):
        raise InternalError(f"witness {w} failed re-verification")
    return EquivalenceWitness(Verdict.EQUIVALENT, w, space, checked, warnings)


def _multiplier_scan(C: CyclicObj, D: CyclicObj, warnings: list[str]) -> EquivalenceWitness:
    n = C.n
    us = units(n)
    space = f"multipliers of Z_{n}, |.|={len(us)}"
    for checked, a in enumerate(us, start=1):
        w = AffineMap(n, a)
        if _maps_to(C, w.permutation(), D):
            return _finish(C, D, w, space, checked, warnings)
    return EquivalenceWitness(Verdict.NOT_EQUIVALENT, None, space, len(us), warnings)


def equivalent_prime(C: CyclicObj, D: CyclicObj) -> EquivalenceWitness:
    if not is_prime(C.n):
        raise PreconditionError(f"length {C.n} is not prime")
    _check_pair(C, D)
    pre = equivalence_precheck(C, D)
    if pre is not None:
        return pre
    return _multiplier_scan(C, D, [])


def _scan_range(C, D, gid: QGroupId, cap: int, start: int, stop: int) -> tuple[np.ndarray | None, int]:
    checked = 0
    for _, coeffs, images in image_batches(gid, cap=cap, start=start, stop=stop):
        hits = np.flatnonzero(_batch_maps_to(C, images, D))
        if hits.size:
            first = int(hits[0])
            return coeffs[first], checked + first + 1
        checked += len(images)
    return None, checked


def equivalent_prime_power(
    C: CyclicObj, D: CyclicObj, cap: int = DEFAULT_ENUMERATION_CAP, jobs: int = 1
) -> EquivalenceWitness:
    """Decide equivalence on p^m points; the witness is the first hit in lexicographic order."""
    pp = prime_power(C.n)
    if pp is None or pp[1] < 2:
        raise PreconditionError(f"length {C.n} is not a proper prime power")
    if pp[0] == 2:
        raise PreconditionError("polynomial search spaces need an odd prime")
    _check_pair(C, D)
    pre = equivalence_precheck(C, D)
    if pre is not None:
        return pre
    probe: SylowProbe = sylow_exponent(C)
    other = sylow_exponent(D)
    if probe.I != other.I:
        return EquivalenceWitness(
            Verdict.NOT_EQUIVALENT, None, f"Sylow probe (I={probe.I} vs I={other.I})", probe.tests + other.tests
        )
    warnings: list[str] = []
    if probe.cyclic_only:
        return _multiplier_scan(C, D, warnings)
    if probe.at_cap:
        msg = f"Sylow probe at cap (I = p-2 = {probe.I}); searching Q^{pp[0] - 1}, a negative verdict is not certified"
        log.warning(msg)
        warnings.append(msg)
    length = PrimePowerLength(*pp)
    gid = QGroupId(length, probe.I + 1)
    total = gid.cardinality()
    space = f"{gid.name}, |.|={total}"
    if total > cap:
        raise CapExceeded(f"searching {gid}", total, cap)
    if jobs <= 1:
        chunks = [(0, total)]
    else:
        size = -(-total // (4 * jobs))
        chunks = [(lo, min(total, lo + size)) for lo in range(0, total, size)]
    if len(chunks) == 1:
        results = [_scan_range(C, D, gid, cap, *chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda c: _scan_range(C, D, gid, cap, *c), chunks))
    checked = 0
    for coeffs, count in results:
        checked += count
        if coeffs is not None:
            w = PolyPerm(length, tuple(int(c) for c in coeffs))
            return _finish(C, D, w, space, checked, warnings)
    # With the probe at cap the Sylow subgroup may exceed Q_1^(p-2) and a miss proves nothing.
    return EquivalenceWitness(Verdict.NOT_EQUIVALENT, None, space, checked, warnings, certified=not probe.at_cap)


def equivalent(C: CyclicObj, D: CyclicObj, cap: int = DEFAULT_ENUMERATION_CAP, jobs: int = 1) -> EquivalenceWitness:
    n = C.n
    if is_prime(n):
        return equivalent_prime(C, D)
    pp = prime_power(n)
    if pp is not None and pp[0] != 2:
        return equivalent_prime_power(C, D, cap=cap, jobs=jobs)
    raise UnsupportedLength(f"no equivalence algorithm for length {n}")
