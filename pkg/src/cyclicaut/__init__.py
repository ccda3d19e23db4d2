"""Automorphism groups and equivalence of cyclic codes and circulant graphs."""

from .autgroup import AutClassification, Tag, classify, classify_graph, sylow_exponent
from .brand import PolyPerm, QGroupId, compose, invert, polyperm
from .codes import CyclicCode, LinearCode, bch, from_defining_set
from .equivalence import EquivalenceWitness, Verdict, equivalent, equivalent_prime, equivalent_prime_power
from .errors import CapExceeded, CyclicAutError, InternalError, PreconditionError, UnsupportedLength
from .finite_field import GF, field, field_of_order
from .graphs import CirculantGraph, EdgeGraph, circulant, cycle_graph
from .permutation import AffineMap, Permutation

__all__ = [
    "AffineMap",
    "AutClassification",
    "CapExceeded",
    "CirculantGraph",
    "CyclicAutError",
    "CyclicCode",
    "EdgeGraph",
    "EquivalenceWitness",
    "GF",
    "InternalError",
    "LinearCode",
    "Permutation",
    "PolyPerm",
    "PreconditionError",
    "QGroupId",
    "Tag",
    "UnsupportedLength",
    "Verdict",
    "bch",
    "circulant",
    "classify",
    "classify_graph",
    "compose",
    "cycle_graph",
    "equivalent",
    "equivalent_prime",
    "equivalent_prime_power",
    "field",
    "field_of_order",
    "from_defining_set",
    "invert",
    "polyperm",
    "sylow_exponent",
]
