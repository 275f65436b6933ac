"""Finite commutative rings, their prime spectra, and the harmonic/mp/Gelfand/lessened properties.

Rings are finite and given by addition and multiplication tables; monomial
quotients of polynomial rings over a prime field are handled symbolically;
finite spectral spaces are modelled as posets.
"""

from .decompose import (
    Decomposition, Refusal, decompose_domains, decompose_fields, decompose_lessened_quasi_prime,
    decompose_local,
)
from .errors import ConsistencyError, ConstructionError, RingMismatchError, SizeCapError, SpectraError
from .ideals import (
    IdealHandle, annihilator, enumerate_ideals, ideal_from_generators, is_pure, is_regular_ideal,
    maximal_ideals, nilradical, principal_idempotent_generator, radical, star,
)
from .monomial import MonomialQuotientRing, VariablePrime, is_lessened_up_to, kernel_membership
from .poset import SpecPoset, enumerate_posets, prime_inverse, shape_flags
from .ring import (
    Elem, TableRing, check_isomorphism, idempotents, is_isomorphic, make_gf, make_product, make_quotient,
    make_zmod, units,
)
from .spectrum import (
    PrimeIdeal, classify, kernel_of_localization, lessened_radical, localize, maximal_primes,
    minimal_primes, primes,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
