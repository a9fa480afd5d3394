from .cyclotomic import Cyc, cyclotomic_poly, euler_phi, root_of_unity_order
from .modular import (ConfigurationError, DiscreteLog, FiniteField, ResidueRing, discrete_log,
                      kronecker, legendre, primes_up_to, smallest_primitive_root)
from .lattice import NotPositiveDefinite, PosDefLattice, enumerate_by_norm, lll_reduce_gram
from .numeric import PrecisionError, min_poly_from_roots
