"""Lattices over F_q[x] and weak-key recovery for toy BIKE keys."""

from .gfpoly import NEG_INF, FieldSpec, Poly, inv_mod, sample_sparse, weight, xgcd
from .lattice import InvalidBasisError, PolyBasis, contains, covol, det, index, od, successive_minima, vec_norm
from .reduce import ReducedBasis, ReductionStats, brute_force_minima, reduce, shortest_vector

__version__ = "0.1.0"
