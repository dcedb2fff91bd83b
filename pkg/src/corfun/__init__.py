"""corfun: evaluations of correspondence functors on finite lattices and posets."""

from .errors import BudgetExceeded, CorfunError, InvariantFailure, NotALattice, ValidationError
from .relation import GroundSet, Permutation, Relation, compose, opposite
from .poset import Poset
from .lattice import Lattice, MarkedLattice, build, ideal_lattice
from .catalog import lattice_by_name
from .maps import FormalMapSum
from .functor import MapVector, basis_BX, matrix_N, rank_bruteforce, rank_formula

__version__ = "0.1.0"
