"""Rainbow Hamilton cycles and perfect matchings in collections of graphs.

Given graphs ``G_1, ..., G_s`` on one vertex set, a transversal picks one
edge from each graph (distinct edges, each edge tagged with the graph it came
from).  This package finds Hamiltonian and perfect-matching transversals when
every graph has minimum degree at least ``n/2``, verifies certificates, and
provides brute-force oracles and instance generators.
"""

from .collection import (
    GraphCollection,
    Transversal,
    VerifyReport,
    check_dirac,
    color_set,
    min_degree,
    verify_transversal,
)
from .errors import GuardError, InputError, InvariantViolation, RgcParseError
from .formats import parse_certificate, parse_rgc, write_certificate, write_rgc
from .generators import (
    gen_disjoint_cycles,
    gen_matching_counterexample,
    gen_random,
    gen_random_dirac,
    gen_two_cliques,
)
from .hamilton import HamiltonStats, find_hamilton
from .matching import MatchingStats, find_perfect_matching
from .oracle import assign_colors, brute_hamilton, brute_perfect_matching, max_rainbow_matching_size

__version__ = "0.1.0"

__all__ = [
    "GraphCollection",
    "Transversal",
    "VerifyReport",
    "check_dirac",
    "color_set",
    "min_degree",
    "verify_transversal",
    "GuardError",
    "InputError",
    "InvariantViolation",
    "RgcParseError",
    "parse_certificate",
    "parse_rgc",
    "write_certificate",
    "write_rgc",
    "gen_disjoint_cycles",
    "gen_matching_counterexample",
    "gen_random",
    "gen_random_dirac",
    "gen_two_cliques",
    "HamiltonStats",
    "find_hamilton",
    "MatchingStats",
    "find_perfect_matching",
    "assign_colors",
    "brute_hamilton",
    "brute_perfect_matching",
    "max_rainbow_matching_size",
]
