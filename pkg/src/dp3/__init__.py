"""Tau-mutations of the dP3 quiver, their closed forms, and Aztec castles.

Submodules
----------
laurent
    Exact sparse Laurent polynomials in ``x0 .. x5``.
cluster
    Seeds, mutation and tau-words.
alcove
    Alcove coordinates, canonical paths and the twelve regions.
closed_form
    ``x_m A^a B^b C^c`` presentations and direct formulas per alcove.
tiling
    The dP3 brane tiling and its isometries.
castle
    Aztec castles traced from six-tuples, dragons and condensation frames.
matching
    Perfect matchings, weights, covering monomials and Kasteleyn counts.
verify
    Instance checks and batch verification.
"""

from .alcove import Alcove, Even, Odd, parse_alcove
from .castle import dragon, ne_castle, sw_castle, trace
from .closed_form import cluster_at, expand, factor, run_presentation
from .cluster import initial_seed, run_word
from .laurent import LaurentPolynomial, parse, x
from .matching import c_value, count, weight
from .verify import verify_main, verify_many

__version__ = "0.1.0"

__all__ = [
    "Alcove", "Even", "Odd", "parse_alcove", "dragon", "ne_castle", "sw_castle", "trace",
    "cluster_at", "expand", "factor", "run_presentation", "initial_seed", "run_word",
    "LaurentPolynomial", "parse", "x", "c_value", "count", "weight", "verify_main",
    "verify_many", "__version__",
]
