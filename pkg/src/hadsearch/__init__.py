"""Spin-model search for Hadamard matrices.

Builds the energy functions of the Williamson, Baumert-Hall, Turyn, and
extended-Turyn constructions, reduces them to 2-body Ising form, minimises
them exhaustively or by simulated annealing, and assembles and verifies the
resulting matrices.
"""

from .polynom import Assignment, Domain, Monomial, MultilinearPoly
from .quadratize import AncillaMap, compute_delta, quadratize, select_pair, substitute_pair
from .ising import Convention, IsingModel, from_quadratic, normalize_for_export
from .constructions import (
    PrototypeSpec,
    TurynQuadruple,
    base_sequences,
    baumert_hall_energy,
    enumerate_prototypes,
    extended_energy,
    nac,
    nac_values,
    normalized_turyn_quadruple,
    prototype_filter,
    seed_sequences,
    t_sequences,
    turyn_energy,
    williamson_energy,
)
from .hadamard import (
    back_diagonal,
    baumert_hall_array,
    circulant,
    goethals_seidel,
    verify,
    williamson_array,
)
from .solver import Sample, SampleSet, anneal, exhaustive_min, histogram

__version__ = "0.1.0"

__all__ = [
    "AncillaMap",
    "Assignment",
    "Convention",
    "Domain",
    "IsingModel",
    "Monomial",
    "MultilinearPoly",
    "PrototypeSpec",
    "Sample",
    "SampleSet",
    "TurynQuadruple",
    "anneal",
    "back_diagonal",
    "base_sequences",
    "baumert_hall_array",
    "baumert_hall_energy",
    "circulant",
    "compute_delta",
    "enumerate_prototypes",
    "exhaustive_min",
    "extended_energy",
    "from_quadratic",
    "goethals_seidel",
    "histogram",
    "nac",
    "nac_values",
    "normalize_for_export",
    "normalized_turyn_quadruple",
    "prototype_filter",
    "quadratize",
    "seed_sequences",
    "select_pair",
    "substitute_pair",
    "t_sequences",
    "turyn_energy",
    "verify",
    "williamson_array",
    "williamson_energy",
]
