"""Polycore - exact polynomial arithmetic and root structure."""

from polycore.errors import (
    CasasKitError,
    DomainError,
    ParseError,
    ResourceError,
    RootFindingError,
)
from polycore.rational import GaussianRational
from polycore.polynomial import Polynomial, derive, polynomial_gcd
from polycore.parsing import (
    format_nodes,
    format_polynomial,
    parse_nodes,
    parse_point,
    parse_polynomial,
)
from polycore.factor import (
    count_real_roots,
    is_real_rooted,
    is_trivial,
    root_multiplicity,
    squarefree_decompose,
    squarefree_part,
)
from polycore.roots import (
    ComplexApprox,
    DerivativeRoots,
    RootEntry,
    RootMultiset,
    certified_roots,
    derivative_roots,
    root_multiset,
)
from polycore.symmetric import (
    CentroidData,
    PowerSums,
    centroid,
    centroid_data,
    elementary_symmetric,
    penultimate_gap_squared,
    power_sums,
)

__all__ = [
    "CasasKitError",
    "DomainError",
    "ParseError",
    "ResourceError",
    "RootFindingError",
    "GaussianRational",
    "Polynomial",
    "derive",
    "polynomial_gcd",
    "format_nodes",
    "format_polynomial",
    "parse_nodes",
    "parse_point",
    "parse_polynomial",
    "count_real_roots",
    "is_real_rooted",
    "is_trivial",
    "root_multiplicity",
    "squarefree_decompose",
    "squarefree_part",
    "ComplexApprox",
    "DerivativeRoots",
    "RootEntry",
    "RootMultiset",
    "certified_roots",
    "derivative_roots",
    "root_multiset",
    "CentroidData",
    "PowerSums",
    "centroid",
    "centroid_data",
    "elementary_symmetric",
    "penultimate_gap_squared",
    "power_sums",
]
