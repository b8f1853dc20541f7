"""Exact m-free sieves over orders in number fields, lattice point counts,
and the constructive tower of quadratic extensions whose top ring of
integers is generated by units."""

from .density import (
    DensityParams,
    SievePolynomial,
    density_gap_check,
    empirical_count,
    error_exponent,
    euler_density,
    mfree_threshold,
    root_count,
    root_count_order,
)
from .field import AlgebraicInt, NumberField, is_square_in_field
from .fieldspec import load_field_spec
from .geometry import (
    EmbeddedLattice,
    RegionBox,
    count_coset,
    embed_sigma,
    enumerate_region,
    in_region,
    successive_minima,
    widmer_bound,
)
from .ideal import IdealLattice, PrimeIdealData, is_mfree, mobius, split_prime
from .order import SubOrder, index_lower_bound
from .tower import (
    Tower,
    TowerStep,
    belcher_criterion,
    build_tower,
    find_omega,
    quadratic_step,
    unit_order,
    verify_unit_generation,
)

__all__ = [
    "AlgebraicInt",
    "DensityParams",
    "EmbeddedLattice",
    "IdealLattice",
    "NumberField",
    "PrimeIdealData",
    "RegionBox",
    "SievePolynomial",
    "SubOrder",
    "Tower",
    "TowerStep",
    "belcher_criterion",
    "build_tower",
    "count_coset",
    "density_gap_check",
    "embed_sigma",
    "empirical_count",
    "enumerate_region",
    "error_exponent",
    "euler_density",
    "find_omega",
    "in_region",
    "index_lower_bound",
    "is_mfree",
    "is_square_in_field",
    "load_field_spec",
    "mfree_threshold",
    "mobius",
    "quadratic_step",
    "root_count",
    "root_count_order",
    "split_prime",
    "successive_minima",
    "unit_order",
    "verify_unit_generation",
    "widmer_bound",
]

__version__ = "0.1.0"
