"""Exact construction and certification of dense periodic packings of regular tetrahedra."""

from .model import (
    DIMER_X_MAX,
    DIMER_X_MIN,
    Packing,
    Tetrahedron,
    build_dimer_packing,
    build_layered_packing,
    build_simple_packing,
    check_regularity,
    monoclinic_gram,
)
from .separation import halfspace_intersection_oracle, separate_by_vertex_plane
from .verify import (
    contact_census,
    enumerate_candidates,
    inversion_center_report,
    packing_fraction,
    verify_family_interval,
    verify_packing,
)

__version__ = "0.1.0"

__all__ = [
    "DIMER_X_MAX",
    "DIMER_X_MIN",
    "Packing",
    "Tetrahedron",
    "build_dimer_packing",
    "build_layered_packing",
    "build_simple_packing",
    "check_regularity",
    "contact_census",
    "enumerate_candidates",
    "halfspace_intersection_oracle",
    "inversion_center_report",
    "monoclinic_gram",
    "packing_fraction",
    "separate_by_vertex_plane",
    "verify_family_interval",
    "verify_packing",
]
