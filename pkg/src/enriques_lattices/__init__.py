"""Lattice computations around E10, ADE root lattices and the 2-congruence subgroup."""

from .lattice import (
    DiscriminantGroup,
    Lattice,
    LatticeError,
    discriminant_action,
    discriminant_group,
    inner,
    lattice_invariants,
    orthogonal_complement,
    smith_normal_form,
)
from .roots import ADEType, RootDatum, build_root_datum
from .e10 import E10Lattice, HyperbolicPlane, build_e10

__version__ = "0.1.0"
