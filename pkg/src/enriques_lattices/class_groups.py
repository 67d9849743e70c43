"""Local class groups of rational double points, computed as ``E^vee / E``."""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import DiscriminantGroup, LatticeError, identity
from .roots import (
    ADEType,
    DiagramAutomorphism,
    build_root_datum,
    covering_involution_action,
    decompose_isometry,
    is_minus_weyl,
)


@dataclass(frozen=True)
class LocalClassGroup:
    singularity: ADEType
    group: DiscriminantGroup

    @property
    def order(self) -> int:
        return self.group.order

    def structure(self) -> str:
        if not self.group.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.group.invariant_factors)


def local_class_group(t: ADEType) -> LocalClassGroup:
    return LocalClassGroup(t, build_root_datum(t).discriminant)


def is_p_torsion(t: ADEType, p: int) -> bool:
    from sympy import isprime

    if not isprime(p):
        raise LatticeError(f"{p} is not prime")
    return all(p % d == 0 for d in local_class_group(t).group.invariant_factors)


@dataclass(frozen=True)
class DeckActionReport:
    type: ADEType
    diagram_action: DiagramAutomorphism
    acts_as_minus_one: bool
    minus_id_in_weyl: bool

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "diagram_action": list(self.diagram_action.perm),
            "diagram_action_labels": self.diagram_action.describe(),
            "acts_as_minus_one": self.acts_as_minus_one,
            "minus_id_in_weyl": self.minus_id_in_weyl,
        }


def deck_action_report(t: ADEType) -> DeckActionReport:
    rd = build_root_datum(t)
    sigma = covering_involution_action(t)
    # P_sigma should differ from -1 by a Weyl element
    acts = is_minus_weyl(rd, sigma.matrix())
    _, graph = decompose_isometry(rd, -identity(rd.rank))
    if graph != sigma:
        raise AssertionError("graph part of -id disagrees with the covering action")
    return DeckActionReport(
        type=t,
        diagram_action=sigma,
        acts_as_minus_one=acts,
        minus_id_in_weyl=is_minus_weyl(rd, identity(rd.rank)),
    )


def class_group_row(t: ADEType) -> dict:
    cg = local_class_group(t)
    rep = deck_action_report(t)
    return {
        "type": str(t),
        "group": cg.structure(),
        "order": cg.order,
        "two_torsion": is_p_torsion(t, 2),
        "three_torsion": is_p_torsion(t, 3),
        "diagram_action": rep.diagram_action.describe(),
        "minus_id_in_weyl": rep.minus_id_in_weyl,
    }
