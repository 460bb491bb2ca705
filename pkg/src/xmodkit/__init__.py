"""Crossed modules, Whitehead sequences and internal groupoids over small finite structures."""

from . import actionsys, fingroup, gpd, io, pointedcat, simplicial
from .actionsys import ActionMorphism, ActionObject, CrossedModule, WhiteheadSequence
from .fingroup import FiniteGroup, GroupAction, GroupHom, cyclic, dihedral, group_by_name, small_groups
from .gpd import GroupoidWitness, InternalCategory

__version__ = "0.1.0"

__all__ = [
    "actionsys", "fingroup", "gpd", "io", "pointedcat", "simplicial",
    "ActionMorphism", "ActionObject", "CrossedModule", "WhiteheadSequence",
    "FiniteGroup", "GroupAction", "GroupHom", "cyclic", "dihedral", "group_by_name", "small_groups",
    "GroupoidWitness", "InternalCategory",
]
