"""Fusion and linking systems of finite groups, and centralizers of normal
subsystems computed by two independent methods."""

from .caps import CAPS, Caps, CapError
from .catalog import build, build_group, build_pair, example_weakly_normal
from .fusion import (
    FusionSystem,
    Morphism,
    NormalPair,
    RealizedFusionSystem,
    center_of_fusion_system,
    centralizer_subgroup_direct,
    centralizer_system,
    hyperfocal,
    invariance_and_normality,
    is_saturated,
    k_normalizer_system,
    p_power_index_subsystem,
)
from .groups import GroupTable, Subgroup, generate_subgroup, sylow_subgroup
from .kernels import BACKEND
from .linking import LinkingSystem, verify_theorem_a
from .local import centralizer_subgroup_local, verify_theorem_b

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CAPS",
    "CapError",
    "Caps",
    "FusionSystem",
    "GroupTable",
    "LinkingSystem",
    "Morphism",
    "NormalPair",
    "RealizedFusionSystem",
    "Subgroup",
    "build",
    "build_group",
    "build_pair",
    "center_of_fusion_system",
    "centralizer_subgroup_direct",
    "centralizer_subgroup_local",
    "centralizer_system",
    "example_weakly_normal",
    "generate_subgroup",
    "hyperfocal",
    "invariance_and_normality",
    "is_saturated",
    "k_normalizer_system",
    "p_power_index_subsystem",
    "sylow_subgroup",
    "verify_theorem_a",
    "verify_theorem_b",
]
