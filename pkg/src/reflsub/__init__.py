"""Reflection subgroups of the primitive complex reflection groups G23..G37."""
from .rootdata import GroupId, RootDatum, build_root_datum
from .subsystems import ClassAtlas, ReflSubgroup, SubgroupClass, enumerate_atlas
from .tables import render_grid, render_showtable
from .verify import VerificationReport, check_corollary, check_theorem, verify_group

__all__ = [
    "ClassAtlas", "GroupId", "ReflSubgroup", "RootDatum", "SubgroupClass",
    "VerificationReport", "build_root_datum", "check_corollary", "check_theorem",
    "enumerate_atlas", "render_grid", "render_showtable", "verify_group",
]
__version__ = "0.1.0"
