"""Subadditive functions and pi-points for elementary abelian p-groups, in exact arithmetic."""

__version__ = "0.1.0"

from .exactla import Field, FieldElem, Matrix, field_make
from .modrep import GroupDesc, Module, decompose, dual, free_module, omega, oplus, tensor, trivial_module
from .homalg import ext_dim, hom_dim, stable_hom_dim, tate_ext_dim
from .pipoints import PiPoint, pipoint_make, point_module, supp_pi, witness_module
from .geometry import FromModule, FromPiPoint, Sum, build_corpus, reconstruct_proj

__all__ = [
    "Field", "FieldElem", "Matrix", "field_make",
    "GroupDesc", "Module", "decompose", "dual", "free_module", "omega", "oplus", "tensor", "trivial_module",
    "ext_dim", "hom_dim", "stable_hom_dim", "tate_ext_dim",
    "PiPoint", "pipoint_make", "point_module", "supp_pi", "witness_module",
    "FromModule", "FromPiPoint", "Sum", "build_corpus", "reconstruct_proj",
]
