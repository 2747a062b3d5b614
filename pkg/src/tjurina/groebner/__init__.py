"""Standard-basis engine: Buchberger for global orders, Mora for local/mixed ones."""

from .basis import (INFINITE, StdBasis, highest_corner_degree, is_member,
                    is_standard_basis, krull_dim, normal_form, standard_monomials,
                    std_basis, vdim)
from .engine import POT, TOP
from .modules import ModuleElement
from .ops import (eliminant, ideal_contains, intersect, module_quotient,
                  radical_membership, same_ideal, syzygies, torsion_part_vdim,
                  torsion_part_vdim_by_powers, zero_dim_radical_count)

__all__ = [
    "INFINITE", "POT", "TOP", "ModuleElement", "StdBasis", "eliminant",
    "highest_corner_degree", "ideal_contains", "intersect", "is_member",
    "is_standard_basis", "krull_dim", "module_quotient", "normal_form",
    "radical_membership", "same_ideal", "standard_monomials", "std_basis",
    "syzygies", "torsion_part_vdim", "torsion_part_vdim_by_powers", "vdim",
    "zero_dim_radical_count",
]
