"""Group-theoretic matrix multiplication: triple product property checks,
group-algebra multiplication, character degrees and exponent bounds."""

from __future__ import annotations

__version__ = "0.1.0"

from .groups import (
    Cyclic,
    DirectProduct,
    Group,
    GroupError,
    GroupTooLarge,
    Symmetric,
    TriangleSymmetric,
    UnsupportedGroup,
    Wreath,
    build_group,
    parse_group_spec,
)
from .tpp import (
    IndexTriple,
    Tensor,
    TripleFamily,
    check_stpp,
    check_tpp,
    cyc_stpp_triples,
    search_triples,
    triangle_subgroup_triple,
    wreath_triple,
)
from .algebra import AlgebraElement, abelian_dft, abelian_idft, matmul_via_group, sym3_dft, sym3_idft
from .chars import DegreeSet, degree_set
from .bounds import BoundReport, chapter6_report, minimize_formula
from .strassen import STRASSEN, strassen_recursive

__all__ = [
    "AlgebraElement", "BoundReport", "Cyclic", "DegreeSet", "DirectProduct", "Group", "GroupError",
    "GroupTooLarge", "IndexTriple", "STRASSEN", "Symmetric", "Tensor", "TriangleSymmetric",
    "TripleFamily", "UnsupportedGroup", "Wreath", "abelian_dft", "abelian_idft", "build_group",
    "chapter6_report", "check_stpp", "check_tpp", "cyc_stpp_triples", "degree_set",
    "matmul_via_group", "minimize_formula", "parse_group_spec", "search_triples", "strassen_recursive",
    "sym3_dft", "sym3_idft", "triangle_subgroup_triple", "wreath_triple",
]
