"""Exact counting checks for unipotent blocks of finite classical groups.

The package enumerates e-split Levi subgroups, e-Harish-Chandra series and
chains of Levis, counts characters of chain stabilizers by block and defect,
and compares both sides of the alternating-sum identity.
"""
from .cycpoly import CycError, CycProduct
from .genre import GroupDescriptor, GroupError, LeviClass, WreathGroup
from .labelcomb import LabelError, Partition, Symbol
from .uniphc import BlockId, CountTable, CuspidalPair, UnipChar
from .verify import VerificationReport, census_summary, verify_ctc_cardinality, verify_dade

__all__ = [
    "BlockId", "CountTable", "CuspidalPair", "CycError", "CycProduct", "GroupDescriptor",
    "GroupError", "LabelError", "LeviClass", "Partition", "Symbol", "UnipChar",
    "VerificationReport", "WreathGroup", "census_summary", "verify_ctc_cardinality", "verify_dade",
]
__version__ = "0.1.0"
