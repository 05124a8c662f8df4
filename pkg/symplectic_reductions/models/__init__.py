"""
Symplectic Reductions - Models Package
Contains the data models: partitions and orbit labels, exact matrices,
weights and characters, geometric descriptions and reports.
"""

from .partition import GroupKind, GroupType, OrbitLabel, OrbitTag, Partition
from .matrices import ComponentDescriptor, MatrixPair, SpPoint
from .weights import BlockPosition, DominantWeight, LaurentPolynomial, MonomialXY
from .geometry import (
    BaseKind,
    BaseVariety,
    BundleModel,
    ConsistencyReport,
    FiberFunctor,
    HilbInventory,
    InventoryStatus,
    QuotientDescription,
    Stratum,
    Verdict,
    VerdictCase,
)
from .report import (
    SCHEMA_VERSION,
    CauchyReport,
    CheckResult,
    DegreeCount,
    H0Entry,
    PresentationReport,
    ReductionReport,
    TableRow,
    VerificationReport,
)

__all__ = [
    'GroupKind', 'GroupType', 'OrbitLabel', 'OrbitTag', 'Partition',
    'ComponentDescriptor', 'MatrixPair', 'SpPoint',
    'BlockPosition', 'DominantWeight', 'LaurentPolynomial', 'MonomialXY',
    'BaseKind', 'BaseVariety', 'BundleModel', 'ConsistencyReport', 'FiberFunctor',
    'HilbInventory', 'InventoryStatus', 'QuotientDescription', 'Stratum', 'Verdict', 'VerdictCase',
    'SCHEMA_VERSION', 'CauchyReport', 'CheckResult', 'DegreeCount', 'H0Entry',
    'PresentationReport', 'ReductionReport', 'TableRow', 'VerificationReport',
]
