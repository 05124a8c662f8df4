"""
Symplectic Reduction Toolkit

Exact computations around symplectic reductions of classical group
representations: nilpotent orbits, moment-map zero fibres, Hilbert functions
of the general quotient fibre and the classification of desingularizations
coming from invariant Hilbert schemes.
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .core.application import ReductionApp
from .core.verification import VerificationRunner
from .models.partition import GroupKind, GroupType, OrbitLabel, OrbitTag, Partition
from .models.report import ReductionReport
from .services.geometry import GeometryClassifier
from .services.momentmap import MomentMapService
from .services.partitions import OrbitClassifier
from .services.repthy import RepresentationCalculator
from .utils.config_manager import Config, ConfigManager

__all__ = [
    'ReductionApp',
    'VerificationRunner',
    'GroupKind',
    'GroupType',
    'OrbitLabel',
    'OrbitTag',
    'Partition',
    'ReductionReport',
    'GeometryClassifier',
    'MomentMapService',
    'OrbitClassifier',
    'RepresentationCalculator',
    'Config',
    'ConfigManager',
]
