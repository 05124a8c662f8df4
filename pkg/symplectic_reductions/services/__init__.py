"""
Symplectic Reductions - Services Package
Contains the computational services: orbit classification, moment maps,
representation theory and geometry.
"""

from .partitions import OrbitClassifier
from .momentmap import MomentMapService
from .repthy import RepresentationCalculator
from .geometry import GeometryClassifier

__all__ = ['OrbitClassifier', 'MomentMapService', 'RepresentationCalculator', 'GeometryClassifier']
